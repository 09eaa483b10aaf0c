//! Betti numbers from the Taylor complex: the strand of subsets sharing one
//! lcm is a finite complex whose homology at homological degree `|T|` gives
//! the multigraded Betti number there. Second independent oracle; capped at
//! a dozen generators since the complex has 2^r faces.

use std::collections::{BTreeMap, HashMap};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::resolutions::matrix::SparseMatrix;
use crate::resolutions::BettiTable;

/// Betti table of `S/I` via multigraded Taylor strands. Accepts arbitrary
/// monomial ideals (squarefree not required). `p` prime or 0.
pub fn taylor_betti(ideal: &MonomialIdeal, p: u32, cfg: &Config) -> Result<BettiTable> {
    let r = ideal.gens().len();
    if r > cfg.max_taylor_generators {
        return Err(Error::budget(
            "Taylor generators",
            r,
            cfg.max_taylor_generators,
        ));
    }
    // lcm of every generator subset
    let mut lcms: Vec<Monomial> = Vec::with_capacity(1 << r);
    lcms.push(Monomial::one(ideal.num_vars()));
    for t in 1u32..(1 << r) {
        let low = t.trailing_zeros() as usize;
        let rest = t & (t - 1);
        lcms.push(lcms[rest as usize].lcm(&ideal.gens()[low]));
    }
    // group subsets by their lcm
    let mut strands: HashMap<&Monomial, Vec<u32>> = HashMap::new();
    for t in 0u32..(1 << r) {
        strands.entry(&lcms[t as usize]).or_default().push(t);
    }

    let mut entries: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (alpha, subsets) in strands {
        let j = alpha.degree();
        // basis of the strand by homological degree = subset cardinality
        let mut levels: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for &t in &subsets {
            levels.entry(t.count_ones() as usize).or_default().push(t);
        }
        let index: HashMap<u32, u32> = subsets
            .iter()
            .enumerate()
            .map(|(k, &t)| (t, k as u32))
            .collect();
        let mut level_pos: HashMap<u32, u32> = HashMap::new();
        for lv in levels.values() {
            for (k, &t) in lv.iter().enumerate() {
                level_pos.insert(t, k as u32);
            }
        }
        let _ = index;
        // rank of d_c: level c -> level c-1, surviving arrows only
        let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
        for (&c, lv) in &levels {
            if c == 0 {
                continue;
            }
            let ncols = levels.get(&(c - 1)).map(|l| l.len()).unwrap_or(0);
            let mut mat = SparseMatrix::new(ncols);
            for &t in lv {
                let mut row = Vec::new();
                let mut rest = t;
                let mut sign = 1i64;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    let sub = t & !bit;
                    if lcms[sub as usize] == *alpha {
                        row.push((level_pos[&sub], sign));
                    }
                    sign = -sign;
                    rest &= rest - 1;
                }
                mat.push_row(row);
            }
            ranks.insert(c, mat.rank(p));
        }
        for (&c, lv) in &levels {
            let h = lv.len()
                - ranks.get(&c).copied().unwrap_or(0)
                - ranks.get(&(c + 1)).copied().unwrap_or(0);
            if h > 0 {
                *entries.entry((c, j)).or_insert(0) += h as u64;
            }
        }
    }
    Ok(BettiTable::total(p, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::groebner::initial_ideal;
    use crate::resolutions::{betti_monomial, hochster_betti};

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn matches_other_engines_on_fixtures() {
        for g in [
            Graph::complete(2),
            Graph::complete(3),
            Graph::star(3),
            Graph::new(3, &[(1, 3), (2, 3)]).unwrap(),
            Graph::path(4),
        ] {
            let i = initial_ideal(&g);
            let a = taylor_betti(&i, 2, &cfg()).unwrap();
            let b = betti_monomial(&i, 2, &cfg()).unwrap();
            let c = hochster_betti(&i, 2, &cfg()).unwrap();
            assert_eq!(a.entries, b.table.entries);
            assert_eq!(a.entries, c.entries);
        }
    }

    #[test]
    fn handles_non_squarefree_ideals() {
        use crate::monomial::Monomial;
        // (x^2, xy) in 2 variables: S/I has Betti numbers 1; 2; 1
        let i = MonomialIdeal::new(
            2,
            vec![
                Monomial::from_exps(vec![2, 0]),
                Monomial::from_exps(vec![1, 1]),
            ],
        );
        let t = taylor_betti(&i, 2, &cfg()).unwrap();
        assert_eq!(
            t.entries,
            vec![((0, 0), 1), ((1, 2), 2), ((2, 3), 1)].into_iter().collect()
        );
    }

    #[test]
    fn generator_budget() {
        let i = initial_ideal(&Graph::complete(6)); // 15 generators
        assert!(matches!(taylor_betti(&i, 2, &cfg()), Err(Error::Budget { .. })));
    }
}
