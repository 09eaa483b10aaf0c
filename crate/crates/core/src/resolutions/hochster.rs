//! Betti numbers of a squarefree monomial ideal by summing reduced homology
//! of induced subcomplexes of the Stanley-Reisner complex over all subsets
//! of the appearing variables. Exact, and deliberately brute force: this is
//! the first independent oracle for the lattice engine.

use std::collections::BTreeMap;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::resolutions::homology::homology_from_masks;
use crate::resolutions::BettiTable;

/// `beta_{i,j}(S/I) = sum_{|W|=j} dim H~_{j-i-1}(Delta_W)` over subsets `W`
/// of the appearing variables; `Delta` is the Stanley-Reisner complex of the
/// squarefree ideal `I`.
pub fn hochster_betti(ideal: &MonomialIdeal, p: u32, cfg: &Config) -> Result<BettiTable> {
    let mut entries: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    entries.insert((0, 0), 1);
    if ideal.is_zero() {
        return Ok(BettiTable::total(p, entries));
    }
    if !ideal.gens().iter().all(|g| g.is_squarefree()) {
        return Err(Error::InvalidInput(
            "the Stanley-Reisner route needs a squarefree ideal".into(),
        ));
    }
    let vars = ideal.appearing_vars();
    if vars.len() > cfg.max_monomial_vars {
        return Err(Error::budget(
            "Stanley-Reisner variables",
            vars.len(),
            cfg.max_monomial_vars,
        ));
    }
    let gen_masks: Vec<u64> = ideal.gens().iter().map(|g| g.support_mask()).collect();
    let appearing_mask: u64 = gen_masks.iter().fold(0, |m, &g| m | g);

    // iterate over all W (subsets of the appearing variables), the empty
    // set included; its complex {{}} contributes the already-seeded (0,0)
    let mut w = appearing_mask;
    loop {
        if w != 0 {
            let jw = w.count_ones() as usize;
            // faces of Delta_W: subsets of W containing no generator support
            let mut faces: Vec<Vec<u64>> = vec![Vec::new(); jw + 1];
            let mut f = w;
            loop {
                if !gen_masks.iter().any(|&g| g & !f == 0) {
                    faces[f.count_ones() as usize].push(f);
                }
                if f == 0 {
                    break;
                }
                f = (f - 1) & w;
            }
            for (card, &dim) in homology_from_masks(&faces, p).iter().enumerate() {
                if dim > 0 && jw > card {
                    let i = jw - card;
                    *entries.entry((i, jw)).or_insert(0) += dim as u64;
                }
            }
        }
        if w == 0 {
            break;
        }
        w = (w - 1) & appearing_mask;
    }
    Ok(BettiTable::total(p, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::groebner::initial_ideal;
    use crate::monomial::Monomial;
    use crate::resolutions::betti_monomial;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn principal_squarefree_ideal() {
        let i = MonomialIdeal::new(2, vec![Monomial::from_exps(vec![1, 1])]);
        let t = hochster_betti(&i, 2, &cfg()).unwrap();
        assert_eq!(
            t.entries,
            vec![((0, 0), 1), ((1, 2), 1)].into_iter().collect()
        );
    }

    #[test]
    fn agrees_with_lattice_engine_on_fixtures() {
        for g in [
            Graph::complete(3),
            Graph::star(3),
            Graph::path(4),
            Graph::new(3, &[(1, 3), (2, 3)]).unwrap(),
        ] {
            let i = initial_ideal(&g);
            let a = hochster_betti(&i, 2, &cfg()).unwrap();
            let b = betti_monomial(&i, 2, &cfg()).unwrap();
            assert_eq!(a.entries, b.table.entries);
        }
    }

    #[test]
    fn rejects_non_squarefree() {
        let i = MonomialIdeal::new(2, vec![Monomial::from_exps(vec![2, 0])]);
        assert!(hochster_betti(&i, 2, &cfg()).is_err());
    }
}
