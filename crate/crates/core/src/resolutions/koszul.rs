//! Graded Betti numbers of `S/J_G` over a prime field, as homology of the
//! Koszul complex on all `2n` variables tensored with the quotient.
//!
//! The computation is sliced by the Z^n multidegree that assigns `x_v` and
//! `y_v` the same degree: both `J_G` and its initial ideal are homogeneous
//! for it, so Betti numbers split into small independent strands. Candidate
//! multidegrees come from the multigraded table of the initial ideal:
//! Groebner degeneration can only drop Betti numbers multidegree by
//! multidegree, never create them, so positions vanishing there vanish here
//! too. Each strand is plain exact linear algebra: bases are the standard
//! monomials of the complementary multidegree, and multiplication by a
//! variable is a normal-form lookup.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::groebner::{buchberger, ReducedBasis};
use crate::monomial::{standard_monomials_of_multidegree, Monomial, MonomialIdeal};
use crate::resolutions::lattice::{betti_monomial, MonomialBetti};
use crate::resolutions::matrix::SparseMatrix;
use crate::resolutions::{binomial_coefficient, BettiTable};

/// Betti data of a binomial edge ideal: the table of `S/J_G` plus the
/// initial-ideal data that bounded the computation.
#[derive(Debug, Clone)]
pub struct BinomialBetti {
    pub table: BettiTable,
    pub monomial: MonomialBetti,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Reusable strand computer for one graph and one prime.
pub struct KoszulEngine {
    n: usize,
    p: u32,
    cfg: Config,
    basis: ReducedBasis,
    pub initial_ideal: MonomialIdeal,
    pub monomial: MonomialBetti,
    std_cache: HashMap<Vec<u8>, Vec<Monomial>>,
    nf_cache: HashMap<(usize, Monomial), Monomial>,
}

impl KoszulEngine {
    /// Builds the engine: reduced Groebner basis, initial ideal, and its
    /// multigraded Betti table. Budgeted for windowed use.
    pub fn new(g: &Graph, p: u32, cfg: &Config) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!(
                "the Koszul engine needs a prime characteristic, got {p}"
            )));
        }
        let n = g.n();
        if 2 * n > cfg.max_koszul_window_vars {
            return Err(Error::budget(
                "Koszul ring variables",
                2 * n,
                cfg.max_koszul_window_vars,
            ));
        }
        let basis = buchberger(g, cfg)?;
        let initial_ideal = basis.leading_ideal();
        let monomial = betti_monomial(&initial_ideal, p, cfg)?;
        Ok(KoszulEngine {
            n,
            p,
            cfg: cfg.clone(),
            basis,
            initial_ideal,
            monomial,
            std_cache: HashMap::new(),
            nf_cache: HashMap::new(),
        })
    }

    fn std_monomials(&mut self, md: &[u8]) -> &Vec<Monomial> {
        if !self.std_cache.contains_key(md) {
            let v = standard_monomials_of_multidegree(&self.initial_ideal, md);
            self.std_cache.insert(md.to_vec(), v);
        }
        self.std_cache.get(md).unwrap()
    }

    fn normal_form_mul(&mut self, m: &Monomial, pos: usize) -> Monomial {
        let key = (pos, m.clone());
        if let Some(r) = self.nf_cache.get(&key) {
            return r.clone();
        }
        let r = self.basis.reduce_monomial(&m.mul_var(pos));
        self.nf_cache.insert(key, r.clone());
        r
    }

    /// Exterior generators of level `k` compatible with multidegree `a`:
    /// subsets of the `2n` variable positions with at most `a_v` picks from
    /// the pair `{x_v, y_v}`.
    fn exterior_sets(&self, a: &[u8], k: usize) -> Vec<u64> {
        let n = self.n;
        let mut out = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        fn rec(
            v: usize,
            picked: usize,
            k: usize,
            n: usize,
            a: &[u8],
            cur: &mut Vec<usize>,
            out: &mut Vec<u64>,
        ) {
            if picked + 2 * (n - v) < k {
                return;
            }
            if v == n {
                if picked == k {
                    out.push(cur.iter().fold(0u64, |m, &p| m | 1 << p));
                }
                return;
            }
            // no pick at this vertex
            rec(v + 1, picked, k, n, a, cur, out);
            if a[v] >= 1 && picked < k {
                for pos in [v, n + v] {
                    cur.push(pos);
                    rec(v + 1, picked + 1, k, n, a, cur, out);
                    cur.pop();
                }
                if a[v] >= 2 && picked + 1 < k {
                    cur.push(v);
                    cur.push(n + v);
                    rec(v + 1, picked + 2, k, n, a, cur, out);
                    cur.pop();
                    cur.pop();
                }
            }
        }
        rec(0, 0, k, n, a, &mut cur, &mut out);
        out.sort_unstable();
        out
    }

    /// Basis of `(Koszul_k tensor S/J)_a`: pairs (variable subset, standard
    /// monomial of the complementary multidegree).
    fn level_basis(&mut self, a: &[u8], k: usize) -> Vec<(u64, Monomial)> {
        let n = self.n;
        let mut basis = Vec::new();
        for t in self.exterior_sets(a, k) {
            let mut rem = a.to_vec();
            for v in 0..n {
                let picks = (t >> v & 1) as u8 + (t >> (n + v) & 1) as u8;
                rem[v] -= picks;
            }
            for m in self.std_monomials(&rem).clone() {
                basis.push((t, m));
            }
        }
        basis
    }

    /// dim Tor_i(S/J, K) in multidegree `a`, by ranks of the two boundary
    /// maps around level `i` of the strand.
    fn beta_in_multidegree(&mut self, a: &[u8], is: &BTreeSet<usize>) -> Result<BTreeMap<usize, u64>> {
        let lo = is.iter().min().unwrap().saturating_sub(1);
        let hi = is.iter().max().unwrap() + 1;
        let mut bases: BTreeMap<usize, Vec<(u64, Monomial)>> = BTreeMap::new();
        for k in lo..=hi {
            bases.insert(k, self.level_basis(a, k));
        }
        let mut index: BTreeMap<usize, HashMap<(u64, Monomial), u32>> = BTreeMap::new();
        for (&k, b) in &bases {
            index.insert(
                k,
                b.iter()
                    .enumerate()
                    .map(|(c, e)| (e.clone(), c as u32))
                    .collect(),
            );
        }
        // ranks of d_k for k in [min(is), max(is)+1]
        let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
        let need_ranks: BTreeSet<usize> = is.iter().flat_map(|&i| [i, i + 1]).collect();
        for &k in &need_ranks {
            if k == 0 {
                ranks.insert(k, 0);
                continue;
            }
            let dom = bases.get(&k).cloned().unwrap_or_default();
            let codom_ix = index.get(&(k - 1));
            if dom.is_empty() || codom_ix.map(|m| m.is_empty()).unwrap_or(true) {
                ranks.insert(k, 0);
                continue;
            }
            let codom_ix = codom_ix.unwrap();
            let mut mat = SparseMatrix::new(codom_ix.len());
            let mut nnz = 0usize;
            for (t, m) in &dom {
                let mut row = Vec::new();
                let mut sign = 1i64;
                let mut rest = *t;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    let pos = bit.trailing_zeros() as usize;
                    let sub = t & !bit;
                    let m2 = self.normal_form_mul(m, pos);
                    let col = *index[&(k - 1)]
                        .get(&(sub, m2))
                        .expect("normal form stays in the strand");
                    row.push((col, sign));
                    sign = -sign;
                    rest &= rest - 1;
                }
                nnz += row.len();
                if nnz > self.cfg.max_matrix_nonzeros {
                    return Err(Error::budget(
                        format!(
                            "Koszul strand matrix nonzeros ({} rows x {} cols)",
                            dom.len(),
                            codom_ix.len()
                        ),
                        nnz,
                        self.cfg.max_matrix_nonzeros,
                    ));
                }
                mat.push_row(row);
            }
            ranks.insert(k, mat.rank(self.p));
        }
        let mut out = BTreeMap::new();
        for &i in is {
            let dim = bases.get(&i).map(Vec::len).unwrap_or(0);
            let r1 = ranks.get(&i).copied().unwrap_or(0);
            let r2 = ranks.get(&(i + 1)).copied().unwrap_or(0);
            debug_assert!(dim >= r1 + r2);
            out.insert(i, (dim - r1 - r2) as u64);
        }
        Ok(out)
    }

    /// Computes the requested `(i, j)` positions of the table of `S/J_G`.
    pub fn compute_positions(
        &mut self,
        positions: &[(usize, usize)],
    ) -> Result<BTreeMap<(usize, usize), u64>> {
        // group candidate multidegrees over the requested positions
        let mut per_multidegree: BTreeMap<Vec<u8>, BTreeSet<usize>> = BTreeMap::new();
        let wanted: BTreeSet<(usize, usize)> = positions.iter().copied().collect();
        for (&(i, ref ell), &v) in &self.monomial.multigraded {
            if v == 0 {
                continue;
            }
            let j = ell.degree();
            if wanted.contains(&(i, j)) {
                per_multidegree
                    .entry(ell.multidegree(self.n))
                    .or_default()
                    .insert(i);
            }
        }
        let mut out: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for &(i, j) in &wanted {
            out.insert((i, j), 0);
        }
        for (a, is) in per_multidegree {
            let j: usize = a.iter().map(|&x| x as usize).sum();
            let betas = self.beta_in_multidegree(&a, &is)?;
            for (i, b) in betas {
                *out.entry((i, j)).or_insert(0) += b;
            }
        }
        Ok(out)
    }

    /// Full table of `S/J_G`. Needs the tighter full-table variable budget.
    pub fn full_table(&mut self) -> Result<BettiTable> {
        if 2 * self.n > self.cfg.max_koszul_full_vars {
            return Err(Error::budget(
                "Koszul full-table ring variables",
                2 * self.n,
                self.cfg.max_koszul_full_vars,
            ));
        }
        let positions: Vec<(usize, usize)> = self
            .monomial
            .table
            .entries
            .keys()
            .copied()
            .filter(|&(i, _)| i >= 1)
            .collect();
        let computed = self.compute_positions(&positions)?;
        let mut entries: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        entries.insert((0, 0), 1);
        for ((i, j), v) in computed {
            if v > 0 {
                entries.insert((i, j), v);
            }
        }
        Ok(BettiTable::total(self.p, entries))
    }

    /// Partial table at exactly the requested positions.
    pub fn window_table(&mut self, window: &[(usize, usize)]) -> Result<BettiTable> {
        let computed = self.compute_positions(window)?;
        let mut entries: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        let mut support: BTreeSet<(usize, usize)> = BTreeSet::new();
        entries.insert((0, 0), 1);
        support.insert((0, 0));
        for ((i, j), v) in computed {
            support.insert((i, j));
            if v > 0 {
                entries.insert((i, j), v);
            }
        }
        Ok(BettiTable::partial(self.p, entries, support))
    }
}

/// Betti table of `S/J_G` over `F_p`: full when `window` is `None`,
/// otherwise partial at the given positions.
pub fn betti_binomial(
    g: &Graph,
    p: u32,
    window: Option<&[(usize, usize)]>,
    cfg: &Config,
) -> Result<BinomialBetti> {
    if window.is_none() && 2 * g.n() > cfg.max_koszul_full_vars {
        return Err(Error::budget(
            "Koszul full-table ring variables",
            2 * g.n(),
            cfg.max_koszul_full_vars,
        ));
    }
    let mut engine = KoszulEngine::new(g, p, cfg)?;
    let table = match window {
        None => engine.full_table()?,
        Some(w) => engine.window_table(w)?,
    };
    Ok(BinomialBetti {
        table,
        monomial: engine.monomial,
    })
}

/// Closed-form table of `S/J_{K_n}`: the resolution is linear with
/// `beta_{i,i+1} = i * C(n, i+1)` for `1 <= i <= n-1`.
pub fn clique_betti_oracle(n: usize) -> BettiTable {
    let mut entries: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    entries.insert((0, 0), 1);
    for i in 1..n {
        entries.insert((i, i + 1), i as u64 * binomial_coefficient(n, i + 1) as u64);
    }
    BettiTable::total(0, entries)
}

/// Checks that the alternating sums of a total table reproduce the Hilbert
/// function of `S/J_G`, counted independently from standard monomials of the
/// initial ideal: for every `d` up to the largest internal degree,
/// `h(d) = sum_j N_j * C(2n-1+d-j, 2n-1)` with `N_j = sum_i (-1)^i beta_{i,j}`.
pub fn hilbert_consistency(ideal: &MonomialIdeal, table: &BettiTable) -> Result<()> {
    if !table.is_total() {
        return Err(Error::InvalidInput(
            "Hilbert consistency needs a total table".into(),
        ));
    }
    let num_vars = ideal.num_vars();
    let max_j = table.entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
    let mut numerator: BTreeMap<usize, i128> = BTreeMap::new();
    for (&(i, j), &b) in &table.entries {
        let sign = if i % 2 == 0 { 1i128 } else { -1i128 };
        *numerator.entry(j).or_insert(0) += sign * b as i128;
    }
    for d in 0..=max_j {
        let expected: i128 = numerator
            .iter()
            .filter(|(&j, _)| j <= d)
            .map(|(&j, &c)| c * binomial_coefficient(num_vars - 1 + d - j, num_vars - 1) as i128)
            .sum();
        let actual = crate::monomial::hilbert_function(ideal, d) as i128;
        if expected != actual {
            return Err(Error::Verification(format!(
                "Hilbert series mismatch at degree {d}: table gives {expected}, \
                 standard monomials give {actual}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named_graph;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn k2_table() {
        let b = betti_binomial(&Graph::complete(2), 2, None, &cfg()).unwrap();
        assert_eq!(
            b.table.entries,
            vec![((0, 0), 1), ((1, 2), 1)].into_iter().collect()
        );
    }

    #[test]
    fn k3_table_matches_clique_oracle() {
        let b = betti_binomial(&Graph::complete(3), 2, None, &cfg()).unwrap();
        assert_eq!(b.table.entries, clique_betti_oracle(3).entries);
        assert_eq!(b.table.entry(1, 2), Some(3));
        assert_eq!(b.table.entry(2, 3), Some(2));
    }

    #[test]
    fn k4_and_k5_match_clique_oracle() {
        for n in [4, 5] {
            let b = betti_binomial(&Graph::complete(n), 2, None, &cfg()).unwrap();
            assert_eq!(b.table.entries, clique_betti_oracle(n).entries, "K{n}");
        }
    }

    #[test]
    fn p3_table_is_square_of_edge() {
        let b = betti_binomial(&Graph::path(3), 2, None, &cfg()).unwrap();
        assert_eq!(
            b.table.entries,
            vec![((0, 0), 1), ((1, 2), 2), ((2, 4), 1)].into_iter().collect()
        );
    }

    #[test]
    fn star_table() {
        let b = betti_binomial(&Graph::star(3), 2, None, &cfg()).unwrap();
        assert_eq!(b.table.entry(3, 5), Some(2));
        let ex = b.table.extremal().unwrap();
        assert_eq!(ex.len(), 1);
        assert_eq!((ex[0].i, ex[0].j, ex[0].beta), (3, 5, 2));
        assert_eq!(b.table.regularity().unwrap(), 2);
        assert_eq!(b.table.projective_dimension().unwrap(), 3);
    }

    #[test]
    fn paw_equals_product_of_pieces() {
        let paw = named_graph("paw").unwrap();
        let b = betti_binomial(&paw, 2, None, &cfg()).unwrap();
        let k3 = betti_binomial(&Graph::complete(3), 2, None, &cfg()).unwrap();
        let k2 = betti_binomial(&Graph::complete(2), 2, None, &cfg()).unwrap();
        assert_eq!(
            b.table.entries,
            k3.table.polynomial_product(&k2.table).entries
        );
    }

    #[test]
    fn windowed_query_is_partial() {
        let b = betti_binomial(&Graph::star(3), 2, Some(&[(3, 5)]), &cfg()).unwrap();
        assert!(!b.table.is_total());
        assert_eq!(b.table.entry(3, 5), Some(2));
        assert_eq!(b.table.entry(2, 4), None);
        assert!(b.table.extremal().is_err());
    }

    #[test]
    fn semicontinuity_on_fixtures() {
        for name in ["k3", "k13", "p4", "paw"] {
            let g = named_graph(name).unwrap();
            let b = betti_binomial(&g, 2, None, &cfg()).unwrap();
            assert!(
                b.table.dominated_by(&b.monomial.table).unwrap(),
                "semicontinuity fails on {name}"
            );
        }
    }

    #[test]
    fn hilbert_consistency_on_fixtures() {
        for name in ["k3", "k13", "p4", "paw"] {
            let g = named_graph(name).unwrap();
            let b = betti_binomial(&g, 2, None, &cfg()).unwrap();
            let ideal = crate::groebner::initial_ideal(&g);
            hilbert_consistency(&ideal, &b.table).unwrap();
        }
    }

    #[test]
    fn full_table_budget() {
        // n = 7 exceeds the full-table budget of 12 ring variables
        let t0 = named_graph("t0").unwrap();
        let err = betti_binomial(&t0, 2, None, &cfg()).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(betti_binomial(&Graph::complete(2), 4, None, &cfg()).is_err());
        assert!(betti_binomial(&Graph::complete(2), 0, None, &cfg()).is_err());
    }

    #[test]
    fn characteristic_agreement_on_small_fixtures() {
        for name in ["k4", "k13", "paw"] {
            let g = named_graph(name).unwrap();
            let a = betti_binomial(&g, 2, None, &cfg()).unwrap();
            let b = betti_binomial(&g, 32003, None, &cfg()).unwrap();
            assert_eq!(a.table.entries, b.table.entries, "{name}");
        }
    }
}
