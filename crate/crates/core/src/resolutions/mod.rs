//! Graded Betti tables and the engines that compute them.
//!
//! Tables follow the `S/I` convention: `beta_{0,0} = 1`, homological degree
//! `i` along one axis and internal degree `j` along the other. A table is
//! either total (absent entries are genuinely zero) or partial (only the
//! recorded positions were computed, and analytics refuse to extrapolate).

pub mod homology;
pub mod hochster;
pub mod koszul;
pub mod lattice;
pub mod matrix;
pub mod taylor;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

pub use homology::{homology_from_masks, SimplicialComplex};
pub use hochster::hochster_betti;
pub use koszul::{
    betti_binomial, clique_betti_oracle, hilbert_consistency, BinomialBetti, KoszulEngine,
};
pub use lattice::{betti_monomial, lcm_lattice, LcmLattice, MonomialBetti};
pub use taylor::taylor_betti;

/// A graded Betti table of `S/I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    /// field characteristic the table was computed over (0 = rationals)
    pub characteristic: u32,
    /// map (i, j) -> beta_{i,j}; zero entries are absent
    pub entries: BTreeMap<(usize, usize), u64>,
    /// positions actually computed; `None` means the table is total
    pub computed: Option<BTreeSet<(usize, usize)>>,
}

/// One nonzero table entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub i: usize,
    pub j: usize,
    pub beta: u64,
}

impl BettiTable {
    pub fn total(characteristic: u32, entries: BTreeMap<(usize, usize), u64>) -> Self {
        let mut entries = entries;
        entries.retain(|_, v| *v != 0);
        BettiTable {
            characteristic,
            entries,
            computed: None,
        }
    }

    pub fn partial(
        characteristic: u32,
        entries: BTreeMap<(usize, usize), u64>,
        computed: BTreeSet<(usize, usize)>,
    ) -> Self {
        let mut entries = entries;
        entries.retain(|_, v| *v != 0);
        BettiTable {
            characteristic,
            entries,
            computed: Some(computed),
        }
    }

    pub fn is_total(&self) -> bool {
        self.computed.is_none()
    }

    /// Entry lookup. Total tables answer everywhere; partial tables answer
    /// only at computed positions.
    pub fn entry(&self, i: usize, j: usize) -> Option<u64> {
        match &self.computed {
            None => Some(self.entries.get(&(i, j)).copied().unwrap_or(0)),
            Some(set) => {
                if set.contains(&(i, j)) || (i, j) == (0, 0) {
                    Some(self.entries.get(&(i, j)).copied().unwrap_or(0))
                } else {
                    None
                }
            }
        }
    }

    fn require_total(&self, what: &str) -> Result<()> {
        if self.is_total() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{what} needs a total Betti table; this one is partial"
            )))
        }
    }

    /// Castelnuovo-Mumford regularity: max of `j - i` over nonzero entries.
    pub fn regularity(&self) -> Result<usize> {
        self.require_total("regularity")?;
        Ok(self
            .entries
            .keys()
            .map(|&(i, j)| j - i)
            .max()
            .unwrap_or(0))
    }

    /// Projective dimension: max homological degree with a nonzero entry.
    pub fn projective_dimension(&self) -> Result<usize> {
        self.require_total("projective dimension")?;
        Ok(self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0))
    }

    /// Extremal entries: nonzero `beta_{i,i+l}` such that `beta_{k,k+l'} = 0`
    /// for every other pair with `k >= i` and `l' >= l`.
    pub fn extremal(&self) -> Result<Vec<Entry>> {
        self.require_total("extremal entries")?;
        let keys: Vec<(usize, usize)> = self.entries.keys().copied().collect();
        let mut out = Vec::new();
        for &(i, j) in &keys {
            let l = j - i;
            let dominated = keys
                .iter()
                .any(|&(k, j2)| (k, j2) != (i, j) && k >= i && j2 - k >= l);
            if !dominated {
                out.push(Entry {
                    i,
                    j,
                    beta: self.entries[&(i, j)],
                });
            }
        }
        out.sort_by_key(|e| (e.i, e.j));
        Ok(out)
    }

    /// The two distinguished extremal entries: the one realizing the
    /// regularity (largest i on the top strand) and the one realizing the
    /// projective dimension (largest j in the last column).
    pub fn distinguished(&self) -> Result<(Entry, Entry)> {
        self.require_total("distinguished entries")?;
        if self.entries.is_empty() {
            return Err(Error::InvalidInput("empty Betti table".into()));
        }
        let reg = self.regularity()?;
        let pd = self.projective_dimension()?;
        let reg_i = self
            .entries
            .keys()
            .filter(|&&(i, j)| j - i == reg)
            .map(|&(i, _)| i)
            .max()
            .unwrap();
        let pd_j = self
            .entries
            .keys()
            .filter(|&&(i, _)| i == pd)
            .map(|&(_, j)| j)
            .max()
            .unwrap();
        Ok((
            Entry {
                i: reg_i,
                j: reg_i + reg,
                beta: self.entries[&(reg_i, reg_i + reg)],
            },
            Entry {
                i: pd,
                j: pd_j,
                beta: self.entries[&(pd, pd_j)],
            },
        ))
    }

    pub fn has_single_extremal(&self) -> Result<bool> {
        Ok(self.extremal()?.len() == 1)
    }

    /// Coefficientwise product of Betti polynomials
    /// `sum beta_{i,j} s^i t^j`.
    pub fn polynomial_product(&self, other: &BettiTable) -> BettiTable {
        let mut entries: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (&(i1, j1), &b1) in &self.entries {
            for (&(i2, j2), &b2) in &other.entries {
                *entries.entry((i1 + i2, j1 + j2)).or_insert(0) += b1 * b2;
            }
        }
        BettiTable {
            characteristic: self.characteristic,
            entries,
            computed: if self.is_total() && other.is_total() {
                None
            } else {
                Some(BTreeSet::new())
            },
        }
    }

    /// The Betti polynomial as text, e.g. `1 + 3*s*t^2 + 2*s^2*t^3`.
    pub fn betti_polynomial(&self) -> String {
        if self.entries.is_empty() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (&(i, j), &b) in &self.entries {
            let mut t = String::new();
            if b != 1 || (i == 0 && j == 0) {
                write!(t, "{b}").unwrap();
            }
            for (sym, e) in [("s", i), ("t", j)] {
                if e == 0 {
                    continue;
                }
                if !t.is_empty() {
                    t.push('*');
                }
                if e == 1 {
                    t.push_str(sym);
                } else {
                    write!(t, "{sym}^{e}").unwrap();
                }
            }
            terms.push(t);
        }
        terms.join(" + ")
    }

    /// Macaulay2-style rendering: rows are strata `j - i`, columns are `i`.
    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "(empty table)\n".into();
        }
        let pd = self.entries.keys().map(|&(i, _)| i).max().unwrap();
        let reg = self.entries.keys().map(|&(i, j)| j - i).max().unwrap();
        let width = self
            .entries
            .values()
            .map(|b| b.to_string().len())
            .max()
            .unwrap()
            .max(2)
            + 1;
        let mut s = String::new();
        write!(s, "{:>8}", "").unwrap();
        for i in 0..=pd {
            write!(s, "{i:>width$}").unwrap();
        }
        s.push('\n');
        let mut totals = vec![0u64; pd + 1];
        for (&(i, _), &b) in &self.entries {
            totals[i] += b;
        }
        write!(s, "{:>8}", "total:").unwrap();
        for t in &totals {
            write!(s, "{t:>width$}").unwrap();
        }
        s.push('\n');
        for l in 0..=reg {
            write!(s, "{:>7}:", l).unwrap();
            for i in 0..=pd {
                match self.entries.get(&(i, i + l)) {
                    Some(b) => write!(s, "{b:>width$}").unwrap(),
                    None => write!(s, "{:>width$}", ".").unwrap(),
                }
            }
            s.push('\n');
        }
        if !self.is_total() {
            s.push_str("(partial table)\n");
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|(&(i, j), &beta)| Entry { i, j, beta })
            .collect();
        let mut obj = serde_json::json!({
            "char": self.characteristic,
            "total": self.is_total(),
            "entries": entries,
        });
        if self.is_total() {
            let (reg_corner, pd_corner) = self.distinguished().unwrap_or((
                Entry { i: 0, j: 0, beta: 0 },
                Entry { i: 0, j: 0, beta: 0 },
            ));
            obj["reg"] = serde_json::json!(self.regularity().unwrap());
            obj["pd"] = serde_json::json!(self.projective_dimension().unwrap());
            obj["extremal"] = serde_json::json!(self.extremal().unwrap());
            obj["distinguished"] = serde_json::json!({
                "regularity": reg_corner,
                "projective_dimension": pd_corner,
            });
        } else {
            obj["computed"] = serde_json::json!(self
                .computed
                .as_ref()
                .unwrap()
                .iter()
                .map(|&(i, j)| vec![i, j])
                .collect::<Vec<_>>());
        }
        obj
    }

    /// Entrywise `<=`, the semicontinuity comparison. Both tables total.
    pub fn dominated_by(&self, other: &BettiTable) -> Result<bool> {
        self.require_total("semicontinuity comparison")?;
        other.require_total("semicontinuity comparison")?;
        Ok(self
            .entries
            .iter()
            .all(|(&k, &v)| other.entries.get(&k).copied().unwrap_or(0) >= v))
    }
}

pub(crate) fn binomial_coefficient(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    for t in 0..k {
        num = num * (n - t) as u128 / (t + 1) as u128;
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(entries: &[(usize, usize, u64)]) -> BettiTable {
        BettiTable::total(
            2,
            entries.iter().map(|&(i, j, b)| ((i, j), b)).collect(),
        )
    }

    #[test]
    fn k3_analytics() {
        let t = table(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
        assert_eq!(t.regularity().unwrap(), 1);
        assert_eq!(t.projective_dimension().unwrap(), 2);
        let ex = t.extremal().unwrap();
        assert_eq!(ex, vec![Entry { i: 2, j: 3, beta: 2 }]);
        assert!(t.has_single_extremal().unwrap());
        let (r, p) = t.distinguished().unwrap();
        assert_eq!(r, p);
    }

    #[test]
    fn p3_analytics() {
        let t = table(&[(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
        let ex = t.extremal().unwrap();
        assert_eq!(ex, vec![Entry { i: 2, j: 4, beta: 1 }]);
    }

    #[test]
    fn staircase_has_two_extremal_corners() {
        // Entries (1,3) and (2,3) are both corners: (2,3) sits in a strictly
        // lower strand, so it does not dominate (1,3).
        let t = table(&[(0, 0, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]);
        let ex = t.extremal().unwrap();
        assert_eq!(
            ex,
            vec![Entry { i: 1, j: 3, beta: 1 }, Entry { i: 2, j: 3, beta: 1 }]
        );
        // single extremal iff the distinguished pair coincides
        let (r, p) = t.distinguished().unwrap();
        assert_ne!(r, p);
        assert!(!t.has_single_extremal().unwrap());
    }

    #[test]
    fn single_extremal_iff_distinguished_coincide() {
        let tables = [
            table(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)]),
            table(&[(0, 0, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]),
            table(&[(0, 0, 1), (1, 2, 4), (2, 3, 2), (2, 4, 3), (3, 5, 2)]),
        ];
        for t in &tables {
            let (r, p) = t.distinguished().unwrap();
            assert_eq!(t.has_single_extremal().unwrap(), r == p);
        }
    }

    #[test]
    fn polynomial_product_examples() {
        let k2 = table(&[(0, 0, 1), (1, 2, 1)]);
        let sq = k2.polynomial_product(&k2);
        assert_eq!(
            sq.entries,
            vec![((0, 0), 1), ((1, 2), 2), ((2, 4), 1)].into_iter().collect()
        );
        assert_eq!(sq.betti_polynomial(), "1 + 2*s*t^2 + s^2*t^4");

        let unit = table(&[(0, 0, 1)]);
        let k3 = table(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
        assert_eq!(k3.polynomial_product(&unit).entries, k3.entries);
    }

    #[test]
    fn partial_tables_refuse_analytics() {
        let t = BettiTable::partial(
            2,
            vec![((3, 5, ), 2u64)].into_iter().map(|((i, j), b)| ((i, j), b)).collect(),
            vec![(3, 5)].into_iter().collect(),
        );
        assert!(t.extremal().is_err());
        assert_eq!(t.entry(3, 5), Some(2));
        assert_eq!(t.entry(2, 4), None);
    }

    #[test]
    fn render_is_macaulay_like() {
        let t = table(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
        let s = t.render();
        assert!(s.contains("total:"));
        assert!(s.lines().count() >= 4);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_coefficient(6, 3), 20);
        assert_eq!(binomial_coefficient(5, 0), 1);
        assert_eq!(binomial_coefficient(3, 5), 0);
    }
}
