//! Sparse exact rank over a prime field, integer rank, and Smith normal
//! form. The prime-field path is the workhorse; integer routines back the
//! characteristic-zero option on small fixtures.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Sparse integer matrix stored by rows; entries are small (boundary maps
/// and Koszul differentials have +-1 entries).
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix {
            nrows: 0,
            ncols,
            rows: Vec::new(),
        }
    }

    /// Appends a row given as (column, value) pairs; columns must be distinct.
    pub fn push_row(&mut self, mut entries: Vec<(u32, i64)>) {
        entries.retain(|&(_, v)| v != 0);
        entries.sort_by_key(|&(c, _)| c);
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(c, _)| (c as usize) < self.ncols));
        self.rows.push(entries);
        self.nrows += 1;
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Rank over F_p (p prime) or over the rationals (p = 0).
    pub fn rank(&self, p: u32) -> usize {
        if p == 0 {
            self.rank_rational()
        } else {
            self.rank_mod_p(p)
        }
    }

    /// Dense bitset elimination over F_2; rows are machine-word blocks.
    fn rank_mod_2_dense(&self) -> usize {
        let words = self.ncols.div_ceil(64);
        // pivot rows indexed by their leading column
        let mut pivots: Vec<Option<Vec<u64>>> = vec![None; self.ncols];
        let mut rank = 0usize;
        for row in &self.rows {
            let mut bits = vec![0u64; words];
            for &(c, v) in row {
                if v % 2 != 0 {
                    bits[c as usize / 64] ^= 1u64 << (c % 64);
                }
            }
            loop {
                let lead = match bits
                    .iter()
                    .enumerate()
                    .find(|(_, &w)| w != 0)
                    .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
                {
                    None => break,
                    Some(l) => l,
                };
                match &pivots[lead] {
                    Some(p) => {
                        for (a, b) in bits.iter_mut().zip(p) {
                            *a ^= b;
                        }
                    }
                    None => {
                        pivots[lead] = Some(bits);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// Sparse Gaussian elimination over F_p. Rows are processed shortest
    /// first and reduced against the pivots found so far; each new pivot is
    /// the lowest column of its reduced row.
    fn rank_mod_p(&self, p: u32) -> usize {
        if p == 2 && self.ncols <= 1 << 14 {
            return self.rank_mod_2_dense();
        }
        let p64 = p as u64;
        let modp = |v: i64| -> u64 {
            let r = v.rem_euclid(p as i64) as u64;
            r
        };
        let mut work: Vec<Vec<(u32, u64)>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .filter_map(|&(c, v)| {
                        let m = modp(v);
                        (m != 0).then_some((c, m))
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|r: &Vec<(u32, u64)>| !r.is_empty())
            .collect();
        work.sort_by_key(|r| (r.len(), r.first().map(|&(c, _)| c).unwrap_or(0)));

        // pivot column -> monic pivot row
        let mut pivots: std::collections::HashMap<u32, Vec<(u32, u64)>> =
            std::collections::HashMap::new();
        let mut rank = 0usize;
        for mut row in work {
            loop {
                let Some(&(head, coef)) = row.first() else { break };
                if let Some(piv) = pivots.get(&head) {
                    row = axpy_mod_p(&row, piv, p64 - coef, p64);
                } else {
                    let inv = inv_mod_p(coef, p64);
                    for e in row.iter_mut() {
                        e.1 = e.1 * inv % p64;
                    }
                    pivots.insert(head, row);
                    rank += 1;
                    break;
                }
            }
        }
        rank
    }

    /// Integer elimination without division (rows scaled cross-wise), so the
    /// pivot count is the rank over Q. Entries grow, hence BigInt.
    fn rank_rational(&self) -> usize {
        let mut work: Vec<Vec<(u32, BigInt)>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect::<Vec<_>>())
            .filter(|r: &Vec<(u32, BigInt)>| !r.is_empty())
            .collect();
        work.sort_by_key(|r| (r.len(), r.first().map(|e| e.0).unwrap_or(0)));
        let mut pivots: std::collections::HashMap<u32, Vec<(u32, BigInt)>> =
            std::collections::HashMap::new();
        let mut rank = 0usize;
        for mut row in work {
            loop {
                row.retain(|(_, v)| !v.is_zero());
                let Some((head, coef)) = row.first().cloned() else { break };
                if let Some(piv) = pivots.get(&head) {
                    let plead = piv.first().unwrap().1.clone();
                    // row := row * plead - piv * coef
                    row = int_combine(&row, &plead, piv, &coef);
                } else {
                    pivots.insert(head, row);
                    rank += 1;
                    break;
                }
            }
        }
        rank
    }

    /// Diagonal of the Smith normal form (nonnegative, divisibility chain).
    /// Dense integer algorithm; intended for small matrices.
    pub fn smith_diagonal(&self) -> Vec<BigInt> {
        let (m, n) = (self.nrows, self.ncols);
        let mut a = vec![vec![BigInt::zero(); n]; m];
        for (i, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                a[i][c as usize] = BigInt::from(v);
            }
        }
        let mut diag = Vec::new();
        let mut top = 0usize;
        let mut left = 0usize;
        while top < m && left < n {
            // find the nonzero entry of smallest absolute value
            let mut best: Option<(usize, usize)> = None;
            for i in top..m {
                for j in left..n {
                    if !a[i][j].is_zero()
                        && best
                            .map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(top, bi);
            for row in a.iter_mut() {
                row.swap(left, bj);
            }
            // clear the column and row by repeated remainder steps
            let mut again = false;
            for i in (top + 1)..m {
                if !a[i][left].is_zero() {
                    let q = &a[i][left] / &a[top][left];
                    for j in left..n {
                        let sub = &q * &a[top][j];
                        a[i][j] -= sub;
                    }
                    if !a[i][left].is_zero() {
                        again = true;
                    }
                }
            }
            for j in (left + 1)..n {
                if !a[top][j].is_zero() {
                    let q = &a[top][j] / &a[top][left];
                    for i in top..m {
                        let sub = &q * &a[i][left];
                        a[i][j] -= sub;
                    }
                    if !a[top][j].is_zero() {
                        again = true;
                    }
                }
            }
            if again {
                continue;
            }
            // enforce divisibility of the remaining block
            let mut fixed = true;
            'scan: for i in (top + 1)..m {
                for j in (left + 1)..n {
                    if !(&a[i][j] % &a[top][left]).is_zero() {
                        for jj in left..n {
                            let add = a[i][jj].clone();
                            a[top][jj] += add;
                        }
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                continue;
            }
            diag.push(a[top][left].abs());
            top += 1;
            left += 1;
        }
        diag
    }
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // extended Euclid
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "not invertible");
    s0.rem_euclid(p as i128) as u64
}

/// row + c * piv over F_p, merging sorted sparse vectors.
fn axpy_mod_p(row: &[(u32, u64)], piv: &[(u32, u64)], c: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < row.len() || j < piv.len() {
        match (row.get(i), piv.get(j)) {
            (Some(&(ca, va)), Some(&(cb, vb))) => {
                if ca < cb {
                    out.push((ca, va));
                    i += 1;
                } else if cb < ca {
                    let v = vb * c % p;
                    if v != 0 {
                        out.push((cb, v));
                    }
                    j += 1;
                } else {
                    let v = (va + vb * c) % p;
                    if v != 0 {
                        out.push((ca, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some(&(ca, va)), None) => {
                out.push((ca, va));
                i += 1;
            }
            (None, Some(&(cb, vb))) => {
                let v = vb * c % p;
                if v != 0 {
                    out.push((cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// row * plead - piv * coef over Z, merging sorted sparse vectors.
fn int_combine(
    row: &[(u32, BigInt)],
    plead: &BigInt,
    piv: &[(u32, BigInt)],
    coef: &BigInt,
) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < row.len() || j < piv.len() {
        let next = match (row.get(i), piv.get(j)) {
            (Some((ca, va)), Some((cb, vb))) => {
                if ca < cb {
                    i += 1;
                    (*ca, va * plead)
                } else if cb < ca {
                    j += 1;
                    (*cb, -(vb * coef))
                } else {
                    let v = va * plead - vb * coef;
                    i += 1;
                    j += 1;
                    (*ca, v)
                }
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, va * plead)
            }
            (None, Some((cb, vb))) => {
                j += 1;
                (*cb, -(vb * coef))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> SparseMatrix {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            m.push_row(
                r.iter()
                    .enumerate()
                    .map(|(c, &v)| (c as u32, v))
                    .collect(),
            );
        }
        m
    }

    #[test]
    fn rank_over_various_fields() {
        let m = from_dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(0), 2);
        assert_eq!(m.rank(5), 2);
        // second row is 2 * first, which vanishes only mod 2 for row 3 sums
        let m2 = from_dense(&[&[1, 1], &[1, -1]]);
        assert_eq!(m2.rank(0), 2);
        assert_eq!(m2.rank(2), 1); // determinant -2
        assert_eq!(m2.rank(3), 2);
    }

    #[test]
    fn rank_mod_p_matches_integer_reduction() {
        let m = from_dense(&[&[6, 4], &[3, 2]]);
        assert_eq!(m.rank(0), 1);
        assert_eq!(m.rank(2), 1);
        assert_eq!(m.rank(3), 1);
    }

    #[test]
    fn smith_diagonal_fixture() {
        let m = from_dense(&[
            &[-6, 111, -36, 6],
            &[5, -672, 210, 74],
            &[0, -255, 81, 24],
            &[-7, 255, -81, -10],
        ]);
        let d: Vec<i64> = m
            .smith_diagonal()
            .into_iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(d, vec![1, 3, 21]);
    }

    #[test]
    fn smith_diagonal_divisibility() {
        let m = from_dense(&[&[2, 0], &[0, 3]]);
        let d: Vec<i64> = m
            .smith_diagonal()
            .into_iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(d, vec![1, 6]);
    }

    #[test]
    fn empty_matrix() {
        let m = SparseMatrix::new(0);
        assert_eq!(m.rank(2), 0);
        assert_eq!(m.rank(0), 0);
    }
}
