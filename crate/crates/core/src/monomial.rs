//! Monomials, binomials and monomial ideals in the ring
//! `K[x_1..x_n, y_1..y_n]` with the lexicographic order induced by
//! `x_1 > x_2 > ... > x_n > y_1 > ... > y_n`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Kind of a ring variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VarKind {
    X,
    Y,
}

/// One of the `2n` variables `x_i`, `y_i` with `i` in `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Variable {
    pub kind: VarKind,
    pub index: usize,
}

impl Variable {
    pub fn x(index: usize) -> Self {
        Variable { kind: VarKind::X, index }
    }

    pub fn y(index: usize) -> Self {
        Variable { kind: VarKind::Y, index }
    }

    /// Position in the variable order: `x_i -> i-1`, `y_i -> n+i-1`.
    /// Position 0 is the lex-largest variable.
    pub fn position(&self, n: usize) -> usize {
        match self.kind {
            VarKind::X => self.index - 1,
            VarKind::Y => n + self.index - 1,
        }
    }

    pub fn from_position(pos: usize, n: usize) -> Self {
        if pos < n {
            Variable::x(pos + 1)
        } else {
            Variable::y(pos - n + 1)
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::X => write!(f, "x{}", self.index),
            VarKind::Y => write!(f, "y{}", self.index),
        }
    }
}

/// Exponent vector over the `2n` variable positions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u8>,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial { exps: vec![0; num_vars] }
    }

    pub fn from_exps(exps: Vec<u8>) -> Self {
        Monomial { exps }
    }

    pub fn variable(pos: usize, num_vars: usize) -> Self {
        let mut m = Monomial::one(num_vars);
        m.exps[pos] = 1;
        m
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, pos: usize) -> u8 {
        self.exps[pos]
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Bitmask of positions with nonzero exponent (needs `2n <= 64`).
    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for (k, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                m |= 1 << k;
            }
        }
        m
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul_var(&self, pos: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[pos] += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Lexicographic comparison; position 0 is most significant.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        for (a, b) in self.exps.iter().zip(&other.exps) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Z^n multidegree: component v-1 is `exp(x_v) + exp(y_v)`.
    pub fn multidegree(&self, n: usize) -> Vec<u8> {
        (0..n).map(|v| self.exps[v] + self.exps[n + v]).collect()
    }

    /// Canonical text form: variables sorted in the variable order,
    /// e.g. `x1*x3^2*y2`, and `1` for the unit monomial.
    pub fn render(&self, n: usize) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (pos, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = Variable::from_position(pos, n);
            if e == 1 {
                parts.push(format!("{v}"));
            } else {
                parts.push(format!("{v}^{e}"));
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(self.exps.len() / 2))
    }
}

/// Difference of two monomials with coefficients `+1, -1`; the lead is
/// lex-larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binomial {
    pub lead: Monomial,
    pub trail: Monomial,
}

impl Binomial {
    /// Builds `a - b` ordering the terms by the lex order; `None` when the
    /// terms coincide (the zero binomial).
    pub fn new(a: Monomial, b: Monomial) -> Option<Binomial> {
        match a.lex_cmp(&b) {
            Ordering::Greater => Some(Binomial { lead: a, trail: b }),
            Ordering::Less => Some(Binomial { lead: b, trail: a }),
            Ordering::Equal => None,
        }
    }

    pub fn render(&self, n: usize) -> String {
        format!("{} - {}", self.lead.render(n), self.trail.render(n))
    }
}

/// Minimally generated monomial ideal in `2n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    num_vars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal from any generating set, dropping divisible
    /// generators and sorting the rest canonically: by total degree, then
    /// lex-descending within a degree.
    pub fn new(num_vars: usize, gens: Vec<Monomial>) -> Self {
        let mut gens = gens;
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.lex_cmp(a)));
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for g in gens {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        MonomialIdeal {
            num_vars,
            gens: minimal,
        }
    }

    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            gens: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Positions of variables appearing in some generator.
    pub fn appearing_vars(&self) -> Vec<usize> {
        let mut mask = 0u64;
        for g in &self.gens {
            mask |= g.support_mask();
        }
        crate::graph::BitIter(mask).map(|b| b as usize).collect()
    }

    pub fn render(&self, n: usize) -> Vec<String> {
        self.gens.iter().map(|g| g.render(n)).collect()
    }
}

/// All monomials of the given Z^n multidegree that avoid every generator of
/// `ideal` (the standard monomials of that multidegree).
pub fn standard_monomials_of_multidegree(ideal: &MonomialIdeal, md: &[u8]) -> Vec<Monomial> {
    let n = md.len();
    debug_assert_eq!(ideal.num_vars(), 2 * n);
    let mut out = Vec::new();
    let mut exps = vec![0u8; 2 * n];
    fn rec(
        v: usize,
        n: usize,
        md: &[u8],
        exps: &mut Vec<u8>,
        ideal: &MonomialIdeal,
        out: &mut Vec<Monomial>,
    ) {
        if v == n {
            let m = Monomial::from_exps(exps.clone());
            if !ideal.contains_monomial(&m) {
                out.push(m);
            }
            return;
        }
        for xe in 0..=md[v] {
            exps[v] = xe;
            exps[n + v] = md[v] - xe;
            rec(v + 1, n, md, exps, ideal, out);
        }
        exps[v] = 0;
        exps[n + v] = 0;
    }
    rec(0, n, md, &mut exps, ideal, &mut out);
    out
}

/// All standard monomials of total degree `d` (outside the ideal).
pub fn standard_monomials(ideal: &MonomialIdeal, d: usize) -> Vec<Monomial> {
    let n = ideal.num_vars() / 2;
    let mut out = Vec::new();
    // enumerate multidegrees of weight d over n coordinates
    let mut md = vec![0u8; n];
    fn rec(
        v: usize,
        rem: usize,
        n: usize,
        md: &mut Vec<u8>,
        ideal: &MonomialIdeal,
        out: &mut Vec<Monomial>,
    ) {
        if v == n {
            if rem == 0 {
                out.extend(standard_monomials_of_multidegree(ideal, md));
            }
            return;
        }
        if rem > 255 * (n - v) {
            return;
        }
        for e in 0..=rem.min(255) {
            md[v] = e as u8;
            rec(v + 1, rem - e, n, md, ideal, out);
        }
        md[v] = 0;
    }
    rec(0, d, n, &mut md, ideal, &mut out);
    out.sort();
    out
}

/// Hilbert function of `S/I` at degree `d`, counted from standard monomials.
pub fn hilbert_function(ideal: &MonomialIdeal, d: usize) -> usize {
    standard_monomials(ideal, d).len()
}

/// Guard for bitmask-based code paths.
pub fn ensure_mask_width(num_vars: usize) -> Result<()> {
    if num_vars > 64 {
        return Err(Error::budget("variable count", num_vars, 64));
    }
    Ok(())
}
