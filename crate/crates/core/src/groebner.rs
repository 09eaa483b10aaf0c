//! Binomial edge ideal generators, admissible paths, the lex initial ideal,
//! and a Buchberger cross-check.
//!
//! For an edge `{i,j}` with `i < j` the generator is `x_i y_j - x_j y_i`,
//! whose lex leading term is `x_i y_j`. A path `i = i_0, .., i_r = j`
//! (`i < j`) is admissible when it is simple, every interior vertex is
//! `< i` or `> j`, and no proper subset of the interior vertices can be
//! rearranged into an `i`-`j` path. Each admissible path contributes the
//! initial-ideal generator `x_i y_j u_pi` with
//! `u_pi = prod_{i_k > j} x_{i_k} * prod_{i_l < i} y_{i_l}`.

use std::collections::HashMap;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::monomial::{Binomial, Monomial, MonomialIdeal, Variable};

/// An admissible path with its attached monomial and induced generator.
#[derive(Debug, Clone)]
pub struct AdmissiblePath {
    /// vertex sequence from the smaller endpoint to the larger one
    pub vertices: Vec<usize>,
    /// the interior monomial `u_pi`
    pub monomial: Monomial,
    /// `x_i y_j u_pi`
    pub generator: Monomial,
}

fn edge_binomial(n: usize, i: usize, j: usize) -> Binomial {
    debug_assert!(i < j);
    let lead = Monomial::variable(Variable::x(i).position(n), 2 * n)
        .mul_var(Variable::y(j).position(n));
    let trail = Monomial::variable(Variable::x(j).position(n), 2 * n)
        .mul_var(Variable::y(i).position(n));
    Binomial { lead, trail }
}

/// One generator `x_i y_j - x_j y_i` per edge, in edge order.
pub fn binomial_generators(g: &Graph) -> Vec<Binomial> {
    g.edges()
        .into_iter()
        .map(|(i, j)| edge_binomial(g.n(), i, j))
        .collect()
}

/// Is there a path from `i` to `j` visiting exactly the vertices of
/// `interior` (each once, in some order)?
fn reforms_path(g: &Graph, i: usize, j: usize, interior: &[usize]) -> bool {
    if interior.is_empty() {
        return g.has_edge(i, j);
    }
    fn go(g: &Graph, cur: usize, j: usize, left: u64, interior: &[usize]) -> bool {
        if left == 0 {
            return g.has_edge(cur, j);
        }
        for (k, &v) in interior.iter().enumerate() {
            if left >> k & 1 == 1 && g.has_edge(cur, v) && go(g, v, j, left & !(1 << k), interior) {
                return true;
            }
        }
        false
    }
    go(g, i, j, (1u64 << interior.len()) - 1, interior)
}

fn is_admissible(g: &Graph, path: &[usize]) -> bool {
    let (i, j) = (path[0], path[path.len() - 1]);
    let interior = &path[1..path.len() - 1];
    // proper subsets of the interior, the empty set included
    let full = (1u64 << interior.len()) - 1;
    for sub in 0..full {
        let chosen: Vec<usize> = interior
            .iter()
            .enumerate()
            .filter(|(k, _)| sub >> k & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if reforms_path(g, i, j, &chosen) {
            return false;
        }
    }
    true
}

/// Enumerates every admissible path of `g`, sorted by endpoints then by the
/// vertex sequence. Every edge appears as the path with no interior.
pub fn admissible_paths(g: &Graph) -> Vec<AdmissiblePath> {
    let n = g.n();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            // DFS over simple paths whose interior vertices are < i or > j
            let mut stack = vec![i];
            let mut candidates = Vec::new();
            fn dfs(
                g: &Graph,
                i: usize,
                j: usize,
                stack: &mut Vec<usize>,
                visited: u64,
                out: &mut Vec<Vec<usize>>,
            ) {
                let cur = *stack.last().unwrap();
                for v in g.neighbors(cur) {
                    if visited >> (v - 1) & 1 == 1 {
                        continue;
                    }
                    if v == j {
                        let mut p = stack.clone();
                        p.push(j);
                        out.push(p);
                        continue;
                    }
                    if v < i || v > j {
                        stack.push(v);
                        dfs(g, i, j, stack, visited | 1 << (v - 1), out);
                        stack.pop();
                    }
                }
            }
            dfs(g, i, j, &mut stack, 1 << (i - 1), &mut candidates);
            candidates.sort();
            for path in candidates {
                if is_admissible(g, &path) {
                    let mut u = Monomial::one(2 * n);
                    for &v in &path[1..path.len() - 1] {
                        if v > j {
                            u = u.mul_var(Variable::x(v).position(n));
                        } else {
                            u = u.mul_var(Variable::y(v).position(n));
                        }
                    }
                    let generator = u
                        .mul_var(Variable::x(i).position(n))
                        .mul_var(Variable::y(j).position(n));
                    out.push(AdmissiblePath {
                        vertices: path,
                        monomial: u,
                        generator,
                    });
                }
            }
        }
    }
    out
}

/// The lex initial ideal of the binomial edge ideal, generated by
/// `x_i y_j u_pi` over all admissible paths and then minimalized.
pub fn initial_ideal(g: &Graph) -> MonomialIdeal {
    MonomialIdeal::new(
        2 * g.n(),
        admissible_paths(g).into_iter().map(|p| p.generator).collect(),
    )
}

/// A reduced lex Groebner basis of a binomial edge ideal. S-pairs of pure
/// difference binomials reduce to pure difference binomials, so the basis
/// stays coefficient-free in every characteristic.
#[derive(Debug, Clone)]
pub struct ReducedBasis {
    pub n: usize,
    pub binomials: Vec<Binomial>,
}

impl ReducedBasis {
    /// Normal form of a monomial: repeatedly rewrite the unique divisible
    /// leading term. For a pure-difference basis the remainder is again a
    /// single monomial, never zero.
    pub fn reduce_monomial(&self, m: &Monomial) -> Monomial {
        let mut cur = m.clone();
        'outer: loop {
            for b in &self.binomials {
                if b.lead.divides(&cur) {
                    let q = cur.try_div(&b.lead).unwrap();
                    cur = q.mul(&b.trail);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.binomials.iter().all(|b| !b.lead.divides(m))
    }

    /// Ideal of leading terms (already minimal for a reduced basis).
    pub fn leading_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            2 * self.n,
            self.binomials.iter().map(|b| b.lead.clone()).collect(),
        )
    }
}

fn reduce_binomial(basis: &[Binomial], mut a: Monomial, mut b: Monomial) -> Option<Binomial> {
    // reduce both terms to normal form, then compare
    'a: loop {
        for g in basis {
            if g.lead.divides(&a) {
                a = a.try_div(&g.lead).unwrap().mul(&g.trail);
                continue 'a;
            }
        }
        break;
    }
    'b: loop {
        for g in basis {
            if g.lead.divides(&b) {
                b = b.try_div(&g.lead).unwrap().mul(&g.trail);
                continue 'b;
            }
        }
        break;
    }
    Binomial::new(a, b)
}

/// Runs Buchberger's algorithm on the edge binomials and returns the reduced
/// Groebner basis. Budgeted by the number of ring variables.
pub fn buchberger(g: &Graph, cfg: &Config) -> Result<ReducedBasis> {
    let n = g.n();
    if 2 * n > cfg.max_groebner_vars {
        return Err(Error::budget(
            "Buchberger ring variables",
            2 * n,
            cfg.max_groebner_vars,
        ));
    }
    let mut basis: Vec<Binomial> = binomial_generators(g);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (fi, fj) = (&basis[i], &basis[j]);
        let l = fi.lead.lcm(&fj.lead);
        // coprime leading terms: the S-pair reduces to zero
        if l.degree() == fi.lead.degree() + fj.lead.degree() {
            continue;
        }
        let a = l.try_div(&fi.lead).unwrap().mul(&fi.trail);
        let b = l.try_div(&fj.lead).unwrap().mul(&fj.trail);
        if let Some(s) = reduce_binomial(&basis, a, b) {
            let k = basis.len();
            basis.push(s);
            for t in 0..k {
                pairs.push((t, k));
            }
        }
    }

    // minimalize: drop elements whose lead is divisible by another lead
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && basis[j].lead.divides(&basis[i].lead)
                && (basis[j].lead != basis[i].lead || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Binomial> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(b, k)| k.then_some(b))
        .collect();

    // reduce tails against the other leads
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, b) in minimal.iter().enumerate() {
        let others: Vec<Binomial> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let mut t = b.trail.clone();
        'red: loop {
            for g in &others {
                if g.lead.divides(&t) {
                    t = t.try_div(&g.lead).unwrap().mul(&g.trail);
                    continue 'red;
                }
            }
            break;
        }
        reduced.push(Binomial {
            lead: b.lead.clone(),
            trail: t,
        });
    }
    reduced.sort_by(|a, b| {
        a.lead
            .degree()
            .cmp(&b.lead.degree())
            .then(b.lead.lex_cmp(&a.lead))
    });
    Ok(ReducedBasis { n, binomials: reduced })
}

/// Initial ideal via the Buchberger oracle; must agree with
/// [`initial_ideal`] on every input.
pub fn buchberger_initial_ideal(g: &Graph, cfg: &Config) -> Result<MonomialIdeal> {
    Ok(buchberger(g, cfg)?.leading_ideal())
}

/// Normal form of `m * v` modulo the reduced basis, expressed in standard
/// monomials. For pure-difference bases this is a single monomial with
/// coefficient one, in every characteristic.
pub fn normal_form(basis: &ReducedBasis, m: &Monomial, v: Variable) -> Vec<(Monomial, i64)> {
    let prod = m.mul_var(v.position(basis.n));
    vec![(basis.reduce_monomial(&prod), 1)]
}

/// Memoizing wrapper around variable-multiplication normal forms, used by the
/// Koszul engine where the same products recur across exterior generators.
pub struct NormalFormCache<'a> {
    basis: &'a ReducedBasis,
    cache: HashMap<(usize, Monomial), Monomial>,
}

impl<'a> NormalFormCache<'a> {
    pub fn new(basis: &'a ReducedBasis) -> Self {
        NormalFormCache {
            basis,
            cache: HashMap::new(),
        }
    }

    pub fn mul_var(&mut self, m: &Monomial, pos: usize) -> Monomial {
        if let Some(r) = self.cache.get(&(pos, m.clone())) {
            return r.clone();
        }
        let r = self.basis.reduce_monomial(&m.mul_var(pos));
        self.cache.insert((pos, m.clone()), r.clone());
        r
    }
}
