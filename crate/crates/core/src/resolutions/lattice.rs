//! Betti numbers of a monomial ideal through its lcm lattice: each lattice
//! element contributes the reduced homology of the open interval below it.
//!
//! Small intervals are handled literally, as order complexes of chains. Big
//! intervals switch to the crosscut complex on the atoms (subsets of minimal
//! generators whose join stays below the element), which is homotopy
//! equivalent to the order complex; the two routes are asserted equal on
//! every small instance by the test suite. Squarefree ideals run entirely on
//! support bitmasks, and faces beyond cardinality `#vars + 1` are never
//! enumerated: homology there corresponds to homological degrees past the
//! projective dimension, which vanish.

use std::collections::{BTreeMap, HashMap};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::resolutions::homology::homology_from_masks;
use crate::resolutions::BettiTable;

/// Distinct lcms of nonempty generator subsets, ordered by divisibility.
/// The bottom element (the unit monomial) is implicit.
#[derive(Debug, Clone)]
pub struct LcmLattice {
    /// sorted by (total degree, lex-descending)
    pub elements: Vec<Monomial>,
}

/// Joins of generator subsets, computed as a fixpoint under pairwise joins
/// with the generators. Errors out beyond the configured budgets.
pub fn lcm_lattice(ideal: &MonomialIdeal, cfg: &Config) -> Result<LcmLattice> {
    let gens = ideal.gens();
    if gens.len() > cfg.max_lattice_generators {
        return Err(Error::budget(
            "lcm-lattice generators",
            gens.len(),
            cfg.max_lattice_generators,
        ));
    }
    let squarefree = gens.iter().all(|g| g.is_squarefree());
    let mut elements: Vec<Monomial> = if squarefree && ideal.num_vars() <= 64 {
        // joins of squarefree monomials are unions of support masks
        let gen_masks: Vec<u64> = gens.iter().map(|g| g.support_mask()).collect();
        let mut seen: std::collections::HashSet<u64> = gen_masks.iter().copied().collect();
        let mut frontier: Vec<u64> = seen.iter().copied().collect();
        while let Some(m) = frontier.pop() {
            for &g in &gen_masks {
                let j = m | g;
                if seen.insert(j) {
                    if seen.len() > cfg.max_lattice_elements {
                        return Err(Error::budget(
                            "lcm-lattice elements",
                            seen.len(),
                            cfg.max_lattice_elements,
                        ));
                    }
                    frontier.push(j);
                }
            }
        }
        seen.into_iter()
            .map(|mask| {
                let mut exps = vec![0u8; ideal.num_vars()];
                for b in crate::graph::BitIter(mask) {
                    exps[b as usize] = 1;
                }
                Monomial::from_exps(exps)
            })
            .collect()
    } else {
        let mut seen: std::collections::BTreeSet<Monomial> = gens.iter().cloned().collect();
        let mut frontier: Vec<Monomial> = seen.iter().cloned().collect();
        while let Some(m) = frontier.pop() {
            for g in gens {
                let j = m.lcm(g);
                if !seen.contains(&j) {
                    if seen.len() >= cfg.max_lattice_elements {
                        return Err(Error::budget(
                            "lcm-lattice elements",
                            seen.len() + 1,
                            cfg.max_lattice_elements,
                        ));
                    }
                    seen.insert(j.clone());
                    frontier.push(j);
                }
            }
        }
        seen.into_iter().collect()
    };
    elements.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.lex_cmp(a)));
    Ok(LcmLattice { elements })
}

/// Monomial Betti data: the graded table plus the multigraded refinement
/// (one value per lattice element), which the Koszul engine consumes.
#[derive(Debug, Clone)]
pub struct MonomialBetti {
    pub table: BettiTable,
    /// (homological degree, lattice element) -> multigraded Betti number
    pub multigraded: BTreeMap<(usize, Monomial), u64>,
}

/// Lattice element with precomputed support data for fast divisibility.
pub(crate) struct LatticeElem {
    pub mono: Monomial,
    mask: u64,
    squarefree: bool,
    degree: usize,
}

impl LatticeElem {
    pub(crate) fn new(mono: Monomial) -> Self {
        LatticeElem {
            mask: mono.support_mask(),
            squarefree: mono.is_squarefree(),
            degree: mono.degree(),
            mono,
        }
    }

    fn strictly_divides(&self, other: &LatticeElem) -> bool {
        if self.degree >= other.degree || self.mask & !other.mask != 0 {
            return false;
        }
        if self.squarefree && other.squarefree {
            return true;
        }
        self.mono.divides(&other.mono)
    }
}

const ORDER_COMPLEX_MAX_ELEMENTS: usize = 14;
const ORDER_COMPLEX_MAX_CHAINS: usize = 20_000;

/// Homology of the order complex of the open interval, enumerated as chains.
/// `interval` holds indices into `elems`. Returns `None` when the interval
/// is too large for this route.
pub(crate) fn interval_homology_order_complex(
    elems: &[LatticeElem],
    interval: &[usize],
    p: u32,
) -> Option<Vec<usize>> {
    let k = interval.len();
    if k > ORDER_COMPLEX_MAX_ELEMENTS {
        return None;
    }
    // strict divisibility among interval members, indexed locally
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); k];
    for a in 0..k {
        for b in 0..k {
            if a != b && elems[interval[a]].strictly_divides(&elems[interval[b]]) {
                above[a].push(b);
            }
        }
    }
    // cone point: an element comparable to every other one => contractible
    if k > 0 {
        for a in 0..k {
            let comparable = (0..k)
                .filter(|&b| b != a)
                .all(|b| above[a].contains(&b) || above[b].contains(&a));
            if comparable {
                return Some(Vec::new());
            }
        }
    }
    // enumerate chains as faces; a chain is encoded by its member bitmask,
    // always extended at its top, so each chain appears exactly once
    let mut faces: Vec<Vec<u64>> = vec![vec![0u64]];
    let mut count = 1usize;
    let mut stack: Vec<(usize, u64)> = (0..k).map(|a| (a, 1u64 << a)).collect();
    while let Some((last, mask)) = stack.pop() {
        count += 1;
        if count > ORDER_COMPLEX_MAX_CHAINS {
            return None;
        }
        let card = mask.count_ones() as usize;
        if faces.len() <= card {
            faces.resize(card + 1, Vec::new());
        }
        faces[card].push(mask);
        for &b in &above[last] {
            stack.push((b, mask | 1 << b));
        }
    }
    Some(homology_from_masks(&faces, p))
}

/// Homology of the crosscut complex on the atoms below `top`: faces are the
/// atom subsets whose join is not yet `top`. `max_card` truncates the
/// enumeration; entries of the result are only reported below it (higher
/// homology belongs to homological degrees past the projective dimension).
fn crosscut_homology_masks(
    atom_masks: &[u64],
    top: u64,
    max_card: usize,
    p: u32,
    face_budget: usize,
) -> Result<Vec<usize>> {
    let r = atom_masks.len();
    let mut faces: Vec<Vec<u64>> = vec![vec![0u64]];
    let mut count = 1usize;
    let mut stack: Vec<(usize, u64, u64)> = Vec::new();
    for a in (0..r).rev() {
        stack.push((a, 1u64 << a, atom_masks[a]));
    }
    while let Some((last, mask, join)) = stack.pop() {
        if join == top {
            continue; // covers: not a face, nor are its supersets
        }
        count += 1;
        if count > face_budget {
            return Err(Error::budget("crosscut complex faces", count, face_budget));
        }
        let card = mask.count_ones() as usize;
        if faces.len() <= card {
            faces.resize(card + 1, Vec::new());
        }
        faces[card].push(mask);
        if card < max_card {
            for b in (last + 1)..r {
                stack.push((b, mask | 1 << b, join | atom_masks[b]));
            }
        }
    }
    let mut hom = homology_from_masks(&faces, p);
    hom.truncate(max_card); // the truncated top level is not trustworthy
    Ok(hom)
}

/// General-monomial variant; joins are lcms of exponent vectors.
fn crosscut_homology_monomials(
    atoms: &[&Monomial],
    top: &Monomial,
    max_card: usize,
    p: u32,
    face_budget: usize,
) -> Result<Vec<usize>> {
    let r = atoms.len();
    let mut faces: Vec<Vec<u64>> = vec![vec![0u64]];
    let mut count = 1usize;
    let mut stack: Vec<(usize, u64, Monomial)> = Vec::new();
    for a in (0..r).rev() {
        stack.push((a, 1u64 << a, (*atoms[a]).clone()));
    }
    while let Some((last, mask, join)) = stack.pop() {
        if &join == top {
            continue;
        }
        count += 1;
        if count > face_budget {
            return Err(Error::budget("crosscut complex faces", count, face_budget));
        }
        let card = mask.count_ones() as usize;
        if faces.len() <= card {
            faces.resize(card + 1, Vec::new());
        }
        faces[card].push(mask);
        if card < max_card {
            for b in (last + 1)..r {
                stack.push((b, mask | 1 << b, join.lcm(atoms[b])));
            }
        }
    }
    let mut hom = homology_from_masks(&faces, p);
    hom.truncate(max_card);
    Ok(hom)
}

/// Drops masks contained in another mask, largest first.
fn maximal_masks(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut out: Vec<u64> = Vec::new();
    for m in masks {
        if !out.iter().any(|&o| m & !o == 0) {
            out.push(m);
        }
    }
    out
}

/// Reduced homology of a union of full simplices, given by their vertex
/// masks. The crosscut complex of an interval is such a union (one simplex
/// per variable of the top element), and so is its nerve (one simplex per
/// atom, on the variables where the atom falls short); the two are nerves of
/// each other, so this routine flips between the presentations while the
/// vertex count shrinks, then enumerates the smaller one.
fn union_of_simplices_homology(
    masks: Vec<u64>,
    p: u32,
    face_budget: usize,
) -> Result<Vec<usize>> {
    let mut masks = maximal_masks(masks);
    loop {
        if masks.is_empty() {
            return Ok(Vec::new());
        }
        if masks.len() == 1 {
            // a single simplex: contractible (or just the empty face)
            return Ok(if masks[0] == 0 { vec![1] } else { Vec::new() });
        }
        let universe = masks.iter().fold(0u64, |a, &b| a | b);
        let nverts = universe.count_ones() as usize;
        if masks.len() < nverts {
            // nerve of the cover by simplices: vertex v of the new complex
            // is an old simplex, simplices are indexed by old vertices
            let flipped: Vec<u64> = crate::graph::BitIter(universe)
                .map(|v| {
                    masks
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| m >> v & 1 == 1)
                        .fold(0u64, |a, (k, _)| a | 1 << k)
                })
                .collect();
            masks = maximal_masks(flipped);
            continue;
        }
        if nverts > 26 {
            return Err(Error::budget("union-of-simplices vertices", nverts, 26));
        }
        // enumerate the faces: subsets of the member simplices, deduplicated
        let mut seen: std::collections::HashSet<u64> =
            std::collections::HashSet::new();
        for &m in &masks {
            let mut sigma = m;
            loop {
                seen.insert(sigma);
                if seen.len() > face_budget {
                    return Err(Error::budget(
                        "union-of-simplices faces",
                        seen.len(),
                        face_budget,
                    ));
                }
                if sigma == 0 {
                    break;
                }
                sigma = (sigma - 1) & m;
            }
        }
        let mut faces: Vec<Vec<u64>> = Vec::new();
        for sigma in seen {
            let card = sigma.count_ones() as usize;
            if faces.len() <= card {
                faces.resize(card + 1, Vec::new());
            }
            faces[card].push(sigma);
        }
        for level in faces.iter_mut() {
            level.sort_unstable();
        }
        return Ok(homology_from_masks(&faces, p));
    }
}

/// Relabels the vertices of a mask family to the low bits and sorts, so that
/// identical complexes met at different lattice elements share one key.
fn packed_key(masks: &[u64]) -> Vec<u64> {
    let universe = masks.iter().fold(0u64, |a, &b| a | b);
    let verts: Vec<u32> = crate::graph::BitIter(universe).collect();
    let mut packed: Vec<u64> = masks
        .iter()
        .map(|&m| {
            verts
                .iter()
                .enumerate()
                .fold(0u64, |acc, (k, &v)| acc | (((m >> v) & 1) << k))
        })
        .collect();
    packed.sort_unstable();
    packed
}

/// Homology of the crosscut complex of the interval below `top`, through the
/// union-of-simplices reducer applied to the atom deficiency masks (for each
/// atom, the variables of `top` where its exponent falls short). Results are
/// memoized across lattice elements by the packed mask family.
fn crosscut_homology_nerve(
    atoms: &[&Monomial],
    top: &Monomial,
    p: u32,
    face_budget: usize,
    memo: &std::sync::Mutex<HashMap<Vec<u64>, Vec<usize>>>,
) -> Result<Vec<usize>> {
    let deficiency: Vec<u64> = atoms
        .iter()
        .map(|a| {
            let mut m = 0u64;
            for pos in 0..top.num_vars() {
                if top.exp(pos) > 0 && a.exp(pos) < top.exp(pos) {
                    m |= 1 << pos;
                }
            }
            m
        })
        .collect();
    let key = packed_key(&maximal_masks(deficiency.clone()));
    if let Some(h) = memo.lock().unwrap().get(&key) {
        return Ok(h.clone());
    }
    let h = union_of_simplices_homology(deficiency, p, face_budget)?;
    memo.lock().unwrap().insert(key, h.clone());
    Ok(h)
}

/// Graded (and multigraded) Betti numbers of `S/I` for a minimally generated
/// monomial ideal `I`, through lcm-lattice interval homology. `p` is a prime
/// or 0 for the rationals.
pub fn betti_monomial(ideal: &MonomialIdeal, p: u32, cfg: &Config) -> Result<MonomialBetti> {
    let mut entries: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut multigraded: BTreeMap<(usize, Monomial), u64> = BTreeMap::new();
    entries.insert((0, 0), 1);

    if ideal.is_zero() {
        return Ok(MonomialBetti {
            table: BettiTable::total(p, entries),
            multigraded,
        });
    }
    let appearing = ideal.appearing_vars().len();
    if appearing > cfg.max_monomial_vars {
        return Err(Error::budget(
            "monomial engine variables",
            appearing,
            cfg.max_monomial_vars,
        ));
    }
    // homological degrees beyond the variable count cannot carry Betti
    // numbers, so faces past this cardinality are never needed
    let max_card = appearing + 1;
    let lattice = lcm_lattice(ideal, cfg)?;
    let elems: Vec<LatticeElem> = lattice
        .elements
        .iter()
        .map(|m| LatticeElem::new(m.clone()))
        .collect();
    let gens_squarefree = ideal.gens().iter().all(|g| g.is_squarefree());

    const CROSSCUT_MAX_ATOMS: usize = 12;
    let memo: std::sync::Mutex<HashMap<Vec<u64>, Vec<usize>>> =
        std::sync::Mutex::new(HashMap::new());
    let interval_homology = |top: &LatticeElem| -> Result<Vec<usize>> {
        let interval: Vec<usize> = (0..elems.len())
            .filter(|&k| elems[k].strictly_divides(top))
            .collect();
        match interval_homology_order_complex(&elems, &interval, p) {
            Some(h) => Ok(h),
            None => {
                let atoms: Vec<&Monomial> = ideal
                    .gens()
                    .iter()
                    .filter(|g| g.divides(&top.mono))
                    .collect();
                if atoms.len() > CROSSCUT_MAX_ATOMS {
                    crosscut_homology_nerve(&atoms, &top.mono, p, cfg.max_matrix_nonzeros, &memo)
                } else if gens_squarefree {
                    let atom_masks: Vec<u64> = atoms.iter().map(|g| g.support_mask()).collect();
                    crosscut_homology_masks(
                        &atom_masks,
                        top.mask,
                        max_card,
                        p,
                        cfg.max_matrix_nonzeros,
                    )
                } else {
                    crosscut_homology_monomials(
                        &atoms,
                        &top.mono,
                        max_card,
                        p,
                        cfg.max_matrix_nonzeros,
                    )
                }
            }
        }
    };
    // elements are independent; compute in parallel, then aggregate in index
    // order (and report the first error by index) so output is deterministic
    // whatever the schedule
    use rayon::prelude::*;
    let results: Vec<Result<Vec<usize>>> = elems.par_iter().map(interval_homology).collect();
    for (top, hom) in elems.iter().zip(results) {
        let hom = hom?;
        let j = top.degree;
        for (card, &dim) in hom.iter().enumerate() {
            if dim > 0 {
                let i = card + 1;
                *entries.entry((i, j)).or_insert(0) += dim as u64;
                *multigraded.entry((i, top.mono.clone())).or_insert(0) += dim as u64;
            }
        }
    }

    Ok(MonomialBetti {
        table: BettiTable::total(p, entries),
        multigraded,
    })
}

/// Cache of monomial Betti data keyed by the generator list, for runs that
/// consult the same initial ideal repeatedly.
#[derive(Default)]
pub struct MonomialBettiCache {
    map: HashMap<(u32, Vec<Monomial>), MonomialBetti>,
}

impl MonomialBettiCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, ideal: &MonomialIdeal, p: u32, cfg: &Config) -> Result<MonomialBetti> {
        let key = (p, ideal.gens().to_vec());
        if let Some(v) = self.map.get(&key) {
            return Ok(v.clone());
        }
        let v = betti_monomial(ideal, p, cfg)?;
        self.map.insert(key, v.clone());
        Ok(v)
    }
}
