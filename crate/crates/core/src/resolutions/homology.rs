//! Reduced simplicial homology over a prime field or the rationals.
//!
//! Faces are bitmasks over a ground set of at most 64 elements; the empty
//! face lives at cardinality 0 (dimension -1), so the (-1)-st reduced
//! homology of the irrelevant complex `{{}}` comes out as 1 without special
//! cases.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::resolutions::matrix::SparseMatrix;

/// A simplicial complex given by its facets, on a ground set of <= 64
/// elements encoded as bit positions.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    ground: usize,
    facets: Vec<u64>,
}

impl SimplicialComplex {
    /// Builds a complex from facet bitmasks. Nested and duplicate facets are
    /// dropped. An empty facet list yields the irrelevant complex `{{}}`.
    pub fn from_facets(ground: usize, facets: Vec<u64>) -> Result<Self> {
        if ground > 64 {
            return Err(Error::budget("simplicial ground set", ground, 64));
        }
        let mut fs: Vec<u64> = facets;
        fs.sort_by_key(|f| std::cmp::Reverse(f.count_ones()));
        let mut maximal: Vec<u64> = Vec::new();
        for f in fs {
            if !maximal.iter().any(|&m| f & !m == 0) {
                maximal.push(f);
            }
        }
        maximal.sort_unstable();
        Ok(SimplicialComplex {
            ground,
            facets: maximal,
        })
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.count_ones() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    /// All faces grouped by cardinality (index 0 holds the empty face).
    pub fn faces_by_card(&self) -> Vec<Vec<u64>> {
        let max_card = self
            .facets
            .iter()
            .map(|f| f.count_ones() as usize)
            .max()
            .unwrap_or(0);
        let mut levels: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); max_card + 1];
        for &f in &self.facets {
            levels[f.count_ones() as usize].insert(f);
        }
        levels[0].insert(0);
        for c in (1..=max_card).rev() {
            let faces: Vec<u64> = levels[c].iter().copied().collect();
            for f in faces {
                let mut rest = f;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    levels[c - 1].insert(f & !bit);
                    rest &= rest - 1;
                }
            }
        }
        levels
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect()
    }

    /// Reduced Betti ranks `dim H~_k` for `k = -1 .. dim`, indexed by `k+1`.
    /// `p` is a prime, or 0 for rational homology (integer ranks).
    pub fn homology_ranks(&self, p: u32) -> Vec<usize> {
        homology_from_masks(&self.faces_by_card(), p)
    }
}

/// Reduced homology dimensions of a complex presented as faces grouped by
/// cardinality (index = number of vertices; index 0 = the empty face).
/// Output index `c` holds `dim H~_{c-1}`.
pub fn homology_from_masks(faces: &[Vec<u64>], p: u32) -> Vec<usize> {
    if faces.is_empty() || faces.iter().all(|l| l.is_empty()) {
        return Vec::new();
    }
    let top = faces.len();
    // index maps per level
    let maps: Vec<HashMap<u64, u32>> = faces
        .iter()
        .map(|level| {
            level
                .iter()
                .enumerate()
                .map(|(i, &f)| (f, i as u32))
                .collect()
        })
        .collect();
    // rank of the boundary map level c -> level c-1, rows indexed by domain
    let mut ranks = vec![0usize; top + 1];
    for c in 1..top {
        if faces[c].is_empty() {
            continue;
        }
        let mut mat = SparseMatrix::new(faces[c - 1].len());
        for &f in &faces[c] {
            let mut row = Vec::with_capacity(c);
            let mut rest = f;
            let mut sign = 1i64;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                let sub = f & !bit;
                let col = maps[c - 1]
                    .get(&sub)
                    .copied()
                    .expect("complex not closed under taking faces");
                row.push((col, sign));
                sign = -sign;
                rest &= rest - 1;
            }
            mat.push_row(row);
        }
        ranks[c] = mat.rank(p);
    }
    (0..top)
        .map(|c| faces[c].len() - ranks[c] - ranks[c + 1])
        .collect()
}
