//! Classification of block graphs with exactly one extremal Betti number:
//! the four forbidden induced subgraphs and the cutpoint criterion on the
//! restriction to non-pendant vertices.

use serde::Serialize;

use crate::block::{block_structure, is_block_graph, restrict_to_p};
use crate::error::{Error, Result};
use crate::generate::named_graph;
use crate::graph::Graph;

/// Identifier of a forbidden induced subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ForbiddenId {
    T0,
    T1,
    T2,
    T3,
}

impl ForbiddenId {
    pub fn all() -> [ForbiddenId; 4] {
        [ForbiddenId::T0, ForbiddenId::T1, ForbiddenId::T2, ForbiddenId::T3]
    }

    pub fn name(self) -> &'static str {
        match self {
            ForbiddenId::T0 => "T0",
            ForbiddenId::T1 => "T1",
            ForbiddenId::T2 => "T2",
            ForbiddenId::T3 => "T3",
        }
    }
}

/// Tag linking each obstruction to the clique-size pattern at the offending
/// cutpoint: alpha = three big cliques, beta = two, gamma = one, delta = none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

#[derive(Debug, Clone)]
pub struct ForbiddenGraph {
    pub id: ForbiddenId,
    pub graph: Graph,
    pub case_tag: CaseTag,
}

/// The four obstructions, in id order.
///
/// T0: three triangles sharing one vertex. T1: two triangles sharing v, plus
/// an edge from v to a vertex carrying two pendant leaves. T2: a triangle
/// vertex adjacent to two vertices that each carry two pendant leaves.
/// T3: a center adjacent to three vertices that each carry two pendant leaves.
pub fn forbidden_t_graphs() -> Vec<ForbiddenGraph> {
    let spec = [
        (ForbiddenId::T0, "t0", CaseTag::Alpha),
        (ForbiddenId::T1, "t1", CaseTag::Beta),
        (ForbiddenId::T2, "t2", CaseTag::Gamma),
        (ForbiddenId::T3, "t3", CaseTag::Delta),
    ];
    spec.iter()
        .map(|&(id, name, case_tag)| ForbiddenGraph {
            id,
            graph: named_graph(name).expect("fixture"),
            case_tag,
        })
        .collect()
}

/// Searches for an induced embedding of `pattern` into `host`: an injection
/// under which both adjacency and non-adjacency are preserved. Returns the
/// lexicographically smallest embedding (as the tuple of images of pattern
/// vertices 1, 2, ...) if any exists.
pub fn find_induced_embedding(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    let k = pattern.n();
    if k > host.n() {
        return None;
    }
    let host_degs: Vec<usize> = (1..=host.n()).map(|v| host.degree(v)).collect();
    let pat_degs: Vec<usize> = (1..=k).map(|v| pattern.degree(v)).collect();

    let mut image = vec![0usize; k];
    let mut used = 0u64;

    fn backtrack(
        host: &Graph,
        pattern: &Graph,
        host_degs: &[usize],
        pat_degs: &[usize],
        image: &mut Vec<usize>,
        used: &mut u64,
        depth: usize,
    ) -> bool {
        let k = pattern.n();
        if depth == k {
            return true;
        }
        for cand in 1..=host.n() {
            if *used >> (cand - 1) & 1 == 1 {
                continue;
            }
            if host_degs[cand - 1] < pat_degs[depth] {
                continue;
            }
            let ok = (0..depth).all(|prev| {
                pattern.has_edge(prev + 1, depth + 1) == host.has_edge(image[prev], cand)
            });
            if !ok {
                continue;
            }
            image[depth] = cand;
            *used |= 1 << (cand - 1);
            if backtrack(host, pattern, host_degs, pat_degs, image, used, depth + 1) {
                return true;
            }
            *used &= !(1 << (cand - 1));
        }
        false
    }

    if backtrack(host, pattern, &host_degs, &pat_degs, &mut image, &mut used, 0) {
        Some(image)
    } else {
        None
    }
}

/// First forbidden induced subgraph of `g` in id order, with its embedding.
pub fn contains_forbidden(g: &Graph) -> Option<(ForbiddenId, Vec<usize>)> {
    for fg in forbidden_t_graphs() {
        if let Some(embedding) = find_induced_embedding(g, &fg.graph) {
            return Some((fg.id, embedding));
        }
    }
    None
}

/// A cutpoint of the restriction `G_|P` lying in a number of maximal cliques
/// other than two.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CutpointViolation {
    /// original vertex label in `g`
    pub cutpoint: usize,
    /// number of maximal cliques of `G_|P` containing it
    pub clique_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CutpointCondition {
    pub ok: bool,
    pub violations: Vec<CutpointViolation>,
}

/// Checks that every cutpoint of every connected component of
/// `G_|P`, `P = {v : deg(v) != 1}`, lies in exactly two maximal cliques of
/// that restriction. Vacuously true when `P` is empty.
pub fn satisfies_cutpoint_condition(g: &Graph) -> Result<CutpointCondition> {
    let (gp, labels) = restrict_to_p(g)?;
    let mut violations = Vec::new();
    if gp.n() > 0 {
        for comp in gp.connected_components() {
            let (h, comp_labels) = gp.induced_subgraph(&comp)?;
            let bs = block_structure(&h)?;
            for &cut in &bs.cutpoints {
                let count = bs.cdeg_of(cut);
                if count != 2 {
                    violations.push(CutpointViolation {
                        cutpoint: labels[comp_labels[cut - 1] - 1],
                        clique_count: count,
                    });
                }
            }
        }
    }
    violations.sort_by_key(|v| v.cutpoint);
    Ok(CutpointCondition {
        ok: violations.is_empty(),
        violations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ForbiddenHit {
    pub id: ForbiddenId,
    /// embedding[k] = image of pattern vertex k+1 in the host graph
    pub embedding: Vec<usize>,
}

/// Verdict of the single-extremal-Betti classification.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationVerdict {
    pub indecomposable: bool,
    pub forbidden: Option<ForbiddenHit>,
    pub cutpoint_condition: CutpointCondition,
    pub predicted_single_extremal: bool,
    /// present for decomposable inputs: verdicts of the indecomposable pieces
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentVerdict>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentVerdict {
    pub labels: Vec<usize>,
    pub verdict: ClassificationVerdict,
}

/// Runs both tests on a connected block graph. For indecomposable inputs the
/// two tests must agree (that equivalence is the theorem under scrutiny); a
/// disagreement is returned as a verification failure, never papered over.
/// Decomposable inputs get per-component verdicts combined multiplicatively.
pub fn classify(g: &Graph) -> Result<ClassificationVerdict> {
    if !is_block_graph(g)? {
        return Err(Error::InvalidInput(
            "classification applies to connected block graphs only".into(),
        ));
    }
    let bs = block_structure(g)?;
    let indecomposable = bs.cdeg.iter().all(|&d| d != 2);
    let forbidden = contains_forbidden(g).map(|(id, embedding)| ForbiddenHit { id, embedding });
    let cutpoint_condition = satisfies_cutpoint_condition(g)?;

    if indecomposable {
        if forbidden.is_none() != cutpoint_condition.ok {
            return Err(Error::Verification(format!(
                "forbidden-subgraph test ({}) disagrees with the cutpoint test ({}) on an \
                 indecomposable block graph: n={}, edges={:?}",
                forbidden.is_none(),
                cutpoint_condition.ok,
                g.n(),
                g.edges()
            )));
        }
        let predicted = forbidden.is_none();
        Ok(ClassificationVerdict {
            indecomposable,
            forbidden,
            cutpoint_condition,
            predicted_single_extremal: predicted,
            components: None,
        })
    } else {
        let dec = crate::block::decompose(g)?;
        let mut comps = Vec::new();
        let mut predicted = true;
        for c in &dec.components {
            let v = classify(&c.graph)?;
            predicted &= v.predicted_single_extremal;
            comps.push(ComponentVerdict {
                labels: c.labels.clone(),
                verdict: v,
            });
        }
        Ok(ClassificationVerdict {
            indecomposable,
            forbidden,
            cutpoint_condition,
            predicted_single_extremal: predicted,
            components: Some(comps),
        })
    }
}
