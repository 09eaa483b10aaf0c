//! Corpus generation: named fixtures, exhaustive enumeration of connected
//! block graphs up to isomorphism, and seeded random block graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::block::{block_structure, maximal_cliques};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Well-known small instances by name.
///
/// `kN` is the complete graph, `k1M` the star with M leaves, `pN` the path,
/// `paw` a triangle with a pendant edge, `bowtie` two triangles sharing a
/// vertex, `double-star` two adjacent centers with two leaves each, and
/// `t0..t3` the four minimal obstructions to a single extremal Betti number.
pub fn named_graph(name: &str) -> Result<Graph> {
    let bad = || Error::InvalidInput(format!("unknown graph name {name:?}"));
    match name {
        "paw" => Graph::new(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]),
        "bowtie" => Graph::new(5, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)]),
        "double-star" => Graph::new(6, &[(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)]),
        "k13" => Ok(Graph::star(3)),
        "t0" => Graph::new(
            7,
            &[
                (1, 2),
                (1, 7),
                (2, 7),
                (3, 4),
                (3, 7),
                (4, 7),
                (5, 6),
                (5, 7),
                (6, 7),
            ],
        ),
        "t1" => Graph::new(
            8,
            &[
                (1, 2),
                (1, 5),
                (2, 5),
                (3, 4),
                (3, 5),
                (4, 5),
                (5, 6),
                (6, 7),
                (6, 8),
            ],
        ),
        "t2" => Graph::new(
            9,
            &[
                (1, 2),
                (1, 3),
                (2, 3),
                (1, 4),
                (1, 5),
                (4, 6),
                (4, 7),
                (5, 8),
                (5, 9),
            ],
        ),
        "t3" => Graph::new(
            10,
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 5),
                (2, 6),
                (3, 7),
                (3, 8),
                (4, 9),
                (4, 10),
            ],
        ),
        _ => {
            if let Some(m) = name.strip_prefix("k1,").or_else(|| name.strip_prefix("k1_")) {
                let leaves: usize = m.parse().map_err(|_| bad())?;
                return Ok(Graph::star(leaves));
            }
            if let Some(m) = name.strip_prefix('k') {
                let n: usize = m.parse().map_err(|_| bad())?;
                return Ok(Graph::complete(n));
            }
            if let Some(m) = name.strip_prefix('p') {
                let n: usize = m.parse().map_err(|_| bad())?;
                return Ok(Graph::path(n));
            }
            Err(bad())
        }
    }
}

/// Canonical code of a connected block graph.
///
/// A connected block graph is determined up to isomorphism by its block-cut
/// tree decorated with block sizes, so an AHU encoding of that tree (rooted
/// at its center) is a complete isomorphism invariant for this class.
pub fn block_graph_code(g: &Graph) -> Result<String> {
    let bs = block_structure(g)?;
    let b = bs.blocks.len();
    let c = bs.cutpoints.len();
    // tree nodes: 0..b are blocks, b..b+c are cutpoints
    let total = b + c;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (bi, block) in bs.blocks.iter().enumerate() {
        for (ci, &cut) in bs.cutpoints.iter().enumerate() {
            if block.contains(&cut) {
                adj[bi].push(b + ci);
                adj[b + ci].push(bi);
            }
        }
    }
    let label = |node: usize| -> String {
        if node < b {
            format!("B{}", bs.blocks[node].len())
        } else {
            "C".to_string()
        }
    };

    fn encode(node: usize, parent: usize, adj: &[Vec<usize>], label: &dyn Fn(usize) -> String) -> String {
        let mut child_codes: Vec<String> = adj[node]
            .iter()
            .filter(|&&c| c != parent)
            .map(|&c| encode(c, node, adj, label))
            .collect();
        child_codes.sort();
        format!("{}({})", label(node), child_codes.join(","))
    }

    if total == 1 {
        return Ok(encode(0, usize::MAX, &adj, &label));
    }

    // tree center: repeatedly strip leaves
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; total];
    let mut layer: Vec<usize> = (0..total).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = total;
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &w in &adj[v] {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let centers: Vec<usize> = (0..total).filter(|&v| !removed[v]).collect();
    let code = centers
        .iter()
        .map(|&c| encode(c, usize::MAX, &adj, &label))
        .min()
        .unwrap();
    Ok(code)
}

/// All connected block graphs with `1..=n_max` vertices, one representative
/// per isomorphism class, grown by attaching cliques at existing vertices.
pub fn all_block_graphs(n_max: usize) -> Result<Vec<Graph>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out: Vec<Graph> = Vec::new();
    let mut queue: Vec<Graph> = Vec::new();

    for m in 1..=n_max {
        let g = Graph::complete(m);
        let code = block_graph_code(&g)?;
        if seen.insert(code) {
            out.push(g.clone());
            queue.push(g);
        }
    }

    while let Some(g) = queue.pop() {
        let n = g.n();
        for k in 2..=n_max {
            if n + k - 1 > n_max {
                continue;
            }
            for at in 1..=n {
                let mut edges = g.edges();
                // new clique on {at, n+1, .., n+k-1}
                let mut verts = vec![at];
                verts.extend(n + 1..=n + k - 1);
                for a in 0..verts.len() {
                    for b in a + 1..verts.len() {
                        edges.push((verts[a], verts[b]));
                    }
                }
                let h = Graph::new(n + k - 1, &edges)?;
                let code = block_graph_code(&h)?;
                if seen.insert(code) {
                    out.push(h.clone());
                    queue.push(h);
                }
            }
        }
    }

    out.sort_by_key(|g| (g.n(), g.edge_count(), g.edges()));
    Ok(out)
}

/// Is any vertex of this connected block graph of clique degree 2?
pub fn is_indecomposable_block_graph(g: &Graph) -> Result<bool> {
    let bs = block_structure(g)?;
    Ok(bs.cdeg.iter().all(|&d| d != 2))
}

/// Seeded random connected block graph with at most `n_max` vertices and
/// blocks of at most `max_clique` vertices. The same seed always yields the
/// same graph. With `require_indecomposable`, no vertex ends up in exactly
/// two maximal cliques.
pub fn random_block_graph(
    n_max: usize,
    max_clique: usize,
    require_indecomposable: bool,
    seed: u64,
) -> Result<Graph> {
    if n_max < 2 {
        return Err(Error::InvalidInput("random_block_graph needs n_max >= 2".into()));
    }
    if max_clique < 2 {
        return Err(Error::InvalidInput("max_clique must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _attempt in 0..64 {
        let first = rng.gen_range(2..=max_clique.min(n_max));
        let mut g = Graph::complete(first);
        // grow with random clique attachments, leaving room for repairs
        loop {
            let room = n_max - g.n();
            if room == 0 || rng.gen_range(0..4) == 0 {
                break;
            }
            let k = rng.gen_range(2..=max_clique.min(room + 1));
            let at = rng.gen_range(1..=g.n());
            g = attach_clique(&g, at, k)?;
        }
        if !require_indecomposable {
            return Ok(g);
        }
        // repair pass: raise every cdeg-2 vertex to cdeg 3 with a new edge
        loop {
            let cliques = maximal_cliques(&g);
            let mut cdeg = vec![0usize; g.n()];
            for c in &cliques {
                for &v in c {
                    cdeg[v - 1] += 1;
                }
            }
            let bad: Vec<usize> = (1..=g.n()).filter(|&v| cdeg[v - 1] == 2).collect();
            if bad.is_empty() {
                return Ok(g);
            }
            if g.n() + bad.len() > n_max {
                break; // no room; retry from scratch
            }
            for v in bad {
                g = attach_clique(&g, v, 2)?;
            }
        }
    }
    Err(Error::InvalidInput(format!(
        "could not build an indecomposable block graph with n_max={n_max}, max_clique={max_clique}"
    )))
}

fn attach_clique(g: &Graph, at: usize, k: usize) -> Result<Graph> {
    let n = g.n();
    let mut edges = g.edges();
    let mut verts = vec![at];
    verts.extend(n + 1..=n + k - 1);
    for a in 0..verts.len() {
        for b in a + 1..verts.len() {
            edges.push((verts[a], verts[b]));
        }
    }
    Graph::new(n + k - 1, &edges)
}
