//! Block structure of a connected graph: biconnected components, maximal
//! cliques, clique degrees, the decomposition at clique-degree-2 cutpoints,
//! and the leaf surgery on block graphs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{mask_to_vertices, BitIter, Graph};

/// Blocks, cutpoints, maximal cliques and clique-degree bookkeeping.
///
/// `cdeg(v)` is the number of maximal cliques containing `v`; a vertex is
/// free when `cdeg = 1` and inner when `cdeg > 1`. `f` and `i` count them.
#[derive(Debug, Clone, Serialize)]
pub struct BlockStructure {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub blocks: Vec<Vec<usize>>,
    pub cutpoints: Vec<usize>,
    pub maximal_cliques: Vec<Vec<usize>>,
    /// cdeg[k] = clique degree of vertex k+1.
    pub cdeg: Vec<usize>,
    pub free_vertices: Vec<usize>,
    pub inner_vertices: Vec<usize>,
    pub f: usize,
    pub i: usize,
}

/// One piece of a decomposition, with its injective label map back into the
/// original graph (`labels[k]` = original label of vertex k+1).
#[derive(Debug, Clone, Serialize)]
pub struct Component {
    #[serde(flatten)]
    pub graph_json: crate::graph::GraphJson,
    #[serde(skip)]
    pub graph: Graph,
    pub labels: Vec<usize>,
}

impl Component {
    fn new(graph: Graph, labels: Vec<usize>) -> Self {
        Component {
            graph_json: (&graph).into(),
            graph,
            labels,
        }
    }
}

/// Decomposition of a connected graph into indecomposable components glued
/// at clique-degree-2 cutpoints.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub components: Vec<Component>,
    pub gluing_vertices: Vec<usize>,
    pub s: usize,
}

/// The subgraphs used in the induction on a leaf block: `g_prime` replaces
/// the blocks at the cut vertex by one clique, `g_double_prime` removes the
/// cut vertex from the graph, `h` removes it from `g_prime`.
#[derive(Debug, Clone)]
pub struct LeafSurgery {
    pub cutpoint: usize,
    pub g_prime: Graph,
    pub g_double_prime: Graph,
    pub g_double_prime_labels: Vec<usize>,
    pub h: Graph,
    pub h_labels: Vec<usize>,
    /// q + 1 = number of connected components of `g_double_prime`.
    pub q: usize,
}

/// Biconnected components (blocks) and cutpoints via Tarjan's DFS.
/// Isolated vertices count as singleton blocks.
fn biconnected(g: &Graph) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = g.n();
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut timer = 0usize;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut is_cut = vec![false; n + 1];

    struct Dfs<'a> {
        g: &'a Graph,
        disc: &'a mut Vec<usize>,
        low: &'a mut Vec<usize>,
        timer: &'a mut usize,
        stack: &'a mut Vec<(usize, usize)>,
        blocks: &'a mut Vec<Vec<usize>>,
        is_cut: &'a mut Vec<bool>,
    }

    impl Dfs<'_> {
        fn run(&mut self, u: usize, parent: usize) {
            *self.timer += 1;
            self.disc[u] = *self.timer;
            self.low[u] = *self.timer;
            let mut children = 0usize;
            for v in self.g.neighbors(u) {
                if self.disc[v] == 0 {
                    children += 1;
                    self.stack.push((u, v));
                    self.run(v, u);
                    self.low[u] = self.low[u].min(self.low[v]);
                    if (parent != 0 && self.low[v] >= self.disc[u])
                        || (parent == 0 && children > 1)
                    {
                        self.is_cut[u] = true;
                    }
                    if self.low[v] >= self.disc[u] {
                        let mut verts = 0u64;
                        while let Some(&(a, b)) = self.stack.last() {
                            self.stack.pop();
                            verts |= 1u64 << (a - 1) | 1u64 << (b - 1);
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        self.blocks.push(mask_to_vertices(verts));
                    }
                } else if v != parent && self.disc[v] < self.disc[u] {
                    self.stack.push((u, v));
                    self.low[u] = self.low[u].min(self.disc[v]);
                }
            }
        }
    }

    let mut dfs = Dfs {
        g,
        disc: &mut disc,
        low: &mut low,
        timer: &mut timer,
        stack: &mut stack,
        blocks: &mut blocks,
        is_cut: &mut is_cut,
    };
    for root in 1..=n {
        if dfs.disc[root] == 0 {
            dfs.run(root, 0);
            if g.degree(root) == 0 {
                dfs.blocks.push(vec![root]);
            }
        }
    }
    blocks.sort();
    let cutpoints = (1..=n).filter(|&v| is_cut[v]).collect();
    (blocks, cutpoints)
}

/// All maximal cliques (Bron-Kerbosch with pivoting), sorted.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    fn expand(g: &Graph, r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        // pivot: vertex of p|x with most neighbors in p
        let pivot = BitIter(p | x)
            .max_by_key(|&b| (g.neighbors_mask(b as usize + 1) & p).count_ones())
            .unwrap();
        let candidates = p & !g.neighbors_mask(pivot as usize + 1);
        for b in BitIter(candidates) {
            let v = b as usize + 1;
            let nb = g.neighbors_mask(v);
            expand(g, r | 1 << b, p & nb, x & nb, out);
            p &= !(1 << b);
            x |= 1 << b;
        }
    }
    let mut out = Vec::new();
    expand(g, 0, g.full_mask(), 0, &mut out);
    let mut cliques: Vec<Vec<usize>> = out.into_iter().map(mask_to_vertices).collect();
    cliques.sort();
    cliques
}

/// Computes the block structure of a connected graph.
pub fn block_structure(g: &Graph) -> Result<BlockStructure> {
    if g.n() == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (blocks, cutpoints) = biconnected(g);
    let cliques = maximal_cliques(g);
    let mut cdeg = vec![0usize; g.n()];
    for c in &cliques {
        for &v in c {
            cdeg[v - 1] += 1;
        }
    }
    let free_vertices: Vec<usize> = (1..=g.n()).filter(|&v| cdeg[v - 1] == 1).collect();
    let inner_vertices: Vec<usize> = (1..=g.n()).filter(|&v| cdeg[v - 1] > 1).collect();
    let (f, i) = (free_vertices.len(), inner_vertices.len());
    Ok(BlockStructure {
        n: g.n(),
        edges: g.edges(),
        blocks,
        cutpoints,
        maximal_cliques: cliques,
        cdeg,
        free_vertices,
        inner_vertices,
        f,
        i,
    })
}

impl BlockStructure {
    pub fn cdeg_of(&self, v: usize) -> usize {
        self.cdeg[v - 1]
    }
}

/// True iff every block of the connected graph induces a complete subgraph.
pub fn is_block_graph(g: &Graph) -> Result<bool> {
    let bs = block_structure(g)?;
    Ok(bs.blocks.iter().all(|b| {
        b.iter().enumerate().all(|(k, &u)| {
            b.iter()
                .skip(k + 1)
                .all(|&v| g.has_edge(u, v))
        })
    }))
}

/// Splits `g` at clique-degree-2 cutpoints until every piece is
/// indecomposable. Pieces are relabeled `1..` with their original labels
/// retained; components are ordered lexicographically by those labels.
pub fn decompose(g: &Graph) -> Result<Decomposition> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut work: Vec<(Graph, Vec<usize>)> =
        vec![(g.clone(), (1..=g.n()).collect())];
    let mut done: Vec<(Graph, Vec<usize>)> = Vec::new();
    let mut gluing: Vec<usize> = Vec::new();

    while let Some((h, labels)) = work.pop() {
        let bs = block_structure(&h)?;
        let cutset: u64 = crate::graph::vertices_to_mask(&bs.cutpoints);
        // lowest ORIGINAL label with cdeg 2 that is also a cutpoint
        let split = (1..=h.n())
            .filter(|&v| bs.cdeg_of(v) == 2 && cutset >> (v - 1) & 1 == 1)
            .min_by_key(|&v| labels[v - 1]);
        match split {
            None => done.push((h, labels)),
            Some(v) => {
                gluing.push(labels[v - 1]);
                let (rest, rest_labels) = h.delete_vertex(v)?;
                for comp in rest.connected_components() {
                    let mut side: Vec<usize> = comp.iter().map(|&k| rest_labels[k - 1]).collect();
                    side.push(v);
                    let (piece, piece_labels) = h.induced_subgraph(&side)?;
                    let orig: Vec<usize> = piece_labels.iter().map(|&k| labels[k - 1]).collect();
                    work.push((piece, orig));
                }
            }
        }
    }

    done.sort_by(|a, b| a.1.cmp(&b.1));
    gluing.sort_unstable();
    gluing.dedup();
    let s = done.len();
    Ok(Decomposition {
        components: done
            .into_iter()
            .map(|(graph, labels)| Component::new(graph, labels))
            .collect(),
        gluing_vertices: gluing,
        s,
    })
}

/// Restriction of `g` to `P = {v : deg(v) != 1}`. May be edgeless or empty.
/// Returns the relabeled graph and the label map (empty graph for empty P).
pub fn restrict_to_p(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let p: Vec<usize> = (1..=g.n()).filter(|&v| g.degree(v) != 1).collect();
    if p.is_empty() {
        return Ok((Graph::empty(0), Vec::new()));
    }
    g.induced_subgraph(&p)
}

/// Checks that `block` is a leaf block of `g` (exactly one vertex of clique
/// degree > 1) and performs the replacement surgery at its cut vertex.
pub fn leaf_surgery(g: &Graph, leaf: &[usize]) -> Result<LeafSurgery> {
    let bs = block_structure(g)?;
    if !is_block_graph(g)? {
        return Err(Error::InvalidInput("leaf surgery needs a block graph".into()));
    }
    if bs.i == 0 {
        return Err(Error::InvalidInput(
            "graph is a single clique; no leaf surgery applies".into(),
        ));
    }
    let mut leaf_sorted = leaf.to_vec();
    leaf_sorted.sort_unstable();
    if !bs.blocks.iter().any(|b| *b == leaf_sorted) {
        return Err(Error::InvalidInput(format!(
            "{leaf_sorted:?} is not a block of the graph"
        )));
    }
    let inner: Vec<usize> = leaf_sorted
        .iter()
        .copied()
        .filter(|&v| bs.cdeg_of(v) > 1)
        .collect();
    if inner.len() != 1 {
        return Err(Error::InvalidInput(format!(
            "{leaf_sorted:?} is not a leaf block ({} inner vertices)",
            inner.len()
        )));
    }
    let cut = inner[0];

    // union of the vertex sets of all maximal cliques through the cut vertex
    let mut union_mask = 0u64;
    for c in &bs.maximal_cliques {
        if c.contains(&cut) {
            union_mask |= crate::graph::vertices_to_mask(c);
        }
    }
    let mut g_prime = g.clone();
    let verts = mask_to_vertices(union_mask);
    for (a, &u) in verts.iter().enumerate() {
        for &v in verts.iter().skip(a + 1) {
            if !g_prime.has_edge(u, v) {
                g_prime.add_edge(u, v);
            }
        }
    }

    let (g_double_prime, gpp_labels) = g.delete_vertex(cut)?;
    let (h, h_labels) = g_prime.delete_vertex(cut)?;
    let q = g_double_prime.connected_components().len() - 1;

    Ok(LeafSurgery {
        cutpoint: cut,
        g_prime,
        g_double_prime,
        g_double_prime_labels: gpp_labels,
        h,
        h_labels,
        q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named_graph;

    #[test]
    fn triangle_is_one_block() {
        let bs = block_structure(&Graph::complete(3)).unwrap();
        assert_eq!(bs.blocks, vec![vec![1, 2, 3]]);
        assert!(bs.cutpoints.is_empty());
        assert_eq!(bs.cdeg, vec![1, 1, 1]);
        assert_eq!((bs.f, bs.i), (3, 0));
    }

    #[test]
    fn path3_blocks_and_cutpoint() {
        let bs = block_structure(&Graph::path(3)).unwrap();
        assert_eq!(bs.blocks, vec![vec![1, 2], vec![2, 3]]);
        assert_eq!(bs.cutpoints, vec![2]);
        assert_eq!(bs.cdeg_of(2), 2);
        assert_eq!((bs.f, bs.i), (2, 1));
    }

    #[test]
    fn t0_structure() {
        let t0 = named_graph("t0").unwrap();
        let bs = block_structure(&t0).unwrap();
        assert_eq!(bs.blocks.len(), 3);
        assert_eq!(bs.cutpoints, vec![7]);
        assert_eq!(bs.cdeg_of(7), 3);
        assert_eq!((bs.f, bs.i), (6, 1));
        // in a block graph, blocks coincide with maximal cliques
        assert_eq!(bs.blocks, bs.maximal_cliques);
    }

    #[test]
    fn block_graph_recognition() {
        assert!(is_block_graph(&Graph::path(5)).unwrap());
        let c4 = Graph::new(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert!(!is_block_graph(&c4).unwrap());
        // K4 with a pendant edge
        let mut g = Graph::complete(4);
        let mut edges = g.edges();
        edges.push((4, 5));
        g = Graph::new(5, &edges).unwrap();
        assert!(is_block_graph(&g).unwrap());
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        assert!(matches!(block_structure(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn decompose_paths() {
        let d = decompose(&Graph::path(3)).unwrap();
        assert_eq!(d.s, 2);
        assert_eq!(d.gluing_vertices, vec![2]);
        for c in &d.components {
            assert_eq!(c.graph.edges(), vec![(1, 2)]);
        }

        let d = decompose(&Graph::path(4)).unwrap();
        assert_eq!(d.s, 3);
        assert_eq!(d.gluing_vertices, vec![2, 3]);
    }

    #[test]
    fn decompose_t0_is_trivial() {
        let d = decompose(&named_graph("t0").unwrap()).unwrap();
        assert_eq!(d.s, 1);
        assert!(d.gluing_vertices.is_empty());
    }

    #[test]
    fn decompose_reglues_to_original() {
        for name in ["paw", "bowtie", "p4", "double-star", "t1"] {
            let g = named_graph(name).unwrap();
            let d = decompose(&g).unwrap();
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for c in &d.components {
                for (u, v) in c.graph.edges() {
                    let (a, b) = (c.labels[u - 1], c.labels[v - 1]);
                    edges.push((a.min(b), a.max(b)));
                }
            }
            edges.sort_unstable();
            edges.dedup();
            assert_eq!(edges, g.edges(), "reglue failed for {name}");
            if d.s > 1 {
                assert_eq!(d.gluing_vertices.len(), d.s - 1);
            }
        }
    }

    #[test]
    fn c4_is_indecomposable_despite_cdeg_two() {
        let c4 = Graph::new(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let d = decompose(&c4).unwrap();
        assert_eq!(d.s, 1);
    }

    #[test]
    fn restrict_to_p_cases() {
        let (p, _) = restrict_to_p(&Graph::star(3)).unwrap();
        assert_eq!(p.n(), 1);
        assert_eq!(p.edge_count(), 0);

        let (p, labels) = restrict_to_p(&Graph::path(4)).unwrap();
        assert_eq!(labels, vec![2, 3]);
        assert_eq!(p.edges(), vec![(1, 2)]);

        let (p, _) = restrict_to_p(&Graph::complete(2)).unwrap();
        assert_eq!(p.n(), 0);
    }

    #[test]
    fn leaf_surgery_t0() {
        let t0 = named_graph("t0").unwrap();
        let s = leaf_surgery(&t0, &[1, 2, 7]).unwrap();
        assert_eq!(s.cutpoint, 7);
        assert_eq!(s.g_prime.edge_count(), 21); // K7
        assert_eq!(s.q, 2);
        assert_eq!(s.h.n(), 6);
        assert_eq!(s.h.edge_count(), 15); // K6
        assert_eq!(s.g_double_prime.connected_components().len(), 3);
    }

    #[test]
    fn leaf_surgery_star_and_path() {
        let s = leaf_surgery(&Graph::star(3), &[1, 2]).unwrap();
        assert_eq!(s.cutpoint, 1);
        assert_eq!(s.g_prime.edge_count(), 6); // K4
        assert_eq!(s.q, 2);
        assert_eq!(s.h.edge_count(), 3); // K3

        let s = leaf_surgery(&Graph::path(3), &[2, 3]).unwrap();
        assert_eq!(s.cutpoint, 2);
        assert_eq!(s.g_prime.edge_count(), 3); // K3 on {1,2,3}
        assert_eq!(s.q, 1);
        assert_eq!(s.g_double_prime.edge_count(), 0); // {1,3} isolated
        // H is G' minus the cut vertex, so the edge {1,3} survives
        assert_eq!(s.h.edge_count(), 1);
        assert_eq!(s.h_labels, vec![1, 3]);
    }

    #[test]
    fn leaf_surgery_rejects_non_leaf() {
        // middle block of P5 is not a leaf
        assert!(leaf_surgery(&Graph::path(5), &[2, 3]).is_err());
    }

    #[test]
    fn leaf_surgery_invariants_on_indecomposables() {
        for name in ["t0", "t1", "k13", "double-star"] {
            let g = named_graph(name).unwrap();
            let bs = block_structure(&g).unwrap();
            let leaf = bs
                .blocks
                .iter()
                .find(|b| b.iter().filter(|&&v| bs.cdeg_of(v) > 1).count() == 1)
                .unwrap();
            let s = leaf_surgery(&g, leaf).unwrap();
            let bsp = block_structure(&s.g_prime).unwrap();
            let bsh = block_structure(&s.h).unwrap();
            assert_eq!(bsp.i, bs.i - 1, "i(G') for {name}");
            assert_eq!(bsh.i, bs.i - 1, "i(H) for {name}");
            assert_eq!(bsh.f, bs.f, "f(H) for {name}");
            if bs.cdeg_of(s.cutpoint) >= 3 {
                assert!(s.q >= 2);
            }
        }
    }
}
