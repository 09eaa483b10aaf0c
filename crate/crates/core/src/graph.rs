//! Undirected simple graphs on vertex set `{1..n}`.
//!
//! Adjacency is kept as one `u64` bitmask per vertex, which caps `n` at 64;
//! everything in this crate is desk scale (n <= ~30), so the cap never binds
//! in practice and keeps clique enumeration and embedding search fast.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A simple labeled graph with vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// adj[v] = bitmask of neighbors of vertex v+1 (bit k = vertex k+1).
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Builds a graph from 1-based edge pairs, rejecting loops, duplicates
    /// and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::budget("vertex count", n, MAX_VERTICES));
        }
        let mut g = Graph {
            n,
            adj: vec![0u64; n],
        };
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![0u64; n],
        }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..=n {
            for v in (u + 1)..=n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u, u + 1);
        }
        g
    }

    /// Star with center 1 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 2..=leaves + 1 {
            g.add_edge(1, v);
        }
        g
    }

    fn add_edge_checked(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
        }
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(Error::InvalidGraph(format!(
                "edge {{{u},{v}}} out of range 1..={}",
                self.n
            )));
        }
        if self.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!("duplicate edge {{{u},{v}}}")));
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u - 1] |= 1u64 << (v - 1);
        self.adj[v - 1] |= 1u64 << (u - 1);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u >= 1 && v >= 1 && u <= self.n && v <= self.n && {
            self.adj[u - 1] >> (v - 1) & 1 == 1
        }
    }

    /// Neighbor bitmask of `v` (bit k = vertex k+1).
    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.adj[v - 1]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adj[v - 1]).map(|b| b as usize + 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Sorted edge list with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 1..=self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// Bitmask of all vertices.
    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.component_mask(1) == self.full_mask()
    }

    fn component_mask(&self, start: usize) -> u64 {
        let mut seen = 1u64 << (start - 1);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for b in BitIter(frontier) {
                next |= self.adj[b as usize];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Connected components as sorted vertex lists, ordered by smallest label.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut remaining = self.full_mask();
        let mut comps = Vec::new();
        while remaining != 0 {
            let start = remaining.trailing_zeros() as usize + 1;
            let mask = self.component_mask(start);
            comps.push(BitIter(mask).map(|b| b as usize + 1).collect());
            remaining &= !mask;
        }
        comps
    }

    /// Induced subgraph on `w`, relabeled `1..=|w|` in ascending label order.
    /// Returns the graph together with the map new label -> original label.
    pub fn induced_subgraph(&self, w: &[usize]) -> Result<(Graph, Vec<usize>)> {
        if w.is_empty() {
            return Err(Error::InvalidInput(
                "induced subgraph on an empty vertex set".into(),
            ));
        }
        let mut labels: Vec<usize> = w.to_vec();
        labels.sort_unstable();
        labels.dedup();
        for &v in &labels {
            if v == 0 || v > self.n {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} not in 1..={}",
                    self.n
                )));
            }
        }
        let mut g = Graph::empty(labels.len());
        for (a, &u) in labels.iter().enumerate() {
            for (b, &v) in labels.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a + 1, b + 1);
                }
            }
        }
        Ok((g, labels))
    }

    /// Applies the relabeling `perm` (perm[v-1] = new label of v), which must
    /// be a permutation of `1..=n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidInput("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p == 0 || p > self.n || seen[p - 1] {
                return Err(Error::InvalidInput("not a permutation".into()));
            }
            seen[p - 1] = true;
        }
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u - 1], perm[v - 1]);
        }
        Ok(g)
    }

    /// Graph with vertex `v` deleted, relabeled; returns the label map.
    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>)> {
        let w: Vec<usize> = (1..=self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&w)
    }

    /// Short stable hex hash of the labeled graph (n plus sorted edge list).
    pub fn instance_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.n.to_string());
        for (u, v) in self.edges() {
            h.update(format!(";{u},{v}"));
        }
        let digest = h.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Edge-list document: first line `n`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n  node [shape=circle];\n");
        for v in 1..=self.n {
            s.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {u} -- {v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Iterator over set bit positions of a mask.
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros();
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

pub fn mask_to_vertices(mask: u64) -> Vec<usize> {
    BitIter(mask).map(|b| b as usize + 1).collect()
}

pub fn vertices_to_mask(vs: &[usize]) -> u64 {
    vs.iter().fold(0u64, |m, &v| m | 1u64 << (v - 1))
}

/// Parses the edge-list document format: first non-comment line is `n`,
/// each further line is `u v` with `1 <= u < v <= n`. Blank lines and lines
/// starting with `#` are ignored. Errors name the offending line.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match graph {
            None => {
                let n: usize = line.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("expected vertex count, found {line:?}"),
                })?;
                if n > MAX_VERTICES {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("vertex count {n} exceeds the supported maximum {MAX_VERTICES}"),
                    });
                }
                graph = Some(Graph::empty(n));
            }
            Some(ref mut g) => {
                let mut it = line.split_whitespace();
                let (us, vs) = match (it.next(), it.next(), it.next()) {
                    (Some(a), Some(b), None) => (a, b),
                    _ => {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("expected \"u v\", found {line:?}"),
                        })
                    }
                };
                let parse_v = |s: &str| -> Result<usize> {
                    s.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad vertex {s:?}"),
                    })
                };
                let (u, v) = (parse_v(us)?, parse_v(vs)?);
                if u == v {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("loop at vertex {u}"),
                    });
                }
                if u == 0 || v == 0 || u > g.n() || v > g.n() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("edge {{{u},{v}}} out of range 1..={}", g.n()),
                    });
                }
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("duplicate edge {{{u},{v}}}"),
                    });
                }
                g.add_edge(u, v);
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: 0,
        msg: "empty document".into(),
    })
}

/// Reads a graph in graph6 format (standard 6-bit encoding, n <= 62).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "empty graph6 string".into(),
        });
    }
    if bytes[0] == 126 {
        return Err(Error::Parse {
            line: 1,
            msg: "graph6 with n > 62 unsupported".into(),
        });
    }
    let n = (bytes[0] as usize)
        .checked_sub(63)
        .ok_or_else(|| Error::Parse {
            line: 1,
            msg: "invalid graph6 size byte".into(),
        })?;
    let need_bits = n * (n - 1) / 2;
    let need_bytes = need_bits.div_ceil(6);
    if bytes.len() < 1 + need_bytes {
        return Err(Error::Parse {
            line: 1,
            msg: "graph6 string too short".into(),
        });
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for v in 2..=n {
        for u in 1..v {
            let byte = bytes[1 + bit / 6];
            let val = byte.checked_sub(63).ok_or_else(|| Error::Parse {
                line: 1,
                msg: "invalid graph6 data byte".into(),
            })?;
            if val >= 64 {
                return Err(Error::Parse {
                    line: 1,
                    msg: "invalid graph6 data byte".into(),
                });
            }
            if val >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// JSON shape of a graph: `{"n": .., "edges": [[u,v], ..]}`.
#[derive(Debug, Clone, Serialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_simple_path() {
        let g = parse_graph("3\n1 2\n2 3").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(1, 2), (2, 3)]);
        assert!(g.is_connected());
    }

    #[test]
    fn parse_rejects_loop_with_line_number() {
        let err = parse_graph("3\n1 1").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("loop"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_duplicate_and_range() {
        assert!(parse_graph("3\n1 2\n2 1").is_err());
        assert!(parse_graph("3\n1 4").is_err());
        assert!(parse_graph("2\n0 1").is_err());
    }

    #[test]
    fn parse_ignores_comments_and_blanks() {
        let g = parse_graph("# a path\n\n3\n\n1 2\n# middle\n2 3\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn components_of_disconnected_graph() {
        let g = Graph::new(5, &[(1, 2), (4, 5)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.connected_components(), vec![vec![1, 2], vec![3], vec![4, 5]]);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let k4 = Graph::complete(4);
        let (g, labels) = k4.induced_subgraph(&[1, 2]).unwrap();
        assert_eq!(g.edges(), vec![(1, 2)]);
        assert_eq!(labels, vec![1, 2]);

        let p4 = Graph::path(4);
        let (g, labels) = p4.induced_subgraph(&[3, 1]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(labels, vec![1, 3]);
    }

    #[test]
    fn graph6_small_fixtures() {
        // 'A' encodes n=2, '_' has bit pattern 100000: the single edge {1,2}.
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!(k2.edges(), vec![(1, 2)]);
        // 'B' encodes n=3, 'w' = 111000: all three pairs.
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3.edges(), vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn instance_hash_is_label_sensitive_and_stable() {
        let a = Graph::path(3);
        let b = Graph::new(3, &[(1, 3), (2, 3)]).unwrap();
        assert_eq!(a.instance_hash(), a.clone().instance_hash());
        assert_ne!(a.instance_hash(), b.instance_hash());
    }
}
