//! Simple bipartite graphs with an ordered bipartition `(X, Y)`.
//!
//! Vertices are 0-indexed inside each part. Where a single index space is
//! needed (partitions, spanning trees) X-vertex `x` is `x` and Y-vertex `y`
//! is `m + y`.

mod bitset;
mod io;
mod iso;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

pub use bitset::BitSet;
pub use io::{parse_graph, serialize_graph};
pub use iso::{find_isomorphism, is_isomorphic, IsoKind};

use crate::error::{Error, Result};

/// An edge `x – y` with `x ∈ X`, `y ∈ Y`, both 0-indexed within their part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub x: usize,
    pub y: usize,
}

impl Edge {
    pub fn new(x: usize, y: usize) -> Self {
        Edge { x, y }
    }
}

/// Side of the bipartition a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

/// Simple bipartite graph with parts `X = {0..m}` and `Y = {0..n}`.
///
/// Adjacency is held twice, as one Y-bitset per X-vertex and one X-bitset per
/// Y-vertex. Values are immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    m: usize,
    n: usize,
    x_adj: Vec<BitSet>,
    y_adj: Vec<BitSet>,
    edge_count: usize,
}

impl std::fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BipartiteGraph({}x{}, edges: [", self.m, self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}-{}", e.x, e.y)?;
        }
        write!(f, "])")
    }
}

impl BipartiteGraph {
    /// Edgeless graph on parts of size `m` and `n`.
    pub fn empty(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::ZeroPartSize { m, n });
        }
        Ok(BipartiteGraph {
            m,
            n,
            x_adj: vec![BitSet::new(n); m],
            y_adj: vec![BitSet::new(m); n],
            edge_count: 0,
        })
    }

    /// Builds a graph from `(x, y)` pairs. Duplicates and out-of-range
    /// indices are errors.
    pub fn from_edges<I>(m: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = BipartiteGraph::empty(m, n)?;
        for (x, y) in edges {
            if x >= m {
                return Err(Error::VertexOutOfRange { index: x, size: m });
            }
            if y >= n {
                return Err(Error::VertexOutOfRange { index: y, size: n });
            }
            if !g.x_adj[x].insert(y) {
                return Err(Error::DuplicateEdge { x, y });
            }
            g.y_adj[y].insert(x);
            g.edge_count += 1;
        }
        Ok(g)
    }

    /// Builds a graph from pairs of global vertex indices (`X = 0..m`,
    /// `Y = m..m+n`), in either orientation.
    pub fn from_vertex_pairs<I>(m: usize, n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let total = m + n;
        let mut edges = Vec::new();
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= total {
                    return Err(Error::VertexOutOfRange { index: w, size: total });
                }
            }
            match (u < m, v < m) {
                (true, false) => edges.push((u, v - m)),
                (false, true) => edges.push((v, u - m)),
                _ => return Err(Error::WithinPartEdge { u, v }),
            }
        }
        BipartiteGraph::from_edges(m, n, edges)
    }

    /// Decodes a biadjacency bitmask: bit `x * n + y` set means edge `x – y`.
    /// Requires `m * n ≤ 64`.
    pub fn from_code(m: usize, n: usize, code: u64) -> Result<Self> {
        if m * n > 64 {
            return Err(Error::SizeCap {
                op: "from_code",
                limit: "m * n <= 64".into(),
            });
        }
        let mut g = BipartiteGraph::empty(m, n)?;
        let row = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for x in 0..m {
            let bits = (code >> (x * n)) & row;
            g.x_adj[x] = BitSet::from_mask(n, bits);
        }
        g.rebuild_y_side();
        Ok(g)
    }

    /// Inverse of [`BipartiteGraph::from_code`].
    pub fn code(&self) -> Option<u64> {
        if self.m * self.n > 64 {
            return None;
        }
        Some(
            self.x_adj
                .iter()
                .enumerate()
                .fold(0u64, |acc, (x, s)| acc | (s.mask() << (x * self.n))),
        )
    }

    fn rebuild_y_side(&mut self) {
        let mut y_adj = vec![BitSet::new(self.m); self.n];
        let mut count = 0;
        for (x, row) in self.x_adj.iter().enumerate() {
            for y in row.iter() {
                y_adj[y].insert(x);
                count += 1;
            }
        }
        self.y_adj = y_adj;
        self.edge_count = count;
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.m + self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.m && self.x_adj[x].contains(y)
    }

    pub fn x_neighbors(&self, x: usize) -> &BitSet {
        &self.x_adj[x]
    }

    pub fn y_neighbors(&self, y: usize) -> &BitSet {
        &self.y_adj[y]
    }

    pub fn x_degree(&self, x: usize) -> usize {
        self.x_adj[x].len()
    }

    pub fn y_degree(&self, y: usize) -> usize {
        self.y_adj[y].len()
    }

    /// Degree of a vertex in the global index space.
    pub fn degree(&self, v: usize) -> usize {
        if v < self.m {
            self.x_degree(v)
        } else {
            self.y_degree(v - self.m)
        }
    }

    /// Global index of X-vertex `x` / Y-vertex `y`.
    pub fn x_vertex(&self, x: usize) -> usize {
        x
    }

    pub fn y_vertex(&self, y: usize) -> usize {
        self.m + y
    }

    pub fn side(&self, v: usize) -> Side {
        if v < self.m {
            Side::X
        } else {
            Side::Y
        }
    }

    /// Edges in lexicographic `(x, y)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.x_adj
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |y| Edge { x, y }))
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    /// `N_G(S)` for `S ⊆ X`.
    pub fn neighborhood(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.n);
        for x in s.iter() {
            out.union_with(&self.x_adj[x]);
        }
        out
    }

    /// `e_G(S, T)` for `S ⊆ X`, `T ⊆ Y`.
    pub fn edges_between(&self, s: &BitSet, t: &BitSet) -> usize {
        s.iter().map(|x| self.x_adj[x].intersection_len(t)).sum()
    }

    /// Connected components as `(X-members, Y-members)` pairs, ordered by
    /// smallest global vertex.
    pub fn components(&self) -> Vec<Component> {
        let mut seen_x = vec![false; self.m];
        let mut seen_y = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.vertex_count() {
            let fresh = if start < self.m {
                !seen_x[start]
            } else {
                !seen_y[start - self.m]
            };
            if !fresh {
                continue;
            }
            let mut comp = Component {
                xs: BitSet::new(self.m),
                ys: BitSet::new(self.n),
            };
            let mut queue = VecDeque::from([start]);
            if start < self.m {
                seen_x[start] = true;
            } else {
                seen_y[start - self.m] = true;
            }
            while let Some(v) = queue.pop_front() {
                if v < self.m {
                    comp.xs.insert(v);
                    for y in self.x_adj[v].iter() {
                        if !seen_y[y] {
                            seen_y[y] = true;
                            queue.push_back(self.m + y);
                        }
                    }
                } else {
                    let y = v - self.m;
                    comp.ys.insert(y);
                    for x in self.y_adj[y].iter() {
                        if !seen_x[x] {
                            seen_x[x] = true;
                            queue.push_back(x);
                        }
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// True iff one component covers all `m + n` vertices.
    pub fn is_connected(&self) -> bool {
        // word-parallel frontier expansion from x0
        let mut xs = BitSet::new(self.m);
        xs.insert(0);
        let mut ys = BitSet::new(self.n);
        loop {
            let ny = self.neighborhood(&xs);
            let mut nx = BitSet::new(self.m);
            for y in ny.iter() {
                nx.union_with(&self.y_adj[y]);
            }
            nx.union_with(&xs);
            if nx == xs && ny == ys {
                break;
            }
            xs = nx;
            ys = ny;
        }
        xs.len() == self.m && ys.len() == self.n
    }

    /// Minimum degree over all `m + n` vertices (`δ`).
    pub fn min_degree(&self) -> usize {
        let dx = self.x_adj.iter().map(BitSet::len).min().unwrap_or(0);
        let dy = self.y_adj.iter().map(BitSet::len).min().unwrap_or(0);
        dx.min(dy)
    }

    pub fn max_degree(&self) -> usize {
        let dx = self.x_adj.iter().map(BitSet::len).max().unwrap_or(0);
        let dy = self.y_adj.iter().map(BitSet::len).max().unwrap_or(0);
        dx.max(dy)
    }

    /// Graph with the roles of `X` and `Y` exchanged.
    pub fn transpose(&self) -> BipartiteGraph {
        BipartiteGraph {
            m: self.n,
            n: self.m,
            x_adj: self.y_adj.clone(),
            y_adj: self.x_adj.clone(),
            edge_count: self.edge_count,
        }
    }

    /// Relabels vertices: X-vertex `x` becomes `px[x]`, Y-vertex `y` becomes `py[y]`.
    pub fn relabel(&self, px: &[usize], py: &[usize]) -> Result<BipartiteGraph> {
        if !is_permutation(px, self.m) || !is_permutation(py, self.n) {
            return Err(Error::Precondition("relabel needs permutations of both parts".into()));
        }
        BipartiteGraph::from_edges(self.m, self.n, self.edges().map(|e| (px[e.x], py[e.y])))
    }

    /// Copy of the graph with `e` added (error if already present).
    pub fn with_edge(&self, e: Edge) -> Result<BipartiteGraph> {
        if e.x >= self.m || e.y >= self.n {
            return Err(Error::VertexOutOfRange {
                index: e.x.max(e.y),
                size: self.m.min(self.n),
            });
        }
        if self.has_edge(e.x, e.y) {
            return Err(Error::DuplicateEdge { x: e.x, y: e.y });
        }
        let mut g = self.clone();
        g.x_adj[e.x].insert(e.y);
        g.y_adj[e.y].insert(e.x);
        g.edge_count += 1;
        Ok(g)
    }

    /// Copy of the graph with each listed pair toggled.
    pub fn with_toggled(&self, pairs: &[Edge]) -> BipartiteGraph {
        let mut g = self.clone();
        for e in pairs {
            if !g.x_adj[e.x].remove(e.y) {
                g.x_adj[e.x].insert(e.y);
            }
        }
        g.rebuild_y_side();
        g
    }

    /// Edge-induced spanning subgraph on the same vertex set.
    pub fn spanning_subgraph(&self, edges: &[Edge]) -> Result<BipartiteGraph> {
        for e in edges {
            if !self.has_edge(e.x, e.y) {
                return Err(Error::Precondition(format!(
                    "edge ({}, {}) is not in the graph",
                    e.x, e.y
                )));
            }
        }
        BipartiteGraph::from_edges(self.m, self.n, edges.iter().map(|e| (e.x, e.y)))
    }
}

fn is_permutation(p: &[usize], len: usize) -> bool {
    if p.len() != len {
        return false;
    }
    let mut seen = vec![false; len];
    p.iter().all(|&i| i < len && !std::mem::replace(&mut seen[i], true))
}

/// One connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub xs: BitSet,
    pub ys: BitSet,
}

/// `K_{m,n}`.
pub fn make_complete(m: usize, n: usize) -> Result<BipartiteGraph> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroPartSize { m, n });
    }
    BipartiteGraph::from_edges(m, n, (0..m).flat_map(|x| (0..n).map(move |y| (x, y))))
}

/// Parameters of `K_{m,n} \ E(K_{p,q})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtremalSpec {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
}

impl ExtremalSpec {
    pub fn new(m: usize, n: usize, p: usize, q: usize) -> Result<Self> {
        let spec = ExtremalSpec { m, n, p, q };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let ExtremalSpec { m, n, p, q } = *self;
        if m == 0 || n == 0 {
            return Err(Error::ZeroPartSize { m, n });
        }
        if !(1..=m).contains(&p) || !(1..=n).contains(&q) {
            return Err(Error::InvalidExtremal(format!(
                "need 1 <= p <= m and 1 <= q <= n, got m={m} n={n} p={p} q={q}"
            )));
        }
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        self.m * self.n - self.p * self.q
    }
}

/// `K_{m,n} \ E(K_{p,q})` with the deleted biclique on the first `p`
/// X-vertices and the first `q` Y-vertices.
pub fn make_extremal(spec: ExtremalSpec) -> Result<BipartiteGraph> {
    spec.validate()?;
    let ExtremalSpec { m, n, p, q } = spec;
    BipartiteGraph::from_edges(
        m,
        n,
        (0..m).flat_map(move |x| (0..n).filter(move |&y| x >= p || y >= q).map(move |y| (x, y))),
    )
}

/// A pair `S ⊆ X`, `T ⊆ Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexSetPair {
    pub s: BitSet,
    pub t: BitSet,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_xyx() -> BipartiteGraph {
        BipartiteGraph::from_edges(2, 1, [(0, 0), (1, 0)]).unwrap()
    }

    #[test]
    fn complete_graphs() {
        let c4 = make_complete(2, 2).unwrap();
        assert_eq!(c4.edge_count(), 4);
        let k11 = make_complete(1, 1).unwrap();
        assert_eq!(k11.edge_count(), 1);
        assert!(k11.is_connected());
        let k34 = make_complete(3, 4).unwrap();
        assert_eq!(k34.edge_count(), 12);
        assert!(k34.is_connected());
        assert_eq!(make_complete(0, 3), Err(Error::ZeroPartSize { m: 0, n: 3 }));
    }

    #[test]
    fn extremal_examples() {
        let g = make_extremal(ExtremalSpec::new(4, 2, 1, 2).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.x_degree(0), 0);
        assert_eq!(g, {
            let k32 = BipartiteGraph::from_edges(4, 2, (1..4).flat_map(|x| [(x, 0), (x, 1)]));
            k32.unwrap()
        });

        let g = make_extremal(ExtremalSpec::new(6, 6, 1, 5).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 31);
        assert_eq!(g.x_degree(0), 1);

        let g = make_extremal(ExtremalSpec::new(3, 4, 1, 3).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.x_degree(0), 1);

        assert!(ExtremalSpec::new(3, 4, 4, 1).is_err());
        assert!(ExtremalSpec::new(3, 4, 1, 5).is_err());
        assert!(ExtremalSpec::new(3, 4, 0, 1).is_err());
    }

    #[test]
    fn extremal_degrees() {
        let spec = ExtremalSpec::new(5, 7, 2, 3).unwrap();
        let g = make_extremal(spec).unwrap();
        for x in 0..2 {
            assert_eq!(g.x_degree(x), 7 - 3);
        }
        for y in 0..3 {
            assert_eq!(g.y_degree(y), 5 - 2);
        }
        assert_eq!(g.edge_count(), spec.edge_count());
    }

    #[test]
    fn neighborhoods_and_edge_counts() {
        let k23 = make_complete(2, 3).unwrap();
        assert_eq!(k23.neighborhood(&BitSet::full(2)).len(), 3);
        assert!(k23.neighborhood(&BitSet::new(2)).is_empty());

        let g = make_extremal(ExtremalSpec::new(4, 2, 1, 2).unwrap()).unwrap();
        let s0 = BitSet::from_indices(4, [0]);
        assert!(g.neighborhood(&s0).is_empty());
        assert_eq!(g.edges_between(&s0, &BitSet::full(2)), 0);

        let k33 = make_complete(3, 3).unwrap();
        assert_eq!(k33.edges_between(&BitSet::full(3), &BitSet::full(3)), 9);
        assert_eq!(k33.edges_between(&BitSet::from_indices(3, [0]), &BitSet::new(3)), 0);
    }

    #[test]
    fn connectivity() {
        assert!(make_complete(2, 2).unwrap().is_connected());
        let g = make_extremal(ExtremalSpec::new(4, 2, 1, 2).unwrap()).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.components().len(), 2);
        assert!(path_xyx().is_connected());
        assert!(!BipartiteGraph::empty(1, 1).unwrap().is_connected());
    }

    #[test]
    fn minimum_degrees() {
        assert_eq!(make_complete(3, 4).unwrap().min_degree(), 3);
        assert_eq!(make_complete(1, 5).unwrap().min_degree(), 1);
        let g = make_extremal(ExtremalSpec::new(3, 4, 1, 3).unwrap()).unwrap();
        assert_eq!(g.min_degree(), 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            BipartiteGraph::from_edges(2, 2, [(0, 0), (0, 0)]),
            Err(Error::DuplicateEdge { x: 0, y: 0 })
        );
        assert_eq!(
            BipartiteGraph::from_edges(2, 2, [(2, 0)]),
            Err(Error::VertexOutOfRange { index: 2, size: 2 })
        );
        assert_eq!(
            BipartiteGraph::from_vertex_pairs(2, 2, [(0, 1)]),
            Err(Error::WithinPartEdge { u: 0, v: 1 })
        );
        let g = BipartiteGraph::from_vertex_pairs(2, 2, [(3, 0), (1, 2)]).unwrap();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
    }

    #[test]
    fn code_round_trip() {
        let g = make_extremal(ExtremalSpec::new(4, 3, 2, 1).unwrap()).unwrap();
        let code = g.code().unwrap();
        assert_eq!(BipartiteGraph::from_code(4, 3, code).unwrap(), g);
    }

    #[test]
    fn toggling_and_transpose() {
        let g = make_complete(2, 3).unwrap();
        let h = g.with_toggled(&[Edge::new(0, 0), Edge::new(0, 0), Edge::new(1, 2)]);
        assert_eq!(h.edge_count(), 5);
        assert!(!h.has_edge(1, 2));
        let t = h.transpose();
        assert_eq!((t.m(), t.n()), (3, 2));
        assert!(!t.has_edge(2, 1));
        assert_eq!(t.transpose(), h);
    }
}
