//! Spanning trees with degree lower bounds on X.
//!
//! A connected bipartite graph has a spanning tree with `d_T(u) ≥ f(u)` for
//! all `u ∈ X` (`f ≥ 2`) iff `|N(S)| ≥ Σ_S f − |S| + 1` for every nonempty
//! `S ⊆ X`. That condition is existential; construction here is
//!
//! 1. a breadth-first spanning tree,
//! 2. exchange local search: for a deficient `u`, add a non-tree edge at `u`
//!    and drop an edge of the created cycle whose X-end has surplus, which
//!    raises `Σ_X min(d_T(u), f(u))` by one,
//! 3. if that stalls, matroid intersection of the graphic matroid with the
//!    partition matroid "at most `f(u)` edges at each `u ∈ X`", which is
//!    exact. A stall followed by a successful fallback is logged.
//!
//! Note the reduction behind step 3: since every edge has exactly one end in
//! X, picking `f(u)` tree edges at each `u` yields a forest, and any forest
//! with those degrees extends to a spanning tree of a connected graph.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, BitSet, Edge};

/// Degree demands `f: X → {2, 3, …}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeDemand {
    f: Vec<usize>,
}

impl DegreeDemand {
    pub fn new(f: Vec<usize>) -> Result<Self> {
        if let Some((u, &v)) = f.iter().enumerate().find(|&(_, &v)| v < 2) {
            return Err(Error::InvalidDemand(format!(
                "demand of X-vertex {} is {v}; demands must be at least 2",
                u + 1
            )));
        }
        Ok(DegreeDemand { f })
    }

    pub fn constant(m: usize, k: usize) -> Result<Self> {
        DegreeDemand::new(vec![k; m])
    }

    /// Whitespace-separated integers, one per X-vertex; `#` starts a comment.
    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let mut f = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            for tok in body.split_whitespace() {
                f.push(tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("demand {tok:?} is not a non-negative integer"),
                })?);
            }
        }
        if f.len() != m {
            return Err(Error::InvalidDemand(format!(
                "expected {m} demands (one per X-vertex), found {}",
                f.len()
            )));
        }
        DegreeDemand::new(f)
    }

    pub fn get(&self, u: usize) -> usize {
        self.f[u]
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    pub fn total(&self) -> usize {
        self.f.iter().sum()
    }

    fn check_against(&self, g: &BipartiteGraph) -> Result<()> {
        if self.f.len() != g.m() {
            return Err(Error::InvalidDemand(format!(
                "{} demands for {} X-vertices",
                self.f.len(),
                g.m()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanningTree {
    pub edges: Vec<Edge>,
}

impl SpanningTree {
    pub fn x_degrees(&self, m: usize) -> Vec<usize> {
        let mut d = vec![0; m];
        for e in &self.edges {
            d[e.x] += 1;
        }
        d
    }

    /// `m + n − 1` distinct edges of `g` forming an acyclic spanning subgraph.
    pub fn is_spanning_tree_of(&self, g: &BipartiteGraph) -> bool {
        if self.edges.len() + 1 != g.vertex_count() {
            return false;
        }
        let mut dsu = Dsu::new(g.vertex_count());
        self.edges
            .iter()
            .all(|e| g.has_edge(e.x, e.y) && dsu.union(e.x, g.m() + e.y))
    }

    pub fn meets(&self, g: &BipartiteGraph, f: &DegreeDemand) -> bool {
        self.is_spanning_tree_of(g)
            && self
                .x_degrees(g.m())
                .iter()
                .enumerate()
                .all(|(u, &d)| d >= f.get(u))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TreeWitness {
    Tree(SpanningTree),
    /// `S ⊆ X` with `|N(S)| < Σ_S f − |S| + 1`; `deficiency` is the gap.
    Violation { s: BitSet, deficiency: i64 },
}

impl TreeWitness {
    pub fn tree(&self) -> Option<&SpanningTree> {
        match self {
            TreeWitness::Tree(t) => Some(t),
            TreeWitness::Violation { .. } => None,
        }
    }
}

/// How a tree search went.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TreeTrace {
    pub exchanges: usize,
    pub stalled: bool,
    pub used_fallback: bool,
    /// The search stalled although a qualifying tree exists.
    pub recovered_by_fallback: bool,
}

const FG_CAP: usize = 22;

/// `max_{∅ ≠ S ⊆ X} (Σ_S f − |S| + 1 − |N(S)|)` with the first maximiser in
/// mask order. The condition holds iff the value is `≤ 0`.
pub fn fg_deficiency(g: &BipartiteGraph, f: &DegreeDemand) -> Result<(i64, BitSet)> {
    let scan = scan_subsets(g, f)?;
    Ok((scan.max.0, BitSet::from_mask(g.m(), scan.max.1)))
}

struct SubsetScan {
    max: (i64, u64),
    /// A violating set of least cardinality, first in mask order.
    smallest_violator: Option<(i64, u64)>,
}

fn scan_subsets(g: &BipartiteGraph, f: &DegreeDemand) -> Result<SubsetScan> {
    f.check_against(g)?;
    if g.m() > FG_CAP {
        return Err(Error::SizeCap {
            op: "fg_deficiency",
            limit: format!("m <= {FG_CAP}"),
        });
    }
    let m = g.m();
    let rows: Vec<&BitSet> = (0..m).map(|x| g.x_neighbors(x)).collect();
    let mut max: Option<(i64, u64)> = None;
    let mut smallest_violator: Option<(i64, u64)> = None;
    for mask in 1u64..(1 << m) {
        let mut nb = BitSet::new(g.n());
        let mut demand = 0i64;
        for x in (0..m).filter(|x| mask & (1 << x) != 0) {
            nb.union_with(rows[x]);
            demand += f.get(x) as i64 - 1;
        }
        let value = demand + 1 - nb.len() as i64;
        if max.is_none_or(|(v, _)| value > v) {
            max = Some((value, mask));
        }
        if value > 0
            && smallest_violator.is_none_or(|(_, s)| mask.count_ones() < s.count_ones())
        {
            smallest_violator = Some((value, mask));
        }
    }
    Ok(SubsetScan {
        max: max.expect("m >= 1"),
        smallest_violator,
    })
}

/// Spanning tree with `d_T(u) ≥ f(u)` on X, or a violating `S`.
pub fn find_degree_tree(g: &BipartiteGraph, f: &DegreeDemand) -> Result<TreeWitness> {
    find_degree_tree_traced(g, f).map(|(w, _)| w)
}

/// A spanning tree whose leaves all lie in Y (`f ≡ 2`).
pub fn leaves_in_y(g: &BipartiteGraph) -> Result<TreeWitness> {
    find_degree_tree(g, &DegreeDemand::constant(g.m(), 2)?)
}

pub fn find_degree_tree_traced(
    g: &BipartiteGraph,
    f: &DegreeDemand,
) -> Result<(TreeWitness, TreeTrace)> {
    f.check_against(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let edges = g.edge_list();
    let mut search = ExchangeSearch::new(g, f, &edges);
    let mut trace = TreeTrace::default();
    let stalled = !search.run(&mut trace);
    let tree_edges: Vec<usize> = if stalled {
        trace.stalled = true;
        trace.used_fallback = true;
        let warm = search.capped_forest();
        match intersect_forest(g, f, &edges, warm) {
            Some(forest) => {
                trace.recovered_by_fallback = true;
                log::warn!(
                    "exchange search stalled although a qualifying tree exists; \
                     recovered by matroid intersection. graph:\n{}",
                    crate::graph::serialize_graph(g)
                );
                extend_to_tree(g, &edges, &forest)
            }
            None => return violation(g, f).map(|w| (w, trace)),
        }
    } else {
        search.tree_edges()
    };
    let tree = SpanningTree {
        edges: tree_edges.iter().map(|&i| edges[i]).collect(),
    };
    if !tree.meets(g, f) {
        return Err(Error::Contradiction("constructed tree misses a demand".into()));
    }
    Ok((TreeWitness::Tree(tree), trace))
}

fn violation(g: &BipartiteGraph, f: &DegreeDemand) -> Result<TreeWitness> {
    let scan = scan_subsets(g, f)?;
    match scan.smallest_violator {
        Some((deficiency, mask)) => Ok(TreeWitness::Violation {
            s: BitSet::from_mask(g.m(), mask),
            deficiency,
        }),
        None => Err(Error::Contradiction(format!(
            "no qualifying tree exists but every S satisfies the neighbourhood condition \
             (max deficiency {})",
            scan.max.0
        ))),
    }
}

struct ExchangeSearch<'a> {
    g: &'a BipartiteGraph,
    f: &'a DegreeDemand,
    edges: &'a [Edge],
    in_tree: Vec<bool>,
    x_deg: Vec<usize>,
}

impl<'a> ExchangeSearch<'a> {
    fn new(g: &'a BipartiteGraph, f: &'a DegreeDemand, edges: &'a [Edge]) -> Self {
        let in_tree = bfs_tree(g, edges);
        let mut x_deg = vec![0; g.m()];
        for (i, e) in edges.iter().enumerate() {
            if in_tree[i] {
                x_deg[e.x] += 1;
            }
        }
        ExchangeSearch {
            g,
            f,
            edges,
            in_tree,
            x_deg,
        }
    }

    /// Exchanges until every demand holds (true) or nothing applies (false).
    fn run(&mut self, trace: &mut TreeTrace) -> bool {
        'outer: loop {
            let mut any_deficit = false;
            for u in 0..self.g.m() {
                if self.x_deg[u] >= self.f.get(u) {
                    continue;
                }
                any_deficit = true;
                for (i, e) in self.edges.iter().enumerate() {
                    if e.x != u || self.in_tree[i] {
                        continue;
                    }
                    let path = self.tree_path(u, self.g.m() + e.y);
                    let drop = path.into_iter().find(|&j| {
                        let x = self.edges[j].x;
                        x != u && self.x_deg[x] > self.f.get(x)
                    });
                    if let Some(j) = drop {
                        self.in_tree[i] = true;
                        self.in_tree[j] = false;
                        self.x_deg[u] += 1;
                        self.x_deg[self.edges[j].x] -= 1;
                        trace.exchanges += 1;
                        continue 'outer;
                    }
                }
            }
            return !any_deficit;
        }
    }

    /// Edge ids on the tree path between two global vertices.
    fn tree_path(&self, from: usize, to: usize) -> Vec<usize> {
        forest_path(self.g, self.edges, &self.in_tree, from, to).unwrap_or_default()
    }

    fn tree_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.in_tree[i]).collect()
    }

    /// Tree edges keeping at most `f(u)` at each X-vertex (lowest ids first).
    fn capped_forest(&self) -> Vec<bool> {
        let mut taken = vec![0; self.g.m()];
        let mut keep = vec![false; self.edges.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if self.in_tree[i] && taken[e.x] < self.f.get(e.x) {
                taken[e.x] += 1;
                keep[i] = true;
            }
        }
        keep
    }
}

fn bfs_tree(g: &BipartiteGraph, edges: &[Edge]) -> Vec<bool> {
    let mut index = std::collections::HashMap::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        index.insert(*e, i);
    }
    let mut in_tree = vec![false; edges.len()];
    let mut seen = vec![false; g.vertex_count()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let nbrs: Vec<(usize, Edge)> = if v < g.m() {
            g.x_neighbors(v)
                .iter()
                .map(|y| (g.m() + y, Edge::new(v, y)))
                .collect()
        } else {
            let y = v - g.m();
            g.y_neighbors(y).iter().map(|x| (x, Edge::new(x, y))).collect()
        };
        for (w, e) in nbrs {
            if !seen[w] {
                seen[w] = true;
                in_tree[index[&e]] = true;
                queue.push_back(w);
            }
        }
    }
    in_tree
}

/// Edge ids of the path between `from` and `to` in the forest `chosen`, or
/// `None` when they lie in different trees.
fn forest_path(
    g: &BipartiteGraph,
    edges: &[Edge],
    chosen: &[bool],
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    let total = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); total];
    for (i, e) in edges.iter().enumerate() {
        if chosen[i] {
            let (u, v) = (e.x, g.m() + e.y);
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
    }
    let mut via = vec![usize::MAX; total];
    let mut seen = vec![false; total];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(w, i) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                via[w] = i;
                queue.push_back(w);
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let i = via[v];
        path.push(i);
        let e = edges[i];
        v = if v == e.x { g.m() + e.y } else { e.x };
    }
    path.reverse();
    Some(path)
}

/// Largest edge set that is a forest and has at most `f(u)` edges at each
/// `u ∈ X`, grown from `start` by shortest augmenting paths in the exchange
/// graph. Returns it only if it reaches `Σ f` edges.
fn intersect_forest(
    g: &BipartiteGraph,
    f: &DegreeDemand,
    edges: &[Edge],
    start: Vec<bool>,
) -> Option<Vec<bool>> {
    let target = f.total();
    if target + 1 > g.vertex_count() {
        return None;
    }
    let mut current = start;
    let ne = edges.len();
    loop {
        let size = current.iter().filter(|&&c| c).count();
        if size == target {
            return Some(current);
        }
        let mut load = vec![0; g.m()];
        for (i, e) in edges.iter().enumerate() {
            if current[i] {
                load[e.x] += 1;
            }
        }
        // cycle[z] = forest path closed by z, None if z joins two trees
        let cycle: Vec<Option<Vec<usize>>> = (0..ne)
            .map(|z| {
                if current[z] {
                    None
                } else {
                    forest_path(g, edges, &current, edges[z].x, g.m() + edges[z].y)
                }
            })
            .collect();
        let is_source = |z: usize| !current[z] && cycle[z].is_none();
        let is_sink = |z: usize| !current[z] && load[edges[z].x] < f.get(edges[z].x);

        let mut prev = vec![usize::MAX; ne];
        let mut seen = vec![false; ne];
        let mut queue = VecDeque::new();
        for z in 0..ne {
            if is_source(z) {
                seen[z] = true;
                queue.push_back(z);
            }
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if is_sink(v) {
                end = Some(v);
                break;
            }
            if current[v] {
                // v ∈ I → z ∉ I when I − v + z is a forest
                for z in 0..ne {
                    if !seen[z] && !current[z] && cycle[z].as_ref().is_some_and(|c| c.contains(&v)) {
                        seen[z] = true;
                        prev[z] = v;
                        queue.push_back(z);
                    }
                }
            } else {
                // v ∉ I → w ∈ I when I − w + v respects the X capacities
                let x = edges[v].x;
                for w in 0..ne {
                    if !seen[w] && current[w] && edges[w].x == x {
                        seen[w] = true;
                        prev[w] = v;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut v = end?;
        loop {
            current[v] = !current[v];
            if prev[v] == usize::MAX {
                break;
            }
            v = prev[v];
        }
    }
}

fn extend_to_tree(g: &BipartiteGraph, edges: &[Edge], forest: &[bool]) -> Vec<usize> {
    let mut dsu = Dsu::new(g.vertex_count());
    let mut out = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if forest[i] {
            dsu.union(e.x, g.m() + e.y);
            out.push(i);
        }
    }
    for (i, e) in edges.iter().enumerate() {
        if !forest[i] && dsu.union(e.x, g.m() + e.y) {
            out.push(i);
        }
    }
    out.sort_unstable();
    out
}

/// Union–find with an undo log (no path compression).
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<(usize, usize)>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    pub(crate) fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Joins the sets of `u` and `v`; false if they were already joined.
    pub(crate) fn union(&mut self, u: usize, v: usize) -> bool {
        let (mut a, mut b) = (self.find(u), self.find(v));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.log.push((a, b));
        true
    }

    pub(crate) fn undo(&mut self) {
        if let Some((a, b)) = self.log.pop() {
            self.parent[b] = b;
            self.size[a] -= self.size[b];
        }
    }
}

const EXHAUSTIVE_CAP: usize = 12;

/// Searches all spanning trees (include/exclude backtracking over the edge
/// list) for one meeting the demands. Independent of the neighbourhood
/// condition; used as an oracle. Requires `m + n ≤ 12`.
pub fn exhaustive_degree_tree(g: &BipartiteGraph, f: &DegreeDemand) -> Result<Option<SpanningTree>> {
    f.check_against(g)?;
    if g.vertex_count() > EXHAUSTIVE_CAP {
        return Err(Error::SizeCap {
            op: "exhaustive_degree_tree",
            limit: format!("m + n <= {EXHAUSTIVE_CAP}"),
        });
    }
    let edges = g.edge_list();
    let mut remaining_at = vec![0usize; g.m()];
    for e in &edges {
        remaining_at[e.x] += 1;
    }
    let mut st = Backtrack {
        g,
        f,
        edges: &edges,
        dsu: Dsu::new(g.vertex_count()),
        chosen: Vec::new(),
        x_deg: vec![0; g.m()],
        remaining_at,
        deficit: f.total(),
    };
    Ok(st.go(0).then(|| SpanningTree {
        edges: st.chosen.iter().map(|&i| edges[i]).collect(),
    }))
}

struct Backtrack<'a> {
    g: &'a BipartiteGraph,
    f: &'a DegreeDemand,
    edges: &'a [Edge],
    dsu: Dsu,
    chosen: Vec<usize>,
    x_deg: Vec<usize>,
    remaining_at: Vec<usize>,
    /// Σ_u max(0, f(u) − d(u)).
    deficit: usize,
}

impl Backtrack<'_> {
    fn go(&mut self, i: usize) -> bool {
        let needed = self.g.vertex_count() - 1 - self.chosen.len();
        if needed == 0 {
            return self.deficit == 0;
        }
        // each further edge raises at most one X-degree
        if self.deficit > needed || self.edges.len() - i < needed {
            return false;
        }
        let e = self.edges[i];
        self.remaining_at[e.x] -= 1;
        if self.dsu.union(e.x, self.g.m() + e.y) {
            self.chosen.push(i);
            self.x_deg[e.x] += 1;
            let helped = self.x_deg[e.x] <= self.f.get(e.x);
            if helped {
                self.deficit -= 1;
            }
            if self.go(i + 1) {
                return true;
            }
            if helped {
                self.deficit += 1;
            }
            self.x_deg[e.x] -= 1;
            self.chosen.pop();
            self.dsu.undo();
        }
        if self.x_deg[e.x] + self.remaining_at[e.x] >= self.f.get(e.x) && self.go(i + 1) {
            return true;
        }
        self.remaining_at[e.x] += 1;
        false
    }
}
