//! Edge-disjoint spanning tree packing.
//!
//! `τ(G)` is computed exactly by matroid partition: edges are inserted one at
//! a time into `k` forests, and an edge that closes a cycle everywhere is
//! placed via a shortest exchange path (Edmonds). `G` has `k` edge-disjoint
//! spanning trees iff the forests reach `k(|V| − 1)` edges in total.
//!
//! The partition oracle enumerates set partitions of `V` as restricted growth
//! strings and checks `e(V₁,…,V_t) ≥ k(t − 1)` directly.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Edge};
use crate::trees::SpanningTree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreePacking {
    pub trees: Vec<SpanningTree>,
}

impl TreePacking {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Every member spans `g` and no edge is used twice.
    pub fn verify(&self, g: &BipartiteGraph) -> bool {
        let mut used = std::collections::HashSet::new();
        self.trees.iter().all(|t| {
            t.is_spanning_tree_of(g) && t.edges.iter().all(|e| used.insert(*e))
        })
    }
}

const NONE: usize = usize::MAX;

/// `k` forests over a fixed edge list; `owner[e]` is the forest holding `e`.
struct Forests<'a> {
    g: &'a BipartiteGraph,
    edges: &'a [Edge],
    owner: Vec<usize>,
    k: usize,
}

/// A rooted view of one forest for cycle queries.
struct Rooted {
    parent_edge: Vec<usize>,
    parent: Vec<usize>,
    depth: Vec<usize>,
    root: Vec<usize>,
}

impl<'a> Forests<'a> {
    fn new(g: &'a BipartiteGraph, edges: &'a [Edge], k: usize) -> Self {
        Forests {
            g,
            edges,
            owner: vec![NONE; edges.len()],
            k,
        }
    }

    fn ends(&self, e: usize) -> (usize, usize) {
        (self.edges[e].x, self.g.m() + self.edges[e].y)
    }

    fn size(&self) -> usize {
        self.owner.iter().filter(|&&o| o != NONE).count()
    }

    fn rooted(&self, forest: usize) -> Rooted {
        let v = self.g.vertex_count();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); v];
        for (e, &o) in self.owner.iter().enumerate() {
            if o == forest {
                let (a, b) = self.ends(e);
                adj[a].push((b, e));
                adj[b].push((a, e));
            }
        }
        let mut r = Rooted {
            parent_edge: vec![NONE; v],
            parent: vec![NONE; v],
            depth: vec![0; v],
            root: vec![NONE; v],
        };
        for s in 0..v {
            if r.root[s] != NONE {
                continue;
            }
            r.root[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, e) in &adj[u] {
                    if r.root[w] == NONE {
                        r.root[w] = s;
                        r.parent[w] = u;
                        r.parent_edge[w] = e;
                        r.depth[w] = r.depth[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        r
    }

    /// Tries to add edge `new` to the union of the forests, moving other
    /// edges between forests along a shortest exchange path.
    fn insert(&mut self, new: usize) -> bool {
        let views: Vec<Rooted> = (0..self.k).map(|i| self.rooted(i)).collect();
        // prev[e] = (edge that displaces e, forest in which it does so)
        let mut prev: Vec<(usize, usize)> = vec![(NONE, NONE); self.edges.len()];
        let mut seen = vec![false; self.edges.len()];
        seen[new] = true;
        let mut queue = VecDeque::from([new]);
        while let Some(d) = queue.pop_front() {
            let (a, b) = self.ends(d);
            for (i, view) in views.iter().enumerate() {
                if self.owner[d] == i {
                    continue;
                }
                if view.root[a] != view.root[b] {
                    self.apply(d, i, &prev);
                    return true;
                }
                for c in cycle(view, a, b) {
                    if !seen[c] {
                        seen[c] = true;
                        prev[c] = (d, i);
                        queue.push_back(c);
                    }
                }
            }
        }
        false
    }

    /// `last` enters forest `into`; each predecessor takes the slot its
    /// successor vacated.
    fn apply(&mut self, last: usize, into: usize, prev: &[(usize, usize)]) {
        let mut e = last;
        let mut target = into;
        loop {
            let vacated = self.owner[e];
            self.owner[e] = target;
            let (p, _) = prev[e];
            if p == NONE {
                break;
            }
            debug_assert_eq!(prev[e].1, vacated);
            target = vacated;
            e = p;
        }
    }

    fn packing(&self) -> TreePacking {
        TreePacking {
            trees: (0..self.k)
                .map(|i| SpanningTree {
                    edges: (0..self.edges.len())
                        .filter(|&e| self.owner[e] == i)
                        .map(|e| self.edges[e])
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Edge ids on the forest path between `a` and `b` (same tree assumed).
fn cycle(view: &Rooted, mut a: usize, mut b: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while view.depth[a] > view.depth[b] {
        out.push(view.parent_edge[a]);
        a = view.parent[a];
    }
    while view.depth[b] > view.depth[a] {
        out.push(view.parent_edge[b]);
        b = view.parent[b];
    }
    while a != b {
        out.push(view.parent_edge[a]);
        out.push(view.parent_edge[b]);
        a = view.parent[a];
        b = view.parent[b];
    }
    out
}

/// Upper bound `min(δ(G), ⌊e/(|V|−1)⌋)` on `τ(G)`.
pub fn packing_upper_bound(g: &BipartiteGraph) -> usize {
    g.min_degree().min(g.edge_count() / (g.vertex_count() - 1))
}

/// `k` edge-disjoint spanning trees of `g`, if they exist.
pub fn pack_spanning_trees(g: &BipartiteGraph, k: usize) -> Option<TreePacking> {
    if k == 0 {
        return Some(TreePacking { trees: Vec::new() });
    }
    if !g.is_connected() || packing_upper_bound(g) < k {
        return None;
    }
    let edges = g.edge_list();
    let mut forests = Forests::new(g, &edges, k);
    let target = k * (g.vertex_count() - 1);
    let mut size = 0;
    for e in 0..edges.len() {
        if forests.insert(e) {
            size += 1;
            if size == target {
                return Some(forests.packing());
            }
        }
    }
    None
}

/// Exact `τ(G)` with a packing of that many trees. Disconnected graphs give 0.
pub fn tree_packing_number(g: &BipartiteGraph) -> (usize, TreePacking) {
    let mut best = TreePacking { trees: Vec::new() };
    if !g.is_connected() {
        return (0, best);
    }
    let edges = g.edge_list();
    let per_tree = g.vertex_count() - 1;
    let bound = packing_upper_bound(g);
    let mut forests = Forests::new(g, &edges, 1);
    while forests.k <= bound {
        // retry every unplaced edge against the enlarged union
        for e in 0..edges.len() {
            if forests.owner[e] == NONE {
                forests.insert(e);
            }
        }
        if forests.size() < forests.k * per_tree {
            break;
        }
        best = forests.packing();
        forests.k += 1;
    }
    (best.len(), best)
}

/// A partition `(V₁,…,V_t)` of the global vertex indices with its crossing
/// edge count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionWitness {
    pub parts: Vec<Vec<usize>>,
    pub crossing: usize,
    pub t: usize,
}

impl PartitionWitness {
    fn from_labels(g: &BipartiteGraph, labels: &[usize]) -> Self {
        let t = labels.iter().max().map_or(0, |&l| l + 1);
        let mut parts = vec![Vec::new(); t];
        for (v, &l) in labels.iter().enumerate() {
            parts[l].push(v);
        }
        let crossing = g
            .edges()
            .filter(|e| labels[e.x] != labels[g.m() + e.y])
            .count();
        PartitionWitness { parts, crossing, t }
    }

    /// `crossing − k(t − 1)`; negative means the partition refutes `τ ≥ k`.
    pub fn slack(&self, k: usize) -> i64 {
        self.crossing as i64 - (k * (self.t - 1)) as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NwOutcome {
    Confirmed,
    Violated(PartitionWitness),
}

const NW_CAP: usize = 12;

fn nw_guard(g: &BipartiteGraph) -> Result<()> {
    if g.vertex_count() > NW_CAP {
        return Err(Error::SizeCap {
            op: "nw_partition_check",
            limit: format!("m + n <= {NW_CAP}"),
        });
    }
    Ok(())
}

/// Whether every partition has `e(V₁,…,V_t) ≥ k(t − 1)`. A refuting
/// partition minimises `crossing − k(t − 1)`. Cheap bounds are checked
/// first: a vertex of degree `< k` against the rest, then all singletons
/// when `e < k(|V| − 1)`.
pub fn nw_partition_check(g: &BipartiteGraph, k: usize) -> Result<NwOutcome> {
    nw_guard(g)?;
    let v = g.vertex_count();
    if let Some(low) = (0..v).find(|&u| g.degree(u) < k) {
        let labels: Vec<usize> = (0..v).map(|u| usize::from(u != low)).collect();
        return Ok(NwOutcome::Violated(PartitionWitness::from_labels(g, &labels)));
    }
    if g.edge_count() < k * (v - 1) {
        let labels: Vec<usize> = (0..v).collect();
        return Ok(NwOutcome::Violated(PartitionWitness::from_labels(g, &labels)));
    }
    let (slack, labels) = min_partition_slack(g, k);
    Ok(if slack < 0 {
        NwOutcome::Violated(PartitionWitness::from_labels(g, &labels))
    } else {
        NwOutcome::Confirmed
    })
}

/// `max { k : nw_partition_check(g, k) confirms }` by one enumeration:
/// `min_t ⌊c_t / (t − 1)⌋` where `c_t` is the least crossing count over
/// partitions into `t ≥ 2` parts.
pub fn nw_tree_packing_number(g: &BipartiteGraph) -> Result<usize> {
    nw_guard(g)?;
    let mut best = vec![usize::MAX; g.vertex_count() + 1];
    enumerate_partitions(g, |t, crossing, _| {
        if crossing < best[t] {
            best[t] = crossing;
        }
    });
    Ok((2..best.len())
        .map(|t| best[t] / (t - 1))
        .min()
        .unwrap_or(0))
}

fn min_partition_slack(g: &BipartiteGraph, k: usize) -> (i64, Vec<usize>) {
    let mut best = (i64::MAX, Vec::new());
    enumerate_partitions(g, |t, crossing, labels| {
        let slack = crossing as i64 - (k * (t - 1)) as i64;
        if slack < best.0 {
            best = (slack, labels.to_vec());
        }
    });
    best
}

/// Visits every partition with at least two parts as `(t, crossing, labels)`.
fn enumerate_partitions(g: &BipartiteGraph, mut visit: impl FnMut(usize, usize, &[usize])) {
    let v = g.vertex_count();
    // neighbours with smaller index, as bitmasks
    let earlier: Vec<u32> = (0..v)
        .map(|u| {
            (0..u)
                .filter(|&w| adjacent(g, u, w))
                .fold(0u32, |acc, w| acc | (1 << w))
        })
        .collect();
    let mut labels = vec![0usize; v];
    let mut class = vec![0u32; v];
    class[0] = 1;
    fn rec(
        u: usize,
        parts: usize,
        crossing: usize,
        earlier: &[u32],
        labels: &mut [usize],
        class: &mut [u32],
        visit: &mut dyn FnMut(usize, usize, &[usize]),
    ) {
        if u == labels.len() {
            if parts >= 2 {
                visit(parts, crossing, labels);
            }
            return;
        }
        for l in 0..=parts {
            let cut = (earlier[u] & !class[l]).count_ones() as usize;
            labels[u] = l;
            class[l] |= 1 << u;
            rec(
                u + 1,
                parts.max(l + 1),
                crossing + cut,
                earlier,
                labels,
                class,
                visit,
            );
            class[l] &= !(1 << u);
        }
    }
    rec(1, 1, 0, &earlier, &mut labels, &mut class, &mut visit);
}

fn adjacent(g: &BipartiteGraph, u: usize, w: usize) -> bool {
    let m = g.m();
    match (u < m, w < m) {
        (true, false) => g.has_edge(u, w - m),
        (false, true) => g.has_edge(w, u - m),
        _ => false,
    }
}

/// `Σ aᵢbᵢ ≤ a(b − (s − 1))` for `a = Σ aᵢ`, `b = Σ bᵢ`, given `s ≥ 1`
/// pairs with `aᵢ + bᵢ ≥ 2` and `b ≥ a`. Input outside that range is a
/// `Precondition` error, not a `false`.
pub fn lemma_sum_product_check(a_list: &[u64], b_list: &[u64]) -> Result<bool> {
    if a_list.len() != b_list.len() {
        return Err(Error::Precondition(format!(
            "{} a-values but {} b-values",
            a_list.len(),
            b_list.len()
        )));
    }
    if a_list.is_empty() {
        return Err(Error::Precondition("at least one pair is required".into()));
    }
    if let Some(i) = (0..a_list.len()).find(|&i| a_list[i] + b_list[i] < 2) {
        return Err(Error::Precondition(format!(
            "a_{0} + b_{0} = {1} < 2",
            i + 1,
            a_list[i] + b_list[i]
        )));
    }
    let a: i128 = a_list.iter().map(|&v| v as i128).sum();
    let b: i128 = b_list.iter().map(|&v| v as i128).sum();
    if b < a {
        return Err(Error::Precondition(format!("sum of b ({b}) < sum of a ({a})")));
    }
    let s = a_list.len() as i128;
    let lhs: i128 = a_list
        .iter()
        .zip(b_list)
        .map(|(&x, &y)| x as i128 * y as i128)
        .sum();
    Ok(lhs <= a * (b - (s - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_extremal, ExtremalSpec};

    #[test]
    fn packing_examples() {
        let (tau, p) = tree_packing_number(&make_complete(2, 2).unwrap());
        assert_eq!(tau, 1);
        assert!(p.verify(&make_complete(2, 2).unwrap()));

        let k44 = make_complete(4, 4).unwrap();
        let (tau, p) = tree_packing_number(&k44);
        assert_eq!(tau, 2);
        assert!(p.verify(&k44));
        assert_eq!(p.len(), 2);

        let g = make_extremal(ExtremalSpec::new(6, 6, 1, 5).unwrap()).unwrap();
        assert_eq!(tree_packing_number(&g).0, 1);
        assert!(pack_spanning_trees(&g, 2).is_none());

        let k66 = make_complete(6, 6).unwrap();
        let (tau, p) = tree_packing_number(&k66);
        // 36 edges, 11 per tree
        assert_eq!(tau, 3);
        assert!(p.verify(&k66));
    }

    #[test]
    fn disconnected_packs_nothing() {
        let g = make_extremal(ExtremalSpec::new(4, 2, 1, 2).unwrap()).unwrap();
        assert_eq!(tree_packing_number(&g).0, 0);
    }

    #[test]
    fn partition_examples() {
        let k22 = make_complete(2, 2).unwrap();
        match nw_partition_check(&k22, 2).unwrap() {
            NwOutcome::Violated(w) => {
                assert_eq!(w.t, 4);
                assert_eq!(w.crossing, 4);
                assert_eq!(w.slack(2), -2);
            }
            NwOutcome::Confirmed => panic!("K22 has no two disjoint spanning trees"),
        }
        assert_eq!(nw_partition_check(&k22, 1).unwrap(), NwOutcome::Confirmed);
        let k44 = make_complete(4, 4).unwrap();
        assert_eq!(nw_partition_check(&k44, 2).unwrap(), NwOutcome::Confirmed);
        assert!(matches!(
            nw_partition_check(&k44, 3).unwrap(),
            NwOutcome::Violated(_)
        ));
        assert_eq!(nw_tree_packing_number(&k44).unwrap(), 2);
        assert!(nw_partition_check(&make_complete(7, 6).unwrap(), 1).is_err());
    }

    #[test]
    fn partition_enumeration_counts_bell_numbers() {
        // Bell(6) = 203; one partition has a single part
        let g = make_complete(3, 3).unwrap();
        let mut count = 0;
        enumerate_partitions(&g, |_, _, _| count += 1);
        assert_eq!(count, 202);
    }

    #[test]
    fn counting_lemma_examples() {
        assert!(lemma_sum_product_check(&[1, 1], &[1, 1]).unwrap());
        assert!(lemma_sum_product_check(&[0, 2], &[2, 0]).unwrap());
        assert!(lemma_sum_product_check(&[1, 1, 1], &[1, 1, 1]).unwrap());
        assert!(lemma_sum_product_check(&[1, 0], &[1, 1]).is_err());
        assert!(lemma_sum_product_check(&[3], &[2]).is_err());
        assert!(lemma_sum_product_check(&[], &[]).is_err());
    }
}
