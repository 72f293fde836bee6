//! Biregular factors and matchings.
//!
//! A graph has an `(a,b)`-biregular factor iff `a·m = b·n` and
//! `δ(S,T) = e(S, Y−T) + b|T| − a|S| ≥ 0` for every `S ⊆ X`, `T ⊆ Y`.
//! [`find_biregular_factor`] decides this with a flow network
//!
//! ```text
//! source --a--> x --1--> y --b--> sink      (one middle arc per edge of G)
//! ```
//!
//! and, when the flow falls short of `a·m`, reads a violating pair off the
//! minimum cut: `S` is the source side of X and `T` the source side of Y.
//! The cut then crosses `a` for each X-vertex outside `S`, one for each edge
//! from `S` to `Y − T`, and `b` for each vertex of `T`, so its capacity is
//! `a(m − |S|) + e(S, Y−T) + b|T| = a·m + δ(S,T)`. Max-flow/min-cut gives
//! `δ(S,T) = maxflow − a·m ≤ −1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{BipartiteGraph, BitSet, Edge};

/// Target degrees `a` on X and `b` on Y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorRequest {
    pub a: usize,
    pub b: usize,
}

impl FactorRequest {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Precondition(format!(
                "factor degrees must be positive (a = {a}, b = {b})"
            )));
        }
        Ok(FactorRequest { a, b })
    }
}

/// A pair `(S, T)` together with `δ(S,T)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OreWitness {
    pub s: BitSet,
    pub t: BitSet,
    pub delta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiregularFactor {
    pub a: usize,
    pub b: usize,
    pub edges: Vec<Edge>,
}

impl BiregularFactor {
    /// Every X-vertex has degree `a` and every Y-vertex degree `b` in the
    /// edge subset, and the subset lies in `g`.
    pub fn verify(&self, g: &BipartiteGraph) -> bool {
        let mut dx = vec![0; g.m()];
        let mut dy = vec![0; g.n()];
        for e in &self.edges {
            if !g.has_edge(e.x, e.y) {
                return false;
            }
            dx[e.x] += 1;
            dy[e.y] += 1;
        }
        let mut sorted = self.edges.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == self.edges.len()
            && dx.iter().all(|&d| d == self.a)
            && dy.iter().all(|&d| d == self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorOutcome {
    Factor(BiregularFactor),
    Violation(OreWitness),
}

impl FactorOutcome {
    pub fn factor(&self) -> Option<&BiregularFactor> {
        match self {
            FactorOutcome::Factor(f) => Some(f),
            FactorOutcome::Violation(_) => None,
        }
    }
}

/// `δ(S,T) = e(S, Y−T) + b|T| − a|S|`.
pub fn ore_delta(g: &BipartiteGraph, s: &BitSet, t: &BitSet, a: usize, b: usize) -> i64 {
    let outside_t = t.complement();
    g.edges_between(s, &outside_t) as i64 + (b * t.len()) as i64 - (a * s.len()) as i64
}

const ORE_CAP: usize = 20;

/// Minimum of `δ(S,T)` over all pairs, with a minimising pair.
///
/// Every `S ⊆ X` is enumerated. For fixed `S` the objective splits over the
/// Y-vertices (`y` contributes `b` inside `T` and `e(S, y)` outside it), so
/// the best `T` is read off vertex by vertex. The first minimiser in mask
/// order is returned.
pub fn min_ore_delta(g: &BipartiteGraph, a: usize, b: usize) -> Result<OreWitness> {
    if g.m() > ORE_CAP || g.n() > ORE_CAP {
        return Err(Error::SizeCap {
            op: "min_ore_delta",
            limit: format!("m <= {ORE_CAP} and n <= {ORE_CAP}"),
        });
    }
    let (m, n) = (g.m(), g.n());
    let y_masks: Vec<u64> = (0..n).map(|y| g.y_neighbors(y).mask()).collect();
    let mut best: Option<(i64, u64, u64)> = None;
    for s in 0u64..(1 << m) {
        let mut value = -((a as i64) * s.count_ones() as i64);
        let mut t = 0u64;
        for (y, &ym) in y_masks.iter().enumerate() {
            let e = (ym & s).count_ones() as i64;
            if (b as i64) < e {
                value += b as i64;
                t |= 1 << y;
            } else {
                value += e;
            }
        }
        if best.is_none_or(|(v, _, _)| value < v) {
            best = Some((value, s, t));
        }
    }
    let (delta, s, t) = best.expect("at least the empty pair");
    Ok(OreWitness {
        s: BitSet::from_mask(m, s),
        t: BitSet::from_mask(n, t),
        delta,
    })
}

/// An `(a,b)`-biregular factor, or a pair `(S,T)` with `δ(S,T) ≤ −1`.
pub fn find_biregular_factor(g: &BipartiteGraph, a: usize, b: usize) -> Result<FactorOutcome> {
    let req = FactorRequest::new(a, b)?;
    let (m, n) = (g.m(), g.n());
    if a * m != b * n {
        return Err(Error::DegreeSumMismatch { am: a * m, bn: b * n });
    }
    let source = 0;
    let sink = m + n + 1;
    let xv = |x: usize| 1 + x;
    let yv = |y: usize| 1 + m + y;
    let mut net = FlowNetwork::new(m + n + 2);
    for x in 0..m {
        net.add_arc(source, xv(x), req.a as i64);
    }
    let middle: Vec<(Edge, usize)> = g
        .edges()
        .map(|e| (e, net.add_arc(xv(e.x), yv(e.y), 1)))
        .collect();
    for y in 0..n {
        net.add_arc(yv(y), sink, req.b as i64);
    }
    let value = net.max_flow(source, sink);
    let target = (a * m) as i64;
    if value == target {
        let edges: Vec<Edge> = middle
            .into_iter()
            .filter(|&(_, id)| net.flow(id) == 1)
            .map(|(e, _)| e)
            .collect();
        let factor = BiregularFactor { a, b, edges };
        if !factor.verify(g) {
            return Err(Error::Contradiction("flow produced a non-biregular edge set".into()));
        }
        return Ok(FactorOutcome::Factor(factor));
    }
    let reach = net.residual_reachable(source);
    let s = BitSet::from_indices(m, (0..m).filter(|&x| reach[xv(x)]));
    let t = BitSet::from_indices(n, (0..n).filter(|&y| reach[yv(y)]));
    let delta = ore_delta(g, &s, &t, a, b);
    if delta != value - target || delta > -1 {
        return Err(Error::Contradiction(format!(
            "min-cut pair has delta {delta}, expected maxflow - a*m = {}",
            value - target
        )));
    }
    Ok(FactorOutcome::Violation(OreWitness { s, t, delta }))
}

/// A maximum matching, grown one augmenting path at a time.
pub fn maximum_matching(g: &BipartiteGraph) -> Vec<Edge> {
    let mut match_y = vec![usize::MAX; g.n()];
    for x in 0..g.m() {
        let mut visited = vec![false; g.n()];
        augment(g, x, &mut visited, &mut match_y);
    }
    let mut out: Vec<Edge> = match_y
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x != usize::MAX)
        .map(|(y, &x)| Edge { x, y })
        .collect();
    out.sort();
    out
}

fn augment(g: &BipartiteGraph, x: usize, visited: &mut [bool], match_y: &mut [usize]) -> bool {
    for y in g.x_neighbors(x).iter() {
        if visited[y] {
            continue;
        }
        visited[y] = true;
        if match_y[y] == usize::MAX || augment(g, match_y[y], visited, match_y) {
            match_y[y] = x;
            return true;
        }
    }
    false
}

/// `α′(G)`, the size of a maximum matching.
pub fn matching_number(g: &BipartiteGraph) -> usize {
    maximum_matching(g).len()
}

/// `|X| + min_{S ⊆ X} (|N(S)| − |S|)` by enumerating every `S` (including
/// the empty set). Requires `m ≤ 22`.
pub fn matching_number_by_deficiency(g: &BipartiteGraph) -> Result<usize> {
    const CAP: usize = 22;
    if g.m() > CAP {
        return Err(Error::SizeCap {
            op: "matching_number_by_deficiency",
            limit: format!("m <= {CAP}"),
        });
    }
    let mut best: i64 = 0;
    for mask in 1u64..(1 << g.m()) {
        let s = BitSet::from_mask(g.m(), mask);
        let v = g.neighborhood(&s).len() as i64 - s.len() as i64;
        best = best.min(v);
    }
    Ok((g.m() as i64 + best) as usize)
}
