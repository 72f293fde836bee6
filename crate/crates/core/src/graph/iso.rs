//! Backtracking isomorphism test for small bipartite graphs.
//!
//! Intended for graphs of roughly 24 vertices or fewer. The search assigns
//! vertices of the smaller part one at a time, pruning on degree and on the
//! multiset of partial neighbourhood signatures of the other part.

use serde::Serialize;

use super::BipartiteGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoKind {
    /// X maps onto X and Y onto Y.
    PartPreserving,
    /// X maps onto Y and Y onto X (only possible when `m = n`).
    PartSwapping,
}

/// A vertex bijection from `G` onto `H`.
///
/// For [`IsoKind::PartSwapping`], `x_map` sends X-vertices of `G` to
/// Y-vertices of `H` and `y_map` sends Y-vertices of `G` to X-vertices of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub kind: IsoKind,
    pub x_map: Vec<usize>,
    pub y_map: Vec<usize>,
}

pub fn is_isomorphic(g: &BipartiteGraph, h: &BipartiteGraph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Tries a part-preserving map first, then (when `m = n`) a part-swapping one.
pub fn find_isomorphism(g: &BipartiteGraph, h: &BipartiteGraph) -> Option<Isomorphism> {
    if let Some((x_map, y_map)) = preserving(g, h) {
        return Some(Isomorphism {
            kind: IsoKind::PartPreserving,
            x_map,
            y_map,
        });
    }
    if g.m() == g.n() {
        let ht = h.transpose();
        if let Some((x_map, y_map)) = preserving(g, &ht) {
            return Some(Isomorphism {
                kind: IsoKind::PartSwapping,
                x_map,
                y_map,
            });
        }
    }
    None
}

fn sorted_degrees(g: &BipartiteGraph) -> (Vec<usize>, Vec<usize>) {
    let mut dx: Vec<_> = (0..g.m()).map(|x| g.x_degree(x)).collect();
    let mut dy: Vec<_> = (0..g.n()).map(|y| g.y_degree(y)).collect();
    dx.sort_unstable();
    dy.sort_unstable();
    (dx, dy)
}

fn preserving(g: &BipartiteGraph, h: &BipartiteGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    if g.m() != h.m() || g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    if sorted_degrees(g) != sorted_degrees(h) {
        return None;
    }
    // Search over the smaller part; signatures of the other part are bitmasks
    // over assignment positions.
    if g.m() > g.n() {
        let (ym, xm) = preserving(&g.transpose(), &h.transpose())?;
        return Some((xm, ym));
    }
    if g.m() > 64 {
        // signatures are single words
        return None;
    }
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(g.x_degree(x)));
    let mut search = Search {
        g,
        h,
        order,
        x_map: vec![usize::MAX; g.m()],
        used: vec![false; h.m()],
        sig_g: vec![0; g.n()],
        sig_h: vec![0; h.n()],
    };
    if search.extend(0) {
        let y_map = search.match_signatures();
        Some((search.x_map, y_map))
    } else {
        None
    }
}

struct Search<'a> {
    g: &'a BipartiteGraph,
    h: &'a BipartiteGraph,
    order: Vec<usize>,
    x_map: Vec<usize>,
    used: Vec<bool>,
    sig_g: Vec<u64>,
    sig_h: Vec<u64>,
}

impl Search<'_> {
    fn extend(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let gx = self.order[pos];
        let bit = 1u64 << pos;
        for hx in 0..self.h.m() {
            if self.used[hx] || self.h.x_degree(hx) != self.g.x_degree(gx) {
                continue;
            }
            for y in self.g.x_neighbors(gx).iter() {
                self.sig_g[y] |= bit;
            }
            for y in self.h.x_neighbors(hx).iter() {
                self.sig_h[y] |= bit;
            }
            if self.signatures_agree() {
                self.used[hx] = true;
                self.x_map[gx] = hx;
                if self.extend(pos + 1) {
                    return true;
                }
                self.used[hx] = false;
                self.x_map[gx] = usize::MAX;
            }
            for y in self.g.x_neighbors(gx).iter() {
                self.sig_g[y] &= !bit;
            }
            for y in self.h.x_neighbors(hx).iter() {
                self.sig_h[y] &= !bit;
            }
        }
        false
    }

    fn signatures_agree(&self) -> bool {
        let mut a = self.sig_g.clone();
        let mut b = self.sig_h.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    fn match_signatures(&self) -> Vec<usize> {
        let mut hs: Vec<(u64, usize)> = self.sig_h.iter().copied().zip(0..).collect();
        hs.sort_unstable();
        let mut gs: Vec<(u64, usize)> = self.sig_g.iter().copied().zip(0..).collect();
        gs.sort_unstable();
        let mut y_map = vec![0; self.g.n()];
        for ((_, gy), (_, hy)) in gs.into_iter().zip(hs) {
            y_map[gy] = hy;
        }
        y_map
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_extremal, ExtremalSpec};

    fn check_map(g: &BipartiteGraph, h: &BipartiteGraph, iso: &Isomorphism) {
        for e in g.edges() {
            match iso.kind {
                IsoKind::PartPreserving => assert!(h.has_edge(iso.x_map[e.x], iso.y_map[e.y])),
                IsoKind::PartSwapping => assert!(h.has_edge(iso.y_map[e.y], iso.x_map[e.x])),
            }
        }
    }

    #[test]
    fn reflexive() {
        let g = make_extremal(ExtremalSpec::new(3, 4, 1, 3).unwrap()).unwrap();
        let iso = find_isomorphism(&g, &g).unwrap();
        assert_eq!(iso.kind, IsoKind::PartPreserving);
        check_map(&g, &g, &iso);
    }

    #[test]
    fn edge_count_mismatch() {
        let c4 = make_complete(2, 2).unwrap();
        let p4 = BipartiteGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 0)]).unwrap();
        assert!(!is_isomorphic(&c4, &p4));
    }

    #[test]
    fn relabeled_extremal() {
        let g = make_extremal(ExtremalSpec::new(3, 4, 1, 3).unwrap()).unwrap();
        let h = g.relabel(&[2, 0, 1], &[3, 1, 0, 2]).unwrap();
        assert_ne!(g, h);
        let iso = find_isomorphism(&g, &h).unwrap();
        assert_eq!(iso.kind, IsoKind::PartPreserving);
        check_map(&g, &h, &iso);
    }

    #[test]
    fn part_swap_only_when_balanced() {
        // x0 has degree 1 in g; in h the degree-1 vertex sits in Y
        let g = make_extremal(ExtremalSpec::new(3, 3, 1, 2).unwrap()).unwrap();
        let h = g.transpose();
        let iso = find_isomorphism(&g, &h).unwrap();
        assert_eq!(iso.kind, IsoKind::PartSwapping);
        check_map(&g, &h, &iso);

        let g = make_extremal(ExtremalSpec::new(3, 4, 1, 2).unwrap()).unwrap();
        assert!(!is_isomorphic(&g, &g.transpose()));
    }

    #[test]
    fn same_degrees_not_isomorphic() {
        // C8 vs two disjoint C4 on 4+4 vertices: both 2-regular
        let c8 = BipartiteGraph::from_edges(
            4,
            4,
            [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 0)],
        )
        .unwrap();
        let two_c4 = BipartiteGraph::from_edges(
            4,
            4,
            [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)],
        )
        .unwrap();
        assert!(!is_isomorphic(&c8, &two_c4));
        assert!(!is_isomorphic(&two_c4, &c8));
    }
}
