//! Spectral radius of bipartite graphs and the closed forms built on it.

mod quotient;

use serde::Serialize;

pub use quotient::{
    compare_largest_roots, largest_root, quotient_of_partition, EvenQuartic, Family, FamilyMember, QuotientMatrix,
    Rational,
};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Component};

/// Default bound on the adjacency residual `‖Az − ρz‖∞`.
pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralEstimate {
    pub value: f64,
    /// `‖Az − ρz‖∞` for the unit eigenvector estimate `z`.
    pub residual: f64,
    pub iterations: usize,
}

/// Largest adjacency eigenvalue `ρ(G)`.
///
/// Each component is handled separately. Within a component, power
/// iteration runs on the Gram product of the biadjacency matrix over the
/// smaller side, whose top eigenvalue is `ρ²`; this sidesteps the `±ρ` pair
/// in the bipartite adjacency spectrum. Iteration stops once the residual of
/// the lifted adjacency eigenvector is at most `tol`.
pub fn spectral_radius(g: &BipartiteGraph, tol: f64) -> Result<SpectralEstimate> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    let mut best = SpectralEstimate {
        value: 0.0,
        residual: 0.0,
        iterations: 0,
    };
    if g.edge_count() == 0 {
        return Ok(best);
    }
    let mut total_iterations = 0;
    for comp in g.components() {
        if comp.xs.is_empty() || comp.ys.is_empty() {
            continue;
        }
        let est = component_radius(g, &comp, tol)?;
        total_iterations += est.iterations;
        if est.value > best.value {
            best = est;
        }
    }
    best.iterations = total_iterations;
    Ok(best)
}

/// Local biadjacency lists of one component, `small` being the side the Gram
/// product lives on.
struct Biadjacency {
    small_adj: Vec<Vec<usize>>,
    large_adj: Vec<Vec<usize>>,
}

impl Biadjacency {
    fn of_component(g: &BipartiteGraph, comp: &Component) -> Self {
        let xs = comp.xs.to_vec();
        let ys = comp.ys.to_vec();
        let mut y_local = vec![usize::MAX; g.n()];
        for (i, &y) in ys.iter().enumerate() {
            y_local[y] = i;
        }
        let x_rows: Vec<Vec<usize>> = xs
            .iter()
            .map(|&x| g.x_neighbors(x).iter().map(|y| y_local[y]).collect())
            .collect();
        let mut y_rows = vec![Vec::new(); ys.len()];
        for (i, row) in x_rows.iter().enumerate() {
            for &j in row {
                y_rows[j].push(i);
            }
        }
        if xs.len() <= ys.len() {
            Biadjacency {
                small_adj: x_rows,
                large_adj: y_rows,
            }
        } else {
            Biadjacency {
                small_adj: y_rows,
                large_adj: x_rows,
            }
        }
    }

    /// `v = Bᵀ B u`, with `w = B u` left in `scratch`.
    fn gram_apply(&self, u: &[f64], scratch: &mut [f64], v: &mut [f64]) {
        for (w, row) in scratch.iter_mut().zip(&self.large_adj) {
            *w = row.iter().map(|&i| u[i]).sum();
        }
        for (out, row) in v.iter_mut().zip(&self.small_adj) {
            *out = row.iter().map(|&j| scratch[j]).sum();
        }
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|a| *a /= norm);
    }
    norm
}

fn component_radius(g: &BipartiteGraph, comp: &Component, tol: f64) -> Result<SpectralEstimate> {
    let bi = Biadjacency::of_component(g, comp);
    let k = bi.small_adj.len();
    let mut u = vec![1.0; k];
    normalize(&mut u);
    let mut scratch = vec![0.0; bi.large_adj.len()];
    let mut v = vec![0.0; k];
    let mut reseeded = false;
    for it in 1..=MAX_ITERATIONS {
        bi.gram_apply(&u, &mut scratch, &mut v);
        let mu: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
        if !(mu > 0.0) {
            if reseeded {
                return Err(Error::NonConvergence { iterations: it });
            }
            reseeded = true;
            u.iter_mut().enumerate().for_each(|(i, a)| *a = 1.0 + i as f64);
            normalize(&mut u);
            continue;
        }
        let rho = mu.sqrt();
        let gram_res = u
            .iter()
            .zip(&v)
            .map(|(a, b)| (b - mu * a).abs())
            .fold(0.0, f64::max);
        let residual = gram_res / (rho * std::f64::consts::SQRT_2);
        if residual <= tol {
            return Ok(SpectralEstimate {
                value: rho,
                residual,
                iterations: it,
            });
        }
        std::mem::swap(&mut u, &mut v);
        normalize(&mut u);
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NosalBound {
    pub bound: f64,
    /// The non-isolated vertices induce a complete bipartite graph.
    pub tight: bool,
}

/// `ρ(G) ≤ √e(G)`, with the structural equality test.
pub fn nosal_bound(g: &BipartiteGraph) -> NosalBound {
    let e = g.edge_count();
    let busy_x = (0..g.m()).filter(|&x| g.x_degree(x) > 0).count();
    let busy_y = (0..g.n()).filter(|&y| g.y_degree(y) > 0).count();
    NosalBound {
        bound: (e as f64).sqrt(),
        tight: e == busy_x * busy_y,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_extremal, ExtremalSpec};

    fn rho(g: &BipartiteGraph) -> f64 {
        spectral_radius(g, DEFAULT_TOL).unwrap().value
    }

    #[test]
    fn complete_bipartite_radius() {
        assert!((rho(&make_complete(3, 3).unwrap()) - 3.0).abs() < 1e-9);
        assert!((rho(&make_complete(2, 3).unwrap()) - 6f64.sqrt()).abs() < 1e-9);
        assert!((rho(&make_complete(1, 1).unwrap()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn extremal_six_six() {
        let g = make_extremal(ExtremalSpec::new(6, 6, 1, 5).unwrap()).unwrap();
        let expected = ((31.0 + 861f64.sqrt()) / 2.0).sqrt();
        assert!((rho(&g) - expected).abs() < 1e-9);
        assert!((expected - 5.492849).abs() < 1e-6);
    }

    #[test]
    fn empty_graph_is_zero() {
        let est = spectral_radius(&BipartiteGraph::empty(3, 2).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.iterations, 0);
    }

    #[test]
    fn disconnected_takes_max_component() {
        // K_{2,2} plus a disjoint edge
        let g = BipartiteGraph::from_edges(3, 3, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)]).unwrap();
        assert!((rho(&g) - 2.0).abs() < 1e-9);
        // two copies of K_{1,2}: equal top eigenvalues in separate components
        let g = BipartiteGraph::from_edges(2, 4, [(0, 0), (0, 1), (1, 2), (1, 3)]).unwrap();
        assert!((rho(&g) - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn residual_within_tolerance() {
        let g = make_extremal(ExtremalSpec::new(7, 5, 3, 2).unwrap()).unwrap();
        let est = spectral_radius(&g, 1e-12).unwrap();
        assert!(est.residual <= 1e-12);
        assert!(est.iterations >= 1);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let g = make_complete(2, 2).unwrap();
        assert!(spectral_radius(&g, 0.0).is_err());
        assert!(spectral_radius(&g, f64::NAN).is_err());
    }

    #[test]
    fn nosal_examples() {
        let k33 = make_complete(3, 3).unwrap();
        let nb = nosal_bound(&k33);
        assert_eq!(nb.bound, 3.0);
        assert!(nb.tight);

        // C6 = K_{3,3} minus a perfect matching
        let c6 = make_complete(3, 3)
            .unwrap()
            .with_toggled(&[(0, 0), (1, 1), (2, 2)].map(|(x, y)| crate::graph::Edge::new(x, y)));
        let nb = nosal_bound(&c6);
        assert!((nb.bound - 6f64.sqrt()).abs() < 1e-15);
        assert!(!nb.tight);
        assert!((rho(&c6) - 2.0).abs() < 1e-9);

        let k22_plus = BipartiteGraph::from_edges(3, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let nb = nosal_bound(&k22_plus);
        assert_eq!(nb.bound, 2.0);
        assert!(nb.tight);
    }
}
