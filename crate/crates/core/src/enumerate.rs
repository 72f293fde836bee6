//! Labeled bipartite graph enumeration and seeded sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, BitSet};

/// Largest `m·n` enumerated exhaustively (`2^(mn)` graphs).
pub const EXHAUSTIVE_EDGE_CAP: usize = 20;

/// Default seed for sampled sweeps.
pub const DEFAULT_SEED: u64 = 0x5eed_0b1a_7e5e_ed00;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    Exhaustive,
    /// `samples` graphs with independent fair-coin edges.
    Sampled { seed: u64, samples: usize },
}

/// Graph codes `0..2^(mn)`; bit `x·n + y` is the edge `(x, y)`.
pub fn all_codes(m: usize, n: usize) -> Result<std::ops::Range<u64>> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroPartSize { m, n });
    }
    if m * n > EXHAUSTIVE_EDGE_CAP {
        return Err(Error::SizeCap {
            op: "exhaustive enumeration",
            limit: format!("m*n <= {EXHAUSTIVE_EDGE_CAP} (use sampling)"),
        });
    }
    Ok(0..1u64 << (m * n))
}

/// All (or sampled) labeled graphs on parts of size `m` and `n` passing
/// `filter`.
pub fn enumerate_bipartite<'a, F>(
    m: usize,
    n: usize,
    mode: Enumeration,
    filter: F,
) -> Result<Box<dyn Iterator<Item = BipartiteGraph> + 'a>>
where
    F: Fn(&BipartiteGraph) -> bool + 'a,
{
    Ok(match mode {
        Enumeration::Exhaustive => {
            let codes = all_codes(m, n)?;
            Box::new(
                codes
                    .map(move |c| BipartiteGraph::from_code(m, n, c).expect("code in range"))
                    .filter(move |g| filter(g)),
            )
        }
        Enumeration::Sampled { seed, samples } => {
            if m == 0 || n == 0 {
                return Err(Error::ZeroPartSize { m, n });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new(
                (0..samples)
                    .map(move |_| random_graph(m, n, 0.5, &mut rng))
                    .filter(move |g| filter(g)),
            )
        }
    })
}

/// Each of the `m·n` possible edges present independently with probability `p`.
pub fn random_graph<R: Rng>(m: usize, n: usize, p: f64, rng: &mut R) -> BipartiteGraph {
    let edges: Vec<(usize, usize)> = (0..m)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    BipartiteGraph::from_edges(m, n, edges).expect("edges in range")
}

/// One graph per multiset of X-neighbourhoods, i.e. every graph up to
/// relabeling X (relabelings of Y may still repeat). Invariants preserved by
/// permuting X can be checked on this smaller set.
pub fn up_to_x_relabeling(m: usize, n: usize) -> Result<impl Iterator<Item = BipartiteGraph>> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroPartSize { m, n });
    }
    if n >= 32 {
        return Err(Error::SizeCap {
            op: "up_to_x_relabeling",
            limit: "n < 32".into(),
        });
    }
    let rows = 1u32 << n;
    let mut current: Option<Vec<u32>> = Some(vec![0; m]);
    Ok(std::iter::from_fn(move || {
        let out = current.clone()?;
        // next non-decreasing sequence over 0..rows
        let mut next = out.clone();
        current = match (0..m).rev().find(|&i| next[i] + 1 < rows) {
            Some(i) => {
                let v = next[i] + 1;
                next[i..].iter_mut().for_each(|r| *r = v);
                Some(next)
            }
            None => None,
        };
        let x_adj = out
            .iter()
            .map(|&r| BitSet::from_mask(n, r as u64))
            .collect::<Vec<_>>();
        let edges: Vec<(usize, usize)> = x_adj
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |y| (x, y)))
            .collect();
        Some(BipartiteGraph::from_edges(m, n, edges).expect("edges in range"))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_counts() {
        let all = |m, n| enumerate_bipartite(m, n, Enumeration::Exhaustive, |_| true).unwrap().count();
        assert_eq!(all(2, 2), 16);
        assert_eq!(all(4, 2), 256);
        assert!(enumerate_bipartite(5, 5, Enumeration::Exhaustive, |_| true).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let mode = Enumeration::Sampled { seed: 7, samples: 20 };
        let a: Vec<_> = enumerate_bipartite(5, 5, mode, |_| true).unwrap().collect();
        let b: Vec<_> = enumerate_bipartite(5, 5, mode, |_| true).unwrap().collect();
        assert_eq!(a.len(), 20);
        assert_eq!(a, b);
    }

    #[test]
    fn multiset_enumeration_size() {
        // C(2^n + m − 1, m)
        assert_eq!(up_to_x_relabeling(2, 2).unwrap().count(), 10);
        assert_eq!(up_to_x_relabeling(3, 2).unwrap().count(), 20);
        assert_eq!(up_to_x_relabeling(1, 3).unwrap().count(), 8);
    }
}
