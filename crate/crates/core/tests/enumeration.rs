//! Enumeration counts against an independent counting method.

use bispectral::enumerate::{enumerate_bipartite, up_to_x_relabeling, Enumeration};

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Connected labeled bipartite graphs with parts of size `m`, `n`.
///
/// Every graph splits off the component of `x₁`, which owns `i` X-vertices
/// (including `x₁`) and `j` Y-vertices, with the rest arbitrary:
/// `2^(mn) = Σ C(m−1, i−1)·C(n, j)·c(i, j)·2^((m−i)(n−j))`.
fn connected_count(m: u64, n: u64) -> u128 {
    let mut c = vec![vec![0u128; n as usize + 1]; m as usize + 1];
    for a in 1..=m {
        for b in 0..=n {
            if b == 0 {
                c[a as usize][0] = u128::from(a == 1);
                continue;
            }
            let mut rest = 0u128;
            for i in 1..=a {
                for j in 0..=b {
                    if (i, j) == (a, b) {
                        continue;
                    }
                    rest += binomial(a - 1, i - 1)
                        * binomial(b, j)
                        * c[i as usize][j as usize]
                        * (1u128 << ((a - i) * (b - j)));
                }
            }
            c[a as usize][b as usize] = (1u128 << (a * b)) - rest;
        }
    }
    c[m as usize][n as usize]
}

#[test]
fn small_connected_counts() {
    assert_eq!(connected_count(1, 1), 1);
    assert_eq!(connected_count(1, 3), 1);
    assert_eq!(connected_count(2, 2), 5);
    let count = |m, n| {
        enumerate_bipartite(m, n, Enumeration::Exhaustive, |g| g.is_connected())
            .unwrap()
            .count() as u128
    };
    assert_eq!(count(2, 2), 5);
    assert_eq!(count(3, 3), connected_count(3, 3));
}

#[test]
fn connected_six_by_three() {
    let n = enumerate_bipartite(6, 3, Enumeration::Exhaustive, |g| g.is_connected())
        .unwrap()
        .count() as u128;
    assert_eq!(n, connected_count(6, 3));
}

#[test]
fn totals() {
    let all = |m, n| enumerate_bipartite(m, n, Enumeration::Exhaustive, |_| true).unwrap().count();
    assert_eq!(all(2, 2), 16);
    assert_eq!(all(4, 2), 256);
    // multisets of 2^n rows of size m
    assert_eq!(up_to_x_relabeling(4, 2).unwrap().count() as u128, binomial(4 + 4 - 1, 4));
}
