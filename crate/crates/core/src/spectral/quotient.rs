//! Equitable quotient matrices of the extremal families and their
//! characteristic polynomials.
//!
//! Every family below is a complete bipartite graph minus a biclique, and its
//! natural four-part partition (two blocks in X, two in Y) is equitable. The
//! quotient is therefore of the form `[[0, P], [Q, 0]]` and its characteristic
//! polynomial is the even quartic `λ⁴ + c2·λ² + c0`.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, ExtremalSpec};

pub type Rational = Ratio<i128>;

/// Largest part size accepted by the closed forms. `c0` has degree 4 in the
/// parameters, so `2^20` keeps every intermediate far inside `i128`.
const PARAM_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `K_{x,y} \ E(K_{1, y−a+1})`: one X-vertex keeps `a − 1` neighbours.
    StarOnX,
    /// `K_{x,y} \ E(K_{x−a+1, 1})`: one Y-vertex keeps `a − 1` neighbours.
    StarOnY,
    /// `K_{x,y} \ E(K_{s, y−s})`: `s` X-vertices keep the same `s` neighbours.
    Biclique,
}

/// One member of a family; `param` is `a` for the star families and `s` for
/// the biclique family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyMember {
    pub family: Family,
    pub x: usize,
    pub y: usize,
    pub param: usize,
}

impl FamilyMember {
    pub fn new(family: Family, x: usize, y: usize, param: usize) -> Result<Self> {
        let fm = FamilyMember { family, x, y, param };
        fm.validate()?;
        Ok(fm)
    }

    pub fn star_on_x(x: usize, y: usize, a: usize) -> Result<Self> {
        Self::new(Family::StarOnX, x, y, a)
    }

    pub fn star_on_y(x: usize, y: usize, a: usize) -> Result<Self> {
        Self::new(Family::StarOnY, x, y, a)
    }

    pub fn biclique(x: usize, y: usize, s: usize) -> Result<Self> {
        Self::new(Family::Biclique, x, y, s)
    }

    fn validate(&self) -> Result<()> {
        let FamilyMember { family, x, y, param } = *self;
        if x == 0 || y == 0 {
            return Err(Error::FamilyRange(format!("part sizes must be positive ({x}, {y})")));
        }
        if x > PARAM_CAP || y > PARAM_CAP {
            return Err(Error::FamilyRange(format!(
                "part sizes above {PARAM_CAP} risk coefficient overflow"
            )));
        }
        let ok = match family {
            Family::StarOnX => (1..=y).contains(&param),
            Family::StarOnY => (1..=x).contains(&param),
            Family::Biclique => param >= 1 && param <= x && param < y,
        };
        if !ok {
            return Err(Error::FamilyRange(format!(
                "{family:?} needs {} (x={x}, y={y}, param={param})",
                match family {
                    Family::StarOnX => "1 <= a <= y",
                    Family::StarOnY => "1 <= a <= x",
                    Family::Biclique => "1 <= s <= x and s < y",
                }
            )));
        }
        Ok(())
    }

    /// The member as `K_{m,n} \ E(K_{p,q})`.
    pub fn extremal_spec(&self) -> ExtremalSpec {
        let FamilyMember { family, x, y, param } = *self;
        let (p, q) = match family {
            Family::StarOnX => (1, y - param + 1),
            Family::StarOnY => (x - param + 1, 1),
            Family::Biclique => (param, y - param),
        };
        ExtremalSpec { m: x, n: y, p, q }
    }

    /// Sizes of the four blocks, in matrix order (two X-blocks, two Y-blocks).
    pub fn part_sizes(&self) -> [usize; 4] {
        let FamilyMember { family, x, y, param } = *self;
        match family {
            Family::StarOnX => [1, x - 1, param - 1, y - param + 1],
            Family::StarOnY => [param - 1, x - param + 1, 1, y - 1],
            Family::Biclique => [param, x - param, param, y - param],
        }
    }

    /// The four blocks as global vertex lists on the canonical embedding
    /// produced by [`crate::graph::make_extremal`] (deleted biclique on the
    /// first `p` X-vertices and first `q` Y-vertices).
    pub fn partition(&self) -> [Vec<usize>; 4] {
        let ExtremalSpec { m, n, p, q } = self.extremal_spec();
        let x_range = |r: std::ops::Range<usize>| r.collect::<Vec<_>>();
        let y_range = |r: std::ops::Range<usize>| r.map(|y| m + y).collect::<Vec<_>>();
        match self.family {
            // [x0, X − x0, N(x0), Y − N(x0)]
            Family::StarOnX => [x_range(0..1), x_range(1..m), y_range(q..n), y_range(0..q)],
            // [N(y0), X − N(y0), y0, Y − y0]
            Family::StarOnY => [x_range(p..m), x_range(0..p), y_range(0..1), y_range(1..n)],
            // [X1, X − X1, N(X1), Y − N(X1)]
            Family::Biclique => [x_range(0..p), x_range(p..m), y_range(q..n), y_range(0..q)],
        }
    }

    /// The 4×4 equitable quotient matrix of the member's adjacency matrix.
    pub fn quotient_matrix(&self) -> QuotientMatrix {
        let FamilyMember { family, x, y, param } = *self;
        let (x, y, t) = (x as i128, y as i128, param as i128);
        let rows: [[i128; 4]; 4] = match family {
            Family::StarOnX => {
                let a = t;
                [
                    [0, 0, a - 1, 0],
                    [0, 0, a - 1, y - a + 1],
                    [1, x - 1, 0, 0],
                    [0, x - 1, 0, 0],
                ]
            }
            Family::StarOnY => {
                let a = t;
                [
                    [0, 0, 1, y - 1],
                    [0, 0, 0, y - 1],
                    [a - 1, 0, 0, 0],
                    [a - 1, x - a + 1, 0, 0],
                ]
            }
            Family::Biclique => {
                let s = t;
                [
                    [0, 0, s, 0],
                    [0, 0, s, y - s],
                    [s, x - s, 0, 0],
                    [0, x - s, 0, 0],
                ]
            }
        };
        QuotientMatrix {
            entries: rows
                .iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
            part_sizes: self.part_sizes().to_vec(),
            equitable: true,
        }
    }

    /// Characteristic polynomial of the quotient, from the closed-form
    /// coefficient expressions.
    pub fn char_poly(&self) -> EvenQuartic {
        let FamilyMember { family, x, y, param } = *self;
        let (x, y, t) = (x as i128, y as i128, param as i128);
        match family {
            Family::StarOnX => {
                let a = t;
                EvenQuartic {
                    c2: -x * y - a + y + 1,
                    c0: -a * a * x + a * x * y + a * a + 2 * x * a - a * y - x * y - 2 * a - x
                        + y
                        + 1,
                }
            }
            Family::StarOnY => {
                let a = t;
                EvenQuartic {
                    c2: -x * y - a + x + 1,
                    c0: -a * a * y + a * x * y + a * a - x * a + 2 * a * y - x * y - 2 * a + x
                        - y
                        + 1,
                }
            }
            Family::Biclique => {
                let s = t;
                EvenQuartic {
                    c2: -s * s + s * y - x * y,
                    c0: s.pow(4) - s.pow(3) * x - s.pow(3) * y + s * s * x * y,
                }
            }
        }
    }

    /// `ρ` of the member graph via the closed form.
    pub fn spectral_radius(&self) -> Result<f64> {
        largest_root(self.char_poly())
    }
}

/// `λ⁴ + c2·λ² + c0` with exact integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EvenQuartic {
    pub c2: i128,
    pub c0: i128,
}

impl EvenQuartic {
    pub fn discriminant(&self) -> i128 {
        self.c2 * self.c2 - 4 * self.c0
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        let l2 = lambda * lambda;
        l2 * l2 + self.c2 as f64 * l2 + self.c0 as f64
    }
}

fn isqrt_exact(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    let mut r = (v as f64).sqrt() as i128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    (r * r == v).then_some(r)
}

/// Largest real root `√((−c2 + √(c2² − 4c0)) / 2)`.
///
/// The discriminant is formed in integers; a perfect-square discriminant is
/// resolved exactly before the final square root.
pub fn largest_root(p: EvenQuartic) -> Result<f64> {
    let disc = p.discriminant();
    if disc < 0 {
        return Err(Error::NegativeDiscriminant(disc));
    }
    let lambda_sq = match isqrt_exact(disc) {
        Some(r) => (-p.c2 + r) as f64 / 2.0,
        None => (-(p.c2 as f64) + (disc as f64).sqrt()) / 2.0,
    };
    if lambda_sq < 0.0 {
        return Err(Error::Precondition(format!(
            "quartic {p:?} has no real root (largest λ² = {lambda_sq})"
        )));
    }
    Ok(lambda_sq.sqrt())
}

/// Exact order of the largest roots of two even quartics.
///
/// Compares `−c2 + √disc` by deciding the sign of `A + √B − √C` in integer
/// arithmetic. Errors on a negative discriminant or on i128 overflow.
pub fn compare_largest_roots(p: EvenQuartic, q: EvenQuartic) -> Result<Ordering> {
    let (b, c) = (p.discriminant(), q.discriminant());
    for d in [b, c] {
        if d < 0 {
            return Err(Error::NegativeDiscriminant(d));
        }
    }
    let a = q.c2 - p.c2;
    let surd = b.cmp(&c);
    let lead = a.cmp(&0);
    if lead == Ordering::Equal {
        return Ok(surd);
    }
    if surd == Ordering::Equal || surd == lead {
        return Ok(lead);
    }
    // signs differ: compare A² with (√B − √C)² = B + C − 2√(BC)
    let overflow = || Error::SizeCap {
        op: "compare_largest_roots",
        limit: "discriminants below 2^60".into(),
    };
    let a2 = a.checked_mul(a).ok_or_else(overflow)?;
    let r = b.checked_add(c).and_then(|v| v.checked_sub(a2)).ok_or_else(overflow)?;
    let four_bc = b.checked_mul(c).and_then(|v| v.checked_mul(4)).ok_or_else(overflow)?;
    let a_wins = if r < 0 {
        Ordering::Greater
    } else {
        four_bc.cmp(&r.checked_mul(r).ok_or_else(overflow)?)
    };
    Ok(match a_wins {
        Ordering::Greater => lead,
        Ordering::Less => surd,
        Ordering::Equal => Ordering::Equal,
    })
}

fn ser_rational_rows<S: Serializer>(rows: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let as_text: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect())
        .collect();
    as_text.serialize(s)
}

/// Block-average row-sum matrix of a vertex partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientMatrix {
    #[serde(serialize_with = "ser_rational_rows")]
    pub entries: Vec<Vec<Rational>>,
    pub part_sizes: Vec<usize>,
    pub equitable: bool,
}

impl QuotientMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Coefficients of `det(λI − M)`, lowest degree first, expanded through
    /// sums of principal minors.
    pub fn characteristic_polynomial(&self) -> Vec<Rational> {
        let k = self.size();
        let mut e = vec![Rational::from_integer(0); k + 1];
        e[0] = Rational::from_integer(1);
        for mask in 1u32..(1 << k) {
            let idx: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            let minor: Vec<Vec<Rational>> = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.entries[i][j]).collect())
                .collect();
            e[idx.len()] += determinant(minor);
        }
        // det(λI − M) = Σ_j (−1)^j E_j λ^{k−j}
        let mut coeffs = vec![Rational::from_integer(0); k + 1];
        for (j, ej) in e.into_iter().enumerate() {
            coeffs[k - j] = if j % 2 == 0 { ej } else { -ej };
        }
        coeffs
    }

    /// The expanded characteristic polynomial as an [`EvenQuartic`], when it
    /// is one (4×4, integer coefficients, vanishing odd terms).
    pub fn even_quartic(&self) -> Option<EvenQuartic> {
        if self.size() != 4 {
            return None;
        }
        let c = self.characteristic_polynomial();
        let zero = Rational::from_integer(0);
        if c[1] != zero || c[3] != zero || !c[0].is_integer() || !c[2].is_integer() {
            return None;
        }
        Some(EvenQuartic {
            c2: c[2].to_integer(),
            c0: c[0].to_integer(),
        })
    }
}

fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let zero = Rational::from_integer(0);
    let mut det = Rational::from_integer(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r][col] != zero) else {
            return zero;
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let factor = a[r][col] / p;
            if factor != zero {
                for c in col..n {
                    let v = a[col][c];
                    a[r][c] -= factor * v;
                }
            }
        }
    }
    det
}

/// Quotient of the adjacency matrix with respect to `blocks` (global vertex
/// indices). Each entry is the average row sum of the corresponding block;
/// `equitable` records whether every row sum equals that average exactly.
pub fn quotient_of_partition(g: &BipartiteGraph, blocks: &[Vec<usize>]) -> Result<QuotientMatrix> {
    let total = g.vertex_count();
    let mut owner = vec![usize::MAX; total];
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::InvalidPartition(format!("block {b} is empty")));
        }
        for &v in block {
            if v >= total {
                return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
            }
            if owner[v] != usize::MAX {
                return Err(Error::InvalidPartition(format!(
                    "vertex {v} appears in blocks {} and {b}",
                    owner[v]
                )));
            }
            owner[v] = b;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
    }
    let k = blocks.len();
    let mut entries = vec![vec![Rational::from_integer(0); k]; k];
    let mut equitable = true;
    for (i, block) in blocks.iter().enumerate() {
        let mut sums = vec![vec![0i128; k]; block.len()];
        for (r, &v) in block.iter().enumerate() {
            let neighbours: Vec<usize> = if v < g.m() {
                g.x_neighbors(v).iter().map(|y| g.m() + y).collect()
            } else {
                g.y_neighbors(v - g.m()).iter().collect()
            };
            for w in neighbours {
                sums[r][owner[w]] += 1;
            }
        }
        for j in 0..k {
            let total: i128 = sums.iter().map(|s| s[j]).sum();
            entries[i][j] = Rational::new(total, block.len() as i128);
            if sums.iter().any(|s| s[j] != sums[0][j]) {
                equitable = false;
            }
        }
    }
    Ok(QuotientMatrix {
        entries,
        part_sizes: blocks.iter().map(Vec::len).collect(),
        equitable,
    })
}
