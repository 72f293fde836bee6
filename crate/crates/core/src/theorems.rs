//! The four spectral existence statements: parameter hypotheses, extremal
//! graphs and closed-form thresholds.
//!
//! | id | structure guaranteed                         | extremal graph                 |
//! |----|----------------------------------------------|--------------------------------|
//! | t1 | `(a,b)`-biregular factor                     | `K_{m,n} \ E(K_{1,n−a+1})`     |
//! | t2 | spanning tree with `d_T(u) ≥ k` on X         | `K_{m,n} \ E(K_{1,n−k+1})`     |
//! | t3 | spanning tree with every leaf in Y           | `K_{m,n} \ E(K_{δ,n−δ})`       |
//! | t4 | `k` edge-disjoint spanning trees (`n = m`)   | `K_{n,n} \ E(K_{1,n−k+1})`     |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::FamilyMember;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    T1,
    T2,
    T3,
    T4,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4];

    pub fn id(&self) -> &'static str {
        match self {
            Theorem::T1 => "t1",
            Theorem::T2 => "t2",
            Theorem::T3 => "t3",
            Theorem::T4 => "t4",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t1" => Ok(Theorem::T1),
            "t2" => Ok(Theorem::T2),
            "t3" => Ok(Theorem::T3),
            "t4" => Ok(Theorem::T4),
            _ => Err(Error::UnknownTheorem(s.to_string())),
        }
    }
}

/// Numeric parameters. Which ones a theorem reads:
/// t1 `a, b, m, n`; t2 `k, m, n`; t3 `m, n, delta`; t4 `k, n`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
}

/// One named condition and whether it holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub pass: bool,
}

impl Hypothesis {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Hypothesis {
            name: name.into(),
            pass,
        }
    }
}

fn need(v: Option<usize>, name: &str, theorem: Theorem) -> Result<usize> {
    v.ok_or_else(|| Error::ParamMismatch(format!("{theorem} needs parameter {name}")))
}

impl TheoremParams {
    /// Fills `m` (and `n`) from graph part sizes, rejecting conflicting values.
    pub fn with_parts(mut self, m: usize, n: usize) -> Result<Self> {
        for (name, slot, actual) in [("m", &mut self.m, m), ("n", &mut self.n, n)] {
            match *slot {
                Some(v) if v != actual => {
                    return Err(Error::ParamMismatch(format!(
                        "{name} = {v} given but the graph has {name} = {actual}"
                    )))
                }
                _ => *slot = Some(actual),
            }
        }
        Ok(self)
    }
}

impl Theorem {
    /// Conditions on the numeric parameters alone (graph-level conditions
    /// such as connectivity are added by the certifier).
    pub fn parameter_hypotheses(&self, p: &TheoremParams) -> Result<Vec<Hypothesis>> {
        let t = *self;
        Ok(match t {
            Theorem::T1 => {
                let (a, b) = (need(p.a, "a", t)?, need(p.b, "b", t)?);
                let (m, n) = (need(p.m, "m", t)?, need(p.n, "n", t)?);
                vec![
                    Hypothesis::new("a >= 1", a >= 1),
                    Hypothesis::new("b > a", b > a),
                    Hypothesis::new("a*m = b*n", a * m == b * n),
                    Hypothesis::new("m >= n + b", m >= n + b),
                ]
            }
            Theorem::T2 => {
                let k = need(p.k, "k", t)?;
                let (m, n) = (need(p.m, "m", t)?, need(p.n, "n", t)?);
                vec![
                    Hypothesis::new("k >= 3", k >= 3),
                    Hypothesis::new("n > (k-1)*m", n > k.saturating_sub(1) * m),
                    Hypothesis::new("m >= k + 1", m > k),
                ]
            }
            Theorem::T3 => {
                let (m, n) = (need(p.m, "m", t)?, need(p.n, "n", t)?);
                let delta = need(p.delta, "delta", t)?;
                vec![
                    Hypothesis::new("n > m >= 3", n > m && m >= 3),
                    Hypothesis::new("1 <= delta <= m", (1..=m).contains(&delta)),
                ]
            }
            Theorem::T4 => {
                let (k, n) = (need(p.k, "k", t)?, need(p.n, "n", t)?);
                let mut hs = vec![
                    Hypothesis::new("k >= 1", k >= 1),
                    Hypothesis::new("n >= 2k + 2", n >= 2 * k + 2),
                ];
                if let Some(m) = p.m {
                    hs.push(Hypothesis::new("balanced (m = n)", m == n));
                }
                hs
            }
        })
    }

    /// The extremal family member whose spectral radius is the threshold.
    pub fn extremal_member(&self, p: &TheoremParams) -> Result<FamilyMember> {
        let t = *self;
        match t {
            Theorem::T1 => {
                FamilyMember::star_on_x(need(p.m, "m", t)?, need(p.n, "n", t)?, need(p.a, "a", t)?)
            }
            Theorem::T2 => {
                FamilyMember::star_on_x(need(p.m, "m", t)?, need(p.n, "n", t)?, need(p.k, "k", t)?)
            }
            Theorem::T3 => FamilyMember::biclique(
                need(p.m, "m", t)?,
                need(p.n, "n", t)?,
                need(p.delta, "delta", t)?,
            ),
            Theorem::T4 => {
                let n = need(p.n, "n", t)?;
                FamilyMember::star_on_x(n, n, need(p.k, "k", t)?)
            }
        }
    }
}

/// Closed-form spectral threshold of a theorem; every parameter hypothesis
/// must hold.
pub fn threshold(theorem: Theorem, params: &TheoremParams) -> Result<f64> {
    let failed: Vec<String> = theorem
        .parameter_hypotheses(params)?
        .into_iter()
        .filter(|h| !h.pass)
        .map(|h| h.name)
        .collect();
    if !failed.is_empty() {
        return Err(Error::Precondition(format!(
            "{theorem} hypotheses fail: {}",
            failed.join(", ")
        )));
    }
    theorem.extremal_member(params)?.spectral_radius()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> TheoremParams {
        TheoremParams::default()
    }

    #[test]
    fn thresholds_match_closed_forms() {
        let t4 = threshold(
            Theorem::T4,
            &TheoremParams {
                k: Some(2),
                n: Some(6),
                ..params()
            },
        )
        .unwrap();
        assert!((t4 - 5.492849).abs() < 1e-6);

        let t3 = threshold(
            Theorem::T3,
            &TheoremParams {
                m: Some(3),
                n: Some(4),
                delta: Some(1),
                ..params()
            },
        )
        .unwrap();
        assert!((t3 - ((9.0 + 57f64.sqrt()) / 2.0).sqrt()).abs() < 1e-14);

        let t1 = threshold(
            Theorem::T1,
            &TheoremParams {
                a: Some(1),
                b: Some(2),
                m: Some(4),
                n: Some(2),
                ..params()
            },
        )
        .unwrap();
        assert!((t1 - 6f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn hypothesis_violations_are_errors() {
        let bad_t1 = TheoremParams {
            a: Some(1),
            b: Some(2),
            m: Some(4),
            n: Some(3),
            ..params()
        };
        assert!(matches!(threshold(Theorem::T1, &bad_t1), Err(Error::Precondition(_))));
        let bad_t4 = TheoremParams {
            k: Some(3),
            n: Some(6),
            ..params()
        };
        assert!(threshold(Theorem::T4, &bad_t4).is_err());
        assert!(matches!(
            threshold(Theorem::T2, &params()),
            Err(Error::ParamMismatch(_))
        ));
    }

    #[test]
    fn theorem_ids() {
        for t in Theorem::ALL {
            assert_eq!(t.id().parse::<Theorem>().unwrap(), t);
        }
        assert_eq!("T3".parse::<Theorem>().unwrap(), Theorem::T3);
        assert!(matches!("t5".parse::<Theorem>(), Err(Error::UnknownTheorem(_))));
    }

    #[test]
    fn parts_conflict() {
        let p = TheoremParams {
            m: Some(4),
            ..params()
        };
        assert!(p.with_parts(4, 2).is_ok());
        assert!(p.with_parts(5, 2).is_err());
    }
}
