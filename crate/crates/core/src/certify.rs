//! Theorem certificates: hypotheses, spectral comparison, extremal check and
//! construction of the guaranteed structure.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::{find_biregular_factor, FactorOutcome};
use crate::graph::{find_isomorphism, make_extremal, BipartiteGraph, IsoKind};
use crate::packing::{pack_spanning_trees, tree_packing_number, TreePacking};
use crate::spectral::{spectral_radius, SpectralEstimate, DEFAULT_TOL};
use crate::theorems::{Hypothesis, Theorem, TheoremParams};
use crate::trees::{find_degree_tree, leaves_in_y, DegreeDemand, TreeWitness};

/// Default tolerance for comparing `ρ(G)` with a threshold.
pub const DEFAULT_CERTIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    HypothesisFail,
    SpectralBelow,
    ExtremalException,
    GuaranteedAndConstructed,
    Contradiction,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::HypothesisFail => "HYPOTHESIS_FAIL",
            Verdict::SpectralBelow => "SPECTRAL_BELOW",
            Verdict::ExtremalException => "EXTREMAL_EXCEPTION",
            Verdict::GuaranteedAndConstructed => "GUARANTEED_AND_CONSTRUCTED",
            Verdict::Contradiction => "CONTRADICTION",
        }
    }
}

/// The structure a theorem asks for, or the evidence that it is absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "structure", rename_all = "snake_case")]
pub enum SpanningStructure {
    Factor { outcome: FactorOutcome },
    Tree { outcome: TreeWitness },
    /// `packing` holds `min(required, τ)` trees.
    Packing {
        required: usize,
        tau: usize,
        packing: TreePacking,
    },
}

impl SpanningStructure {
    /// Whether the requested structure was found.
    pub fn is_constructed(&self) -> bool {
        match self {
            SpanningStructure::Factor { outcome } => outcome.factor().is_some(),
            SpanningStructure::Tree { outcome } => outcome.tree().is_some(),
            SpanningStructure::Packing { required, tau, .. } => tau >= required,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub theorem: Theorem,
    pub params: TheoremParams,
    pub hypotheses: Vec<Hypothesis>,
    pub rho: SpectralEstimate,
    pub threshold: Option<f64>,
    pub margin: Option<f64>,
    pub tol: f64,
    pub verdict: Verdict,
    pub extremal: bool,
    pub isomorphism: Option<IsoKind>,
    pub constructed: Option<bool>,
    pub witness: Option<SpanningStructure>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }

    /// A few lines for humans; the JSON form is authoritative.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "theorem    {}", self.theorem);
        for h in &self.hypotheses {
            let _ = writeln!(s, "  [{}] {}", if h.pass { "ok" } else { "FAIL" }, h.name);
        }
        let _ = writeln!(s, "rho        {:.12}", self.rho.value);
        if let (Some(t), Some(m)) = (self.threshold, self.margin) {
            let _ = writeln!(s, "threshold  {t:.12}");
            let _ = writeln!(s, "margin     {m:+.3e}");
        }
        if self.extremal {
            let _ = writeln!(s, "extremal   yes");
        }
        if let Some(c) = self.constructed {
            let _ = writeln!(s, "structure  {}", if c { "found" } else { "absent" });
        }
        let _ = write!(s, "verdict    {}", self.verdict.as_str());
        s
    }
}

/// Completes `params` from the graph: part sizes always, and for t3 the
/// minimum degree.
pub fn resolve_params(
    g: &BipartiteGraph,
    theorem: Theorem,
    params: &TheoremParams,
) -> Result<TheoremParams> {
    let mut p = params.with_parts(g.m(), g.n())?;
    if theorem == Theorem::T3 {
        let delta = g.min_degree();
        match p.delta {
            Some(d) if d != delta => {
                return Err(Error::ParamMismatch(format!(
                    "delta = {d} given but the graph has minimum degree {delta}"
                )))
            }
            _ => p.delta = Some(delta),
        }
    }
    Ok(p)
}

/// Attempts the structure named by `theorem` on `g` (connected assumed).
pub fn construct(g: &BipartiteGraph, theorem: Theorem, p: &TheoremParams) -> Result<SpanningStructure> {
    let missing = |name: &str| Error::ParamMismatch(format!("{theorem} needs parameter {name}"));
    Ok(match theorem {
        Theorem::T1 => {
            let a = p.a.ok_or_else(|| missing("a"))?;
            let b = p.b.ok_or_else(|| missing("b"))?;
            SpanningStructure::Factor {
                outcome: find_biregular_factor(g, a, b)?,
            }
        }
        Theorem::T2 => {
            let k = p.k.ok_or_else(|| missing("k"))?;
            SpanningStructure::Tree {
                outcome: find_degree_tree(g, &DegreeDemand::constant(g.m(), k)?)?,
            }
        }
        Theorem::T3 => SpanningStructure::Tree {
            outcome: leaves_in_y(g)?,
        },
        Theorem::T4 => {
            let k = p.k.ok_or_else(|| missing("k"))?;
            match pack_spanning_trees(g, k) {
                Some(packing) => SpanningStructure::Packing {
                    required: k,
                    tau: k,
                    packing,
                },
                None => {
                    let (tau, packing) = tree_packing_number(g);
                    SpanningStructure::Packing {
                        required: k,
                        tau,
                        packing,
                    }
                }
            }
        }
    })
}

/// Certifies `theorem` on `g`. `tol` is the margin within which `ρ(G)`
/// counts as reaching the threshold; graphs there are first compared with
/// the extremal graph.
pub fn certify(
    g: &BipartiteGraph,
    theorem: Theorem,
    params: &TheoremParams,
    tol: f64,
) -> Result<Certificate> {
    if !(tol >= 0.0) {
        return Err(Error::Precondition(format!("tolerance {tol} must be non-negative")));
    }
    let p = resolve_params(g, theorem, params)?;
    let mut hypotheses = theorem.parameter_hypotheses(&p)?;
    let connected = g.is_connected();
    hypotheses.push(Hypothesis::new("connected", connected));
    let rho = spectral_radius(g, DEFAULT_TOL)?;
    let mut cert = Certificate {
        theorem,
        params: p,
        hypotheses,
        rho,
        threshold: None,
        margin: None,
        tol,
        verdict: Verdict::HypothesisFail,
        extremal: false,
        isomorphism: None,
        constructed: None,
        witness: None,
    };
    if !cert.hypotheses.iter().all(|h| h.pass) {
        return Ok(cert);
    }

    let member = theorem.extremal_member(&p)?;
    let threshold = member.spectral_radius()?;
    let margin = rho.value - threshold;
    cert.threshold = Some(threshold);
    cert.margin = Some(margin);

    let witness = construct(g, theorem, &p)?;
    let constructed = witness.is_constructed();
    cert.constructed = Some(constructed);
    cert.witness = Some(witness);

    cert.verdict = if margin < -tol {
        Verdict::SpectralBelow
    } else {
        let extremal = make_extremal(member.extremal_spec())?;
        cert.isomorphism = find_isomorphism(g, &extremal).map(|iso| iso.kind);
        cert.extremal = cert.isomorphism.is_some();
        if cert.extremal {
            Verdict::ExtremalException
        } else if constructed {
            Verdict::GuaranteedAndConstructed
        } else {
            Verdict::Contradiction
        }
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, ExtremalSpec};

    #[test]
    fn complete_k42_gets_a_factor() {
        let g = make_complete(4, 2).unwrap();
        let p = TheoremParams {
            a: Some(1),
            b: Some(2),
            ..Default::default()
        };
        let c = certify(&g, Theorem::T1, &p, DEFAULT_CERTIFY_TOL).unwrap();
        assert_eq!(c.verdict, Verdict::GuaranteedAndConstructed);
        assert!((c.rho.value - 8f64.sqrt()).abs() < 1e-9);
        assert!((c.threshold.unwrap() - 6f64.sqrt()).abs() < 1e-14);
        match c.witness.unwrap() {
            SpanningStructure::Factor { outcome } => assert!(outcome.factor().unwrap().verify(&g)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn t4_extremal_exception() {
        let g = make_extremal(ExtremalSpec::new(6, 6, 1, 5).unwrap()).unwrap();
        let p = TheoremParams {
            k: Some(2),
            ..Default::default()
        };
        let c = certify(&g, Theorem::T4, &p, DEFAULT_CERTIFY_TOL).unwrap();
        assert_eq!(c.verdict, Verdict::ExtremalException);
        assert!((c.threshold.unwrap() - 5.492849).abs() < 1e-6);
        assert!(c.margin.unwrap().abs() < 1e-9);
        assert_eq!(c.constructed, Some(false));
        match c.witness.unwrap() {
            SpanningStructure::Packing { tau, .. } => assert_eq!(tau, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn t3_on_short_path_fails_hypotheses() {
        let g = BipartiteGraph::from_edges(2, 1, [(0, 0), (1, 0)]).unwrap();
        let c = certify(&g, Theorem::T3, &TheoremParams::default(), DEFAULT_CERTIFY_TOL).unwrap();
        assert_eq!(c.verdict, Verdict::HypothesisFail);
        assert!(c.threshold.is_none());
    }

    #[test]
    fn t3_delta_mismatch_is_an_error() {
        let g = make_complete(3, 4).unwrap();
        let p = TheoremParams {
            delta: Some(2),
            ..Default::default()
        };
        assert!(matches!(
            certify(&g, Theorem::T3, &p, DEFAULT_CERTIFY_TOL),
            Err(Error::ParamMismatch(_))
        ));
    }

    #[test]
    fn json_is_deterministic() {
        let g = make_complete(3, 4).unwrap();
        let a = certify(&g, Theorem::T3, &TheoremParams::default(), 1e-9).unwrap();
        let b = certify(&g, Theorem::T3, &TheoremParams::default(), 1e-9).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let v: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(v["verdict"], "GUARANTEED_AND_CONSTRUCTED");
        assert_eq!(v["theorem"], "t3");
    }
}
