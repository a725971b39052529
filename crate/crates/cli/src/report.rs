//! JSON reports for decompositions.
//!
//! A report stores both sides of the checked identity as exact strings, so a
//! report can be re-read and re-verified independently of the input file.

use serde::{Deserialize, Serialize};

use gramcal_core::exact::parse_rational;
use gramcal_core::verify::{format_signs, Verdict};
use gramcal_core::{AffineForm, FormalSum, Indicator, Poly, Rational};

use crate::error::{input, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfspaceJson {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BodyJson {
    pub halfspaces: Vec<HalfspaceJson>,
    pub facet_weights: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub halfspaces: Vec<HalfspaceJson>,
    pub facet_weights: Vec<String>,
    /// Active facet set of the face this term comes from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face_dim: Option<usize>,
    /// `"g"` or `"vertex"` in Brion mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flips: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub point: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationJson {
    /// `"cells"` (exact) or `"sampling"` (heuristic).
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// `"equal"`, `"consistent"` or `"unequal"`.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub verification: VerificationJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub mode: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<String>>,
    /// The weighted polytope; the identity is `sum(terms) = 1^w_target`.
    pub target: BodyJson,
    pub terms: Vec<TermJson>,
    pub verification: VerificationJson,
    /// Auxiliary identities checked along the way.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckJson>,
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn halfspace_json(h: &AffineForm) -> HalfspaceJson {
    HalfspaceJson {
        normal: strings(&h.normal),
        offset: h.offset.to_string(),
    }
}

pub fn body_json(body: &Indicator) -> BodyJson {
    BodyJson {
        halfspaces: body.halfspaces.iter().map(halfspace_json).collect(),
        facet_weights: body.weights.iter().map(|w| w.to_string()).collect(),
    }
}

pub fn term_json(coeff: &Poly, body: &Indicator) -> TermJson {
    let b = body_json(body);
    TermJson {
        coeff: coeff.to_string(),
        halfspaces: b.halfspaces,
        facet_weights: b.facet_weights,
        ..Default::default()
    }
}

pub fn verification_json(v: &Verdict) -> VerificationJson {
    match v {
        Verdict::Equal { cells } => VerificationJson {
            mode: "cells".into(),
            cells: Some(*cells),
            trials: None,
            verdict: "equal".into(),
            witness: None,
        },
        Verdict::Consistent { trials } => VerificationJson {
            mode: "sampling".into(),
            cells: None,
            trials: Some(*trials),
            verdict: "consistent".into(),
            witness: None,
        },
        Verdict::Unequal(c) => VerificationJson {
            mode: if c.signs.is_some() { "cells" } else { "sampling" }.into(),
            cells: None,
            trials: None,
            verdict: "unequal".into(),
            witness: Some(WitnessJson {
                point: strings(&c.point),
                signs: c.signs.as_deref().map(format_signs),
                lhs: c.lhs.to_string(),
                rhs: c.rhs.to_string(),
            }),
        },
    }
}

impl VerificationJson {
    pub fn is_equal(&self) -> bool {
        self.verdict == "equal"
    }
}

fn rational(s: &str) -> Result<Rational> {
    Ok(parse_rational(s)?)
}

fn body_from_json(dim: usize, halfspaces: &[HalfspaceJson], weights: &[String]) -> Result<Indicator> {
    if halfspaces.len() != weights.len() {
        return Err(input(format!(
            "{} halfspaces but {} facet weights",
            halfspaces.len(),
            weights.len()
        )));
    }
    let forms = halfspaces
        .iter()
        .map(|h| {
            if h.normal.len() != dim {
                return Err(input(format!(
                    "normal of length {} in dimension {dim}",
                    h.normal.len()
                )));
            }
            let normal = h.normal.iter().map(|c| rational(c)).collect::<Result<Vec<_>>>()?;
            Ok(AffineForm::new(normal, rational(&h.offset)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let weights = weights
        .iter()
        .map(|w| Ok(w.parse::<Poly>()?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Indicator::new(dim, forms, weights)?)
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(src: &str) -> Result<Report> {
        Ok(serde_json::from_str(src)?)
    }

    /// Both sides of the reported identity: the term sum and `1^w_target`.
    pub fn sums(&self) -> Result<(FormalSum, FormalSum)> {
        if self.dim == 0 {
            return Err(input("report dimension must be at least 1"));
        }
        let mut lhs = FormalSum::new(self.dim);
        for t in &self.terms {
            let coeff: Poly = t.coeff.parse()?;
            lhs.push(coeff, body_from_json(self.dim, &t.halfspaces, &t.facet_weights)?)?;
        }
        let target = body_from_json(self.dim, &self.target.halfspaces, &self.target.facet_weights)?;
        Ok((lhs, FormalSum::single(Poly::one(), target)))
    }

    /// True iff the main verdict and every auxiliary verdict are `equal`.
    pub fn all_equal(&self) -> bool {
        self.verification.is_equal() && self.checks.iter().all(|c| c.verification.is_equal())
    }

    pub fn summary(&self) -> String {
        let v = &self.verification;
        let mut s = format!("{}: {} terms, verdict {}", self.mode, self.terms.len(), v.verdict);
        if let Some(c) = v.cells {
            s += &format!(" on {c} cells");
        }
        if let Some(t) = v.trials {
            s += &format!(" over {t} sampling trials");
        }
        if let Some(w) = &v.witness {
            s += &format!(" at ({}): lhs = {}, rhs = {}", w.point.join(", "), w.lhs, w.rhs);
        }
        for c in &self.checks {
            s += &format!("\n  {}: {}", c.name, c.verification.verdict);
        }
        s
    }
}

pub(crate) fn point_strings(x: &[Rational]) -> Vec<String> {
    strings(x)
}
