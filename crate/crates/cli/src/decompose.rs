//! Builds the term list of each decomposition mode and verifies it.

use std::fmt;

use clap::ValueEnum;

use gramcal_core::decomp::{
    brianchon_gram_from_lattice, chop_nonsimple, face_body, is_polarizing, nonsimple_bg_witness,
    polar_decompose, polar_groups, sample_polarizing,
};
use gramcal_core::exact::Rational;
use gramcal_core::polyhedra::{classify_genericity, Genericity};
use gramcal_core::verify::{identity_check_with, CheckOptions};
use gramcal_core::{Error, FormalSum, Poly, WeightedPolyhedron};

use crate::error::{input, Result};
use crate::report::{body_json, point_strings, term_json, verification_json, CheckJson, Report, TermJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Weighted Brianchon-Gram: one tangent cone per face.
    Bg,
    /// Unweighted faces with coefficients prod (q_i - 1).
    Faces,
    /// Brianchon-Gram split into line-containing cones and vertex cones.
    Brion,
    /// One flipped vertex cone per vertex for a polarizing covector.
    Polar,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Bg => "bg",
            Mode::Faces => "faces",
            Mode::Brion => "brion",
            Mode::Polar => "polar",
        })
    }
}

/// Extra per-term information carried into reports.
#[derive(Clone, Debug, Default)]
pub struct TermInfo {
    pub face: Option<(Vec<usize>, usize)>,
    pub part: Option<&'static str>,
    pub vertex: Option<Vec<Rational>>,
    pub flips: Option<usize>,
}

/// An auxiliary identity `lhs = rhs` checked alongside the main one.
#[derive(Clone, Debug)]
pub struct SideCheck {
    pub name: String,
    pub lhs: FormalSum,
    pub rhs: FormalSum,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub mode: Mode,
    pub wp: WeightedPolyhedron,
    pub sum: FormalSum,
    pub info: Vec<TermInfo>,
    pub xi: Option<Vec<Rational>>,
    pub side_checks: Vec<SideCheck>,
}

impl Decomposition {
    pub fn target(&self) -> FormalSum {
        FormalSum::from(&self.wp)
    }
}

pub fn decompose(wp: &WeightedPolyhedron, mode: Mode, xi: Option<Vec<Rational>>) -> Result<Decomposition> {
    let p = &wp.polyhedron;
    if !p.is_bounded()? {
        return Err(Error::Unbounded.into());
    }
    let lattice = p.face_lattice()?;
    let class = classify_genericity(&lattice).class;
    let face_info = |i: usize| TermInfo {
        face: Some((
            lattice.faces[i].active.iter().copied().collect(),
            lattice.faces[i].dim,
        )),
        ..Default::default()
    };
    let mut out = Decomposition {
        mode,
        wp: wp.clone(),
        sum: FormalSum::new(wp.dim()),
        info: Vec::new(),
        xi: None,
        side_checks: Vec::new(),
    };
    match mode {
        Mode::Bg => {
            out.sum = brianchon_gram_from_lattice(wp, &lattice)?;
            out.info = (0..lattice.len()).map(face_info).collect();
            if class == Genericity::NonsimpleVerticesOnly {
                let chop = chop_nonsimple(wp)?;
                let w = nonsimple_bg_witness(wp, &chop)?;
                let target = out.target();
                let chopped_target = FormalSum::from(&chop.chopped);
                let difference = w.bg_chopped.minus(&w.f_p)?;
                let neg_correction = w.correction.negated();
                let checks = [
                    (
                        "chopped-brianchon-gram",
                        w.bg_chopped.clone(),
                        chopped_target.clone(),
                    ),
                    ("key-difference", difference.clone(), w.key_difference),
                    ("key-difference-correction", difference, neg_correction.clone()),
                    (
                        "truncation-difference",
                        chopped_target.minus(&target)?,
                        neg_correction,
                    ),
                ];
                out.side_checks = checks
                    .into_iter()
                    .map(|(name, lhs, rhs)| SideCheck {
                        name: name.into(),
                        lhs,
                        rhs,
                    })
                    .collect();
            }
        }
        Mode::Faces => {
            if class != Genericity::Simple {
                return Err(Error::NotSimple.into());
            }
            for (i, face) in lattice.faces.iter().enumerate() {
                let coeff: Poly = face
                    .active
                    .iter()
                    .map(|&j| wp.weights.get(j) - &Poly::one())
                    .product();
                out.sum.push(coeff, face_body(p, face))?;
                out.info.push(face_info(i));
            }
        }
        Mode::Brion => {
            let bg = brianchon_gram_from_lattice(wp, &lattice)?;
            let mut vertex_terms = Vec::new();
            for (i, t) in bg.terms().iter().enumerate() {
                let pointed = t.body.lineality_dim() == 0;
                let mut info = face_info(i);
                info.part = Some(if pointed { "vertex" } else { "g" });
                if pointed {
                    vertex_terms.push((t.clone(), info));
                } else {
                    out.sum.push(t.coeff.clone(), t.body.clone())?;
                    out.info.push(info);
                }
            }
            for (t, info) in vertex_terms {
                out.sum.push(t.coeff, t.body)?;
                out.info.push(info);
            }
        }
        Mode::Polar => {
            if !wp.weights.is_uniform() {
                return Err(input("polar mode needs the same weight on every facet"));
            }
            if class != Genericity::Simple {
                return Err(Error::NotSimple.into());
            }
            let xi = match xi {
                Some(xi) => {
                    if xi.len() != wp.dim() {
                        return Err(Error::DimensionMismatch {
                            expected: wp.dim(),
                            found: xi.len(),
                        }
                        .into());
                    }
                    if !is_polarizing(&lattice, &xi) {
                        return Err(input(format!(
                            "covector ({}) is constant on an edge; choose another --xi or omit it",
                            point_strings(&xi).join(", ")
                        )));
                    }
                    xi
                }
                None => sample_polarizing(&lattice),
            };
            let cones = polar_decompose(wp, &xi)?;
            let groups = polar_groups(wp, &xi)?;
            for (cone, group) in cones.iter().zip(groups) {
                out.sum.extend(cone.signed_sum())?;
                out.info.push(TermInfo {
                    vertex: Some(cone.vertex.clone()),
                    flips: Some(cone.flip_count),
                    ..Default::default()
                });
                out.side_checks.push(SideCheck {
                    name: format!("group at ({})", point_strings(&group.vertex).join(", ")),
                    lhs: cone.signed_sum(),
                    rhs: group.sum,
                });
            }
            out.xi = Some(xi);
        }
    }
    Ok(out)
}

/// Verifies the decomposition against `1^w_P` plus all side checks.
pub fn verify(d: &Decomposition, opts: &CheckOptions) -> Result<Report> {
    let target = d.target();
    let verdict = identity_check_with(&d.sum, &target, opts)?;
    let checks = d
        .side_checks
        .iter()
        .map(|c| {
            Ok(CheckJson {
                name: c.name.clone(),
                verification: verification_json(&identity_check_with(&c.lhs, &c.rhs, opts)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let terms = d
        .sum
        .terms()
        .iter()
        .zip(&d.info)
        .map(|(t, info)| TermJson {
            face: info.face.as_ref().map(|f| f.0.clone()),
            face_dim: info.face.as_ref().map(|f| f.1),
            part: info.part.map(String::from),
            vertex: info.vertex.as_deref().map(point_strings),
            flips: info.flips,
            ..term_json(&t.coeff, &t.body)
        })
        .collect();
    Ok(Report {
        mode: d.mode.to_string(),
        dim: d.wp.dim(),
        xi: d.xi.as_deref().map(point_strings),
        target: body_json(&d.wp.indicator()),
        terms,
        verification: verification_json(&verdict),
        checks,
    })
}
