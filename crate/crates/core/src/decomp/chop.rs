//! Truncation of non-simple vertices.
//!
//! Each non-simple vertex `v` is cut off by `H_v = {eta_v(x) >= c_v}` where
//! `eta_v` is the sum of the normals of the facets through `v` (uniquely
//! minimized over `P` at `v`) and `c_v` lies halfway between `eta_v(v)` and
//! the next vertex value. The cut facets are weighted `1`. The resulting
//! simple polytope `P_s` satisfies the weighted Brianchon-Gram identity, and
//! the bookkeeping below transfers it back to `P`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{dot, format_point, rat, AffineForm, Poly, Rational};
use crate::indicators::{FormalSum, Indicator, WeightAssignment, WeightedPolyhedron};
use crate::polyhedra::{classify_genericity, Genericity, TangentCone, Vertex};
use crate::verify::{identity_check_with, CheckOptions, Verdict};
use crate::{Error, HPolyhedron, Result};

use super::{brianchon_gram, brianchon_gram_from_lattice, dim_sign, polytope_lattice};

/// Rounds of halving the cut distance before the functional is perturbed.
const HALVING_ROUNDS: u32 = 8;
const PERTURBATION_ROUNDS: u32 = 8;

#[derive(Clone, Debug)]
pub struct Cut {
    pub vertex: Vertex,
    /// Linear functional `eta_v`.
    pub functional: Vec<Rational>,
    pub threshold: Rational,
    pub epsilon: Rational,
    /// `eta_v(x) - c_v >= 0`, the halfspace `H_v`.
    pub halfspace: AffineForm,
    /// Index of the cut facet in `P_s`.
    pub facet: usize,
}

#[derive(Clone, Debug)]
pub struct ChopData {
    pub cuts: Vec<Cut>,
    /// `P_s` with inherited weights; cut facets weighted `1`.
    pub chopped: WeightedPolyhedron,
    /// For each facet of `P_s`, the facet of `P` it comes from.
    pub original_facet: Vec<Option<usize>>,
}

pub fn chop_nonsimple(wp: &WeightedPolyhedron) -> Result<ChopData> {
    let p = &wp.polyhedron;
    let lattice = polytope_lattice(p)?;
    let report = classify_genericity(&lattice);
    match report.class {
        Genericity::Simple => {
            return Ok(ChopData {
                cuts: Vec::new(),
                chopped: wp.clone(),
                original_facet: (0..p.num_facets()).map(Some).collect(),
            })
        }
        Genericity::Unsupported => {
            return Err(Error::UnsupportedGenericity(
                "a positive-dimensional face lies on too many facets".into(),
            ))
        }
        Genericity::NonsimpleVerticesOnly => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut last_failure = String::new();
    for round in 0..HALVING_ROUNDS + PERTURBATION_ROUNDS {
        let shrink = Rational::from_integer(num_bigint::BigInt::one() << round.min(HALVING_ROUNDS));
        let perturb = round >= HALVING_ROUNDS;
        let mut cuts = Vec::new();
        for v in &report.nonsimple_vertices {
            let functional = cut_functional(p, v, perturb.then_some(&mut rng));
            let at_v = dot(&functional, &v.point);
            let gap = lattice
                .vertices
                .iter()
                .filter(|u| u.point != v.point)
                .map(|u| dot(&functional, &u.point) - &at_v)
                .min()
                .ok_or_else(|| Error::ChopFailed("polytope has a single vertex".into()))?;
            let epsilon = gap / Rational::from_integer(2.into()) / &shrink;
            let threshold = &at_v + &epsilon;
            let halfspace = AffineForm::new(functional.clone(), -&threshold);
            cuts.push(Cut {
                vertex: v.clone(),
                functional,
                threshold,
                epsilon,
                halfspace,
                facet: 0,
            });
        }
        match assemble(wp, &mut cuts) {
            Ok((chopped, original_facet)) => {
                let l = chopped.polyhedron.face_lattice()?;
                if classify_genericity(&l).class == Genericity::Simple {
                    return Ok(ChopData {
                        cuts,
                        chopped,
                        original_facet,
                    });
                }
                last_failure = "truncated polytope is not simple".into();
            }
            Err(msg) => last_failure = msg,
        }
    }
    Err(Error::ChopFailed(format!(
        "{last_failure} after {} attempts",
        HALVING_ROUNDS + PERTURBATION_ROUNDS
    )))
}

/// `sum_{i in I_v} lambda_i u_i` with `lambda_i = 1`, or `1 + small random`
/// when perturbing. Any positive combination is uniquely minimized at `v`.
fn cut_functional(p: &HPolyhedron, v: &Vertex, rng: Option<&mut ChaCha8Rng>) -> Vec<Rational> {
    let mut eta = vec![Rational::zero(); p.dim()];
    let mut rng = rng;
    for &i in &v.active {
        let lambda = match rng.as_deref_mut() {
            Some(r) => Rational::one() + rat(r.gen_range(1..=16), 64),
            None => Rational::one(),
        };
        for (e, u) in eta.iter_mut().zip(&p.halfspaces()[i].normal) {
            *e += u * &lambda;
        }
    }
    eta
}

fn assemble(
    wp: &WeightedPolyhedron,
    cuts: &mut [Cut],
) -> std::result::Result<(WeightedPolyhedron, Vec<Option<usize>>), String> {
    let n = wp.polyhedron.num_facets();
    let mut forms = wp.polyhedron.halfspaces().to_vec();
    forms.extend(cuts.iter().map(|c| c.halfspace.clone()));
    let (chopped, kept) =
        HPolyhedron::build(forms, wp.dim()).map_err(|e| format!("truncation invalid: {e}"))?;
    if kept.len() != n + cuts.len() {
        return Err("a cut removed a whole facet or was redundant".into());
    }
    let mut weights = wp.weights.as_slice().to_vec();
    weights.extend(std::iter::repeat_n(Poly::one(), cuts.len()));
    for (k, c) in cuts.iter_mut().enumerate() {
        c.facet = n + k;
    }
    let original = (0..n + cuts.len()).map(|k| (k < n).then_some(k)).collect();
    let chopped =
        WeightedPolyhedron::new(chopped, WeightAssignment::new(weights)).map_err(|e| e.to_string())?;
    Ok((chopped, original))
}

/// The four formal sums of the chopping argument.
#[derive(Clone, Debug)]
pub struct NonsimpleWitness {
    /// Brianchon-Gram sum of `P_s`.
    pub bg_chopped: FormalSum,
    /// `f_P`: Brianchon-Gram sum over the faces of `P`.
    pub f_p: FormalSum,
    /// `sum_v (sum_{F_s in sigma_v} (-1)^dim F_s 1^w_{C_{F_s}} - 1^w_{C_v})`.
    pub key_difference: FormalSum,
    /// `sum_v 1^w_{C_v \ H_v}`, written as `1^w_{C_v} - 1^w_{C_v ∩ H_v}`.
    pub correction: FormalSum,
}

pub fn nonsimple_bg_witness(wp: &WeightedPolyhedron, chop: &ChopData) -> Result<NonsimpleWitness> {
    let d = wp.dim();
    let f_p = brianchon_gram(wp)?;
    let ps = &chop.chopped;
    let ps_lattice = polytope_lattice(&ps.polyhedron)?;
    let bg_chopped = brianchon_gram_from_lattice(ps, &ps_lattice)?;
    let p_lattice = polytope_lattice(&wp.polyhedron)?;

    let mut key_difference = FormalSum::new(d);
    let mut correction = FormalSum::new(d);
    for cut in &chop.cuts {
        for face in ps_lattice.faces.iter().filter(|f| f.active.contains(&cut.facet)) {
            let cone = TangentCone::new(&ps.polyhedron, face);
            key_difference.push(dim_sign(face.dim), ps.cone_indicator(&cone))?;
        }
        let vface = p_lattice
            .find(&cut.vertex.active)
            .ok_or_else(|| Error::NotAVertex(format_point(&cut.vertex.point)))?;
        let cone = wp.cone_indicator(&TangentCone::new(&wp.polyhedron, vface));
        key_difference.push(Poly::int(-1), cone.clone())?;

        let mut cut_cone = cone.clone();
        cut_cone.halfspaces.push(cut.halfspace.clone());
        cut_cone.weights.push(Poly::one());
        correction.push(Poly::one(), cone)?;
        correction.push(
            Poly::int(-1),
            Indicator::new(d, cut_cone.halfspaces, cut_cone.weights)?,
        )?;
    }
    Ok(NonsimpleWitness {
        bg_chopped,
        f_p,
        key_difference,
        correction,
    })
}

#[derive(Clone, Debug)]
pub struct PipelineCheck {
    pub name: &'static str,
    pub verdict: Verdict,
}

impl NonsimpleWitness {
    /// Checks, in order:
    /// 1. `bg(P_s) = 1^w_{P_s}`
    /// 2. `bg(P_s) - f_P = key_difference`
    /// 3. `bg(P_s) - f_P = -correction`
    /// 4. `1^w_{P_s} - 1^w_P = -correction`
    /// 5. `f_P = 1^w_P`
    pub fn verify(
        &self,
        wp: &WeightedPolyhedron,
        chop: &ChopData,
        opts: &CheckOptions,
    ) -> Result<Vec<PipelineCheck>> {
        let target = FormalSum::from(wp);
        let chopped_target = FormalSum::from(&chop.chopped);
        let difference = self.bg_chopped.minus(&self.f_p)?;
        let negated_correction = self.correction.negated();
        let checks: [(&'static str, FormalSum, FormalSum); 5] = [
            (
                "chopped-brianchon-gram",
                self.bg_chopped.clone(),
                chopped_target.clone(),
            ),
            ("key-difference", difference.clone(), self.key_difference.clone()),
            (
                "key-difference-correction",
                difference,
                negated_correction.clone(),
            ),
            (
                "truncation-difference",
                chopped_target.minus(&target)?,
                negated_correction,
            ),
            ("conclusion", self.f_p.clone(), target),
        ];
        checks
            .into_iter()
            .map(|(name, lhs, rhs)| {
                Ok(PipelineCheck {
                    name,
                    verdict: identity_check_with(&lhs, &rhs, opts)?,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::fixtures;

    fn q(i: usize) -> Poly {
        Poly::var(&format!("q{i}"))
    }

    #[test]
    fn pyramid_chop() {
        let wp = WeightedPolyhedron::symbolic(fixtures::pyramid());
        let chop = chop_nonsimple(&wp).unwrap();
        assert_eq!(chop.cuts.len(), 1);
        let cut = &chop.cuts[0];
        assert_eq!(cut.functional, vec![int(0), int(0), int(-4)]);
        assert_eq!(cut.threshold, int(-2));
        // -4z + 2 >= 0, i.e. z <= 1/2
        assert_eq!(cut.halfspace, AffineForm::from_ints(&[0, 0, -4], 2));
        let ps = &chop.chopped.polyhedron;
        assert_eq!(ps.num_facets(), 6);
        assert_eq!(ps.vertices().unwrap().len(), 8);
        assert_eq!(chop.chopped.weights.get(5), &Poly::one());
    }

    #[test]
    fn octahedron_chop_is_simple() {
        let wp = WeightedPolyhedron::symbolic(fixtures::octahedron());
        let chop = chop_nonsimple(&wp).unwrap();
        assert_eq!(chop.cuts.len(), 6);
        let l = chop.chopped.polyhedron.face_lattice().unwrap();
        assert_eq!(classify_genericity(&l).class, Genericity::Simple);
        // Truncated octahedron: 24 vertices, 36 edges, 14 facets.
        assert_eq!(l.count_by_dim(), vec![24, 36, 14, 1]);
    }

    #[test]
    fn simple_input_is_untouched() {
        let wp = WeightedPolyhedron::symbolic(fixtures::cube());
        let chop = chop_nonsimple(&wp).unwrap();
        assert!(chop.cuts.is_empty());
        assert_eq!(chop.chopped, wp);
    }

    #[test]
    fn pyramid_witness_values() {
        let wp = WeightedPolyhedron::symbolic(fixtures::pyramid());
        let chop = chop_nonsimple(&wp).unwrap();
        let w = nonsimple_bg_witness(&wp, &chop).unwrap();
        assert_eq!(w.f_p.len(), 19);
        let apex = [int(0), int(0), int(1)];
        assert_eq!(w.f_p.evaluate(&apex).unwrap(), q(2) * q(3) * q(4) * q(5));
        let above_cut = [int(0), int(0), crate::exact::rat(3, 4)];
        assert_eq!(w.key_difference.evaluate(&above_cut).unwrap(), Poly::int(-1));
        let checks = w.verify(&wp, &chop, &CheckOptions::default()).unwrap();
        for c in &checks {
            assert!(c.verdict.is_equal(), "{}: {}", c.name, c.verdict);
        }
    }
}
