//! Decompositions of weighted indicator functions.
//!
//! - [`brianchon_gram`]: `1^w_P = sum_F (-1)^dim F 1^w_{C_F}` over all faces.
//! - [`face_expansion`]: `1^w_P = 1_P + sum_{F != P} prod_{i in I_F} (q_i - 1) 1_F`.
//! - [`brion_split`]: separates the pointed vertex cones from the cones that
//!   contain lines.
//! - [`polar`]: groups faces by their minimizing vertex for a polarizing
//!   covector and rebuilds each group as one flipped vertex cone.
//! - [`chop`]: extends the Brianchon-Gram identity to polytopes whose only non-generic
//!   faces are vertices by truncating those vertices.

pub mod chop;
pub mod polar;

pub use chop::{chop_nonsimple, nonsimple_bg_witness, ChopData, Cut, NonsimpleWitness, PipelineCheck};
pub use polar::{
    is_polarizing, polar_decompose, polar_group, polar_group_sum, polar_groups, polar_sum,
    polarize_vertex_cone, sample_polarizing, ConeEdge, PolarGroup, PolarizedCone,
};

use crate::exact::Poly;
use crate::indicators::{facet_var, FormalSum, Indicator, WeightedPolyhedron};
use crate::polyhedra::{classify_genericity, Face, FaceLattice, Genericity, TangentCone};
use crate::{Error, HPolyhedron, Result};

pub(crate) fn dim_sign(dim: usize) -> Poly {
    Poly::int(if dim.is_multiple_of(2) { 1 } else { -1 })
}

/// Face lattice of a polytope, rejecting unbounded input.
pub(crate) fn polytope_lattice(p: &HPolyhedron) -> Result<FaceLattice> {
    if !p.is_bounded()? {
        return Err(Error::Unbounded);
    }
    p.face_lattice()
}

/// Weighted Brianchon-Gram sum: one term `(-1)^dim F 1^w_{C_F}` per face,
/// cone facets inheriting the weights of `P`. For polytopes whose only
/// non-generic faces are vertices this is the sum `f_P` of the chopping
/// argument.
pub fn brianchon_gram(wp: &WeightedPolyhedron) -> Result<FormalSum> {
    let lattice = polytope_lattice(&wp.polyhedron)?;
    brianchon_gram_from_lattice(wp, &lattice)
}

pub fn brianchon_gram_from_lattice(wp: &WeightedPolyhedron, lattice: &FaceLattice) -> Result<FormalSum> {
    let class = classify_genericity(lattice).class;
    if class == Genericity::Unsupported {
        return Err(Error::UnsupportedGenericity(
            "a positive-dimensional face lies on too many facets".into(),
        ));
    }
    let mut sum = FormalSum::new(wp.dim());
    for face in &lattice.faces {
        let cone = TangentCone::new(&wp.polyhedron, face);
        sum.push(dim_sign(face.dim), wp.cone_indicator(&cone))?;
    }
    Ok(sum)
}

/// `1_F` for a face, written as `P` plus the reversed active halfspaces.
pub fn face_body(p: &HPolyhedron, face: &Face) -> Indicator {
    let mut forms = p.halfspaces().to_vec();
    forms.extend(face.active.iter().map(|&i| -&p.halfspaces()[i]));
    Indicator::unweighted(p.dim(), forms)
}

/// Unweighted decomposition of `1^w_P` over all faces of a simple polytope.
pub fn face_expansion(wp: &WeightedPolyhedron) -> Result<FormalSum> {
    let lattice = polytope_lattice(&wp.polyhedron)?;
    if classify_genericity(&lattice).class != Genericity::Simple {
        return Err(Error::NotSimple);
    }
    let mut sum = FormalSum::new(wp.dim());
    for face in &lattice.faces {
        let coeff: Poly = face
            .active
            .iter()
            .map(|&i| wp.weights.get(i) - &Poly::one())
            .product();
        sum.push(coeff, face_body(&wp.polyhedron, face))?;
    }
    Ok(sum)
}

/// The `2^n - 1` products `prod_{i in J} (q_i - 1)` over nonempty `J`.
pub fn product_expansion_terms(indices: &[usize]) -> Vec<Poly> {
    let n = indices.len();
    assert!(n < 32, "index set too large for subset expansion");
    let shifted: Vec<Poly> = indices
        .iter()
        .map(|&i| Poly::var(&facet_var(i)) - Poly::one())
        .collect();
    (1u32..(1 << n))
        .map(|mask| {
            (0..n)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| shifted[b].clone())
                .product()
        })
        .collect()
}

/// Both sides of `prod q_i = 1 + sum_{J != {}} prod_{i in J} (q_i - 1)`.
pub fn product_expand(indices: &[usize]) -> (Poly, Poly) {
    let lhs: Poly = indices.iter().map(|&i| Poly::var(&facet_var(i))).product();
    let rhs = Poly::one() + product_expansion_terms(indices).into_iter().sum::<Poly>();
    (lhs, rhs)
}

/// Splits a Brianchon-Gram sum into `g` (bodies containing a line) and the
/// vertex part (pointed bodies). Term order is preserved within each part.
pub fn brion_split(bg: &FormalSum) -> (FormalSum, FormalSum) {
    let mut g = FormalSum::new(bg.dim());
    let mut vertices = FormalSum::new(bg.dim());
    for t in bg.terms() {
        let target = if t.body.lineality_dim() == 0 {
            &mut vertices
        } else {
            &mut g
        };
        target
            .push(t.coeff.clone(), t.body.clone())
            .expect("same dimension");
    }
    (g, vertices)
}
