//! Polar decomposition of a weighted simple polytope.
//!
//! For a polarizing covector `xi`, every face has a unique `xi`-minimizing
//! vertex. Grouping the Brianchon-Gram terms by that vertex gives, for each
//! vertex `v`, a signed sum that collapses to one weighted cone: the vertex
//! cone `C_v` with every `xi`-increasing edge reversed. A reversed edge
//! `e_i` flips the facet `op(i)` it does not lie on, and that facet's weight
//! becomes `1 - q_op(i)`. The sign is `(-1)^{#v}` with `#v` the number of
//! reversed edges.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::exact::{dot, format_point, solve_affine, AffineForm, Poly, Rational};
use crate::indicators::{FormalSum, Indicator, WeightedPolyhedron};
use crate::polyhedra::{classify_genericity, FaceLattice, Genericity, TangentCone};
use crate::{Error, Result};

use super::{dim_sign, polytope_lattice};

/// True iff `xi` is nonconstant on every edge of the lattice.
pub fn is_polarizing(lattice: &FaceLattice, xi: &[Rational]) -> bool {
    check_polarizing(lattice, xi).is_ok()
}

fn check_polarizing(lattice: &FaceLattice, xi: &[Rational]) -> Result<()> {
    if xi.len() != lattice.dim {
        return Err(Error::DimensionMismatch {
            expected: lattice.dim,
            found: xi.len(),
        });
    }
    for (a, b) in lattice.edges() {
        let (pa, pb) = (&lattice.vertices[a].point, &lattice.vertices[b].point);
        if dot(xi, pa) == dot(xi, pb) {
            return Err(Error::NotPolarizing {
                xi: format_point(xi),
                a: format_point(pa),
                b: format_point(pb),
            });
        }
    }
    Ok(())
}

/// First `xi = (1, M, M^2, ...)` over primes `M = 2, 3, 5, ...` that is
/// nonconstant on every edge.
pub fn sample_polarizing(lattice: &FaceLattice) -> Vec<Rational> {
    let mut m: u64 = 2;
    loop {
        let base = Rational::from_integer(m.into());
        let mut xi = Vec::with_capacity(lattice.dim);
        let mut power = Rational::from_integer(1.into());
        for _ in 0..lattice.dim {
            xi.push(power.clone());
            power *= &base;
        }
        if is_polarizing(lattice, &xi) {
            return xi;
        }
        m += 1;
        while (2..m).any(|k| m.is_multiple_of(k)) {
            m += 1;
        }
    }
}

/// Indices (into `lattice.faces`) of the faces containing vertex `v` on
/// which `xi` attains its minimum at `v`.
pub fn polar_group(lattice: &FaceLattice, v: usize, xi: &[Rational]) -> Vec<usize> {
    let vertex = &lattice.vertices[v];
    let level = dot(xi, &vertex.point);
    lattice
        .faces
        .iter()
        .enumerate()
        .filter(|(_, f)| f.active.is_subset(&vertex.active))
        .filter(|(_, f)| lattice.vertices_of(f).all(|u| dot(xi, &u.point) >= level))
        .map(|(k, _)| k)
        .collect()
}

fn simple_lattice(wp: &WeightedPolyhedron, xi: &[Rational]) -> Result<FaceLattice> {
    let lattice = polytope_lattice(&wp.polyhedron)?;
    if classify_genericity(&lattice).class != Genericity::Simple {
        return Err(Error::NotSimple);
    }
    check_polarizing(&lattice, xi)?;
    Ok(lattice)
}

fn vertex_index(lattice: &FaceLattice, v: &[Rational]) -> Result<usize> {
    lattice
        .vertex_index(v)
        .ok_or_else(|| Error::NotAVertex(format_point(v)))
}

/// `sum (-1)^dim F 1^w_{C_F}` over the faces grouped at `v`.
pub fn polar_group_sum(wp: &WeightedPolyhedron, v: &[Rational], xi: &[Rational]) -> Result<FormalSum> {
    let lattice = simple_lattice(wp, xi)?;
    let vi = vertex_index(&lattice, v)?;
    group_sum(wp, &lattice, vi, xi)
}

fn group_sum(wp: &WeightedPolyhedron, lattice: &FaceLattice, v: usize, xi: &[Rational]) -> Result<FormalSum> {
    let mut sum = FormalSum::new(wp.dim());
    for k in polar_group(lattice, v, xi) {
        let face = &lattice.faces[k];
        let cone = TangentCone::new(&wp.polyhedron, face);
        sum.push(dim_sign(face.dim), wp.cone_indicator(&cone))?;
    }
    Ok(sum)
}

/// Edge of a simple vertex cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeEdge {
    pub direction: Vec<Rational>,
    /// The one cone facet (original index) the edge does not lie on.
    pub opposite_facet: usize,
    pub flipped: bool,
}

#[derive(Clone, Debug)]
pub struct PolarizedCone {
    pub vertex: Vec<Rational>,
    pub cone: TangentCone,
    pub edges: Vec<ConeEdge>,
    pub flip_count: usize,
    /// Facets of the polarized cone, one per edge in `edges` order.
    pub halfspaces: Vec<AffineForm>,
    pub weights: Vec<Poly>,
}

impl PolarizedCone {
    pub fn flipped_edges(&self) -> BTreeSet<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.flipped)
            .map(|(i, _)| i)
            .collect()
    }

    /// `(-1)^{#v}`.
    pub fn sign(&self) -> i64 {
        if self.flip_count.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn indicator(&self) -> Indicator {
        Indicator {
            dim: self.vertex.len(),
            halfspaces: self.halfspaces.clone(),
            weights: self.weights.clone(),
        }
    }

    /// `(-1)^{#v} 1^{w_v}_{C#_v}` as a one-term sum.
    pub fn signed_sum(&self) -> FormalSum {
        FormalSum::single(Poly::int(self.sign()), self.indicator())
    }
}

/// Builds the flipped cone at `v`. Facet weights may differ per facet; with
/// all weights equal to `q` this is the uniform-weight construction.
pub fn polarize_vertex_cone(
    wp: &WeightedPolyhedron,
    v: &[Rational],
    xi: &[Rational],
) -> Result<PolarizedCone> {
    let lattice = polytope_lattice(&wp.polyhedron)?;
    check_polarizing(&lattice, xi)?;
    let vi = vertex_index(&lattice, v)?;
    polarize_at(wp, &lattice, vi, xi)
}

fn polarize_at(
    wp: &WeightedPolyhedron,
    lattice: &FaceLattice,
    vi: usize,
    xi: &[Rational],
) -> Result<PolarizedCone> {
    let d = wp.dim();
    let vertex = &lattice.vertices[vi];
    if vertex.active.len() != d {
        return Err(Error::NotSimple);
    }
    let face = lattice.find(&vertex.active).expect("vertex is a face");
    let cone = TangentCone::new(&wp.polyhedron, face);
    let forms = wp.polyhedron.halfspaces();
    let mut edges = Vec::with_capacity(d);
    let mut halfspaces = Vec::with_capacity(d);
    let mut weights = Vec::with_capacity(d);
    for &j in &vertex.active {
        let others: Vec<AffineForm> = vertex
            .active
            .iter()
            .filter(|&&k| k != j)
            .map(|&k| AffineForm::new(forms[k].normal.clone(), Rational::zero()))
            .collect();
        let sol = solve_affine(&others, d)?;
        let [dir] = sol.directions() else {
            return Err(Error::NotSimple);
        };
        let mut direction = dir.clone();
        if forms[j].eval_linear(&direction).is_negative() {
            direction.iter_mut().for_each(|c| *c = -c.clone());
        }
        let slope = dot(xi, &direction);
        if slope.is_zero() {
            return Err(Error::NotPolarizing {
                xi: format_point(xi),
                a: format_point(&vertex.point),
                b: format!("direction {}", format_point(&direction)),
            });
        }
        let flipped = slope.is_positive();
        let q = wp.weights.get(j);
        if flipped {
            halfspaces.push(-&forms[j]);
            weights.push(Poly::one() - q);
        } else {
            halfspaces.push(forms[j].clone());
            weights.push(q.clone());
        }
        edges.push(ConeEdge {
            direction,
            opposite_facet: j,
            flipped,
        });
    }
    let flip_count = edges.iter().filter(|e| e.flipped).count();
    Ok(PolarizedCone {
        vertex: vertex.point.clone(),
        cone,
        edges,
        flip_count,
        halfspaces,
        weights,
    })
}

/// One flipped cone per vertex, ordered by increasing `xi`-value.
pub fn polar_decompose(wp: &WeightedPolyhedron, xi: &[Rational]) -> Result<Vec<PolarizedCone>> {
    let lattice = simple_lattice(wp, xi)?;
    let mut order: Vec<usize> = (0..lattice.vertices.len()).collect();
    order.sort_by_key(|&i| dot(xi, &lattice.vertices[i].point));
    order
        .into_iter()
        .map(|i| polarize_at(wp, &lattice, i, xi))
        .collect()
}

/// Faces whose `xi`-minimum is attained at one vertex, and their cone sum.
#[derive(Clone, Debug)]
pub struct PolarGroup {
    pub vertex: Vec<Rational>,
    /// Indices into the face lattice.
    pub faces: Vec<usize>,
    pub sum: FormalSum,
}

/// Polar groups of every vertex, in the same order as [`polar_decompose`].
pub fn polar_groups(wp: &WeightedPolyhedron, xi: &[Rational]) -> Result<Vec<PolarGroup>> {
    let lattice = simple_lattice(wp, xi)?;
    let mut order: Vec<usize> = (0..lattice.vertices.len()).collect();
    order.sort_by_key(|&i| dot(xi, &lattice.vertices[i].point));
    order
        .into_iter()
        .map(|i| {
            Ok(PolarGroup {
                vertex: lattice.vertices[i].point.clone(),
                faces: polar_group(&lattice, i, xi),
                sum: group_sum(wp, &lattice, i, xi)?,
            })
        })
        .collect()
}

pub fn polar_sum(cones: &[PolarizedCone], dim: usize) -> FormalSum {
    let mut sum = FormalSum::new(dim);
    for c in cones {
        sum.extend(c.signed_sum()).expect("same dimension");
    }
    sum
}
