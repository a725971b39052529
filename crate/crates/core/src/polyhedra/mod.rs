//! H-representation polyhedra, vertices, face lattices and tangent cones.

mod cone;
mod faces;

pub use cone::{lineality_dim, TangentCone};
pub use faces::{classify_genericity, Face, FaceLattice, Genericity, GenericityReport};

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::exact::{fm_feasible, solve_affine, AffineForm, AffineSolution, Constraint, Rational};
use crate::{Error, Result};

/// Upper bound on facet count for subset-closure face enumeration.
pub const MAX_FACETS: usize = 16;

/// Sorted set of facet indices.
pub type ActiveSet = BTreeSet<usize>;

/// Full-dimensional polyhedron `{x : form_i(x) >= 0 for all i}` with an
/// irredundant list of halfspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    dim: usize,
    halfspaces: Vec<AffineForm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<Rational>,
    pub active: ActiveSet,
}

impl HPolyhedron {
    /// Removes redundant halfspaces (keeping survivors in order) and checks
    /// full-dimensionality.
    pub fn new(forms: Vec<AffineForm>, dim: usize) -> Result<Self> {
        Ok(Self::build(forms, dim)?.0)
    }

    /// Like [`HPolyhedron::new`], also returning the input index of every
    /// surviving halfspace.
    pub fn build(forms: Vec<AffineForm>, dim: usize) -> Result<(Self, Vec<usize>)> {
        if dim == 0 {
            return Err(Error::Input("dimension must be at least 1".into()));
        }
        for f in &forms {
            f.check_dim(dim)?;
        }
        let strict: Vec<Constraint> = forms.iter().cloned().map(Constraint::pos).collect();
        if fm_feasible(&strict, dim)?.is_none() {
            return Err(Error::NotFullDimensional);
        }
        let mut kept: Vec<usize> = (0..forms.len()).collect();
        let mut k = 0;
        while k < kept.len() {
            let i = kept[k];
            // Redundant iff nothing violates it while satisfying the rest.
            let mut system: Vec<Constraint> = kept
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| Constraint::non_neg(forms[j].clone()))
                .collect();
            system.push(Constraint::pos(-&forms[i]));
            if fm_feasible(&system, dim)?.is_none() {
                kept.remove(k);
            } else {
                k += 1;
            }
        }
        let halfspaces = kept.iter().map(|&i| forms[i].clone()).collect();
        Ok((HPolyhedron { dim, halfspaces }, kept))
    }

    /// Wraps halfspaces already known to be irredundant and full-dimensional.
    pub(crate) fn from_irredundant(dim: usize, halfspaces: Vec<AffineForm>) -> Self {
        HPolyhedron { dim, halfspaces }
    }

    pub fn whole_space(dim: usize) -> Self {
        HPolyhedron {
            dim,
            halfspaces: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[AffineForm] {
        &self.halfspaces
    }

    pub fn num_facets(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.eval(x) >= Rational::zero())
    }

    /// Indices of the halfspaces tight at `x`.
    pub fn active_set(&self, x: &[Rational]) -> ActiveSet {
        self.halfspaces
            .iter()
            .enumerate()
            .filter(|(_, h)| h.eval(x).is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Bounded iff no nonzero recession direction `y` with `<u_i, y> >= 0`.
    pub fn is_bounded(&self) -> Result<bool> {
        let linear: Vec<AffineForm> = self
            .halfspaces
            .iter()
            .map(|h| AffineForm::new(h.normal.clone(), Rational::zero()))
            .collect();
        for axis in 0..self.dim {
            for sign in [1i64, -1] {
                let mut system: Vec<Constraint> = linear.iter().cloned().map(Constraint::non_neg).collect();
                let dir = AffineForm::coordinate(self.dim, axis).scale(&crate::exact::int(sign));
                system.push(Constraint::pos(dir));
                if fm_feasible(&system, self.dim)?.is_some() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every `d`-subset of facet hyperplanes meeting in a single point of
    /// `P` gives a vertex; coincident points are merged and reported with
    /// their full active set.
    pub fn vertices(&self) -> Result<Vec<Vertex>> {
        let mut found: Vec<Vertex> = Vec::new();
        let n = self.halfspaces.len();
        if n < self.dim {
            return Ok(found);
        }
        let mut combo: Vec<usize> = (0..self.dim).collect();
        loop {
            let eqs: Vec<AffineForm> = combo.iter().map(|&i| self.halfspaces[i].clone()).collect();
            if let AffineSolution::Unique(p) = solve_affine(&eqs, self.dim)? {
                if self.contains(&p) && !found.iter().any(|v| v.point == p) {
                    let active = self.active_set(&p);
                    found.push(Vertex { point: p, active });
                }
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
        found.sort_by(|a, b| a.active.cmp(&b.active));
        Ok(found)
    }

    /// A point of the face cut out by `active` (taken as equalities) that
    /// satisfies every other halfspace strictly.
    pub fn relative_interior_point(&self, active: &ActiveSet) -> Result<Vec<Rational>> {
        let system: Vec<Constraint> = self
            .halfspaces
            .iter()
            .enumerate()
            .map(|(i, h)| {
                if active.contains(&i) {
                    Constraint::zero(h.clone())
                } else {
                    Constraint::pos(h.clone())
                }
            })
            .collect();
        fm_feasible(&system, self.dim)?.ok_or(Error::Infeasible)
    }

    pub fn face_lattice(&self) -> Result<FaceLattice> {
        faces::enumerate_faces(self)
    }
}

/// Advances `combo` to the next k-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
