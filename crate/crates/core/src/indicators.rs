//! Weighted indicator functions and finite formal sums of them.
//!
//! The weight of a point `x` of a weighted polyhedron is the product of the
//! weights of the facets tight at `x`, or `1` in the interior; `0` outside.
//! Weights are read off active constraints, never from a stored face
//! decomposition.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::exact::{AffineForm, Assignment, Poly, Rational};
use crate::polyhedra::{lineality_dim, TangentCone};
use crate::{Error, HPolyhedron, Result};

/// Name of the default indeterminate for facet `index` (0-based): `q1, q2, ...`.
pub fn facet_var(index: usize) -> String {
    format!("q{}", index + 1)
}

/// One weight per facet of a carrier polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment(Vec<Poly>);

impl WeightAssignment {
    pub fn new(weights: Vec<Poly>) -> Self {
        WeightAssignment(weights)
    }

    /// Facet `i` weighted by the indeterminate `q{i+1}`.
    pub fn symbolic(n: usize) -> Self {
        WeightAssignment((0..n).map(|i| Poly::var(&facet_var(i))).collect())
    }

    pub fn uniform(n: usize, w: Poly) -> Self {
        WeightAssignment(vec![w; n])
    }

    pub fn ones(n: usize) -> Self {
        Self::uniform(n, Poly::one())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &Poly {
        &self.0[i]
    }

    pub fn as_slice(&self) -> &[Poly] {
        &self.0
    }

    pub fn is_uniform(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn substitute(&self, a: &Assignment) -> Result<Self> {
        self.0
            .iter()
            .map(|w| w.substitute(a))
            .collect::<Result<_>>()
            .map(WeightAssignment)
    }
}

/// A polyhedron together with a weight for each of its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPolyhedron {
    pub polyhedron: HPolyhedron,
    pub weights: WeightAssignment,
}

impl WeightedPolyhedron {
    pub fn new(polyhedron: HPolyhedron, weights: WeightAssignment) -> Result<Self> {
        if weights.len() != polyhedron.num_facets() {
            return Err(Error::Input(format!(
                "{} weights given for {} facets",
                weights.len(),
                polyhedron.num_facets()
            )));
        }
        Ok(WeightedPolyhedron { polyhedron, weights })
    }

    /// Every facet weighted by its own indeterminate.
    pub fn symbolic(polyhedron: HPolyhedron) -> Self {
        let weights = WeightAssignment::symbolic(polyhedron.num_facets());
        WeightedPolyhedron { polyhedron, weights }
    }

    pub fn uniform(polyhedron: HPolyhedron, w: Poly) -> Self {
        let weights = WeightAssignment::uniform(polyhedron.num_facets(), w);
        WeightedPolyhedron { polyhedron, weights }
    }

    pub fn dim(&self) -> usize {
        self.polyhedron.dim()
    }

    pub fn indicator(&self) -> Indicator {
        Indicator {
            dim: self.dim(),
            halfspaces: self.polyhedron.halfspaces().to_vec(),
            weights: self.weights.as_slice().to_vec(),
        }
    }

    /// Tangent cone with the weights of its facets inherited from `P`.
    pub fn cone_indicator(&self, cone: &TangentCone) -> Indicator {
        Indicator {
            dim: self.dim(),
            halfspaces: cone.forms(),
            weights: cone
                .facet_indices()
                .map(|i| self.weights.get(i).clone())
                .collect(),
        }
    }

    pub fn weight_at(&self, x: &[Rational]) -> Poly {
        self.indicator().weight_at(x)
    }
}

/// The body of a formal-sum term: `{x : h_i(x) >= 0}` with facet weights.
/// No irredundancy or full-dimensionality is required, so faces (written
/// with opposite halfspace pairs) and `R^d` are bodies too.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indicator {
    pub dim: usize,
    pub halfspaces: Vec<AffineForm>,
    pub weights: Vec<Poly>,
}

impl Indicator {
    pub fn new(dim: usize, halfspaces: Vec<AffineForm>, weights: Vec<Poly>) -> Result<Self> {
        if halfspaces.len() != weights.len() {
            return Err(Error::Input(format!(
                "{} weights given for {} halfspaces",
                weights.len(),
                halfspaces.len()
            )));
        }
        for h in &halfspaces {
            h.check_dim(dim)?;
        }
        Ok(Indicator {
            dim,
            halfspaces,
            weights,
        })
    }

    /// Plain characteristic function of `{x : h_i(x) >= 0}`.
    pub fn unweighted(dim: usize, halfspaces: Vec<AffineForm>) -> Self {
        let weights = vec![Poly::one(); halfspaces.len()];
        Indicator {
            dim,
            halfspaces,
            weights,
        }
    }

    pub fn whole_space(dim: usize) -> Self {
        Indicator::unweighted(dim, Vec::new())
    }

    /// `0` outside, otherwise the product of the weights of tight halfspaces.
    pub fn weight_at(&self, x: &[Rational]) -> Poly {
        let mut w = Poly::one();
        for (h, q) in self.halfspaces.iter().zip(&self.weights) {
            let v = h.eval(x);
            if v.is_negative() {
                return Poly::zero();
            }
            if v.is_zero() {
                w *= q;
            }
        }
        w
    }

    pub fn lineality_dim(&self) -> usize {
        lineality_dim(&self.halfspaces, self.dim)
    }

    pub fn substitute(&self, a: &Assignment) -> Result<Self> {
        Ok(Indicator {
            dim: self.dim,
            halfspaces: self.halfspaces.clone(),
            weights: self
                .weights
                .iter()
                .map(|w| w.substitute(a))
                .collect::<Result<_>>()?,
        })
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        for w in &self.weights {
            out.extend(w.vars().into_iter().map(|v| v.name().to_string()));
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.halfspaces.is_empty() {
            return write!(f, "R^{}", self.dim);
        }
        f.write_str("{")?;
        for (k, (h, w)) in self.halfspaces.iter().zip(&self.weights).enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{h} >= 0 [{w}]")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Poly,
    pub body: Indicator,
}

/// Finite linear combination of weighted indicators. Arithmetic is
/// term-list concatenation; no geometric cancellation happens here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum {
    dim: usize,
    terms: Vec<Term>,
}

impl FormalSum {
    pub fn new(dim: usize) -> Self {
        FormalSum {
            dim,
            terms: Vec::new(),
        }
    }

    pub fn single(coeff: Poly, body: Indicator) -> Self {
        FormalSum {
            dim: body.dim,
            terms: vec![Term { coeff, body }],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn terms_mut(&mut self) -> &mut [Term] {
        &mut self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, coeff: Poly, body: Indicator) -> Result<()> {
        if body.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: body.dim,
            });
        }
        self.terms.push(Term { coeff, body });
        Ok(())
    }

    pub fn extend(&mut self, other: FormalSum) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        self.terms.extend(other.terms);
        Ok(())
    }

    pub fn plus(&self, other: &FormalSum) -> Result<FormalSum> {
        let mut out = self.clone();
        out.extend(other.clone())?;
        Ok(out)
    }

    pub fn minus(&self, other: &FormalSum) -> Result<FormalSum> {
        self.plus(&other.negated())
    }

    pub fn scaled(&self, c: &Poly) -> FormalSum {
        FormalSum {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    body: t.body.clone(),
                })
                .collect(),
        }
    }

    pub fn negated(&self) -> FormalSum {
        self.scaled(&Poly::int(-1))
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<Poly> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let mut total = Poly::zero();
        for t in &self.terms {
            let w = t.body.weight_at(x);
            if !w.is_zero() {
                total += &t.coeff * &w;
            }
        }
        Ok(total)
    }

    /// All indeterminates occurring in coefficients or facet weights.
    pub fn indeterminates(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in &self.terms {
            out.extend(t.coeff.vars().into_iter().map(|v| v.name().to_string()));
            t.body.collect_vars(&mut out);
        }
        out
    }

    /// Applies `a` to every coefficient and facet weight. Assigning an
    /// indeterminate that occurs nowhere in the sum is an error.
    pub fn substitute(&self, a: &Assignment) -> Result<FormalSum> {
        let known = self.indeterminates();
        if let Some(name) = a.keys().find(|k| !known.contains(*k)) {
            return Err(Error::UnknownIndeterminate(name.clone()));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    coeff: t.coeff.substitute(a)?,
                    body: t.body.substitute(a)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(FormalSum { dim: self.dim, terms })
    }

    /// Every halfspace appearing in any body.
    pub fn forms(&self) -> impl Iterator<Item = &AffineForm> {
        self.terms.iter().flat_map(|t| t.body.halfspaces.iter())
    }
}

impl From<&WeightedPolyhedron> for FormalSum {
    fn from(wp: &WeightedPolyhedron) -> Self {
        FormalSum::single(Poly::one(), wp.indicator())
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "({}) * 1{}", t.coeff, t.body)?;
        }
        Ok(())
    }
}
