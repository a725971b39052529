use std::fmt;

use num_traits::{Signed, Zero};

use super::{dot, primitive_scale, Rational};
use crate::{Error, Result};

/// Affine function `x -> <normal, x> + offset` on `R^d`.
///
/// As a halfspace it means `<normal, x> + offset >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineForm {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl AffineForm {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        AffineForm { normal, offset }
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        AffineForm {
            normal: normal.iter().map(|&v| super::int(v)).collect(),
            offset: super::int(offset),
        }
    }

    /// The coordinate form `x_axis`.
    pub fn coordinate(dim: usize, axis: usize) -> Self {
        let mut normal = vec![Rational::zero(); dim];
        normal[axis] = super::int(1);
        AffineForm::new(normal, Rational::zero())
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        debug_assert_eq!(x.len(), self.dim());
        dot(&self.normal, x) + &self.offset
    }

    /// Linear part only, `<normal, v>`.
    pub fn eval_linear(&self, v: &[Rational]) -> Rational {
        dot(&self.normal, v)
    }

    pub fn is_trivial(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        AffineForm {
            normal: self.normal.iter().map(|v| v * factor).collect(),
            offset: &self.offset * factor,
        }
    }

    pub fn shifted(&self, delta: &Rational) -> Self {
        AffineForm {
            normal: self.normal.clone(),
            offset: &self.offset + delta,
        }
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, other: &AffineForm, factor: &Rational) -> Self {
        AffineForm {
            normal: self
                .normal
                .iter()
                .zip(&other.normal)
                .map(|(a, b)| a + b * factor)
                .collect(),
            offset: &self.offset + &other.offset * factor,
        }
    }

    /// Positive rescaling to coprime integer coefficients. Preserves the
    /// halfspace, not just the hyperplane.
    pub fn primitive(&self) -> Self {
        let mut values: Vec<&Rational> = self.normal.iter().collect();
        values.push(&self.offset);
        self.scale(&primitive_scale(&values))
    }

    /// Canonical representative of the hyperplane `{self = 0}`: primitive
    /// integer coefficients with the first nonzero normal entry positive.
    /// Returns `None` for trivial forms.
    pub fn canonical_hyperplane(&self) -> Option<Self> {
        let lead = self.normal.iter().find(|v| !v.is_zero())?;
        let p = self.primitive();
        Some(if lead.is_negative() { -p } else { p })
    }
}

impl std::ops::Neg for AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        AffineForm {
            normal: self.normal.into_iter().map(|v| -v).collect(),
            offset: -self.offset,
        }
    }
}

impl std::ops::Neg for &AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        -self.clone()
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.normal.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != super::int(1) {
                write!(f, "{mag}*")?;
            }
            write!(f, "x{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "{}", self.offset)
        } else if !self.offset.is_zero() {
            let sign = if self.offset.is_negative() { "-" } else { "+" };
            write!(f, " {sign} {}", self.offset.abs())
        } else {
            Ok(())
        }
    }
}
