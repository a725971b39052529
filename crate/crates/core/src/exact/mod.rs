//! Exact scalar and symbolic arithmetic.

mod affine;
pub mod fm;
mod linalg;
mod poly;

pub use affine::AffineForm;
pub use fm::{fm_feasible, Constraint, Relation};
pub use linalg::{rank, solve_affine, AffineSolution};
pub use poly::{Assignment, Monomial, Poly, Var};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational in canonical form (positive denominator, reduced).
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q`, `p` or a finite decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_integer(num).ok_or_else(bad)?;
        let d = parse_integer(den).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("`{s}` has a zero denominator")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 64 {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let w = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            parse_integer(whole).ok_or_else(bad)?
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut value = Rational::from_integer(w.abs()) + Rational::new(f, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    parse_integer(s).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub fn format_point(x: &[Rational]) -> String {
    let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Smallest positive factor turning `values` into coprime integers.
pub(crate) fn primitive_scale(values: &[&Rational]) -> Rational {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for v in values {
        if !v.is_zero() {
            lcm = lcm.lcm(v.denom());
        }
    }
    let mut gcd = BigInt::zero();
    for v in values {
        if !v.is_zero() {
            let scaled = v.numer() * (&lcm / v.denom());
            gcd = gcd.gcd(&scaled);
        }
    }
    if gcd.is_zero() {
        Rational::one()
    } else {
        Rational::new(lcm, gcd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("1.5").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/").is_err());
        assert!(parse_rational("--1").is_err());
    }

    #[test]
    fn primitive_scaling() {
        let a = rat(1, 2);
        let b = rat(3, 4);
        // 1/2, 3/4 -> 2, 3
        assert_eq!(primitive_scale(&[&a, &b]), int(4));
        let c = int(6);
        let d = int(4);
        assert_eq!(primitive_scale(&[&c, &d]), rat(1, 2));
    }
}
