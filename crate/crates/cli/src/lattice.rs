//! Weighted lattice-point sums over boxes and the argument parsers shared by
//! the commands.

use gramcal_core::decomp::brianchon_gram;
use gramcal_core::exact::parse_rational;
use gramcal_core::{Error, Poly, Rational, WeightedPolyhedron};
use num_traits::ToPrimitive;

use crate::error::{input, Result};

/// Upper bound on the number of lattice points visited.
pub const MAX_LATTICE_POINTS: u64 = 1_000_000;
/// Upper bound on points times dimension, i.e. coordinates materialized.
const MAX_LATTICE_COORDS: u64 = 4_000_000;

/// `a1:b1,a2:b2,...` with rational bounds, `a_k <= b_k`.
pub fn parse_box(spec: &str) -> Result<Vec<(Rational, Rational)>> {
    spec.split(',')
        .map(|axis| {
            let axis = axis.trim();
            let (a, b) = axis
                .split_once(':')
                .ok_or_else(|| input(format!("box axis `{axis}` is not of the form a:b")))?;
            let bound = |s: &str| {
                parse_rational(s.trim())
                    .map_err(|_| input(format!("box bound `{}` is not a finite rational", s.trim())))
            };
            let (a, b) = (bound(a)?, bound(b)?);
            if a > b {
                return Err(input(format!("empty box axis {a}:{b}")));
            }
            Ok((a, b))
        })
        .collect()
}

/// Comma-separated rationals.
pub fn parse_xi(spec: &str) -> Result<Vec<Rational>> {
    spec.split(',')
        .map(|c| parse_rational(c.trim()).map_err(|e| input(format!("covector entry `{}`: {e}", c.trim()))))
        .collect()
}

/// Integer points of a box in lexicographic order.
pub fn integer_points(bounds: &[(Rational, Rational)]) -> Result<Vec<Vec<Rational>>> {
    let ranges = bounds
        .iter()
        .map(|(a, b)| {
            let lo = a.ceil().to_integer().to_i64();
            let hi = b.floor().to_integer().to_i64();
            match (lo, hi) {
                (Some(lo), Some(hi)) => Ok((lo, hi)),
                _ => Err(input("box bounds are too large")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total: u64 = 1;
    for &(lo, hi) in &ranges {
        let width = if hi < lo { 0 } else { (hi - lo) as u64 + 1 };
        total = total.saturating_mul(width);
    }
    if total > MAX_LATTICE_POINTS || total.saturating_mul(ranges.len() as u64) > MAX_LATTICE_COORDS {
        return Err(input(format!(
            "box holds more than {MAX_LATTICE_POINTS} lattice points"
        )));
    }
    let mut points = vec![Vec::new()];
    for &(lo, hi) in &ranges {
        points = points
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |k| {
                    let mut q = p.clone();
                    q.push(Rational::from_integer(k.into()));
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSums {
    /// `sum_x 1^w_P(x)`.
    pub direct: Poly,
    /// The same sum with `1^w_P` replaced by its Brianchon-Gram expansion.
    pub decomposed: Poly,
    pub points: usize,
}

pub fn lattice_sums(wp: &WeightedPolyhedron, bounds: &[(Rational, Rational)]) -> Result<LatticeSums> {
    if bounds.len() != wp.dim() {
        return Err(Error::DimensionMismatch {
            expected: wp.dim(),
            found: bounds.len(),
        }
        .into());
    }
    let bg = brianchon_gram(wp)?;
    let points = integer_points(bounds)?;
    let mut direct = Poly::zero();
    let mut decomposed = Poly::zero();
    for x in &points {
        direct += wp.weight_at(x);
        decomposed += bg.evaluate(x)?;
    }
    Ok(LatticeSums {
        direct,
        decomposed,
        points: points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gramcal_core::exact::{int, rat};
    use gramcal_core::fixtures;

    #[test]
    fn box_parsing() {
        assert_eq!(parse_box("-1:4").unwrap(), vec![(int(-1), int(4))]);
        assert_eq!(
            parse_box("0:1/2, -3/2:2").unwrap(),
            vec![(int(0), rat(1, 2)), (rat(-3, 2), int(2))]
        );
        for bad in ["", "0", "0:", "1:0", "0:inf", "a:b", "0:1,"] {
            assert!(parse_box(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn interval_zero_three() {
        let wp = WeightedPolyhedron::uniform(fixtures::interval_ab(int(0), int(3)), Poly::var("q"));
        let s = lattice_sums(&wp, &parse_box("-1:4").unwrap()).unwrap();
        assert_eq!(s.points, 6);
        assert_eq!(s.direct, "2*q + 2".parse().unwrap());
        assert_eq!(s.decomposed, s.direct);
    }

    #[test]
    fn square_and_triangle_corners() {
        let sq = WeightedPolyhedron::uniform(fixtures::unit_square(), Poly::var("q"));
        let b = parse_box("0:1,0:1").unwrap();
        assert_eq!(lattice_sums(&sq, &b).unwrap().direct, "4*q^2".parse().unwrap());
        let t = WeightedPolyhedron::uniform(fixtures::triangle(), Poly::var("q"));
        let s = lattice_sums(&t, &b).unwrap();
        assert_eq!(s.direct, "3*q^2".parse().unwrap());
        assert_eq!(s.decomposed, s.direct);
    }

    #[test]
    fn fractional_bounds_round_inward() {
        let pts = integer_points(&parse_box("-1/2:5/2").unwrap()).unwrap();
        assert_eq!(pts, vec![vec![int(0)], vec![int(1)], vec![int(2)]]);
        assert!(integer_points(&parse_box("1/3:2/3").unwrap()).unwrap().is_empty());
    }
}
