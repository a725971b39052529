use num_traits::{One, Zero};

use super::{AffineForm, Rational};
use crate::Result;

/// Solution set of a system of affine equations `form(x) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    Unique(Vec<Rational>),
    /// `point + span(directions)`, directions linearly independent.
    Subspace {
        point: Vec<Rational>,
        directions: Vec<Vec<Rational>>,
    },
    Infeasible,
}

impl AffineSolution {
    pub fn dim(&self) -> Option<usize> {
        match self {
            AffineSolution::Unique(_) => Some(0),
            AffineSolution::Subspace { directions, .. } => Some(directions.len()),
            AffineSolution::Infeasible => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            AffineSolution::Unique(p) | AffineSolution::Subspace { point: p, .. } => Some(p),
            AffineSolution::Infeasible => None,
        }
    }

    pub fn directions(&self) -> &[Vec<Rational>] {
        match self {
            AffineSolution::Subspace { directions, .. } => directions,
            _ => &[],
        }
    }
}

/// Row-reduces `rows` in place; returns the pivot column of each nonzero row.
fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..rows[i].len() {
                    let delta = &rows[r][j] * &factor;
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Exact Gaussian elimination on `{x in R^dim : form(x) = 0 for all forms}`.
pub fn solve_affine(equations: &[AffineForm], dim: usize) -> Result<AffineSolution> {
    for e in equations {
        e.check_dim(dim)?;
    }
    // Augmented rows [normal | -offset].
    let mut rows: Vec<Vec<Rational>> = equations
        .iter()
        .map(|e| {
            let mut row = e.normal.clone();
            row.push(-&e.offset);
            row
        })
        .collect();
    let pivots = rref(&mut rows, dim + 1);
    if pivots.last() == Some(&dim) {
        return Ok(AffineSolution::Infeasible);
    }
    let mut point = vec![Rational::zero(); dim];
    for (r, &c) in pivots.iter().enumerate() {
        point[c] = rows[r][dim].clone();
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Ok(AffineSolution::Unique(point));
    }
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = vec![Rational::zero(); dim];
            d[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                d[c] = -&rows[r][f];
            }
            d
        })
        .collect();
    Ok(AffineSolution::Subspace { point, directions })
}

/// Rank of a family of vectors of equal length.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let ncols = first.len();
    let mut rows = vectors.to_vec();
    rref(&mut rows, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn unique_point() {
        let eqs = [
            AffineForm::from_ints(&[1, 0], 0),
            AffineForm::from_ints(&[0, 1], 0),
        ];
        assert_eq!(
            solve_affine(&eqs, 2).unwrap(),
            AffineSolution::Unique(vec![int(0), int(0)])
        );
    }

    #[test]
    fn line_through_one_zero() {
        let eqs = [AffineForm::from_ints(&[1, 1], -1)];
        let sol = solve_affine(&eqs, 2).unwrap();
        assert_eq!(
            sol,
            AffineSolution::Subspace {
                point: vec![int(1), int(0)],
                directions: vec![vec![int(-1), int(1)]],
            }
        );
    }

    #[test]
    fn contradictory() {
        let eqs = [AffineForm::from_ints(&[1], 0), AffineForm::from_ints(&[1], -1)];
        assert_eq!(solve_affine(&eqs, 1).unwrap(), AffineSolution::Infeasible);
    }

    #[test]
    fn dimension_mismatch() {
        let eqs = [AffineForm::from_ints(&[1, 2], 0)];
        assert!(solve_affine(&eqs, 3).is_err());
    }

    #[test]
    fn empty_system_is_whole_space() {
        let sol = solve_affine(&[], 3).unwrap();
        assert_eq!(sol.dim(), Some(3));
    }

    #[test]
    fn solutions_resubstitute_to_zero() {
        let eqs = [
            AffineForm::new(vec![rat(1, 2), int(3), int(-1)], rat(2, 7)),
            AffineForm::new(vec![int(1), int(1), int(1)], int(-5)),
        ];
        let sol = solve_affine(&eqs, 3).unwrap();
        let p = sol.point().unwrap();
        for e in &eqs {
            assert!(e.eval(p).is_zero());
            for d in sol.directions() {
                assert!(e.eval_linear(d).is_zero());
            }
        }
        assert_eq!(rank(&eqs.iter().map(|e| e.normal.clone()).collect::<Vec<_>>()), 2);
    }
}
