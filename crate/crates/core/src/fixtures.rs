//! Standard polytopes used by tests, examples and the acceptance suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{int, rat, AffineForm, Rational};
use crate::HPolyhedron;

fn build(forms: Vec<AffineForm>, dim: usize) -> HPolyhedron {
    HPolyhedron::new(forms, dim).expect("fixture is a valid polyhedron")
}

/// `[a, b]` as `{x - a >= 0, -x + b >= 0}`.
pub fn interval_ab(a: Rational, b: Rational) -> HPolyhedron {
    build(
        vec![
            AffineForm::new(vec![int(1)], -a),
            AffineForm::new(vec![int(-1)], b),
        ],
        1,
    )
}

pub fn interval() -> HPolyhedron {
    interval_ab(int(0), int(1))
}

/// `{x >= 0, y >= 0, 1 - x - y >= 0}`.
pub fn triangle() -> HPolyhedron {
    build(
        vec![
            AffineForm::from_ints(&[1, 0], 0),
            AffineForm::from_ints(&[0, 1], 0),
            AffineForm::from_ints(&[-1, -1], 1),
        ],
        2,
    )
}

/// `[0, 1]^d` with facets ordered `x_1 >= 0, 1 - x_1 >= 0, x_2 >= 0, ...`.
pub fn unit_cube(dim: usize) -> HPolyhedron {
    let mut forms = Vec::new();
    for axis in 0..dim {
        let e = AffineForm::coordinate(dim, axis);
        forms.push(e.clone());
        forms.push((-e).shifted(&int(1)));
    }
    build(forms, dim)
}

pub fn unit_square() -> HPolyhedron {
    unit_cube(2)
}

pub fn cube() -> HPolyhedron {
    unit_cube(3)
}

/// Standard 3-simplex `conv{0, e1, e2, e3}`.
pub fn simplex3() -> HPolyhedron {
    build(
        vec![
            AffineForm::from_ints(&[1, 0, 0], 0),
            AffineForm::from_ints(&[0, 1, 0], 0),
            AffineForm::from_ints(&[0, 0, 1], 0),
            AffineForm::from_ints(&[-1, -1, -1], 1),
        ],
        3,
    )
}

/// Square pyramid over `[-1, 1]^2` with apex `(0, 0, 1)`.
pub fn pyramid() -> HPolyhedron {
    build(
        vec![
            AffineForm::from_ints(&[0, 0, 1], 0),
            AffineForm::from_ints(&[-1, 0, -1], 1),
            AffineForm::from_ints(&[1, 0, -1], 1),
            AffineForm::from_ints(&[0, -1, -1], 1),
            AffineForm::from_ints(&[0, 1, -1], 1),
        ],
        3,
    )
}

/// `conv{±e1, ±e2, ±e3}` as `{1 - s·x >= 0 : s in {±1}^3}`.
pub fn octahedron() -> HPolyhedron {
    let mut forms = Vec::new();
    for s0 in [1, -1] {
        for s1 in [1, -1] {
            for s2 in [1, -1] {
                forms.push(AffineForm::from_ints(&[-s0, -s1, -s2], 1));
            }
        }
    }
    build(forms, 3)
}

/// Convex polygon with at most 8 edges and rational vertices, deterministic
/// in `seed`. Polygons are always simple polytopes.
pub fn random_simple_polygon(seed: u64) -> HPolyhedron {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let points: Vec<[Rational; 2]> = (0..8)
            .map(|_| {
                let den = rng.gen_range(1..=4);
                [
                    rat(rng.gen_range(-12..=12), den),
                    rat(rng.gen_range(-12..=12), den),
                ]
            })
            .collect();
        let hull = convex_hull(points);
        if hull.len() < 3 {
            continue;
        }
        let forms = (0..hull.len())
            .map(|i| {
                let a = &hull[i];
                let b = &hull[(i + 1) % hull.len()];
                // Interior lies to the left of a -> b.
                let normal = vec![-(&b[1] - &a[1]), &b[0] - &a[0]];
                let offset = -(&normal[0] * &a[0] + &normal[1] * &a[1]);
                AffineForm::new(normal, offset).primitive()
            })
            .collect();
        return build(forms, 2);
    }
}

fn cross(o: &[Rational; 2], a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Counter-clockwise hull without collinear points (monotone chain).
fn convex_hull(mut pts: Vec<[Rational; 2]>) -> Vec<[Rational; 2]> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let zero = int(0);
    let mut lower: Vec<[Rational; 2]> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= zero {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<[Rational; 2]> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= zero {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
