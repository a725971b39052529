//! Exact equality of formal sums.
//!
//! Every weighted indicator in a formal sum is constant on each cell of the
//! arrangement formed by all of its halfspace boundaries, because membership
//! and the set of tight facets are read off the sign vector. Comparing both
//! sides at one representative per cell therefore decides equality exactly.

use std::collections::HashSet;
use std::fmt;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{fm_feasible, rat, solve_affine, AffineForm, Constraint, Poly, Rational};
use crate::indicators::FormalSum;
use crate::{Error, Result};

pub const DEFAULT_CELL_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(v: &Rational) -> Sign {
        if v.is_negative() {
            Sign::Neg
        } else if v.is_zero() {
            Sign::Zero
        } else {
            Sign::Pos
        }
    }

    fn constraint(self, h: &AffineForm) -> Constraint {
        match self {
            Sign::Neg => Constraint::pos(-h),
            Sign::Zero => Constraint::zero(h.clone()),
            Sign::Pos => Constraint::pos(h.clone()),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Neg => "-",
            Sign::Zero => "0",
            Sign::Pos => "+",
        })
    }
}

pub fn format_signs(signs: &[Sign]) -> String {
    signs.iter().map(ToString::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub signs: Vec<Sign>,
    pub point: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct CellDecomposition {
    pub dim: usize,
    pub hyperplanes: Vec<AffineForm>,
    pub cells: Vec<Cell>,
}

impl CellDecomposition {
    pub fn sign_vector_at(&self, x: &[Rational]) -> Vec<Sign> {
        self.hyperplanes.iter().map(|h| Sign::of(&h.eval(x))).collect()
    }
}

/// Canonical, deduplicated hyperplanes of `forms` in first-seen order;
/// trivial forms are dropped.
pub fn canonical_hyperplanes<'a>(forms: impl IntoIterator<Item = &'a AffineForm>) -> Vec<AffineForm> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for f in forms {
        if let Some(c) = f.canonical_hyperplane() {
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
    }
    out
}

/// All nonempty sign-vector cells of the arrangement of `forms`, each with an
/// exact representative point. Cells of every dimension are included.
pub fn arrangement_cells(forms: &[AffineForm], dim: usize, cap: usize) -> Result<CellDecomposition> {
    for f in forms {
        f.check_dim(dim)?;
    }
    let hyperplanes = canonical_hyperplanes(forms);
    if hyperplanes.len() > cap {
        return Err(Error::CellCapExceeded {
            found: hyperplanes.len(),
            cap,
        });
    }
    let mut cells = Vec::new();
    let root = vec![Rational::zero(); dim];
    let mut signs = Vec::with_capacity(hyperplanes.len());
    let mut constraints = Vec::with_capacity(hyperplanes.len());
    descend(&hyperplanes, dim, &mut signs, &mut constraints, root, &mut cells)?;
    Ok(CellDecomposition {
        dim,
        hyperplanes,
        cells,
    })
}

fn descend(
    hyperplanes: &[AffineForm],
    dim: usize,
    signs: &mut Vec<Sign>,
    constraints: &mut Vec<Constraint>,
    witness: Vec<Rational>,
    out: &mut Vec<Cell>,
) -> Result<()> {
    let k = signs.len();
    if k == hyperplanes.len() {
        out.push(Cell {
            signs: signs.clone(),
            point: witness,
        });
        return Ok(());
    }
    let h = &hyperplanes[k];
    let here = Sign::of(&h.eval(&witness));
    for s in [Sign::Neg, Sign::Zero, Sign::Pos] {
        constraints.push(s.constraint(h));
        // The parent witness already realises one of the three signs.
        let next = if s == here {
            Some(witness.clone())
        } else {
            fm_feasible(constraints, dim)?
        };
        if let Some(w) = next {
            signs.push(s);
            descend(hyperplanes, dim, signs, constraints, w, out)?;
            signs.pop();
        }
        constraints.pop();
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Sign vector of the witness cell (cell mode only).
    pub signs: Option<Vec<Sign>>,
    pub point: Vec<Rational>,
    pub lhs: Poly,
    pub rhs: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Exact: both sides agree on every cell.
    Equal {
        cells: usize,
    },
    /// Heuristic: no disagreement found at sampled points.
    Consistent {
        trials: usize,
    },
    Unequal(Box<Counterexample>),
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal { .. })
    }

    /// Equal, or consistent under sampling.
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Unequal(_))
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Unequal(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal { cells } => write!(f, "equal on all {cells} cells"),
            Verdict::Consistent { trials } => write!(f, "consistent over {trials} sampling trials"),
            Verdict::Unequal(c) => {
                write!(f, "unequal at {}", crate::exact::format_point(&c.point))?;
                if let Some(s) = &c.signs {
                    write!(f, " (cell {})", format_signs(s))?;
                }
                write!(f, ": lhs = {}, rhs = {}", c.lhs, c.rhs)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub cell_cap: usize,
    /// `(trials, seed)` for random sampling when the cell cap is exceeded.
    pub fallback: Option<(usize, u64)>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            cell_cap: DEFAULT_CELL_CAP,
            fallback: None,
        }
    }
}

impl CheckOptions {
    pub fn with_cap(cell_cap: usize) -> Self {
        CheckOptions {
            cell_cap,
            ..Default::default()
        }
    }
}

fn check_dims(lhs: &FormalSum, rhs: &FormalSum) -> Result<()> {
    if lhs.dim() != rhs.dim() {
        return Err(Error::DimensionMismatch {
            expected: lhs.dim(),
            found: rhs.dim(),
        });
    }
    Ok(())
}

/// Exact cell-mode check with the default cap.
pub fn identity_check(lhs: &FormalSum, rhs: &FormalSum) -> Result<Verdict> {
    identity_check_with(lhs, rhs, &CheckOptions::default())
}

/// Cell mode when within `opts.cell_cap`, else random sampling if a fallback
/// is configured.
pub fn identity_check_with(lhs: &FormalSum, rhs: &FormalSum, opts: &CheckOptions) -> Result<Verdict> {
    check_dims(lhs, rhs)?;
    let forms: Vec<AffineForm> = lhs.forms().chain(rhs.forms()).cloned().collect();
    let cells = match arrangement_cells(&forms, lhs.dim(), opts.cell_cap) {
        Ok(c) => c,
        Err(Error::CellCapExceeded { .. }) if opts.fallback.is_some() => {
            let (trials, seed) = opts.fallback.unwrap();
            return random_point_check(lhs, rhs, trials, seed);
        }
        Err(e) => return Err(e),
    };
    for cell in &cells.cells {
        let l = lhs.evaluate(&cell.point)?;
        let r = rhs.evaluate(&cell.point)?;
        if l != r {
            return Ok(Verdict::Unequal(Box::new(Counterexample {
                signs: Some(cell.signs.clone()),
                point: cell.point.clone(),
                lhs: l,
                rhs: r,
            })));
        }
    }
    Ok(Verdict::Equal {
        cells: cells.cells.len(),
    })
}

/// Heuristic comparison at sampled rational points: per trial one generic
/// point, one point on a random hyperplane and one on the intersection of a
/// random pair. Deterministic in `seed`. `Consistent` is not a proof.
pub fn random_point_check(lhs: &FormalSum, rhs: &FormalSum, trials: usize, seed: u64) -> Result<Verdict> {
    check_dims(lhs, rhs)?;
    if trials == 0 {
        return Err(Error::Input("at least one sampling trial is required".into()));
    }
    let dim = lhs.dim();
    let hyperplanes = canonical_hyperplanes(lhs.forms().chain(rhs.forms()));
    // Sampling box large enough to reach past every hyperplane's offset.
    let reach = hyperplanes
        .iter()
        .map(|h| {
            let lead = h
                .normal
                .iter()
                .map(|c| c.abs())
                .max()
                .unwrap_or_else(Rational::zero);
            (h.offset.abs() / lead).ceil().to_integer()
        })
        .max()
        .and_then(|b| i64::try_from(b).ok())
        .unwrap_or(0)
        .saturating_add(2)
        .min(1 << 20);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_point = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
        (0..dim)
            .map(|_| {
                let den = rng.gen_range(1..=16);
                rat(rng.gen_range(-reach * den..=reach * den), den)
            })
            .collect()
    };
    let compare = |x: Vec<Rational>| -> Result<Option<Verdict>> {
        let l = lhs.evaluate(&x)?;
        let r = rhs.evaluate(&x)?;
        Ok((l != r).then(|| {
            Verdict::Unequal(Box::new(Counterexample {
                signs: None,
                point: x,
                lhs: l,
                rhs: r,
            }))
        }))
    };
    for _ in 0..trials {
        let generic = random_point(&mut rng);
        if let Some(v) = compare(generic)? {
            return Ok(v);
        }
        if hyperplanes.is_empty() {
            continue;
        }
        let k = hyperplanes.len();
        let picks = [
            vec![rng.gen_range(0..k)],
            vec![rng.gen_range(0..k), rng.gen_range(0..k)],
        ];
        for pick in picks {
            let eqs: Vec<AffineForm> = pick.iter().map(|&i| hyperplanes[i].clone()).collect();
            let sol = solve_affine(&eqs, dim)?;
            let Some(base) = sol.point() else { continue };
            let mut x = base.to_vec();
            for d in sol.directions() {
                let den = rng.gen_range(1..=16);
                let t = rat(rng.gen_range(-reach * den..=reach * den), den);
                for (xi, di) in x.iter_mut().zip(d) {
                    *xi += &t * di;
                }
            }
            if let Some(v) = compare(x)? {
                return Ok(v);
            }
        }
    }
    Ok(Verdict::Consistent { trials })
}

/// Single-term perturbations used to probe that a verified identity is tight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Negate one coefficient.
    FlipSign,
    /// Replace one facet weight `w` by `w + 1`.
    BumpWeight,
    /// Move one halfspace outward by `1/7`.
    ShiftOffset,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::FlipSign, Mutation::BumpWeight, Mutation::ShiftOffset];
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mutation::FlipSign => "flip-sign",
            Mutation::BumpWeight => "bump-weight",
            Mutation::ShiftOffset => "shift-offset",
        })
    }
}

/// Applies `m` to the first term whose body has a halfspace, touching that
/// body's last halfspace. Returns `None` when no term has a halfspace.
pub fn mutate(s: &FormalSum, m: Mutation) -> Option<FormalSum> {
    let mut out = s.clone();
    let k = out.terms().iter().position(|t| !t.body.halfspaces.is_empty())?;
    let term = &mut out.terms_mut()[k];
    let j = term.body.halfspaces.len() - 1;
    match m {
        Mutation::FlipSign => term.coeff = -term.coeff.clone(),
        Mutation::BumpWeight => term.body.weights[j] = &term.body.weights[j] + &Poly::one(),
        Mutation::ShiftOffset => {
            let h = &mut term.body.halfspaces[j];
            h.offset += rat(1, 7);
        }
    }
    Some(out)
}
