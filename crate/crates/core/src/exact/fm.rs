//! Fourier-Motzkin feasibility for mixed systems of `>= 0`, `> 0` and `= 0`
//! constraints, with an exact witness.
//!
//! Equalities are eliminated first by substitution. Each derived inequality
//! carries a strictness flag that is set when either parent is strict. The
//! witness is recovered by back-substitution, picking the midpoint of the
//! open interval left for each variable.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::{AffineForm, Rational};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `form >= 0`
    NonNeg,
    /// `form > 0`
    Pos,
    /// `form = 0`
    Zero,
}

impl Relation {
    pub fn holds(self, value: &Rational) -> bool {
        match self {
            Relation::NonNeg => !value.is_negative(),
            Relation::Pos => value.is_positive(),
            Relation::Zero => value.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub form: AffineForm,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(form: AffineForm, relation: Relation) -> Self {
        Constraint { form, relation }
    }

    pub fn non_neg(form: AffineForm) -> Self {
        Constraint::new(form, Relation::NonNeg)
    }

    pub fn pos(form: AffineForm) -> Self {
        Constraint::new(form, Relation::Pos)
    }

    pub fn zero(form: AffineForm) -> Self {
        Constraint::new(form, Relation::Zero)
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        self.relation.holds(&self.form.eval(x))
    }
}

#[derive(Clone, Debug)]
struct Ineq {
    form: AffineForm,
    strict: bool,
}

/// Decides feasibility of `system` over `R^dim`. Returns a witness satisfying
/// every relation exactly when feasible.
pub fn fm_feasible(system: &[Constraint], dim: usize) -> Result<Option<Vec<Rational>>> {
    for c in system {
        c.form.check_dim(dim)?;
    }
    let mut equalities: Vec<AffineForm> = Vec::new();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for c in system {
        match c.relation {
            Relation::Zero => equalities.push(c.form.clone()),
            Relation::NonNeg => ineqs.push(Ineq {
                form: c.form.clone(),
                strict: false,
            }),
            Relation::Pos => ineqs.push(Ineq {
                form: c.form.clone(),
                strict: true,
            }),
        }
    }

    // x_j = expr(x), expr has a zero coefficient on j and on every
    // previously substituted variable.
    let mut substitutions: Vec<(usize, AffineForm)> = Vec::new();
    while let Some(eq) = equalities.pop() {
        let Some(j) = eq.normal.iter().position(|v| !v.is_zero()) else {
            if !eq.offset.is_zero() {
                return Ok(None);
            }
            continue;
        };
        let factor = -Rational::one() / &eq.normal[j];
        let mut expr = eq.scale(&factor);
        expr.normal[j] = Rational::zero();
        let apply = |f: &AffineForm| -> AffineForm {
            if f.normal[j].is_zero() {
                return f.clone();
            }
            let mut g = f.add_scaled(&expr, &f.normal[j]);
            g.normal[j] = Rational::zero();
            g
        };
        for e in equalities.iter_mut() {
            *e = apply(e);
        }
        for q in ineqs.iter_mut() {
            q.form = apply(&q.form);
        }
        substitutions.push((j, expr));
    }

    let Some(mut current) = normalize(ineqs) else {
        return Ok(None);
    };
    let mut levels: Vec<(usize, Vec<Ineq>)> = Vec::new();
    for j in 0..dim {
        if current.iter().all(|q| q.form.normal[j].is_zero()) {
            continue;
        }
        let mut next = Vec::new();
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for q in &current {
            let a = &q.form.normal[j];
            if a.is_zero() {
                next.push(q.clone());
            } else if a.is_positive() {
                lower.push(q);
            } else {
                upper.push(q);
            }
        }
        for lo in &lower {
            for up in &upper {
                // (-a_up) * lo + a_lo * up cancels x_j.
                let a_lo = &lo.form.normal[j];
                let a_up = -&up.form.normal[j];
                let mut form = lo.form.scale(&a_up).add_scaled(&up.form, a_lo);
                form.normal[j] = Rational::zero();
                next.push(Ineq {
                    form,
                    strict: lo.strict || up.strict,
                });
            }
        }
        levels.push((j, std::mem::take(&mut current)));
        let Some(reduced) = normalize(next) else {
            return Ok(None);
        };
        current = reduced;
    }

    let mut x = vec![Rational::zero(); dim];
    for (j, constraints) in levels.iter().rev() {
        x[*j] = choose_value(*j, constraints, &x);
    }
    for (j, expr) in substitutions.iter().rev() {
        x[*j] = expr.eval(&x);
    }
    debug_assert!(system.iter().all(|c| c.holds_at(&x)));
    Ok(Some(x))
}

/// Rescales to primitive form, drops satisfied trivial constraints, keeps
/// the tightest constraint per normal direction. `None` when a trivial
/// constraint is violated.
fn normalize(ineqs: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut best: HashMap<Vec<Rational>, (Rational, bool)> = HashMap::new();
    let mut order: Vec<Vec<Rational>> = Vec::new();
    for q in ineqs {
        if q.form.is_trivial() {
            let ok = if q.strict {
                q.form.offset.is_positive()
            } else {
                !q.form.offset.is_negative()
            };
            if !ok {
                return None;
            }
            continue;
        }
        let values: Vec<&Rational> = q.form.normal.iter().collect();
        let scaled = q.form.scale(&super::primitive_scale(&values));
        match best.get_mut(&scaled.normal) {
            Some((offset, strict)) => {
                if scaled.offset < *offset {
                    *offset = scaled.offset;
                    *strict = q.strict;
                } else if scaled.offset == *offset {
                    *strict |= q.strict;
                }
            }
            None => {
                order.push(scaled.normal.clone());
                best.insert(scaled.normal, (scaled.offset, q.strict));
            }
        }
    }
    Some(
        order
            .into_iter()
            .map(|normal| {
                let (offset, strict) = best.remove(&normal).unwrap();
                Ineq {
                    form: AffineForm::new(normal, offset),
                    strict,
                }
            })
            .collect(),
    )
}

fn choose_value(j: usize, constraints: &[Ineq], x: &[Rational]) -> Rational {
    let mut lower: Option<(Rational, bool)> = None;
    let mut upper: Option<(Rational, bool)> = None;
    for q in constraints {
        let a = &q.form.normal[j];
        if a.is_zero() {
            continue;
        }
        let mut rest = q.form.clone();
        rest.normal[j] = Rational::zero();
        let bound = -rest.eval(x) / a;
        if a.is_positive() {
            match &mut lower {
                Some((b, s)) if *b > bound => {}
                Some((b, s)) if *b == bound => *s |= q.strict,
                _ => lower = Some((bound, q.strict)),
            }
        } else {
            match &mut upper {
                Some((b, s)) if *b < bound => {}
                Some((b, s)) if *b == bound => *s |= q.strict,
                _ => upper = Some((bound, q.strict)),
            }
        }
    }
    let one = Rational::one();
    match (lower, upper) {
        (Some((lo, _)), Some((hi, _))) => {
            if lo == hi {
                lo
            } else {
                (lo + hi) / Rational::from_integer(2.into())
            }
        }
        (Some((lo, strict)), None) => {
            if strict {
                lo + one
            } else {
                lo
            }
        }
        (None, Some((hi, strict))) => {
            if strict {
                hi - one
            } else {
                hi
            }
        }
        (None, None) => Rational::zero(),
    }
}
