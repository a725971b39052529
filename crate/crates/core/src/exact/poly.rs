//! Commutative polynomial ring over the rationals in named indeterminates.
//!
//! Facet weights `q1, q2, ...` live here. Terms are kept in graded
//! lexicographic order, which only affects printing.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::{Error, Result};

/// A named indeterminate. Ordered naturally: alphabetic prefix first, then
/// numeric suffix, so `q2 < q10`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var(String);

impl Var {
    pub fn new(name: &str) -> Result<Self> {
        if is_valid_name(name) {
            Ok(Var(name.to_string()))
        } else {
            Err(Error::Parse(format!(
                "`{name}` is not a valid indeterminate name"
            )))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn split(&self) -> (&str, Option<u64>) {
        let digits = self.0.bytes().rev().take_while(u8::is_ascii_digit).count();
        let (prefix, suffix) = self.0.split_at(self.0.len() - digits);
        (prefix, suffix.parse().ok())
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        let (pa, na) = self.split();
        let (pb, nb) = other.split();
        pa.cmp(pb).then(na.cmp(&nb)).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Power product of indeterminates; sorted by variable, exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                match a.0.cmp(&b.0) {
                    // `self` has a positive exponent on an earlier variable.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match a.1.cmp(&b.1) {
                        Ordering::Equal => {}
                        ord => return ord,
                    },
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Values for a (partial) substitution of indeterminates.
pub type Assignment = BTreeMap<String, Poly>;

/// Polynomial with rational coefficients. No zero coefficients are stored,
/// so structural equality is ring equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(super::int(n))
    }

    /// The indeterminate `name`. Panics on an invalid name; use
    /// [`Poly::try_var`] for untrusted input.
    pub fn var(name: &str) -> Self {
        Poly::try_var(name).expect("invalid indeterminate name")
    }

    pub fn try_var(name: &str) -> Result<Self> {
        let v = Var::new(name)?;
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), Rational::one());
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes the named indeterminates; unassigned ones stay symbolic.
    /// This is a ring homomorphism.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Poly> {
        for name in assignment.keys() {
            if !is_valid_name(name) {
                return Err(Error::UnknownIndeterminate(name.clone()));
            }
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            let mut rest = Vec::new();
            for (v, e) in &m.0 {
                match assignment.get(v.name()) {
                    Some(value) => term = &term * &value.pow(*e),
                    None => rest.push((v.clone(), *e)),
                }
            }
            if !rest.is_empty() {
                term = &term * &Poly::monomial(Monomial(rest));
            }
            out += term;
        }
        Ok(out)
    }

    fn monomial(m: Monomial) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, Rational::one());
        p
    }

    /// Evaluates at a full rational assignment.
    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.0 {
                let x = values
                    .get(v.name())
                    .ok_or_else(|| Error::MissingIndeterminate(v.name().to_string()))?;
                t *= num_traits::pow(x.clone(), *e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Evaluates at Gaussian-rational values `re + i*im` by substituting
    /// through an auxiliary indeterminate and reducing `i^2 = -1`. Returns the
    /// real and imaginary parts.
    pub fn evaluate_gaussian(
        &self,
        values: &BTreeMap<String, (Rational, Rational)>,
    ) -> Result<(Rational, Rational)> {
        const UNIT: &str = "__gaussian_unit";
        let unit = Poly::var(UNIT);
        let assignment: Assignment = values
            .iter()
            .map(|(k, (re, im))| (k.clone(), Poly::constant(re.clone()) + unit.scale(im)))
            .collect();
        let expanded = self.substitute(&assignment)?;
        let (mut re, mut im) = (Rational::zero(), Rational::zero());
        for (m, c) in expanded.terms() {
            let mut e = 0;
            for (v, k) in m.factors() {
                if v.name() == UNIT {
                    e = *k;
                } else {
                    return Err(Error::MissingIndeterminate(v.name().to_string()));
                }
            }
            match e % 4 {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                _ => im -= c,
            }
        }
        Ok((re, im))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl std::str::FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_poly(s)
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign<Poly> for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        *self -= &rhs;
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl MulAssign<&Poly> for Poly {
    fn mul_assign(&mut self, rhs: &Poly) {
        *self = &*self * rhs;
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::one();
        for p in iter {
            acc *= &p;
        }
        acc
    }
}

mod parse {
    //! `expr := term (('+' | '-') term)*`
    //! `term := factor ('*' factor)*`
    //! `factor := '-' factor | atom ('^' digits)?`
    //! `atom := integer ('/' integer)? | name | '(' expr ')'`

    use super::*;

    const MAX_DEPTH: usize = 64;
    const MAX_EXPONENT: u32 = 64;
    const MAX_TERMS: usize = 4096;
    const MAX_DEGREE: u32 = 256;
    const MAX_COEFF_BITS: u64 = 4096;

    struct Parser<'a> {
        src: &'a str,
        pos: usize,
        depth: usize,
    }

    pub(super) fn parse_poly(src: &str) -> Result<Poly> {
        let mut p = Parser {
            src,
            pos: 0,
            depth: 0,
        };
        let value = p.expr()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(value)
    }

    impl Parser<'_> {
        fn error(&self, msg: &str) -> Error {
            Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
        }

        fn skip_ws(&mut self) {
            while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
                self.pos += 1;
            }
        }

        fn peek(&self) -> Option<u8> {
            self.src.as_bytes().get(self.pos).copied()
        }

        fn eat(&mut self, c: u8) -> bool {
            self.skip_ws();
            if self.peek() == Some(c) {
                self.pos += 1;
                true
            } else {
                false
            }
        }

        fn expr(&mut self) -> Result<Poly> {
            self.depth += 1;
            if self.depth > MAX_DEPTH {
                return Err(self.error("expression nested too deeply"));
            }
            let mut acc = self.term()?;
            loop {
                if self.eat(b'+') {
                    acc += self.term()?;
                } else if self.eat(b'-') {
                    acc -= self.term()?;
                } else {
                    break;
                }
            }
            self.depth -= 1;
            Ok(acc)
        }

        fn term(&mut self) -> Result<Poly> {
            let mut acc = self.factor()?;
            while self.eat(b'*') {
                let rhs = self.factor()?;
                acc = self.checked_mul(&acc, &rhs)?;
            }
            Ok(acc)
        }

        fn factor(&mut self) -> Result<Poly> {
            if self.eat(b'-') {
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(self.error("expression nested too deeply"));
                }
                let inner = self.factor()?;
                self.depth -= 1;
                return Ok(-inner);
            }
            let base = self.atom()?;
            if self.eat(b'^') {
                self.skip_ws();
                let digits = self.digits();
                let e: u32 = digits.parse().map_err(|_| self.error("expected an exponent"))?;
                if e > MAX_EXPONENT {
                    return Err(self.error("exponent too large"));
                }
                let mut acc = Poly::one();
                for _ in 0..e {
                    acc = self.checked_mul(&acc, &base)?;
                }
                return Ok(acc);
            }
            Ok(base)
        }

        /// Multiplication that refuses to build oversized results.
        fn checked_mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
            let degree = a.degree().unwrap_or(0) + b.degree().unwrap_or(0);
            if a.len().saturating_mul(b.len()) > MAX_TERMS || degree > MAX_DEGREE {
                return Err(self.error("expression expands too far"));
            }
            let product = a * b;
            let bits = product
                .terms
                .values()
                .map(|c| c.numer().bits() + c.denom().bits())
                .max()
                .unwrap_or(0);
            if bits > MAX_COEFF_BITS {
                return Err(self.error("coefficient too large"));
            }
            Ok(product)
        }

        fn digits(&mut self) -> &str {
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            &self.src[start..self.pos]
        }

        fn atom(&mut self) -> Result<Poly> {
            self.skip_ws();
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    if !self.eat(b')') {
                        return Err(self.error("expected `)`"));
                    }
                    Ok(inner)
                }
                Some(c) if c.is_ascii_digit() => {
                    let num = self.digits().to_string();
                    let mut text = num;
                    let save = self.pos;
                    if self.eat(b'/') {
                        self.skip_ws();
                        let den = self.digits();
                        if den.is_empty() {
                            self.pos = save;
                            return Err(self.error("expected a denominator"));
                        }
                        text = format!("{text}/{den}");
                    }
                    super::super::parse_rational(&text).map(Poly::constant)
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self
                        .peek()
                        .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                    {
                        self.pos += 1;
                    }
                    Poly::try_var(&self.src[start..self.pos])
                }
                _ => Err(self.error("expected a number, indeterminate or `(`")),
            }
        }
    }
}
