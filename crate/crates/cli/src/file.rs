//! Line-oriented polytope files.
//!
//! ```text
//! # triangle
//! dim 2
//! facet 1 0 0
//! facet 0 1 0 weight=q
//! facet -1 -1 1 weight=1 - q
//! ```
//!
//! `facet u_1 .. u_d mu` is the halfspace `<u, x> + mu >= 0`. The weight is
//! the rest of the line after `weight=` and defaults to `q<k>` for the k-th
//! facet. Everything after `#` is a comment.

use std::fmt;
use std::str::FromStr;

use gramcal_core::exact::parse_rational;
use gramcal_core::indicators::facet_var;
use gramcal_core::{AffineForm, HPolyhedron, Poly, Rational, WeightAssignment, WeightedPolyhedron};

use crate::error::{input, CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetLine {
    pub form: AffineForm,
    /// `None` means the default `q<k>`.
    pub weight: Option<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile {
    pub dim: usize,
    pub facets: Vec<FacetLine>,
}

fn syntax(line: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        line,
        message: message.into(),
    }
}

impl FromStr for PolytopeFile {
    type Err = CliError;

    fn from_str(src: &str) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut facets = Vec::new();
        for (k, raw) in src.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (directive, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match directive {
                "dim" => {
                    if dim.is_some() {
                        return Err(syntax(line_no, "duplicate `dim` line"));
                    }
                    let d: usize = rest
                        .trim()
                        .parse()
                        .map_err(|_| syntax(line_no, format!("invalid dimension `{}`", rest.trim())))?;
                    if d == 0 {
                        return Err(syntax(line_no, "dimension must be at least 1"));
                    }
                    dim = Some(d);
                }
                "facet" => {
                    let d = dim.ok_or_else(|| syntax(line_no, "`facet` before `dim`"))?;
                    facets.push(parse_facet(rest, d, facets.len()).map_err(|m| syntax(line_no, m))?);
                }
                other => return Err(syntax(line_no, format!("unknown directive `{other}`"))),
            }
        }
        let dim = dim.ok_or_else(|| syntax(src.lines().count().max(1), "missing `dim` line"))?;
        Ok(PolytopeFile { dim, facets })
    }
}

fn parse_facet(rest: &str, dim: usize, index: usize) -> std::result::Result<FacetLine, String> {
    let (numbers, weight) = match rest.find("weight=") {
        Some(at) => (&rest[..at], Some(rest[at + "weight=".len()..].trim())),
        None => (rest, None),
    };
    let values = numbers
        .split_whitespace()
        .map(|t| parse_rational(t).map_err(|e| e.to_string()))
        .collect::<std::result::Result<Vec<Rational>, _>>()?;
    if values.len() != dim + 1 {
        return Err(format!(
            "expected {} coefficients and an offset, found {} numbers",
            dim,
            values.len()
        ));
    }
    let mut values = values;
    let offset = values.pop().expect("nonempty");
    let form = AffineForm::new(values, offset);
    if form.is_trivial() {
        return Err("facet normal is zero".into());
    }
    let weight = match weight {
        None => None,
        Some("") => return Err("empty weight expression".into()),
        Some(expr) => {
            let w: Poly = expr.parse().map_err(|e: gramcal_core::Error| e.to_string())?;
            (w != Poly::var(&facet_var(index))).then_some(w)
        }
    };
    Ok(FacetLine { form, weight })
}

impl fmt::Display for PolytopeFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        for facet in &self.facets {
            write!(f, "facet")?;
            for c in facet.form.normal.iter().chain([&facet.form.offset]) {
                write!(f, " {c}")?;
            }
            if let Some(w) = &facet.weight {
                write!(f, " weight={w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl PolytopeFile {
    pub fn from_weighted(wp: &WeightedPolyhedron) -> Self {
        let facets = wp
            .polyhedron
            .halfspaces()
            .iter()
            .zip(wp.weights.as_slice())
            .enumerate()
            .map(|(i, (form, w))| FacetLine {
                form: form.clone(),
                weight: (w != &Poly::var(&facet_var(i))).then(|| w.clone()),
            })
            .collect();
        PolytopeFile {
            dim: wp.dim(),
            facets,
        }
    }

    pub fn weights(&self) -> Vec<Poly> {
        self.facets
            .iter()
            .enumerate()
            .map(|(i, f)| f.weight.clone().unwrap_or_else(|| Poly::var(&facet_var(i))))
            .collect()
    }

    pub fn all_default_weights(&self) -> bool {
        self.facets.iter().all(|f| f.weight.is_none())
    }

    /// Builds the weighted polyhedron, dropping redundant facets together
    /// with their weights. Returns the indices of the facets kept.
    pub fn weighted(&self) -> Result<(WeightedPolyhedron, Vec<usize>)> {
        self.weighted_with(self.weights())
    }

    /// All facets weighted by one indeterminate `q`, as polar mode requires.
    /// Files without explicit weights get `q`; explicit weights must agree.
    pub fn uniformly_weighted(&self) -> Result<(WeightedPolyhedron, Vec<usize>)> {
        if self.all_default_weights() {
            return self.weighted_with(vec![Poly::var("q"); self.facets.len()]);
        }
        let weights = self.weights();
        if weights.windows(2).any(|w| w[0] != w[1]) {
            return Err(input(
                "polar mode needs one weight on every facet; remove the weight= annotations or make them equal",
            ));
        }
        self.weighted_with(weights)
    }

    fn weighted_with(&self, weights: Vec<Poly>) -> Result<(WeightedPolyhedron, Vec<usize>)> {
        let forms = self.facets.iter().map(|f| f.form.clone()).collect();
        let (p, kept): (HPolyhedron, Vec<usize>) = HPolyhedron::build(forms, self.dim)?;
        let weights = kept.iter().map(|&i| weights[i].clone()).collect();
        let wp = WeightedPolyhedron::new(p, WeightAssignment::new(weights))?;
        Ok((wp, kept))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gramcal_core::exact::int;

    const TRIANGLE: &str =
        "# unit triangle\ndim 2\nfacet 1 0 0\nfacet 0 1 0   # y >= 0\nfacet -1 -1 1 weight=1 - q3*q1\n";

    #[test]
    fn parses_and_prints_canonically() {
        let f: PolytopeFile = TRIANGLE.parse().unwrap();
        assert_eq!(f.dim, 2);
        assert_eq!(f.facets.len(), 3);
        assert_eq!(f.facets[2].form, AffineForm::from_ints(&[-1, -1], 1));
        let printed = f.to_string();
        assert_eq!(
            printed,
            "dim 2\nfacet 1 0 0\nfacet 0 1 0\nfacet -1 -1 1 weight=-q1*q3 + 1\n"
        );
        let again: PolytopeFile = printed.parse().unwrap();
        assert_eq!(again, f);
        assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn default_weight_written_explicitly_is_normalized() {
        let f: PolytopeFile = "dim 1\nfacet 1 0 weight=q1\nfacet -1 1 weight=q1"
            .parse()
            .unwrap();
        assert_eq!(f.facets[0].weight, None);
        assert_eq!(f.facets[1].weight, Some(Poly::var("q1")));
    }

    #[test]
    fn rational_entries() {
        let f: PolytopeFile = "dim 1\nfacet 2/4 -3/2\n".parse().unwrap();
        assert_eq!(f.facets[0].form.normal[0], gramcal_core::exact::rat(1, 2));
        assert_eq!(f.to_string(), "dim 1\nfacet 1/2 -3/2\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("facet 1 0\n", 1, "before"),
            ("dim 2\n\nfacet 1 0\n", 3, "expected 2"),
            ("dim 2\nvertex 0 0\n", 2, "unknown directive"),
            ("dim 2\ndim 2\n", 2, "duplicate"),
            ("dim 1\nfacet 1 0 weight=\n", 2, "empty weight"),
            ("dim 1\nfacet 1 0 weight=q1 +\n", 2, "expected"),
            ("dim 1\nfacet 1/0 0\n", 2, "denominator"),
            ("dim 1\nfacet 0 1\n", 2, "zero"),
            ("# nothing\n", 1, "missing"),
        ];
        for (src, line, needle) in cases {
            match src.parse::<PolytopeFile>() {
                Err(CliError::Syntax { line: l, message }) => {
                    assert_eq!(l, line, "{src:?}");
                    assert!(message.contains(needle), "{src:?}: {message}");
                }
                other => panic!("{src:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn uniform_weight_policy() {
        let plain: PolytopeFile = "dim 1\nfacet 1 0\nfacet -1 3\n".parse().unwrap();
        let (wp, _) = plain.uniformly_weighted().unwrap();
        assert!(wp.weights.as_slice().iter().all(|w| w == &Poly::var("q")));
        let same: PolytopeFile = "dim 1\nfacet 1 0 weight=t\nfacet -1 3 weight=t\n"
            .parse()
            .unwrap();
        assert!(same.uniformly_weighted().is_ok());
        let mixed: PolytopeFile = "dim 1\nfacet 1 0 weight=t\nfacet -1 3\n".parse().unwrap();
        assert!(matches!(mixed.uniformly_weighted(), Err(CliError::Input(_))));
    }

    #[test]
    fn redundant_facets_drop_their_weights() {
        let f: PolytopeFile = "dim 1\nfacet 1 0\nfacet 1 1/2 weight=7\nfacet -1 1\n"
            .parse()
            .unwrap();
        let (wp, kept) = f.weighted().unwrap();
        assert_eq!(kept, vec![0, 2]);
        assert_eq!(wp.weights.as_slice(), &[Poly::var("q1"), Poly::var("q3")]);
        assert_eq!(wp.weight_at(&[int(1)]), Poly::var("q3"));
    }
}
