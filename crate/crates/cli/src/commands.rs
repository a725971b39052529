//! The subcommands, returning whether everything verified.

use std::fmt::Write;
use std::fs;
use std::path::{Path, PathBuf};

use gramcal_core::polyhedra::classify_genericity;
use gramcal_core::verify::{identity_check_with, CheckOptions};

use crate::decompose::{decompose, verify, Mode};
use crate::error::{input, Result};
use crate::file::PolytopeFile;
use crate::lattice::{lattice_sums, parse_box, parse_xi};
use crate::render::render_svg;
use crate::report::{verification_json, Report};

/// Result of a command: text for stdout and whether it verified.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub verified: bool,
}

pub fn read_polytope(path: &Path) -> Result<PolytopeFile> {
    let src = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    src.parse().map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load(path: &Path, mode: Mode, xi: Option<&str>) -> Result<crate::Decomposition> {
    let file = read_polytope(path)?;
    let (wp, _) = match mode {
        Mode::Polar => file.uniformly_weighted()?,
        _ => file.weighted()?,
    };
    if xi.is_some() && mode != Mode::Polar {
        return Err(input("--xi only applies to --mode polar"));
    }
    let xi = xi.map(parse_xi).transpose()?;
    decompose(&wp, mode, xi)
}

pub fn check_options(cell_cap: usize, fallback_samples: Option<usize>, seed: u64) -> CheckOptions {
    CheckOptions {
        cell_cap,
        fallback: fallback_samples.map(|n| (n, seed)),
    }
}

pub fn cmd_decompose(
    path: &Path,
    mode: Mode,
    xi: Option<&str>,
    out: Option<&PathBuf>,
    opts: &CheckOptions,
) -> Result<Outcome> {
    let d = load(path, mode, xi)?;
    let report = verify(&d, opts)?;
    let json = report.to_json();
    let output = match out {
        Some(p) => {
            fs::write(p, &json)?;
            report.summary() + "\n"
        }
        None => json,
    };
    Ok(Outcome {
        output,
        verified: report.all_equal(),
    })
}

/// Re-reads a report and re-verifies its main identity.
pub fn cmd_check(path: &Path, opts: &CheckOptions) -> Result<Outcome> {
    let src = fs::read_to_string(path)?;
    let report = Report::from_json(&src)?;
    let (lhs, rhs) = report.sums()?;
    let fresh = verification_json(&identity_check_with(&lhs, &rhs, opts)?);
    let agrees = fresh.verdict == report.verification.verdict;
    let mut output = format!(
        "recorded verdict: {}\nrecomputed verdict: {}",
        report.verification.verdict, fresh.verdict
    );
    if let Some(w) = &fresh.witness {
        let _ = write!(
            output,
            " at ({}): lhs = {}, rhs = {}",
            w.point.join(", "),
            w.lhs,
            w.rhs
        );
    }
    if !agrees {
        output += "\nthe report does not match its own terms";
    }
    output.push('\n');
    Ok(Outcome {
        output,
        verified: agrees && fresh.is_equal(),
    })
}

pub fn cmd_lattice_sum(path: &Path, spec: &str) -> Result<Outcome> {
    let (wp, _) = read_polytope(path)?.weighted()?;
    let bounds = parse_box(spec)?;
    let sums = lattice_sums(&wp, &bounds)?;
    let agree = sums.direct == sums.decomposed;
    let output = format!(
        "{}\n# {} lattice points; decomposition sum {}: {}\n",
        sums.direct,
        sums.points,
        if agree { "agrees" } else { "DISAGREES" },
        sums.decomposed
    );
    Ok(Outcome {
        output,
        verified: agree,
    })
}

pub fn cmd_render(path: &Path, mode: Mode, xi: Option<&str>, out: &Path) -> Result<Outcome> {
    let d = load(path, mode, xi)?;
    let svg = render_svg(&d)?;
    fs::write(out, svg)?;
    Ok(Outcome {
        output: format!("wrote {} panels to {}\n", d.sum.len() + 1, out.display()),
        verified: true,
    })
}

pub fn cmd_info(path: &Path) -> Result<Outcome> {
    let file = read_polytope(path)?;
    let (wp, kept) = file.weighted()?;
    let p = &wp.polyhedron;
    let mut out = String::new();
    let _ = writeln!(out, "dim: {}", p.dim());
    let _ = writeln!(out, "facets: {}", p.num_facets());
    if kept.len() != file.facets.len() {
        let dropped: Vec<String> = (1..=file.facets.len())
            .filter(|k| !kept.contains(&(k - 1)))
            .map(|k| k.to_string())
            .collect();
        let _ = writeln!(out, "redundant facets dropped: {}", dropped.join(", "));
    }
    for (i, (h, w)) in p.halfspaces().iter().zip(wp.weights.as_slice()).enumerate() {
        let _ = writeln!(out, "  [{i}] {h} >= 0  weight {w}");
    }
    let bounded = p.is_bounded()?;
    let _ = writeln!(out, "bounded: {bounded}");
    let lattice = p.face_lattice()?;
    let counts: Vec<String> = lattice.count_by_dim().iter().map(|c| c.to_string()).collect();
    let _ = writeln!(out, "faces by dimension: {}", counts.join(" "));
    let _ = writeln!(out, "faces: {}", lattice.len());
    let report = classify_genericity(&lattice);
    let _ = writeln!(out, "genericity: {}", report.class);
    for v in &report.nonsimple_vertices {
        let facets: Vec<String> = v.active.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(
            out,
            "  non-simple vertex ({}) on facets {}",
            crate::report::point_strings(&v.point).join(", "),
            facets.join(", ")
        );
    }
    Ok(Outcome {
        output: out,
        verified: true,
    })
}
