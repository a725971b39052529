//! Acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use gramcal::lattice::{lattice_sums, parse_box};
use gramcal::Report;
use gramcal_core::decomp::{
    brianchon_gram, brion_split, chop_nonsimple, face_expansion, is_polarizing, nonsimple_bg_witness,
    polar_decompose, polar_groups, polar_sum, product_expand, sample_polarizing,
};
use gramcal_core::exact::{int, Assignment};
use gramcal_core::fixtures;
use gramcal_core::indicators::facet_var;
use gramcal_core::polyhedra::{classify_genericity, Genericity};
use gramcal_core::verify::{
    arrangement_cells, identity_check, identity_check_with, mutate, CheckOptions, Mutation,
};
use gramcal_core::{AffineForm, FormalSum, HPolyhedron, Poly, WeightAssignment, WeightedPolyhedron};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{context}: {e}")
}

fn simple_fixtures() -> Vec<(String, HPolyhedron)> {
    let mut out = vec![
        ("interval".to_string(), fixtures::interval()),
        ("triangle".to_string(), fixtures::triangle()),
        ("square".to_string(), fixtures::unit_square()),
        ("cube".to_string(), fixtures::cube()),
        ("simplex".to_string(), fixtures::simplex3()),
    ];
    out.extend((0..20).map(|s| (format!("polygon-{s}"), fixtures::random_simple_polygon(s))));
    out
}

fn check_equal(name: &str, lhs: &FormalSum, rhs: &FormalSum) -> Result<usize, String> {
    match identity_check(lhs, rhs).map_err(err(name))? {
        gramcal_core::verify::Verdict::Equal { cells } => Ok(cells),
        v => Err(format!("{name}: {v}")),
    }
}

fn criterion_1() -> Outcome {
    let mut cells = 0;
    let fx = simple_fixtures();
    for (name, p) in &fx {
        let wp = WeightedPolyhedron::symbolic(p.clone());
        let bg = brianchon_gram(&wp).map_err(err(name))?;
        cells += check_equal(name, &bg, &FormalSum::from(&wp))?;
    }
    Ok(format!("{} fixtures, {cells} cells", fx.len()))
}

fn criterion_2() -> Outcome {
    let fx = simple_fixtures();
    for (name, p) in &fx {
        let n = p.num_facets();
        let ones: Assignment = (0..n).map(|i| (facet_var(i), Poly::one())).collect();
        let bg = brianchon_gram(&WeightedPolyhedron::symbolic(p.clone()))
            .and_then(|s| s.substitute(&ones))
            .map_err(err(name))?;
        ensure(bg.indeterminates().is_empty(), || {
            format!("{name}: weights remain")
        })?;
        let plain = WeightedPolyhedron::new(p.clone(), WeightAssignment::ones(n)).map_err(err(name))?;
        check_equal(name, &bg, &FormalSum::from(&plain))?;
    }
    Ok(format!("{} fixtures", fx.len()))
}

fn criterion_3() -> Outcome {
    let fx = simple_fixtures();
    for (name, p) in &fx {
        let wp = WeightedPolyhedron::symbolic(p.clone());
        let fe = face_expansion(&wp).map_err(err(name))?;
        check_equal(name, &fe, &FormalSum::from(&wp))?;
    }
    for n in 1..=8 {
        let idx: Vec<usize> = (0..n).collect();
        let (lhs, rhs) = product_expand(&idx);
        ensure((lhs - rhs).is_zero(), || {
            format!("product identity fails for |I| = {n}")
        })?;
    }
    Ok(format!("{} fixtures, |I| = 1..8", fx.len()))
}

fn criterion_4() -> Outcome {
    let mut fx = simple_fixtures();
    fx.push(("pyramid".into(), fixtures::pyramid()));
    for (name, p) in &fx {
        let wp = WeightedPolyhedron::symbolic(p.clone());
        let bg = brianchon_gram(&wp).map_err(err(name))?;
        let (g, vertex_part) = brion_split(&bg);
        ensure(g.terms().iter().all(|t| t.body.lineality_dim() >= 1), || {
            format!("{name}: pointed g-term")
        })?;
        ensure(
            vertex_part.terms().iter().all(|t| t.body.lineality_dim() == 0),
            || format!("{name}: vertex term with a line"),
        )?;
        let vertices = p.vertices().map_err(err(name))?.len();
        ensure(vertex_part.len() == vertices, || {
            format!("{name}: {} vertex terms", vertex_part.len())
        })?;
        let joined = g.plus(&vertex_part).map_err(err(name))?;
        check_equal(name, &joined, &FormalSum::from(&wp))?;
    }
    Ok(format!("{} fixtures", fx.len()))
}

fn criterion_5() -> Outcome {
    let mut fx = vec![
        ("interval".to_string(), fixtures::interval()),
        ("triangle".to_string(), fixtures::triangle()),
        ("square".to_string(), fixtures::unit_square()),
    ];
    fx.extend((100..110).map(|s| (format!("polygon-{s}"), fixtures::random_simple_polygon(s))));
    for (name, p) in &fx {
        let d = p.dim();
        let wp = WeightedPolyhedron::uniform(p.clone(), Poly::var("q"));
        let lattice = p.face_lattice().map_err(err(name))?;
        let xi = sample_polarizing(&lattice);
        ensure(is_polarizing(&lattice, &xi), || {
            format!("{name}: sampled covector not polarizing")
        })?;
        let groups = polar_groups(&wp, &xi).map_err(err(name))?;
        let mut seen: Vec<usize> = groups.iter().flat_map(|g| g.faces.iter().copied()).collect();
        seen.sort();
        ensure(seen == (0..lattice.len()).collect::<Vec<_>>(), || {
            format!("{name}: groups do not partition")
        })?;
        let cones = polar_decompose(&wp, &xi).map_err(err(name))?;
        for (cone, g) in cones.iter().zip(&groups) {
            ensure(cone.vertex == g.vertex, || format!("{name}: group order"))?;
            check_equal(
                &format!("{name} group at {:?}", g.vertex),
                &cone.signed_sum(),
                &g.sum,
            )?;
        }
        check_equal(name, &polar_sum(&cones, d), &FormalSum::from(&wp))?;
        let neg: Vec<_> = xi.iter().map(|c| -c.clone()).collect();
        let opposite = polar_decompose(&wp, &neg).map_err(err(name))?;
        for c in &cones {
            let o = opposite
                .iter()
                .find(|o| o.vertex == c.vertex)
                .ok_or(format!("{name}: vertex lost"))?;
            ensure(o.flip_count == d - c.flip_count, || {
                format!("{name}: flip parity at {:?}", c.vertex)
            })?;
        }
    }
    Ok(format!("{} fixtures", fx.len()))
}

fn criterion_6() -> Outcome {
    let opts = CheckOptions::with_cap(16);
    let mut notes = Vec::new();
    for (name, p) in [
        ("pyramid", fixtures::pyramid()),
        ("octahedron", fixtures::octahedron()),
    ] {
        let wp = WeightedPolyhedron::symbolic(p);
        let chop = chop_nonsimple(&wp).map_err(err(name))?;
        let ps = chop.chopped.polyhedron.face_lattice().map_err(err(name))?;
        ensure(classify_genericity(&ps).class == Genericity::Simple, || {
            format!("{name}: P_s not simple")
        })?;
        let witness = nonsimple_bg_witness(&wp, &chop).map_err(err(name))?;
        for check in witness.verify(&wp, &chop, &opts).map_err(err(name))? {
            ensure(check.verdict.is_equal(), || {
                format!("{name} {}: {}", check.name, check.verdict)
            })?;
        }
        notes.push(format!("{name}: {} cuts, 5 identities", chop.cuts.len()));
    }
    Ok(notes.join("; "))
}

fn criterion_7() -> Outcome {
    let tri = WeightedPolyhedron::symbolic(fixtures::triangle());
    let square = WeightedPolyhedron::symbolic(fixtures::unit_square());
    let cube = WeightedPolyhedron::symbolic(fixtures::cube());
    let tri_q = WeightedPolyhedron::uniform(fixtures::triangle(), Poly::var("q"));
    let square_q = WeightedPolyhedron::uniform(fixtures::unit_square(), Poly::var("q"));
    let pyr = WeightedPolyhedron::symbolic(fixtures::pyramid());
    let e = |r: gramcal_core::Result<FormalSum>| r.map_err(|e| e.to_string());
    let brion = |wp: &WeightedPolyhedron| -> Result<FormalSum, String> {
        let (g, v) = brion_split(&e(brianchon_gram(wp))?);
        e(g.plus(&v))
    };
    let chop = chop_nonsimple(&pyr).map_err(|e| e.to_string())?;
    let witness = nonsimple_bg_witness(&pyr, &chop).map_err(|e| e.to_string())?;
    let identities: Vec<(&str, FormalSum, FormalSum)> = vec![
        ("bg triangle", e(brianchon_gram(&tri))?, FormalSum::from(&tri)),
        ("bg square", e(brianchon_gram(&square))?, FormalSum::from(&square)),
        ("bg cube", e(brianchon_gram(&cube))?, FormalSum::from(&cube)),
        ("faces triangle", e(face_expansion(&tri))?, FormalSum::from(&tri)),
        (
            "faces square",
            e(face_expansion(&square))?,
            FormalSum::from(&square),
        ),
        ("brion triangle", brion(&tri)?, FormalSum::from(&tri)),
        (
            "polar triangle",
            polar_sum(
                &polar_decompose(&tri_q, &[int(1), int(2)]).map_err(|e| e.to_string())?,
                2,
            ),
            FormalSum::from(&tri_q),
        ),
        (
            "polar square",
            polar_sum(
                &polar_decompose(&square_q, &[int(1), int(3)]).map_err(|e| e.to_string())?,
                2,
            ),
            FormalSum::from(&square_q),
        ),
        ("pyramid conclusion", witness.f_p.clone(), FormalSum::from(&pyr)),
        (
            "pyramid key difference",
            e(witness.bg_chopped.minus(&witness.f_p))?,
            witness.key_difference.clone(),
        ),
    ];
    let mut detected = 0;
    for (name, lhs, rhs) in &identities {
        check_equal(name, lhs, rhs)?;
        for m in Mutation::ALL {
            let bad = mutate(lhs, m).ok_or(format!("{name}: nothing to mutate"))?;
            let v = identity_check(&bad, rhs).map_err(err(name))?;
            let c = v
                .counterexample()
                .ok_or(format!("{name} {m}: mutation not detected ({v})"))?;
            ensure(c.signs.is_some(), || {
                format!("{name} {m}: witness without a cell")
            })?;
            detected += 1;
        }
    }
    Ok(format!(
        "{detected} mutations over {} identities detected",
        identities.len()
    ))
}

fn criterion_8() -> Outcome {
    let two = vec![
        AffineForm::from_ints(&[1, 0], 0),
        AffineForm::from_ints(&[0, 1], 0),
    ];
    let mut three = two.clone();
    three.push(AffineForm::from_ints(&[1, 1], -1));
    let mut counts = Vec::new();
    for (forms, expected) in [(two, 9), (three, 19)] {
        let cells = arrangement_cells(&forms, 2, 12).map_err(|e| e.to_string())?;
        ensure(cells.cells.len() == expected, || {
            format!("{} cells, expected {expected}", cells.cells.len())
        })?;
        for c in &cells.cells {
            ensure(cells.sign_vector_at(&c.point) == c.signs, || {
                format!("representative {:?} off its cell", c.point)
            })?;
        }
        counts.push(cells.cells.len().to_string());
    }
    Ok(format!("cell counts {}", counts.join(", ")))
}

/// Bounding box of the vertices grown by one unit.
fn box_around(p: &HPolyhedron) -> String {
    let vs = p.vertices().expect("vertices");
    (0..p.dim())
        .map(|k| {
            let lo = vs.iter().map(|v| v.point[k].clone()).min().unwrap() - int(1);
            let hi = vs.iter().map(|v| v.point[k].clone()).max().unwrap() + int(1);
            format!("{lo}:{hi}")
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn criterion_9() -> Outcome {
    let q = Poly::var("q");
    let zero_three = WeightedPolyhedron::uniform(fixtures::interval_ab(int(0), int(3)), q.clone());
    let s = lattice_sums(&zero_three, &parse_box("-1:4").map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let expected: Poly = "2*q + 2".parse().unwrap();
    ensure(s.direct == expected && s.decomposed == expected, || {
        format!("[0,3]: {} vs {}", s.direct, s.decomposed)
    })?;

    let mut fx = simple_fixtures();
    fx.push(("pyramid".into(), fixtures::pyramid()));
    fx.push(("octahedron".into(), fixtures::octahedron()));
    let mut points = 0;
    for (name, p) in &fx {
        for wp in [
            WeightedPolyhedron::symbolic(p.clone()),
            WeightedPolyhedron::uniform(p.clone(), q.clone()),
        ] {
            let b = parse_box(&box_around(p)).map_err(err(name))?;
            let s = lattice_sums(&wp, &b).map_err(err(name))?;
            ensure(s.direct == s.decomposed, || {
                format!("{name}: {} vs {}", s.direct, s.decomposed)
            })?;
            points += s.points;
        }
    }
    Ok(format!(
        "{} fixtures, {points} lattice points; [0,3] -> {expected}",
        fx.len()
    ))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn gramcal(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gramcal"))
        .args(args)
        .output()
        .map_err(|e| format!("running gramcal: {e}"))?;
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    Ok((out.status.code().unwrap_or(-1), text))
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let report_path = dir.path().join("triangle.json");
    let triangle = fixture("triangle.poly");
    let (code, text) = gramcal(&[
        "decompose",
        triangle.to_str().unwrap(),
        "--mode",
        "bg",
        "--out",
        report_path.to_str().unwrap(),
    ])?;
    ensure(code == 0, || format!("decompose exited {code}: {text}"))?;
    let report = Report::from_json(&std::fs::read_to_string(&report_path).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(report.terms.len() == 7 && report.verification.is_equal(), || {
        "unexpected report".into()
    })?;
    let (lhs, rhs) = report.sums().map_err(|e| e.to_string())?;
    let again = identity_check_with(&lhs, &rhs, &CheckOptions::default()).map_err(|e| e.to_string())?;
    ensure(again.is_equal(), || format!("re-verification: {again}"))?;
    let (code, text) = gramcal(&["check", report_path.to_str().unwrap()])?;
    ensure(code == 0, || format!("check exited {code}: {text}"))?;
    let corrupted = fixture("triangle-bg-corrupted.json");
    let (code, text) = gramcal(&["check", corrupted.to_str().unwrap()])?;
    ensure(code == 1, || format!("corrupted report exited {code}: {text}"))?;
    Ok("decompose exit 0, round trip equal, corrupted report exit 1".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("weighted Brianchon-Gram identity", criterion_1),
        ("specialization to unit weights", criterion_2),
        ("face expansion and product identity", criterion_3),
        ("weighted Brion split", criterion_4),
        ("polar decomposition", criterion_5),
        ("non-simple chopping pipeline", criterion_6),
        ("mutation sensitivity", criterion_7),
        ("arrangement cells", criterion_8),
        ("lattice-sum cross-check", criterion_9),
        ("CLI contract", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
