use gramcal_core::decomp::{chop_nonsimple, nonsimple_bg_witness};
use gramcal_core::exact::rat;
use gramcal_core::fixtures;
use gramcal_core::polyhedra::{classify_genericity, Genericity};
use gramcal_core::verify::{arrangement_cells, CheckOptions};
use gramcal_core::{FormalSum, Indicator, Poly, WeightedPolyhedron};

/// The octahedron pipeline needs all 8 facets plus 6 cuts.
const PIPELINE_CAP: usize = 16;

fn run_pipeline(wp: &WeightedPolyhedron) {
    let chop = chop_nonsimple(wp).unwrap();
    let l = chop.chopped.polyhedron.face_lattice().unwrap();
    assert_eq!(classify_genericity(&l).class, Genericity::Simple);
    let w = nonsimple_bg_witness(wp, &chop).unwrap();
    let checks = w
        .verify(wp, &chop, &CheckOptions::with_cap(PIPELINE_CAP))
        .unwrap();
    assert_eq!(checks.len(), 5);
    for c in &checks {
        assert!(c.verdict.is_equal(), "{}: {}", c.name, c.verdict);
    }
}

#[test]
fn pyramid_pipeline() {
    run_pipeline(&WeightedPolyhedron::symbolic(fixtures::pyramid()));
}

#[test]
fn octahedron_pipeline() {
    run_pipeline(&WeightedPolyhedron::symbolic(fixtures::octahedron()));
}

#[test]
fn pyramid_key_difference_vanishes_off_the_cut_cap() {
    let wp = WeightedPolyhedron::symbolic(fixtures::pyramid());
    let chop = chop_nonsimple(&wp).unwrap();
    let w = nonsimple_bg_witness(&wp, &chop).unwrap();
    // Apex cone: the four slant facets, weights q2..q5.
    let apex_cone = Indicator::new(
        3,
        fixtures::pyramid().halfspaces()[1..].to_vec(),
        (2..=5).map(|i| Poly::var(&format!("q{i}"))).collect(),
    )
    .unwrap();
    let forms: Vec<_> = FormalSum::from(&chop.chopped).forms().cloned().collect();
    let cells = arrangement_cells(&forms, 3, PIPELINE_CAP).unwrap();
    let mut inside = 0;
    for cell in &cells.cells {
        let x = &cell.point;
        let cone_weight = apex_cone.weight_at(x);
        let value = w.key_difference.evaluate(x).unwrap();
        if x[2] > rat(1, 2) && !cone_weight.is_zero() {
            inside += 1;
            assert_eq!(value, -cone_weight);
        } else {
            assert!(value.is_zero(), "nonzero at {x:?}");
        }
    }
    assert!(inside > 0);
}
