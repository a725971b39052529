use proptest::prelude::*;

use gramcal::decompose::{decompose, verify, Mode};
use gramcal::file::{FacetLine, PolytopeFile};
use gramcal::Report;
use gramcal_core::exact::rat;
use gramcal_core::fixtures;
use gramcal_core::verify::CheckOptions;
use gramcal_core::{AffineForm, Poly, WeightedPolyhedron};

fn weight() -> impl Strategy<Value = Option<Poly>> {
    prop_oneof![
        Just(None),
        (-3i64..=3).prop_map(|c| Some(Poly::int(c))),
        (1usize..=4, 0u32..=2, -2i64..=2)
            .prop_map(|(v, e, c)| Some(Poly::var(&format!("q{v}")).pow(e) + Poly::int(c))),
        Just(Some(Poly::one() - Poly::var("q"))),
    ]
}

fn polytope_file() -> impl Strategy<Value = PolytopeFile> {
    (1usize..=3).prop_flat_map(|dim| {
        let facet = (prop::collection::vec((-5i64..=5, 1i64..=4), dim + 1), weight()).prop_filter_map(
            "zero normal",
            move |(coeffs, w)| {
                let mut vals: Vec<_> = coeffs.iter().map(|&(n, d)| rat(n, d)).collect();
                let offset = vals.pop().unwrap();
                let form = AffineForm::new(vals, offset);
                (!form.is_trivial()).then_some((form, w))
            },
        );
        prop::collection::vec(facet, 0..6).prop_map(move |fs| PolytopeFile {
            dim,
            facets: fs
                .into_iter()
                .enumerate()
                .map(|(i, (form, w))| FacetLine {
                    form,
                    weight: w.filter(|w| w != &Poly::var(&format!("q{}", i + 1))),
                })
                .collect(),
        })
    })
}

proptest! {
    #[test]
    fn polytope_files_round_trip(f in polytope_file()) {
        let printed = f.to_string();
        let parsed: PolytopeFile = printed.parse().unwrap();
        prop_assert_eq!(&parsed, &f);
        prop_assert_eq!(parsed.to_string(), printed);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored(f in polytope_file()) {
        let noisy: String = f
            .to_string()
            .lines()
            .map(|l| format!("  {l}   # note\n\n"))
            .collect();
        prop_assert_eq!(noisy.parse::<PolytopeFile>().unwrap(), f);
    }

    #[test]
    fn reports_round_trip(seed in 0u64..40, mode in prop_oneof![Just(Mode::Bg), Just(Mode::Faces), Just(Mode::Brion)]) {
        let wp = WeightedPolyhedron::symbolic(fixtures::random_simple_polygon(seed));
        let report = verify(&decompose(&wp, mode, None).unwrap(), &CheckOptions::default()).unwrap();
        let back = Report::from_json(&report.to_json()).unwrap();
        prop_assert_eq!(&back, &report);
        let (lhs, _) = back.sums().unwrap();
        prop_assert_eq!(lhs.len(), report.terms.len());
    }
}

fn token_soup() -> impl Strategy<Value = String> {
    let token = prop_oneof![
        Just("dim".to_string()),
        Just("facet".to_string()),
        Just("weight=".to_string()),
        Just("\n".to_string()),
        Just("#".to_string()),
        "-?[0-9]{1,3}(/[0-9]{1,2})?",
        "[qy][0-9]?",
        "[-+*^() ]",
    ];
    prop::collection::vec(token, 0..40).prop_map(|ts| ts.join(" "))
}

proptest! {
    #[test]
    fn parsers_never_panic(s in "[ -~\n]{0,120}") {
        let _ = s.parse::<PolytopeFile>();
        let _ = s.parse::<Poly>();
        let _ = gramcal_core::exact::parse_rational(&s);
        let _ = gramcal::lattice::parse_box(&s);
        let _ = gramcal::lattice::parse_xi(&s);
        if let Ok(r) = Report::from_json(&s) {
            let _ = r.sums();
        }
    }

    #[test]
    fn structured_inputs_round_trip_when_accepted(s in token_soup()) {
        if let Ok(f) = s.parse::<PolytopeFile>() {
            prop_assert_eq!(f.to_string().parse::<PolytopeFile>().unwrap(), f);
        }
        if let Ok(p) = s.parse::<Poly>() {
            prop_assert_eq!(p.to_string().parse::<Poly>().unwrap(), p);
        }
    }
}
