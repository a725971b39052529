#![no_main]

use gramcal::lattice::{integer_points, parse_box};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(bounds) = parse_box(src) else { return };
    if let Ok(points) = integer_points(&bounds) {
        assert!(points
            .iter()
            .all(|p| p.iter().zip(&bounds).all(|(x, (lo, hi))| lo <= x && x <= hi)));
    }
});
