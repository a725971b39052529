#![no_main]

use gramcal::lattice::parse_xi;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(xi) = parse_xi(src) {
        assert!(!xi.is_empty());
    }
});
