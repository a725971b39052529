#![no_main]

use gramcal_core::Poly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = src.parse::<Poly>() else { return };
    let back: Poly = p.to_string().parse().expect("canonical output parses");
    assert_eq!(back, p);
});
