#![no_main]

use gramcal_core::exact::parse_rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(r) = parse_rational(src) else { return };
    assert_eq!(
        parse_rational(&r.to_string()).expect("canonical output parses"),
        r
    );
});
