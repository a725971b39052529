#![no_main]

use gramcal::PolytopeFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = src.parse::<PolytopeFile>() else {
        return;
    };
    let printed = file.to_string();
    let again: PolytopeFile = printed.parse().expect("canonical output parses");
    assert_eq!(again, file);
    assert_eq!(again.to_string(), printed);
});
