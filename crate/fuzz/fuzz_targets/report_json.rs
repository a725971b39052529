#![no_main]

use gramcal::Report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(report) = Report::from_json(src) else {
        return;
    };
    let _ = report.sums();
    let _ = report.summary();
    assert_eq!(
        Report::from_json(&report.to_json()).expect("serialized report parses"),
        report
    );
});
