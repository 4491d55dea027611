#![no_main]

use harmdesign::designcheck::PointSet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(y) = PointSet::from_json(s) {
        let again = PointSet::from_json(&y.to_json().to_string()).expect("own output must load");
        assert_eq!(again, y);
    }
});
