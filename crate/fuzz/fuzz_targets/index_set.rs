#![no_main]

use harmdesign::fisher::HarmonicIndexSet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ts) = HarmonicIndexSet::parse(s) {
        assert!(!ts.is_empty());
        assert!(ts.indices().iter().all(|t| t % 2 == 0 && *t >= 2));
        assert!(ts.indices().windows(2).all(|w| w[0] > w[1]));
        let list: Vec<String> = ts.indices().iter().map(u32::to_string).collect();
        assert_eq!(HarmonicIndexSet::parse(&list.join(",")).unwrap(), ts);
    }
});
