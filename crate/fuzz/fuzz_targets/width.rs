#![no_main]

use harmdesign::cli::parse_width;
use harmdesign::exact::{int, BigRational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(w) = parse_width(s) {
        assert!(w > BigRational::from_integer(0.into()) && w <= int(1));
    }
});
