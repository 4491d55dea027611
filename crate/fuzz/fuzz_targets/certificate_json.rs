#![no_main]

use harmdesign::fisher::{certificate_from_json, certificate_to_json, verify_certificate};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = certificate_from_json(s) {
        // Verification may reject, but must not panic.
        let _ = verify_certificate(&cert);
        let out = certificate_to_json(&cert).to_string();
        let again = certificate_from_json(&out).expect("own output must load");
        assert_eq!(certificate_to_json(&again).to_string(), out);
    }
});
