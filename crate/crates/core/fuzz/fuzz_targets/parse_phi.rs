#![no_main]

use libfuzzer_sys::fuzz_target;
use qaks_core::angle::parse_phi;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(phi) = parse_phi(text) {
        assert!(phi.is_finite());
        let _ = qaks_core::build_qaks(phi).expect("finite angle builds");
    }
});
