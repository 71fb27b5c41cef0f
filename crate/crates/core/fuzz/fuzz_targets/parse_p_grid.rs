#![no_main]

use libfuzzer_sys::fuzz_target;
use qaks_core::PGrid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(grid) = PGrid::parse(text) {
        assert!(!grid.is_empty());
        assert!(grid.points().iter().all(|p| (0.0..=1.0).contains(p)));
    }
});
