#![no_main]

use libfuzzer_sys::fuzz_target;
use toric_fano::input::parse_config;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(input) = parse_config(text) {
            let a = &input.config;
            assert!(!a.is_empty());
            assert!(a.dim() <= a.ambient_dim());
        }
    }
});
