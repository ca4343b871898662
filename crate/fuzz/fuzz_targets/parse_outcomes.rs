#![no_main]

use evcalc::convergence::parse_outcomes;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(outcomes) = parse_outcomes(text) {
            assert!(outcomes.len() <= text.len());
        }
    }
});
