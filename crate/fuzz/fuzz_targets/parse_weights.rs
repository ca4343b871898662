#![no_main]

use evcalc::codec::parse_weights;
use evcalc::{belief_from_weights, weights_from_belief};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(w) = parse_weights(text) {
        let again = parse_weights(&serde_json::to_string(&w).unwrap()).unwrap();
        assert_eq!(w, again);
        let _ = weights_from_belief(&belief_from_weights(&w));
    }
});
