#![no_main]

use evcalc::codec::parse_belief_interval;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(iv) = parse_belief_interval(text) {
        assert!(0.0 <= iv.bel() && iv.bel() <= iv.pl() && iv.pl() <= 1.0);
        let again = parse_belief_interval(&serde_json::to_string(&iv).unwrap()).unwrap();
        assert_eq!(iv, again);
    }
});
