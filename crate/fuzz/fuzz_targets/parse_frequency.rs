#![no_main]

use evcalc::codec::parse_frequency;
use evcalc::{combine_frequency, frequency, FrequencyInterval};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(fi) = parse_frequency(text) {
        let again = parse_frequency(&serde_json::to_string(&fi).unwrap()).unwrap();
        assert_eq!(fi, again);
        let _ = frequency(&fi);
        let _ = combine_frequency(&fi, &fi);
        let _ = combine_frequency(&fi, &FrequencyInterval::IGNORANT);
    }
});
