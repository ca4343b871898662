#![no_main]

use evcalc::codec::parse_counts;
use evcalc::{counts_from_interval, interval_from_counts};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = parse_counts(text) {
        assert!(0.0 <= c.w_plus() && c.w_plus() <= c.w_total());
        let again = parse_counts(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(c, again);
        let fi = interval_from_counts(&c);
        assert!(fi.lower() <= fi.upper());
        let _ = counts_from_interval(&fi);
    }
});
