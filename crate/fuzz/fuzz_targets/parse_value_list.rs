#![no_main]

use evcalc::codec::{belief_from_value, parse_value_list};
use evcalc::combine_interval;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(values) = parse_value_list(text) else {
        return;
    };
    let mut acc = None;
    for v in &values {
        let Ok(x) = belief_from_value(v) else { return };
        acc = match acc {
            None => Some(x),
            Some(a) => match combine_interval(&a, &x) {
                Ok(c) => Some(c),
                Err(_) => return,
            },
        };
    }
    if let Some(a) = acc {
        assert!(0.0 <= a.bel() && a.bel() <= a.pl() && a.pl() <= 1.0);
    }
});
