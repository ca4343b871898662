#![no_main]

use evcalc::codec::{convert, Scale, ScaleValue};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let from = Scale::ALL[(selector & 3) as usize];
    let to = Scale::ALL[((selector >> 2) & 3) as usize];
    if let Ok(value) = ScaleValue::parse(from, text) {
        let _ = convert(&value, to);
    }
});
