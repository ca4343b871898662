#![no_main]

use evcalc::codec::parse_mass;
use evcalc::{interval_to_mass, mass_to_interval};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = parse_mass(text) {
        let sum = m.m_h() + m.m_not_h() + m.m_theta();
        assert!((sum - 1.0).abs() <= 1e-12);
        let back = interval_to_mass(&mass_to_interval(&m));
        assert!((back.m_h() - m.m_h()).abs() <= 1e-15);
        assert!((back.m_not_h() - m.m_not_h()).abs() <= 1e-15);
    }
});
