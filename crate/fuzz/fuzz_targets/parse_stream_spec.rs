#![no_main]

use evcalc::codec::parse_stream_spec;
use evcalc::{check_limits, run_dual_track, UnitWeights};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = parse_stream_spec(text) {
        if spec.steps() <= 512 {
            let traj = run_dual_track(&spec, &UnitWeights::UNIT).unwrap();
            assert_eq!(traj.rows.len(), spec.steps() + 1);
            let _ = check_limits(&traj, &spec, &UnitWeights::UNIT);
        }
    }
});
