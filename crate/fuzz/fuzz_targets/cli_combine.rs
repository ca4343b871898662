#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, mut stdin)) = data.split_first() else {
        return;
    };
    let rule = if selector & 1 == 0 { "dempster" } else { "lu" };
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = evcalc_cli::run(
        ["evcalc", "combine", "--rule", rule],
        &mut stdin,
        &mut out,
        &mut err,
    );
    assert!((0..=3).contains(&code));
});
