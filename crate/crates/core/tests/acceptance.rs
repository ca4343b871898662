//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Randomised criteria draw from ChaCha8 with fixed seeds, so every run
//! checks the same samples.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use evcalc::dempster::{combine_general, GeneralMass};
use evcalc::{
    belief_from_weights, bernoulli_combine, check_limits, combine_frequency, combine_interval,
    combine_lu, combine_mass, combine_points, combine_with_point, interval_from_counts,
    lu_from_belpl, mass_to_interval, multiply_combine, run_dual_track, weights_from_belief,
    BeliefInterval, Combination, ConflictReport, EvidenceCounts, EvidenceWeights,
    FrequencyInterval, MassAssignment, StreamSpec, UnitWeights,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 10_000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_mass(rng: &mut ChaCha8Rng) -> MassAssignment {
    loop {
        let (a, b, c): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
        let sum = a + b + c;
        if sum > 0.0 {
            if let Ok(m) = MassAssignment::new(a / sum, b / sum, c / sum) {
                return m;
            }
        }
    }
}

/// A random interval with strictly positive width (finite weight).
fn random_finite_interval(rng: &mut ChaCha8Rng) -> BeliefInterval {
    loop {
        let iv = mass_to_interval(&random_mass(rng));
        if iv.width() > 0.0 {
            return iv;
        }
    }
}

fn defect_reproduction() -> Outcome {
    let start = Instant::now();
    let spec = StreamSpec::frequency_faithful(0.7, 2000).unwrap();
    let traj = run_dual_track(&spec, &UnitWeights::UNIT).unwrap();
    let elapsed = start.elapsed();
    let r = traj.last();
    let pass = r.ds_bel >= 0.999
        && r.ds_pl >= 0.999
        && (r.lu_l - 0.7).abs() <= 0.001
        && (r.lu_u - 0.7).abs() <= 0.001
        && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "bel={:.6} pl={:.6} l={:.6} u={:.6} runtime={:?}",
            r.ds_bel, r.ds_pl, r.lu_l, r.lu_u, elapsed
        ),
    )
}

fn preserved_chances() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for q in [0.0, 0.5, 1.0] {
        let spec = StreamSpec::frequency_faithful(q, 2000).unwrap();
        let traj = run_dual_track(&spec, &UnitWeights::UNIT).unwrap();
        let err = (traj.last().ds_bel - q).abs();
        pass &= err <= 1e-3;
        parts.push(format!("q={q}: |bel-q|={err:.2e}"));
    }
    outcome(pass, parts.join(", "))
}

fn delta_limit_profile() -> Outcome {
    let spec = StreamSpec::delta_profile(2.0, 10_000).unwrap();
    let traj = run_dual_track(&spec, &UnitWeights::UNIT).unwrap();
    let report = check_limits(&traj, &spec, &UnitWeights::UNIT);
    let Some(check) = report.delta else {
        return outcome(false, "no profile step recorded".into());
    };
    let err = (check.observed - 0.119_202_922).abs();
    outcome(
        err <= 1e-6,
        format!(
            "t={} bel={:.9} |bel-0.119202922|={err:.2e}",
            check.t, check.observed
        ),
    )
}

fn rule_conjugacy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_5A_00_04);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..SAMPLES {
        let x1 = random_finite_interval(&mut rng);
        let x2 = random_finite_interval(&mut rng);
        let Ok(combined) = combine_interval(&x1, &x2) else {
            failures += 1;
            continue;
        };
        let lhs = lu_from_belpl(&combined);
        let Ok(rhs) = combine_lu(&lu_from_belpl(&x1), &lu_from_belpl(&x2)) else {
            failures += 1;
            continue;
        };
        worst = worst
            .max((lhs.lower() - rhs.lower()).abs())
            .max((lhs.upper() - rhs.upper()).abs());
    }
    outcome(
        failures == 0 && worst <= 1e-9,
        format!("{SAMPLES} pairs, max deviation {worst:.2e}, failures {failures}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_5A_00_05);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..SAMPLES {
        let m1 = random_mass(&mut rng);
        let m2 = random_mass(&mut rng);
        let direct = combine_mass(&m1, &m2);
        let oracle = combine_general(
            &GeneralMass::from_binary(&m1),
            &GeneralMass::from_binary(&m2),
        );
        match (direct, oracle) {
            (Ok(d), Ok(o)) => {
                worst = worst
                    .max((d.m_h() - o.mass(0b01)).abs())
                    .max((d.m_not_h() - o.mass(0b10)).abs())
                    .max((d.m_theta() - o.mass(0b11)).abs());
            }
            _ => failures += 1,
        }
    }
    outcome(
        failures == 0 && worst <= 1e-12,
        format!("{SAMPLES} pairs, max deviation {worst:.2e}, failures {failures}"),
    )
}

fn inverse_pair() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_5A_00_06);
    let mut worst: f64 = 0.0;
    for _ in 0..SAMPLES {
        let p = rng.gen_range(0.0..=20.0);
        let n = rng.gen_range(0.0..=20.0);
        let w = EvidenceWeights::finite(p, n).unwrap();
        match weights_from_belief(&belief_from_weights(&w)) {
            EvidenceWeights::Finite { w_plus, w_minus } => {
                let rel = |got: f64, want: f64| {
                    if want == 0.0 {
                        got.abs()
                    } else {
                        (got - want).abs() / want
                    }
                };
                worst = worst.max(rel(w_plus, p)).max(rel(w_minus, n));
            }
            EvidenceWeights::Infinite { .. } => worst = f64::INFINITY,
        }
    }
    outcome(
        worst <= 1e-9,
        format!("{SAMPLES} samples in [0,20]^2, max relative error {worst:.2e}"),
    )
}

fn lu_rule_is_count_addition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_5A_00_07);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    let counts = |rng: &mut ChaCha8Rng| {
        let total = rng.gen_range(0.0..1000.0);
        EvidenceCounts::new(rng.gen_range(0.0..=total), total).unwrap()
    };
    for _ in 0..SAMPLES {
        let c1 = counts(&mut rng);
        let c2 = counts(&mut rng);
        let pooled = interval_from_counts(&c1.pooled(&c2));
        match combine_lu(&interval_from_counts(&c1), &interval_from_counts(&c2)) {
            Ok(fi) => {
                worst = worst
                    .max((fi.lower() - pooled.lower()).abs())
                    .max((fi.upper() - pooled.upper()).abs());
            }
            Err(_) => failures += 1,
        }
    }
    outcome(
        failures == 0 && worst <= 1e-12,
        format!("{SAMPLES} pairs, max deviation {worst:.2e}, failures {failures}"),
    )
}

fn special_cases() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0_5A_00_08);
    let mut bernoulli_worst: f64 = 0.0;
    let mut multiply_worst: f64 = 0.0;
    for _ in 0..SAMPLES {
        let s1: f64 = rng.gen();
        let s2: f64 = rng.gen();
        let r = combine_interval(
            &BeliefInterval::new(s1, 1.0).unwrap(),
            &BeliefInterval::new(s2, 1.0).unwrap(),
        )
        .unwrap();
        bernoulli_worst = bernoulli_worst
            .max((r.bel() - bernoulli_combine(s1, s2)).abs())
            .max((r.pl() - 1.0).abs());

        let b1 = rng.gen_range(1e-6..1.0 - 1e-6);
        let b2 = rng.gen_range(1e-6..1.0 - 1e-6);
        let r = combine_interval(
            &BeliefInterval::bayesian(b1).unwrap(),
            &BeliefInterval::bayesian(b2).unwrap(),
        )
        .unwrap();
        multiply_worst = multiply_worst.max((r.bel() - multiply_combine(b1, b2).unwrap()).abs());
    }
    outcome(
        bernoulli_worst <= 1e-12 && multiply_worst <= 1e-12,
        format!(
            "bernoulli max dev {bernoulli_worst:.2e}, multiplicative max dev {multiply_worst:.2e}"
        ),
    )
}

fn track_agreement() -> Outcome {
    let specs = [
        (
            "faithful q=0.5",
            StreamSpec::frequency_faithful(0.5, 10_000).unwrap(),
        ),
        (
            "faithful q=0.7",
            StreamSpec::frequency_faithful(0.7, 10_000).unwrap(),
        ),
        (
            "bernoulli q=0.3 seed=2024",
            StreamSpec::bernoulli(0.3, 2024, 10_000).unwrap(),
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, spec) in specs {
        let dev = run_dual_track(&spec, &UnitWeights::UNIT)
            .unwrap()
            .track_deviation;
        pass &= dev <= 1e-6;
        parts.push(format!("{name}: {dev:.2e}"));
    }
    outcome(
        pass,
        format!(
            "max per-step deviation over 10^4 steps: {}",
            parts.join(", ")
        ),
    )
}

fn infinite_evidence_protocol() -> Outcome {
    let point = |v| FrequencyInterval::point(v).unwrap();
    let interval = |l, u| FrequencyInterval::new(l, u).unwrap();
    let checks = [
        combine_with_point(&point(0.51), &interval(0.2, 0.9)).unwrap() == point(0.51),
        combine_frequency(&interval(0.2, 0.9), &point(0.51)) == Combination::Combined(point(0.51)),
        combine_with_point(&point(1.0), &FrequencyInterval::IGNORANT).unwrap() == point(1.0),
        combine_points(&point(0.5), &point(0.5)).unwrap() == Combination::Combined(point(0.5)),
        combine_points(&point(0.51), &point(0.99)).unwrap()
            == Combination::Conflict(ConflictReport {
                first: 0.51,
                second: 0.99,
            }),
        combine_points(&point(0.0), &point(1.0)).unwrap()
            == Combination::Conflict(ConflictReport {
                first: 0.0,
                second: 1.0,
            }),
    ];
    let passed = checks.iter().filter(|&&c| c).count();
    outcome(
        passed == checks.len(),
        format!("{passed}/{} exact checks", checks.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "defect reproduction (q=0.7, 2000 steps)",
            defect_reproduction,
        ),
        ("preserved chances q in {0, 0.5, 1}", preserved_chances),
        ("delta limit (delta=2, 10^4 steps)", delta_limit_profile),
        ("rule conjugacy (10^4 pairs, 1e-9)", rule_conjugacy),
        ("oracle equivalence (10^4 pairs, 1e-12)", oracle_equivalence),
        ("weights/belief inverse pair (1e-9 relative)", inverse_pair),
        (
            "l-u rule equals count addition (1e-12)",
            lu_rule_is_count_addition,
        ),
        (
            "bernoulli and multiplicative special cases (1e-12)",
            special_cases,
        ),
        ("track agreement (10^4 steps, 1e-6)", track_agreement),
        ("infinite-evidence protocol", infinite_evidence_protocol),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{tag}] {name}: {}", i + 1, result.detail);
        if !result.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
