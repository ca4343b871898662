//! Outcome streams and the dual-track convergence run.
//!
//! A stream of binary outcomes is fed to two calculi at once: Dempster's
//! rule, folding in one simple support function per outcome, and the
//! lower/upper frequency interval over the accumulated weights. A third
//! track evaluates the weight-to-belief map directly on the accumulated
//! weights and must agree with the Dempster fold at every step.
//!
//! Bernoulli streams use ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64`; an outcome is positive iff the next `f64` drawn from
//! `[0, 1)` is below `q`. The generator is portable, so a seed replays
//! the same stream on every platform.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::binary_frame::{BeliefInterval, MassAssignment};
use crate::dempster::combine_interval;
use crate::error::{EvidenceError, Result};
use crate::evidence_scale::{
    belief_from_weights, classify_limit, delta_limit, support_from_weight, EvidenceWeights,
    LimitClass, UnitWeights,
};
use crate::frequency::{frequency, interval_from_counts, EvidenceCounts};

/// Header of the trajectory CSV.
pub const CSV_HEADER: &str = "t,t_plus,bel,pl,l,u,f";

/// How the outcome sequence is produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum StreamMode {
    /// i.i.d. outcomes, positive with probability `q`.
    Bernoulli {
        q: f64,
        seed: u64,
    },
    /// Positive at step `t + 1` iff `⌊q(t+1)⌋ > ⌊qt⌋`, so `|t⁺ - qt| < 1`.
    FrequencyFaithful {
        q: f64,
    },
    /// `delta` negatives, then alternating positive/negative.
    DeltaProfile {
        delta: f64,
    },
    Explicit {
        outcomes: Vec<bool>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStreamSpec")]
pub struct StreamSpec {
    #[serde(flatten)]
    mode: StreamMode,
    steps: usize,
}

#[derive(Deserialize)]
struct RawStreamSpec {
    #[serde(flatten)]
    mode: StreamMode,
    #[serde(default)]
    steps: Option<usize>,
}

impl TryFrom<RawStreamSpec> for StreamSpec {
    type Error = EvidenceError;

    fn try_from(raw: RawStreamSpec) -> Result<Self> {
        let steps = match (&raw.mode, raw.steps) {
            (StreamMode::Explicit { outcomes }, None) => outcomes.len(),
            (_, Some(steps)) => steps,
            (_, None) => {
                return Err(EvidenceError::invalid(
                    "stream spec",
                    "missing field `steps`",
                ));
            }
        };
        StreamSpec::new(raw.mode, steps)
    }
}

fn check_chance(q: f64) -> Result<()> {
    if q.is_finite() && (0.0..=1.0).contains(&q) {
        Ok(())
    } else {
        Err(EvidenceError::invalid(
            "stream spec",
            format!("chance q = {q} is outside [0, 1]"),
        ))
    }
}

impl StreamSpec {
    pub fn new(mode: StreamMode, steps: usize) -> Result<Self> {
        match &mode {
            StreamMode::Bernoulli { q, .. } | StreamMode::FrequencyFaithful { q } => {
                check_chance(*q)?
            }
            StreamMode::DeltaProfile { delta } => {
                if !delta.is_finite() || delta.fract() != 0.0 || *delta < 0.0 {
                    return Err(EvidenceError::Unsupported(format!(
                        "delta profile needs a nonnegative integer delta, got {delta}"
                    )));
                }
            }
            StreamMode::Explicit { outcomes } => {
                if outcomes.len() != steps {
                    return Err(EvidenceError::invalid(
                        "stream spec",
                        format!("{} explicit outcomes but steps = {steps}", outcomes.len()),
                    ));
                }
            }
        }
        Ok(StreamSpec { mode, steps })
    }

    pub fn bernoulli(q: f64, seed: u64, steps: usize) -> Result<Self> {
        Self::new(StreamMode::Bernoulli { q, seed }, steps)
    }

    pub fn frequency_faithful(q: f64, steps: usize) -> Result<Self> {
        Self::new(StreamMode::FrequencyFaithful { q }, steps)
    }

    pub fn delta_profile(delta: f64, steps: usize) -> Result<Self> {
        Self::new(StreamMode::DeltaProfile { delta }, steps)
    }

    pub fn explicit(outcomes: Vec<bool>) -> Self {
        let steps = outcomes.len();
        StreamSpec {
            mode: StreamMode::Explicit { outcomes },
            steps,
        }
    }

    pub fn mode(&self) -> &StreamMode {
        &self.mode
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// The chance the stream converges to, where the mode defines one.
    pub fn chance(&self) -> Option<f64> {
        match self.mode {
            StreamMode::Bernoulli { q, .. } | StreamMode::FrequencyFaithful { q } => Some(q),
            _ => None,
        }
    }
}

/// Parses `+`/`1` as positive and `-`/`0` as negative outcomes; commas and
/// whitespace are ignored.
pub fn parse_outcomes(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            '+' | '1' => Ok(true),
            '-' | '0' => Ok(false),
            other => Err(EvidenceError::Parse(format!(
                "unexpected outcome symbol {other:?}"
            ))),
        })
        .collect()
}

pub fn generate_stream(spec: &StreamSpec) -> Vec<bool> {
    let steps = spec.steps;
    match &spec.mode {
        StreamMode::Bernoulli { q, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..steps).map(|_| rng.gen::<f64>() < *q).collect()
        }
        StreamMode::FrequencyFaithful { q } => (0..steps)
            .map(|t| (q * (t + 1) as f64).floor() > (q * t as f64).floor())
            .collect(),
        StreamMode::DeltaProfile { delta } => {
            let lead = *delta as usize;
            (0..steps)
                .map(|t| t >= lead && (t - lead).is_multiple_of(2))
                .collect()
        }
        StreamMode::Explicit { outcomes } => outcomes.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryRow {
    pub t: u64,
    pub t_plus: u64,
    pub ds_bel: f64,
    pub ds_pl: f64,
    pub lu_l: f64,
    pub lu_u: f64,
    pub freq: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub rows: Vec<TrajectoryRow>,
    /// Largest gap between the Dempster fold and the direct weight map,
    /// over every step (recorded or not).
    pub track_deviation: f64,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectoryRow {
        self.rows
            .last()
            .expect("a trajectory always has its t = 0 row")
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for r in &self.rows {
            let f = r.freq.map(format_sig12).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.t,
                r.t_plus,
                format_sig12(r.ds_bel),
                format_sig12(r.ds_pl),
                format_sig12(r.lu_l),
                format_sig12(r.lu_u),
                f
            )?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

/// Formats with 12 significant digits, `%.12g` style.
pub fn format_sig12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    /// Record every `record_every`-th step; the first and last step are
    /// always recorded.
    pub record_every: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { record_every: 1 }
    }
}

pub fn run_dual_track(spec: &StreamSpec, unit: &UnitWeights) -> Result<Trajectory> {
    run_dual_track_with(spec, unit, RunOptions::default())
}

pub fn run_dual_track_with(
    spec: &StreamSpec,
    unit: &UnitWeights,
    opts: RunOptions,
) -> Result<Trajectory> {
    if opts.record_every == 0 {
        return Err(EvidenceError::invalid(
            "run options",
            "record_every must be at least 1",
        ));
    }
    let (w0_plus, w0_minus) = (unit.w0_plus(), unit.w0_minus());
    let s_plus = support_from_weight(w0_plus)?;
    let s_minus = support_from_weight(w0_minus)?;
    // Build the simple supports from their exact masses: the remaining mass
    // on Θ is e^-w0, which 1 - s would lose once s rounds to one.
    let positive = BeliefInterval::from(MassAssignment::from_proportional(
        s_plus,
        0.0,
        (-w0_plus).exp(),
    ));
    let negative = BeliefInterval::from(MassAssignment::from_proportional(
        0.0,
        s_minus,
        (-w0_minus).exp(),
    ));

    let outcomes = generate_stream(spec);
    let mut rows = Vec::with_capacity(outcomes.len() / opts.record_every + 2);
    rows.push(TrajectoryRow {
        t: 0,
        t_plus: 0,
        ds_bel: 0.0,
        ds_pl: 1.0,
        lu_l: 0.0,
        lu_u: 1.0,
        freq: None,
    });

    let mut folded = BeliefInterval::VACUOUS;
    let mut t_plus: u64 = 0;
    let mut deviation: f64 = 0.0;
    let last = outcomes.len();
    for (i, &outcome) in outcomes.iter().enumerate() {
        let t = (i + 1) as u64;
        if outcome {
            t_plus += 1;
        }
        folded = combine_interval(&folded, if outcome { &positive } else { &negative })?;

        let w_plus = w0_plus * t_plus as f64;
        let w_minus = w0_minus * (t - t_plus) as f64;
        let direct = belief_from_weights(&EvidenceWeights::finite(w_plus, w_minus)?);
        deviation = deviation
            .max((direct.bel() - folded.bel()).abs())
            .max((direct.pl() - folded.pl()).abs());

        if (i + 1) % opts.record_every == 0 || i + 1 == last {
            let lu = interval_from_counts(&EvidenceCounts::new(w_plus, w_plus + w_minus)?);
            rows.push(TrajectoryRow {
                t,
                t_plus,
                ds_bel: folded.bel(),
                ds_pl: folded.pl(),
                lu_l: lu.lower(),
                lu_u: lu.upper(),
                freq: frequency(&lu).ok(),
            });
        }
    }
    Ok(Trajectory {
        rows,
        track_deviation: deviation,
    })
}

/// Dempster-track value versus the predicted limit at a profile step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaCheck {
    pub delta: f64,
    /// Last recorded step at which `w⁻ - w⁺` equals `delta`.
    pub t: u64,
    pub predicted: f64,
    pub observed: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    pub t: u64,
    pub final_bel: f64,
    pub final_pl: f64,
    pub chance: Option<f64>,
    /// Limit of the Dempster track predicted from the chance and unit weights.
    pub prediction: Option<LimitClass>,
    /// `max(|bel - prediction|, |pl - prediction|)` at the final step.
    pub prediction_error: Option<f64>,
    /// `|bel - q|`: how far the Dempster track ends from the chance.
    pub ds_chance_error: Option<f64>,
    pub freq_error: Option<f64>,
    pub lower_error: Option<f64>,
    pub upper_error: Option<f64>,
    pub delta: Option<DeltaCheck>,
    pub track_deviation: f64,
}

pub fn check_limits(traj: &Trajectory, spec: &StreamSpec, unit: &UnitWeights) -> LimitReport {
    let last = traj.last();
    let chance = spec.chance();
    let prediction = chance.map(|q| classify_limit(q, unit));
    let prediction_error = prediction.map(|p| {
        let v = p.value();
        (last.ds_bel - v).abs().max((last.ds_pl - v).abs())
    });
    let delta = match spec.mode {
        StreamMode::DeltaProfile { delta } => traj
            .rows
            .iter()
            .rev()
            .find(|r| {
                let achieved =
                    unit.w0_minus() * (r.t - r.t_plus) as f64 - unit.w0_plus() * r.t_plus as f64;
                r.t > 0 && (achieved - delta).abs() <= 1e-9
            })
            .map(|r| {
                let predicted = delta_limit(delta);
                DeltaCheck {
                    delta,
                    t: r.t,
                    predicted,
                    observed: r.ds_bel,
                    error: (r.ds_bel - predicted).abs(),
                }
            }),
        _ => None,
    };
    LimitReport {
        t: last.t,
        final_bel: last.ds_bel,
        final_pl: last.ds_pl,
        chance,
        prediction,
        prediction_error,
        ds_chance_error: chance.map(|q| (last.ds_bel - q).abs()),
        freq_error: chance.zip(last.freq).map(|(q, f)| (f - q).abs()),
        lower_error: chance.map(|q| (last.lu_l - q).abs()),
        upper_error: chance.map(|q| (last.lu_u - q).abs()),
        delta,
        track_deviation: traj.track_deviation,
    }
}
