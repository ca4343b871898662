//! The `evcalc` command line. [`run`] takes explicit streams so it can be
//! driven from tests without spawning a process.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use evcalc::codec::{belief_from_value, convert, parse_value_list, Scale, ScaleValue};
use evcalc::convergence::parse_outcomes;
use evcalc::{
    check_limits, combine_frequency, combine_interval, delta_limit, run_dual_track_with,
    BeliefInterval, Combination, EvidenceError, FrequencyInterval, LimitReport, RunOptions,
    StreamSpec, UnitWeights,
};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;
pub const EXIT_CONFLICT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "evcalc",
    version,
    about = "Belief-function and frequency-interval evidence calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Left-fold two or more values with a combination rule.
    Combine(CombineArgs),
    /// Convert a value between the belpl, weights, lu and counts scales.
    Convert(ConvertArgs),
    /// Run an outcome stream through both calculi and write the trajectory.
    Simulate(SimulateArgs),
    /// Show Dempster's rule converging away from the chance on a faithful stream.
    DefectDemo(DefectArgs),
    /// Compare the Dempster track against the limit for a fixed weight gap.
    DeltaDemo(DeltaArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rule {
    Dempster,
    Lu,
}

#[derive(Debug, Args)]
struct CombineArgs {
    #[arg(long, value_enum)]
    rule: Rule,
    /// JSON values; read from standard input when omitted.
    values: Vec<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScaleArg {
    Belpl,
    Weights,
    Lu,
    Counts,
}

impl From<ScaleArg> for Scale {
    fn from(s: ScaleArg) -> Scale {
        match s {
            ScaleArg::Belpl => Scale::BelPl,
            ScaleArg::Weights => Scale::Weights,
            ScaleArg::Lu => Scale::Lu,
            ScaleArg::Counts => Scale::Counts,
        }
    }
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    from: ScaleArg,
    #[arg(long, value_enum)]
    to: ScaleArg,
    /// JSON value; read from standard input when omitted.
    value: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Bernoulli,
    Faithful,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct UnitArgs {
    /// Weight carried by one positive outcome.
    #[arg(long = "w0-pos", default_value_t = 1.0)]
    w0_pos: f64,
    /// Weight carried by one negative outcome.
    #[arg(long = "w0-neg", default_value_t = 1.0)]
    w0_neg: f64,
}

impl UnitArgs {
    fn unit(&self) -> evcalc::Result<UnitWeights> {
        UnitWeights::new(self.w0_pos, self.w0_neg)
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    unit: UnitArgs,
    #[arg(long, value_enum, default_value_t = Mode::Bernoulli)]
    mode: Mode,
    /// Outcomes for explicit mode, e.g. "+-++-" or "1,0,1".
    #[arg(long)]
    outcomes: Option<String>,
    #[arg(long = "record-every", default_value_t = 1)]
    record_every: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct DefectArgs {
    #[arg(long, default_value_t = 0.7)]
    q: f64,
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    #[command(flatten)]
    unit: UnitArgs,
}

#[derive(Debug, Args)]
struct DeltaArgs {
    /// Nonnegative integer gap between negative and positive weight.
    #[arg(long)]
    delta: String,
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
}

/// What went wrong, already mapped to an exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<EvidenceError> for Failure {
    fn from(e: EvidenceError) -> Self {
        let code = if e.is_mathematical() {
            EXIT_MATH
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::usage(format!("json error: {e}"))
    }
}

type CmdResult = Result<i32, Failure>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_stdin(&mut self) -> Result<String, Failure> {
        let mut text = String::new();
        self.stdin
            .take(evcalc::codec::MAX_INPUT_BYTES as u64 + 1)
            .read_to_string(&mut text)?;
        Ok(text)
    }

    fn emit_json<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        serde_json::to_writer(&mut *self.stdout, value)?;
        writeln!(self.stdout)?;
        Ok(())
    }
}

/// Runs the CLI with `args` (including the program name) and returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{rendered}");
                EXIT_OK
            };
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        stderr,
    };
    let result = match cli.command {
        Command::Combine(a) => cmd_combine(a, &mut io),
        Command::Convert(a) => cmd_convert(a, &mut io),
        Command::Simulate(a) => cmd_simulate(a, &mut io),
        Command::DefectDemo(a) => cmd_defect_demo(a, &mut io),
        Command::DeltaDemo(a) => cmd_delta_demo(a, &mut io),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.stderr, "evcalc: {}", f.message);
            f.code
        }
    }
}

fn input_values(args: &[String], io: &mut Io<'_>) -> Result<Vec<serde_json::Value>, Failure> {
    if args.is_empty() {
        return Ok(parse_value_list(&io.read_stdin()?)?);
    }
    args.iter()
        .map(|a| {
            serde_json::from_str(a).map_err(|e| Failure::usage(format!("bad value {a:?}: {e}")))
        })
        .collect()
}

fn cmd_combine(args: CombineArgs, io: &mut Io<'_>) -> CmdResult {
    let values = input_values(&args.values, io)?;
    if values.len() < 2 {
        return Err(Failure::usage(format!(
            "combine needs at least 2 values, got {}",
            values.len()
        )));
    }
    match args.rule {
        Rule::Dempster => {
            let operands = values
                .iter()
                .map(belief_from_value)
                .collect::<evcalc::Result<Vec<BeliefInterval>>>()?;
            let mut acc = operands[0];
            for x in &operands[1..] {
                acc = combine_interval(&acc, x)?;
            }
            io.emit_json(&acc)?;
            Ok(EXIT_OK)
        }
        Rule::Lu => {
            let operands = values
                .into_iter()
                .map(|v| FrequencyInterval::deserialize(v).map_err(EvidenceError::from))
                .collect::<evcalc::Result<Vec<_>>>()?;
            let mut acc = operands[0];
            for x in &operands[1..] {
                match combine_frequency(&acc, x) {
                    Combination::Combined(fi) => acc = fi,
                    Combination::Conflict(report) => {
                        io.emit_json(&report)?;
                        writeln!(
                            io.stderr,
                            "evcalc: conflicting points {} and {}",
                            report.first, report.second
                        )?;
                        return Ok(EXIT_CONFLICT);
                    }
                }
            }
            io.emit_json(&acc)?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_convert(args: ConvertArgs, io: &mut Io<'_>) -> CmdResult {
    let text = match args.value {
        Some(v) => v,
        None => io.read_stdin()?,
    };
    let value = ScaleValue::parse(args.from.into(), &text)?;
    let out = convert(&value, args.to.into())?;
    io.emit_json(&out)?;
    Ok(EXIT_OK)
}

fn simulate_spec(args: &SimulateArgs) -> Result<StreamSpec, Failure> {
    if args.mode != Mode::Explicit && args.outcomes.is_some() {
        return Err(Failure::usage("--outcomes only applies to --mode explicit"));
    }
    Ok(match args.mode {
        Mode::Bernoulli => StreamSpec::bernoulli(args.q, args.seed, args.steps)?,
        Mode::Faithful => StreamSpec::frequency_faithful(args.q, args.steps)?,
        Mode::Explicit => {
            let text = args
                .outcomes
                .as_deref()
                .ok_or_else(|| Failure::usage("--mode explicit requires --outcomes"))?;
            StreamSpec::explicit(parse_outcomes(text)?)
        }
    })
}

fn cmd_simulate(args: SimulateArgs, io: &mut Io<'_>) -> CmdResult {
    if args.record_every == 0 {
        return Err(Failure::usage("--record-every must be at least 1"));
    }
    let unit = args.unit.unit()?;
    let spec = simulate_spec(&args)?;
    let traj = run_dual_track_with(
        &spec,
        &unit,
        RunOptions {
            record_every: args.record_every,
        },
    )?;

    let mut sink: Box<dyn Write + '_> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Failure::usage(format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(&mut *io.stdout),
    };
    match args.format {
        Format::Csv => traj.write_csv(&mut sink)?,
        Format::Json => {
            serde_json::to_writer(&mut sink, &traj)?;
            writeln!(sink)?;
        }
    }
    sink.flush()?;
    drop(sink);

    write_summary(io.stderr, &check_limits(&traj, &spec, &unit))?;
    Ok(EXIT_OK)
}

fn write_summary(err: &mut dyn Write, report: &LimitReport) -> std::io::Result<()> {
    writeln!(
        err,
        "final t={} bel={:.12} pl={:.12}",
        report.t, report.final_bel, report.final_pl
    )?;
    if let (Some(q), Some(p)) = (report.chance, report.prediction) {
        writeln!(
            err,
            "chance q={q}: predicted Dempster limit {} (observed distance {:.3e})",
            p.value(),
            report.prediction_error.unwrap_or(f64::NAN)
        )?;
    }
    writeln!(err, "max track deviation {:.3e}", report.track_deviation)
}

fn cmd_defect_demo(args: DefectArgs, io: &mut Io<'_>) -> CmdResult {
    let unit = args.unit.unit()?;
    let spec = StreamSpec::frequency_faithful(args.q, args.steps)?;
    let traj = run_dual_track_with(
        &spec,
        &unit,
        RunOptions {
            record_every: args.steps.max(1),
        },
    )?;
    let report = check_limits(&traj, &spec, &unit);
    let last = traj.last();

    #[derive(Serialize)]
    struct DefectReport<'a> {
        q: f64,
        steps: usize,
        t_plus: u64,
        bel: f64,
        pl: f64,
        l: f64,
        u: f64,
        f: Option<f64>,
        #[serde(flatten)]
        limits: &'a LimitReport,
    }
    io.emit_json(&DefectReport {
        q: args.q,
        steps: args.steps,
        t_plus: last.t_plus,
        bel: last.ds_bel,
        pl: last.ds_pl,
        l: last.lu_l,
        u: last.lu_u,
        f: last.freq,
        limits: &report,
    })?;
    Ok(EXIT_OK)
}

fn parse_delta(text: &str) -> Result<u64, Failure> {
    let not_integer = || {
        Failure::usage(format!(
            "--delta must be a nonnegative integer, got {text:?}"
        ))
    };
    let trimmed = text.trim();
    if let Ok(n) = trimmed.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = trimmed.parse().map_err(|_| not_integer())?;
    if x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x <= u32::MAX as f64 {
        Ok(x as u64)
    } else {
        Err(not_integer())
    }
}

fn cmd_delta_demo(args: DeltaArgs, io: &mut Io<'_>) -> CmdResult {
    let delta = parse_delta(&args.delta)?;
    if (args.steps as u64) < delta {
        return Err(Failure::usage(format!(
            "--steps ({}) must be at least --delta ({delta})",
            args.steps
        )));
    }
    let spec = StreamSpec::delta_profile(delta as f64, args.steps)?;
    let unit = UnitWeights::UNIT;
    let traj = run_dual_track_with(&spec, &unit, RunOptions::default())?;
    let report = check_limits(&traj, &spec, &unit);
    let predicted = delta_limit(delta as f64);
    let check = report
        .delta
        .ok_or_else(|| Failure::usage("stream never reached the requested gap"))?;

    #[derive(Serialize)]
    struct DeltaReport {
        delta: u64,
        steps: usize,
        /// Last step whose weight gap equals `delta`.
        t: u64,
        bel: f64,
        delta_limit: f64,
        difference: f64,
        final_bel: f64,
    }
    io.emit_json(&DeltaReport {
        delta,
        steps: args.steps,
        t: check.t,
        bel: check.observed,
        delta_limit: predicted,
        difference: check.observed - predicted,
        final_bel: report.final_bel,
    })?;
    Ok(EXIT_OK)
}
