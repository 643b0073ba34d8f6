//! Command surface: curve sweeps, tail scans, ensemble simulations, CSV
//! emission with reproducibility manifests.
//!
//! Exit codes: 0 success, 2 invalid input, 3 work budget exceeded,
//! 4 internal invariant violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::exponents::Engine;
use crate::ext::ExtReal;
use crate::gld::GldMetric;
use crate::opt::GridSpec;
use crate::prob::{ChannelMatrix, ProbVec};
use crate::sim;
use crate::{Error, ModelConfig};

#[derive(Parser, Debug)]
#[command(
    name = "trc",
    version,
    about = "Error exponents and codebook-ensemble tails for discrete memoryless channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep the exponent curves over a rate grid.
    Exponents(ExponentsArgs),
    /// Scan the tail rate functions over an E0 grid at a fixed rate.
    Tails(TailsArgs),
    /// Sample codebooks and report exact error statistics and enumerators.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Channel file: header `<|X|> <|Y|>`, then |X| rows of probabilities.
    #[arg(long)]
    channel: PathBuf,
    /// Input composition, comma-separated (e.g. 0.5,0.5).
    #[arg(long)]
    qx: String,
    /// Decoding metric: ml-log | scaled:<beta> | zero | file:<path>.
    #[arg(long, default_value = "ml-log")]
    metric: String,
    /// Coarse grid points per free dimension.
    #[arg(long, default_value_t = 33)]
    resolution: usize,
    /// Refinement levels after the coarse pass.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Box shrink factor per refinement level.
    #[arg(long, default_value_t = 0.2)]
    shrink: f64,
    /// Worker threads for sweep points (0 = rayon default).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct ExponentsArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Rate grid `start:stop:step`, in nats.
    #[arg(long)]
    rates: String,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct TailsArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Coding rate, in nats.
    #[arg(long)]
    rate: f64,
    /// Threshold grid `start:stop:step`.
    #[arg(long)]
    e0: String,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Blocklength.
    #[arg(long)]
    n: usize,
    /// Number of codewords M (the implied rate ln(M)/n is reported).
    #[arg(long)]
    codewords: usize,
    /// Independent codebook draws.
    #[arg(long)]
    trials: usize,
    /// Master seed; trial t uses RNG stream (seed, t).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated exponent thresholds for empirical tail masses.
    #[arg(long, default_value = "")]
    thresholds: String,
    /// Output CSV path for trials; enumerators go to a sibling file.
    #[arg(long)]
    out: PathBuf,
}

/// Parses CLI arguments from the process and runs; returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs with explicit arguments (the binary name must be first); returns
/// the exit code.
pub fn run_from<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::NoFeasiblePoint => 4,
        _ => 2,
    }
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Exponents(args) => cmd_exponents(args),
        Command::Tails(args) => cmd_tails(args),
        Command::Simulate(args) => cmd_simulate(args),
    }
}

fn init_jobs(jobs: usize) {
    if jobs > 0 {
        // ignore the error if a global pool already exists (tests)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
}

fn parse_qx(text: &str) -> Result<ProbVec, Error> {
    let entries: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad probability `{t}`"))))
        .collect::<Result<_, _>>()?;
    ProbVec::new(entries)
}

fn parse_metric(spec: &str, w: &ChannelMatrix) -> Result<GldMetric, Error> {
    if spec == "ml-log" {
        Ok(GldMetric::log_likelihood(w))
    } else if spec == "zero" {
        Ok(GldMetric::zero(w.num_inputs(), w.num_outputs()))
    } else if let Some(beta) = spec.strip_prefix("scaled:") {
        let b: f64 =
            beta.parse().map_err(|_| Error::Parse(format!("bad scale factor `{beta}`")))?;
        if b <= 0.0 {
            return Err(Error::Parse("scale factor must be positive".into()));
        }
        Ok(GldMetric::scaled_likelihood(w, b))
    } else if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path)?;
        GldMetric::from_text(&text)
    } else {
        Err(Error::Parse(format!(
            "unknown metric `{spec}` (expected ml-log, scaled:<beta>, zero, or file:<path>)"
        )))
    }
}

fn parse_grid_1d(text: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("grid `{text}` is not start:stop:step")));
    }
    let start: f64 = parts[0].parse().map_err(|_| Error::Parse(format!("bad number `{}`", parts[0])))?;
    let stop: f64 = parts[1].parse().map_err(|_| Error::Parse(format!("bad number `{}`", parts[1])))?;
    let step: f64 = parts[2].parse().map_err(|_| Error::Parse(format!("bad number `{}`", parts[2])))?;
    if step <= 0.0 || stop < start {
        return Err(Error::Parse(format!("grid `{text}` is empty or descending")));
    }
    let count = ((stop - start) / step + 1.5).floor() as usize;
    let grid: Vec<f64> = (0..count)
        .map(|i| start + i as f64 * step)
        .filter(|&v| v <= stop + 1e-12)
        .collect();
    if grid.is_empty() {
        return Err(Error::Parse(format!("grid `{text}` produced no points")));
    }
    Ok(grid)
}

fn load_model(args: &ModelArgs) -> Result<ModelConfig, Error> {
    init_jobs(args.jobs);
    let text = fs::read_to_string(&args.channel)?;
    let channel = ChannelMatrix::from_text(&text)?;
    let qx = parse_qx(&args.qx)?;
    let metric = parse_metric(&args.metric, &channel)?;
    let grid = GridSpec {
        resolution: args.resolution,
        depth: args.depth,
        shrink: args.shrink,
        tol_feas: 1e-9,
    };
    ModelConfig::new(channel, qx, metric, grid)
}

/// Decimal formatting with 9 significant digits; `inf` for infinities.
pub fn fmt_sig9(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let dec = 8 - mag;
    if dec >= 0 {
        format!("{:.*}", dec as usize, v)
    } else {
        let scale = 10f64.powi(-dec);
        format!("{:.0}", (v / scale).round() * scale)
    }
}

fn fmt_ext(v: ExtReal) -> String {
    fmt_sig9(v.value())
}

#[derive(Serialize)]
struct RunManifest {
    tool: String,
    version: String,
    command: String,
    args: serde_json::Value,
    started_unix_ms: u128,
    wall_ms: u128,
    points: Vec<PointTiming>,
}

#[derive(Serialize)]
struct PointTiming {
    x: f64,
    ms: f64,
}

fn write_manifest(
    csv_path: &Path,
    command: &str,
    args: serde_json::Value,
    started_unix_ms: u128,
    wall_ms: u128,
    points: Vec<PointTiming>,
) -> Result<(), Error> {
    let manifest = RunManifest {
        tool: "trc".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        args,
        started_unix_ms,
        wall_ms,
        points,
    };
    let path = manifest_path(csv_path);
    fs::write(&path, serde_json::to_string_pretty(&manifest).expect("manifest serializes"))?;
    Ok(())
}

fn manifest_path(csv_path: &Path) -> PathBuf {
    let mut os = csv_path.as_os_str().to_owned();
    os.push(".manifest.json");
    PathBuf::from(os)
}

fn now_unix_ms() -> u128 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

fn model_json(args: &ModelArgs) -> serde_json::Value {
    serde_json::json!({
        "channel": args.channel,
        "qx": args.qx,
        "metric": args.metric,
        "resolution": args.resolution,
        "depth": args.depth,
        "shrink": args.shrink,
        "jobs": args.jobs,
    })
}

fn cmd_exponents(args: ExponentsArgs) -> Result<(), Error> {
    let started = now_unix_ms();
    let t0 = Instant::now();
    let cfg = load_model(&args.model)?;
    let rates = parse_grid_1d(&args.rates)?;
    let engine = Engine::new(&cfg);

    let rows: Vec<(f64, String, f64)> = rates
        .par_iter()
        .map(|&r| {
            let p0 = Instant::now();
            let e_r = engine.random_coding_exponent(r).value;
            let e_trc = engine.trc_exponent(r).value;
            let e_trc_ml = engine.trc_exponent_ml(r).value;
            let e_ex = engine.expurgated_exponent(r).value;
            let e_tilde = engine.e_tilde(r).value;
            let e0_min = engine.e0_min(r).value;
            let line = format!(
                "{},{},{},{},{},{},{}",
                fmt_sig9(r),
                fmt_ext(e_r),
                fmt_ext(e_trc),
                fmt_ext(e_trc_ml),
                fmt_ext(e_ex),
                fmt_ext(e_tilde),
                fmt_ext(e0_min)
            );
            (r, line, p0.elapsed().as_secs_f64() * 1e3)
        })
        .collect();

    let mut out = String::from("rate,e_r,e_trc,e_trc_ml,e_ex,e_tilde,e0_min\n");
    let mut points = Vec::with_capacity(rows.len());
    for (r, line, ms) in rows {
        out.push_str(&line);
        out.push('\n');
        points.push(PointTiming { x: r, ms });
    }
    fs::write(&args.out, out)?;
    write_manifest(
        &args.out,
        "exponents",
        serde_json::json!({ "model": model_json(&args.model), "rates": args.rates, "out": args.out }),
        started,
        t0.elapsed().as_millis(),
        points,
    )?;
    println!("wrote {} ({} rates)", args.out.display(), rates.len());
    Ok(())
}

fn cmd_tails(args: TailsArgs) -> Result<(), Error> {
    let started = now_unix_ms();
    let t0 = Instant::now();
    let cfg = load_model(&args.model)?;
    let e0s = parse_grid_1d(&args.e0)?;
    let r = args.rate;
    if r < 0.0 {
        return Err(Error::Parse("rate must be nonnegative".into()));
    }
    let engine = Engine::new(&cfg);
    let trc = engine.trc_exponent(r).value;
    let ex = engine.expurgated_exponent(r).value;

    struct Row {
        e0: f64,
        lt_ub: ExtReal,
        lt_lb: ExtReal,
        ut_ub: ExtReal,
        ut_lb: ExtReal,
        in_window: bool,
        ms: f64,
    }
    let rows: Vec<Row> = e0s
        .par_iter()
        .map(|&e0| {
            let p0 = Instant::now();
            let lt_ub = engine.lt_upper(r, e0).value;
            let lt_lb = engine.lt_lower(r, e0).value;
            let ut_ub = engine.ut_upper(r, e0).value;
            let ut_lb = engine.ut_lower(r, e0).value;
            let in_window = ExtReal::finite(e0) > trc && ExtReal::finite(e0) < ex;
            Row { e0, lt_ub, lt_lb, ut_ub, ut_lb, in_window, ms: p0.elapsed().as_secs_f64() * 1e3 }
        })
        .collect();

    // lower-tail exponents fall and upper-tail exponents rise with E0
    let slack = 1e-9;
    let mut monotone = true;
    for w in rows.windows(2) {
        monotone &= w[1].lt_ub.value() <= w[0].lt_ub.value() + slack;
        monotone &= w[1].lt_lb.value() <= w[0].lt_lb.value() + slack;
        monotone &= w[1].ut_ub.value() >= w[0].ut_ub.value() - slack;
        monotone &= w[1].ut_lb.value() >= w[0].ut_lb.value() - slack;
    }

    let mut out = String::from("e0,lt_ub,lt_lb,ut_ub,ut_lb,in_corollary_window\n");
    let mut points = Vec::with_capacity(rows.len());
    for row in &rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_sig9(row.e0),
            fmt_ext(row.lt_ub),
            fmt_ext(row.lt_lb),
            fmt_ext(row.ut_ub),
            fmt_ext(row.ut_lb),
            if row.in_window { 1 } else { 0 }
        ));
        points.push(PointTiming { x: row.e0, ms: row.ms });
    }
    fs::write(&args.out, out)?;
    write_manifest(
        &args.out,
        "tails",
        serde_json::json!({
            "model": model_json(&args.model),
            "rate": r,
            "e0": args.e0,
            "out": args.out,
        }),
        started,
        t0.elapsed().as_millis(),
        points,
    )?;
    println!(
        "wrote {} ({} thresholds); monotonicity {}",
        args.out.display(),
        rows.len(),
        if monotone { "ok" } else { "VIOLATED" }
    );
    if !monotone {
        return Err(Error::NoFeasiblePoint);
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Error> {
    let started = now_unix_ms();
    let t0 = Instant::now();
    let cfg = load_model(&args.model)?;
    let thresholds: Vec<f64> = if args.thresholds.trim().is_empty() {
        Vec::new()
    } else {
        args.thresholds
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad threshold `{t}`"))))
            .collect::<Result<_, _>>()?
    };

    let report = sim::tail_experiment(
        &cfg.channel,
        &cfg.qx,
        &cfg.metric,
        args.n,
        args.codewords,
        args.trials,
        args.seed,
        &thresholds,
    )?;

    let mut out = String::from("trial,seed,pe,exponent\n");
    for t in &report.trials {
        out.push_str(&format!(
            "{},{},{},{}\n",
            t.trial,
            t.seed,
            fmt_sig9(t.pe),
            fmt_ext(t.exponent)
        ));
    }
    fs::write(&args.out, out)?;

    // aggregated pair-enumerator counts over all trials
    let k = cfg.qx.len();
    let types = crate::prob::enumerate_rational_joint_types(args.n, k, k);
    let mut agg = vec![0u64; types.len()];
    let mut conservation_ok = true;
    for trial in 0..args.trials as u64 {
        let cb = sim::sample_codebook(args.n, args.codewords, &cfg.qx, args.seed, trial)?;
        let rep = sim::enumerator_report(&cb, k);
        conservation_ok &= rep.total() == (args.codewords * (args.codewords - 1)) as u64;
        for (a, c) in agg.iter_mut().zip(rep.counts.iter()) {
            *a += c;
        }
    }
    let enum_path = enumerator_path(&args.out);
    let mut header = String::from("type_id");
    for a in 0..k {
        for b in 0..k {
            header.push_str(&format!(",q{a}{b}"));
        }
    }
    header.push_str(",count\n");
    let mut enum_out = header;
    for (id, (ty, count)) in types.iter().zip(agg.iter()).enumerate() {
        enum_out.push_str(&id.to_string());
        for a in 0..k {
            for b in 0..k {
                enum_out.push_str(&format!(",{}", fmt_sig9(ty.count(a, b) as f64 / args.n as f64)));
            }
        }
        enum_out.push_str(&format!(",{count}\n"));
    }
    fs::write(&enum_path, enum_out)?;

    let manifest_args = serde_json::json!({
        "model": model_json(&args.model),
        "n": args.n,
        "codewords": args.codewords,
        "trials": args.trials,
        "seed": args.seed,
        "thresholds": args.thresholds,
        "out": args.out,
    });
    let wall = t0.elapsed().as_millis();
    write_manifest(&args.out, "simulate", manifest_args.clone(), started, wall, Vec::new())?;
    write_manifest(&enum_path, "simulate", manifest_args, started, wall, Vec::new())?;

    let implied_rate = (args.codewords as f64).ln() / args.n as f64;
    println!("trials: {}", args.trials);
    println!("implied rate ln(M)/n: {}", fmt_sig9(implied_rate));
    println!("median exponent: {}", fmt_sig9(report.median));
    println!("iqr: {}", fmt_sig9(report.iqr()));
    println!("zero-error trials (exponent inf, excluded from stats): {}", report.infinite_count);
    println!(
        "enumerator conservation per trial (sum N = M(M-1)): {}",
        if conservation_ok { "ok" } else { "VIOLATED" }
    );
    for t in &report.thresholds {
        println!(
            "P{{E <= {}}} = {}    P{{E >= {}}} = {}",
            fmt_sig9(t.e0),
            fmt_sig9(t.p_le),
            fmt_sig9(t.e0),
            fmt_sig9(t.p_ge)
        );
    }
    println!("wrote {} and {}", args.out.display(), enum_path.display());
    if !conservation_ok {
        return Err(Error::NoFeasiblePoint);
    }
    Ok(())
}

fn enumerator_path(out: &Path) -> PathBuf {
    match out.extension().and_then(|e| e.to_str()) {
        Some("csv") => out.with_extension("enumerators.csv"),
        _ => {
            let mut os = out.as_os_str().to_owned();
            os.push(".enumerators.csv");
            PathBuf::from(os)
        }
    }
}
