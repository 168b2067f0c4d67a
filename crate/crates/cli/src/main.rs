//! distkit: decide whether two LTI systems are distinguishable, synthesize
//! and certify indistinguishability witnesses, and replay trajectories.
//!
//! Exit codes: 0 = distinguishable (or plain success), 2 = input/usage
//! error, 3 = indistinguishable, 4 = internal soundness failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use distkit_core::testgen::{gen_indistinguishable_pair, gen_random_pairs, GenConfig};
use distkit_core::{
    certify_witness_with, decide, decide_pencil_only, simulate_output, synthesize_witness,
    uniform_grid, ComplexRational, PolyExpSignal, SystemPair, Tolerances, Verdict,
};
use num_complex::Complex64;

use distkit_cli::format::{
    render_text, report_from_full, report_from_pencil, verdict_exit_code, witness_json,
    Metadata, PairFile, ReportFile,
};

#[derive(Parser)]
#[command(
    name = "distkit",
    about = "Exact distinguishability analysis for pairs of LTI control systems",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the pair in FILE is distinguishable.
    Check(CheckArgs),
    /// Decide, then synthesize and certify a witness when indistinguishable.
    Witness(WitnessArgs),
    /// Replay both subsystem outputs under a chosen input and initial states.
    Simulate(SimulateArgs),
    /// Write randomly generated pair files for corpus building.
    Gen(GenArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Pair description (JSON).
    file: PathBuf,
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit the human-readable text report (default).
    #[arg(long)]
    text: bool,
    /// Also run the lambda-matrix route and record route agreement.
    #[arg(long)]
    verify_routes: bool,
}

#[derive(Args)]
struct WitnessArgs {
    file: PathBuf,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
    #[arg(long)]
    verify_routes: bool,
    /// Certification horizon.
    #[arg(long, default_value_t = 1.0)]
    horizon: f64,
    /// Certification sample count on [0, horizon].
    #[arg(long, default_value_t = 1001)]
    samples: usize,
    /// Relative pivot gate for numeric rank decisions.
    #[arg(long, default_value_t = 1e-8)]
    tolerance_rank: f64,
    /// Relative bound on the witness pencil residual.
    #[arg(long, default_value_t = 1e-9)]
    tolerance_residual: f64,
    /// Relative bound on the simulated output deviation.
    #[arg(long, default_value_t = 1e-6)]
    tolerance_sim: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TrajectoryFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct SimulateArgs {
    file: PathBuf,
    /// Initial state of s1, comma-separated rationals (default: zeros).
    #[arg(long)]
    x10: Option<String>,
    /// Initial state of s2, comma-separated rationals (default: zeros).
    #[arg(long)]
    x20: Option<String>,
    /// Exponential input "lambda=a+bi;xi=v1,v2,..." (default: zero input).
    #[arg(long)]
    input: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    horizon: f64,
    #[arg(long, default_value_t = 1001)]
    samples: usize,
    /// Trajectory output format.
    #[arg(long, value_enum, default_value_t = TrajectoryFormat::Csv)]
    format: TrajectoryFormat,
}

#[derive(Args)]
struct GenArgs {
    /// Output directory for the generated pair files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Number of pairs to write.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Stream seed; falls back to DISTKIT_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Plant known indistinguishable pairs instead of random ones.
    #[arg(long)]
    planted: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Gen(args) => cmd_gen(args),
    };
    ExitCode::from(code)
}

fn load_pair(path: &Path) -> Result<SystemPair, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: PairFile = serde_json::from_str(&text)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    file.to_pair().map_err(|e| format!("{}: {e}", path.display()))
}

fn fail_usage(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    2
}

/// Writes to stdout, swallowing broken pipes so the exit code stays within
/// the documented contract even when the consumer closes early.
fn write_stdout(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
    let _ = out.flush();
}

fn emit(report: &ReportFile, json: bool) {
    if json {
        let mut body =
            serde_json::to_string_pretty(report).expect("report serializes");
        body.push('\n');
        write_stdout(&body);
    } else {
        write_stdout(&render_text(report));
    }
}

fn cmd_check(args: CheckArgs) -> u8 {
    let pair = match load_pair(&args.file) {
        Ok(p) => p,
        Err(e) => return fail_usage(&e),
    };
    let start = Instant::now();
    let (report, verdict) = if args.verify_routes {
        match decide(&pair) {
            Ok(r) => {
                let ms = start.elapsed().as_secs_f64() * 1e3;
                (report_from_full(&r, ms), r.verdict)
            }
            Err(e) => {
                eprintln!("internal error: {e}");
                return 4;
            }
        }
    } else {
        match decide_pencil_only(&pair) {
            Ok(r) => {
                let ms = start.elapsed().as_secs_f64() * 1e3;
                (report_from_pencil(&r, ms), r.verdict)
            }
            Err(e) => {
                eprintln!("internal error: {e}");
                return 4;
            }
        }
    };
    emit(&report, args.json);
    verdict_exit_code(verdict)
}

fn cmd_witness(args: WitnessArgs) -> u8 {
    let pair = match load_pair(&args.file) {
        Ok(p) => p,
        Err(e) => return fail_usage(&e),
    };
    if args.samples < 2 {
        return fail_usage("--samples must be at least 2");
    }
    let tol = Tolerances {
        rank_gate: args.tolerance_rank,
        residual: args.tolerance_residual,
        simulation: args.tolerance_sim,
    };
    let start = Instant::now();

    let (mut report, verdict, defect) = if args.verify_routes {
        match decide(&pair) {
            Ok(r) => {
                let ms = start.elapsed().as_secs_f64() * 1e3;
                let defect = r.defect.clone();
                (report_from_full(&r, ms), r.verdict, defect)
            }
            Err(e) => {
                eprintln!("internal error: {e}");
                return 4;
            }
        }
    } else {
        match decide_pencil_only(&pair) {
            Ok(r) => {
                let ms = start.elapsed().as_secs_f64() * 1e3;
                (report_from_pencil(&r, ms), r.verdict, r.defect)
            }
            Err(e) => {
                eprintln!("internal error: {e}");
                return 4;
            }
        }
    };

    match verdict {
        Verdict::Distinguishable => {
            report.notes.push("no witness exists".to_string());
            report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
            emit(&report, args.json);
            0
        }
        Verdict::Indistinguishable => {
            let cs = pair.combine();
            let defect = defect.expect("indistinguishable verdict carries a defect");
            let w = match synthesize_witness(&cs, &defect, &tol) {
                Ok(w) => w,
                Err(e) => {
                    eprintln!("internal error: witness synthesis failed: {e}");
                    return 4;
                }
            };
            let cert = match certify_witness_with(&pair, &w, args.horizon, args.samples, &tol) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("internal error: certification failed to run: {e}");
                    return 4;
                }
            };
            let pass = cert.pass;
            report.witness = Some(witness_json(&w, Some(&cert)));
            report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
            emit(&report, args.json);
            if !pass {
                eprintln!(
                    "internal error: witness failed certification (deviation {:.3e} > {:.3e})",
                    cert.max_deviation, cert.tolerance
                );
                return 4;
            }
            3
        }
    }
}

fn parse_vector(label: &str, text: &str, dim: usize) -> Result<Vec<Complex64>, String> {
    let entries: Vec<&str> = if text.trim().is_empty() {
        vec![]
    } else {
        text.split(',').collect()
    };
    if entries.len() != dim {
        return Err(format!(
            "{label}: expected {dim} entries, got {}",
            entries.len()
        ));
    }
    entries
        .iter()
        .map(|s| {
            ComplexRational::parse(s)
                .map(|z| z.to_c64())
                .map_err(|e| format!("{label}: {e}"))
        })
        .collect()
}

fn parse_input_signal(spec: &str, dim: usize) -> Result<PolyExpSignal, String> {
    let mut lambda = ComplexRational::zero();
    let mut xi: Option<Vec<ComplexRational>> = None;
    for part in spec.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Some((key, value)) = part.split_once('=') else {
            return Err(format!("--input: expected key=value, got {part:?}"));
        };
        match key.trim() {
            "lambda" => {
                lambda = ComplexRational::parse(value.trim())
                    .map_err(|e| format!("--input lambda: {e}"))?;
            }
            "xi" => {
                let entries: Vec<ComplexRational> = value
                    .split(',')
                    .map(|s| ComplexRational::parse(s.trim()))
                    .collect::<Result<_, _>>()
                    .map_err(|e| format!("--input xi: {e}"))?;
                xi = Some(entries);
            }
            other => return Err(format!("--input: unknown key {other:?}")),
        }
    }
    let xi = xi.ok_or("--input: missing xi=...")?;
    if xi.len() != dim {
        return Err(format!(
            "--input xi: expected {dim} entries, got {}",
            xi.len()
        ));
    }
    Ok(PolyExpSignal::exponential(lambda, xi))
}

fn fmt_c64(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{}{}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
    }
}

fn cmd_simulate(args: SimulateArgs) -> u8 {
    let pair = match load_pair(&args.file) {
        Ok(p) => p,
        Err(e) => return fail_usage(&e),
    };
    let (n1, n2, m, k) = (
        pair.s1().state_dim(),
        pair.s2().state_dim(),
        pair.s1().input_dim(),
        pair.s1().output_dim(),
    );
    let x10 = match &args.x10 {
        Some(t) => match parse_vector("--x10", t, n1) {
            Ok(v) => v,
            Err(e) => return fail_usage(&e),
        },
        None => vec![Complex64::new(0.0, 0.0); n1],
    };
    let x20 = match &args.x20 {
        Some(t) => match parse_vector("--x20", t, n2) {
            Ok(v) => v,
            Err(e) => return fail_usage(&e),
        },
        None => vec![Complex64::new(0.0, 0.0); n2],
    };
    let sig = match &args.input {
        Some(spec) => match parse_input_signal(spec, m) {
            Ok(s) => s,
            Err(e) => return fail_usage(&e),
        },
        None => PolyExpSignal::zero(m),
    };
    if args.samples < 1 {
        return fail_usage("--samples must be at least 1");
    }

    let times = uniform_grid(args.horizon, args.samples);
    let y1 = match simulate_output(pair.s1(), &x10, &sig, &times) {
        Ok(y) => y,
        Err(e) => return fail_usage(&e.to_string()),
    };
    let y2 = match simulate_output(pair.s2(), &x20, &sig, &times) {
        Ok(y) => y,
        Err(e) => return fail_usage(&e.to_string()),
    };
    let deviation: Vec<f64> = y1
        .iter()
        .zip(&y2)
        .map(|(a, b)| {
            a.iter()
                .zip(b)
                .map(|(u, v)| (u - v).norm())
                .fold(0.0f64, f64::max)
        })
        .collect();

    match args.format {
        TrajectoryFormat::Csv => {
            let mut body = String::new();
            let mut header = vec!["t".to_string()];
            for i in 0..k {
                header.push(format!("y1_{i}"));
            }
            for i in 0..k {
                header.push(format!("y2_{i}"));
            }
            header.push("deviation".to_string());
            body.push_str(&header.join(","));
            body.push('\n');
            for (idx, t) in times.iter().enumerate() {
                let mut row = vec![format!("{t}")];
                row.extend(y1[idx].iter().map(|z| fmt_c64(*z)));
                row.extend(y2[idx].iter().map(|z| fmt_c64(*z)));
                row.push(format!("{:e}", deviation[idx]));
                body.push_str(&row.join(","));
                body.push('\n');
            }
            write_stdout(&body);
        }
        TrajectoryFormat::Json => {
            let to_pairs = |ys: &Vec<Vec<Complex64>>| -> Vec<Vec<[f64; 2]>> {
                ys.iter()
                    .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                    .collect()
            };
            let doc = serde_json::json!({
                "times": times,
                "y1": to_pairs(&y1),
                "y2": to_pairs(&y2),
                "deviation": deviation,
                "max_deviation": deviation.iter().copied().fold(0.0f64, f64::max),
            });
            let mut body = serde_json::to_string_pretty(&doc).expect("serializes");
            body.push('\n');
            write_stdout(&body);
        }
    }
    0
}

fn cmd_gen(args: GenArgs) -> u8 {
    let seed = args.seed.unwrap_or_else(|| {
        std::env::var("DISTKIT_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(0)
    });
    if let Err(e) = std::fs::create_dir_all(&args.out) {
        return fail_usage(&format!("cannot create {}: {e}", args.out.display()));
    }
    let pairs: Vec<(String, SystemPair)> = if args.planted {
        (0..args.count)
            .map(|i| {
                let planted = gen_indistinguishable_pair(seed.wrapping_add(i as u64));
                (format!("planted indistinguishable pair, seed {}", seed.wrapping_add(i as u64)), planted.pair)
            })
            .collect()
    } else {
        gen_random_pairs(&GenConfig::desk_scale(seed, args.count))
            .into_iter()
            .enumerate()
            .map(|(i, p)| (format!("random pair {i} from seed {seed}"), p))
            .collect()
    };
    for (i, (desc, pair)) in pairs.iter().enumerate() {
        let file = PairFile::from_pair(
            pair,
            Some(Metadata {
                name: Some(format!("pair_{i:03}")),
                description: Some(desc.clone()),
            }),
        );
        let path = args.out.join(format!("pair_{i:03}.json"));
        let body = serde_json::to_string_pretty(&file).expect("pair serializes");
        if let Err(e) = std::fs::write(&path, body) {
            return fail_usage(&format!("cannot write {}: {e}", path.display()));
        }
        write_stdout(&format!("{}\n", path.display()));
    }
    0
}
