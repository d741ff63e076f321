//! Command-line front end for the entropic-inequality toolkit.
//!
//! Four subcommands cover the library's surface: `paradox` evaluates
//! the tripartite inequality on a state, `threshold` locates the noise
//! level where a family's violation vanishes, `compress` runs the
//! operational compression test and writes the bit-string files, and
//! `verify` re-runs the randomized invariant suites.
//!
//! Exit codes: 0 success (including "no threshold" and non-violated
//! verdicts), 1 usage error, 2 invariant failure, 3 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use entroghz::bitstream::{
    compression_inequality_report, sample_rounds, Codec, CompressionVerdict, RoundSamples,
};
use entroghz::inequalities::{
    entropic_mermin_report, preset_settings, InequalityReport, SettingSextet,
};
use entroghz::noise::{
    find_threshold, optimize_settings, report_at, Scenario, ScenarioFamily, SearchSpace,
    ThresholdResult,
};
use entroghz::qstate::{
    ghz_state, maximally_mixed, noisy_state, singlet_state, xy_observable, BlochObservable,
    DensityMatrix,
};
use entroghz::util::par_map;
use entroghz::verify::{run_suite, SuiteReport, SUITE_NAMES};
use entroghz::Error;

/// Environment variable providing the default output directory.
const OUT_DIR_ENV: &str = "ENTROGHZ_OUT_DIR";

/// `outln!` that exits quietly when the consumer closes the pipe
/// (e.g. `entroghz … | head`) instead of panicking.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let mut stdout = std::io::stdout().lock();
        if let Err(e) = writeln!(stdout, $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            eprintln!("error: cannot write to stdout: {}", e);
            std::process::exit(3);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "entroghz",
    version,
    about = "Entropy-based distances, multipartite inequalities, noise thresholds, \
             and an operational compression test"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the four product entropies and the tripartite inequality
    Paradox(ParadoxArgs),
    /// Locate the noise fraction where a family's violation vanishes
    Threshold(ThresholdArgs),
    /// Sample rounds, write bit strings, and test the compression inequality
    Compress(CompressArgs),
    /// Run the randomized invariant suites
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatePreset {
    /// Three-qubit GHZ state
    Ghz,
    /// Two-qubit singlet (bipartite family only)
    Singlet,
    /// Maximally mixed three-qubit state
    Mixed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// Tripartite entropic inequality at the preset angles
    Entropic3,
    /// Correlation (covariance-distance) form at X/Y settings
    Mermin3,
    /// Bipartite chained inequality on the singlet
    Bc2,
}

#[derive(Args)]
struct ParadoxArgs {
    /// Base state preset
    #[arg(long, value_enum, default_value_t = StatePreset::Ghz)]
    state: StatePreset,
    /// White-noise fraction p in [0, 1]
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Angles: `paper` (the maximal-violation preset) or
    /// `xy:a1,a2,b1,b2,c1,c2` in radians
    #[arg(long, default_value = "paper")]
    angles: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ThresholdArgs {
    /// Inequality family
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Bisection tolerance (final bracket width)
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Angles: `paper` (family preset; bc2 optimizes its settings) or
    /// `xy:…` with 6 values (tripartite) / 4 values (bc2), radians
    #[arg(long, default_value = "paper")]
    angles: String,
    /// Optimizer restarts for the bc2 settings search
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    /// Also sweep the margin over `lo:hi:steps`, e.g. `0:0.5:26`
    #[arg(long)]
    sweep: Option<String>,
    /// Worker threads for sweeps
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CompressArgs {
    /// Base state preset (three-qubit presets only)
    #[arg(long, value_enum, default_value_t = StatePreset::Ghz)]
    state: StatePreset,
    /// White-noise fraction p in [0, 1]
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Angles: `paper` or `xy:a1,a2,b1,b2,c1,c2` in radians
    #[arg(long, default_value = "paper")]
    angles: String,
    /// Measurement rounds per context (≥ 16)
    #[arg(short = 'n', long = "rounds", default_value_t = 65536)]
    rounds: usize,
    /// PRNG master seed; every run is bit-reproducible given the seed
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Codec: `rle-elias` or `block-huffman`
    #[arg(long, default_value = "rle-elias")]
    codec: String,
    /// Output directory for the ten bit-string files
    /// (default: $ENTROGHZ_OUT_DIR, else the current directory)
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated suite subset (default: all suites)
    #[arg(long, value_delimiter = ',')]
    suites: Vec<String>,
    /// Fuzz cases per suite
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// A failure routed to the documented exit codes.
enum Failure {
    Usage(String),
    Invariant(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(err) => Failure::Io(err.to_string()),
            other => Failure::Invariant(other.to_string()),
        }
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Paradox(args) => cmd_paradox(args),
        Command::Threshold(args) => cmd_threshold(args),
        Command::Compress(args) => cmd_compress(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(3)
        }
    }
}

// ---------------------------------------------------------------------------
// Shared argument handling
// ---------------------------------------------------------------------------

fn check_noise(p: f64) -> Result<f64, Failure> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Failure::Usage(format!(
            "--noise must lie in [0, 1], got {}",
            p
        )));
    }
    Ok(p)
}

/// Comma-separated radians after an `xy:` prefix.
fn parse_xy_list(spec: &str, expected: usize) -> Result<Vec<f64>, Failure> {
    let body = spec.strip_prefix("xy:").ok_or_else(|| {
        Failure::Usage(format!(
            "--angles must be `paper` or `xy:<{} comma-separated radians>`, got `{}`",
            expected, spec
        ))
    })?;
    let values: Result<Vec<f64>, _> = body.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let values = values
        .map_err(|e| Failure::Usage(format!("bad angle in `{}`: {}", spec, e)))?;
    if values.len() != expected {
        return Err(Failure::Usage(format!(
            "expected {} angles, got {} in `{}`",
            expected,
            values.len(),
            spec
        )));
    }
    Ok(values)
}

fn tripartite_settings(spec: &str) -> Result<SettingSextet, Failure> {
    if spec == "paper" {
        return Ok(preset_settings());
    }
    let v = parse_xy_list(spec, 6)?;
    Ok([
        xy_observable(v[0]),
        xy_observable(v[1]),
        xy_observable(v[2]),
        xy_observable(v[3]),
        xy_observable(v[4]),
        xy_observable(v[5]),
    ])
}

fn tripartite_state(preset: StatePreset, noise: f64) -> Result<DensityMatrix, Failure> {
    let base = match preset {
        StatePreset::Ghz => ghz_state(3)?,
        StatePreset::Mixed => maximally_mixed(3)?,
        StatePreset::Singlet => {
            return Err(Failure::Usage(
                "this command needs a three-qubit state preset (ghz or mixed)".into(),
            ));
        }
    };
    Ok(noisy_state(&base, noise)?)
}

/// `"A1B1C1"` → `"A1·B1·C1"`.
fn dotted(label: &str) -> String {
    let chars: Vec<char> = label.chars().collect();
    chars
        .chunks(2)
        .map(|pair| pair.iter().collect::<String>())
        .collect::<Vec<_>>()
        .join("·")
}

fn verdict_word(violated: bool) -> &'static str {
    if violated {
        "VIOLATED"
    } else {
        "not violated"
    }
}

fn print_json<T: Serialize>(value: &T) -> CliResult {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Invariant(format!("serialization failed: {}", e)))?;
    outln!("{}", text);
    Ok(())
}

// ---------------------------------------------------------------------------
// paradox
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ParadoxOutput {
    h_a: f64,
    h_b: f64,
    h_c: f64,
    h_d: f64,
    #[serde(flatten)]
    report: InequalityReport,
}

fn cmd_paradox(args: ParadoxArgs) -> CliResult {
    let noise = check_noise(args.noise)?;
    let settings = tripartite_settings(&args.angles)?;
    let state = tripartite_state(args.state, noise)?;
    let report = entropic_mermin_report(&state, &settings)?;
    let out = ParadoxOutput {
        h_a: report.rhs_terms[0],
        h_b: report.rhs_terms[1],
        h_c: report.rhs_terms[2],
        h_d: report.lhs,
        report,
    };
    match args.format {
        Format::Json => print_json(&out),
        Format::Csv => {
            outln!("h_a,h_b,h_c,h_d,lhs,rhs_total,margin,violated");
            outln!(
                "{},{},{},{},{},{},{},{}",
                out.h_a,
                out.h_b,
                out.h_c,
                out.h_d,
                out.report.lhs,
                out.report.rhs_total,
                out.report.margin,
                out.report.violated
            );
            Ok(())
        }
        Format::Text => {
            let r = &out.report;
            outln!("H({}) = {:.4} bits", dotted(&r.context_labels[0]), r.lhs);
            for (label, term) in r.context_labels[1..].iter().zip(&r.rhs_terms) {
                outln!("H({}) = {:.4} bits", dotted(label), term);
            }
            outln!(
                "lhs = {:.4}, rhs_total = {:.4}, margin = {:.4} → {}",
                r.lhs,
                r.rhs_total,
                r.margin,
                verdict_word(r.violated)
            );
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// threshold
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct OptimizedOut {
    space: SearchSpace,
    params: Vec<f64>,
    margin_at_p0: f64,
}

#[derive(Serialize)]
struct SweepRow {
    p: f64,
    lhs: f64,
    rhs_total: f64,
    margin: f64,
}

#[derive(Serialize)]
struct ThresholdOutput {
    family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    no_threshold: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", flatten)]
    result: Option<ThresholdResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimized: Option<OptimizedOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<Vec<SweepRow>>,
}

fn family_name(family: FamilyArg) -> &'static str {
    match family {
        FamilyArg::Entropic3 => "entropic3",
        FamilyArg::Mermin3 => "mermin3",
        FamilyArg::Bc2 => "bc2",
    }
}

/// Reference threshold for each preset family (preset angles only).
fn expected_threshold(family: FamilyArg) -> f64 {
    match family {
        FamilyArg::Entropic3 => 0.123,
        FamilyArg::Mermin3 => 0.5,
        FamilyArg::Bc2 => 0.04,
    }
}

fn build_scenario(args: &ThresholdArgs) -> Result<(Scenario, Option<OptimizedOut>), Failure> {
    match (args.family, args.angles.as_str()) {
        (FamilyArg::Entropic3, "paper") => Ok((Scenario::entropic3_preset(), None)),
        (FamilyArg::Mermin3, "paper") => Ok((Scenario::mermin3_preset(), None)),
        (FamilyArg::Bc2, "paper") => {
            let optimum = optimize_settings(
                ScenarioFamily::BipartiteBc,
                &singlet_state(),
                0.0,
                args.restarts.max(1),
            )?;
            let out = OptimizedOut {
                space: optimum.space,
                params: optimum.params.clone(),
                margin_at_p0: optimum.margin,
            };
            Ok((optimum.scenario, Some(out)))
        }
        (FamilyArg::Bc2, spec) => {
            let v = parse_xy_list(spec, 4)?;
            let settings: Vec<BlochObservable> = v.iter().map(|&t| xy_observable(t)).collect();
            Ok((
                Scenario::new(ScenarioFamily::BipartiteBc, singlet_state(), settings)?,
                None,
            ))
        }
        (family, spec) => {
            let settings = tripartite_settings(spec)?;
            let scenario_family = match family {
                FamilyArg::Entropic3 => ScenarioFamily::TripartiteEntropic,
                FamilyArg::Mermin3 => ScenarioFamily::TripartiteMermin,
                FamilyArg::Bc2 => unreachable!("handled above"),
            };
            Ok((
                Scenario::new(scenario_family, ghz_state(3)?, settings.to_vec())?,
                None,
            ))
        }
    }
}

fn parse_sweep(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let usage = || {
        Failure::Usage(format!(
            "--sweep expects `lo:hi:steps` with 0 ≤ lo < hi ≤ 1 and steps ≥ 2, got `{}`",
            spec
        ))
    };
    if parts.len() != 3 {
        return Err(usage());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| usage())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| usage())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| usage())?;
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi || steps < 2 {
        return Err(usage());
    }
    Ok((0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect())
}

fn cmd_threshold(args: ThresholdArgs) -> CliResult {
    if args.jobs < 1 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let (scenario, optimized) = build_scenario(&args)?;

    let sweep = match &args.sweep {
        Some(spec) => {
            let ps = parse_sweep(spec)?;
            let rows = par_map(&ps, args.jobs, |&p| {
                report_at(&scenario, p).map(|r| SweepRow {
                    p,
                    lhs: r.lhs,
                    rhs_total: r.rhs_total,
                    margin: r.margin,
                })
            });
            let rows: Result<Vec<SweepRow>, Error> = rows.into_iter().collect();
            Some(rows?)
        }
        None => None,
    };

    let preset_angles = args.angles == "paper";
    let result = match find_threshold(&scenario, args.tol) {
        Ok(result) => Some(result),
        Err(Error::NoThreshold(reason)) => {
            return render_threshold(
                &args,
                ThresholdOutput {
                    family: family_name(args.family),
                    no_threshold: Some(reason),
                    result: None,
                    expected: preset_angles.then(|| expected_threshold(args.family)),
                    optimized,
                    sweep,
                },
            );
        }
        Err(other) => return Err(other.into()),
    };
    render_threshold(
        &args,
        ThresholdOutput {
            family: family_name(args.family),
            no_threshold: None,
            result,
            expected: preset_angles.then(|| expected_threshold(args.family)),
            optimized,
            sweep,
        },
    )
}

fn render_threshold(args: &ThresholdArgs, out: ThresholdOutput) -> CliResult {
    match args.format {
        Format::Json => print_json(&out),
        Format::Csv => {
            if let Some(rows) = &out.sweep {
                outln!("p,lhs,rhs_total,margin");
                for row in rows {
                    outln!("{},{},{},{}", row.p, row.lhs, row.rhs_total, row.margin);
                }
            } else if let Some(result) = &out.result {
                outln!("family,p_star,iterations,bracket_width,margin_at_p_star");
                outln!(
                    "{},{},{},{},{}",
                    out.family,
                    result.p_star,
                    result.iterations,
                    result.bracket_width,
                    result.margin_at_p_star
                );
            } else {
                outln!("family,no_threshold");
                outln!("{},{}", out.family, out.no_threshold.as_deref().unwrap_or(""));
            }
            Ok(())
        }
        Format::Text => {
            if let Some(opt) = &out.optimized {
                match opt.space {
                    SearchSpace::Symmetric => outln!(
                        "optimized settings: chained angle θ = {:.4} rad \
                         (settings at 0, 2θ, 3θ, θ), margin at p = 0: {:.4}",
                        opt.params[0], opt.margin_at_p0
                    ),
                    SearchSpace::FreeXy => outln!(
                        "optimized settings: xy angles {:?} rad, margin at p = 0: {:.4}",
                        opt.params, opt.margin_at_p0
                    ),
                    SearchSpace::FreeBloch => outln!(
                        "optimized settings: (polar, azimuth) pairs {:?} rad, \
                         margin at p = 0: {:.4}",
                        opt.params, opt.margin_at_p0
                    ),
                }
            }
            match (&out.result, &out.no_threshold) {
                (Some(result), _) => {
                    outln!(
                        "family {}: p* = {:.4} ({} iterations, bracket width {:.1e}, \
                         margin at p* = {:.4})",
                        out.family,
                        result.p_star,
                        result.iterations,
                        result.bracket_width,
                        result.margin_at_p_star
                    );
                    if let Some(expected) = out.expected {
                        outln!(
                            "expected for this family ≈ {}; found {:.4}",
                            expected, result.p_star
                        );
                    }
                }
                (None, Some(reason)) => {
                    outln!("family {}: no threshold ({})", out.family, reason);
                }
                (None, None) => unreachable!("either a result or a no-threshold reason"),
            }
            if let Some(rows) = &out.sweep {
                outln!("\n{:>8}  {:>10}  {:>10}  {:>10}", "p", "lhs", "rhs_total", "margin");
                for row in rows {
                    outln!(
                        "{:>8.4}  {:>10.4}  {:>10.4}  {:>10.4}",
                        row.p, row.lhs, row.rhs_total, row.margin
                    );
                }
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// compress
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CompressOutput {
    n: usize,
    seed: u64,
    codec: String,
    out_dir: String,
    files: Vec<String>,
    #[serde(flatten)]
    verdict: CompressionVerdict,
}

fn write_bit_files(samples: &RoundSamples, dir: &Path) -> Result<Vec<String>, Failure> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::Io(format!("cannot create {}: {}", dir.display(), e)))?;
    let mut files = Vec::with_capacity(10);
    let mut write = |name: String, bytes: Vec<u8>| -> Result<(), Failure> {
        let path = dir.join(&name);
        std::fs::write(&path, bytes)
            .map_err(|e| Failure::Io(format!("cannot write {}: {}", path.display(), e)))?;
        files.push(name);
        Ok(())
    };
    let raw = [
        ("a1.bits", samples.a1()),
        ("a2.bits", samples.a2()),
        ("b1.bits", samples.b1()),
        ("b2.bits", samples.b2()),
        ("c1.bits", samples.c1()),
        ("c2.bits", samples.c2()),
    ];
    for (name, string) in raw {
        write(name.to_string(), string.to_file_bytes())?;
    }
    for index in 0..4 {
        let name = format!(
            "xor_{}.bits",
            samples
                .context_name(index)
                .expect("four contexts")
                .to_lowercase()
        );
        write(name, samples.xor_string(index)?.to_file_bytes())?;
    }
    Ok(files)
}

fn cmd_compress(args: CompressArgs) -> CliResult {
    let noise = check_noise(args.noise)?;
    if args.rounds < 16 {
        return Err(Failure::Usage(format!(
            "--rounds must be at least 16, got {}",
            args.rounds
        )));
    }
    let codec = Codec::from_name(&args.codec)
        .map_err(|_| Failure::Usage(format!("unknown codec `{}`", args.codec)))?;
    let settings = tripartite_settings(&args.angles)?;
    let state = tripartite_state(args.state, noise)?;
    let out_dir = args
        .out_dir
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));

    let samples = sample_rounds(&state, &settings, args.rounds, args.seed)?;
    let files = write_bit_files(&samples, &out_dir)?;
    let verdict = compression_inequality_report(&samples, codec.name())?;
    let out = CompressOutput {
        n: args.rounds,
        seed: args.seed,
        codec: codec.name().to_string(),
        out_dir: out_dir.display().to_string(),
        files,
        verdict,
    };

    match args.format {
        Format::Json => print_json(&out),
        Format::Csv => {
            outln!("context,input_bits,output_bits,lossless_verified");
            for (label, report) in out
                .verdict
                .report
                .context_labels
                .iter()
                .zip(&out.verdict.strings)
            {
                outln!(
                    "{},{},{},{}",
                    label, report.input_bits, report.output_bits, report.lossless_verified
                );
            }
            Ok(())
        }
        Format::Text => {
            outln!(
                "wrote {} bit-string files to {}",
                out.files.len(),
                out.out_dir
            );
            outln!(
                "codec {}, {} rounds per context, seed {}",
                out.codec, out.n, out.seed
            );
            let r = &out.verdict.report;
            outln!(
                "  {} (lhs): {} bits",
                dotted(&r.context_labels[0]),
                r.lhs as u64
            );
            for (label, term) in r.context_labels[1..].iter().zip(&r.rhs_terms) {
                outln!("  {}: {} bits", dotted(label), *term as u64);
            }
            outln!(
                "side condition: every rhs term ≤ {:.1} bits → {}",
                out.verdict.side_condition_bound_bits,
                if out.verdict.side_condition_met {
                    "met"
                } else {
                    "NOT met"
                }
            );
            outln!(
                "lhs = {:.4}, rhs_total = {:.4}, margin = {:.4} → {}",
                r.lhs,
                r.rhs_total,
                r.margin,
                verdict_word(r.violated)
            );
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> CliResult {
    if args.samples < 1 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    if args.jobs < 1 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let selected: Vec<String> = if args.suites.is_empty() {
        SUITE_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        args.suites.clone()
    };
    for name in &selected {
        if !SUITE_NAMES.contains(&name.as_str()) {
            return Err(Failure::Usage(format!(
                "unknown suite `{}` (expected one of {})",
                name,
                SUITE_NAMES.join(", ")
            )));
        }
    }

    let reports: Vec<SuiteReport> = selected
        .iter()
        .map(|name| run_suite(name, args.samples, args.jobs))
        .collect::<Result<_, Error>>()?;

    match args.format {
        Format::Json => print_json(&reports)?,
        Format::Csv => {
            outln!("suite,cases,failures");
            for report in &reports {
                outln!("{},{},{}", report.name, report.cases, report.failures);
            }
        }
        Format::Text => {
            for report in &reports {
                outln!(
                    "{:<14} {:>6} cases  {}",
                    report.name,
                    report.cases,
                    if report.passed() {
                        "PASS".to_string()
                    } else {
                        format!("FAIL ({} failures)", report.failures)
                    }
                );
                for detail in &report.details {
                    outln!("    {}", detail);
                }
            }
        }
    }

    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(Failure::Invariant(format!(
            "{} suite(s) reported failures",
            failed
        )));
    }
    Ok(())
}
