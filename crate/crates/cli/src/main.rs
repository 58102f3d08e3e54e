//! `foldatlas` command-line interface.
//!
//! Exit codes: 0 on success, 1 when a check or verdict fails, 2 on
//! malformed input.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use foldatlas::bounds::{
    fold_bound, fold_bound_surface, gromov_compare, BoundReport, GromovComparison,
};
use foldatlas::curve::{invariants, CurveError, PlanarCurve};
use foldatlas::families::{realize, CurveWord};
use foldatlas::harness::{run_sweep, run_whitney_fuzz, DEFAULT_SEED};
use foldatlas::render::{render_svg, RenderSpec};
use foldatlas::splitting::{
    check_admissible, check_balance, summarize, to_graph, AdmissibilityVerdict, SplitSummary,
    SplitSurface,
};
use foldatlas::witness::{
    build_witness, realize_witness, verify_certificate, AdmissibleCombo, CertificateVerdict,
    WitnessCertificate,
};
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "foldatlas",
    version,
    about = "Plane curve invariants and fold crossing bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Curve generation, checking and fuzzing.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Splitting summaries and graph export.
    #[command(subcommand)]
    Split(SplitCmd),
    /// Lower-bound evaluation.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Sharpness witnesses.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Build and verify the witness of every admissible combination.
    Sweep {
        #[arg(long = "gmax")]
        g_max: u32,
    },
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Realize a family word such as `B+3,1`.
    Gen {
        word: String,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compute the invariants of a curve JSON file.
    Check { file: PathBuf },
    /// Randomized check of the Whitney identities.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, env = "FOLDATLAS_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SplitCmd {
    /// Euler characteristics, counts and balance of a splitting JSON file.
    Summarize { file: PathBuf },
    /// Graphviz rendering of the splitting graph.
    Dot { file: PathBuf },
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Evaluate every bound form for a splitting file or a count tuple.
    Eval {
        file: Option<PathBuf>,
        #[command(flatten)]
        combo: ComboArgs,
    },
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Construct and verify a witness for an admissible combination.
    Build {
        #[command(flatten)]
        combo: ComboArgs,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args, Default)]
struct ComboArgs {
    #[arg(long)]
    g: Option<u32>,
    #[arg(long)]
    sigma: Option<u32>,
    #[arg(long)]
    plus: Option<u32>,
    #[arg(long)]
    minus: Option<u32>,
}

impl ComboArgs {
    fn tuple(&self) -> Option<(u32, u32, u32, u32)> {
        Some((self.g?, self.sigma?, self.plus?, self.minus?))
    }

    fn any(&self) -> bool {
        self.g.is_some() || self.sigma.is_some() || self.plus.is_some() || self.minus.is_some()
    }
}

/// An error carrying the exit code it should produce.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn malformed(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 2,
        error: error.into(),
    }
}

fn failed(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 1,
        error: error.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(malformed)?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(malformed)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(failed)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit<T: Serialize>(value: &T) {
    print!("{}", to_json(value));
}

fn curve_failure(e: CurveError) -> Failure {
    match e {
        CurveError::WhitneyViolation { .. } => failed(e),
        _ => malformed(e),
    }
}

fn curve_cmd(cmd: CurveCmd) -> Outcome {
    match cmd {
        CurveCmd::Gen { word, svg, json } => {
            let word: CurveWord = word.parse().map_err(malformed)?;
            let curve = realize(word).map_err(failed)?;
            let record = invariants(&curve).map_err(curve_failure)?;
            if let Some(p) = json {
                write_file(&p, &to_json(&curve))?;
            }
            if let Some(p) = svg {
                let text = render_svg(&curve, &RenderSpec::default()).map_err(failed)?;
                write_file(&p, &text)?;
            }
            #[derive(Serialize)]
            struct Out<'a> {
                word: CurveWord,
                invariants: &'a foldatlas::curve::InvariantRecord,
                curve: &'a PlanarCurve,
            }
            emit(&Out {
                word,
                invariants: &record,
                curve: &curve,
            });
            Ok(0)
        }
        CurveCmd::Check { file } => {
            let curve: PlanarCurve = read_json(&file)?;
            let record = invariants(&curve).map_err(curve_failure)?;
            emit(&record);
            Ok(0)
        }
        CurveCmd::Fuzz { trials, seed } => {
            if trials == 0 {
                return Err(malformed(anyhow!("--trials must be at least 1")));
            }
            let report = run_whitney_fuzz(trials, seed);
            emit(&report);
            Ok(if report.is_clean() { 0 } else { 1 })
        }
    }
}

fn split_cmd(cmd: SplitCmd) -> Outcome {
    match cmd {
        SplitCmd::Summarize { file } => {
            let s: SplitSurface = read_json(&file)?;
            let summary = summarize(&s).map_err(malformed)?;
            let balance = check_balance(&s);
            #[derive(Serialize)]
            struct Out {
                summary: SplitSummary,
                balanced: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                balance_error: Option<String>,
            }
            emit(&Out {
                summary,
                balanced: balance.is_ok(),
                balance_error: balance.as_ref().err().map(ToString::to_string),
            });
            Ok(if balance.is_ok() { 0 } else { 1 })
        }
        SplitCmd::Dot { file } => {
            let s: SplitSurface = read_json(&file)?;
            let g = to_graph(&s).map_err(malformed)?;
            print!("{}", g.to_dot());
            Ok(0)
        }
    }
}

fn bound_cmd(cmd: BoundCmd) -> Outcome {
    let BoundCmd::Eval { file, combo } = cmd;
    #[derive(Serialize)]
    struct Out {
        summary: SplitSummary,
        #[serde(skip_serializing_if = "Option::is_none")]
        admissibility: Option<AdmissibilityVerdict>,
        report: BoundReport,
        gromov: GromovComparison,
        identities_hold: bool,
    }
    let (summary, report, admissibility) = match (file, combo.tuple()) {
        (Some(_), _) if combo.any() => {
            return Err(malformed(anyhow!(
                "give either a splitting file or --g/--sigma/--plus/--minus, not both"
            )))
        }
        (Some(path), _) => {
            let s: SplitSurface = read_json(&path)?;
            let summary = summarize(&s).map_err(malformed)?;
            let report = fold_bound_surface(&s).map_err(failed)?;
            (summary, report, None)
        }
        (None, Some((g, sigma, p, q))) => {
            let summary = SplitSummary::from_combo(g, sigma, p, q);
            let report = fold_bound(&summary).map_err(failed)?;
            (summary, report, Some(check_admissible(g, sigma, p, q)))
        }
        (None, None) => {
            return Err(malformed(anyhow!(
                "give a splitting file or all of --g, --sigma, --plus and --minus"
            )))
        }
    };
    let ok = report.identities.all_hold();
    emit(&Out {
        summary,
        admissibility,
        gromov: gromov_compare(&summary),
        report,
        identities_hold: ok,
    });
    Ok(if ok { 0 } else { 1 })
}

fn witness_cmd(cmd: WitnessCmd) -> Outcome {
    let WitnessCmd::Build { combo, svg, json } = cmd;
    let (g, sigma, p, q) = combo
        .tuple()
        .ok_or_else(|| malformed(anyhow!("--g, --sigma, --plus and --minus are all required")))?;
    let combo = AdmissibleCombo::new(g, sigma, p, q).map_err(failed)?;
    let cert = build_witness(combo).map_err(failed)?;
    let verdict = verify_certificate(&cert);
    if let Some(path) = json {
        write_file(&path, &to_json(&cert))?;
    }
    if let Some(path) = svg {
        let curve = realize_witness(&cert).map_err(failed)?;
        let text = render_svg(&curve, &RenderSpec::default()).map_err(failed)?;
        write_file(&path, &text)?;
    }
    #[derive(Serialize)]
    struct Out<'a> {
        certificate: &'a WitnessCertificate,
        verdict: &'a CertificateVerdict,
    }
    emit(&Out {
        certificate: &cert,
        verdict: &verdict,
    });
    Ok(if verdict.passed() { 0 } else { 1 })
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Curve(c) => curve_cmd(c),
        Command::Split(c) => split_cmd(c),
        Command::Bound(c) => bound_cmd(c),
        Command::Witness(c) => witness_cmd(c),
        Command::Sweep { g_max } => {
            if g_max < 2 {
                return Err(malformed(anyhow!("--gmax must be at least 2")));
            }
            let report = run_sweep(g_max);
            emit(&report);
            Ok(if report.failures.is_empty() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
