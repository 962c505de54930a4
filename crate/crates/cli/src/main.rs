//! polaris: build polarization modules, print their graded tables, classify
//! one-generator modules, and replay the published results as verification
//! suites.
//!
//! Exit codes: 0 success, 2 parse error, 3 infeasible parameters,
//! 4 internal or theorem-level inconsistency.

mod fixtures;
mod job;
mod verify;

use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use polaris_core::{Error, RenderStyle};
use serde_json::Value;

use job::{Limits, Target, TOOL};

#[derive(Parser)]
#[command(
    name = "polaris",
    version,
    about = "Exact engine for spaces of matrix polynomials closed under derivatives and polarization"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a module and print dimensions, Hilbert series, and its table.
    Module(ModuleCmd),
    /// Print the graded multiplicity table of a module.
    Frobenius(SeriesCmd),
    /// Print the Hilbert series of a module.
    Hilbert(HilbertCmd),
    /// Predict the isomorphism type of a one-generator module.
    Classify(ClassifyCmd),
    /// Run the rank test that detects degenerate modules.
    Exception(ExceptionCmd),
    /// Replay a published result suite against the engine.
    Verify(VerifyCmd),
}

#[derive(Args, Clone, Copy)]
struct Ceilings {
    /// Largest column count accepted; raise explicitly for bigger jobs.
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// Largest row count accepted.
    #[arg(long, default_value_t = 3)]
    max_l: usize,
    /// Largest generator degree accepted.
    #[arg(long, default_value_t = 6)]
    max_degree: u32,
}

impl Ceilings {
    fn limits(self) -> Limits {
        Limits {
            max_n: self.max_n,
            max_l: self.max_l,
            max_degree: self.max_degree,
        }
    }
}

#[derive(Args)]
struct OutputOpts {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Suppress the header so identical jobs give identical bytes.
    #[arg(long)]
    no_timestamp: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleOpt {
    /// Schur polynomials on both sides.
    Schur,
    /// Complete homogeneous products on both sides.
    H,
}

impl StyleOpt {
    fn style(self) -> RenderStyle {
        match self {
            StyleOpt::Schur => RenderStyle::SchurSchur,
            StyleOpt::H => RenderStyle::HH,
        }
    }
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("target").required(true).args(["gen", "family"])))]
struct TargetOpts {
    /// Generator expression, e.g. "p[2]", "vdm", "1*m[3]+3*m[2,1]+6*m[1,1,1]".
    #[arg(long)]
    gen: Option<String>,
    /// Stable family shorthand, e.g. "A:2", "T:3".
    #[arg(long)]
    family: Option<String>,
}

impl TargetOpts {
    fn expression(&self) -> &str {
        self.gen
            .as_deref()
            .or(self.family.as_deref())
            .expect("clap enforces the target group")
    }
}

#[derive(Args)]
struct ModuleCmd {
    #[command(flatten)]
    target: TargetOpts,
    #[arg(long)]
    n: usize,
    /// Number of variable rows.
    #[arg(long, default_value_t = 1)]
    l: usize,
    /// Comma-separated subset of dims, hilbert, frobenius.
    #[arg(long, default_value = "dims,hilbert,frobenius")]
    show: String,
    #[arg(long, value_enum, default_value_t = StyleOpt::Schur)]
    style: StyleOpt,
    #[command(flatten)]
    out: OutputOpts,
    #[command(flatten)]
    ceil: Ceilings,
}

#[derive(Args)]
struct SeriesCmd {
    #[command(flatten)]
    target: TargetOpts,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, value_enum, default_value_t = StyleOpt::Schur)]
    style: StyleOpt,
    #[command(flatten)]
    out: OutputOpts,
    #[command(flatten)]
    ceil: Ceilings,
}

#[derive(Args)]
struct HilbertCmd {
    #[command(flatten)]
    target: TargetOpts,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[command(flatten)]
    out: OutputOpts,
    #[command(flatten)]
    ceil: Ceilings,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("what").required(true).args(["gen", "point"])))]
struct ClassifyCmd {
    /// Generator expression.
    #[arg(long)]
    gen: Option<String>,
    /// Monomial-basis coordinates "a:b:c" (rationals allowed).
    #[arg(long)]
    point: Option<String>,
    #[arg(long)]
    n: usize,
    /// Also compute the module at this many rows and verify the prediction.
    #[arg(long)]
    l: Option<usize>,
    #[command(flatten)]
    out: OutputOpts,
    #[command(flatten)]
    ceil: Ceilings,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("what").required(true).args(["gen", "point"])))]
struct ExceptionCmd {
    /// Generator expression.
    #[arg(long)]
    gen: Option<String>,
    /// Monomial-basis coordinates "a:b:c" (rationals allowed).
    #[arg(long)]
    point: Option<String>,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    out: OutputOpts,
    #[command(flatten)]
    ceil: Ceilings,
}

#[derive(Args)]
struct VerifyCmd {
    /// One of: theorem-4.1, degree-2, degree-3, exceptions, table-1,
    /// table-2, table-3, families, conjectures.
    #[arg(long)]
    suite: String,
    #[command(flatten)]
    out: OutputOpts,
    #[command(flatten)]
    ceil: Ceilings,
}

fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::UnsupportedGenerator { .. }
        | Error::NotStable { .. }
        | Error::NotHomogeneous
        | Error::NotSymmetric
        | Error::DegreeTooSmall { .. }
        | Error::ZeroPoint => 3,
        _ => 4,
    }
}

fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn emit(doc: Value, text: String, latex: Option<String>, out: &OutputOpts) {
    match out.format {
        Format::Text => {
            if !out.no_timestamp {
                println!("# {} unix {}", TOOL, timestamp());
            }
            print!("{text}");
        }
        Format::Json => {
            let mut doc = doc;
            if !out.no_timestamp {
                if let Some(map) = doc.as_object_mut() {
                    map.insert("timestamp".to_string(), timestamp().into());
                }
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Latex => {
            if !out.no_timestamp {
                println!("% {} unix {}", TOOL, timestamp());
            }
            match latex {
                Some(body) => print!("{body}"),
                None => print!("{text}"),
            }
        }
    }
}

fn configure_pool(out: &OutputOpts) {
    if let Some(jobs) = out.jobs {
        // Ignore failure: the global pool can only be set once.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
}

fn classify_target(gen: &Option<String>, point: &Option<String>) -> Result<Target, Error> {
    match (gen, point) {
        (Some(g), None) => Ok(Target::Gen(g.clone())),
        (None, Some(p)) => Ok(Target::Point(job::parse_point(p)?)),
        _ => unreachable!("clap enforces the group"),
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Cmd::Module(cmd) => {
            configure_pool(&cmd.out);
            let outputs = job::ModuleOutputs::parse(&cmd.show)?;
            let report = job::run_module(
                cmd.target.expression(),
                cmd.n,
                cmd.l,
                outputs,
                cmd.style.style(),
                &cmd.ceil.limits(),
            )?;
            emit(report.json(), report.text(), Some(report.latex()), &cmd.out);
            Ok(0)
        }
        Cmd::Frobenius(cmd) => {
            configure_pool(&cmd.out);
            let outputs = job::ModuleOutputs {
                dims: false,
                hilbert: false,
                frobenius: true,
            };
            let report = job::run_module(
                cmd.target.expression(),
                cmd.n,
                cmd.l,
                outputs,
                cmd.style.style(),
                &cmd.ceil.limits(),
            )?;
            emit(report.json(), report.text(), Some(report.latex()), &cmd.out);
            Ok(0)
        }
        Cmd::Hilbert(cmd) => {
            configure_pool(&cmd.out);
            let outputs = job::ModuleOutputs {
                dims: false,
                hilbert: true,
                frobenius: false,
            };
            let report = job::run_module(
                cmd.target.expression(),
                cmd.n,
                cmd.l,
                outputs,
                StyleOpt::Schur.style(),
                &cmd.ceil.limits(),
            )?;
            emit(report.json(), report.text(), None, &cmd.out);
            Ok(0)
        }
        Cmd::Classify(cmd) => {
            configure_pool(&cmd.out);
            let target = classify_target(&cmd.gen, &cmd.point)?;
            let report = job::run_classify(&target, cmd.n, cmd.l, &cmd.ceil.limits())?;
            let mismatch = report.verified == Some(false);
            emit(report.json(), report.text(), None, &cmd.out);
            Ok(if mismatch { 4 } else { 0 })
        }
        Cmd::Exception(cmd) => {
            configure_pool(&cmd.out);
            let target = classify_target(&cmd.gen, &cmd.point)?;
            let report = job::run_exception(&target, cmd.n, &cmd.ceil.limits())?;
            emit(report.json(), report.text(), None, &cmd.out);
            Ok(0)
        }
        Cmd::Verify(cmd) => {
            configure_pool(&cmd.out);
            if cmd.out.format == Format::Latex {
                return Err(Error::Parse {
                    input: "--format latex".to_string(),
                    reason: "verify reports support text and json".to_string(),
                });
            }
            let report = verify::run_suite(&cmd.suite, cmd.ceil.limits())?;
            let failed = report.failed();
            emit(report.json(), report.text(), None, &cmd.out);
            Ok(if failed { 4 } else { 0 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_of(&e)
        }
    };
    std::process::exit(code);
}
