use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use koszulcat::linalg::Field;
use koszulcat::problem::Problem;
use koszulcat::report::GradedReport;
use koszulcat::tasks::{replay, run_with_threads, Command, Task, TaskOptions};
use koszulcat::Error;

/// Exact Koszul complexes, Hochschild cohomology and syzygy resolutions
/// for monoids in functor categories.
#[derive(Parser)]
#[command(name = "koszulcat", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Check the category, monoid and module axioms.
    Validate(Common),
    /// Koszul complex of --alpha, its homology and optionally the resolution check.
    Koszul(Common),
    /// Regular-sequence check for --alpha.
    RegularCheck(Common),
    /// The commutant C_A(x) at every object.
    Commutant(Common),
    /// Tensor idempotence of the base monoid.
    TensorIdem(Common),
    /// Hochschild cohomology HH^p(A_n, M).
    Hh(Common),
    /// Relative syzygy resolution of an A_n-module.
    Syzygy(Common),
    /// Tensor product M ⊗_A N of two modules.
    TensorOver(Common),
    /// Re-run the problem embedded in a JSON report and compare.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct Common {
    /// Problem file (.kz).
    file: PathBuf,
    /// Coefficient field, overriding the file: Q or F_p.
    #[arg(long)]
    field: Option<String>,
    /// Truncation cap for graded monoids.
    #[arg(long = "max-degree", visible_alias = "cap")]
    max_degree: Option<usize>,
    /// Elements α_1, ..., α_n (repeat or separate with commas).
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<String>,
    /// Number of polynomial variables.
    #[arg(short = 'n')]
    n: Option<usize>,
    /// Cohomological degree.
    #[arg(short = 'p', allow_negative_numbers = true)]
    p: Option<i64>,
    /// Module names from the file (repeatable).
    #[arg(long = "module")]
    modules: Vec<String>,
    /// Run the full resolution check (koszul).
    #[arg(long)]
    check_resolution: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ReplayArgs {
    /// JSON report written by --report.
    #[arg(value_name = "REPORT")]
    input: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    /// Worker threads.
    #[arg(long, env = "KOSZULCAT_THREADS")]
    threads: Option<usize>,
    /// Write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print JSON instead of tables.
    #[arg(long)]
    json: bool,
}

fn command_of(verb: &Verb) -> Option<Command> {
    Some(match verb {
        Verb::Validate(_) => Command::Validate,
        Verb::Koszul(_) => Command::Koszul,
        Verb::RegularCheck(_) => Command::RegularCheck,
        Verb::Commutant(_) => Command::Commutant,
        Verb::TensorIdem(_) => Command::TensorIdem,
        Verb::Hh(_) => Command::Hh,
        Verb::Syzygy(_) => Command::Syzygy,
        Verb::TensorOver(_) => Command::TensorOver,
        Verb::Replay(_) => return None,
    })
}

fn emit(report: &GradedReport, out: &Output) -> Result<(), Error> {
    if let Some(path) = &out.report {
        std::fs::write(path, report.to_json())?;
    }
    if out.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<bool, Error> {
    let command = command_of(&cli.verb);
    match cli.verb {
        Verb::Replay(args) => {
            let text = std::fs::read_to_string(&args.input)?;
            let original = GradedReport::from_json(&text)?;
            let outcome = replay(&original, args.output.threads)?;
            emit(&outcome.report, &args.output)?;
            if !outcome.identical {
                eprintln!("replay differs from {}", args.input.display());
            }
            Ok(outcome.identical && outcome.report.passed)
        }
        Verb::Validate(c)
        | Verb::Koszul(c)
        | Verb::RegularCheck(c)
        | Verb::Commutant(c)
        | Verb::TensorIdem(c)
        | Verb::Hh(c)
        | Verb::Syzygy(c)
        | Verb::TensorOver(c) => {
            let field = c.field.as_deref().map(str::parse::<Field>).transpose()?;
            let problem = Problem::load(&c.file, field)?;
            let opts = TaskOptions {
                command,
                alpha: (!c.alpha.is_empty()).then_some(c.alpha),
                n: c.n,
                p: c.p,
                max_degree: c.max_degree,
                modules: (!c.modules.is_empty()).then_some(c.modules),
                check_resolution: c.check_resolution,
            };
            let task = Task::resolve(&problem, &opts)?;
            let report = run_with_threads(&problem, &task, c.output.threads)?;
            emit(&report, &c.output)?;
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("koszulcat: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
