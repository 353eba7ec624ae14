mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{FuzzParams, Method, OutputFormat, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "qspine",
    version,
    about = "Quantum invariants of 2-complexes and their thickenings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute Z_Q of a presentation file.
    Invariant {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Defaults to `both` when the Euler characteristic is at least 1, `skein` otherwise.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Check the ring and category identities for each prime.
    #[command(alias = "verify-identities")]
    Verify {
        #[arg(long = "p", value_delimiter = ',', default_value = "5,7,11,13")]
        primes: Vec<u64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        timing: bool,
    },
    /// Random presentations pushed along random Andrews-Curtis moves.
    FuzzAc {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "homology")]
        method: MethodArg,
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long, default_value_t = 6)]
        moves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only this case index (for replaying a reported failure).
        #[arg(long)]
        case: Option<usize>,
        /// Where discrepancies are appended.
        #[arg(long, default_value = "qspine-fuzz-failures.log")]
        log: PathBuf,
    },
    /// Print the dual presentation.
    Dual { file: PathBuf },
    /// Components, framings, linking matrix and inertia of a link file.
    LinkInfo {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Surgery invariant of the boundary 3-manifold described by a link file.
    Rtw {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long = "p", default_value_t = 5)]
    p: u64,
    /// Largest total cable width the skein evaluator accepts.
    #[arg(long, default_value_t = qspine::skein::DEFAULT_GUARD)]
    guard: usize,
    #[arg(long)]
    json: bool,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Homology,
    Skein,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Homology => Method::Homology,
            MethodArg::Skein => Method::Skein,
            MethodArg::Both => Method::Both,
        }
    }
}

fn config(
    common: &Common,
    method: Option<MethodArg>,
    fuzz: FuzzParams,
) -> Result<RunConfig, commands::Failure> {
    RunConfig::new(
        common.p,
        method.map(Method::from),
        common.guard,
        fuzz,
        if common.json {
            OutputFormat::Json
        } else {
            OutputFormat::Text
        },
        common.timing,
    )
    .map_err(commands::Failure::Usage)
}

fn run(cli: Cli) -> Result<String, commands::Failure> {
    match cli.command {
        Command::Invariant {
            file,
            common,
            method,
        } => {
            let cfg = config(&common, method, FuzzParams::default())?;
            commands::invariant(&file, &cfg)
        }
        Command::Verify {
            primes,
            json,
            timing,
        } => commands::verify(
            &primes,
            if json {
                OutputFormat::Json
            } else {
                OutputFormat::Text
            },
            timing,
        ),
        Command::FuzzAc {
            common,
            method,
            cases,
            moves,
            seed,
            case,
            log,
        } => {
            let fuzz = FuzzParams {
                seed,
                moves,
                cases,
                only_case: case,
            };
            let cfg = config(&common, Some(method), fuzz)?;
            commands::fuzz_ac(&cfg, &log)
        }
        Command::Dual { file } => commands::dual(&file),
        Command::LinkInfo { file, json } => commands::link_info(
            &file,
            if json {
                OutputFormat::Json
            } else {
                OutputFormat::Text
            },
        ),
        Command::Rtw { file, common } => {
            let cfg = config(&common, None, FuzzParams::default())?;
            commands::rtw(&file, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if let Some(out) = failure.stdout() {
                print!("{out}");
            }
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
