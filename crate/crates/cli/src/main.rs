//! `matschur`: JSON reports on unimodular arrangements.

mod commands;
mod input;
mod suites;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use matschur::field::FieldSpec;

use commands::{FaceringOptions, Options, Outcome, VerifyOptions};
use input::{InputError, Instance};

#[derive(Parser)]
#[command(name = "matschur", version, about = "Cellular algebras of unimodular arrangements, checked exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Field to work over: `q` or `fp:<p>`. Repeatable.
    #[arg(long = "field", value_name = "FIELD")]
    fields: Vec<FieldSpec>,
    /// Add wall-clock timings to the report. Makes output nondeterministic.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Poset, block census, and U / Ǔ dimensions.
    Analyze {
        /// Instance file, or `-` for stdin.
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run check suites: cellular, gale, schur, adjoint, starclosed, facering, quiver, or all.
    Verify {
        file: String,
        /// Suites to run, comma separated. Defaults to all.
        #[arg(value_name = "SUITE")]
        suites: Vec<String>,
        /// Largest degree (doubled grading) for the face ring suite.
        #[arg(long, default_value_t = 10)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Semisimplicity of R(V) over each prime and over Q.
    Semisimple {
        file: String,
        #[arg(long, default_value = "2,3,5")]
        primes: String,
        #[command(flatten)]
        common: Common,
    },
    /// Face ring decomposition along a flat, or along every flat.
    Facering {
        file: String,
        /// Flat as 1-based labels, e.g. `3,4`.
        #[arg(long)]
        flat: Option<String>,
        /// Affine shift, comma separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Covector, comma separated integers.
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long, default_value_t = 10)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Everything on the four-element example.
    Demo {
        #[command(flatten)]
        common: Common,
    },
    /// Verify every instance in a directory of JSON files, or the bundled corpus.
    Corpus {
        dir: Option<String>,
        #[arg(long, default_value_t = 10)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn options(c: Common) -> Options {
    Options { fields: c.fields, timings: c.timings }
}

fn load_dir(dir: &str) -> Result<Vec<Instance>, InputError> {
    let entries = std::fs::read_dir(dir).map_err(|e| InputError::new("io", format!("{dir}: {e}")))?;
    let mut paths: Vec<_> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out: Vec<Instance> = paths.iter().map(|p| input::load(&p.to_string_lossy())).collect::<Result<_, _>>()?;
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

fn bundled() -> Vec<Instance> {
    let mut out: Vec<Instance> = matschur::corpus::bundled()
        .into_iter()
        .map(|(name, arrangement)| Instance { name: name.to_string(), arrangement, fields: vec![] })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

fn run(cmd: Command) -> Result<Outcome, InputError> {
    match cmd {
        Command::Analyze { file, common } => commands::analyze(&input::load(&file)?, &options(common)),
        Command::Verify { file, suites, degree, seed, common } => {
            let inst = input::load(&file)?;
            let v = VerifyOptions { suites: commands::parse_suites(&suites)?, degree, seed };
            commands::verify(&inst, &options(common), &v)
        }
        Command::Semisimple { file, primes, common } => {
            let primes = commands::parse_primes(&primes)?;
            commands::semisimple(&input::load(&file)?, &primes, &options(common))
        }
        Command::Facering { file, flat, alpha, xi, degree, seed, common } => {
            let f = FaceringOptions { flat, alpha, xi, degree, seed };
            commands::facering(&input::load(&file)?, &f, &options(common))
        }
        Command::Demo { common } => Ok(commands::demo(&options(common))),
        Command::Corpus { dir, degree, seed, common } => {
            let instances = match dir {
                Some(d) if Path::new(&d).is_dir() => load_dir(&d)?,
                Some(d) => return Err(InputError::new("io", format!("{d} is not a directory"))),
                None => bundled(),
            };
            let v = VerifyOptions { suites: commands::parse_suites(&[])?, degree, seed };
            Ok(commands::corpus(&instances, &options(common), &v))
        }
    }
}

fn emit(v: &serde_json::Value) {
    let text = serde_json::to_string_pretty(v).expect("reports serialize");
    // A closed pipe is not worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(o) => {
            emit(&o.report);
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            emit(&e.to_json());
            ExitCode::from(2)
        }
    }
}
