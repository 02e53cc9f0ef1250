use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use hadamard_cli::{run_bench, run_convert, run_generate, run_verify, CliError, Format, GenerateOptions};

#[derive(Parser)]
#[command(name = "hadamard", version, about = "Hadamard matrices in {0,1} presentation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate matrices of order m (m = 3 mod 4).
    Generate(GenerateArgs),
    /// Check every matrix in a file.
    Verify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Grouplist)]
        format: Format,
    },
    /// Rewrite a matrix file in another format.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        from: Format,
        #[arg(long, value_enum)]
        to: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Normalize ±1 input instead of rejecting it.
        #[arg(long)]
        normalize: bool,
    },
    /// Measure the generation rate.
    Bench {
        #[arg(short)]
        m: usize,
        #[arg(long)]
        limit: Option<u64>,
        /// Time budget in seconds.
        #[arg(long)]
        duration: Option<f64>,
        #[arg(long, default_value_t = 0)]
        parallel: usize,
    },
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(short)]
    m: usize,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    limit: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Grouplist)]
    format: Format,
    /// Check each matrix as it is produced (default for m <= 15).
    #[arg(long, overrides_with = "no_verify")]
    verify: bool,
    #[arg(long, overrides_with = "verify")]
    no_verify: bool,
    /// Log every row the search enters.
    #[arg(long)]
    progress: bool,
    /// Split the search across this many threads.
    #[arg(long, default_value_t = 0)]
    parallel: usize,
}

fn output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Generate(args) => {
            let mut opts = GenerateOptions::new(args.m);
            opts.limit = args.limit.filter(|&l| l > 0);
            opts.format = args.format;
            opts.verify = match (args.verify, args.no_verify) {
                (true, _) => Some(true),
                (_, true) => Some(false),
                _ => None,
            };
            opts.progress = args.progress;
            opts.parallel = args.parallel;
            let summary = run_generate(&opts, output(args.output.as_deref())?)?;
            eprintln!("{summary}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, format } => {
            let text = fs::read_to_string(&input)?;
            let verdicts = run_verify(&text, format, io::stdout().lock())?;
            Ok(if verdicts.iter().all(|v| v.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Convert {
            input,
            from,
            to,
            output: out,
            normalize,
        } => {
            let text = fs::read_to_string(&input)?;
            let n = run_convert(&text, from, to, normalize, output(out.as_deref())?)?;
            eprintln!("converted {n} matrices");
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            m,
            limit,
            duration,
            parallel,
        } => {
            let report = run_bench(
                m,
                limit.filter(|&l| l > 0),
                duration.map(Duration::from_secs_f64),
                parallel,
            )?;
            println!("{report}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let progress = matches!(&cli.command, Command::Generate(a) if a.progress);
    env_logger::Builder::from_env(
        env_logger::Env::default().default_filter_or(if progress { "info" } else { "warn" }),
    )
    .target(env_logger::Target::Stderr)
    .init();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
