use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sporadic_core::claims::{registry, run, select, Context, RunOptions, RunReport};
use sporadic_core::Error;

const EXIT_USAGE: u8 = 2;
const REPORT_FILE: &str = "report.json";

#[derive(Parser)]
#[command(name = "sporadic", version, about = "Exact verification of the sporadic SIC claims")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run claims and print their reports.
    Verify {
        /// Comma-separated claim ids or names; all claims when omitted.
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Worker threads (defaults to the number of CPUs).
        #[arg(long)]
        threads: Option<usize>,
        /// Reuse and store the Sp(6,2) scan and the last report here.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Record per-claim wall-clock time (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// List the registered claims with their anchors.
    List,
    /// Re-render a stored JSON report.
    Report {
        /// A report file, or a cache directory holding `report.json`.
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for c in registry() {
                let tag = if c.finding { " [finding]" } else { "" };
                println!("{:<4} {}{tag}\n     {}\n     anchor: {}", c.id, c.name, c.description, c.paper_anchor);
            }
            ExitCode::SUCCESS
        }
        Command::Report { path, format } => {
            let file = if path.is_dir() { path.join(REPORT_FILE) } else { path };
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return usage(format!("{}: {e}", file.display())),
            };
            match serde_json::from_str::<RunReport>(&text) {
                Ok(r) => {
                    print!("{}", render(&r, format));
                    ExitCode::SUCCESS
                }
                Err(e) => usage(format!("{}: {e}", file.display())),
            }
        }
        Command::Verify {
            claims,
            format,
            threads,
            cache_dir,
            timings,
        } => {
            let selected = match select(&claims) {
                Ok(s) => s,
                Err(Error::UnknownClaim(id)) => return usage(format!("unknown claim '{id}'")),
                Err(e) => return usage(e),
            };
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(n) = threads {
                if n == 0 {
                    return usage("--threads must be positive");
                }
                pool = pool.num_threads(n);
            }
            let pool = match pool.build() {
                Ok(p) => p,
                Err(e) => return usage(e),
            };
            let ctx = match &cache_dir {
                Some(dir) => Context::with_cache_dir(dir),
                None => Context::new(),
            };
            let result = pool.install(|| run(&selected, &ctx, RunOptions { timings }));
            print!("{}", render(&result.report, format));
            if let Some(dir) = cache_dir {
                let stored = fs::create_dir_all(&dir)
                    .and_then(|_| fs::write(dir.join(REPORT_FILE), result.report.to_json()));
                if let Err(e) = stored {
                    eprintln!("warning: could not store report: {e}");
                }
            }
            ExitCode::from(result.exit_code() as u8)
        }
    }
}
