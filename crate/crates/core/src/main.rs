use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dubois::cli::{emit_report, parse_scenario, run_scenario, selftest, Format, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "dubois", version, about = "Build and verify relative Du Bois towers in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and report every check.
    Run {
        scenario: PathBuf,
        /// Overrides the scenario's `format` key.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Write the report here instead of stdout. Overrides `output`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in invariant suite.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("dubois: {msg}");
    ExitCode::from(EXIT_USAGE as u8)
}

fn run(path: &Path, format: Option<FormatArg>, out: Option<PathBuf>) -> ExitCode {
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => return usage_error(format_args!("{}: {e}", path.display())),
    };
    let scenario = match parse_scenario(&bytes) {
        Ok(s) => s,
        Err(e) => return usage_error(format_args!("{}:\n{e}", path.display())),
    };
    let base = path.parent().unwrap_or(Path::new("."));
    let format = match format {
        Some(FormatArg::Text) => Format::Text,
        Some(FormatArg::Json) => Format::Json,
        None => scenario.format,
    };
    // `output` in the scenario is relative to the scenario file.
    let out = out.or_else(|| scenario.output.as_ref().map(|o| base.join(o)));

    let report = run_scenario(&scenario, base);
    let text = emit_report(&report, format);
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, &text) {
                return usage_error(format_args!("{}: {e}", p.display()));
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { scenario, format, out } => run(&scenario, format, out),
        Command::Selftest => {
            let t = selftest();
            print!("{}", t.render());
            ExitCode::from(if t.passed() { 0 } else { 1 })
        }
    }
}
