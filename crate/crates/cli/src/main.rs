use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use mbtgen_cli::{CliError, ServeOptions};
use mbtgen_service::{DEFAULT_KEEP_ALIVE_TIMEOUT, DEFAULT_PORT};
use tracing_subscriber::EnvFilter;

const DEFAULT_TIMEOUT_MS: u64 = DEFAULT_KEEP_ALIVE_TIMEOUT.as_millis() as u64;

/// Generate GraphWalker models from web clickstreams.
#[derive(Parser)]
#[command(name = "mbtgen", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the HTTP recording service.
    Serve {
        #[arg(long, default_value_t = DEFAULT_PORT)]
        port: u16,
        /// Directory receiving the model files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Keep-alive timeout after which a silent session is finalized.
        #[arg(long, default_value_t = DEFAULT_TIMEOUT_MS)]
        timeout_ms: u64,
        /// Listen on all interfaces instead of loopback only.
        #[arg(long)]
        public: bool,
    },
    /// Replay a newline-delimited event log into a model file.
    Convert {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TIMEOUT_MS)]
        timeout_ms: u64,
    },
    /// Check a model file and print any violations.
    Validate { input: PathBuf },
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")))
        .with_writer(std::io::stderr)
        .init();

    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Serve {
            port,
            out_dir,
            timeout_ms,
            public,
        } => {
            let options = ServeOptions {
                port,
                host: if public { [0, 0, 0, 0] } else { [127, 0, 0, 1] },
                out_dir,
                timeout: Duration::from_millis(timeout_ms),
            };
            let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Io(e.to_string()))?;
            runtime.block_on(mbtgen_cli::serve(options))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Convert {
            input,
            output,
            timeout_ms,
        } => {
            let s = mbtgen_cli::convert(&input, &output, Duration::from_millis(timeout_ms))?;
            eprintln!(
                "wrote {} ({} vertices, {} edges, ended by {:?}, {} records ignored)",
                output.display(),
                s.vertices,
                s.edges,
                s.end,
                s.ignored
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { input } => {
            let report = mbtgen_cli::validate(&input)?;
            print!("{report}");
            Ok(if report.is_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
