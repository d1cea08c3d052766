//! Command implementations behind the `mbtgen` binary.
//!
//! Exit codes: 0 success, 1 validation failures, 2 bad input, 3 I/O.

use std::fs;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use mbtgen_core::eventlog::{parse_event_log, replay, ReplayError, SessionEnd};
use mbtgen_core::export::{render, write_document, ExportError};
use mbtgen_core::{validate_document, LayoutConfig, ValidationReport};
use mbtgen_service::{Recorder, ServiceConfig, SystemClock, WatchdogMode};
use thiserror::Error;
use tokio::net::TcpListener;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvertSummary {
    pub vertices: usize,
    pub edges: usize,
    pub end: SessionEnd,
    pub ignored: usize,
}

/// Replays an event log offline and writes the resulting model file.
pub fn convert(input: &Path, output: &Path, timeout: Duration) -> Result<ConvertSummary, CliError> {
    let text = read(input)?;
    let records = parse_event_log(&text).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let outcome = replay::<f64>(&records, timeout).map_err(|e| match e {
        ReplayError::Timer(e) => CliError::Input(e.to_string()),
        other => CliError::Input(format!("{}: {other}", input.display())),
    })?;
    let summary = ConvertSummary {
        vertices: outcome.model.vertices().len(),
        edges: outcome.model.edges().len(),
        end: outcome.end,
        ignored: outcome.ignored,
    };
    let document = render(outcome.model, &LayoutConfig::default()).map_err(|e| CliError::Input(e.to_string()))?;
    write_document(&document, output).map_err(|e| match e {
        ExportError::StorageFailure { .. } => CliError::Io(e.to_string()),
        other => CliError::Input(other.to_string()),
    })?;
    Ok(summary)
}

/// Checks a model file and returns the violation report.
pub fn validate(input: &Path) -> Result<ValidationReport, CliError> {
    Ok(validate_document(&read(input)?))
}

#[derive(Debug, Clone)]
pub struct ServeOptions {
    pub port: u16,
    pub host: [u8; 4],
    pub out_dir: PathBuf,
    pub timeout: Duration,
}

/// Runs the recording service until Ctrl-C or SIGTERM.
pub async fn serve(options: ServeOptions) -> Result<(), CliError> {
    let config = ServiceConfig {
        port: options.port,
        keep_alive_timeout: options.timeout,
        out_dir: options.out_dir,
        layout: LayoutConfig::default(),
    };
    let recorder = Recorder::new(config, Arc::new(SystemClock::new())).map_err(|e| CliError::Input(format!("invalid --timeout-ms: {e}")))?;
    let out_dir = &recorder.config().out_dir;
    fs::create_dir_all(out_dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;

    let addr = SocketAddr::from((options.host, options.port));
    let listener = TcpListener::bind(addr)
        .await
        .map_err(|e| CliError::Io(format!("cannot listen on {addr}: {e}")))?;
    tracing::info!(%addr, out_dir = %out_dir.display(), "listening");
    mbtgen_service::serve(listener, Arc::new(recorder), WatchdogMode::Background, shutdown_signal())
        .await
        .map_err(|e| CliError::Io(e.to_string()))
}

async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        if let Ok(mut s) = tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            s.recv().await;
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {}
        _ = term => {}
    }
    tracing::info!("shutting down");
}
