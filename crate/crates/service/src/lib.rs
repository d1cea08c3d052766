//! Recording service: receives clickstream events over HTTP, keeps one live
//! session, and writes a GraphWalker model file when the session ends by
//! `/stoprec`, by a new `/startrec`, by keep-alive timeout, or on shutdown.

pub mod clock;
pub mod config;
pub mod http;
pub mod recorder;

use std::future::Future;
use std::io;
use std::sync::Arc;

use tokio::net::TcpListener;

pub use clock::{Clock, ManualClock, SystemClock};
pub use config::{ServiceConfig, DEFAULT_KEEP_ALIVE_TIMEOUT, DEFAULT_PORT};
pub use http::router;
pub use recorder::{run_watchdog, Ack, Recorder, ServiceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WatchdogMode {
    /// A background task fires the watchdog on time.
    Background,
    /// Nobody fires it; the caller drives [`Recorder::tick`]. Overdue
    /// sessions are still finalized lazily by the next request.
    Manual,
}

/// Serves until `shutdown` resolves, then flushes any session still recording.
pub async fn serve(
    listener: TcpListener,
    recorder: Arc<Recorder>,
    mode: WatchdogMode,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> io::Result<()> {
    let watchdog = (mode == WatchdogMode::Background).then(|| tokio::spawn(run_watchdog(Arc::clone(&recorder))));
    let served = axum::serve(listener, router(Arc::clone(&recorder)))
        .with_graceful_shutdown(shutdown)
        .await;
    if let Some(task) = watchdog {
        task.abort();
    }
    let r = Arc::clone(&recorder);
    match tokio::task::spawn_blocking(move || r.shutdown()).await {
        Ok(Some(Err(e))) => tracing::error!(error = %e, "failed to flush session on shutdown"),
        Err(e) => tracing::error!(error = %e, "shutdown flush panicked"),
        _ => {}
    }
    served
}
