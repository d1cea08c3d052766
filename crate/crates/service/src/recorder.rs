//! The single recording session shared by all requests, and its watchdog.
//!
//! Every operation takes the state lock, first lets an overdue watchdog
//! finalize the session, then applies itself. Export work (layout, encoding,
//! file write) happens after the lock is released, on the caller that
//! finalized the session.

use std::path::PathBuf;
use std::sync::{Arc, Mutex, MutexGuard, PoisonError};
use std::time::Duration;

use mbtgen_core::export::{render, save_mbt_json, ExportError};
use mbtgen_core::{Model, ModelError, Session, TimerError, WatchdogTimer};
use thiserror::Error;
use tokio::sync::Notify;
use tracing::{error, info, warn};

use crate::clock::Clock;
use crate::config::ServiceConfig;

/// Successful replies; each maps to a fixed response body.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ack {
    Started,
    Ok,
    Alive,
    NoSession,
    Stopped,
}

impl Ack {
    pub fn body(self) -> &'static str {
        match self {
            Ack::Started => "STARTED",
            Ack::Ok => "OK",
            Ack::Alive => "ALIVE",
            Ack::NoSession => "NO_SESSION",
            Ack::Stopped => "STOPPED",
        }
    }
}

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("missing parameter {0:?}")]
    MissingParameter(&'static str),
    #[error(transparent)]
    Rejected(#[from] ModelError),
    #[error("NO_SESSION")]
    NoSession,
    #[error(transparent)]
    Storage(#[from] ExportError),
}

#[derive(Debug)]
struct State {
    session: Option<Session>,
    timer: WatchdogTimer,
}

impl State {
    /// Finalizes the session if the watchdog deadline has been reached.
    fn expire_if_due(&mut self, now: Duration) -> Option<Model> {
        if !self.timer.poll(now) {
            return None;
        }
        let mut session = self.session.take()?;
        info!(title = session.model().name(), "keep-alive timeout, finalizing session");
        session.finalize().ok()
    }

    fn end_session(&mut self) -> Option<Model> {
        self.timer.cancel();
        self.session.take().and_then(|mut s| s.finalize().ok())
    }
}

pub struct Recorder {
    config: ServiceConfig,
    clock: Arc<dyn Clock>,
    state: Mutex<State>,
    wake: Notify,
}

impl Recorder {
    pub fn new(config: ServiceConfig, clock: Arc<dyn Clock>) -> Result<Self, TimerError> {
        config.validate()?;
        let timer = WatchdogTimer::new(config.keep_alive_timeout);
        Ok(Self {
            config,
            clock,
            state: Mutex::new(State {
                session: None,
                timer,
            }),
            wake: Notify::new(),
        })
    }

    pub fn config(&self) -> &ServiceConfig {
        &self.config
    }

    fn lock(&self) -> (MutexGuard<'_, State>, Duration, Option<Model>) {
        let mut state = self.state.lock().unwrap_or_else(PoisonError::into_inner);
        let now = self.clock.now();
        let expired = state.expire_if_due(now);
        (state, now, expired)
    }

    /// Starts a new session, finalizing and saving any session still recording.
    pub fn start(&self, title: Option<&str>) -> Result<Ack, ServiceError> {
        let title = title.ok_or(ServiceError::MissingParameter("title"))?;
        let session = Session::new(title)?;
        let (expired, preempted) = {
            let (mut state, now, expired) = self.lock();
            let preempted = state.end_session();
            info!(title = session.model().name(), "recording started");
            state.session = Some(session);
            state.timer = WatchdogTimer::new(self.config.keep_alive_timeout);
            state
                .timer
                .start(now)
                .expect("timeout validated at construction");
            (expired, preempted)
        };
        self.wake.notify_one();
        for model in expired.into_iter().chain(preempted) {
            let _ = self.publish(model);
        }
        Ok(Ack::Started)
    }

    pub fn vertex(&self, name: Option<&str>) -> Result<Ack, ServiceError> {
        let name = name.ok_or(ServiceError::MissingParameter("name"))?;
        self.with_session(|s| s.record_vertex(name).map(drop))
    }

    pub fn edge(&self, name: Option<&str>) -> Result<Ack, ServiceError> {
        let name = name.ok_or(ServiceError::MissingParameter("name"))?;
        self.with_session(|s| s.record_edge(name))
    }

    fn with_session(&self, f: impl FnOnce(&mut Session) -> Result<(), ModelError>) -> Result<Ack, ServiceError> {
        let (result, expired) = {
            let (mut state, _, expired) = self.lock();
            let result = match state.session.as_mut() {
                None => Err(ServiceError::NoSession),
                Some(session) => f(session).map(|()| Ack::Ok).map_err(ServiceError::from),
            };
            (result, expired)
        };
        self.publish_expired(expired);
        result
    }

    /// Re-arms the watchdog. Reports `NoSession` when idle, which is not an error.
    pub fn keepalive(&self) -> Ack {
        let (ack, expired) = {
            let (mut state, now, expired) = self.lock();
            let ack = if state.session.is_some() {
                state.timer.reset(now);
                Ack::Alive
            } else {
                Ack::NoSession
            };
            (ack, expired)
        };
        self.wake.notify_one();
        self.publish_expired(expired);
        ack
    }

    /// Finalizes the active session and writes its model file.
    pub fn stop(&self) -> Result<Ack, ServiceError> {
        let (ended, expired) = {
            let (mut state, _, expired) = self.lock();
            (state.end_session(), expired)
        };
        self.wake.notify_one();
        self.publish_expired(expired);
        let model = ended.ok_or(ServiceError::NoSession)?;
        self.publish(model)?;
        Ok(Ack::Stopped)
    }

    /// Watchdog expiry hook: finalizes and saves the session if its deadline
    /// has passed. Returns the outcome of the save when one happened.
    pub fn tick(&self) -> Option<Result<PathBuf, ExportError>> {
        let (state, _, expired) = self.lock();
        drop(state);
        expired.map(|m| self.publish(m))
    }

    /// Flushes whatever is still recording; used on process shutdown.
    pub fn shutdown(&self) -> Option<Result<PathBuf, ExportError>> {
        let (expired, ended) = {
            let (mut state, _, expired) = self.lock();
            (expired, state.end_session())
        };
        self.wake.notify_one();
        expired.or(ended).map(|m| self.publish(m))
    }

    pub fn is_recording(&self) -> bool {
        let (state, _, expired) = self.lock();
        let recording = state.session.is_some();
        drop(state);
        self.publish_expired(expired);
        recording
    }

    /// Time left before the watchdog fires, `None` when disarmed.
    pub fn time_until_expiry(&self) -> Option<Duration> {
        let state = self.state.lock().unwrap_or_else(PoisonError::into_inner);
        state.timer.remaining(self.clock.now())
    }

    /// Resolves whenever the watchdog deadline may have moved.
    pub async fn deadline_changed(&self) {
        self.wake.notified().await;
    }

    fn publish_expired(&self, expired: Option<Model>) {
        if let Some(model) = expired {
            let _ = self.publish(model);
        }
    }

    fn publish(&self, model: Model) -> Result<PathBuf, ExportError> {
        let name = model.name().to_owned();
        let (vertices, edges) = (model.vertices().len(), model.edges().len());
        let saved = render(model, &self.config.layout)
            .and_then(|doc| save_mbt_json(&doc, &name, &self.config.out_dir));
        match &saved {
            Ok(path) => info!(model = %name, vertices, edges, path = %path.display(), "model saved"),
            Err(e) => error!(model = %name, error = %e, "failed to save model"),
        }
        if vertices == 0 {
            warn!(model = %name, "saved an empty model");
        }
        saved
    }
}

/// Sleeps until the watchdog deadline and fires it, forever. Run this on a
/// runtime when using a real clock; with a manual clock call
/// [`Recorder::tick`] directly instead.
pub async fn run_watchdog(recorder: Arc<Recorder>) {
    loop {
        match recorder.time_until_expiry() {
            Some(wait) => {
                tokio::select! {
                    _ = tokio::time::sleep(wait) => {}
                    _ = recorder.deadline_changed() => {}
                }
            }
            None => recorder.deadline_changed().await,
        }
        let r = Arc::clone(&recorder);
        if tokio::task::spawn_blocking(move || r.tick()).await.is_err() {
            error!("watchdog tick panicked");
        }
    }
}
