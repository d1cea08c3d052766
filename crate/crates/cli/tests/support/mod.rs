//! Shared helpers: an in-process server on a manual clock, a driver that
//! replays event logs against it over HTTP, and a seeded log generator.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use mbtgen_core::eventlog::{EventKind, EventLogRecord};
use mbtgen_core::export::file_stem;
use mbtgen_service::{serve, ManualClock, Recorder, ServiceConfig, WatchdogMode};
use rand::rngs::StdRng;
use rand::Rng;
use reqwest::StatusCode;
use tokio::net::TcpListener;
use tokio::sync::oneshot;

pub const TIMEOUT: Duration = Duration::from_millis(10_000);

pub struct LiveServer {
    pub base: String,
    pub clock: Arc<ManualClock>,
    pub recorder: Arc<Recorder>,
    pub client: reqwest::Client,
    out_dir: PathBuf,
    stop: Option<oneshot::Sender<()>>,
    handle: tokio::task::JoinHandle<std::io::Result<()>>,
}

impl LiveServer {
    /// Starts a server whose watchdog only fires through [`Recorder::tick`]
    /// or lazily on the next request.
    pub async fn start(out_dir: &Path, timeout: Duration) -> Self {
        let clock = Arc::new(ManualClock::new());
        let config = ServiceConfig {
            port: 0,
            keep_alive_timeout: timeout,
            out_dir: out_dir.to_owned(),
            ..ServiceConfig::default()
        };
        let recorder = Arc::new(Recorder::new(config, clock.clone()).unwrap());
        let listener = TcpListener::bind("127.0.0.1:0").await.unwrap();
        let base = format!("http://{}", listener.local_addr().unwrap());
        let (tx, rx) = oneshot::channel();
        let handle = tokio::spawn(serve(listener, Arc::clone(&recorder), WatchdogMode::Manual, async {
            let _ = rx.await;
        }));
        LiveServer {
            base,
            clock,
            recorder,
            client: reqwest::Client::new(),
            out_dir: out_dir.to_owned(),
            stop: Some(tx),
            handle,
        }
    }

    pub async fn post(&self, path: &str, form: &[(&str, &str)]) -> (StatusCode, String) {
        let resp = self
            .client
            .post(format!("{}{path}", self.base))
            .form(form)
            .send()
            .await
            .expect("request failed");
        let status = resp.status();
        (status, resp.text().await.unwrap())
    }

    /// Sends the log to the server with the clock set to each record's
    /// timestamp, firing the watchdog before every request as a timer
    /// thread would. A session still open at the end is stopped at the last
    /// timestamp. Returns the path of the model file.
    pub async fn drive(&self, origin: Duration, records: &[EventLogRecord]) -> PathBuf {
        for r in records {
            self.clock.set(origin + r.at());
            self.recorder.tick();
            let name = r.name.as_deref().unwrap_or_default();
            let (status, body) = match r.kind {
                EventKind::Start => self.post("/startrec", &[("title", name)]).await,
                EventKind::Vertex => self.post("/vertex", &[("name", name)]).await,
                EventKind::Edge => self.post("/edge", &[("name", name)]).await,
                EventKind::Keepalive => self.post("/keepalive", &[]).await,
                EventKind::Stop => self.post("/stoprec", &[]).await,
            };
            assert!(
                matches!(status.as_u16(), 200 | 400 | 409),
                "unexpected {status} {body} for {r:?}"
            );
        }
        if self.recorder.is_recording() {
            assert_eq!(self.post("/stoprec", &[]).await.1, "STOPPED");
        }
        let title = records[0].name.as_deref().unwrap();
        self.out_dir.join(format!("{}.json", file_stem(title.trim())))
    }

    pub async fn shutdown(mut self) {
        self.stop.take().unwrap().send(()).unwrap();
        self.handle.await.unwrap().unwrap();
    }
}

const LABELS: &[&str] = &[
    "Home",
    "Find Owners",
    "owners!!",
    "v_Home",
    "Vets",
    "Add owner",
    "Search",
    "e_SEARCH",
    "?!",
    "Task list",
];

/// A random log of `start` followed by up to `max_events` records. Gaps are
/// mostly short but occasionally long enough to trip the watchdog.
pub fn random_log(rng: &mut StdRng, title: &str, max_events: usize) -> Vec<EventLogRecord> {
    let mut t = 0u64;
    let mut out = vec![EventLogRecord::new(0, EventKind::Start, Some(title))];
    let n = rng.random_range(0..=max_events);
    for _ in 0..n {
        t += match rng.random_range(0..20) {
            0 => rng.random_range(9_000..14_000),
            1 => 0,
            _ => rng.random_range(1..4_000),
        };
        let label = LABELS[rng.random_range(0..LABELS.len())];
        let record = match rng.random_range(0..100) {
            0..=44 => EventLogRecord::new(t, EventKind::Vertex, Some(label)),
            45..=84 => EventLogRecord::new(t, EventKind::Edge, Some(label)),
            85..=97 => EventLogRecord::new(t, EventKind::Keepalive, None),
            _ => EventLogRecord::new(t, EventKind::Stop, None),
        };
        out.push(record);
    }
    out
}
