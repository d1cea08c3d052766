//! Newline-delimited event logs and their offline replay.
//!
//! Each line is one JSON record:
//!
//! ```text
//! {"t":0,"type":"start","name":"PetClinic"}
//! {"t":120,"type":"vertex","name":"Welcome Page"}
//! {"t":2400,"type":"edge","name":"Find Owners"}
//! {"t":3333,"type":"keepalive"}
//! {"t":9000,"type":"stop"}
//! ```
//!
//! `t` is milliseconds since the session start. Replay follows the live
//! service exactly: the watchdog is armed by `start`, re-armed only by
//! `keepalive`, and a record whose `t` reaches the deadline finds the session
//! already finalized.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use tracing::warn;

use crate::error::ModelError;
use crate::model::Model;
use crate::scalar::Scalar;
use crate::session::Session;
use crate::watchdog::{TimerError, WatchdogTimer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Start,
    Vertex,
    Edge,
    Keepalive,
    Stop,
}

impl EventKind {
    fn takes_name(self) -> bool {
        matches!(self, EventKind::Start | EventKind::Vertex | EventKind::Edge)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventLogRecord {
    pub t: u64,
    #[serde(rename = "type")]
    pub kind: EventKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl EventLogRecord {
    pub fn new(t: u64, kind: EventKind, name: Option<&str>) -> Self {
        Self {
            t,
            kind,
            name: name.map(str::to_owned),
        }
    }

    pub fn at(&self) -> Duration {
        Duration::from_millis(self.t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventLogError {
    #[error("event log is empty")]
    Empty,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

impl EventLogError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        EventLogError::Malformed {
            line,
            message: message.into(),
        }
    }
}

/// Parses and checks a log. Blank lines are skipped; line numbers are 1-based.
pub fn parse_event_log(text: &str) -> Result<Vec<EventLogRecord>, EventLogError> {
    let mut records = Vec::new();
    let mut last_t = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: EventLogRecord =
            serde_json::from_str(line).map_err(|e| EventLogError::at(line_no, e.to_string()))?;

        match (records.is_empty(), record.kind) {
            (true, EventKind::Start) => {}
            (true, _) => return Err(EventLogError::at(line_no, "first record must be a start")),
            (false, EventKind::Start) => {
                return Err(EventLogError::at(line_no, "only one start record is allowed"))
            }
            _ => {}
        }
        if record.t < last_t {
            return Err(EventLogError::at(line_no, "timestamps must be non-decreasing"));
        }
        match (record.kind.takes_name(), record.name.as_deref()) {
            (true, None) => return Err(EventLogError::at(line_no, "missing name")),
            (false, Some(_)) => {
                return Err(EventLogError::at(line_no, "this record type takes no name"))
            }
            _ => {}
        }
        if record.kind == EventKind::Start && record.name.as_deref().is_some_and(|n| n.trim().is_empty()) {
            return Err(EventLogError::at(line_no, "start title must not be empty"));
        }
        last_t = record.t;
        records.push(record);
    }
    if records.is_empty() {
        return Err(EventLogError::Empty);
    }
    Ok(records)
}

/// Serializes records back into the line format.
pub fn format_event_log(records: &[EventLogRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("record is serializable") + "\n")
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SessionEnd {
    Stopped { at: Duration },
    /// The watchdog fired at `at` because no keep-alive arrived in time.
    Expired { at: Duration },
    EndOfLog,
}

#[derive(Debug, Clone)]
pub struct Replay<S = f64> {
    pub model: Model<S>,
    pub end: SessionEnd,
    /// Records that reached the session and changed or refreshed it.
    pub applied: usize,
    /// Records dropped after finalization or rejected for unusable labels.
    pub ignored: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error(transparent)]
    Timer(#[from] TimerError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("event log is empty")]
    Empty,
}

/// Replays a validated log through a recording session and a simulated
/// watchdog with the given keep-alive timeout.
pub fn replay<S: Scalar>(records: &[EventLogRecord], timeout: Duration) -> Result<Replay<S>, ReplayError> {
    let (first, rest) = records.split_first().ok_or(ReplayError::Empty)?;
    let title = first.name.as_deref().unwrap_or_default();
    let mut session = Session::<S>::new(title)?;
    let mut timer = WatchdogTimer::new(timeout);
    timer.start(first.at())?;

    let mut applied = 1;
    let mut ignored = 0;
    let mut end = SessionEnd::EndOfLog;

    for (i, record) in rest.iter().enumerate() {
        let now = record.at();
        if let Some(deadline) = timer.deadline() {
            if timer.poll(now) {
                end = SessionEnd::Expired { at: deadline };
                ignored += rest.len() - i;
                break;
            }
        }
        let name = record.name.as_deref().unwrap_or_default();
        let outcome = match record.kind {
            EventKind::Vertex => session.record_vertex(name).map(drop),
            EventKind::Edge => session.record_edge(name),
            EventKind::Keepalive => {
                timer.reset(now);
                Ok(())
            }
            EventKind::Stop => {
                end = SessionEnd::Stopped { at: now };
                applied += 1;
                ignored += rest.len() - i - 1;
                break;
            }
            EventKind::Start => unreachable!("parse_event_log admits a single start"),
        };
        match outcome {
            Ok(()) => applied += 1,
            Err(e) => {
                warn!(t = record.t, error = %e, "ignoring record");
                ignored += 1;
            }
        }
    }

    let model = session.finalize()?;
    Ok(Replay {
        model,
        end,
        applied,
        ignored,
    })
}
