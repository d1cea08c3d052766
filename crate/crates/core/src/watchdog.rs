//! Keep-alive watchdog driven by an external notion of time.
//!
//! The timer holds no clock of its own: callers pass the current instant
//! (time elapsed since some fixed origin) to every operation and poll for
//! expiry. The same timer therefore drives both the live service and the
//! offline replay, and tests control time exactly.

use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TimerError {
    #[error("timer delay must be greater than 0 seconds")]
    InvalidDelay,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WatchdogTimer {
    delay: Duration,
    deadline: Option<Duration>,
    started: bool,
}

impl WatchdogTimer {
    pub fn new(delay: Duration) -> Self {
        Self {
            delay,
            deadline: None,
            started: false,
        }
    }

    pub fn delay(&self) -> Duration {
        self.delay
    }

    /// Arms the timer to expire `delay` after `now`.
    pub fn start(&mut self, now: Duration) -> Result<(), TimerError> {
        if self.delay.is_zero() {
            return Err(TimerError::InvalidDelay);
        }
        self.deadline = Some(now + self.delay);
        self.started = true;
        Ok(())
    }

    /// Cancels any pending expiry and re-arms with the full delay.
    /// Returns `false` if the timer was never started.
    pub fn reset(&mut self, now: Duration) -> bool {
        if !self.started {
            return false;
        }
        self.cancel();
        self.start(now).is_ok()
    }

    pub fn cancel(&mut self) {
        self.deadline = None;
    }

    pub fn is_armed(&self) -> bool {
        self.deadline.is_some()
    }

    pub fn deadline(&self) -> Option<Duration> {
        self.deadline
    }

    /// Time left before expiry, zero if already due.
    pub fn remaining(&self, now: Duration) -> Option<Duration> {
        self.deadline.map(|d| d.saturating_sub(now))
    }

    /// Returns `true` exactly once per arm cycle, as soon as `now` reaches the
    /// deadline, and disarms the timer.
    pub fn poll(&mut self, now: Duration) -> bool {
        match self.deadline {
            Some(deadline) if now >= deadline => {
                self.deadline = None;
                true
            }
            _ => false,
        }
    }
}
