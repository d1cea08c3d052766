use std::path::PathBuf;
use std::time::Duration;

use mbtgen_core::{LayoutConfig, TimerError};

pub const DEFAULT_PORT: u16 = 8496;
pub const DEFAULT_KEEP_ALIVE_TIMEOUT: Duration = Duration::from_millis(10_000);

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub port: u16,
    pub keep_alive_timeout: Duration,
    pub out_dir: PathBuf,
    pub layout: LayoutConfig<f64>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            port: DEFAULT_PORT,
            keep_alive_timeout: DEFAULT_KEEP_ALIVE_TIMEOUT,
            out_dir: PathBuf::from("."),
            layout: LayoutConfig::default(),
        }
    }
}

impl ServiceConfig {
    pub fn validate(&self) -> Result<(), TimerError> {
        if self.keep_alive_timeout.is_zero() {
            return Err(TimerError::InvalidDelay);
        }
        Ok(())
    }
}
