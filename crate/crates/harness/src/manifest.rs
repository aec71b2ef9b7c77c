//! Run manifest written beside every data file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Config;

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub config_hash: String,
    pub config: BTreeMap<String, String>,
    pub seed: u64,
    pub code_version: String,
    pub wall_time_seconds: f64,
    pub data_file: Option<String>,
}

impl RunManifest {
    pub fn new(
        config: &Config,
        seed: u64,
        wall_time_seconds: f64,
        data_file: Option<&Path>,
    ) -> Self {
        Self {
            command_line: std::env::args().collect(),
            config_hash: config.hash(),
            config: config.effective().clone(),
            seed,
            code_version: concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"))
                .to_string(),
            wall_time_seconds,
            data_file: data_file.map(|p| p.display().to_string()),
        }
    }

    /// `<data>.manifest.json` next to the data file.
    pub fn path_for(data: &Path) -> PathBuf {
        let mut s = data.as_os_str().to_owned();
        s.push(".manifest.json");
        PathBuf::from(s)
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}
