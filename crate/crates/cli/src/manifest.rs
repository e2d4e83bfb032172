//! Run manifests: every output directory gets a JSON record of the
//! command line, a stable digest of the configuration, seeds, versions
//! and wall-clock timings.

use crate::io::atomic_write;
use crate::CliResult;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// FNV-1a, enough to detect config drift between runs.
pub fn digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command_line: String,
    pub config_digest: String,
    pub master_seed: u64,
    pub tool_version: String,
    pub generator: String,
    pub threads: usize,
    pub timings_seconds: BTreeMap<String, f64>,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(config_bytes: &[u8], master_seed: u64, threads: usize) -> RunManifest {
        RunManifest {
            command_line: std::env::args().collect::<Vec<_>>().join(" "),
            config_digest: digest(config_bytes),
            master_seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            generator: "chacha8/splitmix64-chain".to_string(),
            threads,
            timings_seconds: BTreeMap::new(),
            outputs: Vec::new(),
        }
    }

    pub fn record_timing(&mut self, label: &str, since: Instant) {
        self.timings_seconds
            .insert(label.to_string(), since.elapsed().as_secs_f64());
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let json = serde_json::to_vec_pretty(self).expect("manifest serialization");
        atomic_write(path, &json)
    }
}
