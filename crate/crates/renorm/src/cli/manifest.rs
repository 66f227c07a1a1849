//! Run manifests embedded in every report.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

/// Everything needed to reproduce a command's output: the command name, its
/// parameters (seeds included) and the artifact version. Outputs are a pure
/// function of the manifest.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub version: String,
    pub timestamp_unix: u64,
}

impl RunManifest {
    pub fn new(command: &str) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> RunManifest {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// `# key: value` comment lines for CSV outputs.
    pub fn csv_header(&self) -> String {
        let mut s = format!(
            "# command: {}\n# version: {}\n# timestamp: {}\n",
            self.command, self.version, self.timestamp_unix
        );
        for (k, v) in &self.parameters {
            s.push_str(&format!("# {}: {}\n", k, v));
        }
        s
    }
}
