use serde::Serialize;

/// Provenance written next to every CLI artifact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command_line: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
    pub parameters: serde_json::Value,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    /// See [`super::digest64`].
    pub digest: String,
}

impl RunManifest {
    pub fn new(command_line: Vec<String>) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command_line,
            inputs: Vec::new(),
            seed: None,
            parameters: serde_json::Value::Null,
            wall_time_seconds: 0.0,
        }
    }

    pub fn add_input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.push(InputDigest { path: path.to_string(), digest: super::digest64(bytes) });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }
}
