use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

/// Record written next to every output file so a run can be repeated from
/// the artifacts alone.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub args: Vec<String>,
    pub inputs: Vec<InputFile>,
    pub outputs: Vec<String>,
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct InputFile {
    pub path: String,
    pub bytes: usize,
    /// FNV-1a of the contents.
    pub fnv1a: String,
}

fn fnv1a(data: &[u8]) -> u64 {
    data.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            args: std::env::args().skip(1).collect(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            seed: None,
        }
    }

    pub fn input(&mut self, path: &Path, contents: &str) {
        self.inputs.push(InputFile {
            path: path.display().to_string(),
            bytes: contents.len(),
            fnv1a: format!("{:016x}", fnv1a(contents.as_bytes())),
        });
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    /// Writes `<primary>.manifest.json`.
    pub fn write_next_to(&self, primary: &Path) -> anyhow::Result<PathBuf> {
        let mut name = primary.as_os_str().to_owned();
        name.push(".manifest.json");
        let path = PathBuf::from(name);
        let text = serde_json::to_string_pretty(self)? + "\n";
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a(b""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a(b"a"), 0xaf63_dc4c_8601_ec8c);
    }
}
