//! Run manifests: enough to reproduce a run and to verify its output.
//!
//! The manifest records the subcommand, the fully resolved parameter map,
//! the artifact version, wall time, and a SHA-256 digest of the bytes the
//! run wrote to standard output. Re-running with the recorded parameters
//! must reproduce the digest exactly (all algorithms are deterministic and
//! thread-count independent).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: BTreeMap<String, String>,
    pub version: String,
    pub wall_ms: u64,
    pub output_sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut hex = String::with_capacity(64);
    for b in digest {
        use std::fmt::Write;
        write!(hex, "{b:02x}").unwrap();
    }
    hex
}

impl RunManifest {
    pub fn new(
        subcommand: &str,
        params: BTreeMap<String, String>,
        wall_ms: u64,
        output: &[u8],
    ) -> Self {
        RunManifest {
            subcommand: subcommand.to_owned(),
            params,
            version: env!("CARGO_PKG_VERSION").to_owned(),
            wall_ms,
            output_sha256: sha256_hex(output),
        }
    }

    pub fn matches_output(&self, output: &[u8]) -> bool {
        self.output_sha256 == sha256_hex(output)
    }
}
