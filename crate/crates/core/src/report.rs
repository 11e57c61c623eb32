//! Run configuration, input files and report headers.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hyperbolic::{HyperbolicStructure, MetricSpec};
use crate::surface::{RibbonSpine, SurfaceSig};

pub const SCHEMA_VERSION: u32 = 1;

/// Directory used for outputs when no explicit output path is given.
pub const OUT_DIR_ENV: &str = "CURRENTS_OUT_DIR";

/// Surface file: signature and an optional half-edge order such as
/// `["a", "b", "A", "B"]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub genus: u32,
    pub boundary: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
}

impl SurfaceFile {
    pub fn spine(&self) -> Result<RibbonSpine> {
        let sig = SurfaceSig::new(self.genus, self.boundary)?;
        match &self.order {
            Some(labels) => RibbonSpine::from_labels(sig, labels),
            None => RibbonSpine::standard(sig),
        }
    }
}

fn read(path: &Path, what: &str) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Io(format!("cannot read {what} file {}: {e}", path.display())))
}

pub fn load_surface(path: &Path) -> Result<SurfaceFile> {
    let bytes = read(path, "surface")?;
    serde_json::from_slice(&bytes).map_err(|e| Error::Io(format!("malformed surface file {}: {e}", path.display())))
}

/// A metric with the SHA-256 of the bytes it was read from, or of its
/// canonical JSON when built in.
#[derive(Debug, Clone)]
pub struct LoadedMetric {
    pub structure: HyperbolicStructure,
    pub sha256: String,
    pub source: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn load_metric(spine: &RibbonSpine, path: Option<&Path>) -> Result<LoadedMetric> {
    match path {
        Some(p) => {
            let bytes = read(p, "metric")?;
            let spec: MetricSpec = serde_json::from_slice(&bytes)
                .map_err(|e| Error::Io(format!("malformed metric file {}: {e}", p.display())))?;
            Ok(LoadedMetric {
                structure: HyperbolicStructure::from_spec(spine, &spec)?,
                sha256: sha256_hex(&bytes),
                source: p.display().to_string(),
            })
        }
        None => {
            let structure = HyperbolicStructure::default_for(spine)?;
            let canonical = serde_json::to_vec(structure.spec())?;
            Ok(LoadedMetric {
                structure,
                sha256: sha256_hex(&canonical),
                source: "default".into(),
            })
        }
    }
}

/// Fully resolved configuration written at the top of every output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunHeader {
    pub schema_version: u32,
    pub command: String,
    pub surface: SurfaceFile,
    pub metric: Option<MetricHeader>,
    pub seed: u64,
    pub params: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricHeader {
    pub source: String,
    pub sha256: String,
    pub spec: MetricSpec,
}

impl RunHeader {
    pub fn new(
        command: &str,
        spine: &RibbonSpine,
        metric: Option<&LoadedMetric>,
        seed: u64,
        params: serde_json::Value,
    ) -> Self {
        let sig = spine.sig();
        RunHeader {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            surface: SurfaceFile {
                genus: sig.genus,
                boundary: sig.n_boundary,
                order: Some(spine.order().iter().map(|l| l.to_string()).collect()),
            },
            metric: metric.map(|m| MetricHeader {
                source: m.source.clone(),
                sha256: m.sha256.clone(),
                spec: m.structure.spec().clone(),
            }),
            seed,
            params,
        }
    }
}

/// Output path: the explicit one, else `$CURRENTS_OUT_DIR/<command>.<ext>`,
/// else standard output.
pub fn resolve_output(explicit: Option<&Path>, command: &str, ext: &str) -> Option<PathBuf> {
    if let Some(p) = explicit {
        return Some(p.to_path_buf());
    }
    std::env::var_os(OUT_DIR_ENV)
        .filter(|d| !d.is_empty())
        .map(|d| PathBuf::from(d).join(format!("{command}.{ext}")))
}
