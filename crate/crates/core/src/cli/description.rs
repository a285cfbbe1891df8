//! TOML description files for rings and modules.
//!
//! ```toml
//! kind = "module"
//! name = "z2+z4"
//! ring = "z8.ring"          # a path relative to this file, or an inline table
//!
//! [construct]
//! recipe = "action_matrices"
//! invariant_factors = [2, 4]
//! action = [[[1, 0], [0, 1]]]
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::module::ModuleDescription;
use crate::ring::RingDescription;

/// Why a description could not be loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescriptionError {
    pub path: PathBuf,
    pub message: String,
}

impl fmt::Display for DescriptionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path.display(), self.message)
    }
}

impl std::error::Error for DescriptionError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ring,
    Module,
}

/// Where a module's ring comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Path(String),
    Inline(RingDescription),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingFile {
    #[allow(dead_code)]
    kind: Kind,
    name: String,
    construct: RingDescription,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    #[allow(dead_code)]
    kind: Kind,
    name: String,
    #[serde(default)]
    ring: Option<RingRef>,
    construct: ModuleDescription,
}

#[derive(Debug, Deserialize)]
struct KindProbe {
    kind: Kind,
}

/// A parsed ring file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSource {
    pub path: PathBuf,
    pub name: String,
    pub description: RingDescription,
    pub sha256: String,
}

/// A parsed module file with its ring reference resolved where possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSource {
    pub path: PathBuf,
    pub name: String,
    pub description: ModuleDescription,
    pub ring: Option<RingSource>,
    pub sha256: String,
}

/// Either kind of description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Ring(RingSource),
    Module(ModuleSource),
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn err(path: &Path, message: impl Into<String>) -> DescriptionError {
    DescriptionError {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, DescriptionError> {
    std::fs::read_to_string(path).map_err(|e| err(path, format!("cannot read file: {e}")))
}

fn expect_kind(path: &Path, text: &str, want: Kind) -> Result<(), DescriptionError> {
    let probe: KindProbe = toml::from_str::<toml::Table>(text)
        .map_err(|e| err(path, e.to_string()))
        .and_then(|t| {
            toml::Value::Table(t)
                .try_into()
                .map_err(|e: toml::de::Error| err(path, e.to_string()))
        })?;
    if probe.kind != want {
        return Err(err(path, format!("expected kind = \"{}\"", kind_name(want))));
    }
    Ok(())
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Ring => "ring",
        Kind::Module => "module",
    }
}

/// Parses ring description text; `path` is used for messages only.
pub fn parse_ring(path: &Path, text: &str) -> Result<RingSource, DescriptionError> {
    expect_kind(path, text, Kind::Ring)?;
    let f: RingFile = toml::from_str(text).map_err(|e| err(path, e.to_string()))?;
    Ok(RingSource {
        path: path.to_path_buf(),
        name: f.name,
        description: f.construct,
        sha256: sha256_hex(text.as_bytes()),
    })
}

pub fn load_ring(path: &Path) -> Result<RingSource, DescriptionError> {
    parse_ring(path, &read(path)?)
}

/// Parses module description text. A ring given by path is resolved relative
/// to the directory of `path`.
pub fn parse_module(path: &Path, text: &str) -> Result<ModuleSource, DescriptionError> {
    expect_kind(path, text, Kind::Module)?;
    let f: ModuleFile = toml::from_str(text).map_err(|e| err(path, e.to_string()))?;
    let ring = match f.ring {
        None => None,
        Some(RingRef::Inline(d)) => Some(RingSource {
            path: path.to_path_buf(),
            name: d.label(),
            description: d,
            sha256: sha256_hex(text.as_bytes()),
        }),
        Some(RingRef::Path(p)) => {
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            Some(load_ring(&base.join(p))?)
        }
    };
    Ok(ModuleSource {
        path: path.to_path_buf(),
        name: f.name,
        description: f.construct,
        ring,
        sha256: sha256_hex(text.as_bytes()),
    })
}

pub fn load_module(path: &Path) -> Result<ModuleSource, DescriptionError> {
    parse_module(path, &read(path)?)
}

/// Loads a file of either kind.
pub fn load_any(path: &Path) -> Result<Source, DescriptionError> {
    let text = read(path)?;
    let kind = toml::from_str::<toml::Table>(&text)
        .map_err(|e| err(path, e.to_string()))?
        .get("kind")
        .and_then(|k| k.as_str())
        .map(str::to_owned);
    match kind.as_deref() {
        Some("ring") => parse_ring(path, &text).map(Source::Ring),
        Some("module") => parse_module(path, &text).map(Source::Module),
        _ => Err(err(path, "missing or unknown key `kind` (expected \"ring\" or \"module\")")),
    }
}

/// Renders a ring description file.
pub fn ring_file_text(name: &str, d: &RingDescription) -> String {
    #[derive(Serialize)]
    struct Out<'a> {
        kind: Kind,
        name: &'a str,
        construct: &'a RingDescription,
    }
    toml::to_string(&Out {
        kind: Kind::Ring,
        name,
        construct: d,
    })
    .expect("ring description serializes")
}

/// Renders a module description file with an inline ring.
pub fn module_file_text(name: &str, ring: &RingDescription, d: &ModuleDescription) -> String {
    #[derive(Serialize)]
    struct Out<'a> {
        kind: Kind,
        name: &'a str,
        ring: &'a RingDescription,
        construct: &'a ModuleDescription,
    }
    toml::to_string(&Out {
        kind: Kind::Module,
        name,
        ring,
        construct: d,
    })
    .expect("module description serializes")
}
