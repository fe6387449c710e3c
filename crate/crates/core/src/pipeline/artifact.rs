//! Line-oriented stage files, per-unit checkpoints and the final records.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lyapunov::render;
use crate::origami::Origami;
use crate::search::Certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Stage {
    Align,
    Visible,
    Admissible,
    VertPermCheck,
    SlopeTest,
    Certify,
    Merge,
    Oracle,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Align => "align",
            Stage::Visible => "visible",
            Stage::Admissible => "admissible",
            Stage::VertPermCheck => "vertical permutation check",
            Stage::SlopeTest => "slope test",
            Stage::Certify => "certify",
            Stage::Merge => "merge",
            Stage::Oracle => "oracle",
        }
    }

    /// Step number in the cascade.
    pub fn step(self) -> u8 {
        match self {
            Stage::Align => 3,
            Stage::Visible => 4,
            Stage::Admissible => 5,
            Stage::VertPermCheck => 6,
            Stage::SlopeTest => 7,
            Stage::Certify | Stage::Merge | Stage::Oracle => 8,
        }
    }
}

pub fn io_err(stage: Stage, path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        stage: stage.name(),
        path: path.to_path_buf(),
        source,
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes through a temporary file and renames, returning the digest.
pub fn write_atomic(stage: Stage, path: &Path, bytes: &[u8]) -> Result<String> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io_err(stage, dir))?;
    }
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(io_err(stage, &tmp))?;
    f.write_all(bytes).map_err(io_err(stage, &tmp))?;
    f.sync_all().map_err(io_err(stage, &tmp))?;
    fs::rename(&tmp, path).map_err(io_err(stage, path))?;
    Ok(sha256_hex(bytes))
}

pub fn write_lines<T: std::fmt::Display>(stage: Stage, path: &Path, items: impl IntoIterator<Item = T>) -> Result<(usize, String)> {
    let mut buf = String::new();
    let mut count = 0;
    for x in items {
        buf.push_str(&x.to_string());
        buf.push('\n');
        count += 1;
    }
    let digest = write_atomic(stage, path, buf.as_bytes())?;
    Ok((count, digest))
}

pub fn read_lines(stage: Stage, path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(io_err(stage, path))?;
    Ok(text.lines().map(str::to_owned).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub step: u8,
    pub stage: Stage,
    pub unit: String,
    pub records: usize,
    /// File name, relative to the unit directory, of the last artifact.
    pub artifact: String,
    pub digest: String,
    pub complete: bool,
}

impl Checkpoint {
    pub fn path(unit_dir: &Path) -> PathBuf {
        unit_dir.join("checkpoint.json")
    }

    pub fn save(&self, unit_dir: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).expect("serializable");
        write_atomic(self.stage, &Self::path(unit_dir), json.as_bytes()).map(|_| ())
    }

    /// Loads and verifies the checkpoint against the artifact on disk.
    pub fn load_verified(unit_dir: &Path) -> Result<Option<Checkpoint>> {
        let path = Self::path(unit_dir);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(Stage::Merge, &path)(e)),
        };
        let cp: Checkpoint =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let art = unit_dir.join(&cp.artifact);
        let bytes = fs::read(&art).map_err(|_| Error::DigestMismatch {
            stage: cp.stage.name(),
            path: art.clone(),
        })?;
        if sha256_hex(&bytes) != cp.digest {
            return Err(Error::DigestMismatch {
                stage: cp.stage.name(),
                path: art,
            });
        }
        Ok(Some(cp))
    }
}

/// One line of the final artifact. Field order is fixed so files compare
/// byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalRecord {
    pub origami: Origami,
    pub stratum: String,
    pub genus: u32,
    pub orbit_size: usize,
    pub sum: String,
}

impl From<&Certificate> for FinalRecord {
    fn from(c: &Certificate) -> Self {
        FinalRecord {
            origami: c.origami.clone(),
            stratum: c.stratum.to_string(),
            genus: c.genus,
            orbit_size: c.lyapunov.orbit_size,
            sum: render(&c.lyapunov.sum),
        }
    }
}

impl std::fmt::Display for FinalRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&serde_json::to_string(self).expect("serializable"))
    }
}

/// Certified classes in canonical order.
pub fn write_final(stage: Stage, path: &Path, certs: &[Certificate]) -> Result<(usize, String)> {
    write_lines(stage, path, certs.iter().filter(|c| c.certified()).map(FinalRecord::from))
}

pub fn read_final(path: &Path) -> Result<Vec<FinalRecord>> {
    read_lines(Stage::Merge, path)?
        .iter()
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string())))
        .collect()
}
