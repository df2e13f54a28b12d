use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use rlcseg::{compress, load_pbm, mh_decode, MhBitstream, RleDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pbm,
    Rlc,
    Mh,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "pbm" => Some(Format::Pbm),
            "rlc" => Some(Format::Rlc),
            "mh" => Some(Format::Mh),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Pbm => "pbm",
            Format::Rlc => "rlc",
            Format::Mh => "mh",
        }
    }

    /// `explicit` wins; otherwise the extension decides.
    pub fn resolve(path: &Path, explicit: Option<Format>) -> Result<Self> {
        match explicit.or_else(|| Format::from_path(path)) {
            Some(f) => Ok(f),
            None => bail!(
                "{}: cannot infer format from extension; pass --format pbm|rlc|mh",
                path.display()
            ),
        }
    }
}

pub fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

pub fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

/// Loads a page as run-length rows. `.mh` and `.rlc` inputs are never
/// expanded to pixels.
pub fn load_document(path: &Path, format: Format) -> Result<RleDocument> {
    let bytes = read(path)?;
    let doc = match format {
        Format::Pbm => load_pbm(&bytes).map(|img| compress(&img)),
        Format::Rlc => {
            let text = std::str::from_utf8(&bytes)
                .with_context(|| format!("{}: RLC file is not UTF-8", path.display()))?;
            RleDocument::from_rlc(text)
        }
        Format::Mh => MhBitstream::from_bytes(&bytes).and_then(|s| mh_decode(&s)),
    };
    doc.with_context(|| format!("decoding {}", path.display()))
}

pub fn with_extension(path: &Path, ext: &str) -> PathBuf {
    path.with_extension(ext)
}
