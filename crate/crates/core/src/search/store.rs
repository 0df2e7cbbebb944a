//! Directory of certificate files named `<word hash>-r<rank>.json`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::DefectCertificate;
use crate::braid::BraidWord;

/// Environment variable overriding the store location.
pub const STORE_ENV: &str = "SLICEGENUS_STORE";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("store i/o at {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("bad certificate file {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("only word certificates can be stored")]
    NoWord,
}

/// The bundled store, unless overridden by [`STORE_ENV`].
pub fn default_store_path() -> PathBuf {
    match std::env::var_os(STORE_ENV) {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../store"),
    }
}

#[derive(Clone, Debug)]
pub struct CertStore {
    root: PathBuf,
}

impl CertStore {
    pub fn open(root: impl Into<PathBuf>) -> CertStore {
        CertStore { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// First 16 hex digits of the SHA-256 of the canonical word.
    pub fn word_hash(w: &BraidWord) -> String {
        let digest = Sha256::digest(w.to_string().as_bytes());
        hex::encode(digest)[..16].to_string()
    }

    pub fn path_for(&self, w: &BraidWord, rank: usize) -> PathBuf {
        self.root.join(format!("{}-r{rank}.json", Self::word_hash(w)))
    }

    /// `(word hash, rank)` of every file in the store.
    pub fn list(&self) -> Result<Vec<(String, usize)>, StoreError> {
        let entries = match fs::read_dir(&self.root) {
            Ok(e) => e,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(source) => {
                return Err(StoreError::Io {
                    path: self.root.clone(),
                    source,
                })
            }
        };
        let mut out: Vec<(String, usize)> = entries
            .filter_map(Result::ok)
            .filter_map(|e| {
                let name = e.file_name().into_string().ok()?;
                let (hash, rank) = name.strip_suffix(".json")?.split_once("-r")?;
                Some((hash.to_string(), rank.parse().ok()?))
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// Ranks stored for `w`, highest first.
    fn ranks(&self, w: &BraidWord) -> Result<Vec<usize>, StoreError> {
        let prefix = format!("{}-r", Self::word_hash(w));
        let entries = match fs::read_dir(&self.root) {
            Ok(e) => e,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(source) => {
                return Err(StoreError::Io {
                    path: self.root.clone(),
                    source,
                })
            }
        };
        let mut ranks: Vec<usize> = entries
            .filter_map(Result::ok)
            .filter_map(|e| {
                let name = e.file_name().into_string().ok()?;
                name.strip_prefix(&prefix)?.strip_suffix(".json")?.parse().ok()
            })
            .collect();
        ranks.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ranks)
    }

    pub fn load(path: &Path) -> Result<DefectCertificate, StoreError> {
        let text = fs::read_to_string(path).map_err(|source| StoreError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| StoreError::Json {
            path: path.to_path_buf(),
            source,
        })
    }

    /// The highest-rank stored certificate for `w` that verifies.
    pub fn best(&self, w: &BraidWord) -> Result<Option<DefectCertificate>, StoreError> {
        for r in self.ranks(w)? {
            let cert = Self::load(&self.path_for(w, r))?;
            if cert.word.as_ref() == Some(w) && cert.rank() == r && cert.verify().passed() {
                return Ok(Some(cert));
            }
        }
        Ok(None)
    }

    /// Write a certificate, replacing any file of the same word and rank.
    pub fn save(&self, cert: &DefectCertificate) -> Result<PathBuf, StoreError> {
        let w = cert.word.as_ref().ok_or(StoreError::NoWord)?;
        let io_err = |path: &Path| {
            let path = path.to_path_buf();
            move |source| StoreError::Io { path, source }
        };
        fs::create_dir_all(&self.root).map_err(io_err(&self.root))?;
        let path = self.path_for(w, cert.rank());
        let tmp = path.with_extension("json.tmp");
        let mut text = serde_json::to_string_pretty(cert).expect("certificates serialize");
        text.push('\n');
        fs::write(&tmp, text).map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))?;
        Ok(path)
    }
}
