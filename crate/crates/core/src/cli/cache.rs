//! Content-addressed result cache. Each entry stores its payload with a SHA-256
//! checksum; a mismatch is treated as a miss. Writes go to a temporary file in
//! the cache directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CODE_VERSION: &str = concat!("sphfun-", env!("CARGO_PKG_VERSION"), "-cache1");
pub const CACHE_ENV: &str = "SPHFUN_CACHE_DIR";

#[derive(Serialize)]
struct KeyFragment<'a> {
    version: &'a str,
    command: &'a str,
    n: usize,
    m: usize,
    mu: &'a str,
    label: &'a str,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Stable key for (command, n, m, mu, label) under the current code version.
pub fn cache_key(command: &str, n: usize, m: usize, mu: &str, label: &str) -> String {
    let frag = KeyFragment { version: CODE_VERSION, command, n, m, mu, label };
    sha256_hex(serde_json::to_string(&frag).expect("key serializes").as_bytes())
}

#[derive(Serialize, Deserialize)]
struct Entry {
    checksum: String,
    payload: String,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// Directory from the flag, else the environment, else none.
    pub fn from_options(flag: Option<&Path>) -> std::io::Result<Option<Self>> {
        match flag.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)) {
            Some(d) => Self::new(d).map(Some),
            None => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        let raw = fs::read(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_slice(&raw).ok()?;
        (sha256_hex(entry.payload.as_bytes()) == entry.checksum).then_some(entry.payload)
    }

    pub fn put(&self, key: &str, payload: &str) -> std::io::Result<()> {
        let entry = Entry { checksum: sha256_hex(payload.as_bytes()), payload: payload.to_string() };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.flush()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    /// Cached payload, or compute and store it.
    pub fn get_or_insert_with<E>(&self, key: &str, f: impl FnOnce() -> Result<String, E>) -> Result<(String, bool), E> {
        if let Some(hit) = self.get(key) {
            return Ok((hit, true));
        }
        let payload = f()?;
        let _ = self.put(key, &payload);
        Ok((payload, false))
    }
}
