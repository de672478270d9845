//! Persistence of the Littlewood–Richardson memo table between runs.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use singularhorn::partitions::{lr_cache_load, lr_cache_snapshot, LrEntry};

pub const CACHE_ENV: &str = "SINGULARHORN_CACHE_DIR";
const VERSION: u32 = 1;
const FILE_NAME: &str = "lr-cache-v1.json";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: Vec<LrEntry>,
}

pub struct Cache {
    path: PathBuf,
    loaded: usize,
}

impl Cache {
    /// Seeds the memo from `$SINGULARHORN_CACHE_DIR`, if set. Unreadable or
    /// foreign-version files are ignored with a warning.
    pub fn open_from_env() -> Option<Cache> {
        let dir = std::env::var_os(CACHE_ENV)?;
        let path = Path::new(&dir).join(FILE_NAME);
        let mut loaded = 0;
        if let Ok(bytes) = fs::read(&path) {
            match serde_json::from_slice::<CacheFile>(&bytes) {
                Ok(file) if file.version == VERSION => {
                    loaded = file.entries.len();
                    lr_cache_load(file.entries);
                }
                Ok(file) => eprintln!(
                    "warning: ignoring {} (version {}, expected {VERSION})",
                    path.display(),
                    file.version
                ),
                Err(e) => eprintln!("warning: ignoring unreadable {}: {e}", path.display()),
            }
        }
        Some(Cache { path, loaded })
    }

    /// Writes the memo back if it grew.
    pub fn save(&self) -> std::io::Result<()> {
        let entries = lr_cache_snapshot();
        if entries.len() == self.loaded {
            return Ok(());
        }
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let file = CacheFile {
            version: VERSION,
            entries,
        };
        let tmp = self.path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&file)?)?;
        fs::rename(&tmp, &self.path)
    }
}
