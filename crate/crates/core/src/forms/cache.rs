//! On-disk cache of generator series, keyed by generator and truncation.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::qseries::QSeries;
use crate::Result;

use super::{generator, GeneratorId};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "FOURIER_EIGEN_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    generator: GeneratorId,
    trunc: i64,
    series: QSeries,
}

#[derive(Clone, Debug)]
pub struct FormCache {
    dir: PathBuf,
}

impl FormCache {
    pub fn new(dir: impl Into<PathBuf>) -> FormCache {
        FormCache { dir: dir.into() }
    }

    /// Directory from the environment, falling back to `./.fourier-eigen-cache`.
    pub fn from_env() -> FormCache {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".fourier-eigen-cache"));
        FormCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, id: GeneratorId, trunc: i64) -> PathBuf {
        self.dir.join(format!("{id}-{trunc}.json"))
    }

    /// Load from disk when a current-version entry exists, otherwise compute and store.
    pub fn get(&self, id: GeneratorId, trunc: i64) -> Result<QSeries> {
        let p = self.path(id, trunc);
        if let Ok(text) = fs::read_to_string(&p) {
            if let Ok(e) = serde_json::from_str::<Entry>(&text) {
                if e.version == CACHE_VERSION && e.generator == id && e.trunc == trunc {
                    return Ok(e.series);
                }
            }
        }
        let series = (*generator(id, trunc)).clone();
        fs::create_dir_all(&self.dir)?;
        let e = Entry { version: CACHE_VERSION, generator: id, trunc, series };
        fs::write(&p, serde_json::to_string(&e)?)?;
        Ok(e.series)
    }
}
