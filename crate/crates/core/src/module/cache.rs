//! On-disk JSON cache of Kac modules keyed by highest weight.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::superalgebra::Weight;

use super::{build_kac_module, GModule};

#[derive(Clone, Debug)]
pub struct ModuleCache {
    dir: PathBuf,
}

impl ModuleCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ModuleCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, l: &Weight) -> PathBuf {
        let sig = l.signature();
        let key: String = l
            .to_string()
            .chars()
            .map(|c| match c {
                '|' => '_',
                '/' => 'd',
                '-' => 'm',
                ',' => '.',
                c => c,
            })
            .collect();
        self.dir.join(format!("kac-{}-{}-{key}.json", sig.m, sig.n))
    }

    /// Cached Kac module, building and storing it on a miss.
    pub fn kac_module(&self, l: &Weight) -> Result<GModule> {
        let path = self.path(l);
        if let Ok(text) = fs::read_to_string(&path) {
            let m: GModule = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            if m.signature() == l.signature() {
                return Ok(m);
            }
        }
        let m = build_kac_module(l)?;
        fs::create_dir_all(&self.dir).map_err(|e| Error::Parse(format!("{}: {e}", self.dir.display())))?;
        let text = serde_json::to_string(&m).expect("modules serialize");
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text)
            .and_then(|()| fs::rename(&tmp, &path))
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(m)
    }
}
