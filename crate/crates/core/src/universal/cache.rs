//! On-disk form of the universal-polynomial cache.
//!
//! ```text
//! wittkit-universal-cache v1
//! sum:2<TAB>1*a1*b1 ...
//! ```
//! One record per line, keys in sorted order, so the file is byte-identical
//! for identical contents on every platform.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::{IntPoly, UnivCache, UnivPolyKey};
use crate::error::{Result, WittError};

pub const CACHE_HEADER: &str = "wittkit-universal-cache v1";

impl UnivCache {
    /// Serializes every cached polynomial.
    pub fn to_text(&self) -> String {
        let mut out = String::from(CACHE_HEADER);
        out.push('\n');
        for key in self.keys() {
            let poly = self.cached(&key).expect("key listed");
            out.push_str(&format!("{key}\t{}\n", poly.to_text()));
        }
        out
    }

    /// Merges records from `text` into the cache.
    pub fn load_text(&self, text: &str) -> Result<usize> {
        let corrupt = |line: usize, why: &str| WittError::CacheCorrupt(format!("line {line}: {why}"));
        let mut lines = text.lines();
        if lines.next().map(str::trim_end) != Some(CACHE_HEADER) {
            return Err(corrupt(1, "missing or unsupported version header"));
        }
        let mut count = 0;
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, poly) = line.split_once('\t').ok_or_else(|| corrupt(i + 2, "expected key<TAB>polynomial"))?;
            let key: UnivPolyKey = key.parse().map_err(|e: WittError| corrupt(i + 2, &e.to_string()))?;
            let poly = IntPoly::from_text(poly).map_err(|e| corrupt(i + 2, &e.to_string()))?;
            self.insert(key, poly);
            count += 1;
        }
        Ok(count)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = self.to_text();
        let tmp = path.with_extension("tmp");
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, path)
        };
        write().map_err(|e| WittError::Io(format!("{}: {e}", path.display())))
    }

    /// Loads `path` if it exists; a missing file is an empty cache.
    pub fn load(&self, path: &Path) -> Result<usize> {
        match fs::read_to_string(path) {
            Ok(text) => self.load_text(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(0),
            Err(e) if e.kind() == std::io::ErrorKind::InvalidData => {
                Err(WittError::CacheCorrupt(format!("{}: not UTF-8", path.display())))
            }
            Err(e) => Err(WittError::Io(format!("{}: {e}", path.display()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_matches_recomputation() {
        let cache = UnivCache::new();
        cache.warm(8).unwrap();
        let text = cache.to_text();
        let loaded = UnivCache::new();
        assert_eq!(loaded.load_text(&text).unwrap(), cache.len());
        assert_eq!(loaded.to_text(), text);
        let fresh = UnivCache::new();
        for key in loaded.keys() {
            assert_eq!(loaded.cached(&key).unwrap(), fresh.get(key).unwrap(), "{key}");
        }
    }

    #[test]
    fn corrupt_files_are_rejected() {
        let cache = UnivCache::new();
        assert!(matches!(cache.load_text("garbage"), Err(WittError::CacheCorrupt(_))));
        let bad = format!("{CACHE_HEADER}\nsum:2\t1*q7\n");
        assert!(matches!(cache.load_text(&bad), Err(WittError::CacheCorrupt(_))));
        let bad_key = format!("{CACHE_HEADER}\nfoo:2\t1*a1\n");
        assert!(matches!(cache.load_text(&bad_key), Err(WittError::CacheCorrupt(_))));
    }
}
