// The integral polynomials behind Witt addition, multiplication and
// Frobenius, and the on-disk cache that stores them.

use std::error::Error;

use wittkit::universal::{universal_poly, UnivCache, UnivPolyKey};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for (label, key) in [
        ("s_2", UnivPolyKey::sum(2)),
        ("p_2", UnivPolyKey::prod(2)),
        ("f_{2,1}", UnivPolyKey::frobenius(2, 1)),
        ("s_3", UnivPolyKey::sum(3)),
    ] {
        out += &format!("{label} = {}\n", universal_poly(key)?.to_text());
    }
    let s6 = universal_poly(UnivPolyKey::sum(6))?;
    out += &format!("s_6 has {} terms\n", s6.len());

    // a private cache, warmed and written out
    let cache = UnivCache::new();
    let n = cache.warm(8)?;
    let path = std::env::temp_dir().join(format!("wittkit-example-{}.cache", std::process::id()));
    cache.save(&path)?;
    let reloaded = UnivCache::new();
    let loaded = reloaded.load(&path)?;
    std::fs::remove_file(&path)?;
    out += &format!("warmed {n} polynomials up to index 8, reloaded {loaded}\n");
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
