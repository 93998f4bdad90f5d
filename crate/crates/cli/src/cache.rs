//! On-disk store for memoized reliability computations.
//!
//! Layout (all integers little-endian):
//!   magic `RELC` | version u32 | entry count u64 | entries...
//! where each entry is
//!   key length u64 | key bytes (UTF-8) | coefficient count u64 |
//!   per coefficient: length u64 | exact rational rendered as text.
//!
//! Entries are written in sorted key order so the file is deterministic
//! for a given cache state.

use crate::{domain, CliError};
use anyhow::{anyhow, Context};
use relroots::polynomial::Poly;
use relroots::reliability::RelCache;
use relroots::Q;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

const MAGIC: &[u8; 4] = b"RELC";
const VERSION: u32 = 1;

/// Path of the cache file inside the directory named by `--cache`.
pub fn cache_file(dir: &Path) -> PathBuf {
    dir.join("trel-cache.bin")
}

/// Load a cache from `dir`, treating a missing file as an empty cache.
pub fn load(dir: &Path) -> Result<RelCache, CliError> {
    let path = cache_file(dir);
    let bytes = match std::fs::read(&path) {
        Ok(bytes) => bytes,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(RelCache::new()),
        Err(e) => {
            return Err(domain(
                anyhow::Error::new(e).context(format!("reading cache {}", path.display())),
            ))
        }
    };
    parse(&bytes).map_err(|e| domain(e.context(format!("corrupt cache {}", path.display()))))
}

/// Persist `cache` into `dir`, creating the directory if needed.
pub fn save(dir: &Path, cache: &RelCache) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating cache directory {}", dir.display()))?;
    let path = cache_file(dir);
    let mut entries: Vec<(&String, &Poly)> = cache.iter().collect();
    entries.sort_by(|a, b| a.0.cmp(b.0));

    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(entries.len() as u64).to_le_bytes());
    for (key, poly) in entries {
        write_bytes(&mut out, key.as_bytes());
        out.extend_from_slice(&(poly.coeffs().len() as u64).to_le_bytes());
        for c in poly.coeffs() {
            write_bytes(&mut out, c.to_string().as_bytes());
        }
    }
    std::fs::File::create(&path)
        .and_then(|mut f| f.write_all(&out))
        .with_context(|| format!("writing cache {}", path.display()))?;
    Ok(())
}

fn write_bytes(out: &mut Vec<u8>, bytes: &[u8]) {
    out.extend_from_slice(&(bytes.len() as u64).to_le_bytes());
    out.extend_from_slice(bytes);
}

fn parse(bytes: &[u8]) -> Result<RelCache, anyhow::Error> {
    let mut r = bytes;
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).context("truncated header")?;
    if &magic != MAGIC {
        return Err(anyhow!("bad magic bytes"));
    }
    let version = read_u32(&mut r)?;
    if version != VERSION {
        return Err(anyhow!("unsupported cache version {version}"));
    }
    let count = read_u64(&mut r)? as usize;
    let mut cache = RelCache::new();
    for _ in 0..count {
        let key = String::from_utf8(read_vec(&mut r)?).context("key is not UTF-8")?;
        let ncoeffs = read_u64(&mut r)? as usize;
        let mut coeffs = Vec::with_capacity(ncoeffs);
        for _ in 0..ncoeffs {
            let text = String::from_utf8(read_vec(&mut r)?).context("coefficient not UTF-8")?;
            let q: Q = text
                .parse()
                .map_err(|e| anyhow!("bad coefficient {text:?}: {e}"))?;
            coeffs.push(q);
        }
        cache.insert(key, Poly::new(coeffs));
    }
    if !r.is_empty() {
        return Err(anyhow!("{} trailing bytes", r.len()));
    }
    Ok(cache)
}

fn read_u32(r: &mut &[u8]) -> Result<u32, anyhow::Error> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf).context("truncated integer")?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64(r: &mut &[u8]) -> Result<u64, anyhow::Error> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf).context("truncated integer")?;
    Ok(u64::from_le_bytes(buf))
}

fn read_vec(r: &mut &[u8]) -> Result<Vec<u8>, anyhow::Error> {
    let len = read_u64(r)? as usize;
    if len > r.len() {
        return Err(anyhow!("length {len} overruns the file"));
    }
    let (head, tail) = r.split_at(len);
    let out = head.to_vec();
    *r = tail;
    Ok(out)
}
