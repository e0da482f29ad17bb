//! On-disk cache of labeled parity-class spectra.
//!
//! Each entry is a pair of files named after a hash of its key:
//!
//! * `spectrum-<hash>.bin`: little-endian payload
//!   `magic "RABISPEC" | version u32 | key hash [32] | parity u8 | count u64 |
//!   count × (label u64, value f64, truncation_dim u64, error_estimate f64) |
//!   SHA-256 of all preceding bytes [32]`;
//! * `spectrum-<hash>.json`: sidecar holding the format version, the key,
//!   the record count and the payload checksum.
//!
//! Floats are stored as raw IEEE-754 bits, so reloads are bit-identical. A
//! version or key mismatch is a miss; anything else that does not check out
//! is reported as corruption. Both files are written to a temporary name and
//! renamed into place.

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use rabi_core::{ParityClass, Record};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const CACHE_FORMAT_VERSION: u32 = 1;

const MAGIC: &[u8; 8] = b"RABISPEC";
const HASH_LEN: usize = 32;
const HEADER_LEN: usize = MAGIC.len() + 4 + HASH_LEN + 1 + 8;
const RECORD_LEN: usize = 32;

/// Everything a cached spectrum depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheKey {
    pub g: f64,
    pub delta: f64,
    pub parity: String,
    pub eigen_tol: f64,
    pub trunc_tol: f64,
    pub max_label: usize,
}

impl CacheKey {
    pub fn new(
        g: f64,
        delta: f64,
        parity: ParityClass,
        eigen_tol: f64,
        trunc_tol: f64,
        max_label: usize,
    ) -> Self {
        Self {
            g,
            delta,
            parity: parity.to_string(),
            eigen_tol,
            trunc_tol,
            max_label,
        }
    }

    /// Hash of the exact bit patterns, independent of float formatting.
    pub fn digest(&self) -> [u8; HASH_LEN] {
        let mut h = Sha256::new();
        h.update(CACHE_FORMAT_VERSION.to_le_bytes());
        for x in [self.g, self.delta, self.eigen_tol, self.trunc_tol] {
            h.update(x.to_bits().to_le_bytes());
        }
        h.update((self.max_label as u64).to_le_bytes());
        h.update(self.parity.as_bytes());
        h.finalize().into()
    }

    fn stem(&self) -> String {
        format!("spectrum-{}", hex::encode(&self.digest()[..16]))
    }

    fn parity(&self) -> Option<ParityClass> {
        ParityClass::BOTH
            .into_iter()
            .find(|p| p.to_string() == self.parity)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Sidecar {
    format_version: u32,
    key: CacheKey,
    record_count: usize,
    payload_sha256: String,
}

/// Outcome of a cache lookup.
#[derive(Debug, Clone, PartialEq)]
pub enum Lookup {
    Hit(Vec<Record>),
    Miss,
    /// The entry exists but failed validation.
    Corrupt(String),
}

#[derive(Debug, Clone)]
pub struct SpectrumCache {
    dir: PathBuf,
}

impl SpectrumCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn payload_path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.bin", key.stem()))
    }

    pub fn sidecar_path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.stem()))
    }

    pub fn load(&self, key: &CacheKey) -> Lookup {
        let sidecar = match fs::read(self.sidecar_path(key)) {
            Ok(bytes) => bytes,
            Err(e) if e.kind() == ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(format!("reading sidecar: {e}")),
        };
        let sidecar: Sidecar = match serde_json::from_slice(&sidecar) {
            Ok(s) => s,
            Err(e) => return Lookup::Corrupt(format!("parsing sidecar: {e}")),
        };
        if sidecar.format_version != CACHE_FORMAT_VERSION || sidecar.key != *key {
            return Lookup::Miss;
        }
        let payload = match fs::read(self.payload_path(key)) {
            Ok(bytes) => bytes,
            Err(e) => return Lookup::Corrupt(format!("reading payload: {e}")),
        };
        let (version, records) = match decode(&payload, key) {
            Ok(decoded) => decoded,
            Err(why) => return Lookup::Corrupt(why),
        };
        if version != CACHE_FORMAT_VERSION {
            Lookup::Miss
        } else if hex::encode(payload_checksum(&payload)) != sidecar.payload_sha256 {
            Lookup::Corrupt("sidecar checksum does not match payload".into())
        } else if records.len() != sidecar.record_count {
            Lookup::Corrupt("record count differs from sidecar".into())
        } else {
            Lookup::Hit(records)
        }
    }

    pub fn store(&self, key: &CacheKey, records: &[Record]) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        let payload = encode(key, records)?;
        let sidecar = Sidecar {
            format_version: CACHE_FORMAT_VERSION,
            key: key.clone(),
            record_count: records.len(),
            payload_sha256: hex::encode(payload_checksum(&payload)),
        };
        let mut sidecar_bytes = serde_json::to_vec_pretty(&sidecar)?;
        sidecar_bytes.push(b'\n');
        // Payload first: a reader only trusts it once the sidecar agrees.
        write_atomic(&self.payload_path(key), &payload)?;
        write_atomic(&self.sidecar_path(key), &sidecar_bytes)
    }
}

fn payload_checksum(payload: &[u8]) -> &[u8] {
    &payload[payload.len().saturating_sub(HASH_LEN)..]
}

fn encode(key: &CacheKey, records: &[Record]) -> Result<Vec<u8>> {
    let parity = key
        .parity()
        .ok_or_else(|| CliError::Cache(format!("unknown parity {:?}", key.parity)))?;
    let mut out = Vec::with_capacity(HEADER_LEN + records.len() * RECORD_LEN + HASH_LEN);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&CACHE_FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&key.digest());
    out.push(parity_byte(parity));
    out.extend_from_slice(&(records.len() as u64).to_le_bytes());
    for r in records {
        if r.parity != parity {
            return Err(CliError::Cache(format!(
                "{} record stored under a {parity} key",
                r.parity
            )));
        }
        out.extend_from_slice(&(r.label as u64).to_le_bytes());
        out.extend_from_slice(&r.value.to_bits().to_le_bytes());
        out.extend_from_slice(&(r.truncation_dim as u64).to_le_bytes());
        out.extend_from_slice(&r.error_estimate.to_bits().to_le_bytes());
    }
    let checksum: [u8; HASH_LEN] = Sha256::digest(&out).into();
    out.extend_from_slice(&checksum);
    Ok(out)
}

/// Returns the stored format version and the records.
fn decode(bytes: &[u8], key: &CacheKey) -> std::result::Result<(u32, Vec<Record>), String> {
    if bytes.len() < HEADER_LEN + HASH_LEN {
        return Err("payload truncated".into());
    }
    let (body, checksum) = bytes.split_at(bytes.len() - HASH_LEN);
    if Sha256::digest(body).as_slice() != checksum {
        return Err("payload checksum mismatch".into());
    }
    if &body[..MAGIC.len()] != MAGIC {
        return Err("bad magic".into());
    }
    let mut cursor = Cursor {
        bytes: body,
        at: MAGIC.len(),
    };
    let version = u32::from_le_bytes(cursor.take());
    if version != CACHE_FORMAT_VERSION {
        return Ok((version, Vec::new()));
    }
    let digest: [u8; HASH_LEN] = cursor.take();
    if digest != key.digest() {
        return Err("payload belongs to a different key".into());
    }
    let parity = match cursor.take::<1>()[0] {
        0 => ParityClass::Plus,
        1 => ParityClass::Minus,
        other => return Err(format!("bad parity byte {other}")),
    };
    let count = u64::from_le_bytes(cursor.take()) as usize;
    if body.len() != HEADER_LEN + count.saturating_mul(RECORD_LEN) {
        return Err("payload length disagrees with record count".into());
    }
    let records = (0..count)
        .map(|_| Record {
            label: u64::from_le_bytes(cursor.take()) as usize,
            parity,
            value: f64::from_bits(u64::from_le_bytes(cursor.take())),
            truncation_dim: u64::from_le_bytes(cursor.take()) as usize,
            error_estimate: f64::from_bits(u64::from_le_bytes(cursor.take())),
        })
        .collect();
    Ok((version, records))
}

fn parity_byte(parity: ParityClass) -> u8 {
    match parity {
        ParityClass::Plus => 0,
        ParityClass::Minus => 1,
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl Cursor<'_> {
    /// Callers check lengths up front.
    fn take<const N: usize>(&mut self) -> [u8; N] {
        let out = self.bytes[self.at..self.at + N]
            .try_into()
            .expect("length checked");
        self.at += N;
        out
    }
}

/// Writes `bytes` next to `path` under a temporary name, syncs, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::Cache(format!("{} has no file name", path.display())))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(format!(".tmp.{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()
    };
    if let Err(e) = write() {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::io(&tmp, e));
    }
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}
