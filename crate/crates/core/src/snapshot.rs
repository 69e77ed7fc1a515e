//! Binary field snapshots.
//!
//! Layout: the 8 bytes `QLAFLD01`, then `nx`, `ny` and the component count (4)
//! as little-endian `u32`, then every site in row-major order (x fastest), each
//! as four `(re, im)` pairs of little-endian `f64`.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

use crate::fields::QubitState4;
use crate::grid::{FieldGrid, Geometry, GridError};

pub const MAGIC: &[u8; 8] = b"QLAFLD01";
pub const COMPONENTS: u32 = 4;
const HEADER_LEN: usize = 8 + 12;

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported component count {0}")]
    Components(u32),
    #[error("payload length {got} does not match header (expected {expected})")]
    Truncated { expected: usize, got: usize },
    #[error(transparent)]
    Grid(#[from] GridError),
}

pub fn encode(g: &FieldGrid) -> Vec<u8> {
    let mut buf = Vec::with_capacity(HEADER_LEN + g.sites().len() * 64);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(g.nx() as u32).to_le_bytes());
    buf.extend_from_slice(&(g.ny() as u32).to_le_bytes());
    buf.extend_from_slice(&COMPONENTS.to_le_bytes());
    for s in g.sites() {
        for q in &s.0 {
            buf.extend_from_slice(&q.re.to_le_bytes());
            buf.extend_from_slice(&q.im.to_le_bytes());
        }
    }
    buf
}

fn u32_at(b: &[u8], off: usize) -> u32 {
    u32::from_le_bytes(b[off..off + 4].try_into().unwrap())
}

fn f64_at(b: &[u8], off: usize) -> f64 {
    f64::from_le_bytes(b[off..off + 8].try_into().unwrap())
}

/// Parses a snapshot. The spacing is not stored, so the caller supplies `dx`.
pub fn decode(bytes: &[u8], dx: f64) -> Result<FieldGrid, SnapshotError> {
    if bytes.len() < HEADER_LEN || &bytes[..8] != MAGIC {
        return Err(SnapshotError::BadMagic);
    }
    let nx = u32_at(bytes, 8) as usize;
    let ny = u32_at(bytes, 12) as usize;
    let comps = u32_at(bytes, 16);
    if comps != COMPONENTS {
        return Err(SnapshotError::Components(comps));
    }
    let expected = HEADER_LEN + nx * ny * 64;
    if bytes.len() != expected {
        return Err(SnapshotError::Truncated {
            expected,
            got: bytes.len(),
        });
    }
    let geom = Geometry::new(nx, ny, dx)?;
    let sites = bytes[HEADER_LEN..]
        .chunks_exact(64)
        .map(|chunk| {
            let mut q = [Complex64::default(); 4];
            for (k, v) in q.iter_mut().enumerate() {
                *v = Complex64::new(f64_at(chunk, 16 * k), f64_at(chunk, 16 * k + 8));
            }
            QubitState4(q)
        })
        .collect();
    Ok(FieldGrid::from_sites(geom, sites)?)
}

pub fn write_snapshot(path: &Path, g: &FieldGrid) -> Result<(), SnapshotError> {
    let mut f = io::BufWriter::new(fs::File::create(path)?);
    f.write_all(&encode(g))?;
    f.flush()?;
    Ok(())
}

pub fn read_snapshot(path: &Path, dx: f64) -> Result<FieldGrid, SnapshotError> {
    decode(&fs::read(path)?, dx)
}
