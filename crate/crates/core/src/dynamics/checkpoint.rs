//! `NLSF` binary checkpoints.
//!
//! Layout, all little-endian: magic `b"NLSF"`, version `u32`, `d` `u32`,
//! `n` `u32`, `L` `f64`, `t` `f64`, then `n^d` `(re, im)` pairs of `f64` in
//! row-major order. Values are stored on the physical side.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{Field, Grid, Side};

pub const MAGIC: &[u8; 4] = b"NLSF";
pub const VERSION: u32 = 1;

pub fn write_checkpoint<W: Write>(mut w: W, field: &Field, t: f64) -> Result<()> {
    let phys = field.to_physical();
    let g = phys.grid();
    let mut buf = Vec::with_capacity(32 + 16 * g.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(g.dim() as u32).to_le_bytes());
    buf.extend_from_slice(&(g.n() as u32).to_le_bytes());
    buf.extend_from_slice(&g.length().to_le_bytes());
    buf.extend_from_slice(&t.to_le_bytes());
    for v in phys.values() {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

fn take<const K: usize>(bytes: &[u8], pos: &mut usize) -> Result<[u8; K]> {
    let end = *pos + K;
    let slice = bytes
        .get(*pos..end)
        .ok_or_else(|| Error::Checkpoint(format!("truncated at byte {}", *pos)))?;
    *pos = end;
    Ok(slice.try_into().expect("slice length"))
}

/// Reads a checkpoint, returning the physical-side field and its time.
pub fn read_checkpoint<R: Read>(mut r: R) -> Result<(Field, f64)> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    let mut pos = 0;
    let magic: [u8; 4] = take(&bytes, &mut pos)?;
    if &magic != MAGIC {
        return Err(Error::Checkpoint(format!("bad magic {magic:?}")));
    }
    let version = u32::from_le_bytes(take(&bytes, &mut pos)?);
    if version != VERSION {
        return Err(Error::Checkpoint(format!(
            "version mismatch: file has {version}, reader supports {VERSION}"
        )));
    }
    let d = u32::from_le_bytes(take(&bytes, &mut pos)?) as usize;
    let n = u32::from_le_bytes(take(&bytes, &mut pos)?) as usize;
    let length = f64::from_le_bytes(take(&bytes, &mut pos)?);
    let t = f64::from_le_bytes(take(&bytes, &mut pos)?);
    let grid = Grid::new(d, n, length)?;
    let expected = pos + 16 * grid.len();
    if bytes.len() != expected {
        return Err(Error::Checkpoint(format!(
            "payload size {} does not match header (expected {expected} bytes)",
            bytes.len()
        )));
    }
    let mut values = Vec::with_capacity(grid.len());
    for _ in 0..grid.len() {
        let re = f64::from_le_bytes(take(&bytes, &mut pos)?);
        let im = f64::from_le_bytes(take(&bytes, &mut pos)?);
        values.push(Complex64::new(re, im));
    }
    Ok((Field::new(grid, Side::Physical, values)?, t))
}

pub fn save_checkpoint(path: &std::path::Path, field: &Field, t: f64) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_checkpoint(std::io::BufWriter::new(file), field, t)
}

pub fn load_checkpoint(path: &std::path::Path) -> Result<(Field, f64)> {
    read_checkpoint(std::fs::File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let g = Grid::new(1, 8, 2.5).unwrap();
        let f = Field::from_fn(g, |[x, _]| Complex64::new(x, -x));
        let mut buf = Vec::new();
        write_checkpoint(&mut buf, &f, 0.75).unwrap();
        assert_eq!(&buf[..4], b"NLSF");
        assert_eq!(u32::from_le_bytes(buf[4..8].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(buf[8..12].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(buf[12..16].try_into().unwrap()), 8);
        assert_eq!(f64::from_le_bytes(buf[16..24].try_into().unwrap()), 2.5);
        assert_eq!(f64::from_le_bytes(buf[24..32].try_into().unwrap()), 0.75);
        assert_eq!(buf.len(), 32 + 8 * 16);
        assert_eq!(f64::from_le_bytes(buf[32..40].try_into().unwrap()), -1.25);
    }

    #[test]
    fn rejects_bad_magic_and_version() {
        let g = Grid::new(1, 8, 1.0).unwrap();
        let f = Field::zeros(g, Side::Physical);
        let mut buf = Vec::new();
        write_checkpoint(&mut buf, &f, 0.0).unwrap();
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(matches!(read_checkpoint(&bad[..]), Err(Error::Checkpoint(_))));
        let mut v2 = buf.clone();
        v2[4] = 2;
        let err = read_checkpoint(&v2[..]).unwrap_err();
        assert!(err.to_string().contains("version"));
        assert!(read_checkpoint(&buf[..buf.len() - 3]).is_err());
    }
}
