//! GFN1 grid-function files.
//!
//! Layout: the magic bytes `GFN1`, a little-endian `u32` dimension `d`, `d`
//! little-endian `u32` sizes, then `n^d` complex values as little-endian
//! `f64` pairs `(re, im)` in row-major order.

use std::fs;
use std::io;
use std::path::Path;

use hypfl_core::{Complex64, GridFunction, GridSpec};

pub const MAGIC: &[u8; 4] = b"GFN1";

#[derive(Debug, thiserror::Error)]
pub enum GfnError {
    #[error("bad magic {found:?}, expected \"GFN1\"")]
    BadMagic { found: Vec<u8> },
    #[error("truncated payload: expected {expected} bytes, found {actual}")]
    TruncatedPayload { expected: usize, actual: usize },
    #[error("{actual} trailing bytes after a payload of {expected} bytes")]
    TrailingBytes { expected: usize, actual: usize },
    #[error("grid size {0} is not a power of two >= 8")]
    NonPowerOfTwo(u32),
    #[error("unsupported dimension {0}: only d = 1 and d = 2 are supported")]
    UnsupportedDimension(u32),
    #[error("axis sizes differ: {0:?}")]
    AnisotropicGrid(Vec<u32>),
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl GfnError {
    pub fn name(&self) -> &'static str {
        match self {
            GfnError::BadMagic { .. } => "BadMagic",
            GfnError::TruncatedPayload { .. } => "TruncatedPayload",
            GfnError::TrailingBytes { .. } => "TrailingBytes",
            GfnError::NonPowerOfTwo(_) => "NonPowerOfTwo",
            GfnError::UnsupportedDimension(_) => "UnsupportedDimension",
            GfnError::AnisotropicGrid(_) => "AnisotropicGrid",
            GfnError::NonFinite(_) => "NonFinite",
            GfnError::Io { .. } => "IoError",
        }
    }
}

fn header_len(d: usize) -> usize {
    8 + 4 * d
}

pub fn encode(f: &GridFunction) -> Vec<u8> {
    let g = f.grid();
    let mut out = Vec::with_capacity(header_len(g.dim()) + 16 * g.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(g.dim() as u32).to_le_bytes());
    for _ in 0..g.dim() {
        out.extend_from_slice(&(g.n() as u32).to_le_bytes());
    }
    for v in f.values() {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
    out
}

fn u32_at(bytes: &[u8], at: usize) -> Result<u32, GfnError> {
    bytes
        .get(at..at + 4)
        .map(|b| u32::from_le_bytes(b.try_into().expect("four bytes")))
        .ok_or(GfnError::TruncatedPayload {
            expected: at + 4,
            actual: bytes.len(),
        })
}

pub fn decode(bytes: &[u8]) -> Result<GridFunction, GfnError> {
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err(GfnError::BadMagic {
            found: bytes[..bytes.len().min(4)].to_vec(),
        });
    }
    let d = u32_at(bytes, 4)?;
    if !(1..=2).contains(&d) {
        return Err(GfnError::UnsupportedDimension(d));
    }
    let sizes: Vec<u32> = (0..d as usize).map(|i| u32_at(bytes, 8 + 4 * i)).collect::<Result<_, _>>()?;
    if let Some(&bad) = sizes.iter().find(|&&n| n < 8 || !n.is_power_of_two()) {
        return Err(GfnError::NonPowerOfTwo(bad));
    }
    if sizes.iter().any(|&n| n != sizes[0]) {
        return Err(GfnError::AnisotropicGrid(sizes));
    }
    let grid = GridSpec::new(d as usize, sizes[0] as usize).expect("validated above");
    let start = header_len(d as usize);
    let expected = start + 16 * grid.len();
    if bytes.len() < expected {
        return Err(GfnError::TruncatedPayload {
            expected,
            actual: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(GfnError::TrailingBytes {
            expected,
            actual: bytes.len() - expected,
        });
    }
    let values: Vec<Complex64> = bytes[start..]
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[..8].try_into().expect("eight bytes")),
                f64::from_le_bytes(c[8..].try_into().expect("eight bytes")),
            )
        })
        .collect();
    GridFunction::new(grid, values).map_err(|e| match e {
        hypfl_core::Error::NonFinite(i) => GfnError::NonFinite(i),
        other => unreachable!("length is checked: {other}"),
    })
}

pub fn read_gfn(path: impl AsRef<Path>) -> Result<GridFunction, GfnError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| GfnError::Io {
        path: path.display().to_string(),
        source,
    })?;
    decode(&bytes)
}

pub fn write_gfn(path: impl AsRef<Path>, f: &GridFunction) -> Result<(), GfnError> {
    let path = path.as_ref();
    fs::write(path, encode(f)).map_err(|source| GfnError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(d: usize, n: usize) -> GridFunction {
        GridFunction::from_fn(GridSpec::new(d, n).unwrap(), |x| {
            Complex64::new(x[0].sin() + 0.1, -(x.iter().sum::<f64>()).cos())
        })
        .unwrap()
    }

    #[test]
    fn round_trip_is_bit_exact() {
        for (d, n) in [(1, 8), (1, 64), (2, 16)] {
            let f = sample(d, n);
            let bytes = encode(&f);
            assert_eq!(bytes.len(), 8 + 4 * d + 16 * n.pow(d as u32));
            let g = decode(&bytes).unwrap();
            assert_eq!(f, g);
            assert_eq!(encode(&g), bytes);
        }
    }

    #[test]
    fn header_errors_are_distinct() {
        let good = encode(&sample(1, 8));
        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(matches!(decode(&bad), Err(GfnError::BadMagic { .. })));
        assert!(matches!(decode(b"GF"), Err(GfnError::BadMagic { .. })));

        let cut = &good[..good.len() - 5];
        match decode(cut) {
            Err(GfnError::TruncatedPayload { expected, actual }) => {
                assert_eq!(expected, good.len());
                assert_eq!(actual, good.len() - 5);
            }
            other => panic!("{other:?}"),
        }

        let mut d3 = good.clone();
        d3[4..8].copy_from_slice(&3u32.to_le_bytes());
        assert!(matches!(decode(&d3), Err(GfnError::UnsupportedDimension(3))));

        let mut n12 = good.clone();
        n12[8..12].copy_from_slice(&12u32.to_le_bytes());
        assert!(matches!(decode(&n12), Err(GfnError::NonPowerOfTwo(12))));

        let mut long = good;
        long.push(0);
        assert!(matches!(decode(&long), Err(GfnError::TrailingBytes { .. })));
    }

    #[test]
    fn anisotropic_header_rejected() {
        let mut b = encode(&sample(2, 8));
        b[12..16].copy_from_slice(&16u32.to_le_bytes());
        assert!(matches!(decode(&b), Err(GfnError::AnisotropicGrid(_))));
    }
}
