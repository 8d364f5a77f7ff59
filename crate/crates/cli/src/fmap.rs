//! FMAP: lossless on-disk scalar maps.
//!
//! Layout: `b"FMAP"`, version byte `1`, width and height as little-endian
//! `u32`, then `width * height` little-endian IEEE-754 `f64` values, row-major.

use texseg::ScalarMapF64;
use thiserror::Error;

pub const MAGIC: &[u8; 4] = b"FMAP";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 13;

#[derive(Debug, Error, PartialEq)]
pub enum FmapError {
    #[error("fmap: file is {0} bytes, shorter than the {HEADER_LEN}-byte header")]
    ShortHeader(usize),
    #[error("fmap: bad magic {0:02x?}")]
    BadMagic([u8; 4]),
    #[error("fmap: unsupported version {0}")]
    BadVersion(u8),
    #[error("fmap: byte length mismatch: {width}x{height} map needs {expected} bytes, file has {actual}")]
    LengthMismatch { width: u32, height: u32, expected: usize, actual: usize },
    #[error("fmap: {0}")]
    Map(#[from] texseg::Error),
    #[error("fmap: map of {0}x{1} does not fit 32-bit dimensions")]
    TooLarge(usize, usize),
}

pub fn encode(map: &ScalarMapF64) -> Result<Vec<u8>, FmapError> {
    let (w, h) = (map.width(), map.height());
    let (w32, h32) = match (u32::try_from(w), u32::try_from(h)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Err(FmapError::TooLarge(w, h)),
    };
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * map.values().len());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&w32.to_le_bytes());
    out.extend_from_slice(&h32.to_le_bytes());
    for v in map.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    Ok(out)
}

pub fn decode(bytes: &[u8]) -> Result<ScalarMapF64, FmapError> {
    if bytes.len() < HEADER_LEN {
        return Err(FmapError::ShortHeader(bytes.len()));
    }
    let magic: [u8; 4] = bytes[..4].try_into().expect("4 bytes");
    if &magic != MAGIC {
        return Err(FmapError::BadMagic(magic));
    }
    if bytes[4] != VERSION {
        return Err(FmapError::BadVersion(bytes[4]));
    }
    let width = u32::from_le_bytes(bytes[5..9].try_into().expect("4 bytes"));
    let height = u32::from_le_bytes(bytes[9..13].try_into().expect("4 bytes"));
    let expected = (width as usize)
        .checked_mul(height as usize)
        .and_then(|n| n.checked_mul(8))
        .and_then(|n| n.checked_add(HEADER_LEN))
        .unwrap_or(usize::MAX);
    if bytes.len() != expected {
        return Err(FmapError::LengthMismatch { width, height, expected, actual: bytes.len() });
    }
    let values =
        bytes[HEADER_LEN..].chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes"))).collect();
    Ok(ScalarMapF64::new(width as usize, height as usize, values)?)
}
