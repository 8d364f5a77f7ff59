//! Netpbm graymap codec (P2 ASCII and P5 binary, maxval up to 255).
//!
//! Samples are returned as stored; a file with maxval < 255 is not rescaled.
//! Output always uses maxval 255.

use std::io::Write;

use super::GrayImage;
use crate::error::{Error, PgmFault, Result};

fn fault(offset: usize, fault: PgmFault) -> Error {
    Error::Pgm { offset, fault }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Reads an unsigned decimal token. `None` on end of input.
    fn number(&mut self) -> Option<std::result::Result<u32, usize>> {
        let start = self.pos;
        let mut value: u32 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = match value.checked_mul(10).and_then(|v| v.checked_add((b - b'0') as u32)) {
                Some(v) => v,
                None => return Some(Err(start)),
            };
            self.pos += 1;
        }
        if self.pos == start {
            if self.pos >= self.bytes.len() {
                return None;
            }
            return Some(Err(start));
        }
        // a token must end at whitespace, a comment or the end of input
        match self.bytes.get(self.pos) {
            None => Some(Ok(value)),
            Some(&b) if b.is_ascii_whitespace() || b == b'#' => Some(Ok(value)),
            Some(_) => Some(Err(self.pos)),
        }
    }

    fn header_field(&mut self, what: &'static str) -> Result<u32> {
        self.skip_whitespace_and_comments();
        match self.number() {
            Some(Ok(v)) => Ok(v),
            Some(Err(at)) => Err(fault(at, PgmFault::MalformedHeader(what))),
            None => Err(fault(self.pos, PgmFault::MalformedHeader(what))),
        }
    }
}

/// Decodes a P2 or P5 graymap.
pub fn load_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let binary = match bytes.get(..2) {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => return Err(fault(0, PgmFault::BadMagic)),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    match bytes.get(2) {
        Some(b) if b.is_ascii_whitespace() || *b == b'#' => {}
        _ => return Err(fault(2, PgmFault::MalformedHeader("missing separator after magic"))),
    }

    let width_at = cur.pos;
    let width = cur.header_field("expected width")? as usize;
    let height = cur.header_field("expected height")? as usize;
    if width == 0 || height == 0 {
        return Err(fault(width_at, PgmFault::MalformedHeader("zero image dimension")));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| fault(width_at, PgmFault::MalformedHeader("image dimensions overflow")))?;
    cur.skip_whitespace_and_comments();
    let maxval_at = cur.pos;
    let maxval = cur.header_field("expected maxval")?;
    if !(1..=255).contains(&maxval) {
        return Err(fault(maxval_at, PgmFault::MaxvalOutOfRange(maxval)));
    }
    // exactly one whitespace byte separates maxval from the raster
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        Some(_) => return Err(fault(cur.pos, PgmFault::MalformedHeader("expected whitespace after maxval"))),
        None => return Err(fault(cur.pos, PgmFault::TruncatedPixelData)),
    }

    let pixels = if binary {
        let data =
            bytes.get(cur.pos..cur.pos + count).ok_or_else(|| fault(bytes.len(), PgmFault::TruncatedPixelData))?;
        if let Some(i) = data.iter().position(|&v| v as u32 > maxval) {
            return Err(fault(cur.pos + i, PgmFault::ValueExceedsMaxval { value: data[i] as u32, maxval }));
        }
        data.to_vec()
    } else {
        let mut pixels = Vec::with_capacity(count);
        while pixels.len() < count {
            while matches!(bytes.get(cur.pos), Some(b) if b.is_ascii_whitespace()) {
                cur.pos += 1;
            }
            let at = cur.pos;
            match cur.number() {
                Some(Ok(v)) if v <= maxval => pixels.push(v as u8),
                Some(Ok(v)) => return Err(fault(at, PgmFault::ValueExceedsMaxval { value: v, maxval })),
                Some(Err(at)) => return Err(fault(at, PgmFault::BadPixelToken)),
                None => return Err(fault(bytes.len(), PgmFault::TruncatedPixelData)),
            }
        }
        pixels
    };
    GrayImage::new(width, height, pixels)
}

/// Encodes the image with maxval 255. ASCII output puts one image row per line.
pub fn save_pgm(image: &GrayImage, ascii: bool) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + image.pixels().len() * if ascii { 4 } else { 1 });
    let magic = if ascii { "P2" } else { "P5" };
    write!(out, "{magic}\n{} {}\n255\n", image.width(), image.height()).expect("write to Vec");
    if ascii {
        for y in 0..image.height() {
            let mut first = true;
            for &v in image.row(y) {
                if !first {
                    out.push(b' ');
                }
                first = false;
                write!(out, "{v}").expect("write to Vec");
            }
            out.push(b'\n');
        }
    } else {
        out.extend_from_slice(image.pixels());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decodes_ascii() {
        let img = load_pgm(b"P2\n2 2\n255\n0 255 128 64\n").unwrap();
        assert_eq!(img, GrayImage::new(2, 2, vec![0, 255, 128, 64]).unwrap());
    }

    #[test]
    fn decodes_binary() {
        let img = load_pgm(b"P5\n1 1\n255\n\x07").unwrap();
        assert_eq!(img, GrayImage::new(1, 1, vec![7]).unwrap());
    }

    #[test]
    fn ascii_and_binary_agree() {
        let a = load_pgm(b"P2\n3 1\n255\n9 0 200\n").unwrap();
        let b = load_pgm(b"P5 3 1 255\n\x09\x00\xc8").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn comments_after_magic() {
        let img = load_pgm(b"P2\n# made by hand\n2 1 # trailing\n# another\n255\n1 2").unwrap();
        assert_eq!(img.pixels(), &[1, 2]);
    }

    #[test]
    fn truncated_ascii() {
        let err = load_pgm(b"P2\n2 2\n255\n0 255 128\n").unwrap_err();
        assert!(matches!(err, Error::Pgm { fault: PgmFault::TruncatedPixelData, .. }), "{err}");
    }

    #[test]
    fn truncated_binary_reports_end_offset() {
        let bytes = b"P5\n2 2\n255\n\x01\x02";
        let err = load_pgm(bytes).unwrap_err();
        assert_eq!(err, Error::Pgm { offset: bytes.len(), fault: PgmFault::TruncatedPixelData });
    }

    #[test]
    fn header_errors() {
        assert_eq!(load_pgm(b"P6\n1 1\n255\n\0").unwrap_err(), Error::Pgm { offset: 0, fault: PgmFault::BadMagic });
        assert!(matches!(
            load_pgm(b"P2\n1 1\n65535\n0\n").unwrap_err(),
            Error::Pgm { offset: 7, fault: PgmFault::MaxvalOutOfRange(65535) }
        ));
        assert!(matches!(
            load_pgm(b"P2\nx 1\n255\n0\n").unwrap_err(),
            Error::Pgm { offset: 3, fault: PgmFault::MalformedHeader(_) }
        ));
        assert!(matches!(
            load_pgm(b"P2\n0 1\n255\n").unwrap_err(),
            Error::Pgm { fault: PgmFault::MalformedHeader(_), .. }
        ));
    }

    #[test]
    fn value_exceeding_maxval() {
        let err = load_pgm(b"P2\n2 1\n15\n3 16\n").unwrap_err();
        assert_eq!(err, Error::Pgm { offset: 12, fault: PgmFault::ValueExceedsMaxval { value: 16, maxval: 15 } });
        let err = load_pgm(b"P5\n2 1\n15\n\x03\x10").unwrap_err();
        assert_eq!(err, Error::Pgm { offset: 11, fault: PgmFault::ValueExceedsMaxval { value: 16, maxval: 15 } });
    }

    #[test]
    fn encodes_ascii() {
        let img = GrayImage::new(1, 1, vec![7]).unwrap();
        assert_eq!(save_pgm(&img, true), b"P2\n1 1\n255\n7\n");
    }

    #[test]
    fn encodes_binary() {
        let img = GrayImage::new(2, 1, vec![0, 255]).unwrap();
        assert_eq!(save_pgm(&img, false), b"P5\n2 1\n255\n\x00\xff");
    }

    #[test]
    fn binary_pixel_that_looks_like_whitespace() {
        let img = GrayImage::new(2, 1, vec![b'\n', b' ']).unwrap();
        assert_eq!(load_pgm(&save_pgm(&img, false)).unwrap(), img);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn round_trip(w in 1usize..=64, h in 1usize..=64, seed in any::<u64>()) {
            let mut state = seed | 1;
            let img = GrayImage::from_fn(w, h, |_, _| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 56) as u8
            }).unwrap();
            prop_assert_eq!(&load_pgm(&save_pgm(&img, true)).unwrap(), &img);
            prop_assert_eq!(&load_pgm(&save_pgm(&img, false)).unwrap(), &img);
        }
    }
}
