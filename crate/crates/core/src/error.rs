use std::fmt;

use thiserror::Error;

/// What went wrong while decoding a PGM stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PgmFault {
    BadMagic,
    MalformedHeader(&'static str),
    MaxvalOutOfRange(u32),
    TruncatedPixelData,
    BadPixelToken,
    ValueExceedsMaxval { value: u32, maxval: u32 },
}

impl fmt::Display for PgmFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PgmFault::BadMagic => write!(f, "bad magic number (expected P2 or P5)"),
            PgmFault::MalformedHeader(what) => write!(f, "malformed header: {what}"),
            PgmFault::MaxvalOutOfRange(v) => write!(f, "maxval {v} outside 1..=255"),
            PgmFault::TruncatedPixelData => write!(f, "truncated pixel data"),
            PgmFault::BadPixelToken => write!(f, "non-numeric pixel value"),
            PgmFault::ValueExceedsMaxval { value, maxval } => {
                write!(f, "pixel value {value} exceeds maxval {maxval}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pgm: {fault} at byte offset {offset}")]
    Pgm { offset: usize, fault: PgmFault },

    #[error("invalid image dimensions {width}x{height} for {len} pixels")]
    InvalidDimensions { width: usize, height: usize, len: usize },

    #[error("quantization levels {0} outside 2..=256")]
    LevelsOutOfRange(usize),

    #[error("window side {0} must be odd and at least 3")]
    InvalidWindowSide(usize),

    #[error("center ({x}, {y}) outside {width}x{height} image")]
    CenterOutOfBounds { x: usize, y: usize, width: usize, height: usize },

    #[error("displacement (0, 0) is not allowed")]
    ZeroDisplacement,

    #[error("pixel value {value} is not below the level count {levels}")]
    PixelExceedsLevels { value: u8, levels: usize },

    #[error("displacement ({dx}, {dy}) leaves no valid pixel pairs in a {width}x{height} image")]
    NoValidPairs { dx: isize, dy: isize, width: usize, height: usize },

    #[error("co-occurrence matrix has no counts")]
    EmptyMatrix,

    #[error("no candidate displacements given")]
    NoCandidates,

    #[error("line fit needs at least 2 points, got {0}")]
    TooFewPoints(usize),

    #[error("line fit abscissa and ordinate lengths differ ({xs} vs {ys})")]
    LengthMismatch { xs: usize, ys: usize },

    #[error("line fit needs at least two distinct abscissae")]
    DegenerateAbscissae,

    #[error("box scale {scale} invalid for window side {side}")]
    InvalidScale { scale: usize, side: usize },

    #[error("box counting needs a square window, got {width}x{height}")]
    NonSquareWindow { width: usize, height: usize },

    #[error("non-finite map value at index {0}")]
    NonFiniteValue(usize),

    #[error("histogram needs at least one bin")]
    ZeroBins,

    #[error("percentile {0} outside [0, 100]")]
    PercentileOutOfRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
