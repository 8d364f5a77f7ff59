//! Texture segmentation of gray images.
//!
//! Per-pixel texture maps come from two families of neighborhood operators:
//!
//! * co-occurrence features ([`glcm`]): energy, entropy, contrast, local
//!   homogeneity and correlation of the windowed gray-level co-occurrence
//!   matrix, plus a chi-square statistic for choosing the displacement;
//! * local fractal dimension ([`fractal`]): gray-level box counting, the
//!   octagonal rescaled-range (Hurst) method and the Method of Range.
//!
//! A map is turned into a binary segmentation with [`segmentation::threshold_segment`].
//!
//! Everything real-valued is generic over [`Real`] (`f32` or `f64`); the
//! `*F32`/`*F64` aliases below name the concrete instantiations.

pub mod error;
pub mod fractal;
pub mod glcm;
pub mod map;
pub mod raster;
pub mod real;
pub mod segmentation;

pub use error::{Error, PgmFault, Result};
pub use fractal::{FitLine, Method};
pub use glcm::{CooccurrenceMatrix, Displacement, Feature, MarginalStats, Probabilities};
pub use map::ScalarMap;
pub use raster::{GrayImage, WindowSpec};
pub use real::Real;
pub use segmentation::Histogram;

pub type ScalarMapF32 = ScalarMap<f32>;
pub type ScalarMapF64 = ScalarMap<f64>;
pub type ProbabilitiesF32 = Probabilities<f32>;
pub type ProbabilitiesF64 = Probabilities<f64>;
pub type MarginalStatsF32 = MarginalStats<f32>;
pub type MarginalStatsF64 = MarginalStats<f64>;
pub type FitLineF32 = FitLine<f32>;
pub type FitLineF64 = FitLine<f64>;
pub type HistogramF32 = Histogram<f32>;
pub type HistogramF64 = Histogram<f64>;
