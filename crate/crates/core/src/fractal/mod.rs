//! Local fractal-dimension estimators: gray-level box counting, the octagonal
//! rescaled-range (Hurst) method and the Method of Range, plus the shared
//! least-squares line fit.

mod boxcount;
mod fit;
mod hurst;
mod range;

pub use boxcount::{
    box_count_window, box_dimension, box_dimension_map, BoxCountSeries, BoxCounter, BOX_WINDOW, DEFAULT_BOX_SCALES,
};
pub use fit::{fit_line, FitLine};
pub use hurst::{
    hurst_dimension, hurst_dimension_map, hurst_profile, DistanceClass, HurstProfile, HURST_POINTS, OCTAGON,
};
pub use range::{
    max_range_dimension, range_dimension, range_dimension_map, range_pair, RangePair, INNER_SIDE, OUTER_SIDE,
};

use crate::map::ScalarMap;
use crate::raster::GrayImage;
use crate::real::Real;

/// The three per-pixel dimension estimators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Box,
    Hurst,
    Range,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Box, Method::Hurst, Method::Range];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Box => "box",
            Method::Hurst => "hurst",
            Method::Range => "range",
        }
    }

    pub fn dimension_map<T: Real>(&self, image: &GrayImage) -> ScalarMap<T> {
        match self {
            Method::Box => box_dimension_map(image),
            Method::Hurst => hurst_dimension_map(image),
            Method::Range => range_dimension_map(image),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown method '{0}' (expected box, hurst or range)")]
pub struct UnknownMethod(pub String);

impl std::str::FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| UnknownMethod(s.to_owned()))
    }
}
