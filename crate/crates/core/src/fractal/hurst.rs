//! Rescaled-range (Hurst) estimate over a 37-pixel octagonal neighborhood.
//!
//! The octagon is partitioned into eight distance classes. Ranges are taken
//! cumulatively over every pixel at distance `<= d`, so they never decrease.

use super::fit::fit_line;
use crate::error::Result;
use crate::map::{per_pixel, ScalarMap};
use crate::raster::{check_center, GrayImage};
use crate::real::Real;

/// One distance class of the octagon: squared distance and `(dx, dy)` offsets.
#[derive(Debug, Clone, Copy)]
pub struct DistanceClass {
    pub label: char,
    pub squared_distance: u32,
    pub offsets: &'static [(isize, isize)],
}

#[rustfmt::skip]
pub const OCTAGON: [DistanceClass; 8] = [
    DistanceClass { label: 'a', squared_distance: 0, offsets: &[(0, 0)] },
    DistanceClass { label: 'b', squared_distance: 1, offsets: &[(0, -1), (-1, 0), (1, 0), (0, 1)] },
    DistanceClass { label: 'c', squared_distance: 2, offsets: &[(-1, -1), (1, -1), (-1, 1), (1, 1)] },
    DistanceClass { label: 'd', squared_distance: 4, offsets: &[(0, -2), (-2, 0), (2, 0), (0, 2)] },
    DistanceClass { label: 'e', squared_distance: 5, offsets: &[
        (-1, -2), (1, -2), (-2, -1), (2, -1), (-2, 1), (2, 1), (-1, 2), (1, 2),
    ] },
    DistanceClass { label: 'f', squared_distance: 8, offsets: &[(-2, -2), (2, -2), (-2, 2), (2, 2)] },
    DistanceClass { label: 'g', squared_distance: 9, offsets: &[(0, -3), (-3, 0), (3, 0), (0, 3)] },
    DistanceClass { label: 'h', squared_distance: 10, offsets: &[
        (-1, -3), (1, -3), (-3, -1), (3, -1), (-3, 1), (3, 1), (-1, 3), (1, 3),
    ] },
];

/// Number of fit points: every class except the center.
pub const HURST_POINTS: usize = 7;

/// Cumulative brightness ranges `r_d` for the seven nonzero distances, in gray levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HurstProfile {
    ranges: [u8; HURST_POINTS],
}

impl HurstProfile {
    pub fn new(ranges: [u8; HURST_POINTS]) -> Self {
        HurstProfile { ranges }
    }

    pub fn ranges(&self) -> &[u8; HURST_POINTS] {
        &self.ranges
    }

    /// `1, sqrt 2, 2, sqrt 5, sqrt 8, 3, sqrt 10`.
    pub fn distances<T: Real>() -> [T; HURST_POINTS] {
        std::array::from_fn(|i| T::from_usize_exact(OCTAGON[i + 1].squared_distance as usize).sqrt())
    }
}

fn log_distances<T: Real>() -> [T; HURST_POINTS] {
    // ln sqrt(s) = ln(s) / 2
    std::array::from_fn(|i| T::from_usize_exact(OCTAGON[i + 1].squared_distance as usize).ln() / T::lit(2.0))
}

fn profile_at(image: &GrayImage, cx: usize, cy: usize) -> HurstProfile {
    let center = image.clamped(cx, cy, 0, 0);
    let (mut lo, mut hi) = (center, center);
    let mut ranges = [0u8; HURST_POINTS];
    for (class, r) in OCTAGON[1..].iter().zip(ranges.iter_mut()) {
        for &(dx, dy) in class.offsets {
            let g = image.clamped(cx, cy, dx, dy);
            lo = lo.min(g);
            hi = hi.max(g);
        }
        *r = hi - lo;
    }
    HurstProfile { ranges }
}

/// Cumulative ranges around `(cx, cy)`, clamping neighbors to the border.
pub fn hurst_profile(image: &GrayImage, cx: usize, cy: usize) -> Result<HurstProfile> {
    check_center(image, cx, cy)?;
    Ok(profile_at(image, cx, cy))
}

fn slope_with<T: Real>(profile: &HurstProfile, log_d: &[T; HURST_POINTS]) -> T {
    if profile.ranges.iter().all(|&r| r == 0) {
        return T::zero();
    }
    let half = T::lit(0.5);
    let log_r: [T; HURST_POINTS] = std::array::from_fn(|i| match profile.ranges[i] {
        0 => half.ln(),
        r => T::from_usize_exact(r as usize).ln(),
    });
    fit_line(log_d, &log_r).expect("distances are distinct").slope
}

/// Slope of `ln r_d` against `ln d`. A flat neighborhood gives 0; a zero range
/// alongside nonzero ones is taken as half a gray level.
pub fn hurst_dimension<T: Real>(profile: &HurstProfile) -> T {
    slope_with(profile, &log_distances())
}

pub fn hurst_dimension_map<T: Real>(image: &GrayImage) -> ScalarMap<T> {
    let log_d = log_distances::<T>();
    let values = per_pixel(image, || (), |_, x, y| slope_with(&profile_at(image, x, y), &log_d));
    ScalarMap::from_trusted(image.width(), image.height(), values)
}
