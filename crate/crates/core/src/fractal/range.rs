//! Method of Range: `D = (r1 - r2) / (ln 9 - ln 5)` from the brightness ranges
//! of nested 9×9 and 5×5 windows.

use crate::error::Result;
use crate::map::{per_pixel, ScalarMap};
use crate::raster::{check_center, GrayImage};
use crate::real::Real;

pub const OUTER_SIDE: usize = 9;
pub const INNER_SIDE: usize = 5;

/// Brightness ranges of the outer and inner windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RangePair {
    pub r1: u8,
    pub r2: u8,
}

impl RangePair {
    pub fn dimension<T: Real>(&self) -> T {
        let span = T::from_usize_exact(OUTER_SIDE).ln() - T::from_usize_exact(INNER_SIDE).ln();
        (T::from_usize_exact(self.r1 as usize) - T::from_usize_exact(self.r2 as usize)) / span
    }
}

/// Largest value the estimator can return: `255 / (ln 9 - ln 5)`.
pub fn max_range_dimension<T: Real>() -> T {
    RangePair { r1: 255, r2: 0 }.dimension()
}

fn pair_at(image: &GrayImage, cx: usize, cy: usize) -> RangePair {
    const OUTER: isize = (OUTER_SIDE / 2) as isize;
    const INNER: isize = (INNER_SIDE / 2) as isize;
    let (mut lo1, mut hi1) = (u8::MAX, u8::MIN);
    let (mut lo2, mut hi2) = (u8::MAX, u8::MIN);
    for dy in -OUTER..=OUTER {
        let inner_row = dy.abs() <= INNER;
        for dx in -OUTER..=OUTER {
            let g = image.clamped(cx, cy, dx, dy);
            lo1 = lo1.min(g);
            hi1 = hi1.max(g);
            if inner_row && dx.abs() <= INNER {
                lo2 = lo2.min(g);
                hi2 = hi2.max(g);
            }
        }
    }
    RangePair { r1: hi1 - lo1, r2: hi2 - lo2 }
}

/// Ranges of the clamped 9×9 and 5×5 windows around `(cx, cy)`.
pub fn range_pair(image: &GrayImage, cx: usize, cy: usize) -> Result<RangePair> {
    check_center(image, cx, cy)?;
    Ok(pair_at(image, cx, cy))
}

pub fn range_dimension<T: Real>(image: &GrayImage, cx: usize, cy: usize) -> Result<T> {
    Ok(range_pair(image, cx, cy)?.dimension())
}

pub fn range_dimension_map<T: Real>(image: &GrayImage) -> ScalarMap<T> {
    let values = per_pixel(image, || (), |_, x, y| pair_at(image, x, y).dimension());
    ScalarMap::from_trusted(image.width(), image.height(), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_image_is_zero() {
        let img = GrayImage::filled(10, 10, 99).unwrap();
        assert_eq!(range_dimension::<f64>(&img, 0, 0).unwrap(), 0.0);
        assert!(range_dimension_map::<f64>(&img).values().iter().all(|&d| d == 0.0));
    }

    #[test]
    fn ramp_interior() {
        let img = GrayImage::from_fn(20, 20, |x, _| x as u8).unwrap();
        let p = range_pair(&img, 10, 10).unwrap();
        assert_eq!(p, RangePair { r1: 8, r2: 4 });
    }

    #[test]
    fn clamped_corner_ranges() {
        let img = GrayImage::from_fn(20, 20, |x, _| x as u8).unwrap();
        // at x = 0 the left half of each window replicates column 0
        assert_eq!(range_pair(&img, 0, 5).unwrap(), RangePair { r1: 4, r2: 2 });
    }

    #[test]
    fn maximum_dimension() {
        let d: f64 = max_range_dimension();
        assert!((d - 255.0 / (9f64.ln() - 5f64.ln())).abs() < 1e-12);
        let img = GrayImage::from_fn(9, 9, |x, y| if x == 0 && y == 0 { 255 } else { 0 }).unwrap();
        assert_eq!(range_dimension::<f64>(&img, 4, 4).unwrap(), d);
    }
}
