//! Histograms of scalar maps, threshold selection, binary recoloring and display rescaling.

use crate::error::{Error, Result};
use crate::map::ScalarMap;
use crate::raster::GrayImage;
use crate::real::Real;

pub const BLACK: u8 = 0;
pub const WHITE: u8 = 255;

/// Equal-width histogram spanning `[lo, hi]` of a map.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram<T> {
    lo: T,
    hi: T,
    counts: Vec<u64>,
}

impl<T: Real> Histogram<T> {
    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn bin_count(&self) -> usize {
        self.counts.len()
    }

    /// Lower and upper edge of bin `i`. The last bin is closed on the right.
    pub fn bin_edges(&self, i: usize) -> (T, T) {
        let n = T::from_usize_exact(self.counts.len());
        let width = (self.hi - self.lo) / n;
        let lo = self.lo + width * T::from_usize_exact(i);
        let hi = if i + 1 == self.counts.len() { self.hi } else { self.lo + width * T::from_usize_exact(i + 1) };
        (lo, hi)
    }
}

/// Bins every map value; a constant map puts everything in bin 0.
pub fn histogram<T: Real>(map: &ScalarMap<T>, bins: usize) -> Result<Histogram<T>> {
    if bins == 0 {
        return Err(Error::ZeroBins);
    }
    let (lo, hi) = (map.min(), map.max());
    let mut counts = vec![0u64; bins];
    let span = hi - lo;
    let scale = T::from_usize_exact(bins);
    for &v in map.values() {
        let bin =
            if span > T::zero() { ((v - lo) / span * scale).floor().to_usize().unwrap_or(0).min(bins - 1) } else { 0 };
        counts[bin] += 1;
    }
    Ok(Histogram { lo, hi, counts })
}

/// Nearest-rank percentile: the smallest map value with at least `p`% of values at or below it.
pub fn percentile_threshold<T: Real>(map: &ScalarMap<T>, p: f64) -> Result<T> {
    if !(0.0..=100.0).contains(&p) {
        return Err(Error::PercentileOutOfRange(p));
    }
    let mut sorted = map.values().to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("map values are finite"));
    let n = sorted.len();
    let rank = ((p * n as f64) / 100.0).ceil() as usize;
    Ok(sorted[rank.clamp(1, n) - 1])
}

/// Black where the value exceeds `h`, white elsewhere.
pub fn threshold_segment<T: Real>(map: &ScalarMap<T>, h: T) -> GrayImage {
    let pixels = map.values().iter().map(|&v| if v > h { BLACK } else { WHITE }).collect();
    GrayImage::new(map.width(), map.height(), pixels).expect("map dimensions are valid")
}

/// Linear min-max stretch to `[0, 255]`, rounding halves up. Constant maps render mid-gray.
pub fn rescale_for_display<T: Real>(map: &ScalarMap<T>) -> GrayImage {
    let (lo, hi) = (map.min(), map.max());
    let span = hi - lo;
    let pixels = if span > T::zero() {
        let full = T::lit(255.0);
        let half = T::lit(0.5);
        map.values()
            .iter()
            .map(|&v| ((v - lo) / span * full + half).floor().max(T::zero()).min(full).to_u8().unwrap_or(0))
            .collect()
    } else {
        vec![128; map.values().len()]
    };
    GrayImage::new(map.width(), map.height(), pixels).expect("map dimensions are valid")
}
