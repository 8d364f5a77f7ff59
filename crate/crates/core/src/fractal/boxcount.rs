//! Gray-level box counting over a square window.
//!
//! At scale `c` the window is split into `c`×`c` cells with boundaries at
//! `round(i * side / c)` and the gray axis into `c` boxes, `box(g) = floor(g * c / 256)`.
//! A cell whose levels span boxes `k..=l` contributes `l - k + 1` boxes.

use super::fit::fit_line;
use crate::error::{Error, Result};
use crate::map::{per_pixel, ScalarMap};
use crate::raster::GrayImage;
use crate::real::Real;

/// Window side used by [`box_dimension_map`].
pub const BOX_WINDOW: usize = 17;

/// Cells per axis (`1 / epsilon`) for the default five scales.
///
/// Every cell of a 17-pixel window is at least 2 pixels wide at these scales.
/// A single-pixel cell always contributes exactly one box, which pins the
/// finest scale at `N = c^2` regardless of texture.
pub const DEFAULT_BOX_SCALES: [usize; 5] = [2, 3, 4, 6, 8];

/// Box counts `N(epsilon)` for a sequence of scales.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxCountSeries {
    scales: Vec<usize>,
    counts: Vec<u64>,
}

impl BoxCountSeries {
    /// Cells per axis at each scale.
    pub fn scales(&self) -> &[usize] {
        &self.scales
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn epsilons<T: Real>(&self) -> Vec<T> {
        self.scales.iter().map(|&c| T::one() / T::from_usize_exact(c)).collect()
    }

    /// Slope of `ln N` against `ln(1 / epsilon)`.
    pub fn dimension<T: Real>(&self) -> Result<T> {
        let xs: Vec<T> = self.scales.iter().map(|&c| T::from_usize_exact(c).ln()).collect();
        let ys: Vec<T> = self.counts.iter().map(|&n| T::lit(n as f64).ln()).collect();
        Ok(fit_line(&xs, &ys)?.slope)
    }
}

#[derive(Debug, Clone)]
struct ScalePlan {
    cells: usize,
    /// Cell index along one axis for each window coordinate.
    cell_of: Vec<usize>,
    /// Gray box of each level.
    box_of: [u8; 256],
}

/// Precomputed cell and box partitions for one window side and scale set.
#[derive(Debug, Clone)]
pub struct BoxCounter {
    side: usize,
    plans: Vec<ScalePlan>,
}

impl BoxCounter {
    pub fn new(side: usize, scales: &[usize]) -> Result<Self> {
        if scales.len() < 2 {
            return Err(Error::TooFewPoints(scales.len()));
        }
        let mut plans = Vec::with_capacity(scales.len());
        for &c in scales {
            if c == 0 || c > side || c > 256 {
                return Err(Error::InvalidScale { scale: c, side });
            }
            // boundary i sits at round(i * side / c), halves rounded up
            let bound = |i: usize| (2 * i * side + c) / (2 * c);
            let mut cell_of = vec![0; side];
            for cell in 0..c {
                for v in &mut cell_of[bound(cell)..bound(cell + 1)] {
                    *v = cell;
                }
            }
            let mut box_of = [0u8; 256];
            for (g, b) in box_of.iter_mut().enumerate() {
                *b = (g * c / 256) as u8;
            }
            plans.push(ScalePlan { cells: c, cell_of, box_of });
        }
        Ok(BoxCounter { side, plans })
    }

    pub fn with_default_scales(side: usize) -> Result<Self> {
        Self::new(side, &DEFAULT_BOX_SCALES)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn scales(&self) -> Vec<usize> {
        self.plans.iter().map(|p| p.cells).collect()
    }

    /// Writes `N` for each scale of a row-major `side`×`side` window into `out`.
    fn count_into(&self, window: &[u8], lo: &mut Vec<u8>, hi: &mut Vec<u8>, out: &mut [u64]) {
        debug_assert_eq!(window.len(), self.side * self.side);
        for (plan, n) in self.plans.iter().zip(out.iter_mut()) {
            let c = plan.cells;
            lo.clear();
            lo.resize(c * c, u8::MAX);
            hi.clear();
            hi.resize(c * c, u8::MIN);
            for (y, row) in window.chunks_exact(self.side).enumerate() {
                let base = plan.cell_of[y] * c;
                for (&g, &cx) in row.iter().zip(&plan.cell_of) {
                    let cell = base + cx;
                    lo[cell] = lo[cell].min(g);
                    hi[cell] = hi[cell].max(g);
                }
            }
            *n = lo
                .iter()
                .zip(hi.iter())
                .map(|(&k, &l)| (plan.box_of[l as usize] - plan.box_of[k as usize]) as u64 + 1)
                .sum();
        }
    }

    pub fn count(&self, window: &GrayImage) -> Result<BoxCountSeries> {
        if window.width() != window.height() || window.width() != self.side {
            return Err(Error::NonSquareWindow { width: window.width(), height: window.height() });
        }
        let mut counts = vec![0; self.plans.len()];
        self.count_into(window.pixels(), &mut Vec::new(), &mut Vec::new(), &mut counts);
        Ok(BoxCountSeries { scales: self.scales(), counts })
    }

    /// Box dimension of the clamped window centered on every pixel.
    pub fn dimension_map<T: Real>(&self, image: &GrayImage) -> ScalarMap<T> {
        let xs: Vec<T> = self.plans.iter().map(|p| T::from_usize_exact(p.cells).ln()).collect();
        let scales = self.plans.len();
        let values = per_pixel(
            image,
            || {
                (
                    Vec::with_capacity(self.side * self.side),
                    Vec::new(),
                    Vec::new(),
                    vec![0u64; scales],
                    vec![T::zero(); scales],
                )
            },
            |(window, lo, hi, counts, ys), x, y| {
                image.fill_window(x, y, self.side, window);
                self.count_into(window, lo, hi, counts);
                for (l, &n) in ys.iter_mut().zip(counts.iter()) {
                    *l = T::lit(n as f64).ln();
                }
                fit_line(&xs, ys).expect("scales are distinct").slope
            },
        );
        ScalarMap::from_trusted(image.width(), image.height(), values)
    }
}

/// Box counts of a square window at the given cells-per-axis scales.
pub fn box_count_window(window: &GrayImage, scales: &[usize]) -> Result<BoxCountSeries> {
    if window.width() != window.height() {
        return Err(Error::NonSquareWindow { width: window.width(), height: window.height() });
    }
    BoxCounter::new(window.width(), scales)?.count(window)
}

/// Box dimension of a square window at the default scales.
pub fn box_dimension<T: Real>(window: &GrayImage) -> Result<T> {
    box_count_window(window, &DEFAULT_BOX_SCALES)?.dimension()
}

/// Per-pixel box dimension over clamped 17×17 windows.
pub fn box_dimension_map<T: Real>(image: &GrayImage) -> ScalarMap<T> {
    BoxCounter::with_default_scales(BOX_WINDOW).expect("default scales fit the default window").dimension_map(image)
}
