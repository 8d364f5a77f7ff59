//! Per-pixel real-valued maps and the row-parallel driver that fills them.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::raster::GrayImage;
use crate::real::Real;

/// A finite real value per pixel, row-major, with the dimensions of its source image.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarMap<T> {
    width: usize,
    height: usize,
    values: Vec<T>,
}

impl<T: Real> ScalarMap<T> {
    pub fn new(width: usize, height: usize, values: Vec<T>) -> Result<Self> {
        if width == 0 || height == 0 || width.checked_mul(height) != Some(values.len()) {
            return Err(Error::InvalidDimensions { width, height, len: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue(i));
        }
        Ok(ScalarMap { width, height, values })
    }

    /// For values produced by estimators whose outputs are finite by construction.
    pub(crate) fn from_trusted(width: usize, height: usize, values: Vec<T>) -> Self {
        debug_assert_eq!(values.len(), width * height);
        debug_assert!(values.iter().all(|v| v.is_finite()));
        ScalarMap { width, height, values }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn get(&self, x: usize, y: usize) -> T {
        assert!(x < self.width && y < self.height, "map index ({x}, {y}) out of range");
        self.values[y * self.width + x]
    }

    pub fn min(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn max(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }
}

/// Evaluates `f(scratch, x, y)` for every pixel of `image`, one row per task.
///
/// Each worker owns a scratch value built by `init`. Pixels are computed
/// independently, so the result does not depend on the pool size.
pub(crate) fn per_pixel<T, S, I, F>(image: &GrayImage, init: I, f: F) -> Vec<T>
where
    T: Send + Default + Clone,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, usize) -> T + Sync + Send,
{
    let width = image.width();
    let mut out = vec![T::default(); width * image.height()];
    out.par_chunks_mut(width).enumerate().for_each_init(init, |scratch, (y, row)| {
        for (x, v) in row.iter_mut().enumerate() {
            *v = f(scratch, x, y);
        }
    });
    out
}

/// Like [`per_pixel`] but for fallible evaluations; the first error in row-major order wins.
pub(crate) fn try_per_pixel<T, S, I, F>(image: &GrayImage, init: I, f: F) -> Result<Vec<T>>
where
    T: Send + Default + Clone,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, usize) -> Result<T> + Sync + Send,
{
    let width = image.width();
    let mut out = vec![T::default(); width * image.height()];
    let errors: Vec<(usize, Error)> = out
        .par_chunks_mut(width)
        .enumerate()
        .map_init(init, |scratch, (y, row)| {
            for (x, v) in row.iter_mut().enumerate() {
                match f(scratch, x, y) {
                    Ok(value) => *v = value,
                    Err(e) => return Some((y * width + x, e)),
                }
            }
            None
        })
        .flatten()
        .collect();
    match errors.into_iter().min_by_key(|(i, _)| *i) {
        Some((_, e)) => Err(e),
        None => Ok(out),
    }
}
