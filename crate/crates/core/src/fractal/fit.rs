use crate::error::{Error, Result};
use crate::real::Real;

/// The line `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitLine<T> {
    pub slope: T,
    pub intercept: T,
}

impl<T: Real> FitLine<T> {
    pub fn at(&self, x: T) -> T {
        self.slope * x + self.intercept
    }
}

/// Ordinary least-squares line through `(xs[i], ys[i])`.
pub fn fit_line<T: Real>(xs: &[T], ys: &[T]) -> Result<FitLine<T>> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch { xs: xs.len(), ys: ys.len() });
    }
    if xs.len() < 2 {
        return Err(Error::TooFewPoints(xs.len()));
    }
    if xs.iter().all(|&x| x == xs[0]) {
        return Err(Error::DegenerateAbscissae);
    }
    let n = T::from_usize_exact(xs.len());
    let mean_x = xs.iter().copied().sum::<T>() / n;
    let mean_y = ys.iter().copied().sum::<T>() / n;
    let (mut sxx, mut sxy) = (T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        sxx = sxx + dx * dx;
        sxy = sxy + dx * (y - mean_y);
    }
    let slope = sxy / sxx;
    Ok(FitLine { slope, intercept: mean_y - slope * mean_x })
}
