//! Gray-level co-occurrence matrices, the texture features derived from them,
//! the chi-square displacement selector and sliding-window feature maps.
//!
//! All features are evaluated on the normalized (probability) table. The
//! matrix is not symmetrized, and only pairs whose two pixels both lie inside
//! the image are counted.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::map::{try_per_pixel, ScalarMap};
use crate::raster::{GrayImage, WindowSpec};
use crate::real::Real;

/// Offset from the first to the second pixel of a pair.
///
/// `dx` moves along rows (down), `dy` along columns (right), so `(0, 1)`
/// pairs each pixel with its right-hand neighbor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Displacement {
    dx: isize,
    dy: isize,
}

impl Displacement {
    pub fn new(dx: isize, dy: isize) -> Result<Self> {
        if dx == 0 && dy == 0 {
            return Err(Error::ZeroDisplacement);
        }
        Ok(Displacement { dx, dy })
    }

    pub fn dx(&self) -> isize {
        self.dx
    }

    pub fn dy(&self) -> isize {
        self.dy
    }

    /// Number of in-image pairs this displacement yields on a `width`×`height` raster.
    pub fn pair_count(&self, width: usize, height: usize) -> usize {
        let rows = height.saturating_sub(self.dx.unsigned_abs());
        let cols = width.saturating_sub(self.dy.unsigned_abs());
        rows * cols
    }
}

impl Default for Displacement {
    fn default() -> Self {
        Displacement { dx: 0, dy: 1 }
    }
}

impl fmt::Display for Displacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.dx, self.dy)
    }
}

/// `levels`×`levels` pair counts for one displacement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooccurrenceMatrix {
    levels: usize,
    counts: Vec<u64>,
    total: u64,
}

impl CooccurrenceMatrix {
    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Count of pairs whose first pixel has level `g` and second `g2`.
    pub fn get(&self, g: usize, g2: usize) -> u64 {
        self.counts[g * self.levels + g2]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

fn check_levels(pixels: &[u8], levels: usize) -> Result<()> {
    if !(1..=256).contains(&levels) {
        return Err(Error::LevelsOutOfRange(levels));
    }
    match pixels.iter().find(|&&v| v as usize >= levels) {
        Some(&value) => Err(Error::PixelExceedsLevels { value, levels }),
        None => Ok(()),
    }
}

/// Adds the pair counts of `tau` over a row-major raster into `counts`; returns the number of pairs.
fn accumulate_pairs(
    pixels: &[u8],
    width: usize,
    height: usize,
    tau: Displacement,
    levels: usize,
    counts: &mut [u64],
) -> u64 {
    let (dr, dc) = (tau.dx, tau.dy);
    let rows = (-dr).max(0) as usize..(height as isize - dr.max(0)).max(0) as usize;
    let cols = (-dc).max(0) as usize..(width as isize - dc.max(0)).max(0) as usize;
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    let mut total = 0u64;
    for r in rows {
        let first = &pixels[r * width..(r + 1) * width];
        let r2 = (r as isize + dr) as usize;
        let second = &pixels[r2 * width..(r2 + 1) * width];
        for c in cols.clone() {
            let c2 = (c as isize + dc) as usize;
            counts[first[c] as usize * levels + second[c2] as usize] += 1;
            total += 1;
        }
    }
    total
}

/// Counts gray-level pairs `(image(p), image(p + tau))` over all in-image pairs.
pub fn compute_glcm(image: &GrayImage, tau: Displacement, levels: usize) -> Result<CooccurrenceMatrix> {
    check_levels(image.pixels(), levels)?;
    if tau.pair_count(image.width(), image.height()) == 0 {
        return Err(Error::NoValidPairs { dx: tau.dx, dy: tau.dy, width: image.width(), height: image.height() });
    }
    let mut counts = vec![0u64; levels * levels];
    let total = accumulate_pairs(image.pixels(), image.width(), image.height(), tau, levels, &mut counts);
    Ok(CooccurrenceMatrix { levels, counts, total })
}

/// Joint probability table `P(g, g')`, row index `g` for the first pixel of a pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Probabilities<T> {
    levels: usize,
    p: Vec<T>,
}

impl<T: Real> Probabilities<T> {
    /// Wraps a row-major `levels`×`levels` table. Entries must be non-negative and finite;
    /// the caller is responsible for them summing to one.
    pub fn from_table(levels: usize, p: Vec<T>) -> Result<Self> {
        if levels == 0 || p.len() != levels * levels {
            return Err(Error::InvalidDimensions { width: levels, height: levels, len: p.len() });
        }
        if let Some(i) = p.iter().position(|v| !v.is_finite() || *v < T::zero()) {
            return Err(Error::NonFiniteValue(i));
        }
        Ok(Probabilities { levels, p })
    }

    /// The table `P(g, g') = row[g] * col[g']`.
    pub fn outer(row: &[T], col: &[T]) -> Result<Self> {
        if row.len() != col.len() {
            return Err(Error::LengthMismatch { xs: row.len(), ys: col.len() });
        }
        let p = row.iter().flat_map(|&a| col.iter().map(move |&b| a * b)).collect();
        Self::from_table(row.len(), p)
    }

    fn zeroed(levels: usize) -> Self {
        Probabilities { levels, p: vec![T::zero(); levels * levels] }
    }

    fn refill(&mut self, counts: &[u64], total: u64) {
        let total = T::lit(total as f64);
        for (p, &c) in self.p.iter_mut().zip(counts) {
            *p = T::lit(c as f64) / total;
        }
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn get(&self, g: usize, g2: usize) -> T {
        self.p[g * self.levels + g2]
    }

    pub fn values(&self) -> &[T] {
        &self.p
    }

    /// `P(g, ·)`: probability that the first pixel has level `g`.
    pub fn row_marginal(&self) -> Vec<T> {
        self.p.chunks(self.levels).map(|row| row.iter().copied().sum()).collect()
    }

    /// `P(·, g')`: probability that the second pixel has level `g'`.
    pub fn col_marginal(&self) -> Vec<T> {
        let mut col = vec![T::zero(); self.levels];
        for row in self.p.chunks(self.levels) {
            for (c, &v) in col.iter_mut().zip(row) {
                *c = *c + v;
            }
        }
        col
    }

    fn cells(&self) -> impl Iterator<Item = (T, T, T)> + '_ {
        let levels = self.levels;
        self.p
            .iter()
            .enumerate()
            .map(move |(i, &p)| (T::from_usize_exact(i / levels), T::from_usize_exact(i % levels), p))
    }
}

/// Divides every count by the matrix total.
pub fn normalize<T: Real>(m: &CooccurrenceMatrix) -> Result<Probabilities<T>> {
    if m.total == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut p = Probabilities::zeroed(m.levels);
    p.refill(&m.counts, m.total);
    Ok(p)
}

/// Means and standard deviations of the row and column marginals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalStats<T> {
    pub mu1: T,
    pub mu2: T,
    pub sigma1: T,
    pub sigma2: T,
}

impl<T: Real> MarginalStats<T> {
    /// A marginal concentrated on a single level gets a standard deviation of exactly zero.
    pub fn of(p: &Probabilities<T>) -> Self {
        let (mu1, sigma1) = moments(&p.row_marginal());
        let (mu2, sigma2) = moments(&p.col_marginal());
        MarginalStats { mu1, mu2, sigma1, sigma2 }
    }
}

fn moments<T: Real>(marginal: &[T]) -> (T, T) {
    let mean = marginal.iter().enumerate().map(|(g, &p)| T::from_usize_exact(g) * p).sum::<T>();
    if marginal.iter().filter(|&&p| p > T::zero()).count() <= 1 {
        return (mean, T::zero());
    }
    let var = marginal
        .iter()
        .enumerate()
        .map(|(g, &p)| {
            let d = T::from_usize_exact(g) - mean;
            d * d * p
        })
        .sum::<T>();
    (mean, var.sqrt())
}

/// Angular second moment, `sum P^2`.
pub fn energy<T: Real>(p: &Probabilities<T>) -> T {
    p.p.iter().map(|&v| v * v).sum()
}

/// `-sum P ln P`, taking `0 ln 0 = 0`.
pub fn entropy<T: Real>(p: &Probabilities<T>) -> T {
    -p.p.iter().filter(|&&v| v > T::zero()).map(|&v| v * v.ln()).sum::<T>()
}

/// `sum (g - g')^2 P(g, g')`.
pub fn contrast<T: Real>(p: &Probabilities<T>) -> T {
    p.cells()
        .map(|(g, g2, v)| {
            let d = g - g2;
            d * d * v
        })
        .sum()
}

/// Inverse difference moment, `sum P(g, g') / (1 + (g - g')^2)`.
pub fn local_homogeneity<T: Real>(p: &Probabilities<T>) -> T {
    p.cells()
        .map(|(g, g2, v)| {
            let d = g - g2;
            v / (T::one() + d * d)
        })
        .sum()
}

/// Pearson correlation between the two pixels of a pair. Zero when either marginal is degenerate.
pub fn correlation<T: Real>(p: &Probabilities<T>, stats: &MarginalStats<T>) -> T {
    if stats.sigma1 <= T::zero() || stats.sigma2 <= T::zero() {
        return T::zero();
    }
    let cov: T = p.cells().map(|(g, g2, v)| (g - stats.mu1) * (g2 - stats.mu2) * v).sum();
    (cov / (stats.sigma1 * stats.sigma2)).max(-T::one()).min(T::one())
}

/// `sum P(g, g')^2 / (P(g, ·) P(·, g'))` over cells with both marginals nonzero.
/// At least one for any probability table, exactly one under independence.
pub fn chi_square<T: Real>(p: &Probabilities<T>) -> T {
    let row = p.row_marginal();
    let col = p.col_marginal();
    let mut sum = T::zero();
    for (g, &r) in row.iter().enumerate() {
        if r <= T::zero() {
            continue;
        }
        for (g2, &c) in col.iter().enumerate() {
            let v = p.get(g, g2);
            if c > T::zero() && v > T::zero() {
                sum = sum + v * v / (r * c);
            }
        }
    }
    sum
}

/// Picks the candidate whose normalized co-occurrence table maximizes [`chi_square`].
/// Ties go to the earliest candidate.
pub fn select_displacement<T: Real>(
    image: &GrayImage,
    candidates: &[Displacement],
    levels: usize,
) -> Result<(Displacement, T)> {
    let mut best: Option<(Displacement, T)> = None;
    for &tau in candidates {
        let chi = chi_square(&normalize::<T>(&compute_glcm(image, tau, levels)?)?);
        if best.is_none_or(|(_, b)| chi > b) {
            best = Some((tau, chi));
        }
    }
    best.ok_or(Error::NoCandidates)
}

/// The texture features a feature map can compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Feature {
    Energy,
    Entropy,
    Contrast,
    Homogeneity,
    Correlation,
}

impl Feature {
    pub const ALL: [Feature; 5] =
        [Feature::Energy, Feature::Entropy, Feature::Contrast, Feature::Homogeneity, Feature::Correlation];

    pub fn name(&self) -> &'static str {
        match self {
            Feature::Energy => "energy",
            Feature::Entropy => "entropy",
            Feature::Contrast => "contrast",
            Feature::Homogeneity => "homogeneity",
            Feature::Correlation => "correlation",
        }
    }

    pub fn evaluate<T: Real>(&self, p: &Probabilities<T>) -> T {
        match self {
            Feature::Energy => energy(p),
            Feature::Entropy => entropy(p),
            Feature::Contrast => contrast(p),
            Feature::Homogeneity => local_homogeneity(p),
            Feature::Correlation => correlation(p, &MarginalStats::of(p)),
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown feature '{0}' (expected energy, entropy, contrast, homogeneity or correlation)")]
pub struct UnknownFeature(pub String);

impl FromStr for Feature {
    type Err = UnknownFeature;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Feature::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| UnknownFeature(s.to_owned()))
    }
}

struct WindowScratch<T> {
    window: Vec<u8>,
    counts: Vec<u64>,
    probs: Probabilities<T>,
}

/// Evaluates `feature` on the co-occurrence table of the clamped window around every pixel.
///
/// The image must already be quantized to `levels` gray levels.
pub fn feature_map<T: Real>(
    image: &GrayImage,
    feature: Feature,
    tau: Displacement,
    window: WindowSpec,
    levels: usize,
) -> Result<ScalarMap<T>> {
    check_levels(image.pixels(), levels)?;
    let side = window.side();
    if tau.pair_count(side, side) == 0 {
        return Err(Error::NoValidPairs { dx: tau.dx, dy: tau.dy, width: side, height: side });
    }
    let values = try_per_pixel(
        image,
        || WindowScratch {
            window: Vec::with_capacity(side * side),
            counts: vec![0u64; levels * levels],
            probs: Probabilities::<T>::zeroed(levels),
        },
        |s, x, y| {
            image.fill_window(x, y, side, &mut s.window);
            s.counts.iter_mut().for_each(|c| *c = 0);
            let total = accumulate_pairs(&s.window, side, side, tau, levels, &mut s.counts);
            s.probs.refill(&s.counts, total);
            let v = feature.evaluate(&s.probs);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFiniteValue(y * image.width() + x))
            }
        },
    )?;
    ScalarMap::new(image.width(), image.height(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn staircase() -> GrayImage {
        #[rustfmt::skip]
        let px = vec![
            1, 1, 1, 1, 1,
            1, 1, 1, 1, 0,
            1, 1, 1, 0, 0,
            1, 1, 0, 0, 0,
            1, 0, 0, 0, 0,
        ];
        GrayImage::new(5, 5, px).unwrap()
    }

    fn table(levels: usize, p: &[f64]) -> Probabilities<f64> {
        Probabilities::from_table(levels, p.to_vec()).unwrap()
    }

    #[test]
    fn staircase_matrix() {
        let m = compute_glcm(&staircase(), Displacement::new(0, 1).unwrap(), 2).unwrap();
        assert_eq!(m.counts(), &[6, 0, 4, 10]);
        assert_eq!(m.total(), 20);
    }

    #[test]
    fn constant_image_matrix() {
        let img = GrayImage::filled(3, 3, 200).unwrap();
        let m = compute_glcm(&img, Displacement::default(), 256).unwrap();
        assert_eq!(m.get(200, 200), 6);
        assert_eq!(m.total(), 6);
    }

    #[test]
    fn glcm_errors() {
        let img = GrayImage::filled(3, 3, 5).unwrap();
        assert_eq!(
            compute_glcm(&img, Displacement::default(), 4),
            Err(Error::PixelExceedsLevels { value: 5, levels: 4 })
        );
        assert!(matches!(compute_glcm(&img, Displacement::new(0, 3).unwrap(), 8), Err(Error::NoValidPairs { .. })));
        assert_eq!(Displacement::new(0, 0), Err(Error::ZeroDisplacement));
    }

    #[test]
    fn negative_displacement_counts() {
        let img = GrayImage::new(3, 2, vec![0, 1, 2, 3, 0, 1]).unwrap();
        // (-1, -1): pixel (r, c) paired with (r - 1, c - 1)
        let m = compute_glcm(&img, Displacement::new(-1, -1).unwrap(), 4).unwrap();
        assert_eq!(m.total(), 2);
        assert_eq!(m.get(0, 0), 1);
        assert_eq!(m.get(1, 1), 1);
    }

    #[test]
    fn normalize_staircase() {
        let m = compute_glcm(&staircase(), Displacement::default(), 2).unwrap();
        let p = normalize::<f64>(&m).unwrap();
        assert_eq!(p.values(), &[0.3, 0.0, 0.2, 0.5]);
    }

    #[test]
    fn single_cell_and_uniform_tables() {
        let single = table(2, &[0.0, 0.0, 1.0, 0.0]);
        let uniform = table(2, &[0.25; 4]);
        assert_eq!(energy(&single), 1.0);
        assert_eq!(energy(&uniform), 0.25);
        assert_eq!(entropy(&single), 0.0);
        assert_abs_diff_eq!(entropy(&uniform), 4f64.ln(), epsilon = 1e-15);
        assert!(energy(&single) > energy(&uniform));
        assert!(entropy(&single) < entropy(&uniform));
    }

    #[test]
    fn contrast_and_homogeneity_extremes() {
        let mut far = vec![0.0; 16];
        far[3] = 1.0;
        assert_eq!(contrast(&table(4, &far)), 9.0);
        assert_eq!(local_homogeneity(&table(2, &[0.0, 1.0, 0.0, 0.0])), 0.5);
        let diag = table(2, &[0.5, 0.0, 0.0, 0.5]);
        assert_eq!(contrast(&diag), 0.0);
        assert_eq!(local_homogeneity(&diag), 1.0);
        assert_eq!(chi_square(&diag), 2.0);
    }

    #[test]
    fn correlation_degenerate_and_independent() {
        let single = table(3, &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(correlation(&single, &MarginalStats::of(&single)), 0.0);
        let ind = Probabilities::outer(&[0.2, 0.3, 0.5], &[0.6, 0.1, 0.3]).unwrap();
        assert_abs_diff_eq!(correlation(&ind, &MarginalStats::of(&ind)), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(chi_square(&ind), 1.0, epsilon = 1e-12);
        let anti = table(2, &[0.0, 0.5, 0.5, 0.0]);
        assert_eq!(correlation(&anti, &MarginalStats::of(&anti)), -1.0);
    }

    #[test]
    fn single_row_mass_has_zero_sigma() {
        // all mass in one row, spread over columns: sigma1 must be exactly 0
        let p = table(3, &[0.0, 0.0, 0.0, 0.1, 0.7, 0.2, 0.0, 0.0, 0.0]);
        let s = MarginalStats::of(&p);
        assert_eq!(s.sigma1, 0.0);
        assert!(s.sigma2 > 0.0);
        assert_eq!(correlation(&p, &s), 0.0);
    }

    #[test]
    fn feature_names_round_trip() {
        for f in Feature::ALL {
            assert_eq!(f.name().parse::<Feature>().unwrap(), f);
        }
        assert!("variance".parse::<Feature>().is_err());
    }

    #[test]
    fn select_single_and_tie() {
        let img = GrayImage::filled(4, 4, 1).unwrap();
        let a = Displacement::new(1, 0).unwrap();
        let b = Displacement::new(0, 1).unwrap();
        assert_eq!(select_displacement::<f64>(&img, &[b], 2).unwrap().0, b);
        assert_eq!(select_displacement::<f64>(&img, &[a, b], 2).unwrap().0, a);
        assert_eq!(select_displacement::<f64>(&img, &[b, a], 2).unwrap().0, b);
        assert_eq!(select_displacement::<f64>(&img, &[], 2), Err(Error::NoCandidates));
    }

    #[test]
    fn feature_map_rejects_unquantized() {
        let img = GrayImage::filled(4, 4, 40).unwrap();
        let r = feature_map::<f64>(&img, Feature::Energy, Displacement::default(), WindowSpec::new(3).unwrap(), 32);
        assert_eq!(r, Err(Error::PixelExceedsLevels { value: 40, levels: 32 }));
        let r = feature_map::<f64>(
            &img,
            Feature::Energy,
            Displacement::new(3, 0).unwrap(),
            WindowSpec::new(3).unwrap(),
            64,
        );
        assert!(matches!(r, Err(Error::NoValidPairs { .. })));
    }

    #[test]
    fn constant_feature_maps() {
        let img = GrayImage::filled(6, 5, 3).unwrap();
        let w = WindowSpec::new(5).unwrap();
        let expect = [1.0, 0.0, 0.0, 1.0, 0.0];
        for (f, e) in Feature::ALL.into_iter().zip(expect) {
            let m = feature_map::<f32>(&img, f, Displacement::default(), w, 4).unwrap();
            assert!(m.values().iter().all(|&v| v == e), "{f}");
        }
    }
}
