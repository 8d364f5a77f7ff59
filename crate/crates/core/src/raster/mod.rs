//! Gray image data model, quantization and clamped window access.

mod pgm;

pub use pgm::{load_pgm, save_pgm};

use crate::error::{Error, Result};

/// Row-major raster of 8-bit gray levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || width.checked_mul(height) != Some(pixels.len()) {
            return Err(Error::InvalidDimensions { width, height, len: pixels.len() });
        }
        Ok(GrayImage { width, height, pixels })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width.saturating_mul(height)])
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width.saturating_mul(height));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    /// Pixel at column `x`, row `y`. Panics when out of range.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of range");
        self.pixels[y * self.width + x]
    }

    pub fn row(&self, y: usize) -> &[u8] {
        &self.pixels[y * self.width..(y + 1) * self.width]
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.width && y < self.height
    }

    /// Pixel at `(cx + dx, cy + dy)` with both coordinates clamped to the image.
    /// The center itself is not checked.
    #[inline]
    pub(crate) fn clamped(&self, cx: usize, cy: usize, dx: isize, dy: isize) -> u8 {
        let x = clamp_coord(cx, dx, self.width);
        let y = clamp_coord(cy, dy, self.height);
        self.pixels[y * self.width + x]
    }

    /// Copies the border-clamped `side`×`side` window centered on `(cx, cy)` into `out`.
    pub(crate) fn fill_window(&self, cx: usize, cy: usize, side: usize, out: &mut Vec<u8>) {
        let half = (side / 2) as isize;
        out.clear();
        for dy in -half..=half {
            let y = clamp_coord(cy, dy, self.height);
            let row = &self.pixels[y * self.width..(y + 1) * self.width];
            for dx in -half..=half {
                out.push(row[clamp_coord(cx, dx, self.width)]);
            }
        }
    }
}

#[inline]
fn clamp_coord(c: usize, d: isize, len: usize) -> usize {
    let v = c as isize + d;
    v.clamp(0, len as isize - 1) as usize
}

/// Odd-sided square neighborhood. Out-of-image neighbors replicate the nearest edge pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WindowSpec {
    side: usize,
}

impl WindowSpec {
    pub fn new(side: usize) -> Result<Self> {
        if side < 3 || side.is_multiple_of(2) {
            return Err(Error::InvalidWindowSide(side));
        }
        Ok(WindowSpec { side })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn half(&self) -> usize {
        self.side / 2
    }

    /// The clamped window around `(cx, cy)` as its own image.
    pub fn extract(&self, image: &GrayImage, cx: usize, cy: usize) -> Result<GrayImage> {
        check_center(image, cx, cy)?;
        let mut buf = Vec::with_capacity(self.side * self.side);
        image.fill_window(cx, cy, self.side, &mut buf);
        GrayImage::new(self.side, self.side, buf)
    }
}

pub(crate) fn check_center(image: &GrayImage, cx: usize, cy: usize) -> Result<()> {
    if image.contains(cx, cy) {
        Ok(())
    } else {
        Err(Error::CenterOutOfBounds { x: cx, y: cy, width: image.width, height: image.height })
    }
}

/// Reduces the image to `levels` gray levels: `floor(g * levels / 256)`.
pub fn quantize(image: &GrayImage, levels: usize) -> Result<GrayImage> {
    if !(2..=256).contains(&levels) {
        return Err(Error::LevelsOutOfRange(levels));
    }
    let pixels = image.pixels.iter().map(|&g| (g as usize * levels / 256) as u8).collect();
    Ok(GrayImage { width: image.width, height: image.height, pixels })
}

/// Reads the neighbor at offset `(dx, dy)` from center `(cx, cy)`, clamping to the border.
pub fn window_pixel(image: &GrayImage, cx: usize, cy: usize, dx: isize, dy: isize) -> Result<u8> {
    check_center(image, cx, cy)?;
    Ok(image.clamped(cx, cy, dx, dy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn three_by_three() -> GrayImage {
        GrayImage::new(3, 3, (0..9).collect()).unwrap()
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(GrayImage::new(0, 3, vec![]).is_err());
        assert!(GrayImage::new(2, 2, vec![0; 3]).is_err());
        assert!(GrayImage::new(2, 2, vec![0; 4]).is_ok());
    }

    #[test]
    fn quantize_examples() {
        let img = GrayImage::new(3, 1, vec![255, 127, 128]).unwrap();
        let q = quantize(&img, 2).unwrap();
        assert_eq!(q.pixels(), &[1, 0, 1]);
        assert_eq!(quantize(&img, 256).unwrap(), img);
        assert_eq!(quantize(&img, 1), Err(Error::LevelsOutOfRange(1)));
        assert_eq!(quantize(&img, 257), Err(Error::LevelsOutOfRange(257)));
    }

    #[test]
    fn window_pixel_clamps() {
        let img = three_by_three();
        assert_eq!(window_pixel(&img, 0, 0, -1, -1).unwrap(), img.get(0, 0));
        assert_eq!(window_pixel(&img, 1, 1, 0, 0).unwrap(), img.get(1, 1));
        assert_eq!(window_pixel(&img, 2, 2, 2, 0).unwrap(), img.get(2, 2));
        assert_eq!(window_pixel(&img, 2, 0, -5, 1).unwrap(), img.get(0, 1));
        assert!(matches!(window_pixel(&img, 3, 0, 0, 0), Err(Error::CenterOutOfBounds { .. })));
    }

    #[test]
    fn window_spec_validation() {
        assert!(WindowSpec::new(1).is_err());
        assert!(WindowSpec::new(4).is_err());
        assert_eq!(WindowSpec::new(5).unwrap().half(), 2);
    }

    #[test]
    fn extract_replicates_corner() {
        let img = three_by_three();
        let w = WindowSpec::new(3).unwrap().extract(&img, 0, 0).unwrap();
        assert_eq!(w.pixels(), &[0, 0, 1, 0, 0, 1, 3, 3, 4]);
    }

    proptest! {
        #[test]
        fn quantize_is_monotone(levels in 2usize..=256, a in 0u8..=255, b in 0u8..=255) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let img = GrayImage::new(2, 1, vec![lo, hi]).unwrap();
            let q = quantize(&img, levels).unwrap();
            prop_assert!(q.pixels()[0] <= q.pixels()[1]);
            prop_assert!((q.pixels()[1] as usize) < levels);
        }

        #[test]
        fn zero_offset_is_identity(w in 1usize..8, h in 1usize..8, seed in any::<u64>()) {
            let img = GrayImage::from_fn(w, h, |x, y| (seed.wrapping_mul(31).wrapping_add((x * 7 + y * 13) as u64) % 256) as u8).unwrap();
            for y in 0..h {
                for x in 0..w {
                    prop_assert_eq!(window_pixel(&img, x, y, 0, 0).unwrap(), img.get(x, y));
                }
            }
        }
    }
}
