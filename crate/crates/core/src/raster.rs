//! Pixel grids over rectangular windows of the complex plane.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::{Error, Result};

pub const OUTSIDE: u32 = 0;
pub const MEMBER: u32 = 1;
pub const UNCERTAIN: u32 = 2;

/// Pixel-count cap for a single raster.
pub const MAX_PIXELS: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let ok = [re_min, re_max, im_min, im_max]
            .iter()
            .all(|v| v.is_finite())
            && re_min < re_max
            && im_min < im_max;
        if !ok {
            return Err(Error::InvalidWindow(format!(
                "{re_min},{re_max},{im_min},{im_max}"
            )));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn square(half: f64) -> Result<Self> {
        Self::new(-half, half, -half, half)
    }

    /// True when the window is mapped onto itself by `z ↦ -z̄` and `z ↦ z̄`.
    pub fn is_symmetric(&self) -> bool {
        self.re_min == -self.re_max && self.im_min == -self.im_max
    }
}

impl FromStr for Window {
    type Err = Error;

    /// `reMin,reMax,imMin,imMax`
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidWindow(s.to_string()))
            })
            .collect::<Result<_>>()?;
        if v.len() != 4 {
            return Err(Error::InvalidWindow(s.to_string()));
        }
        Window::new(v[0], v[1], v[2], v[3])
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.re_min, self.re_max, self.im_min, self.im_max
        )
    }
}

/// Row-major grid; row 0 is the top edge (largest imaginary part).
#[derive(Clone, Debug, PartialEq)]
pub struct RasterGrid {
    pub window: Window,
    pub width: usize,
    pub height: usize,
    pub values: Vec<u32>,
}

impl RasterGrid {
    pub fn new(window: Window, width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 || width.saturating_mul(height) > MAX_PIXELS {
            return Err(Error::OutOfRange {
                what: "raster size",
                got: format!("{width}x{height}"),
                need: "at least 1x1 and at most 2^24 pixels",
            });
        }
        Ok(Self {
            window,
            width,
            height,
            values: vec![0; width * height],
        })
    }

    pub fn pixel_size(&self) -> (f64, f64) {
        let w = &self.window;
        (
            (w.re_max - w.re_min) / self.width as f64,
            (w.im_max - w.im_min) / self.height as f64,
        )
    }

    /// Center of pixel `(i, j)`, column `i`, row `j`.
    pub fn center(&self, i: usize, j: usize) -> Complex64 {
        let (dx, dy) = self.pixel_size();
        Complex64::new(
            self.window.re_min + (i as f64 + 0.5) * dx,
            self.window.im_max - (j as f64 + 0.5) * dy,
        )
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.values[j * self.width + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.values[j * self.width + i] = v;
    }

    pub fn count(&self, v: u32) -> usize {
        self.values.iter().filter(|&&x| x == v).count()
    }

    /// Fills every pixel with `f(center)`, one rayon task per row.
    pub fn fill(&mut self, f: impl Fn(Complex64) -> u32 + Sync) {
        let width = self.width;
        let (dx, dy) = self.pixel_size();
        let w = self.window;
        self.values
            .par_chunks_mut(width)
            .enumerate()
            .for_each(|(j, row)| {
                let im = w.im_max - (j as f64 + 0.5) * dy;
                for (i, v) in row.iter_mut().enumerate() {
                    *v = f(Complex64::new(w.re_min + (i as f64 + 0.5) * dx, im));
                }
            });
    }

    /// Like [`fill`](Self::fill) for a set invariant under `z ↦ z̄` and
    /// `z ↦ -z̄`: only the upper-left quadrant is evaluated when the window
    /// is centered, the rest is mirrored.
    pub fn fill_d2(&mut self, f: impl Fn(Complex64) -> u32 + Sync) {
        if !self.window.is_symmetric() {
            self.fill(f);
            return;
        }
        let (width, height) = (self.width, self.height);
        let (hw, hh) = (width.div_ceil(2), height.div_ceil(2));
        let quad: Vec<u32> = (0..hh)
            .into_par_iter()
            .flat_map_iter(|j| {
                let row: Vec<u32> = (0..hw).map(|i| f(self.center(i, j))).collect();
                row
            })
            .collect();
        for j in 0..height {
            let qj = j.min(height - 1 - j);
            for i in 0..width {
                let qi = i.min(width - 1 - i);
                self.values[j * width + i] = quad[qj * hw + qi];
            }
        }
    }

    /// Gray levels for PGM output: codes map to 0/255/128, anything else is
    /// treated as an escape count and scaled against the maximum.
    pub fn to_gray(&self) -> Vec<u8> {
        let max = self.values.iter().copied().max().unwrap_or(0);
        if max <= UNCERTAIN {
            return self
                .values
                .iter()
                .map(|&v| match v {
                    MEMBER => 255,
                    UNCERTAIN => 128,
                    _ => 0,
                })
                .collect();
        }
        self.values
            .iter()
            .map(|&v| ((v as f64 / max as f64) * 255.0).round() as u8)
            .collect()
    }
}

/// Evaluates a membership predicate at every pixel center.
pub fn raster_membership(
    pred: impl Fn(Complex64) -> bool + Sync,
    window: Window,
    width: usize,
    height: usize,
) -> Result<RasterGrid> {
    let mut g = RasterGrid::new(window, width, height)?;
    g.fill(|z| if pred(z) { MEMBER } else { OUTSIDE });
    Ok(g)
}
