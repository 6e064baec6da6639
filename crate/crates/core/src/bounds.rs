//! Explicit upper bounds (`Δ`, `N₂`, `Σ*_n`) and the lower-bound region `W`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use num_complex::Complex64;

use crate::raster::{RasterGrid, Window, MEMBER, OUTSIDE};
use crate::roots::{epsilon_n, s_of_t, solve_bracketed, BISECT_TOL};
use crate::signvec::SignVector;
use crate::{Error, Result};

pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 30;
/// Largest `n` for the exhaustive pseudospectral union.
pub const MAX_SIGMA_STAR_N: usize = 16;

/// Open diamond `|x| + |y| < 2`.
pub fn in_delta(z: Complex64) -> bool {
    z.re.abs() + z.im.abs() < 2.0
}

/// Boundary radius of `N₂` in direction `θ`.
pub fn rho_n2(theta: f64) -> f64 {
    // Even with period π/2: reduce to [0, π/4].
    let t = theta.rem_euclid(FRAC_PI_2);
    let t = if t > FRAC_PI_4 { FRAC_PI_2 - t } else { t };
    if t >= FRAC_PI_6 {
        2f64.sqrt()
    } else {
        2.0 / ((2.0 * t).cos() + 3f64.sqrt() * (2.0 * t).sin()).sqrt()
    }
}

pub fn in_n2(z: Complex64) -> bool {
    let r = z.norm();
    r == 0.0 || r <= rho_n2(z.arg()) * (1.0 + 1e-12)
}

/// Dense `A_k^{(n)} - λI` in column-major order: zero diagonal, ones above,
/// `k_1, ..., k_{n-1}` below.
fn shifted_section(sub: &[i8], lambda: Complex64) -> Vec<Vec<Complex64>> {
    let n = sub.len() + 1;
    let mut cols = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (j, col) in cols.iter_mut().enumerate() {
        col[j] = -lambda;
        if j > 0 {
            col[j - 1] = Complex64::new(1.0, 0.0);
        }
        if j + 1 < n {
            col[j + 1] = Complex64::new(sub[j] as f64, 0.0);
        }
    }
    cols
}

/// Singular values of a square matrix given by columns, by one-sided
/// (Hestenes) Jacobi: column pairs are rotated until mutually orthogonal,
/// which diagonalises `M^H M` without forming it.
pub fn singular_values(mut cols: Vec<Vec<Complex64>>) -> Result<Vec<f64>> {
    let n = cols.len();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let g = gamma.norm();
                if g == 0.0 || g <= JACOBI_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rephase column q so that the inner product is real.
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                for (a, b) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let bq = *b * phase;
                    let ap = *a;
                    *a = ap * c - bq * s;
                    *b = ap * s + bq * c;
                }
            }
        }
        if !rotated {
            let mut sv: Vec<f64> = cols
                .iter()
                .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
                .collect();
            sv.sort_by(f64::total_cmp);
            return Ok(sv);
        }
    }
    Err(Error::JacobiNoConvergence(JACOBI_MAX_SWEEPS))
}

/// `s_min(A_k^{(n)} - λI)` for the subdiagonal `sub` of length `n - 1`.
pub fn smallest_singular_value_sub(sub: &[i8], lambda: Complex64) -> Result<f64> {
    if sub.is_empty() {
        return Ok(lambda.norm());
    }
    Ok(singular_values(shifted_section(sub, lambda))?[0])
}

/// `s_min(A_k^{(n)} - λI)`; uses `k_1, ..., k_{n-1}`.
pub fn smallest_singular_value(k: &SignVector, n: usize, lambda: Complex64) -> Result<f64> {
    if n < 1 || k.len() + 1 < n {
        return Err(Error::OutOfRange {
            what: "finite section size",
            got: format!("n = {n}, |k| = {}", k.len()),
            need: "1 <= n <= |k| + 1",
        });
    }
    smallest_singular_value_sub(&k.segment(1, n - 1), lambda)
}

fn check_sigma_star(n: usize) -> Result<()> {
    if n < 1 || n > MAX_SIGMA_STAR_N {
        return Err(Error::OutOfRange {
            what: "Sigma*_n index",
            got: n.to_string(),
            need: "1 <= n <= 16",
        });
    }
    Ok(())
}

/// Precomputed data for repeated `Σ*_n` membership tests.
pub struct SigmaStar {
    pub n: usize,
    pub epsilon: f64,
    patterns: Vec<Vec<i8>>,
}

impl SigmaStar {
    pub fn new(n: usize) -> Result<Self> {
        check_sigma_star(n)?;
        let patterns = if n == 1 {
            vec![Vec::new()]
        } else {
            SignVector::all(n - 1)?.map(|k| k.entries()).collect()
        };
        Ok(Self {
            n,
            epsilon: epsilon_n(n)?,
            patterns,
        })
    }

    /// `min_k s_min(A_k^{(n)} - λI) < ε_n`, stopping at the first witness.
    pub fn contains(&self, lambda: Complex64) -> bool {
        // s_min(A - λI) >= |λ| - ||A|| and ||A|| <= 2.
        if lambda.norm() - 2.0 >= self.epsilon {
            return false;
        }
        self.patterns.iter().any(|sub| {
            smallest_singular_value_sub(sub, lambda)
                .map(|s| s < self.epsilon)
                .unwrap_or(false)
        })
    }
}

pub fn in_sigma_star(n: usize, lambda: Complex64) -> Result<bool> {
    Ok(SigmaStar::new(n)?.contains(lambda))
}

/// Raster of `Σ*_n`; centred windows are evaluated on one quadrant and
/// mirrored.
pub fn sigma_star_raster(
    n: usize,
    window: Window,
    width: usize,
    height: usize,
) -> Result<RasterGrid> {
    let s = SigmaStar::new(n)?;
    let mut g = RasterGrid::new(window, width, height)?;
    g.fill_d2(|z| if s.contains(z) { MEMBER } else { OUTSIDE });
    Ok(g)
}

/// `g(ε) = ε (1 + ε)^2 (√3 + ε)(2 + ε)`.
pub fn g_eta(e: f64) -> f64 {
    e * (1.0 + e).powi(2) * (3f64.sqrt() + e) * (2.0 + e)
}

/// Unique positive solution of `g(ε) = 1`.
pub fn eta() -> f64 {
    solve_bracketed(|e| g_eta(e) - 1.0, 0.0, 1.0, BISECT_TOL).expect("g - 1 changes sign on [0, 1]")
}

/// `S(θ) = √s(cos 2θ)`.
pub fn s_cap(theta: f64) -> f64 {
    s_of_t((2.0 * theta).cos().clamp(-1.0, 1.0))
        .expect("argument clamped to [-1, 1]")
        .sqrt()
}

fn in_w_sector(z: Complex64, eta: f64) -> bool {
    let r = z.norm();
    if r == 0.0 {
        return true;
    }
    let th = z.arg();
    if th.abs() <= FRAC_PI_6 && r < s_cap(th) {
        return true;
    }
    if (FRAC_PI_6..=FRAC_PI_3).contains(&th) && r < s_cap(2.0 * th - FRAC_PI_2).sqrt() {
        return true;
    }
    let c = Complex64::from_polar(1.0, FRAC_PI_6);
    (z - c).norm() < eta || (z - c.conj()).norm() < eta
}

/// Predicate for `W`, caching `η`.
pub struct RegionW {
    eta: f64,
}

impl Default for RegionW {
    fn default() -> Self {
        Self { eta: eta() }
    }
}

impl RegionW {
    pub fn contains(&self, z: Complex64) -> bool {
        let mut w = z;
        for _ in 0..4 {
            if in_w_sector(w, self.eta) {
                return true;
            }
            // Undo one rotation by i.
            w = Complex64::new(w.im, -w.re);
        }
        false
    }
}

pub fn in_w(z: Complex64) -> bool {
    RegionW::default().contains(z)
}
