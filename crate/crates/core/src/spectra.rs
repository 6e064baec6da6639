//! Periodic spectra, finite-section eigenvalues and the inclusions between
//! them.
//!
//! The periodic operator with period `k` has spectrum `p_k^{-1}([-2, 2])`
//! for even `k` and `p_k^{-1}(i[-2, 2])` for odd `k`; both are sampled by
//! solving `p_k(λ) = t` on a grid of `t`. The Bloch parametrisation sweeps
//! the same curves through `p_k(λ) = e^{iφ} ∏k + e^{-iφ}`.

use std::collections::{BTreeMap, HashSet};
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::charpoly::{p_poly_any, IntPoly};
use crate::roots::{all_roots, solve_shifted};
use crate::signvec::{enumerate_k, Parity, SignVector};
use crate::{Error, Result};

/// Default number of `t` samples per periodic spectrum.
pub const DEFAULT_NUM_T: usize = 257;
/// Grid pitch used to deduplicate union clouds.
pub const DEDUP_PITCH: f64 = 1e-9;
/// Largest period accepted by the exhaustive unions.
pub const MAX_PERIOD: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct CloudPoint {
    pub z: Complex64,
    /// Compact sign pattern (`+-+`) of the producing vector.
    pub source: String,
    /// The `t`, `φ` or matrix size that produced the point.
    pub param: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpectralCloud {
    pub label: String,
    pub points: Vec<CloudPoint>,
}

impl SpectralCloud {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            points: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn zs(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.z).collect()
    }

    pub fn extend(&mut self, other: SpectralCloud) {
        self.points.extend(other.points);
    }

    /// Drops points that share a grid cell of pitch `pitch` with an earlier
    /// point, keeping the first witness.
    pub fn dedup(&mut self, pitch: f64) {
        let mut seen = HashSet::new();
        self.points.retain(|p| {
            let key = (
                (p.z.re / pitch).round() as i64,
                (p.z.im / pitch).round() as i64,
            );
            seen.insert(key)
        });
    }
}

/// Chebyshev–Lobatto nodes `2 cos(πj/(N-1))` on `[-2, 2]`, ascending, built
/// so that the grid is exactly symmetric about 0.
pub fn chebyshev_t_grid(num: usize) -> Result<Vec<f64>> {
    if num < 2 {
        return Err(Error::OutOfRange {
            what: "number of t samples",
            got: num.to_string(),
            need: ">= 2",
        });
    }
    let last = (num - 1) as f64;
    let mut t = vec![0.0; num];
    for j in 0..num.div_ceil(2) {
        let v = 2.0 * (PI * j as f64 / last).cos();
        t[num - 1 - j] = v;
        t[j] = -v;
    }
    if num % 2 == 1 {
        t[num / 2] = 0.0;
    }
    Ok(t)
}

fn segment_target(parity: Parity, t: f64) -> Complex64 {
    match parity {
        Parity::Even => Complex64::new(t, 0.0),
        Parity::Odd => Complex64::new(0.0, t),
    }
}

fn preimage_cloud(
    p: &IntPoly,
    parity: Parity,
    source: &str,
    ts: &[f64],
    label: &str,
) -> Result<SpectralCloud> {
    let per_t: Vec<Vec<CloudPoint>> = ts
        .par_iter()
        .map(|&t| {
            let r = solve_shifted(p, segment_target(parity, t))?;
            Ok(r.roots
                .into_iter()
                .map(|z| CloudPoint {
                    z,
                    source: source.to_string(),
                    param: t,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(SpectralCloud {
        label: label.to_string(),
        points: per_t.into_iter().flatten().collect(),
    })
}

/// Samples of `spec A_k^per` on a caller-supplied `t` grid.
pub fn periodic_spectrum_on(k: &SignVector, ts: &[f64]) -> Result<SpectralCloud> {
    let p = p_poly_any(k);
    preimage_cloud(&p, k.parity(), &k.to_compact(), ts, "periodic")
}

/// Samples of `spec A_k^per` as preimages of `num_t` Chebyshev-distributed
/// points of the segment.
pub fn periodic_spectrum_roots(k: &SignVector, num_t: usize) -> Result<SpectralCloud> {
    periodic_spectrum_on(k, &chebyshev_t_grid(num_t)?)
}

/// Size of the `t` grid whose points are exactly the symbol values
/// `e^{iφ}∏k + e^{-iφ}` at `num_phi` equispaced `φ`: `2cos φ` or `-2i sin φ`
/// both run over the Lobatto grid with `num_phi/2 + 1` nodes.
pub fn matched_num_t(num_phi: usize) -> Result<usize> {
    if num_phi < 4 || num_phi % 4 != 0 {
        return Err(Error::OutOfRange {
            what: "number of φ samples for a matched t grid",
            got: num_phi.to_string(),
            need: "a positive multiple of 4",
        });
    }
    Ok(num_phi / 2 + 1)
}

/// Eigenvalues of the Bloch matrices `a_k(φ)` for `num_phi` equispaced `φ`.
pub fn periodic_spectrum_bloch(k: &SignVector, num_phi: usize) -> Result<SpectralCloud> {
    if k.len() < 2 || num_phi < 1 {
        return Err(Error::OutOfRange {
            what: "Bloch sampling (period, num_phi)",
            got: format!("({}, {num_phi})", k.len()),
            need: "period >= 2, num_phi >= 1",
        });
    }
    let p = p_poly_any(k);
    let prod = k.product() as f64;
    let source = k.to_compact();
    let per_phi: Vec<Vec<CloudPoint>> = (0..num_phi)
        .into_par_iter()
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / num_phi as f64;
            let w = Complex64::from_polar(prod, phi) + Complex64::from_polar(1.0, -phi);
            let r = solve_shifted(&p, w)?;
            Ok(r.roots
                .into_iter()
                .map(|z| CloudPoint {
                    z,
                    source: source.clone(),
                    param: phi,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(SpectralCloud {
        label: "bloch".into(),
        points: per_phi.into_iter().flatten().collect(),
    })
}

/// Characteristic polynomial `det(λI - A)` of the `n × n` finite section
/// with subdiagonal `sub` (length `n - 1`), by `d_j = λ d_{j-1} - k_{j-1} d_{j-2}`.
pub fn finite_charpoly(sub: &[i8]) -> IntPoly {
    let lambda = IntPoly::x();
    let mut prev = IntPoly::constant(1);
    let mut cur = lambda.clone();
    for &k in sub {
        let next = lambda
            .mul(&cur)
            .and_then(|a| a.sub(&prev.scale(k as i128)?))
            .expect("finite section coefficients fit in i128");
        prev = cur;
        cur = next;
    }
    cur
}

fn check_size(n: usize) -> Result<()> {
    if n < 1 || n > MAX_PERIOD {
        return Err(Error::OutOfRange {
            what: "matrix size / period",
            got: n.to_string(),
            need: "1 <= n <= 24",
        });
    }
    Ok(())
}

/// Eigenvalues of `A_k^{(n)}`. Only `k_1, ..., k_{n-1}` enter, so `k` needs
/// at least `n - 1` entries.
pub fn finite_spectrum(k: &SignVector, n: usize) -> Result<SpectralCloud> {
    check_size(n)?;
    if k.len() + 1 < n {
        return Err(Error::OutOfRange {
            what: "sign vector length for finite section",
            got: k.len().to_string(),
            need: ">= n - 1",
        });
    }
    let sub = k.segment(1, n - 1);
    finite_spectrum_entries(&sub)
}

fn finite_spectrum_entries(sub: &[i8]) -> Result<SpectralCloud> {
    let n = sub.len() + 1;
    let source: String = sub.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect();
    let roots = if n == 1 {
        vec![Complex64::new(0.0, 0.0)]
    } else {
        all_roots(&finite_charpoly(sub))?.roots
    };
    Ok(SpectralCloud {
        label: format!("sigma_{n}"),
        points: roots
            .into_iter()
            .map(|z| CloudPoint {
                z,
                source: source.clone(),
                param: n as f64,
            })
            .collect(),
    })
}

/// Union of the spectra of all `2^{n-1}` finite sections of size `n`.
pub fn sigma_n(n: usize) -> Result<SpectralCloud> {
    check_size(n)?;
    let mut out = SpectralCloud::new(format!("sigma_{n}"));
    if n == 1 {
        out.extend(finite_spectrum_entries(&[])?);
        return Ok(out);
    }
    let clouds: Vec<SpectralCloud> = SignVector::all(n - 1)?
        .collect::<Vec<_>>()
        .par_iter()
        .map(|k| finite_spectrum_entries(&k.entries()))
        .collect::<Result<_>>()?;
    for c in clouds {
        out.extend(c);
    }
    out.dedup(DEDUP_PITCH);
    Ok(out)
}

/// Distinct `(p_k, parity)` pairs over `ks`, each with its first witness.
fn distinct_symbols(ks: impl Iterator<Item = SignVector>) -> Vec<(IntPoly, Parity, SignVector)> {
    let mut seen: BTreeMap<(IntPoly, bool), SignVector> = BTreeMap::new();
    for k in ks {
        let key = (p_poly_any(&k), k.parity() == Parity::Even);
        seen.entry(key).or_insert(k);
    }
    let mut out: Vec<_> = seen
        .into_iter()
        .map(|((p, even), k)| (p, if even { Parity::Even } else { Parity::Odd }, k))
        .collect();
    out.sort_by_key(|e| e.2);
    out
}

fn union_over(
    ks: impl Iterator<Item = SignVector>,
    ts: &[f64],
    label: String,
) -> Result<SpectralCloud> {
    let mut out = SpectralCloud::new(label);
    for (p, parity, k) in distinct_symbols(ks) {
        out.extend(preimage_cloud(&p, parity, &k.to_compact(), ts, "")?);
    }
    out.dedup(DEDUP_PITCH);
    Ok(out)
}

/// `π_n`: union of periodic spectra over all `k ∈ {±1}^n`.
pub fn pi_n(n: usize, num_t: usize) -> Result<SpectralCloud> {
    check_size(n)?;
    let ts = chebyshev_t_grid(num_t)?;
    union_over(SignVector::all(n)?, &ts, format!("pi_{n}"))
}

/// `Π_n = π_1 ∪ ... ∪ π_n`.
pub fn pi_cumulative(n: usize, num_t: usize) -> Result<SpectralCloud> {
    check_size(n)?;
    let mut out = SpectralCloud::new(format!("Pi_{n}"));
    for m in 1..=n {
        out.extend(pi_n(m, num_t)?);
    }
    out.dedup(DEDUP_PITCH);
    Ok(out)
}

/// `π_n^S`: union of periodic spectra over `k ∈ K` of length `n`.
pub fn pi_n_s(n: usize, num_t: usize) -> Result<SpectralCloud> {
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "pi_n^S period",
            got: n.to_string(),
            need: "n >= 2",
        });
    }
    check_size(n)?;
    let ts = chebyshev_t_grid(num_t)?;
    union_over(enumerate_k(n)?.into_iter(), &ts, format!("pi_{n}^S"))
}

/// `ℓ = (k̃', a, b, k̃, c, d)` with `k̃ = (k_1, ..., k_{n-1})` and `k̃'` its
/// reversal; length `2n + 2`. For `n = 1` this is just `(a, b, c, d)`.
pub fn embed_period(k: &SignVector, a: i8, b: i8, c: i8, d: i8) -> Result<SignVector> {
    let n = k.len();
    let head = k.segment(1, n - 1);
    let mut e: Vec<i8> = head.iter().rev().copied().collect();
    e.extend([a, b]);
    e.extend(&head);
    e.extend([c, d]);
    SignVector::new(&e)
}

/// Distance from `z` to `spec A_k^per`, computed by re-solving at the
/// projection of `p_k(z)` onto the segment. This adds the one sample of the
/// spectrum that matters for `z`, so points on the curve get distance at
/// rounding level instead of the grid spacing.
pub fn distance_to_periodic_spectrum(z: Complex64, k: &SignVector) -> Result<f64> {
    let p = p_poly_any(k);
    let w = p.evaluate(z);
    let t = match k.parity() {
        Parity::Even => w.re,
        Parity::Odd => w.im,
    }
    .clamp(-2.0, 2.0);
    let r = solve_shifted(&p, segment_target(k.parity(), t))?;
    Ok(r.roots
        .iter()
        .map(|&x| (x - z).norm())
        .fold(f64::INFINITY, f64::min))
}

/// Distance from `z` to `π_n^S`.
pub fn distance_to_pi_s(z: Complex64, n: usize) -> Result<f64> {
    let mut best = f64::INFINITY;
    for (_, _, k) in distinct_symbols(enumerate_k(n)?.into_iter()) {
        best = best.min(distance_to_periodic_spectrum(z, &k)?);
    }
    Ok(best)
}

/// Uniform bucket grid for nearest-neighbour queries.
pub struct PointIndex {
    pts: Vec<Complex64>,
    x0: f64,
    y0: f64,
    cell: f64,
    nx: usize,
    ny: usize,
    start: Vec<usize>,
    order: Vec<usize>,
}

impl PointIndex {
    pub fn new(pts: &[Complex64]) -> Result<Self> {
        if pts.is_empty() {
            return Err(Error::EmptyCloud);
        }
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for z in pts {
            x0 = x0.min(z.re);
            x1 = x1.max(z.re);
            y0 = y0.min(z.im);
            y1 = y1.max(z.im);
        }
        let extent = (x1 - x0).max(y1 - y0).max(1e-12);
        let side = ((pts.len() as f64).sqrt().ceil() as usize).clamp(1, 2048);
        let cell = extent / side as f64;
        let nx = (((x1 - x0) / cell).floor() as usize + 1).min(side + 1);
        let ny = (((y1 - y0) / cell).floor() as usize + 1).min(side + 1);
        let mut idx = PointIndex {
            pts: pts.to_vec(),
            x0,
            y0,
            cell,
            nx,
            ny,
            start: vec![0; nx * ny + 1],
            order: vec![0; pts.len()],
        };
        let cells: Vec<usize> = pts.iter().map(|&z| idx.cell_of(z)).collect();
        for &c in &cells {
            idx.start[c + 1] += 1;
        }
        for c in 0..nx * ny {
            idx.start[c + 1] += idx.start[c];
        }
        let mut fill = idx.start.clone();
        for (i, &c) in cells.iter().enumerate() {
            idx.order[fill[c]] = i;
            fill[c] += 1;
        }
        Ok(idx)
    }

    fn coords(&self, z: Complex64) -> (i64, i64) {
        (
            ((z.re - self.x0) / self.cell).floor() as i64,
            ((z.im - self.y0) / self.cell).floor() as i64,
        )
    }

    fn cell_of(&self, z: Complex64) -> usize {
        let (cx, cy) = self.coords(z);
        let cx = cx.clamp(0, self.nx as i64 - 1) as usize;
        let cy = cy.clamp(0, self.ny as i64 - 1) as usize;
        cy * self.nx + cx
    }

    pub fn nearest_distance(&self, z: Complex64) -> f64 {
        let (cx, cy) = self.coords(z);
        let cx = cx.clamp(0, self.nx as i64 - 1);
        let cy = cy.clamp(0, self.ny as i64 - 1);
        let mut best = f64::INFINITY;
        let max_r = self.nx.max(self.ny) as i64;
        for r in 0..=max_r {
            for y in (cy - r)..=(cy + r) {
                if y < 0 || y >= self.ny as i64 {
                    continue;
                }
                let on_edge = y == cy - r || y == cy + r;
                let xs: Vec<i64> = if on_edge {
                    ((cx - r)..=(cx + r)).collect()
                } else {
                    vec![cx - r, cx + r]
                };
                for x in xs {
                    if x < 0 || x >= self.nx as i64 {
                        continue;
                    }
                    let c = y as usize * self.nx + x as usize;
                    for &i in &self.order[self.start[c]..self.start[c + 1]] {
                        best = best.min((self.pts[i] - z).norm());
                    }
                }
            }
            // Anything outside the examined block is at least this far away.
            let left = self.x0 + (cx - r) as f64 * self.cell;
            let right = self.x0 + (cx + r + 1) as f64 * self.cell;
            let bottom = self.y0 + (cy - r) as f64 * self.cell;
            let top = self.y0 + (cy + r + 1) as f64 * self.cell;
            let margin = (z.re - left)
                .min(right - z.re)
                .min(z.im - bottom)
                .min(top - z.im);
            if best <= margin {
                break;
            }
        }
        best
    }
}

/// `max_{a} min_{b} |a - b|`.
pub fn hausdorff_points(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let idx = PointIndex::new(b)?;
    Ok(a.par_iter()
        .map(|&z| idx.nearest_distance(z))
        .reduce(|| 0.0, f64::max))
}

pub fn one_sided_hausdorff(a: &SpectralCloud, b: &SpectralCloud) -> Result<f64> {
    hausdorff_points(&a.zs(), &b.zs())
}

/// Largest displacement needed to match the cloud with its images under
/// `λ ↦ iλ` and `λ ↦ λ̄`.
pub fn d2_symmetry_defect(cloud: &SpectralCloud) -> Result<f64> {
    let zs = cloud.zs();
    let rot: Vec<Complex64> = zs.iter().map(|z| z * Complex64::i()).collect();
    let conj: Vec<Complex64> = zs.iter().map(|z| z.conj()).collect();
    Ok(hausdorff_points(&rot, &zs)?.max(hausdorff_points(&conj, &zs)?))
}
