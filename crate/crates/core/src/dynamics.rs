//! Iteration of the symmetry polynomials: critical orbits, filled Julia
//! sets, inverse-iteration clouds and attracting fixed points.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::charpoly::{p_poly, symmetry_set, IntPoly};
use crate::raster::{RasterGrid, Window, MEMBER, OUTSIDE, UNCERTAIN};
use crate::roots::{all_roots, real_roots_in, solve_shifted, RootSet};
use crate::signvec::SignVector;
use crate::spectra::{CloudPoint, SpectralCloud};
use crate::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 10_000;
/// Points produced per level of [`inverse_cloud`] are thinned to this many.
pub const DEFAULT_LEVEL_CAP: usize = 1_000_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// The degree-18 sign pattern whose `p_k` has an attracting fixed point
/// outside the closed unit disk.
pub const COUNTEREXAMPLE_K: [i8; 18] =
    [1, -1, 1, 1, 1, -1, 1, -1, -1, 1, -1, 1, 1, 1, -1, 1, -1, 1];

fn check_degree(p: &IntPoly) -> Result<()> {
    if p.degree() < 2 {
        return Err(Error::OutOfRange {
            what: "polynomial degree for dynamics",
            got: p.degree().to_string(),
            need: ">= 2",
        });
    }
    Ok(())
}

/// Zeros of `p'`.
pub fn critical_points(p: &IntPoly) -> Result<RootSet> {
    check_degree(p)?;
    all_roots(&p.derivative())
}

/// Shape of the trap `T = rD̄ ∪ (-2, 2) ∪ i(-2, 2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrapParams {
    pub disk_radius: f64,
    /// Half-width of the strips around the two segments.
    pub strip_tol: f64,
    /// Consecutive iterates in `T` needed for a trapped verdict.
    pub consecutive: usize,
}

impl Default for TrapParams {
    fn default() -> Self {
        Self {
            disk_radius: 1.1,
            strip_tol: 1e-9,
            consecutive: 50,
        }
    }
}

impl TrapParams {
    pub fn contains(&self, z: Complex64) -> bool {
        z.norm() <= self.disk_radius
            || (z.im.abs() <= self.strip_tol && z.re.abs() < 2.0)
            || (z.re.abs() <= self.strip_tol && z.im.abs() < 2.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitStatus {
    Escaped,
    TrappedInT,
    Undecided,
}

impl fmt::Display for OrbitStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitStatus::Escaped => "escaped",
            OrbitStatus::TrappedInT => "trapped",
            OrbitStatus::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitVerdict {
    pub status: OrbitStatus,
    pub steps: usize,
    pub witness: Complex64,
}

/// Iterates `z ↦ p(z)` from `z0`. With `in_s` the escape test is `|z| >= 2`,
/// otherwise `|z| > 2`.
pub fn iterate_orbit(
    p: &IntPoly,
    z0: Complex64,
    max_iter: usize,
    trap: &TrapParams,
    in_s: bool,
) -> OrbitVerdict {
    let c = p.to_complex();
    let escaped = |z: Complex64| {
        let r = z.norm();
        !r.is_finite() || r > 2.0 || (in_s && r >= 2.0)
    };
    let mut z = z0;
    let mut run = 0;
    for step in 0..=max_iter {
        if escaped(z) {
            return OrbitVerdict {
                status: OrbitStatus::Escaped,
                steps: step,
                witness: z,
            };
        }
        if trap.contains(z) {
            run += 1;
            if run >= trap.consecutive {
                return OrbitVerdict {
                    status: OrbitStatus::TrappedInT,
                    steps: step,
                    witness: z,
                };
            }
        } else {
            run = 0;
        }
        if step < max_iter {
            z = c
                .iter()
                .rev()
                .fold(Complex64::zero(), |acc, &a| acc * z + a);
        }
    }
    OrbitVerdict {
        status: OrbitStatus::Undecided,
        steps: max_iter,
        witness: z,
    }
}

/// Critical points closer than this to an axis are placed on it, so that
/// orbits which are exactly real (or imaginary) stay that way.
pub const AXIS_SNAP: f64 = 1e-10;

fn snap(z: Complex64) -> Complex64 {
    let re = if z.re.abs() <= AXIS_SNAP { 0.0 } else { z.re };
    let im = if z.im.abs() <= AXIS_SNAP { 0.0 } else { z.im };
    Complex64::new(re, im)
}

/// Verdict for every distinct critical point of `p ∈ S`.
pub fn classify_all_critical_orbits(
    p: &IntPoly,
    max_iter: usize,
    trap: &TrapParams,
) -> Result<Vec<(Complex64, OrbitVerdict)>> {
    let crit = critical_points(p)?;
    Ok(crit
        .distinct(1e-9)
        .into_iter()
        .map(|(z, _)| {
            let z = snap(z);
            (z, iterate_orbit(p, z, max_iter, trap, true))
        })
        .collect())
}

/// No critical orbit left undecided.
pub fn all_decided(verdicts: &[(Complex64, OrbitVerdict)]) -> bool {
    verdicts
        .iter()
        .all(|(_, v)| v.status != OrbitStatus::Undecided)
}

/// Escape radius: 2 for members of `S`, otherwise `max(2, 1 + max|c_j|)`.
pub fn escape_radius(p: &IntPoly, in_s: bool) -> f64 {
    if in_s {
        2.0
    } else {
        2f64.max(1.0 + p.max_abs_coeff())
    }
}

struct EscapeInfo {
    /// Iteration count at escape, `None` if the orbit stayed bounded.
    steps: Option<u32>,
    /// Distance estimate to `K(p)` for escaping points.
    dist: f64,
}

fn escape(
    c: &[Complex64],
    dc: &[Complex64],
    z0: Complex64,
    max_iter: usize,
    radius: f64,
    in_s: bool,
) -> EscapeInfo {
    let horner = |cs: &[Complex64], z: Complex64| {
        cs.iter()
            .rev()
            .fold(Complex64::zero(), |acc, &a| acc * z + a)
    };
    let mut z = z0;
    let mut dz = Complex64::new(1.0, 0.0);
    for step in 0..max_iter {
        let r = z.norm();
        if !r.is_finite() || r > radius || (in_s && r >= radius) {
            // Keep going to a large modulus so the potential-based estimate
            // |z| ln|z| / |z'| is accurate.
            let mut extra = 0;
            while z.norm() < 1e6 && extra < 64 {
                dz *= horner(dc, z);
                z = horner(c, z);
                extra += 1;
            }
            let r = z.norm();
            let dist = if r.is_finite() && dz.norm() > 0.0 && dz.norm().is_finite() {
                r * r.ln() / dz.norm()
            } else {
                0.0
            };
            return EscapeInfo {
                steps: Some(step as u32),
                dist,
            };
        }
        dz *= horner(dc, z);
        z = horner(c, z);
    }
    EscapeInfo {
        steps: None,
        dist: 0.0,
    }
}

/// Escape counts; bounded orbits get `max_iter`.
pub fn filled_julia_raster(
    p: &IntPoly,
    window: Window,
    width: usize,
    height: usize,
    max_iter: usize,
    in_s: bool,
) -> Result<RasterGrid> {
    check_degree(p)?;
    let c = p.to_complex();
    let dc = p.derivative().to_complex();
    let radius = escape_radius(p, in_s);
    let mut g = RasterGrid::new(window, width, height)?;
    g.fill(|z| {
        escape(&c, &dc, z, max_iter, radius, in_s)
            .steps
            .unwrap_or(max_iter as u32)
    });
    Ok(g)
}

/// Membership codes for `K(p)`: bounded orbits are members, escaping pixels
/// whose distance estimate is below the pixel diagonal are boundary-uncertain.
pub fn julia_membership_raster(
    p: &IntPoly,
    window: Window,
    width: usize,
    height: usize,
    max_iter: usize,
    in_s: bool,
) -> Result<RasterGrid> {
    check_degree(p)?;
    let c = p.to_complex();
    let dc = p.derivative().to_complex();
    let radius = escape_radius(p, in_s);
    let mut g = RasterGrid::new(window, width, height)?;
    let (dx, dy) = g.pixel_size();
    let diag = dx.hypot(dy);
    g.fill(|z| {
        let e = escape(&c, &dc, z, max_iter, radius, in_s);
        match e.steps {
            None => MEMBER,
            Some(_) if e.dist < diag => UNCERTAIN,
            Some(_) => OUTSIDE,
        }
    });
    Ok(g)
}

fn thin_key(z: Complex64, seed: u64) -> f64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    seed.hash(&mut h);
    z.re.to_bits().hash(&mut h);
    z.im.to_bits().hash(&mut h);
    h.finish() as f64 / u64::MAX as f64
}

/// Backward orbit of `seeds`: level `j + 1` holds all solutions of
/// `p(λ) = w` for `w` in level `j`, thinned by a hash of the point to about
/// `level_cap` points. `param` records the level.
pub fn inverse_cloud_from(
    p: &IntPoly,
    seeds: &[Complex64],
    depth: usize,
    level_cap: usize,
    seed: u64,
) -> Result<SpectralCloud> {
    check_degree(p)?;
    if depth < 1 {
        return Err(Error::OutOfRange {
            what: "inverse iteration depth",
            got: depth.to_string(),
            need: ">= 1",
        });
    }
    let mut out = SpectralCloud::new("inverse");
    let mut level: Vec<Complex64> = seeds.to_vec();
    for d in 1..=depth {
        let children: Vec<Vec<Complex64>> = level
            .par_iter()
            .map(|&w| Ok(solve_shifted(p, w)?.roots))
            .collect::<Result<_>>()?;
        let mut next: Vec<Complex64> = children.into_iter().flatten().collect();
        if next.len() > level_cap {
            let frac = level_cap as f64 / next.len() as f64;
            next.retain(|&z| thin_key(z, seed) < frac);
        }
        out.points.extend(next.iter().map(|&z| CloudPoint {
            z,
            source: "inverse".into(),
            param: d as f64,
        }));
        level = next;
    }
    Ok(out)
}

/// [`inverse_cloud_from`] seeded with `seeds_per_level` uniform points of
/// the unit disk, thinned to the same count per level.
pub fn inverse_cloud(
    p: &IntPoly,
    depth: usize,
    seeds_per_level: usize,
    seed: u64,
) -> Result<SpectralCloud> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<Complex64> = (0..seeds_per_level)
        .map(|_| {
            let r: f64 = rng.gen::<f64>().sqrt();
            let th: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(r, th)
        })
        .collect();
    inverse_cloud_from(p, &seeds, depth, seeds_per_level.max(1), seed)
}

/// Solutions of `p(z) = z` with their multipliers `p'(z)`.
pub fn fixed_points(p: &IntPoly) -> Result<Vec<(Complex64, Complex64)>> {
    check_degree(p)?;
    let shifted = p.sub(&IntPoly::x())?;
    let dp = p.derivative();
    Ok(all_roots(&shifted)?
        .distinct(1e-9)
        .into_iter()
        .map(|(z, _)| (z, dp.evaluate(z)))
        .collect())
}

/// Fixed points with `|p'(z)| < 1`.
pub fn find_attracting_fixed_points(p: &IntPoly) -> Result<Vec<(Complex64, Complex64)>> {
    Ok(fixed_points(p)?
        .into_iter()
        .filter(|(_, m)| m.norm() < 1.0)
        .collect())
}

#[derive(Clone, Debug)]
pub struct AttractorHit {
    pub k: SignVector,
    pub poly: IntPoly,
    pub point: Complex64,
    pub multiplier: Complex64,
}

/// Members of `S` up to `max_degree` with an attracting fixed point outside
/// the closed unit disk.
pub fn attracting_fixed_point_sweep(max_degree: usize) -> Result<Vec<AttractorHit>> {
    let set = symmetry_set(max_degree)?;
    let hits: Vec<Vec<AttractorHit>> = set
        .par_iter()
        .map(|s| {
            Ok(find_attracting_fixed_points(&s.poly)?
                .into_iter()
                .filter(|(z, _)| z.norm() > 1.0 + 1e-9)
                .map(|(point, multiplier)| AttractorHit {
                    k: s.witnesses[0],
                    poly: s.poly.clone(),
                    point,
                    multiplier,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub clauses: Vec<Clause>,
    pub fixed_point: f64,
    pub multiplier: f64,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(
                f,
                "{} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn rat_str(x: &BigRational) -> String {
    // Enough digits for a report; the comparisons themselves are exact.
    let scaled = (x * BigRational::from_integer(BigInt::from(10).pow(8))).round();
    let v: f64 = scaled
        .to_integer()
        .to_string()
        .parse::<f64>()
        .unwrap_or(f64::NAN)
        / 1e8;
    format!("{v:.8}")
}

/// Exact-arithmetic certificate that the degree-18 `p_k` has an attracting
/// fixed point in `(1.215, 1.216)`.
pub fn verify_counterexample() -> CounterexampleReport {
    let mut clauses = Vec::new();
    let k = SignVector::new(&COUNTEREXAMPLE_K).expect("valid sign vector");
    clauses.push(Clause {
        name: "k in K",
        passed: k.is_in_k(),
        detail: k.to_string(),
    });

    let expected = IntPoly::new(vec![
        0, 0, 1, 0, -4, 0, 6, 0, -8, 0, 7, 0, -4, 0, 5, 0, -4, 0, 1,
    ]);
    let p = p_poly(&k).expect("length 18");
    clauses.push(Clause {
        name: "coefficients",
        passed: p == expected,
        detail: p.to_string(),
    });

    let dp = p.derivative();
    let dp_expected = IntPoly::new(vec![
        0, 2, 0, -16, 0, 36, 0, -64, 0, 70, 0, -48, 0, 70, 0, -64, 0, 18,
    ]);
    clauses.push(Clause {
        name: "first derivative",
        passed: dp == dp_expected,
        detail: dp.to_string(),
    });

    let p_plus = IntPoly::new(vec![
        2, 0, 0, 0, 180, 0, 0, 0, 630, 0, 0, 0, 910, 0, 0, 0, 306,
    ]);
    let p_minus = IntPoly::new(vec![0, 0, 48, 0, 0, 0, 448, 0, 0, 0, 528, 0, 0, 0, 960]);
    let ddp = dp.derivative();
    let split_ok = p_plus.sub(&p_minus).map(|d| d == ddp).unwrap_or(false);
    clauses.push(Clause {
        name: "second derivative split",
        passed: split_ok,
        detail: format!("p'' = ({p_plus}) - ({p_minus})"),
    });

    let (lo, hi, mid) = (rat(1215, 1000), rat(1216, 1000), rat(12155, 10000));
    let f_lo = p.eval_rational(&lo) - &lo;
    let f_hi = p.eval_rational(&hi) - &hi;
    let sign_change = f_lo.signum() * f_hi.signum() < BigRational::zero();
    clauses.push(Clause {
        name: "sign change of p(λ) - λ on [1.215, 1.216]",
        passed: sign_change,
        detail: format!("{} .. {}", rat_str(&f_lo), rat_str(&f_hi)),
    });

    let d_mid = dp.eval_rational(&mid).abs();
    clauses.push(Clause {
        name: "|p'(1.2155)| <= 0.71",
        passed: d_mid <= rat(71, 100),
        detail: rat_str(&d_mid),
    });

    // p_± have nonnegative coefficients, so both increase on the interval
    // and these cross-evaluations bound |p''| there.
    let m1 = (p_minus.eval_rational(&hi) - p_plus.eval_rational(&lo)).abs();
    let m2 = (p_minus.eval_rational(&lo) - p_plus.eval_rational(&hi)).abs();
    let bound = if m1 > m2 { m1 } else { m2 };
    clauses.push(Clause {
        name: "|p''| < 400 on [1.215, 1.216]",
        passed: bound < rat(400, 1),
        detail: rat_str(&bound),
    });

    let total = &d_mid + rat(5, 10000) * rat(400, 1);
    clauses.push(Clause {
        name: "|p'(λ*)| <= 0.91",
        passed: total <= rat(91, 100) && bound < rat(400, 1),
        detail: format!("{} + 0.0005 * 400", rat_str(&d_mid)),
    });

    let shifted = p.sub(&IntPoly::x()).expect("small coefficients");
    let roots = real_roots_in(&shifted, 1.215, 1.216).unwrap_or_default();
    let fixed_point = roots.first().copied().unwrap_or(f64::NAN);
    let multiplier = dp.eval_f64(fixed_point);
    clauses.push(Clause {
        name: "numeric fixed point",
        passed: roots.len() == 1 && (fixed_point - 1.21544069).abs() < 1e-6,
        detail: format!("{fixed_point:.10}"),
    });
    clauses.push(Clause {
        name: "numeric multiplier",
        passed: (multiplier + 0.69).abs() < 1e-2,
        detail: format!("{multiplier:.6}"),
    });

    CounterexampleReport {
        clauses,
        fixed_point,
        multiplier,
    }
}
