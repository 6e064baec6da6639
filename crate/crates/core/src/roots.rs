//! Complex polynomial roots and bracketed real solves.
//!
//! [`all_roots`] runs Aberth–Ehrlich simultaneous iteration, then Newton
//! polishing and a cluster pass that merges approximations of a multiple
//! root and re-solves it on the matching derivative. Exact zero roots of
//! integer polynomials are divided out before any floating point work.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::charpoly::IntPoly;
use crate::{Error, Result};

pub const ABERTH_MAX_ITERS: usize = 2000;
pub const POLISH_MAX_ITERS: usize = 50;
/// Approximations closer than this are always treated as one multiple root.
pub const CLUSTER_TOL: f64 = 1e-7;
pub const BISECT_TOL: f64 = 1e-13;
/// Sign-scan resolution used by [`real_roots_in`].
pub const REAL_SCAN_SAMPLES: usize = 4096;

/// Roots with multiplicity, each with its residual `|p(root)|`.
#[derive(Clone, Debug, Default)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Distinct roots with multiplicities, merging points within `tol`.
    pub fn distinct(&self, tol: f64) -> Vec<(Complex64, usize)> {
        let mut out: Vec<(Complex64, usize)> = Vec::new();
        for &z in &self.roots {
            match out.iter_mut().find(|(w, _)| (*w - z).norm() <= tol) {
                Some(entry) => entry.1 += 1,
                None => out.push((z, 1)),
            }
        }
        out
    }
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::zero(), |acc, &a| acc * z + a)
}

/// Value and first derivative.
fn horner2(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn abs_scale(c: &[Complex64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

fn derivative(c: &[Complex64]) -> Vec<Complex64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(j, &a)| a * j as f64)
        .collect()
}

fn sort_roots(roots: &mut [Complex64]) {
    let key = |z: &Complex64| ((z.re * 1e12).round(), (z.im * 1e12).round());
    roots.sort_by(|a, b| {
        let (ka, kb) = (key(a), key(b));
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
}

/// Aberth–Ehrlich iteration on `c` (ascending, `c[d] != 0`, `d >= 1`).
fn aberth(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = c.len() - 1;
    let lead = c[d];
    let a: Vec<Complex64> = c.iter().map(|&x| x / lead).collect();
    if d == 1 {
        return Ok(vec![-a[0]]);
    }
    let radius = 1.0 + a[..d].iter().map(|x| x.norm()).fold(0.0, f64::max);
    // Fixed irrational offset keeps the start off the symmetry axes of
    // even/odd polynomials.
    let offset = (2f64.sqrt() - 1.0) * PI / d as f64 + 0.25;
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / d as f64 + offset))
        .collect();
    let mut done = vec![false; d];
    let eps = f64::EPSILON;
    for _ in 0..ABERTH_MAX_ITERS {
        let mut all_done = true;
        for j in 0..d {
            if done[j] {
                continue;
            }
            let (p, dp) = horner2(&a, z[j]);
            if p.norm() <= 8.0 * eps * abs_scale(&a, z[j].norm()) {
                done[j] = true;
                continue;
            }
            all_done = false;
            let sum: Complex64 = (0..d)
                .filter(|&k| k != j)
                .map(|k| (z[j] - z[k]).inv())
                .sum();
            let step = if dp.is_zero() {
                // Stationary point: nudge off it.
                Complex64::new(1e-8 * (1.0 + z[j].norm()), 1e-8)
            } else {
                let ratio = p / dp;
                ratio / (Complex64::new(1.0, 0.0) - ratio * sum)
            };
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[j] -= step;
            if step.norm() <= eps * z[j].norm().max(eps) {
                done[j] = true;
            }
        }
        if all_done {
            break;
        }
    }
    let worst = z
        .iter()
        .map(|&r| horner(&a, r).norm() / (1.0 + abs_scale(&a, r.norm())))
        .fold(0.0, f64::max);
    if !worst.is_finite() || worst > 1e-9 {
        return Err(Error::NoConvergence {
            iterations: ABERTH_MAX_ITERS,
            residual: worst,
        });
    }
    Ok(z)
}

/// Newton steps on `c` accepted only while they reduce `|c(z)|`.
fn newton_polish(c: &[Complex64], mut z: Complex64) -> Complex64 {
    let (mut p, mut dp) = horner2(c, z);
    for _ in 0..POLISH_MAX_ITERS {
        if p.is_zero() || dp.is_zero() {
            break;
        }
        let cand = z - p / dp;
        let (pc, dpc) = horner2(c, cand);
        if !(pc.norm() < p.norm()) {
            break;
        }
        z = cand;
        p = pc;
        dp = dpc;
    }
    z
}

/// Merges approximations of a multiple root. Two approximations join when
/// they are within [`CLUSTER_TOL`] or their Newton inclusion radii overlap
/// (converged simple roots have negligible radii);
/// a cluster of size `m` is replaced by its mean, refined as a simple root of
/// the `(m-1)`-th derivative.
fn merge_clusters(c: &[Complex64], z: &mut [Complex64]) {
    let d = z.len();
    if d < 2 {
        return;
    }
    let radii: Vec<f64> = z
        .iter()
        .map(|&r| {
            let (p, dp) = horner2(c, r);
            let rad = if dp.is_zero() {
                f64::INFINITY
            } else {
                d as f64 * (p / dp).norm()
            };
            rad.min(1e-2 * (1.0 + r.norm()))
        })
        .collect();
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut i = i;
        while parent[i] != r {
            let next = parent[i];
            parent[i] = r;
            i = next;
        }
        r
    }
    for i in 0..d {
        for j in i + 1..d {
            if (z[i] - z[j]).norm() <= CLUSTER_TOL.max(radii[i] + radii[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..d {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    for members in groups.values() {
        let m = members.len();
        if m < 2 {
            continue;
        }
        let mean = members.iter().map(|&i| z[i]).sum::<Complex64>() / m as f64;
        let spread = members
            .iter()
            .map(|&i| (z[i] - mean).norm())
            .fold(0.0, f64::max);
        let mut dc = c.to_vec();
        for _ in 0..m - 1 {
            dc = derivative(&dc);
        }
        let refined = newton_polish(&dc, mean);
        let center = if (refined - mean).norm() <= 10.0 * spread + 1e-12 {
            refined
        } else {
            mean
        };
        // A genuine multiple root is at least as good a zero as the scattered
        // approximations around it; distinct roots merged by mistake are not.
        let member_res = members
            .iter()
            .map(|&i| horner(c, z[i]).norm())
            .fold(0.0, f64::max);
        let floor = 4.0 * f64::EPSILON * abs_scale(c, center.norm());
        if horner(c, center).norm() > 10.0 * member_res.max(floor) {
            continue;
        }
        for &i in members {
            z[i] = center;
        }
    }
}

/// All roots of a polynomial with complex coefficients (ascending order).
/// Leading and trailing exact zeros are handled exactly.
pub fn roots_of_complex(coeffs: &[Complex64]) -> Result<RootSet> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() < 2 {
        return Err(Error::OutOfRange {
            what: "polynomial degree for root finding",
            got: c.len().saturating_sub(1).to_string(),
            need: ">= 1",
        });
    }
    let zeros = c.iter().take_while(|x| x.is_zero()).count();
    let reduced = &c[zeros..];
    let mut roots = vec![Complex64::zero(); zeros];
    if reduced.len() > 1 {
        let mut z = aberth(reduced)?;
        for r in z.iter_mut() {
            *r = newton_polish(reduced, *r);
        }
        merge_clusters(reduced, &mut z);
        roots.extend(z);
    }
    sort_roots(&mut roots);
    let residuals = roots.iter().map(|&r| horner(&c, r).norm()).collect();
    Ok(RootSet { roots, residuals })
}

/// All complex roots of an integer polynomial, with multiplicity.
pub fn all_roots(p: &IntPoly) -> Result<RootSet> {
    roots_of_complex(&p.to_complex())
}

/// Roots of `p(λ) = w`.
pub fn solve_shifted(p: &IntPoly, w: Complex64) -> Result<RootSet> {
    let mut c = p.to_complex();
    if c.is_empty() {
        c.push(Complex64::zero());
    }
    c[0] -= w;
    roots_of_complex(&c)
}

/// Interval `[lo, hi]` certified to contain a sign change of some function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo_sign: i8,
    pub f_hi_sign: i8,
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

impl Bracket {
    /// Evaluates `f` at both ends; fails unless `lo < hi` and the signs differ
    /// strictly.
    pub fn new(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Self> {
        let (sl, sh) = (sign(f(lo)), sign(f(hi)));
        Self::from_signs(lo, hi, sl, sh)
    }

    pub fn from_signs(lo: f64, hi: f64, f_lo_sign: i8, f_hi_sign: i8) -> Result<Self> {
        if !(lo < hi) || (f_lo_sign as i32 * f_hi_sign as i32) >= 0 {
            return Err(Error::InvalidBracket { lo, hi });
        }
        Ok(Self {
            lo,
            hi,
            f_lo_sign,
            f_hi_sign,
        })
    }
}

/// Bisection down to an interval of width `tol`; returns its midpoint.
pub fn bisect(f: impl Fn(f64) -> f64, b: Bracket, tol: f64) -> f64 {
    let (mut lo, mut hi) = (b.lo, b.hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = sign(f(mid));
        if s == 0 {
            return mid;
        }
        if s == b.f_lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root of `f` on `[lo, hi]`, accepting an exact zero at either end.
pub fn solve_bracketed(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (fl, fh) = (f(lo), f(hi));
    if fl == 0.0 {
        return Ok(lo);
    }
    if fh == 0.0 {
        return Ok(hi);
    }
    let b = Bracket::from_signs(lo, hi, sign(fl), sign(fh))?;
    Ok(bisect(f, b, tol))
}

fn newton_real(
    f: &impl Fn(f64) -> f64,
    df: &impl Fn(f64) -> f64,
    mut x: f64,
    lo: f64,
    hi: f64,
) -> f64 {
    let mut fx = f(x);
    for _ in 0..POLISH_MAX_ITERS {
        let d = df(x);
        if fx == 0.0 || d == 0.0 {
            break;
        }
        let cand = x - fx / d;
        if !(cand >= lo && cand <= hi) {
            break;
        }
        let fc = f(cand);
        if !(fc.abs() < fx.abs()) {
            break;
        }
        x = cand;
        fx = fc;
    }
    x
}

/// Real roots of `f` in `[lo, hi]`: a dense sign scan with bisection and
/// Newton polish, plus tangential roots found as zeros of `df` where
/// `|f| <= tangent_tol`. Sorted ascending.
pub fn real_roots_of_fn(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tangent_tol: f64,
) -> Vec<f64> {
    let n = REAL_SCAN_SAMPLES;
    let xs: Vec<f64> = (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect();
    let mut out = Vec::new();
    let scan = |g: &dyn Fn(f64) -> f64| -> Vec<f64> {
        let vals: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
        let mut found = Vec::new();
        for i in 0..n {
            if vals[i] == 0.0 {
                found.push(xs[i]);
            } else if vals[i + 1] != 0.0 && sign(vals[i]) != sign(vals[i + 1]) {
                let b = Bracket::from_signs(xs[i], xs[i + 1], sign(vals[i]), sign(vals[i + 1]))
                    .expect("scan produced a sign change");
                found.push(bisect(g, b, BISECT_TOL));
            }
        }
        if vals[n] == 0.0 {
            found.push(xs[n]);
        }
        found
    };
    for x in scan(&f) {
        out.push(newton_real(&f, &df, x, lo, hi));
    }
    for x in scan(&df) {
        if f(x).abs() <= tangent_tol {
            out.push(x);
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= 1e-10);
    out
}

/// Real roots of an integer polynomial in `[lo, hi]`.
pub fn real_roots_in(p: &IntPoly, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(lo < hi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let dp = p.derivative();
    let tol = 1e-12 * (1.0 + p.abs_eval(lo.abs().max(hi.abs())));
    Ok(real_roots_of_fn(
        |x| p.eval_f64(x),
        |x| dp.eval_f64(x),
        lo,
        hi,
        tol,
    ))
}

/// Largest positive solution of `s^3 - 2 t s^2 + s = 1`, for `-1 <= t <= 1`.
/// It lies in `(0, 1)` when `t < 1/2` and in `[1, 2)` otherwise.
pub fn s_of_t(t: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::OutOfRange {
            what: "s(t) argument",
            got: t.to_string(),
            need: "-1 <= t <= 1",
        });
    }
    let f = |s: f64| ((s - 2.0 * t) * s + 1.0) * s - 1.0;
    if t < 0.5 {
        solve_bracketed(f, 0.0, 1.0, BISECT_TOL)
    } else {
        solve_bracketed(f, 1.0, 2.0, BISECT_TOL)
    }
}

/// Solution in `(π/(2n+6), π/(2n+4)]` of `2 cos((n+1)θ) = cos((n-1)θ)`.
pub fn theta_n(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::OutOfRange {
            what: "theta_n index",
            got: n.to_string(),
            need: "n >= 1",
        });
    }
    let nf = n as f64;
    let f = |th: f64| 2.0 * ((nf + 1.0) * th).cos() - ((nf - 1.0) * th).cos();
    let lo = PI / (2.0 * nf + 6.0);
    let hi = PI / (2.0 * nf + 4.0);
    // The closed end can be the root itself (n = 1 gives θ = π/6 exactly);
    // widen by a few ulps so rounding at that end cannot hide the sign change.
    let th = solve_bracketed(f, lo, hi * (1.0 + 1e-12), BISECT_TOL)?;
    Ok(th.min(hi))
}

/// Pseudospectral radius `ε_n = 4 sin θ_n`.
pub fn epsilon_n(n: usize) -> Result<f64> {
    Ok(4.0 * theta_n(n)?.sin())
}

/// `P_m(x)` and `P_m'(x)` via the three-term recurrence, which stays accurate
/// near `x = 2` where the monomial form cancels badly.
pub fn cheb_p_eval(m: usize, x: f64) -> (f64, f64) {
    // V_j = U_j(x/2): V_0 = 1, V_1 = x, V_{j+1} = x V_j - V_{j-1}.
    let (mut v0, mut v1) = (1.0, x);
    let (mut d0, mut d1) = (0.0, 1.0);
    if m == 1 {
        return (x, 1.0);
    }
    for _ in 1..m - 1 {
        let v2 = x * v1 - v0;
        let d2 = v1 + x * d1 - d0;
        v0 = v1;
        v1 = v2;
        d0 = d1;
        d1 = d2;
    }
    // P_m = x V_{m-1}
    (x * v1, v1 + x * d1)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaPm {
    /// Largest solution of `P_m = -1` in `(0, 2)`; defined for `m >= 4`.
    pub minus: Option<f64>,
    /// Largest solution of `P_m = 1` in `(2 cos(π/m), 2)`.
    pub plus: f64,
}

pub fn lambda_pm(m: usize) -> Result<LambdaPm> {
    if m < 3 {
        return Err(Error::OutOfRange {
            what: "lambda_m index",
            got: m.to_string(),
            need: "m >= 3",
        });
    }
    let df = |x: f64| cheb_p_eval(m, x).1;
    let tol = 1e-12 * (1.0 + 2.0 * m as f64);
    let lo_plus = 2.0 * (PI / m as f64).cos();
    let plus = real_roots_of_fn(|x| cheb_p_eval(m, x).0 - 1.0, df, lo_plus, 2.0, tol)
        .into_iter()
        .filter(|&x| x > lo_plus && x < 2.0)
        .fold(f64::NAN, f64::max);
    if plus.is_nan() {
        return Err(Error::NoConvergence {
            iterations: REAL_SCAN_SAMPLES,
            residual: f64::NAN,
        });
    }
    let minus = if m >= 4 {
        let r = real_roots_of_fn(|x| cheb_p_eval(m, x).0 + 1.0, df, 0.0, 2.0, tol)
            .into_iter()
            .filter(|&x| x > 0.0 && x < 2.0)
            .fold(f64::NAN, f64::max);
        (!r.is_nan()).then_some(r)
    } else {
        None
    };
    Ok(LambdaPm { minus, plus })
}
