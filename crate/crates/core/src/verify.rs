//! Verification suites run by `fzhop verify`.
//!
//! Each suite recomputes a family of identities or inclusions at desk scale
//! and reports one line per check.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_6, TAU};
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{in_delta, in_n2, rho_n2, RegionW, SigmaStar};
use crate::charpoly::{
    cheb_p, cheb_p_star, p_poly, p_poly_any, p_poly_via_k, q_poly, star_transform, symmetry_set,
    IntPoly,
};
use crate::dynamics::{
    all_decided, classify_all_critical_orbits, julia_membership_raster, verify_counterexample,
    OrbitStatus, TrapParams, DEFAULT_MAX_ITER,
};
use crate::raster::{RasterGrid, Window, MEMBER, OUTSIDE};
use crate::roots::{cheb_p_eval, lambda_pm, LambdaPm};
use crate::signvec::{enumerate_k, SignVector};
use crate::spectra::{
    d2_symmetry_defect, distance_to_periodic_spectrum, distance_to_pi_s, embed_period,
    finite_charpoly, finite_spectrum, pi_n, sigma_n,
};
use crate::{Error, Result};

pub const SUITES: [&str; 7] = [
    "recurrences",
    "symmetries",
    "inclusions",
    "interlacing",
    "region",
    "counterexample",
    "julia",
];

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} [{}] {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                self.suite,
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    match name {
        "recurrences" => recurrences(),
        "symmetries" => symmetries(),
        "inclusions" => inclusions(),
        "interlacing" => interlacing(),
        "region" => region(),
        "counterexample" => Ok(counterexample()),
        "julia" => julia(),
        other => Err(Error::Parse(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det_complex(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .expect("nonempty range");
        if a[piv][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                let v = a[col][c];
                a[r][c] -= f * v;
            }
        }
    }
    det
}

/// `a_k(φ) - λI` as a dense row-major matrix.
pub fn bloch_matrix(k: &SignVector, phi: f64, lambda: Complex64) -> Vec<Vec<Complex64>> {
    let n = k.len();
    let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        a[i][i] = -lambda;
        if i + 1 < n {
            a[i][i + 1] += 1.0;
            a[i + 1][i] += k.get(i) as f64;
        }
    }
    a[n - 1][0] += Complex64::from_polar(1.0, -phi);
    a[0][n - 1] += Complex64::from_polar(k.get(n - 1) as f64, phi);
    a
}

/// The rows of the small-degree table of `S`: `(witness, polynomial)`.
pub fn table_rows(max_degree: usize) -> Result<Vec<(SignVector, IntPoly)>> {
    Ok(symmetry_set(max_degree)?
        .into_iter()
        .map(|s| (s.witnesses[0], s.poly))
        .collect())
}

fn recurrences() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("recurrences");

    let mut bad = 0;
    let mut count = 0;
    for n in 2..=14 {
        for k in SignVector::all(n - 1)? {
            count += 1;
            if finite_charpoly(&k.entries()) != crate::charpoly::q_of_entries(&k.entries()) {
                bad += 1;
            }
        }
    }
    r.check(
        "finite-section recurrence equals q_{k(1:n-1)}, n <= 14",
        bad == 0,
        format!("{count} patterns, {bad} mismatches"),
    );

    let mut bad = 0;
    let mut count = 0;
    for n in 2..=16 {
        for k in enumerate_k(n)? {
            count += 1;
            if p_poly_via_k(&k)? != p_poly(&k)? {
                bad += 1;
            }
        }
    }
    r.check(
        "p_k = λ q_{k(1:n-2)} on K, n <= 16",
        bad == 0,
        format!("{count} members, {bad} mismatches"),
    );

    let mut bad = Vec::new();
    for m in 2..=20 {
        let mut ones = vec![1i8; m];
        ones[m - 2] = -1;
        let mut minus = vec![-1i8; m];
        minus[m - 1] = 1;
        let pk = p_poly(&SignVector::new(&ones)?)?;
        let pk_star = p_poly(&SignVector::new(&minus)?)?;
        if pk != cheb_p(m)? || pk_star != cheb_p_star(m)? {
            bad.push(m);
        }
    }
    r.check(
        "P_m and P_m* realised by (1,..,1,-1,1) and (-1,..,-1,1), m <= 20",
        bad.is_empty(),
        format!("failures at m = {bad:?}"),
    );

    let bad: Vec<usize> = (1..=20)
        .filter(|&m| cheb_p(m).and_then(|p| p.eval_int(2)) != Ok(2 * m as i128))
        .collect();
    r.check(
        "P_m(2) = 2m, m <= 20",
        bad.is_empty(),
        format!("failures at m = {bad:?}"),
    );

    let mut worst: f64 = 0.0;
    for n in 2..=6 {
        for k in SignVector::all(n)? {
            let p = p_poly_any(&k);
            let prod = k.product() as f64;
            for (phi, lam) in [
                (0.3, Complex64::new(0.4, 0.9)),
                (2.0, Complex64::new(-1.1, 0.2)),
            ] {
                let lhs =
                    det_complex(bloch_matrix(&k, phi, lam)) * if n % 2 == 0 { 1.0 } else { -1.0 };
                let rhs = p.evaluate(lam)
                    - Complex64::from_polar(prod, phi)
                    - Complex64::from_polar(1.0, -phi);
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    r.check(
        "Bloch determinant (-1)^n det(a_k(φ) - λ) = p_k(λ) - e^{iφ}∏k - e^{-iφ}, n <= 6",
        worst < 1e-10,
        format!("max deviation {worst:.2e}"),
    );

    let rows = table_rows(6)?;
    r.check(
        "distinct members of S with degree <= 6",
        rows.len() == 12,
        format!("{} rows", rows.len()),
    );
    Ok(r)
}

fn symmetries() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("symmetries");
    let mut bad = 0usize;
    let mut count = 0usize;
    for n in 1..=12 {
        let ks: Vec<SignVector> = SignVector::all(n)?.collect();
        count += ks.len();
        bad += ks
            .par_iter()
            .filter(|k| {
                let p = p_poly_any(k);
                let rev = p_poly_any(&k.reverse()) == p;
                let shifts = (1..n as i64).all(|s| p_poly_any(&k.cyclic_shift(s)) == p);
                let neg = star_transform(&p, n).map(|s| s == p_poly_any(&k.negate())) == Ok(true);
                let q = q_poly(k);
                let q_rev = q_poly(&k.reverse()) == q;
                let q_neg = star_transform(&q, n + 1).map(|s| s == q_poly(&k.negate())) == Ok(true);
                !(rev && shifts && neg && q_rev && q_neg)
            })
            .count();
    }
    r.check(
        "p_k, q_k invariant under reversal and cyclic shifts; negation rule; n <= 12",
        bad == 0,
        format!("{count} vectors, {bad} failures"),
    );

    let bad: Vec<usize> = (2..=16)
        .filter(|&n| enumerate_k(n).map(|v| v.len()) != Ok(1 << (n.div_ceil(2) - 1)))
        .collect();
    r.check(
        "|K_n| = 2^{⌈n/2⌉-1}, n <= 16",
        bad.is_empty(),
        format!("failures at n = {bad:?}"),
    );

    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        worst = worst.max(d2_symmetry_defect(&pi_n(n, 65)?)?);
    }
    r.check(
        "D2 symmetry of π_n samples, n <= 4",
        worst <= 1e-9,
        format!("max defect {worst:.2e}"),
    );

    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        worst = worst.max(d2_symmetry_defect(&sigma_n(n)?)?);
    }
    r.check(
        "D2 symmetry of σ_n, n <= 8",
        worst <= 1e-9,
        format!("max defect {worst:.2e}"),
    );
    Ok(r)
}

/// Data for the inclusion checks at one size `m`.
pub struct InclusionStats {
    pub m: usize,
    pub eigenvalues: usize,
    /// Largest distance from an eigenvalue to `spec A_ℓ^per`, over all
    /// 16 choices of `(a, b, c, d)`.
    pub worst_embedding: f64,
    /// Largest distance from an eigenvalue to `π^S_{2m+2}`.
    pub worst_pi_s: f64,
    /// Every `ℓ` with `a = b`, `c = -1`, `d = 1` lies in `K`.
    pub k_members_ok: bool,
}

pub fn inclusion_stats(m: usize) -> Result<InclusionStats> {
    let patterns: Vec<SignVector> = SignVector::all(m)?.filter(|k| k.get(m - 1) == 1).collect();
    let signs = [-1i8, 1];
    let per: Vec<(usize, f64, f64, bool)> = patterns
        .par_iter()
        .map(|k| {
            let eig = finite_spectrum(k, m)?.zs();
            let mut worst_e: f64 = 0.0;
            let mut k_ok = true;
            for &a in &signs {
                for &b in &signs {
                    for &c in &signs {
                        for &d in &signs {
                            let l = embed_period(k, a, b, c, d)?;
                            if a == b && c == -1 && d == 1 && !l.is_in_k() {
                                k_ok = false;
                            }
                            for &z in &eig {
                                worst_e = worst_e.max(distance_to_periodic_spectrum(z, &l)?);
                            }
                        }
                    }
                }
            }
            let mut worst_s: f64 = 0.0;
            for &z in &eig {
                worst_s = worst_s.max(distance_to_pi_s(z, 2 * m + 2)?);
            }
            Ok((eig.len(), worst_e, worst_s, k_ok))
        })
        .collect::<Result<_>>()?;
    Ok(InclusionStats {
        m,
        eigenvalues: per.iter().map(|x| x.0).sum(),
        worst_embedding: per.iter().map(|x| x.1).fold(0.0, f64::max),
        worst_pi_s: per.iter().map(|x| x.2).fold(0.0, f64::max),
        k_members_ok: per.iter().all(|x| x.3),
    })
}

/// Distinct `p_ℓ` over the 16 embeddings of `k`.
pub fn distinct_embedded_polys(k: &SignVector) -> Result<usize> {
    let mut set = BTreeSet::new();
    for a in [-1, 1] {
        for b in [-1, 1] {
            for c in [-1, 1] {
                for d in [-1, 1] {
                    set.insert(p_poly(&embed_period(k, a, b, c, d)?)?);
                }
            }
        }
    }
    Ok(set.len())
}

fn inclusions() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("inclusions");
    for m in 1..=5 {
        let s = inclusion_stats(m)?;
        r.check(
            format!("σ-spectra of size {m} inside spec A_ℓ^per for all 16 embeddings"),
            s.worst_embedding <= 1e-6,
            format!(
                "{} eigenvalues, max distance {:.2e}",
                s.eigenvalues, s.worst_embedding
            ),
        );
        r.check(
            format!("σ-spectra of size {m} inside π^S_{}", 2 * m + 2),
            s.worst_pi_s <= 1e-6,
            format!("max distance {:.2e}", s.worst_pi_s),
        );
        r.check(
            format!("embeddings with a = b, c = -d = -1 lie in K (size {m})"),
            s.k_members_ok,
            "",
        );
    }
    let k = SignVector::new(&[1, 1, 1])?;
    let eig = finite_spectrum(&k, 3)?.zs();
    let want = [-(2f64.sqrt()), 0.0, 2f64.sqrt()];
    let dev = eig
        .iter()
        .zip(want)
        .map(|(z, w)| (z - Complex64::new(w, 0.0)).norm())
        .fold(0.0, f64::max);
    r.check(
        "eigenvalues of A^{(3)} with k_1 = k_2 = 1 are 0, ±√2",
        eig.len() == 3 && dev <= 1e-9,
        format!("max deviation {dev:.2e}"),
    );
    let distinct = distinct_embedded_polys(&k)?;
    r.check(
        "distinct p_ℓ over the 16 embeddings of (1,1,·)",
        distinct == 7,
        format!("{distinct}"),
    );
    Ok(r)
}

pub fn lambda_table(max_m: usize) -> Result<Vec<LambdaPm>> {
    (3..=max_m).into_par_iter().map(lambda_pm).collect()
}

fn interlacing() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("interlacing");
    let table = lambda_table(41)?;
    let at = |m: usize| table[m - 3];
    let mut min_gap = f64::INFINITY;
    let mut bad = Vec::new();
    for m in 3..=40 {
        let next = at(m + 1);
        let lo = next.minus.map(|x| at(m).plus - x).unwrap_or(f64::NAN);
        let hi = next.plus - at(m).plus;
        let g = lo.min(hi);
        if !(g > 1e-10) {
            bad.push(m);
        }
        min_gap = min_gap.min(g);
    }
    r.check(
        "λ_{m+1}^- < λ_m^+ < λ_{m+1}^+, 3 <= m <= 40",
        bad.is_empty(),
        format!("smallest gap {min_gap:.3e}, failures at {bad:?}"),
    );
    let l4 = at(4).minus.unwrap_or(f64::NAN);
    r.check("λ_4^- = 1", (l4 - 1.0).abs() <= 1e-12, format!("{l4:.15}"));
    let l40 = at(40).plus;
    r.check(
        "λ_m^+ increases towards 2",
        l40 > 1.99 && l40 < 2.0,
        format!("λ_40^+ = {l40:.10}"),
    );

    let bad: Vec<usize> = (1..=20)
        .filter(|&m| cheb_p(m).and_then(|p| p.eval_int(2)) != Ok(2 * m as i128))
        .collect();
    r.check(
        "P_m(2) = 2m exactly, m <= 20",
        bad.is_empty(),
        format!("failures at {bad:?}"),
    );

    let mut bad = Vec::new();
    for m in 4..=20 {
        let lo = at(m).minus.unwrap_or(f64::NAN);
        let n = 2000;
        let vals: Vec<f64> = (0..=n)
            .map(|i| cheb_p_eval(m, lo + (2.0 - lo) * i as f64 / n as f64).0)
            .collect();
        if !vals.windows(2).all(|w| w[1] > w[0]) {
            bad.push(m);
        }
    }
    r.check(
        "P_m strictly increasing on (λ_m^-, 2), 4 <= m <= 20",
        bad.is_empty(),
        format!("failures at {bad:?}"),
    );
    Ok(r)
}

/// `count` equispaced points on the circle of radius `r`.
pub fn circle_samples(r: f64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|j| Complex64::from_polar(r, TAU * j as f64 / count as f64))
        .collect()
}

/// `count` uniform samples of the open unit disk from a fixed seed.
pub fn disk_samples(count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r: f64 = rng.gen::<f64>().sqrt();
            Complex64::from_polar(r, rng.gen::<f64>() * TAU)
        })
        .collect()
}

fn region() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("region");
    let w = RegionW::default();
    let circle = circle_samples(1.1, 100_000);
    let misses = circle.par_iter().filter(|&&z| !w.contains(z)).count();
    r.check(
        "1.1-circle inside W (10^5 samples)",
        misses == 0,
        format!("{misses} misses"),
    );

    let s6 = SigmaStar::new(6)?;
    let disk = disk_samples(100_000, 6);
    let misses = disk.par_iter().filter(|&&z| !s6.contains(z)).count();
    r.check(
        "unit disk inside Σ*_6 (10^5 samples)",
        misses == 0,
        format!("{misses} misses"),
    );

    let mut outside = 0usize;
    let mut total = 0usize;
    for n in 1..=8 {
        let c = pi_n(n, 65)?;
        total += c.len();
        outside += c
            .points
            .iter()
            .filter(|p| !(in_n2(p.z) && p.z.re.abs() + p.z.im.abs() <= 2.0 + 1e-9))
            .count();
    }
    r.check(
        "π_n samples inside N₂ and the closed diamond, n <= 8",
        outside == 0,
        format!("{total} points, {outside} outside"),
    );

    let jump = (rho_n2(FRAC_PI_6 - 1e-12) - rho_n2(FRAC_PI_6)).abs();
    r.check(
        "ρ continuous at π/6",
        jump < 1e-9,
        format!("jump {jump:.2e}"),
    );
    let z = Complex64::new(1.5, 0.5);
    r.check(
        "1.5+0.5i lies on the boundary of Δ, outside W",
        !in_delta(z) && !w.contains(z),
        "",
    );
    Ok(r)
}

fn counterexample() -> SuiteReport {
    let rep = verify_counterexample();
    let mut r = SuiteReport::new("counterexample");
    for c in rep.clauses {
        r.check(c.name, c.passed, c.detail);
    }
    r
}

fn dist_to_segment(z: Complex64) -> f64 {
    let x = z.re.clamp(-2.0, 2.0);
    Complex64::new(z.re - x, z.im).norm()
}

/// Pixel-level comparison of a membership raster with a known set: returns
/// the number of marked pixels farther than one pixel diagonal from the set
/// (by `dist`), and the number of unmarked pixels for which `must_mark`
/// holds.
pub fn raster_deviation(
    grid: &RasterGrid,
    dist: impl Fn(Complex64) -> f64,
    must_mark: impl Fn(Complex64) -> bool,
) -> (usize, usize) {
    let (dx, dy) = grid.pixel_size();
    let diag = dx.hypot(dy);
    let mut spurious = 0;
    let mut missing = 0;
    for j in 0..grid.height {
        for i in 0..grid.width {
            let z = grid.center(i, j);
            let marked = grid.get(i, j) != OUTSIDE;
            if marked && dist(z) > diag {
                spurious += 1;
            }
            if !marked && must_mark(z) {
                missing += 1;
            }
        }
    }
    (spurious, missing)
}

fn julia() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("julia");
    let res = 512;
    let sq = IntPoly::monomial(1, 2);
    let g = julia_membership_raster(&sq, Window::square(1.5)?, res, res, 1000, true)?;
    let (dx, dy) = g.pixel_size();
    let diag = dx.hypot(dy);
    let (spurious, missing) = raster_deviation(
        &g,
        |z| (z.norm() - 1.0).max(0.0),
        |z| z.norm() <= 1.0 - diag,
    );
    r.check(
        "K(λ²) raster matches the closed unit disk within one pixel",
        spurious == 0 && missing == 0,
        format!("{spurious} spurious, {missing} missing"),
    );

    let cheb = IntPoly::new(vec![-2, 0, 1]);
    let g = julia_membership_raster(&cheb, Window::square(2.5)?, res, res, 1000, false)?;
    let (dx, dy) = g.pixel_size();
    // Pixels whose center is at most half a pixel from the segment are the
    // ones the segment passes through.
    let (spurious, missing) = raster_deviation(&g, dist_to_segment, |z| {
        z.im.abs() <= 0.5 * dy && z.re.abs() <= 2.0 - dx
    });
    r.check(
        "K(λ² - 2) raster collapses to [-2, 2] within one pixel",
        spurious == 0 && missing == 0,
        format!("{spurious} spurious, {missing} missing"),
    );

    let p4s = cheb_p_star(4)?;
    let trap = TrapParams::default();
    let v = classify_all_critical_orbits(&p4s, DEFAULT_MAX_ITER, &trap)?;
    let ok = v.len() == 3
        && v.iter().all(|(z, verdict)| {
            if z.norm() < 1e-12 {
                verdict.status == OrbitStatus::TrappedInT
            } else {
                verdict.status == OrbitStatus::Escaped
            }
        });
    let p2 = p4s.evaluate(p4s.evaluate(Complex64::new(0.0, 1.0)));
    r.check(
        "critical orbits of P_4*: 0 trapped, ±i escaped",
        ok,
        format!(
            "{}",
            v.iter()
                .map(|(z, x)| format!("{z:.3}: {}", x.status))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    r.check(
        "P_4*(P_4*(i)) = 3",
        p2 == Complex64::new(3.0, 0.0),
        format!("{p2}"),
    );

    let set = symmetry_set(7)?;
    let undecided: Vec<String> = set
        .par_iter()
        .map(|s| {
            let v = classify_all_critical_orbits(&s.poly, DEFAULT_MAX_ITER, &trap)?;
            Ok((!all_decided(&v)).then(|| s.poly.to_string()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    r.check(
        "critical orbits of every p in S with degree <= 7 decided",
        undecided.is_empty(),
        format!("{} polynomials, undecided: {undecided:?}", set.len()),
    );

    let g = julia_membership_raster(&p4s, Window::square(2.5)?, 256, 256, 1000, true)?;
    let far = (0..256)
        .flat_map(|j| (0..256).map(move |i| (i, j)))
        .filter(|&(i, j)| g.get(i, j) == MEMBER && g.center(i, j).norm() > 2.0)
        .count();
    r.check(
        "no member pixel of K(P_4*) beyond |z| = 2",
        far == 0,
        format!("{far} pixels"),
    );
    Ok(r)
}
