//! Python bindings. Polynomials cross the boundary as coefficient lists,
//! lowest degree first; sign vectors as lists of ±1.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fzhop::bounds::{self, RegionW, SigmaStar};
use fzhop::charpoly::{self, IntPoly};
use fzhop::dynamics::{self, OrbitVerdict, TrapParams};
use fzhop::raster::Window;
use fzhop::spectra::{self, SpectralCloud};
use fzhop::{roots, signvec, verify, SignVector};

fn err(e: fzhop::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sv(k: &[i8]) -> PyResult<SignVector> {
    SignVector::new(k).map_err(err)
}

fn coeffs(p: &IntPoly) -> Vec<i128> {
    p.coeffs().to_vec()
}

fn poly(c: Vec<i128>) -> IntPoly {
    IntPoly::new(c)
}

fn points(c: SpectralCloud) -> Vec<Complex64> {
    c.zs()
}

fn window(w: (f64, f64, f64, f64)) -> PyResult<Window> {
    Window::new(w.0, w.1, w.2, w.3).map_err(err)
}

/// `p_k` (any length).
#[pyfunction]
fn p_poly(k: Vec<i8>) -> PyResult<Vec<i128>> {
    Ok(coeffs(&charpoly::p_poly_any(&sv(&k)?)))
}

/// `q_k`.
#[pyfunction]
fn q_poly(k: Vec<i8>) -> PyResult<Vec<i128>> {
    Ok(coeffs(&charpoly::q_poly(&sv(&k)?)))
}

#[pyfunction]
fn cheb_p(m: usize) -> PyResult<Vec<i128>> {
    charpoly::cheb_p(m).map(|p| coeffs(&p)).map_err(err)
}

#[pyfunction]
fn cheb_q(m: usize) -> PyResult<Vec<i128>> {
    charpoly::cheb_q(m).map(|p| coeffs(&p)).map_err(err)
}

#[pyfunction]
fn cheb_p_star(m: usize) -> PyResult<Vec<i128>> {
    charpoly::cheb_p_star(m).map(|p| coeffs(&p)).map_err(err)
}

#[pyfunction]
fn is_in_k(k: Vec<i8>) -> PyResult<bool> {
    Ok(sv(&k)?.is_in_k())
}

#[pyfunction]
fn enumerate_k(n: usize) -> PyResult<Vec<Vec<i8>>> {
    Ok(signvec::enumerate_k(n)
        .map_err(err)?
        .iter()
        .map(|k| k.entries())
        .collect())
}

/// Distinct members of S up to `max_degree` as `(witness, coefficients)`.
#[pyfunction]
fn symmetry_set(max_degree: usize) -> PyResult<Vec<(Vec<i8>, Vec<i128>)>> {
    Ok(charpoly::symmetry_set(max_degree)
        .map_err(err)?
        .into_iter()
        .map(|s| (s.witnesses[0].entries(), coeffs(&s.poly)))
        .collect())
}

#[pyfunction]
fn all_roots(c: Vec<i128>) -> PyResult<Vec<Complex64>> {
    roots::all_roots(&poly(c)).map(|r| r.roots).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (k, num_t = spectra::DEFAULT_NUM_T))]
fn periodic_spectrum(k: Vec<i8>, num_t: usize) -> PyResult<Vec<Complex64>> {
    spectra::periodic_spectrum_roots(&sv(&k)?, num_t)
        .map(points)
        .map_err(err)
}

#[pyfunction]
fn periodic_spectrum_bloch(k: Vec<i8>, num_phi: usize) -> PyResult<Vec<Complex64>> {
    spectra::periodic_spectrum_bloch(&sv(&k)?, num_phi)
        .map(points)
        .map_err(err)
}

#[pyfunction]
fn finite_spectrum(k: Vec<i8>, n: usize) -> PyResult<Vec<Complex64>> {
    spectra::finite_spectrum(&sv(&k)?, n)
        .map(points)
        .map_err(err)
}

#[pyfunction]
fn sigma_n(n: usize) -> PyResult<Vec<Complex64>> {
    spectra::sigma_n(n).map(points).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, num_t = spectra::DEFAULT_NUM_T, cumulative = false))]
fn pi_n(n: usize, num_t: usize, cumulative: bool) -> PyResult<Vec<Complex64>> {
    let c = if cumulative {
        spectra::pi_cumulative(n, num_t)
    } else {
        spectra::pi_n(n, num_t)
    };
    c.map(points).map_err(err)
}

#[pyfunction]
fn smallest_singular_value(k: Vec<i8>, n: usize, z: Complex64) -> PyResult<f64> {
    bounds::smallest_singular_value(&sv(&k)?, n, z).map_err(err)
}

#[pyfunction]
fn in_sigma_star(n: usize, z: Complex64) -> PyResult<bool> {
    bounds::in_sigma_star(n, z).map_err(err)
}

#[pyfunction]
fn in_w(z: Complex64) -> bool {
    bounds::in_w(z)
}

#[pyfunction]
fn in_n2(z: Complex64) -> bool {
    bounds::in_n2(z)
}

#[pyfunction]
fn in_delta(z: Complex64) -> bool {
    bounds::in_delta(z)
}

#[pyfunction]
fn eta() -> f64 {
    bounds::eta()
}

#[pyfunction]
fn s_of_t(t: f64) -> PyResult<f64> {
    roots::s_of_t(t).map_err(err)
}

#[pyfunction]
fn epsilon_n(n: usize) -> PyResult<f64> {
    roots::epsilon_n(n).map_err(err)
}

/// `(λ_m^-, λ_m^+)`; the first is `None` when `m = 3`.
#[pyfunction]
fn lambda_pm(m: usize) -> PyResult<(Option<f64>, f64)> {
    roots::lambda_pm(m).map(|l| (l.minus, l.plus)).map_err(err)
}

fn verdict(v: &OrbitVerdict) -> (String, usize) {
    (v.status.to_string(), v.steps)
}

#[pyfunction]
#[pyo3(signature = (c, z0, max_iter = dynamics::DEFAULT_MAX_ITER, in_s = true))]
fn iterate_orbit(c: Vec<i128>, z0: Complex64, max_iter: usize, in_s: bool) -> (String, usize) {
    verdict(&dynamics::iterate_orbit(
        &poly(c),
        z0,
        max_iter,
        &TrapParams::default(),
        in_s,
    ))
}

/// `[(critical point, status, steps)]`.
#[pyfunction]
#[pyo3(signature = (c, max_iter = dynamics::DEFAULT_MAX_ITER))]
fn classify_critical_orbits(
    c: Vec<i128>,
    max_iter: usize,
) -> PyResult<Vec<(Complex64, String, usize)>> {
    Ok(
        dynamics::classify_all_critical_orbits(&poly(c), max_iter, &TrapParams::default())
            .map_err(err)?
            .iter()
            .map(|(z, v)| {
                let (s, n) = verdict(v);
                (*z, s, n)
            })
            .collect(),
    )
}

/// Row-major raster values (row 0 at the top) with its width and height.
#[pyfunction]
#[pyo3(signature = (c, window, width, height, max_iter = 1000, membership = false, in_s = false))]
fn julia_raster(
    c: Vec<i128>,
    window: (f64, f64, f64, f64),
    width: usize,
    height: usize,
    max_iter: usize,
    membership: bool,
    in_s: bool,
) -> PyResult<(usize, usize, Vec<u32>)> {
    let p = poly(c);
    let win = self::window(window)?;
    let g = if membership {
        dynamics::julia_membership_raster(&p, win, width, height, max_iter, in_s)
    } else {
        dynamics::filled_julia_raster(&p, win, width, height, max_iter, in_s)
    }
    .map_err(err)?;
    Ok((g.width, g.height, g.values))
}

#[pyfunction]
fn sigma_star_raster(
    n: usize,
    window: (f64, f64, f64, f64),
    width: usize,
    height: usize,
) -> PyResult<(usize, usize, Vec<u32>)> {
    let g = bounds::sigma_star_raster(n, self::window(window)?, width, height).map_err(err)?;
    Ok((g.width, g.height, g.values))
}

#[pyfunction]
#[pyo3(signature = (c, depth, seeds_per_level, seed = dynamics::DEFAULT_SEED))]
fn inverse_cloud(
    c: Vec<i128>,
    depth: usize,
    seeds_per_level: usize,
    seed: u64,
) -> PyResult<Vec<Complex64>> {
    dynamics::inverse_cloud(&poly(c), depth, seeds_per_level, seed)
        .map(points)
        .map_err(err)
}

/// `[(fixed point, multiplier)]` with `|multiplier| < 1`.
#[pyfunction]
fn find_attracting_fixed_points(c: Vec<i128>) -> PyResult<Vec<(Complex64, Complex64)>> {
    dynamics::find_attracting_fixed_points(&poly(c)).map_err(err)
}

/// `(passed, report text)` for the degree-18 certificate.
#[pyfunction]
fn verify_counterexample() -> (bool, String) {
    let r = dynamics::verify_counterexample();
    (r.passed(), r.to_string())
}

#[pyfunction]
fn run_suite(name: &str) -> PyResult<(bool, String)> {
    let r = verify::run_suite(name).map_err(err)?;
    Ok((r.passed(), r.to_string()))
}

#[pyfunction]
fn region_w_contains(points: Vec<Complex64>) -> Vec<bool> {
    let w = RegionW::default();
    points.into_iter().map(|z| w.contains(z)).collect()
}

#[pyfunction]
fn sigma_star_contains(n: usize, points: Vec<Complex64>) -> PyResult<Vec<bool>> {
    let s = SigmaStar::new(n).map_err(err)?;
    Ok(points.into_iter().map(|z| s.contains(z)).collect())
}

#[pymodule]
fn fzhop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(p_poly, m)?)?;
    m.add_function(wrap_pyfunction!(q_poly, m)?)?;
    m.add_function(wrap_pyfunction!(cheb_p, m)?)?;
    m.add_function(wrap_pyfunction!(cheb_q, m)?)?;
    m.add_function(wrap_pyfunction!(cheb_p_star, m)?)?;
    m.add_function(wrap_pyfunction!(is_in_k, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_k, m)?)?;
    m.add_function(wrap_pyfunction!(symmetry_set, m)?)?;
    m.add_function(wrap_pyfunction!(all_roots, m)?)?;
    m.add_function(wrap_pyfunction!(periodic_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(periodic_spectrum_bloch, m)?)?;
    m.add_function(wrap_pyfunction!(finite_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_n, m)?)?;
    m.add_function(wrap_pyfunction!(pi_n, m)?)?;
    m.add_function(wrap_pyfunction!(smallest_singular_value, m)?)?;
    m.add_function(wrap_pyfunction!(in_sigma_star, m)?)?;
    m.add_function(wrap_pyfunction!(in_w, m)?)?;
    m.add_function(wrap_pyfunction!(in_n2, m)?)?;
    m.add_function(wrap_pyfunction!(in_delta, m)?)?;
    m.add_function(wrap_pyfunction!(eta, m)?)?;
    m.add_function(wrap_pyfunction!(s_of_t, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon_n, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_pm, m)?)?;
    m.add_function(wrap_pyfunction!(iterate_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(classify_critical_orbits, m)?)?;
    m.add_function(wrap_pyfunction!(julia_raster, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_star_raster, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_cloud, m)?)?;
    m.add_function(wrap_pyfunction!(find_attracting_fixed_points, m)?)?;
    m.add_function(wrap_pyfunction!(verify_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(region_w_contains, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_star_contains, m)?)?;
    m.add("SUITES", verify::SUITES.to_vec())?;
    Ok(())
}
