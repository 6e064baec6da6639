//! Exact integer polynomials and the characteristic-polynomial families of
//! the hopping matrix.
//!
//! `q_k` is the determinant of the tridiagonal matrix with `λ` on the
//! diagonal, ones above and `k` below; `p_k` is the polynomial whose
//! preimages of `[-2, 2]` (even `k`) or `i[-2, 2]` (odd `k`) are the periodic
//! spectra. All arithmetic is exact on `i128` and overflow is reported.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::signvec::{enumerate_k, SignVector};
use crate::{Error, Result};

/// Polynomial with exact integer coefficients, `coeffs[j]` multiplying `λ^j`.
/// The stored sequence never ends in a zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<i128>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `λ`.
    pub fn x() -> Self {
        Self::new(vec![0, 1])
    }

    pub fn monomial(c: i128, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> i128 {
        self.coeffs.get(j).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Only even powers present.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|&c| c == 0)
    }

    /// Only odd powers present.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|&c| c == 0)
    }

    /// Multiplicity of the root at zero (number of leading zero coefficients).
    pub fn zero_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 0).count()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|&c| (c as f64).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|&c| Complex64::new(c as f64, 0.0))
            .collect()
    }

    pub fn add(&self, other: &IntPoly) -> Result<IntPoly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i128; n];
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = self
                .coeff(j)
                .checked_add(other.coeff(j))
                .ok_or(Error::Overflow("add"))?;
        }
        Ok(IntPoly::new(out))
    }

    pub fn sub(&self, other: &IntPoly) -> Result<IntPoly> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, c: i128) -> Result<IntPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(Error::Overflow("scale")))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::new(coeffs))
    }

    /// Multiplication by `λ^s`.
    pub fn shift(&self, s: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0; s];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly::new(coeffs)
    }

    pub fn mul(&self, other: &IntPoly) -> Result<IntPoly> {
        if self.is_zero() || other.is_zero() {
            return Ok(IntPoly::zero());
        }
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(Error::Overflow("mul"))?;
                out[i + j] = out[i + j].checked_add(t).ok_or(Error::Overflow("mul"))?;
            }
        }
        Ok(IntPoly::new(out))
    }

    /// `self(inner(λ))`, by Horner's scheme in the polynomial ring.
    pub fn compose(&self, inner: &IntPoly) -> Result<IntPoly> {
        let mut acc = IntPoly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?.add(&IntPoly::constant(c))?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> IntPoly {
        // j * c_j never overflows for the degrees reachable here; still checked.
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| {
                c.checked_mul(j as i128)
                    .expect("derivative coefficient overflow")
            })
            .collect();
        IntPoly::new(coeffs)
    }

    /// Horner evaluation in complex floating point.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c as f64)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, x: i128) -> Result<i128> {
        self.coeffs.iter().rev().try_fold(0i128, |acc, &c| {
            acc.checked_mul(x)
                .and_then(|v| v.checked_add(c))
                .ok_or(Error::Overflow("eval_int"))
        })
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, &c| {
                acc * x + BigRational::from_integer(BigInt::from(c))
            })
    }

    /// `Σ |c_j| |z|^j`, the scale used for backward-error residual tests.
    pub fn abs_eval(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * r + (c as f64).abs())
    }

    /// `degree,coefficient` lines with a header row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,coefficient\n");
        for (j, c) in self.coeffs.iter().enumerate() {
            s.push_str(&format!("{j},{c}\n"));
        }
        s
    }
}

impl fmt::Display for IntPoly {
    /// Renders e.g. `λ^5 - 3λ^3 + λ`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            if mag != 1 || j == 0 {
                write!(f, "{mag}")?;
            }
            match j {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{j}")?,
            }
        }
        Ok(())
    }
}

/// `q` of a raw entry slice via `q_k = λ q_{k(2:n)} - k_1 q_{k(3:n)}`,
/// swept from the right starting from `q_(empty) = λ` and `q_(length -1) = 1`.
pub fn q_of_entries(entries: &[i8]) -> IntPoly {
    let lambda = IntPoly::x();
    let mut next = lambda.clone(); // q of the suffix after the current entry
    let mut next2 = IntPoly::constant(1);
    for &k in entries.iter().rev() {
        let cur = lambda
            .mul(&next)
            .and_then(|a| a.sub(&next2.scale(k as i128)?))
            .expect("q_k coefficients are bounded by Fibonacci numbers of the length");
        next2 = next;
        next = cur;
    }
    next
}

/// `q_{k(i:j)}` in 1-based indexing, including the conventions
/// `λ`, `1`, `0` for `i - j = 1, 2, 3`.
pub fn q_span(k: &SignVector, i: usize, j: usize) -> IntPoly {
    if j + 1 >= i {
        if j + 1 == i {
            return IntPoly::x();
        }
        return q_of_entries(&k.segment(i, j));
    }
    match i - j {
        2 => IntPoly::constant(1),
        3 => IntPoly::zero(),
        d => panic!("q_span undefined for i - j = {d}"),
    }
}

/// `q_k`: monic of degree `n + 1`.
pub fn q_poly(k: &SignVector) -> IntPoly {
    q_of_entries(&k.entries())
}

/// `p_k(λ) = q_{k(1:n-1)}(λ) - k_n q_{k(2:n-2)}(λ)`, monic of degree `n`.
pub fn p_poly(k: &SignVector) -> Result<IntPoly> {
    let n = k.len();
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "p_k length",
            got: n.to_string(),
            need: "n >= 2",
        });
    }
    let head = q_span(k, 1, n - 1);
    let inner = q_span(k, 2, n - 2);
    head.sub(&inner.scale(k.get(n - 1) as i128)?)
}

/// `p_k` for `n = 1` as well: the periodic operator with period one is the
/// Laurent matrix with symbol `λ = e^{iφ} k_1 + e^{-iφ}`, so `p_k(λ) = λ`.
pub fn p_poly_any(k: &SignVector) -> IntPoly {
    if k.len() == 1 {
        IntPoly::x()
    } else {
        p_poly(k).expect("length checked")
    }
}

/// `p_k(λ) = λ q_{k(1:n-2)}(λ)`, valid only on `K`.
pub fn p_poly_via_k(k: &SignVector) -> Result<IntPoly> {
    if !k.is_in_k() {
        return Err(Error::NotInK(k.to_string()));
    }
    let n = k.len();
    Ok(q_span(k, 1, n - 2).shift(1))
}

/// Largest `m` accepted by the Chebyshev families; keeps coefficients in `i128`.
pub const MAX_CHEB: usize = 150;

fn check_cheb(m: usize) -> Result<()> {
    if m < 1 || m > MAX_CHEB {
        return Err(Error::OutOfRange {
            what: "Chebyshev index m",
            got: m.to_string(),
            need: "1 <= m <= 150",
        });
    }
    Ok(())
}

/// `P_m(λ) = λ U_{m-1}(λ/2)`, from the recurrence `V_{j+1} = λ V_j - V_{j-1}`
/// for `V_j(λ) = U_j(λ/2)`.
pub fn cheb_p(m: usize) -> Result<IntPoly> {
    check_cheb(m)?;
    let lambda = IntPoly::x();
    let mut prev = IntPoly::constant(1);
    let mut cur = lambda.clone();
    for _ in 1..m.saturating_sub(1) {
        let next = lambda.mul(&cur)?.sub(&prev)?;
        prev = cur;
        cur = next;
    }
    let v = if m == 1 { prev } else { cur };
    Ok(v.shift(1))
}

/// `Q_1 = λ`, `Q_2 = λ^3 + λ`, `Q_{m+1} = λ^2 Q_m + Q_{m-1}`.
pub fn cheb_q(m: usize) -> Result<IntPoly> {
    check_cheb(m)?;
    let mut prev = IntPoly::x();
    if m == 1 {
        return Ok(prev);
    }
    let mut cur = IntPoly::new(vec![0, 1, 0, 1]);
    for _ in 2..m {
        let next = cur.shift(2).add(&prev)?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `λ ↦ i^{-n} p(iλ)`, i.e. `c_j ↦ c_j i^{j-n}`. Fails when a nonzero
/// coefficient sits at a power of the wrong parity, since the result would
/// not be real.
pub fn star_transform(p: &IntPoly, n: usize) -> Result<IntPoly> {
    let mut out = Vec::with_capacity(p.coeffs().len());
    for (j, &c) in p.coeffs().iter().enumerate() {
        if c == 0 {
            out.push(0);
            continue;
        }
        let e = j as i64 - n as i64;
        if e.rem_euclid(2) != 0 {
            return Err(Error::NonRealStar { degree: j });
        }
        let sign = if (e / 2).rem_euclid(2) == 0 { 1 } else { -1 };
        out.push(c * sign);
    }
    Ok(IntPoly::new(out))
}

/// `P_m* = i^{-m} P_m(iλ)`.
pub fn cheb_p_star(m: usize) -> Result<IntPoly> {
    star_transform(&cheb_p(m)?, m)
}

/// One distinct member of `S` with every `k ∈ K` that produces it.
#[derive(Clone, Debug)]
pub struct SymmetryPoly {
    pub poly: IntPoly,
    pub witnesses: Vec<SignVector>,
}

/// Distinct polynomials of `S = {p_k : k ∈ K}` with `2 <= deg <= max_degree`,
/// ordered by degree, then by first witness.
pub fn symmetry_set(max_degree: usize) -> Result<Vec<SymmetryPoly>> {
    let mut out = Vec::new();
    for n in 2..=max_degree {
        let mut by_poly: BTreeMap<IntPoly, Vec<SignVector>> = BTreeMap::new();
        for k in enumerate_k(n)? {
            by_poly.entry(p_poly(&k)?).or_default().push(k);
        }
        let mut level: Vec<SymmetryPoly> = by_poly
            .into_iter()
            .map(|(poly, witnesses)| SymmetryPoly { poly, witnesses })
            .collect();
        level.sort_by_key(|s| s.witnesses[0]);
        out.extend(level);
    }
    Ok(out)
}

/// Named forms of `p` among `P_m`, `P_m*`, `Q_m`, `Q_m*` and compositions
/// `a∘b` of lower-degree members of `set`.
pub fn aliases(p: &IntPoly, set: &[SymmetryPoly]) -> Vec<String> {
    let d = p.degree();
    let mut names = Vec::new();
    if d < 1 {
        return names;
    }
    if cheb_p(d).as_ref() == Ok(p) {
        names.push(format!("P_{d}"));
    }
    if cheb_p_star(d).as_ref() == Ok(p) && cheb_p(d).as_ref() != Ok(p) {
        names.push(format!("P_{d}*"));
    }
    if d % 2 == 1 {
        let m = d.div_ceil(2);
        if let Ok(q) = cheb_q(m) {
            if &q == p {
                names.push(format!("Q_{m}"));
            } else if star_transform(&q, d).as_ref() == Ok(p) {
                names.push(format!("Q_{m}*"));
            }
        }
    }
    for a in set {
        let da = a.poly.degree();
        if da < 2 || da >= d || d % da != 0 {
            continue;
        }
        for b in set {
            if b.poly.degree() * da != d {
                continue;
            }
            if a.poly.compose(&b.poly).as_ref() == Ok(p) {
                names.push(format!("[{}]∘[{}]", a.poly, b.poly));
            }
        }
    }
    names
}
