//! Sign patterns `k = (k_1, ..., k_n) ∈ {±1}^n`.
//!
//! A [`SignVector`] is packed into a `u64`: entry `j` (0-based) lives in bit
//! `n - 1 - j`, with a set bit meaning `+1`. Comparing the packed words of two
//! vectors of equal length is then lexicographic comparison with `-1 < +1`.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Largest supported pattern length.
pub const MAX_LEN: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    len: u8,
    bits: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl SignVector {
    pub fn new(entries: &[i8]) -> Result<Self> {
        check_len(entries.len())?;
        let mut bits = 0u64;
        for &e in entries {
            bits <<= 1;
            match e {
                1 => bits |= 1,
                -1 => {}
                other => return Err(Error::InvalidSign(other as i64)),
            }
        }
        Ok(Self {
            len: entries.len() as u8,
            bits,
        })
    }

    /// Builds a vector from its packed representation; bits above `len` are ignored.
    pub fn from_bits(bits: u64, len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(Self {
            len: len as u8,
            bits: bits & mask(len),
        })
    }

    pub fn all_ones(len: usize) -> Result<Self> {
        Self::from_bits(u64::MAX, len)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entry `j`, 0-based.
    pub fn get(&self, j: usize) -> i8 {
        assert!(
            j < self.len(),
            "index {j} out of range for length {}",
            self.len
        );
        if (self.bits >> (self.len() - 1 - j)) & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i8> + '_ {
        (0..self.len()).map(move |j| self.get(j))
    }

    pub fn entries(&self) -> Vec<i8> {
        self.iter().collect()
    }

    pub fn product(&self) -> i8 {
        let minus = self.len() as u32 - self.bits.count_ones();
        if minus % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn parity(&self) -> Parity {
        if self.product() == 1 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(k_n, ..., k_1)`.
    pub fn reverse(&self) -> Self {
        let n = self.len();
        let rev = self.bits.reverse_bits() >> (64 - n);
        Self {
            len: self.len,
            bits: rev,
        }
    }

    pub fn negate(&self) -> Self {
        Self {
            len: self.len,
            bits: !self.bits & mask(self.len()),
        }
    }

    /// Rotation with `ℓ_{j+s} = k_j` (indices mod n); `s = 1` moves `k_n` to the front.
    pub fn cyclic_shift(&self, s: i64) -> Self {
        let n = self.len();
        let s = s.rem_euclid(n as i64) as usize;
        if s == 0 {
            return *self;
        }
        // Moving entries right by s is a right rotation of the packed word.
        let bits = ((self.bits >> s) | (self.bits << (n - s))) & mask(n);
        Self {
            len: self.len,
            bits,
        }
    }

    /// Entries `k_i..=k_j` in 1-based indexing, as a plain slice.
    /// Empty when `j < i`.
    pub fn segment(&self, i: usize, j: usize) -> Vec<i8> {
        if j < i {
            return Vec::new();
        }
        (i..=j).map(|t| self.get(t - 1)).collect()
    }

    /// Membership in `K`: `k_{n-1} = -1`, `k_n = +1` and `(k_1, ..., k_{n-2})`
    /// a palindrome.
    pub fn is_in_k(&self) -> bool {
        let n = self.len();
        if n < 2 || self.get(n - 2) != -1 || self.get(n - 1) != 1 {
            return false;
        }
        let m = n - 2;
        (0..m / 2).all(|j| self.get(j) == self.get(m - 1 - j))
    }

    /// Compact `+`/`-` form, e.g. `+-+`. Safe inside CSV fields.
    pub fn to_compact(&self) -> String {
        self.iter().map(|e| if e > 0 { '+' } else { '-' }).collect()
    }

    /// All `2^n` patterns of length `n` in lexicographic order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = SignVector>> {
        check_len(n)?;
        if n > 32 {
            return Err(Error::OutOfRange {
                what: "exhaustive enumeration length",
                got: n.to_string(),
                need: "n <= 32",
            });
        }
        Ok((0u64..(1u64 << n)).map(move |bits| SignVector { len: n as u8, bits }))
    }
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 || len > MAX_LEN {
        return Err(Error::InvalidLength { len, max: MAX_LEN });
    }
    Ok(())
}

/// All members of `K` of length `n`, lexicographically ordered.
///
/// A member is fixed by the first `⌈(n-2)/2⌉` entries of its palindromic
/// prefix, so there are `2^{⌈n/2⌉-1}` of them, and ordering the free halves
/// orders the whole vectors.
pub fn enumerate_k(n: usize) -> Result<Vec<SignVector>> {
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "enumerate_K length",
            got: n.to_string(),
            need: "n >= 2",
        });
    }
    check_len(n)?;
    let m = n - 2;
    let free = m.div_ceil(2);
    if free > 31 {
        return Err(Error::OutOfRange {
            what: "enumerate_K length",
            got: n.to_string(),
            need: "n <= 64",
        });
    }
    let mut out = Vec::with_capacity(1 << free);
    let mut entries = vec![0i8; n];
    for half in 0u64..(1u64 << free) {
        for j in 0..free {
            let e = if (half >> (free - 1 - j)) & 1 == 1 {
                1
            } else {
                -1
            };
            entries[j] = e;
            entries[m - 1 - j] = e;
        }
        entries[n - 2] = -1;
        entries[n - 1] = 1;
        out.push(SignVector::new(&entries)?);
    }
    Ok(out)
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, e) in self.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    /// Accepts `(1,-1,1)`, `1,-1,1` or the compact `+-+`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.is_empty() && s.chars().all(|c| c == '+' || c == '-') {
            let entries: Vec<i8> = s.chars().map(|c| if c == '+' { 1 } else { -1 }).collect();
            return SignVector::new(&entries);
        }
        let inner = s.trim_start_matches('(').trim_end_matches(')');
        let entries = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i8>()
                    .map_err(|_| Error::Parse(format!("bad sign entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<i8>>>()?;
        SignVector::new(&entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(e: &[i8]) -> SignVector {
        SignVector::new(e).unwrap()
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(sv(&[1, -1, 1]).reverse(), sv(&[1, -1, 1]));
        assert_eq!(sv(&[-1, 1]).reverse(), sv(&[1, -1]));
        assert_eq!(sv(&[1, 1, -1, 1]).reverse(), sv(&[1, -1, 1, 1]));
    }

    #[test]
    fn negate_examples() {
        assert_eq!(sv(&[-1, 1]).negate(), sv(&[1, -1]));
        assert_eq!(sv(&[1, 1]).negate(), sv(&[-1, -1]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(sv(&[1, -1, 1]).cyclic_shift(1), sv(&[1, 1, -1]));
        assert_eq!(sv(&[-1, 1]).cyclic_shift(1), sv(&[1, -1]));
        let k = sv(&[1, 1, -1, 1, -1]);
        assert_eq!(k.cyclic_shift(5), k);
        assert_eq!(k.cyclic_shift(-1).cyclic_shift(1), k);
        assert_eq!(k.cyclic_shift(1).entries(), vec![-1, 1, 1, -1, 1]);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(sv(&[-1, 1]).parity(), Parity::Odd);
        assert_eq!(sv(&[1, 1]).parity(), Parity::Even);
        assert_eq!(sv(&[1, -1, -1, 1, -1, 1]).parity(), Parity::Odd);
    }

    #[test]
    fn k_membership() {
        assert!(sv(&[-1, 1]).is_in_k());
        assert!(sv(&[1, -1, -1, 1, -1, 1]).is_in_k());
        assert!(!sv(&[1, -1, 1, 1]).is_in_k());
        assert!(sv(&[1, -1, 1]).is_in_k());
        assert!(!sv(&[1]).is_in_k());
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_k(2).unwrap(), vec![sv(&[-1, 1])]);
        assert_eq!(enumerate_k(6).unwrap().len(), 4);
        assert!(enumerate_k(1).is_err());
        // n = 5 against an exhaustive filter of all 32 vectors.
        let brute: Vec<_> = SignVector::all(5)
            .unwrap()
            .filter(|k| k.is_in_k())
            .collect();
        assert_eq!(enumerate_k(5).unwrap(), brute);
        assert_eq!(brute.len(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SignVector::new(&[]).is_err());
        assert!(SignVector::new(&[1, 0]).is_err());
        assert!(SignVector::new(&[1; 65]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let k: SignVector = "(1,-1,1)".parse().unwrap();
        assert_eq!(k, sv(&[1, -1, 1]));
        assert_eq!(k.to_string(), "(1,-1,1)");
        assert_eq!(k.to_compact(), "+-+");
        assert_eq!("+-+".parse::<SignVector>().unwrap(), k);
        assert!("(1,2)".parse::<SignVector>().is_err());
    }

    #[test]
    fn full_length_ops() {
        let k = SignVector::all_ones(64).unwrap();
        assert_eq!(k.reverse(), k);
        assert_eq!(k.negate().negate(), k);
        assert_eq!(k.cyclic_shift(7), k);
    }
}
