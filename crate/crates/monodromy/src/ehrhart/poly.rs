use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Univariate integer polynomial, coefficients in increasing degree with
/// no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly(Vec<BigInt>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly(vec![])
    }

    pub fn one() -> Self {
        UniPoly(vec![BigInt::one()])
    }

    pub fn monomial(k: usize, c: BigInt) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `(t − 1)^k`.
    pub fn t_minus_one_pow(k: usize) -> Self {
        let base = UniPoly::from_i64(&[-1, 1]);
        (0..k).fold(UniPoly::one(), |acc, _| &acc * &base)
    }

    /// `(1 − t)^k`.
    pub fn one_minus_t_pow(k: usize) -> Self {
        let base = UniPoly::from_i64(&[1, -1]);
        (0..k).fold(UniPoly::one(), |acc, _| &acc * &base)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    /// `t^k · p(1/t)`; requires `deg p ≤ k`.
    pub fn reverse(&self, k: usize) -> Self {
        assert!(self.0.len() <= k + 1, "reversal span {k} below degree of {self}");
        let mut v = vec![BigInt::zero(); k + 1];
        for (i, c) in self.0.iter().enumerate() {
            v[k - i] = c.clone();
        }
        Self::new(v)
    }

    /// Terms of degree at most `k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::new(self.0.iter().take(k + 1).cloned().collect())
    }

    pub fn eval_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// `p_i = p_{span − i}` for all `i`.
    pub fn is_palindromic(&self, span: usize) -> bool {
        self.0.len() <= span + 1 && *self == self.reverse(span)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &BigInt, mono: &str) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    if mono.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        f.write_str(mono)
    } else {
        write!(f, "{abs}*{mono}")
    }
}

fn power(var: &str, k: i64) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            write_term(f, first, c, &power("t", i as i64))?;
            first = false;
        }
        Ok(())
    }
}

/// Integer Laurent polynomial in `u, v`, keyed by `(deg_u, deg_v)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentBiPoly(BTreeMap<(i64, i64), BigInt>);

impl LaurentBiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(i: i64, j: i64, c: BigInt) -> Self {
        let mut out = Self::zero();
        out.add_term(i, j, c);
        out
    }

    pub fn add_term(&mut self, i: i64, j: i64, c: BigInt) {
        let slot = self.0.entry((i, j)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&(i, j));
        }
    }

    /// `v^k · p(u/v)`.
    pub fn homogenize(p: &UniPoly, k: i64) -> Self {
        let mut out = Self::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as i64, k - i as i64, c.clone());
        }
        out
    }

    /// `p(uv)`.
    pub fn diagonal(p: &UniPoly) -> Self {
        let mut out = Self::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as i64, i as i64, c.clone());
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), BigInt> {
        &self.0
    }

    pub fn coeff(&self, i: i64, j: i64) -> BigInt {
        self.0.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// True when no negative exponent survives.
    pub fn is_polynomial(&self) -> bool {
        self.0.keys().all(|&(i, j)| i >= 0 && j >= 0)
    }

    /// Multiplies by `u^i v^j` (negative shifts divide).
    pub fn shift(&self, i: i64, j: i64) -> Self {
        LaurentBiPoly(self.0.iter().map(|(&(a, b), c)| ((a + i, b + j), c.clone())).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (&(a, b), x) in &self.0 {
            out.add_term(a, b, x * c);
        }
        out
    }

    /// Exchange of `u` and `v`.
    pub fn swap(&self) -> Self {
        LaurentBiPoly(self.0.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect())
    }

    /// Specialization `v = 1`, as a polynomial in `u` (requires
    /// nonnegative `u`-degrees).
    pub fn at_v_one(&self) -> UniPoly {
        let top = self.0.keys().map(|&(a, _)| a).max().unwrap_or(-1);
        let mut v = vec![BigInt::zero(); (top + 1).max(0) as usize];
        for (&(a, _), c) in &self.0 {
            assert!(a >= 0, "negative u-degree");
            v[a as usize] += c;
        }
        UniPoly::new(v)
    }
}

impl Add for &LaurentBiPoly {
    type Output = LaurentBiPoly;

    fn add(self, rhs: &LaurentBiPoly) -> LaurentBiPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.0 {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Mul for &LaurentBiPoly {
    type Output = LaurentBiPoly;

    fn mul(self, rhs: &LaurentBiPoly) -> LaurentBiPoly {
        let mut out = LaurentBiPoly::zero();
        for (&(a, b), x) in &self.0 {
            for (&(c, d), y) in &rhs.0 {
                out.add_term(a + c, b + d, x * y);
            }
        }
        out
    }
}

impl fmt::Display for LaurentBiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.0 {
            let mono: String = [power("u", i), power("v", j)].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("*");
            write_term(f, first, c, &mono)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_reversal() {
        let p = UniPoly::from_i64(&[1, 2]);
        assert_eq!(&p * &p, UniPoly::from_i64(&[1, 4, 4]));
        assert_eq!(&p - &p, UniPoly::zero());
        assert_eq!(p.reverse(3), UniPoly::from_i64(&[0, 0, 2, 1]));
        assert_eq!(UniPoly::t_minus_one_pow(2), UniPoly::from_i64(&[1, -2, 1]));
        assert!(UniPoly::from_i64(&[0, 1]).is_palindromic(2));
        assert!(!UniPoly::from_i64(&[1, 1]).is_palindromic(2));
        assert_eq!(UniPoly::from_i64(&[-1, 0, 3]).to_string(), "-1 + 3*t^2");
    }

    #[test]
    fn bivariate() {
        let p = UniPoly::from_i64(&[0, 1]);
        let h = LaurentBiPoly::homogenize(&p, 2);
        assert_eq!(h, LaurentBiPoly::monomial(1, 1, BigInt::one()));
        assert_eq!(h.to_string(), "u*v");
        let d = LaurentBiPoly::diagonal(&UniPoly::from_i64(&[1, 1]));
        assert_eq!((&h * &d).coeff(2, 2), BigInt::one());
        assert!(!h.shift(-2, 0).is_polynomial());
        assert_eq!(LaurentBiPoly::monomial(1, 0, BigInt::from(3)).swap().coeff(0, 1), BigInt::from(3));
    }
}
