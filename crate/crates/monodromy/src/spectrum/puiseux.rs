use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::zeta::RootOfUnity;

/// Finite sum `Σ c_β t^β` with rational exponents and integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PuiseuxPolynomial(BTreeMap<BigRational, BigInt>);

impl PuiseuxPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(beta: BigRational, c: BigInt) -> Self {
        let mut out = Self::zero();
        out.add_term(beta, c);
        out
    }

    pub fn add_term(&mut self, beta: BigRational, c: BigInt) {
        let slot = self.0.entry(beta.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&beta);
        }
    }

    pub fn terms(&self) -> &BTreeMap<BigRational, BigInt> {
        &self.0
    }

    pub fn coeff(&self, beta: &BigRational) -> BigInt {
        self.0.get(beta).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> BigInt {
        self.0.values().sum()
    }

    /// Sum of the coefficients at exponents `β` with `exp(2πiβ) = λ`.
    pub fn mass_at(&self, lambda: &RootOfUnity) -> BigInt {
        self.0.iter().filter(|(b, _)| RootOfUnity::from_fraction(b) == *lambda).map(|(_, c)| c).sum()
    }

    /// `t^k · p(1/t)`.
    pub fn reflect(&self, k: &BigRational) -> Self {
        PuiseuxPolynomial(self.0.iter().map(|(b, c)| (k - b, c.clone())).collect())
    }

    /// Terms with exponent strictly below `bound`.
    pub fn truncate_below(&self, bound: &BigRational) -> Self {
        PuiseuxPolynomial(self.0.iter().filter(|(b, _)| *b < bound).map(|(b, c)| (b.clone(), c.clone())).collect())
    }

    /// Multiplies by the integer polynomial with coefficients `p` (in `t`).
    pub fn mul_poly(&self, p: &[BigInt]) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.0 {
            for (i, a) in p.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                out.add_term(b + BigRational::from_integer(i.into()), c * a);
            }
        }
        out
    }
}

impl Add for &PuiseuxPolynomial {
    type Output = PuiseuxPolynomial;

    fn add(self, rhs: &PuiseuxPolynomial) -> PuiseuxPolynomial {
        let mut out = self.clone();
        for (b, c) in &rhs.0 {
            out.add_term(b.clone(), c.clone());
        }
        out
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, b: &BigRational) -> fmt::Result {
    if b.is_integer() {
        if b.is_one() {
            f.write_str("t")
        } else {
            write!(f, "t^{b}")
        }
    } else {
        write!(f, "t^({b})")
    }
}

/// Renders e.g. `t^(1/4) + 2*t^(7/4) - t^2`.
impl fmt::Display for PuiseuxPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.0.iter().enumerate() {
            match (i == 0, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            let abs = c.abs();
            if b.is_zero() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write_exponent(f, b)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid Puiseux polynomial at byte {0}")]
pub struct ParsePuiseuxError(pub usize);

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn rational(&mut self) -> Result<BigRational, ParsePuiseuxError> {
        let num = self.integer().ok_or(ParsePuiseuxError(self.pos))?;
        if self.eat(b'/') {
            let den = self.integer().filter(|d| d.is_positive()).ok_or(ParsePuiseuxError(self.pos))?;
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn term(&mut self) -> Result<(BigRational, BigInt), ParsePuiseuxError> {
        self.skip_ws();
        let mut c = BigInt::one();
        if self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            c = self.integer().ok_or(ParsePuiseuxError(self.pos))?;
            if !self.eat(b'*') {
                return Ok((BigRational::zero(), c));
            }
        }
        if !self.eat(b't') {
            return Err(ParsePuiseuxError(self.pos));
        }
        if !self.eat(b'^') {
            return Ok((BigRational::one(), c));
        }
        if self.eat(b'(') {
            let b = self.rational()?;
            if !self.eat(b')') {
                return Err(ParsePuiseuxError(self.pos));
            }
            Ok((b, c))
        } else {
            Ok((BigRational::from_integer(self.integer().ok_or(ParsePuiseuxError(self.pos))?), c))
        }
    }
}

impl FromStr for PuiseuxPolynomial {
    type Err = ParsePuiseuxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor { s: s.as_bytes(), pos: 0 };
        let mut out = PuiseuxPolynomial::zero();
        if cur.eat(b'0') {
            cur.skip_ws();
            return if cur.pos == s.len() { Ok(out) } else { Err(ParsePuiseuxError(cur.pos)) };
        }
        let mut sign = if cur.eat(b'-') { -BigInt::one() } else { BigInt::one() };
        loop {
            let (b, c) = cur.term()?;
            out.add_term(b, c * &sign);
            if cur.eat(b'+') {
                sign = BigInt::one();
            } else if cur.eat(b'-') {
                sign = -BigInt::one();
            } else {
                break;
            }
        }
        cur.skip_ws();
        if cur.pos != s.len() {
            return Err(ParsePuiseuxError(cur.pos));
        }
        Ok(out)
    }
}
