//! Polynomial expressions in `x, y, z, w` or `x1 … xn`.
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := int ('/' int)? | var ('^' int)?
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;

use monodromy::lattice_core::IntVector;
use monodromy::newton::SparsePolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: &'static str },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("unknown variable {name:?} at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("zero polynomial")]
    ZeroPolynomial,
}

const LETTERS: [char; 4] = ['x', 'y', 'z', 'w'];

struct Cursor {
    chars: Vec<(usize, char)>,
    at: usize,
    len: usize,
    n: usize,
}

impl Cursor {
    fn new(src: &str, n: usize) -> Self {
        let chars: Vec<(usize, char)> = src.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
        Cursor { chars, at: 0, len: src.chars().count(), n }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.len, |&(p, _)| p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn syntax(&self, msg: &'static str) -> ParseError {
        ParseError::Syntax { pos: self.pos(), msg }
    }

    /// Digits that are adjacent in the source, so `x1 2` is not `x12`.
    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        let mut last: Option<usize> = None;
        while let Some(&(p, c)) = self.chars.get(self.at) {
            if !c.is_ascii_digit() || last.is_some_and(|l| p != l + 1) {
                break;
            }
            s.push(c);
            last = Some(p);
            self.at += 1;
        }
        (!s.is_empty()).then_some(s)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let d = self.digits().ok_or_else(|| self.syntax("expected an integer"))?;
        Ok(d.parse().expect("ASCII digits"))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let pos = self.pos();
        if self.peek() == Some('-') {
            return Err(ParseError::NegativeExponent { pos });
        }
        self.eat('+');
        let e = self.integer()?;
        i64::try_from(e).map_err(|_| ParseError::Syntax { pos, msg: "exponent too large" })
    }

    fn variable(&mut self) -> Result<usize, ParseError> {
        let (pos, c) = self.chars[self.at];
        self.at += 1;
        let adjacent_digit = self.chars.get(self.at).is_some_and(|&(p, d)| p == pos + 1 && d.is_ascii_digit());
        let (name, index) = if c == 'x' && adjacent_digit {
            let d = self.digits().unwrap();
            let i: usize = d.parse().unwrap_or(0);
            (format!("x{d}"), i.checked_sub(1))
        } else {
            (c.to_string(), LETTERS.iter().position(|&l| l == c))
        };
        match index {
            Some(i) if i < self.n => Ok(i),
            _ => Err(ParseError::UnknownVariable { pos, name }),
        }
    }

    fn term(&mut self) -> Result<(IntVector, BigRational), ParseError> {
        let mut coeff = BigRational::one();
        let mut exp = vec![0i64; self.n];
        let mut first = true;
        loop {
            let starred = !first && self.eat('*');
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let den = if self.eat('/') { self.integer()? } else { BigInt::one() };
                    if den.is_zero() {
                        return Err(self.syntax("zero denominator"));
                    }
                    coeff *= BigRational::new(num, den);
                }
                Some(c) if c.is_alphabetic() => {
                    let i = self.variable()?;
                    exp[i] += self.exponent()?;
                }
                _ if first || starred => return Err(self.syntax("expected a coefficient or a variable")),
                _ => break,
            }
            first = false;
        }
        Ok((IntVector::from_i64(&exp), coeff))
    }
}

/// Parses `text` as a polynomial in `n` variables, combining like terms.
pub fn parse_polynomial(text: &str, n: usize) -> Result<SparsePolynomial, ParseError> {
    let mut cur = Cursor::new(text, n);
    let mut terms = Vec::new();
    let mut negative = cur.eat('-');
    if !negative {
        cur.eat('+');
    }
    loop {
        let (e, c) = cur.term()?;
        terms.push((e, if negative { -c } else { c }));
        if cur.eat('+') {
            negative = false;
        } else if cur.eat('-') {
            negative = true;
        } else if cur.peek().is_none() {
            break;
        } else {
            return Err(cur.syntax("expected '+', '-' or the end of input"));
        }
    }
    SparsePolynomial::new(n, terms).map_err(|_| ParseError::ZeroPolynomial)
}

/// Names used by [`format_polynomial`]: `x, y, z, w` up to four
/// variables, `x1 … xn` beyond.
pub fn variable_name(i: usize, n: usize) -> String {
    if n <= LETTERS.len() {
        LETTERS[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// Canonical rendering, terms by increasing total degree. The output
/// parses back to the same polynomial.
pub fn format_polynomial(g: &SparsePolynomial) -> String {
    let n = g.n();
    let mut terms: Vec<(&IntVector, &BigRational)> = g.terms().iter().collect();
    terms.sort_by_key(|(e, _)| (e.coords().iter().sum::<BigInt>(), std::cmp::Reverse((*e).clone())));
    let mut out = String::new();
    for (i, (e, c)) in terms.into_iter().enumerate() {
        match (i == 0, c.is_negative()) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        let mut factors: Vec<String> = Vec::new();
        let c = c.abs();
        if !c.is_one() || e.is_zero() {
            factors.push(c.to_string());
        }
        for (j, k) in e.coords().iter().enumerate().filter(|(_, k)| !k.is_zero()) {
            let v = variable_name(j, n);
            factors.push(if k.is_one() { v } else { format!("{v}^{k}") });
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// Exponent map with `i64` keys, handy for tests and reports.
pub fn exponent_map(g: &SparsePolynomial) -> BTreeMap<Vec<i64>, BigRational> {
    g.terms().iter().map(|(e, c)| (e.to_i64_vec().expect("moderate exponents"), c.clone())).collect()
}

/// `exp ↦ coefficient` rendered as e.g. `{(2,0): 1, (0,3): 1}`.
pub fn describe_terms(g: &SparsePolynomial) -> String {
    let mut s = String::from("{");
    for (i, (e, c)) in exponent_map(g).iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let coords: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        let _ = write!(s, "({}): {c}", coords.join(","));
    }
    s.push('}');
    s
}
