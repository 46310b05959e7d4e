//! Structured encodings of the engine's values for machine output, and
//! the parsers that read them back.

use monodromy::spectrum::PuiseuxPolynomial;
use monodromy::zeta::CyclotomicProduct;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("expected {0}")]
    Shape(&'static str),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("cannot read {text:?} as a cyclotomic product at position {pos}")]
    Cyclotomic { text: String, pos: usize },
}

/// Integers that fit `i64` become JSON numbers, larger ones strings.
pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn read_int(v: &Value) -> Result<BigInt, DecodeError> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or(DecodeError::Shape("an integer")),
        Value::String(s) => s.parse().map_err(|_| DecodeError::Shape("an integer")),
        _ => Err(DecodeError::Shape("an integer")),
    }
}

pub fn rational(x: &BigRational) -> Value {
    json!(x.to_string())
}

pub fn read_rational(v: &Value) -> Result<BigRational, DecodeError> {
    let s = v.as_str().ok_or(DecodeError::Shape("a rational string"))?;
    s.parse().map_err(|_| DecodeError::Rational(s.to_string()))
}

/// `[{"d": 2, "exp": 1}, {"d": 4, "exp": -1}]`.
pub fn cyclotomic(z: &CyclotomicProduct) -> Value {
    Value::Array(z.factors().iter().map(|(d, e)| json!({ "d": int(d), "exp": int(e) })).collect())
}

pub fn read_cyclotomic(v: &Value) -> Result<CyclotomicProduct, DecodeError> {
    let items = v.as_array().ok_or(DecodeError::Shape("an array of {d, exp}"))?;
    let mut factors = Vec::with_capacity(items.len());
    for item in items {
        let d = read_int(item.get("d").ok_or(DecodeError::Shape("field d"))?)?;
        let e = read_int(item.get("exp").ok_or(DecodeError::Shape("field exp"))?)?;
        if d <= BigInt::zero() {
            return Err(DecodeError::Shape("a positive d"));
        }
        factors.push((d, e));
    }
    Ok(CyclotomicProduct::from_factors(factors))
}

/// `[{"exp": "1/4", "coeff": 1}, …]`.
pub fn puiseux(s: &PuiseuxPolynomial) -> Value {
    Value::Array(s.terms().iter().map(|(b, c)| json!({ "exp": rational(b), "coeff": int(c) })).collect())
}

pub fn read_puiseux(v: &Value) -> Result<PuiseuxPolynomial, DecodeError> {
    let items = v.as_array().ok_or(DecodeError::Shape("an array of {exp, coeff}"))?;
    let mut out = PuiseuxPolynomial::zero();
    for item in items {
        let b = read_rational(item.get("exp").ok_or(DecodeError::Shape("field exp"))?)?;
        let c = read_int(item.get("coeff").ok_or(DecodeError::Shape("field coeff"))?)?;
        out.add_term(b, c);
    }
    Ok(out)
}

/// Reads the factored text form, e.g. `(1-t^2)(1-t^4)^{-1}` or `1`.
pub fn parse_cyclotomic(text: &str) -> Result<CyclotomicProduct, DecodeError> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let fail = |pos: usize| DecodeError::Cyclotomic { text: text.to_string(), pos };
    if s == ['1'] {
        return Ok(CyclotomicProduct::one());
    }
    let mut at = 0;
    let expect = |at: &mut usize, lit: &str| -> Result<(), DecodeError> {
        for c in lit.chars() {
            if s.get(*at) != Some(&c) {
                return Err(fail(*at));
            }
            *at += 1;
        }
        Ok(())
    };
    let number = |at: &mut usize| -> Result<BigInt, DecodeError> {
        let start = *at;
        if s.get(*at) == Some(&'-') {
            *at += 1;
        }
        while s.get(*at).is_some_and(|c| c.is_ascii_digit()) {
            *at += 1;
        }
        s[start..*at].iter().collect::<String>().parse().map_err(|_| fail(start))
    };
    let mut out = CyclotomicProduct::one();
    if s.is_empty() {
        return Err(fail(0));
    }
    while at < s.len() {
        expect(&mut at, "(1-t")?;
        let d = if s.get(at) == Some(&'^') {
            at += 1;
            number(&mut at)?
        } else {
            BigInt::from(1)
        };
        expect(&mut at, ")")?;
        let e = if s.get(at) == Some(&'^') {
            at += 1;
            expect(&mut at, "{")?;
            let e = number(&mut at)?;
            expect(&mut at, "}")?;
            e
        } else {
            BigInt::from(1)
        };
        if d <= BigInt::zero() {
            return Err(fail(at));
        }
        out.mul_factor(d, e);
    }
    Ok(out)
}
