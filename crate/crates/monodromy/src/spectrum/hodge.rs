use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::SpectrumError;
use crate::ehrhart::{LaurentBiPoly, UniPoly};
use crate::zeta::RootOfUnity;

/// `E_λ(F₀; u, v)` for one eigenvalue `λ ≠ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EHDPolynomial {
    pub n: usize,
    pub lambda: RootOfUnity,
    pub poly: LaurentBiPoly,
}

impl EHDPolynomial {
    /// `e^{p,q}`: the coefficient of `u^p v^q`.
    pub fn e(&self, p: i64, q: i64) -> BigInt {
        self.poly.coeff(p, q)
    }

    fn sign(&self) -> BigInt {
        BigInt::from(if self.n % 2 == 1 { 1 } else { -1 })
    }

    /// `h^{p,q}_λ(H^{n−1})`; only the middle cohomology contributes.
    pub fn hodge_number(&self, p: i64, q: i64) -> BigInt {
        self.e(p, q) * self.sign()
    }

    pub fn hodge_numbers(&self) -> BTreeMap<(i64, i64), BigInt> {
        self.poly.terms().iter().map(|(&k, c)| (k, c * self.sign())).collect()
    }

    /// `dim H^{n−1}_λ`.
    pub fn dimension(&self) -> BigInt {
        self.hodge_numbers().values().sum()
    }

    /// `dim GR^W_w`.
    pub fn weight_graded(&self, w: i64) -> BigInt {
        self.hodge_numbers().iter().filter(|((p, q), _)| p + q == w).map(|(_, c)| c).sum()
    }

    /// `dim GR_F^p`.
    pub fn hodge_graded(&self, p: i64) -> BigInt {
        self.hodge_numbers().iter().filter(|((a, _), _)| *a == p).map(|(_, c)| c).sum()
    }

    /// Checks support in `[0, n−1]²`, nonnegativity and
    /// `e^{p,q} = e^{n−1−q, n−1−p}`.
    pub(crate) fn validate(&self) -> Result<(), SpectrumError> {
        let top = self.n as i64 - 1;
        for (&(p, q), h) in &self.hodge_numbers() {
            if !(0..=top).contains(&p) || !(0..=top).contains(&q) {
                return Err(SpectrumError::HypothesisViolation(format!("E_{} has a term u^{p} v^{q}", self.lambda)));
            }
            if h.is_negative() {
                return Err(SpectrumError::HypothesisViolation(format!("h^{{{p},{q}}}_{} = {h} < 0", self.lambda)));
            }
            if self.e(p, q) != self.e(top - q, top - p) {
                return Err(SpectrumError::HypothesisViolation(format!(
                    "Hodge symmetry fails for E_{} at ({p}, {q})",
                    self.lambda
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for EHDPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Coefficients `l̃_i` of `l = Σ_i l̃_i (t^i + … + t^{d−i})`.
pub fn tilde_l(l: &UniPoly, d: usize) -> Result<UniPoly, SpectrumError> {
    if !l.is_palindromic(d) {
        return Err(SpectrumError::NotPalindromic { poly: l.clone(), span: d });
    }
    let coeffs: Vec<BigInt> = (0..=d / 2)
        .map(|i| if i == 0 { l.coeff(0) } else { l.coeff(i) - l.coeff(i - 1) })
        .collect();
    if coeffs.iter().any(|c| c.is_negative()) {
        return Err(SpectrumError::NotUnimodal(l.clone()));
    }
    Ok(UniPoly::new(coeffs))
}

/// Which computation produced a Jordan block count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum JordanSource {
    /// Local h-polynomials of `S_ν` and `l*` of the Cayley cells.
    ViaLocalH,
    /// Weight grading of `E_λ`.
    ViaWeights,
    /// Vertex and edge census for the two largest sizes.
    ViaExtremes,
}

impl fmt::Display for JordanSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JordanSource::ViaLocalH => "via_local_h",
            JordanSource::ViaWeights => "via_weights",
            JordanSource::ViaExtremes => "via_extremes",
        })
    }
}

/// Numbers `J_{k,λ}` of Jordan blocks of size `k` for one eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanCounts {
    pub n: usize,
    pub lambda: RootOfUnity,
    /// `via_local_h[k − 1] = J_k`.
    pub via_local_h: Vec<BigInt>,
    pub via_weights: Vec<BigInt>,
    /// `(J_n, J_{n−1})`.
    pub via_extremes: (BigInt, BigInt),
}

impl JordanCounts {
    /// `J_{k,λ}`, zero outside `1..=n`.
    pub fn get(&self, k: usize) -> BigInt {
        if k == 0 {
            return BigInt::zero();
        }
        self.via_weights.get(k - 1).cloned().unwrap_or_default()
    }

    /// Nonzero `(k, J_k)`.
    pub fn blocks(&self) -> Vec<(usize, BigInt)> {
        (1..=self.n).map(|k| (k, self.get(k))).filter(|(_, c)| !c.is_zero()).collect()
    }

    /// `Σ_k k · J_k`.
    pub fn total_dimension(&self) -> BigInt {
        (1..=self.n).map(|k| self.get(k) * BigInt::from(k)).sum()
    }

    /// Computations that produced the count for size `k`.
    pub fn sources(&self, k: usize) -> Vec<JordanSource> {
        let mut out = vec![JordanSource::ViaLocalH, JordanSource::ViaWeights];
        if k >= 1 && (k == self.n || k + 1 == self.n) {
            out.push(JordanSource::ViaExtremes);
        }
        out
    }
}

/// `J_k = dim GR^W_{n−k} − dim GR^W_{n−k−2}`.
pub(crate) fn jordan_from_weights(e: &EHDPolynomial) -> Vec<BigInt> {
    let n = e.n as i64;
    (1..=n).map(|k| e.weight_graded(n - k) - e.weight_graded(n - k - 2)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tilde_l_examples() {
        assert_eq!(tilde_l(&UniPoly::from_i64(&[0, 1]), 2).unwrap(), UniPoly::from_i64(&[0, 1]));
        assert!(matches!(tilde_l(&UniPoly::from_i64(&[1, 0, 1]), 2), Err(SpectrumError::NotUnimodal(_))));
        assert_eq!(tilde_l(&UniPoly::zero(), 3).unwrap(), UniPoly::zero());
        assert!(matches!(tilde_l(&UniPoly::from_i64(&[1, 2]), 2), Err(SpectrumError::NotPalindromic { .. })));
        assert_eq!(tilde_l(&UniPoly::from_i64(&[1, 3, 3, 1]), 3).unwrap(), UniPoly::from_i64(&[1, 2]));
    }

    #[test]
    fn weights_to_blocks() {
        // One block of size 2 for n = 2: h^{0,0} = h^{1,1} = 1.
        let mut poly = LaurentBiPoly::monomial(0, 0, BigInt::from(-1));
        poly.add_term(1, 1, BigInt::from(-1));
        let e = EHDPolynomial { n: 2, lambda: RootOfUnity::new(1, 2).unwrap(), poly };
        e.validate().unwrap();
        assert_eq!(jordan_from_weights(&e), vec![BigInt::zero(), BigInt::from(1)]);
        assert_eq!(e.dimension(), BigInt::from(2));
    }
}
