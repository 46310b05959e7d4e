//! Cayley cells, the weighted region `(K, ν, S_ν)` and the invariants
//! read off from it: equivariant Hodge-Deligne polynomials, Jordan block
//! counts for eigenvalues `λ ≠ 1`, and the reduced Hodge spectrum.
//!
//! Everything here is for the local Milnor fiber at the origin of a pair
//! `(P, Q)` of convenient polynomials with `Γ₊(P) ⊂⊂ Γ₊(Q)`.

mod cells;
mod hodge;
mod puiseux;

pub use cells::{build_weighted_region, cayley_cells, CayleyCell, WeightedRegion};
pub use hodge::{tilde_l, EHDPolynomial, JordanCounts, JordanSource};
pub use puiseux::{ParsePuiseuxError, PuiseuxPolynomial};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ehrhart::{local_h, EhrhartError, UniPoly, WeightedEhrhart};
use crate::lattice_core::GeometryError;
use crate::newton::{ContainmentWitness, MeroPair};
use crate::zeta::{multiplicity, RootOfUnity, ZetaError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectrumError {
    #[error("Hodge-theoretic invariants are only available in local mode")]
    WrongMode,
    #[error("{0} is not convenient")]
    NotConvenient(&'static str),
    #[error("Γ₊(P) is not properly contained in Γ₊(Q): {0}")]
    NotProperlyContained(ContainmentWitness),
    #[error("the eigenvalue 1 is not supported")]
    LambdaOne,
    #[error("{poly} is not palindromic of span {span}")]
    NotPalindromic { poly: UniPoly, span: usize },
    #[error("unimodality violated by {0}")]
    NotUnimodal(UniPoly),
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error(transparent)]
    Ehrhart(#[from] EhrhartError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn violation(msg: String) -> SpectrumError {
    SpectrumError::HypothesisViolation(msg)
}

/// Shared state for repeated queries on one pair: weighted Ehrhart
/// counts are cached across eigenvalues.
pub struct Analysis<'r> {
    pair: &'r MeroPair,
    region: &'r WeightedRegion,
    ehrhart: WeightedEhrhart<'r>,
}

impl<'r> Analysis<'r> {
    pub fn new(pair: &'r MeroPair, region: &'r WeightedRegion) -> Self {
        Analysis { pair, region, ehrhart: WeightedEhrhart::new(&region.nu) }
    }

    pub fn region(&self) -> &WeightedRegion {
        self.region
    }

    fn n(&self) -> usize {
        self.pair.n()
    }

    /// `lcm` of all `d_γ`.
    pub fn period(&self) -> BigInt {
        self.region.cells.iter().fold(BigInt::one(), |l, c| l.lcm(&c.d_gamma))
    }

    /// All `λ ≠ 1` whose order divides [`Self::period`]; no other
    /// eigenvalue can occur.
    pub fn eigenvalue_candidates(&self) -> Vec<RootOfUnity> {
        let m = self.period().to_u64().expect("period fits in u64");
        RootOfUnity::dividing(m).into_iter().filter(|l| !l.is_one()).collect()
    }

    /// `E_λ = (−1)^{n−1} l*_λ(K, ν; u, v) / (uv)`, validated.
    pub fn e_lambda(&self, lambda: &RootOfUnity) -> Result<EHDPolynomial, SpectrumError> {
        if lambda.is_one() {
            return Err(SpectrumError::LambdaOne);
        }
        let l = self.ehrhart.lstar_mixed(&self.region.subdivision, lambda)?;
        if let Some((&(p, q), _)) = l.terms().iter().find(|(&(p, q), _)| p < 1 || q < 1) {
            return Err(violation(format!("l*_{lambda}(K, ν) has a term u^{p} v^{q} not divisible by uv")));
        }
        let sign = BigInt::from(if self.n() % 2 == 1 { 1 } else { -1 });
        let e = EHDPolynomial { n: self.n(), lambda: *lambda, poly: l.shift(-1, -1).scale(&sign) };
        e.validate()?;
        Ok(e)
    }

    /// `J_{k,λ}` from `Σ_γ u^{dim □_γ + 1} l*_λ(□_γ; 1) l̃_K(S_ν, □_γ; u²)`.
    pub fn jordan_via_local_h(&self, lambda: &RootOfUnity) -> Result<Vec<BigInt>, SpectrumError> {
        let n = self.n();
        let mut j = vec![BigInt::zero(); n];
        for c in &self.region.cells {
            let ls = self.ehrhart.lstar(&c.cell, lambda)?.eval_one();
            if ls.is_zero() {
                continue;
            }
            let idx = self
                .region
                .subdivision
                .find(&c.sorted_vertices())
                .ok_or_else(|| violation(format!("□ with conormal {} is not a cell of S_ν", c.conormal)))?;
            let l = local_h(&self.region.subdivision, idx)?;
            let dim = c.dim_gamma() as usize;
            let lt = tilde_l(&l, n - 1 - dim)?;
            for (i, a) in lt.coeffs().iter().enumerate() {
                // The term u^{dim γ + 2 + 2i} carries J_{n − dim γ − 2i}.
                let k = dim + 2 * i;
                if k >= n {
                    return Err(violation(format!("Jordan term u^{} beyond u^{}", k + 2, n + 1)));
                }
                j[n - k - 1] += &ls * a;
            }
        }
        Ok(j)
    }

    /// `(J_n, J_{n−1})` from interior vertices and edges of `Γ₊(f)`.
    pub fn jordan_extremes_census(&self, lambda: &RootOfUnity) -> Result<(BigInt, BigInt), SpectrumError> {
        let mut top = BigInt::zero();
        let mut next = BigInt::zero();
        for c in self.region.cells.iter().filter(|c| c.is_interior() && lambda.order_divides(&c.d_gamma)) {
            match c.dim_gamma() {
                0 => top += 1,
                1 => {
                    let e = &c.d_gamma;
                    let k = BigInt::from(lambda.numer()) * e / BigInt::from(lambda.order());
                    let other = e - &k;
                    for v in cells::relint_points(&c.cell)? {
                        let h = c.height(&v);
                        next += u8::from(h == k) + u8::from(h == other);
                    }
                }
                _ => {}
            }
        }
        Ok((top, next))
    }

    /// Jordan block counts, with both general paths and the census of the
    /// two largest sizes cross-checked against each other and against the
    /// eigenvalue multiplicity.
    pub fn jordan_counts(&self, lambda: &RootOfUnity) -> Result<JordanCounts, SpectrumError> {
        let n = self.n();
        let e = self.e_lambda(lambda)?;
        let via_weights = hodge::jordan_from_weights(&e);
        let via_local_h = self.jordan_via_local_h(lambda)?;
        if via_weights != via_local_h {
            return Err(violation(format!(
                "Jordan paths disagree at λ = {lambda}: weights {via_weights:?}, local h {via_local_h:?}"
            )));
        }
        if let Some(k) = via_weights.iter().position(|j| j.is_negative()) {
            return Err(violation(format!("J_{} = {} < 0 at λ = {lambda}", k + 1, via_weights[k])));
        }
        let via_extremes = self.jordan_extremes_census(lambda)?;
        let expect_next = if n >= 2 { via_weights[n - 2].clone() } else { BigInt::zero() };
        if via_extremes != (via_weights[n - 1].clone(), expect_next) {
            return Err(violation(format!(
                "extreme Jordan census {via_extremes:?} disagrees with the general count at λ = {lambda}"
            )));
        }
        let counts = JordanCounts { n, lambda: *lambda, via_local_h, via_weights, via_extremes };
        let m = multiplicity(self.pair, lambda)?;
        if counts.total_dimension() != m || e.dimension() != m {
            return Err(violation(format!(
                "Jordan blocks span {} and E_λ has dimension {}, but the multiplicity of {lambda} is {m}",
                counts.total_dimension(),
                e.dimension()
            )));
        }
        Ok(counts)
    }

    /// `Σ_γ (−1)^{n−1−dim γ} Σ_{c} t^{c−1} (1−t)^{m_γ} h*_{λ(c)}(□_γ, ν; t)`
    /// over the fractional classes `c = j/d_γ`, without checks.
    pub fn spectrum_closed_form(&self) -> Result<PuiseuxPolynomial, SpectrumError> {
        let n = self.n() as i64;
        let mut out = PuiseuxPolynomial::zero();
        for cell in &self.region.cells {
            let d = cell.d_gamma.to_u64().expect("d_γ fits in u64");
            let sign = BigInt::from(if (n - 1 - cell.dim_gamma()) % 2 == 0 { 1 } else { -1 });
            let factor = UniPoly::one_minus_t_pow(cell.m_gamma);
            for j in 1..d {
                let c = BigRational::new(j.into(), d.into());
                let h = self.ehrhart.hstar(&cell.cell, &RootOfUnity::from_fraction(&c))?;
                if h.is_zero() {
                    continue;
                }
                let base = PuiseuxPolynomial::monomial(&c - BigRational::one(), sign.clone());
                out = &out + &base.mul_poly((&factor * &h).coeffs());
            }
        }
        Ok(out)
    }

    /// `Σ_{λ ≠ 1} Σ_p dim GR_F^p H^{n−1}_λ · t^{p + c(λ)}`.
    pub fn spectrum_from_hodge(&self) -> Result<PuiseuxPolynomial, SpectrumError> {
        let mut out = PuiseuxPolynomial::zero();
        for lambda in self.eigenvalue_candidates() {
            let e = self.e_lambda(&lambda)?;
            for p in 0..self.n() as i64 {
                let g = e.hodge_graded(p);
                if !g.is_zero() {
                    out.add_term(lambda.fraction() + BigRational::from_integer(p.into()), g);
                }
            }
        }
        Ok(out)
    }

    /// The reduced Hodge spectrum, checked for support in `(0, n) ∖ ℤ`,
    /// nonnegativity, `sp̃(t) = tⁿ sp̃(1/t)`, λ-masses equal to the
    /// multiplicities, and agreement with the Hodge numbers of `E_λ`.
    pub fn reduced_spectrum(&self) -> Result<PuiseuxPolynomial, SpectrumError> {
        let n = BigRational::from_integer(self.n().into());
        let sp = self.spectrum_closed_form()?;
        for (b, c) in sp.terms() {
            if b.is_integer() || !b.is_positive() || *b >= n || c.is_negative() {
                return Err(violation(format!("spectrum term {c}·t^{b} outside (0, n) ∖ ℤ or negative")));
            }
        }
        if sp.reflect(&n) != sp {
            return Err(violation(format!("spectrum {sp} is not symmetric about n/2")));
        }
        for lambda in self.eigenvalue_candidates() {
            let m = multiplicity(self.pair, &lambda)?;
            if sp.mass_at(&lambda) != m {
                return Err(violation(format!(
                    "spectrum mass {} at λ = {lambda} differs from the multiplicity {m}",
                    sp.mass_at(&lambda)
                )));
            }
        }
        let hodge = self.spectrum_from_hodge()?;
        if hodge != sp {
            return Err(violation(format!("spectrum {sp} differs from the Hodge-number spectrum {hodge}")));
        }
        Ok(sp)
    }
}

pub fn e_lambda(pair: &MeroPair, lambda: &RootOfUnity) -> Result<EHDPolynomial, SpectrumError> {
    let region = build_weighted_region(pair)?;
    Analysis::new(pair, &region).e_lambda(lambda)
}

pub fn jordan_counts(pair: &MeroPair, lambda: &RootOfUnity) -> Result<JordanCounts, SpectrumError> {
    let region = build_weighted_region(pair)?;
    Analysis::new(pair, &region).jordan_counts(lambda)
}

/// `(J_n, J_{n−1})`, cross-checked against [`jordan_counts`].
pub fn jordan_extremes(pair: &MeroPair, lambda: &RootOfUnity) -> Result<(BigInt, BigInt), SpectrumError> {
    let region = build_weighted_region(pair)?;
    Ok(Analysis::new(pair, &region).jordan_counts(lambda)?.via_extremes)
}

pub fn reduced_spectrum(pair: &MeroPair) -> Result<PuiseuxPolynomial, SpectrumError> {
    let region = build_weighted_region(pair)?;
    Analysis::new(pair, &region).reduced_spectrum()
}
