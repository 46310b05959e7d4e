//! Monodromy zeta functions, eigenvalue multiplicities, Lefschetz numbers
//! and BKK Euler characteristics.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::lattice_core::{mixed_volume, AffineLatticeFrame, Polyhedron};
use crate::newton::{all_facet_data, coordinate_subsets, newton_polytope, FacetDatum, MeroPair, Mode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZetaError {
    #[error("operation needs {expected} mode, pair is in {found} mode")]
    WrongMode { expected: Mode, found: Mode },
    #[error("multiplicity of the eigenvalue 1 is not supported")]
    LambdaOne,
    #[error("{0} is not convenient")]
    NotConvenient(&'static str),
    #[error("negative multiplicity {value} at λ = {lambda}: an asserted hypothesis fails")]
    NegativeMultiplicity { lambda: RootOfUnity, value: BigInt },
}

/// `λ = exp(2πi·k/d)` stored as the reduced fraction `k/d ∈ [0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    k: u64,
    d: u64,
}

impl RootOfUnity {
    /// Reduces `k/d` modulo 1; `None` for `d = 0`.
    pub fn new(k: i64, d: u64) -> Option<Self> {
        if d == 0 {
            return None;
        }
        let k = k.rem_euclid(d as i64) as u64;
        let g = k.gcd(&d);
        Some(RootOfUnity { k: k / g, d: d / g })
    }

    pub fn one() -> Self {
        RootOfUnity { k: 0, d: 1 }
    }

    /// The class of `c` in `ℚ/ℤ`.
    pub fn from_fraction(c: &BigRational) -> Self {
        let d = c.denom().to_u64().expect("root of unity of moderate order");
        let k = c.numer().mod_floor(c.denom()).to_i64().expect("bounded by the order");
        RootOfUnity::new(k, d).unwrap()
    }

    pub fn numer(&self) -> u64 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.d
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    /// `k/d` as a rational number in `[0, 1)`.
    pub fn fraction(&self) -> BigRational {
        BigRational::new(self.k.into(), self.d.into())
    }

    pub fn conjugate(&self) -> Self {
        RootOfUnity::new(-(self.k as i64), self.d).unwrap()
    }

    /// True iff `λ^m = 1`.
    pub fn order_divides(&self, m: &BigInt) -> bool {
        (m % BigInt::from(self.d)).is_zero()
    }

    /// All roots of unity whose order divides `m`, in increasing angle.
    pub fn dividing(m: u64) -> Vec<Self> {
        (0..m).map(|k| RootOfUnity::new(k as i64, m).unwrap()).collect()
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.k, self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid root of unity {0:?}: expected k/d in lowest terms with 0 <= k < d")]
pub struct ParseRootError(pub String);

impl FromStr for RootOfUnity {
    type Err = ParseRootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRootError(s.to_string());
        let (a, b) = s.trim().split_once('/').ok_or_else(err)?;
        let k: u64 = a.trim().parse().map_err(|_| err())?;
        let d: u64 = b.trim().parse().map_err(|_| err())?;
        if d == 0 || k >= d || k.gcd(&d) != 1 {
            return Err(err());
        }
        Ok(RootOfUnity { k, d })
    }
}

/// Formal product `∏_d (1 − t^d)^{e_d}` over positive integers `d`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CyclotomicProduct {
    factors: BTreeMap<BigInt, BigInt>,
}

impl CyclotomicProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (BigInt, BigInt)>) -> Self {
        let mut out = Self::one();
        for (d, e) in factors {
            out.mul_factor(d, e);
        }
        out
    }

    /// Multiplies by `(1 − t^d)^e`.
    pub fn mul_factor(&mut self, d: BigInt, e: BigInt) {
        assert!(d.is_positive(), "cyclotomic factor needs d > 0");
        let slot = self.factors.entry(d.clone()).or_insert_with(BigInt::zero);
        *slot += e;
        if slot.is_zero() {
            self.factors.remove(&d);
        }
    }

    pub fn multiply(&self, other: &CyclotomicProduct) -> CyclotomicProduct {
        let mut out = self.clone();
        for (d, e) in &other.factors {
            out.mul_factor(d.clone(), e.clone());
        }
        out
    }

    pub fn factors(&self) -> &BTreeMap<BigInt, BigInt> {
        &self.factors
    }

    pub fn exponent(&self, d: &BigInt) -> BigInt {
        self.factors.get(d).cloned().unwrap_or_default()
    }

    /// Degree `Σ d·e_d` of the rational function.
    pub fn degree(&self) -> BigInt {
        self.factors.iter().map(|(d, e)| d * e).sum()
    }

    /// Order of vanishing at `t = λ` (negative for poles).
    pub fn order_at(&self, lambda: &RootOfUnity) -> BigInt {
        self.factors.iter().filter(|(d, _)| lambda.order_divides(d)).map(|(_, e)| e.clone()).sum()
    }

    /// `Σ_{d | m} d·e_d`.
    pub fn lefschetz(&self, m: &BigInt) -> BigInt {
        self.factors.iter().filter(|(d, _)| (m % *d).is_zero()).map(|(d, e)| d * e).sum()
    }

    /// Exponents of the cyclotomic polynomials `Φ_k` in the factorization,
    /// together with the overall sign: `(1 − t^d) = −∏_{k | d} Φ_k(t)`.
    pub fn cyclotomic_exponents(&self) -> (i32, BTreeMap<u64, BigInt>) {
        let mut out: BTreeMap<u64, BigInt> = BTreeMap::new();
        let mut sign_exp = BigInt::zero();
        for (d, e) in &self.factors {
            let d = d.to_u64().expect("moderate factor degree");
            for k in (1..=d).filter(|k| d % k == 0) {
                *out.entry(k).or_insert_with(BigInt::zero) += e;
            }
            sign_exp += e;
        }
        out.retain(|_, e| !e.is_zero());
        let sign = if sign_exp.is_even() { 1 } else { -1 };
        (sign, out)
    }

    /// The reduced rational function `num/den` as coefficient vectors in
    /// increasing degree, normalized so that `den(0) = 1`.
    pub fn reduced_fraction(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let (sign, exps) = self.cyclotomic_exponents();
        let mut num = vec![BigInt::from(sign)];
        let mut den = vec![BigInt::one()];
        for (k, e) in &exps {
            let phi = cyclotomic_polynomial(*k);
            let times = e.abs().to_u64().expect("moderate exponent");
            let target = if e.is_positive() { &mut num } else { &mut den };
            for _ in 0..times {
                *target = poly_mul(target, &phi);
            }
        }
        let c = den[0].clone();
        if c.is_negative() {
            num.iter_mut().for_each(|x| *x = -&*x);
            den.iter_mut().for_each(|x| *x = -&*x);
        }
        (num, den)
    }
}

impl fmt::Display for CyclotomicProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (d, e) in &self.factors {
            let base = if d.is_one() { "(1-t)".to_string() } else { format!("(1-t^{d})") };
            if e.is_one() {
                f.write_str(&base)?;
            } else {
                write!(f, "{base}^{{{e}}}")?;
            }
        }
        Ok(())
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let lead = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() + 1 - b.len()];
    for i in (0..q.len()).rev() {
        let c = &rem[i + b.len() - 1] / lead;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= &c * y;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    q
}

/// The `k`-th cyclotomic polynomial, coefficients in increasing degree.
pub fn cyclotomic_polynomial(k: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); k as usize + 1];
    p[0] = BigInt::from(-1);
    p[k as usize] = BigInt::one();
    for j in (1..k).filter(|j| k.is_multiple_of(*j)) {
        p = poly_div_exact(&p, &cyclotomic_polynomial(j));
    }
    p
}

fn sign(exp: usize) -> BigInt {
    if exp.is_multiple_of(2) {
        BigInt::one()
    } else {
        BigInt::from(-1)
    }
}

fn facet_product(data: &[FacetDatum]) -> CyclotomicProduct {
    let mut out = CyclotomicProduct::one();
    for datum in data.iter().filter(|x| x.d.is_positive()) {
        out.mul_factor(datum.d.clone(), sign(datum.s.len() - 1) * &datum.v);
    }
    out
}

fn require_mode(pair: &MeroPair, mode: Mode) -> Result<(), ZetaError> {
    if pair.mode() == mode {
        Ok(())
    } else {
        Err(ZetaError::WrongMode { expected: mode, found: pair.mode() })
    }
}

/// Local monodromy zeta function of `f = P/Q` at the origin.
pub fn zeta_local(pair: &MeroPair) -> Result<CyclotomicProduct, ZetaError> {
    require_mode(pair, Mode::Local)?;
    Ok(facet_product(&all_facet_data(pair)))
}

/// Multiplicity of the eigenvalue `λ ≠ 1` in the middle-degree monodromy.
///
/// Local mode requires convenient `P` and `Q`. A negative sum is
/// reported as an error since it certifies that an asserted hypothesis
/// fails.
pub fn multiplicity(pair: &MeroPair, lambda: &RootOfUnity) -> Result<BigInt, ZetaError> {
    if lambda.is_one() {
        return Err(ZetaError::LambdaOne);
    }
    if pair.mode() == Mode::Local {
        if !crate::newton::is_convenient(pair.p()) {
            return Err(ZetaError::NotConvenient("P"));
        }
        if !crate::newton::is_convenient(pair.q()) {
            return Err(ZetaError::NotConvenient("Q"));
        }
    }
    let n = pair.n();
    let value: BigInt = all_facet_data(pair)
        .iter()
        .filter(|x| x.d.is_positive() && lambda.order_divides(&x.d))
        .map(|x| sign(n - x.s.len()) * &x.v)
        .sum();
    if value.is_negative() {
        return Err(ZetaError::NegativeMultiplicity { lambda: *lambda, value });
    }
    Ok(value)
}

/// Lefschetz number `Λ(m) = Σ_{d | m} d·e_d` read off the local zeta
/// function.
pub fn lefschetz(pair: &MeroPair, m: u64) -> Result<BigInt, ZetaError> {
    assert!(m >= 1, "Lefschetz numbers are indexed by m >= 1");
    Ok(zeta_local(pair)?.lefschetz(&BigInt::from(m)))
}

/// Euler characteristic of a non-degenerate complete intersection in
/// `(ℂ*)^s` with Newton polytopes `polys`, by the BKK formula.
///
/// More equations than variables give the empty set (0).
pub fn chi_bkk(polys: &[&Polyhedron], s: usize) -> BigInt {
    let p = polys.len();
    if p == 0 {
        return if s == 0 { BigInt::one() } else { BigInt::zero() };
    }
    if p > s {
        return BigInt::zero();
    }
    let frame = AffineLatticeFrame::standard(s);
    let mut total = BigInt::zero();
    for comp in compositions(s, p) {
        let args: Vec<&Polyhedron> = comp.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(polys[i], m)).collect();
        total += mixed_volume(&args, &frame).expect("polytopes live in ℝ^s");
    }
    sign(s - p) * total
}

fn compositions(s: usize, p: usize) -> Vec<Vec<usize>> {
    if p == 1 {
        return vec![vec![s]];
    }
    let mut out = Vec::new();
    for first in 1..=s - (p - 1) {
        for mut rest in compositions(s - first, p - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `χ(Q⁻¹(0) ∖ P⁻¹(0))` stratified by coordinate tori `T_S`, each term by
/// BKK on restricted Newton polytopes. The stratum `S = ∅` is the origin.
pub fn chi_complement(pair: &MeroPair) -> Result<BigInt, ZetaError> {
    require_mode(pair, Mode::Infinity)?;
    let mut strata = vec![vec![]];
    strata.extend(coordinate_subsets(pair.n()));
    let mut total = BigInt::zero();
    for s in &strata {
        let k = s.len();
        let p_s = pair.p().restrict(s).map(|g| newton_polytope(&g));
        let q_s = pair.q().restrict(s).map(|g| newton_polytope(&g));
        total += match (&p_s, &q_s) {
            (None, _) => BigInt::zero(),
            (Some(np), Some(nq)) => chi_bkk(&[nq], k) - chi_bkk(&[np, nq], k),
            (Some(np), None) => {
                let torus = if k == 0 { BigInt::one() } else { BigInt::zero() };
                torus - chi_bkk(&[np], k)
            }
        };
    }
    Ok(total)
}

/// Monodromy zeta function at infinity.
pub fn zeta_infinity(pair: &MeroPair) -> Result<CyclotomicProduct, ZetaError> {
    let chi = chi_complement(pair)?;
    let mut out = facet_product(&all_facet_data(pair));
    if !chi.is_zero() {
        out.mul_factor(BigInt::one(), chi);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::SparsePolynomial;

    fn poly(n: usize, exps: &[&[i64]]) -> SparsePolynomial {
        SparsePolynomial::from_exponents(n, exps).unwrap()
    }

    fn cp(f: &[(i64, i64)]) -> CyclotomicProduct {
        CyclotomicProduct::from_factors(f.iter().map(|&(d, e)| (BigInt::from(d), BigInt::from(e))))
    }

    fn local(p: SparsePolynomial, q: SparsePolynomial) -> MeroPair {
        MeroPair::new(p, q, Mode::Local).unwrap()
    }

    fn worked() -> MeroPair {
        local(poly(2, &[&[2, 0], &[0, 3]]), poly(2, &[&[1, 0], &[0, 1]]))
    }

    fn lam(k: i64, d: u64) -> RootOfUnity {
        RootOfUnity::new(k, d).unwrap()
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(lam(6, 8), lam(3, 4));
        assert_eq!(lam(-1, 4), lam(3, 4));
        assert_eq!(lam(1, 4).conjugate(), lam(3, 4));
        assert!(lam(4, 4).is_one());
        assert_eq!("1/4".parse::<RootOfUnity>(), Ok(lam(1, 4)));
        assert!("2/4".parse::<RootOfUnity>().is_err());
        assert!("5/4".parse::<RootOfUnity>().is_err());
        let c = BigRational::new(BigInt::from(-7), BigInt::from(4));
        assert_eq!(RootOfUnity::from_fraction(&c), lam(1, 4));
    }

    #[test]
    fn cusp_zeta() {
        let pair = local(poly(2, &[&[2, 0], &[0, 3]]), SparsePolynomial::one(2));
        let z = zeta_local(&pair).unwrap();
        assert_eq!(z, cp(&[(2, 1), (3, 1), (6, -1)]));
        assert_eq!(z.to_string(), "(1-t^2)(1-t^3)(1-t^6)^{-1}");
        let (num, den) = z.reduced_fraction();
        assert_eq!(num, vec![BigInt::from(1), BigInt::from(-1)]);
        assert_eq!(den, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(lefschetz(&pair, 1).unwrap(), BigInt::zero());
        assert_eq!(lefschetz(&pair, 6).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn worked_pair_zeta_and_multiplicities() {
        let pair = worked();
        let z = zeta_local(&pair).unwrap();
        assert_eq!(z, cp(&[(2, 1), (4, -1)]));
        assert_eq!(multiplicity(&pair, &lam(1, 4)).unwrap(), BigInt::one());
        assert_eq!(multiplicity(&pair, &lam(3, 4)).unwrap(), BigInt::one());
        assert_eq!(multiplicity(&pair, &lam(1, 2)).unwrap(), BigInt::zero());
        assert_eq!(multiplicity(&pair, &lam(1, 3)).unwrap(), BigInt::zero());
        assert_eq!(multiplicity(&pair, &RootOfUnity::one()), Err(ZetaError::LambdaOne));
        assert_eq!(lefschetz(&pair, 2).unwrap(), BigInt::from(2));
        for l in [lam(1, 4), lam(1, 2), lam(1, 3)] {
            assert_eq!(multiplicity(&pair, &l).unwrap(), z.order_at(&l) * sign(pair.n() - 1));
        }
    }

    #[test]
    fn quadratic_over_linear() {
        let pair = local(poly(2, &[&[2, 0], &[0, 2]]), poly(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(zeta_local(&pair).unwrap(), cp(&[(1, -1)]));
    }

    #[test]
    fn nonconvenient_multiplicity_is_refused() {
        let pair = local(poly(2, &[&[2, 1], &[0, 3]]), SparsePolynomial::one(2));
        assert_eq!(multiplicity(&pair, &lam(1, 2)), Err(ZetaError::NotConvenient("P")));
    }

    #[test]
    fn bkk_examples() {
        let seg = Polyhedron::from_points_i64(1, &[&[0], &[5]]).unwrap();
        assert_eq!(chi_bkk(&[&seg], 1), BigInt::from(5));
        let tri = Polyhedron::from_points_i64(2, &[&[0, 0], &[2, 0], &[0, 3]]).unwrap();
        assert_eq!(chi_bkk(&[&tri], 2), BigInt::from(-6));
        let e1 = Polyhedron::from_points_i64(2, &[&[0, 0], &[1, 0]]).unwrap();
        let e2 = Polyhedron::from_points_i64(2, &[&[0, 0], &[0, 1]]).unwrap();
        assert_eq!(chi_bkk(&[&e1, &e2], 2), BigInt::one());
        assert_eq!(chi_bkk(&[&e1, &e2, &e1], 2), BigInt::zero());
    }

    #[test]
    fn complement_euler_characteristics() {
        let inf = |p, q| MeroPair::new(p, q, Mode::Infinity).unwrap();
        let one_var = inf(poly(1, &[&[2], &[1], &[0]]), poly(1, &[&[1], &[0]]));
        assert_eq!(chi_complement(&one_var).unwrap(), BigInt::one());
        let no_poles = inf(poly(2, &[&[2, 0], &[0, 2], &[0, 0]]), SparsePolynomial::one(2));
        assert_eq!(chi_complement(&no_poles).unwrap(), BigInt::zero());
        // Generic line minus its two intersection points with a conic.
        let line = inf(poly(2, &[&[2, 0], &[0, 2], &[0, 0]]), poly(2, &[&[1, 0], &[0, 1], &[0, 0]]));
        assert_eq!(chi_complement(&line).unwrap(), BigInt::from(-1));
        assert!(chi_complement(&worked()).is_err());
    }

    #[test]
    fn zeta_at_infinity() {
        let inf = |p, q| MeroPair::new(p, q, Mode::Infinity).unwrap();
        let cover = inf(poly(1, &[&[2]]), poly(1, &[&[1], &[0]]));
        assert_eq!(zeta_infinity(&cover).unwrap(), cp(&[(1, 2)]));
        // Q = 1: only facet factors, with the single-polynomial distances.
        let p = poly(2, &[&[2, 0], &[0, 3], &[0, 0]]);
        let z = zeta_infinity(&inf(p, SparsePolynomial::one(2))).unwrap();
        assert_eq!(z, cp(&[(2, 1), (3, 1), (6, -1)]));
        let same = poly(2, &[&[1, 0], &[0, 1], &[0, 0]]);
        let z = zeta_infinity(&inf(same.clone(), same)).unwrap();
        assert!(z.factors().keys().all(|d| d.is_one()));
    }

    #[test]
    fn cyclotomic_polynomials() {
        let c = |k| cyclotomic_polynomial(k).iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(c(1), vec![-1, 1]);
        assert_eq!(c(4), vec![1, 0, 1]);
        assert_eq!(c(6), vec![1, -1, 1]);
        assert_eq!(c(12), vec![1, 0, -1, 0, 1]);
    }
}
