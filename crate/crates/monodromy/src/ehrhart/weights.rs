use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{LaurentBiPoly, UniPoly};
use super::poset::{FacePoset, Orientation};
use super::subdivision::{h_link, local_h, Subdivision};
use super::EhrhartError;
use crate::lattice_core::{matrix, AffineLatticeFrame, GeometryError, IntVector, LatticeScanner, Polyhedron};
use crate::zeta::RootOfUnity;

/// Rational affine function `x ↦ (⟨a, x⟩ + b) / den` with `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFunction {
    pub a: IntVector,
    pub b: BigInt,
    pub den: BigInt,
}

impl AffineFunction {
    pub fn new(a: IntVector, b: BigInt, den: BigInt) -> Self {
        assert!(den.is_positive(), "denominator must be positive");
        let g = a.coords().iter().fold(b.gcd(&den), |g, x| g.gcd(x));
        if g.is_one() || g.is_zero() {
            return AffineFunction { a, b, den };
        }
        AffineFunction { a: IntVector::new(a.coords().iter().map(|x| x / &g).collect()), b: b / &g, den: den / g }
    }

    /// The affine function on `aff(points)` taking the given values,
    /// extended to `ℝⁿ` through the lattice frame. `None` if the values are
    /// not affine on the points.
    pub fn interpolate(points: &[IntVector], values: &[BigRational]) -> Option<Self> {
        let frame = AffineLatticeFrame::of_points(points)?;
        let k = frame.dim();
        let rows: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| {
                let mut z = frame.coordinates(p).expect("own frame");
                z.push(BigInt::one());
                z
            })
            .collect();
        let pick = matrix::independent_rows(&rows);
        debug_assert_eq!(pick.len(), k + 1);
        let m: Vec<Vec<BigInt>> = pick.iter().map(|&i| rows[i].clone()).collect();
        let inv = matrix::inverse(&m).expect("affinely independent points");
        let sol: Vec<BigRational> = (0..=k)
            .map(|r| pick.iter().enumerate().map(|(j, &i)| &inv[r][j] * &values[i]).sum())
            .collect();
        let den = sol.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let scaled: Vec<BigInt> = sol.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
        let a = frame.pullback(&scaled[..k]);
        let b = &scaled[k] - a.dot(frame.base_point());
        let f = AffineFunction::new(a, b, den);
        points.iter().zip(values).all(|(p, y)| &f.value(p) == y).then_some(f)
    }

    pub fn value(&self, x: &IntVector) -> BigRational {
        BigRational::new(self.a.dot(x) + &self.b, self.den.clone())
    }

    /// `m · f(v/m)`.
    pub fn value_scaled(&self, v: &IntVector, m: &BigInt) -> BigRational {
        BigRational::new(self.a.dot(v) + &self.b * m, self.den.clone())
    }
}

/// Piecewise affine function given by one affine piece per maximal cell.
#[derive(Clone, Debug)]
pub struct PiecewiseAffine {
    pieces: Vec<(Polyhedron, AffineFunction)>,
}

impl PiecewiseAffine {
    pub fn new(pieces: Vec<(Polyhedron, AffineFunction)>) -> Self {
        PiecewiseAffine { pieces }
    }

    /// A single affine function on `domain`.
    pub fn affine(domain: Polyhedron, f: AffineFunction) -> Self {
        PiecewiseAffine { pieces: vec![(domain, f)] }
    }

    pub fn pieces(&self) -> &[(Polyhedron, AffineFunction)] {
        &self.pieces
    }

    pub fn value(&self, x: &IntVector) -> Option<BigRational> {
        self.pieces.iter().find(|(c, _)| c.contains(x)).map(|(_, f)| f.value(x))
    }

    /// `m · ν(v/m)` for `v ∈ m · domain`.
    pub fn value_scaled(&self, v: &IntVector, m: &BigInt) -> Option<BigRational> {
        self.pieces.iter().find(|(c, _)| c.contains_dilate(v, m)).map(|(_, f)| f.value_scaled(v, m))
    }

    /// The piece that is affine on all of `p`, if one contains `p`.
    pub fn affine_on(&self, p: &Polyhedron) -> Option<&AffineFunction> {
        self.pieces
            .iter()
            .find(|(c, _)| p.vertices().iter().all(|v| c.contains(v)))
            .map(|(_, f)| f)
    }

    /// Checks that pieces agree at shared vertices.
    pub fn is_continuous(&self) -> bool {
        self.pieces.iter().all(|(c, f)| {
            c.vertices().iter().all(|v| self.pieces.iter().all(|(d, g)| !d.contains(v) || g.value(v) == f.value(v)))
        })
    }

    /// First cell vertex with a non-integral value.
    pub fn non_integral_vertex(&self) -> Option<(IntVector, BigRational)> {
        self.pieces
            .iter()
            .flat_map(|(c, f)| c.vertices().iter().map(move |v| (v.clone(), f.value(v))))
            .find(|(_, y)| !y.is_integer())
    }
}

fn to_i128(x: &BigInt) -> Result<i128, EhrhartError> {
    x.to_i128().ok_or(EhrhartError::Geometry(GeometryError::Overflow))
}

/// Histogram of weight classes `m·ν(v/m) mod 1` over `mP ∩ ℤⁿ`.
fn weight_classes(p: &Polyhedron, nu: &PiecewiseAffine, m: u64) -> Result<BTreeMap<RootOfUnity, u64>, EhrhartError> {
    let mut out = BTreeMap::new();
    if p.is_empty() {
        return Ok(out);
    }
    if m == 0 {
        out.insert(RootOfUnity::one(), 1);
        return Ok(out);
    }
    let scanner = LatticeScanner::new(p)?;
    let mi = m as i64;
    if let Some(f) = nu.affine_on(p) {
        // Weight numerator m·(⟨a, base⟩ + b) + Σ wⱼ ⟨a, bⱼ⟩, modulo den.
        let frame = p.frame().expect("nonempty");
        let c0 = to_i128(&(f.a.dot(frame.base_point()) + &f.b))? * m as i128;
        let cs: Vec<i128> = frame.basis().iter().map(|b| to_i128(&f.a.dot(b))).collect::<Result<_, _>>()?;
        let den = to_i128(&f.den)?;
        let mut hist: HashMap<i128, u64> = HashMap::new();
        scanner.for_each(mi, |w| {
            let num = c0 + w.iter().zip(&cs).map(|(x, c)| *x as i128 * c).sum::<i128>();
            *hist.entry(num.rem_euclid(den)).or_insert(0) += 1;
        })?;
        let den_u = den as u64;
        for (k, c) in hist {
            *out.entry(RootOfUnity::new(k as i64, den_u).unwrap()).or_insert(0) += c;
        }
        return Ok(out);
    }
    let mb = BigInt::from(m);
    let mut missing = None;
    scanner.for_each(mi, |w| {
        let v = scanner.ambient(mi, w);
        match nu.value_scaled(&v, &mb) {
            Some(y) => *out.entry(RootOfUnity::from_fraction(&y)).or_insert(0) += 1,
            None => missing = Some(v),
        }
    })?;
    match missing {
        Some(v) => Err(EhrhartError::NotCovered(v)),
        None => Ok(out),
    }
}

/// `φ_λ(P, ν; m)`: lattice points of `mP` whose weight `m·ν(v/m)` lies in
/// the class of `λ`. Requires `ν` integral at every cell vertex.
pub fn phi_weighted(p: &Polyhedron, nu: &PiecewiseAffine, lambda: &RootOfUnity, m: u64) -> Result<u64, EhrhartError> {
    if let Some((vertex, value)) = nu.non_integral_vertex() {
        return Err(EhrhartError::NotVertexIntegral { vertex, value });
    }
    Ok(weight_classes(p, nu, m)?.get(lambda).copied().unwrap_or(0))
}

/// Weight-class counts of the dilates `mP` for `m = 0, …, 2·dim P + 2`.
#[derive(Clone, Debug)]
pub struct WeightedCounts {
    dim: i64,
    counts: Vec<BTreeMap<RootOfUnity, u64>>,
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

impl WeightedCounts {
    pub fn compute(p: &Polyhedron, nu: &PiecewiseAffine) -> Result<Self, EhrhartError> {
        let dim = p.dim();
        let top = if dim < 0 { 0 } else { 2 * dim as u64 + 2 };
        let counts = (0..=top).map(|m| weight_classes(p, nu, m)).collect::<Result<_, _>>()?;
        Ok(WeightedCounts { dim, counts })
    }

    pub fn phi(&self, lambda: &RootOfUnity, m: usize) -> u64 {
        self.counts[m].get(lambda).copied().unwrap_or(0)
    }

    /// All classes that occur in some computed dilate.
    pub fn classes(&self) -> Vec<RootOfUnity> {
        let mut v: Vec<RootOfUnity> = self.counts.iter().flat_map(|c| c.keys().copied()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// `h*_λ`, read off from `m = 0, …, D` and verified on the next `D + 2`
    /// dilates.
    pub fn hstar(&self, lambda: &RootOfUnity) -> Result<UniPoly, EhrhartError> {
        if self.dim < 0 {
            return Ok(if lambda.is_one() { UniPoly::one() } else { UniPoly::zero() });
        }
        let d = self.dim as usize;
        let series = UniPoly::new((0..=d).map(|m| BigInt::from(self.phi(lambda, m))).collect());
        let h = (&series * &UniPoly::one_minus_t_pow(d + 1)).truncate(d);
        for m in d + 1..=2 * d + 2 {
            let predicted: BigInt = (0..=d).map(|i| h.coeff(i) * binomial(m as i64 - i as i64 + d as i64, d as i64)).sum();
            let counted = self.phi(lambda, m);
            if predicted != BigInt::from(counted) {
                return Err(EhrhartError::PolynomialityViolated { m: m as u64, predicted, counted });
            }
        }
        Ok(h)
    }
}

/// Memoizing evaluator for the weighted Ehrhart invariants of faces and
/// cells under one piecewise affine `ν`.
pub struct WeightedEhrhart<'a> {
    nu: &'a PiecewiseAffine,
    counts: RefCell<HashMap<Vec<IntVector>, Rc<WeightedCounts>>>,
    lstars: RefCell<HashMap<(Vec<IntVector>, RootOfUnity), UniPoly>>,
}

fn key(p: &Polyhedron) -> Vec<IntVector> {
    let mut v = p.vertices().to_vec();
    v.sort();
    v
}

impl<'a> WeightedEhrhart<'a> {
    pub fn new(nu: &'a PiecewiseAffine) -> Self {
        WeightedEhrhart { nu, counts: RefCell::new(HashMap::new()), lstars: RefCell::new(HashMap::new()) }
    }

    pub fn counts(&self, p: &Polyhedron) -> Result<Rc<WeightedCounts>, EhrhartError> {
        let k = key(p);
        if let Some(c) = self.counts.borrow().get(&k) {
            return Ok(c.clone());
        }
        let c = Rc::new(WeightedCounts::compute(p, self.nu)?);
        self.counts.borrow_mut().insert(k, c.clone());
        Ok(c)
    }

    pub fn hstar(&self, p: &Polyhedron, lambda: &RootOfUnity) -> Result<UniPoly, EhrhartError> {
        self.counts(p)?.hstar(lambda)
    }

    /// `l*_λ(P) = Σ_{Q ≼ P} (−1)^{dim P − dim Q} h*_λ(Q) g([Q, P]*)`.
    pub fn lstar(&self, p: &Polyhedron, lambda: &RootOfUnity) -> Result<UniPoly, EhrhartError> {
        let k = (key(p), *lambda);
        if let Some(l) = self.lstars.borrow().get(&k) {
            return Ok(l.clone());
        }
        if p.is_empty() {
            return Ok(if lambda.is_one() { UniPoly::one() } else { UniPoly::zero() });
        }
        let poset = FacePoset::of_polyhedron(p);
        let top = p.whole_face();
        let mut out = UniPoly::zero();
        for (q, face) in p.faces().iter().enumerate() {
            let qp = if face.is_empty() { Polyhedron::empty(p.ambient_dim()) } else { p.face_polyhedron(face) };
            let h = self.hstar(&qp, lambda)?;
            if h.is_zero() {
                continue;
            }
            let term = &h * &poset.g(q, top, Orientation::Reversed)?;
            out = if (p.dim() - face.dim()) % 2 == 0 { &out + &term } else { &out - &term };
        }
        self.lstars.borrow_mut().insert(k, out.clone());
        Ok(out)
    }

    fn mixed(&self, sub: &Subdivision, lambda: &RootOfUnity, local: bool) -> Result<LaurentBiPoly, EhrhartError> {
        let mut out = LaurentBiPoly::zero();
        for (i, cell) in sub.cells().iter().enumerate() {
            let l = self.lstar(&cell.poly, lambda)?;
            if l.is_zero() {
                continue;
            }
            let link = if local { local_h(sub, i)? } else { h_link(sub, i)? };
            let term = &LaurentBiPoly::homogenize(&l, cell.dim() + 1) * &LaurentBiPoly::diagonal(&link);
            out = &out + &term;
        }
        if !out.is_polynomial() {
            return Err(EhrhartError::NegativeDegree(out.to_string()));
        }
        Ok(out)
    }

    /// `h*_λ(P, ν; u, v) = Σ_F v^{dim F + 1} l*_λ(F; u/v) h(LK(F); uv)`.
    pub fn hstar_mixed(&self, sub: &Subdivision, lambda: &RootOfUnity) -> Result<LaurentBiPoly, EhrhartError> {
        self.mixed(sub, lambda, false)
    }

    /// `l*_λ(P, ν; u, v) = Σ_F v^{dim F + 1} l*_λ(F; u/v) l_P(S, F; uv)`.
    pub fn lstar_mixed(&self, sub: &Subdivision, lambda: &RootOfUnity) -> Result<LaurentBiPoly, EhrhartError> {
        self.mixed(sub, lambda, true)
    }
}

/// `h*_λ(P, ν; u)`.
pub fn hstar(p: &Polyhedron, nu: &PiecewiseAffine, lambda: &RootOfUnity) -> Result<UniPoly, EhrhartError> {
    WeightedEhrhart::new(nu).hstar(p, lambda)
}

/// `l*_λ(P, ν; u)`.
pub fn lstar(p: &Polyhedron, nu: &PiecewiseAffine, lambda: &RootOfUnity) -> Result<UniPoly, EhrhartError> {
    WeightedEhrhart::new(nu).lstar(p, lambda)
}

pub fn hstar_mixed(sub: &Subdivision, nu: &PiecewiseAffine, lambda: &RootOfUnity) -> Result<LaurentBiPoly, EhrhartError> {
    WeightedEhrhart::new(nu).hstar_mixed(sub, lambda)
}

pub fn lstar_mixed(sub: &Subdivision, nu: &PiecewiseAffine, lambda: &RootOfUnity) -> Result<LaurentBiPoly, EhrhartError> {
    WeightedEhrhart::new(nu).lstar_mixed(sub, lambda)
}
