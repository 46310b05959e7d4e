//! Sparse polynomials, Newton polyhedra and the facet data of `f = P/Q`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::lattice_core::{
    convex_hull, mixed_volume_of_points, minkowski_sum, support_value, supporting_face, GeometryError, IntVector,
    Polyhedron,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NewtonError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("negative exponent in {0}")]
    NegativeExponent(IntVector),
    #[error("exponent {0} does not have {1} coordinates")]
    WrongArity(IntVector, usize),
    #[error("P and Q live in different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Polynomial in `n` variables stored as exponent → nonzero rational
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    n: usize,
    terms: BTreeMap<IntVector, BigRational>,
}

impl SparsePolynomial {
    /// Combines like terms and drops zero coefficients; the result must
    /// be nonzero.
    pub fn new(n: usize, terms: impl IntoIterator<Item = (IntVector, BigRational)>) -> Result<Self, NewtonError> {
        let mut map: BTreeMap<IntVector, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if e.dim() != n {
                return Err(NewtonError::WrongArity(e, n));
            }
            if !e.is_nonnegative() {
                return Err(NewtonError::NegativeExponent(e));
            }
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(NewtonError::ZeroPolynomial);
        }
        Ok(SparsePolynomial { n, terms: map })
    }

    /// Polynomial with unit coefficients on the given exponents.
    pub fn from_exponents(n: usize, exps: &[&[i64]]) -> Result<Self, NewtonError> {
        Self::new(n, exps.iter().map(|e| (IntVector::from_i64(e), BigRational::from_integer(1.into()))))
    }

    pub fn one(n: usize) -> Self {
        Self::from_exponents(n, &[&vec![0; n]]).expect("nonzero")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<IntVector, BigRational> {
        &self.terms
    }

    pub fn support(&self) -> Vec<IntVector> {
        self.terms.keys().cloned().collect()
    }

    /// `g^S`: the terms supported on the coordinates `s`, written in
    /// `ℤ^S` coordinates. `None` when `g^S ≡ 0`.
    pub fn restrict(&self, s: &[usize]) -> Option<SparsePolynomial> {
        let terms: BTreeMap<IntVector, BigRational> = self
            .terms
            .iter()
            .filter(|(e, _)| e.supported_in(s))
            .map(|(e, c)| (e.restrict(s), c.clone()))
            .collect();
        (!terms.is_empty()).then_some(SparsePolynomial { n: s.len(), terms })
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_zero()
    }
}

/// Which Newton polyhedron is attached to a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `Γ₊(g) = conv(supp g) + ℝⁿ₊`, for the germ at the origin.
    Local,
    /// `Γ∞(g) = conv({0} ∪ supp g)`, for the behaviour at infinity.
    Infinity,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Local => "local",
            Mode::Infinity => "infinity",
        })
    }
}

fn polyhedron_of_support(n: usize, support: &[IntVector], mode: Mode) -> Polyhedron {
    let res = match mode {
        Mode::Local => {
            let rays: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
            convex_hull(n, support, &rays)
        }
        Mode::Infinity => {
            let mut pts = support.to_vec();
            pts.push(IntVector::zero(n));
            convex_hull(n, &pts, &[])
        }
    };
    res.expect("support vectors have the ambient dimension")
}

/// `Γ₊(g)` in local mode, `Γ∞(g)` in infinity mode.
pub fn newton_polyhedron(g: &SparsePolynomial, mode: Mode) -> Polyhedron {
    polyhedron_of_support(g.n, &g.support(), mode)
}

/// The Newton polytope `NP(g) = conv(supp g)`.
pub fn newton_polytope(g: &SparsePolynomial) -> Polyhedron {
    convex_hull(g.n, &g.support(), &[]).expect("support vectors have the ambient dimension")
}

/// True iff `Γ₊(g)` meets every coordinate axis.
pub fn is_convenient(g: &SparsePolynomial) -> bool {
    (0..g.n).all(|i| g.terms.keys().any(|e| e.supported_in(&[i])))
}

/// The pair `(P, Q)` defining `f = P/Q`, with cached Newton polyhedra.
///
/// No common factor is cancelled: every invariant is a function of the
/// pair of supports.
#[derive(Clone, Debug)]
pub struct MeroPair {
    p: SparsePolynomial,
    q: SparsePolynomial,
    mode: Mode,
    gamma_p: Polyhedron,
    gamma_q: Polyhedron,
    gamma_f: Polyhedron,
}

impl MeroPair {
    pub fn new(p: SparsePolynomial, q: SparsePolynomial, mode: Mode) -> Result<Self, NewtonError> {
        if p.n != q.n {
            return Err(NewtonError::DimensionMismatch(p.n, q.n));
        }
        let gamma_p = newton_polyhedron(&p, mode);
        let gamma_q = newton_polyhedron(&q, mode);
        let gamma_f = minkowski_sum(&gamma_p, &gamma_q)?;
        Ok(MeroPair { p, q, mode, gamma_p, gamma_q, gamma_f })
    }

    pub fn n(&self) -> usize {
        self.p.n
    }

    pub fn p(&self) -> &SparsePolynomial {
        &self.p
    }

    pub fn q(&self) -> &SparsePolynomial {
        &self.q
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn gamma_p(&self) -> &Polyhedron {
        &self.gamma_p
    }

    pub fn gamma_q(&self) -> &Polyhedron {
        &self.gamma_q
    }

    pub fn gamma_f(&self) -> &Polyhedron {
        &self.gamma_f
    }

    /// `(Γ(P)^S, Γ(Q)^S)` in `ℝ^S` coordinates; `None` in local mode when
    /// either restriction is empty.
    pub fn restricted(&self, s: &[usize]) -> Option<(Polyhedron, Polyhedron)> {
        let sp: Vec<IntVector> = self.p.support().iter().filter(|e| e.supported_in(s)).map(|e| e.restrict(s)).collect();
        let sq: Vec<IntVector> = self.q.support().iter().filter(|e| e.supported_in(s)).map(|e| e.restrict(s)).collect();
        if self.mode == Mode::Local && (sp.is_empty() || sq.is_empty()) {
            return None;
        }
        Some((polyhedron_of_support(s.len(), &sp, self.mode), polyhedron_of_support(s.len(), &sq, self.mode)))
    }
}

/// One `(S, i)` term of the Newton zeta formulas.
///
/// All vectors live in `ℤ^S` coordinates; [`FacetDatum::s`] lists the
/// ambient coordinates (0-based) in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetDatum {
    pub s: Vec<usize>,
    pub facet: Vec<IntVector>,
    /// Primitive conormal: inner (local) or outer (infinity).
    pub alpha: IntVector,
    pub d_p: BigInt,
    pub d_q: BigInt,
    pub d: BigInt,
    pub v: BigInt,
    pub face_p: Vec<IntVector>,
    pub face_q: Vec<IntVector>,
}

fn face_points(p: &Polyhedron, u: &IntVector) -> Vec<IntVector> {
    let face = supporting_face(p, u).expect("conormal supports the polyhedron");
    p.face_vertices(&face)
}

/// Facet data of the stratum `S` (0-based coordinate indices, sorted).
///
/// Local mode: compact facets of `Γ₊(f)^S`, whose conormals are strictly
/// positive. Infinity mode: facets of `Γ∞(f)^S` avoiding the origin.
pub fn facet_data(pair: &MeroPair, s: &[usize]) -> Vec<FacetDatum> {
    assert!(!s.is_empty(), "facet data need a nonempty coordinate set");
    let Some((gp, gq)) = pair.restricted(s) else { return vec![] };
    let gf = minkowski_sum(&gp, &gq).expect("same ambient dimension");
    let k = s.len();
    if gf.dim() < k as i64 {
        return vec![];
    }
    let mut out = Vec::new();
    for facet in gf.facets() {
        let (alpha, probe) = match pair.mode {
            Mode::Local => {
                if !facet.normal.is_positive() {
                    continue;
                }
                (facet.normal.clone(), facet.normal.clone())
            }
            Mode::Infinity => {
                if !facet.offset.is_negative() {
                    continue;
                }
                (-&facet.normal, facet.normal.clone())
            }
        };
        let sign = if pair.mode == Mode::Local { BigInt::from(1) } else { BigInt::from(-1) };
        let d_p = sign.clone() * support_value(&gp, &probe).expect("bounded below");
        let d_q = sign * support_value(&gq, &probe).expect("bounded below");
        let facet_pts = face_points(&gf, &probe);
        let face_p = face_points(&gp, &probe);
        let face_q = face_points(&gq, &probe);
        let frame = crate::lattice_core::AffineLatticeFrame::of_points(&facet_pts).expect("nonempty facet");
        let mut v = BigInt::zero();
        for j in 0..k {
            let mut args = vec![face_p.clone(); j];
            args.extend(std::iter::repeat_n(face_q.clone(), k - 1 - j));
            v += mixed_volume_of_points(&args, &frame).expect("faces lie parallel to the facet");
        }
        out.push(FacetDatum {
            s: s.to_vec(),
            facet: facet_pts,
            alpha,
            d: &d_p - &d_q,
            d_p,
            d_q,
            v,
            face_p,
            face_q,
        });
    }
    out.sort_by(|a, b| a.alpha.cmp(&b.alpha));
    out
}

/// All nonempty coordinate subsets of `{0, …, n−1}`, by size then lex.
pub fn coordinate_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u64..(1u64 << n))
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Facet data over every nonempty stratum.
pub fn all_facet_data(pair: &MeroPair) -> Vec<FacetDatum> {
    coordinate_subsets(pair.n()).iter().flat_map(|s| facet_data(pair, s)).collect()
}

/// Witness that the support-function inequality fails at a conormal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentWitness {
    pub conormal: IntVector,
    pub h_p: BigInt,
    pub h_q: BigInt,
    /// True when equality was found at an interior cone sample, false
    /// when the weak inequality fails at a ray.
    pub strict_failure: bool,
}

impl fmt::Display for ContainmentWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.strict_failure { "not >" } else { "<" };
        write!(f, "at u = {}: h_P = {} {rel} h_Q = {}", self.conormal, self.h_p, self.h_q)
    }
}

/// Decides `min⟨u, Γ(P)⟩ > min⟨u, Γ(Q)⟩` for all `u` in the open orthant
/// (local mode), resp. `Γ∞(Q) ⊂⊂ Γ∞(P)` (infinity mode).
///
/// The support-function difference is linear on each cone of the dual
/// fan of `Γ(f)`, so it suffices to test the rays weakly and one relative
/// interior normal of each cone strictly. In infinity mode the test runs
/// on `conv({0} ∪ −supp) + ℝⁿ₊` with the roles of P and Q exchanged.
pub fn is_properly_contained(pair: &MeroPair) -> Result<(), ContainmentWitness> {
    let n = pair.n();
    let (big, small) = match pair.mode {
        Mode::Local => (pair.gamma_p.clone(), pair.gamma_q.clone()),
        Mode::Infinity => {
            let neg = |g: &SparsePolynomial| -> Vec<IntVector> {
                let mut v: Vec<IntVector> = g.support().iter().map(|e| -e).collect();
                v.push(IntVector::zero(n));
                v
            };
            (polyhedron_of_support(n, &neg(&pair.q), Mode::Local), polyhedron_of_support(n, &neg(&pair.p), Mode::Local))
        }
    };
    let sum = minkowski_sum(&big, &small).expect("same ambient dimension");
    let h = |p: &Polyhedron, u: &IntVector| support_value(p, u).expect("conormal in the orthant");
    let (h_sign, swap) = match pair.mode {
        Mode::Local => (BigInt::from(1), false),
        Mode::Infinity => (BigInt::from(-1), true),
    };
    let witness = |u: &IntVector, strict: bool| {
        let (a, b) = (h(&big, u), h(&small, u));
        let (h_p, h_q) = if swap { (&h_sign * &b, &h_sign * &a) } else { (a, b) };
        ContainmentWitness { conormal: u.clone(), h_p, h_q, strict_failure: strict }
    };
    for facet in sum.facets() {
        let u = &facet.normal;
        if h(&big, u) < h(&small, u) {
            return Err(witness(u, false));
        }
    }
    for face in sum.faces() {
        if face.is_empty() || face.dim() == sum.dim() {
            continue;
        }
        let b = sum.relative_interior_normal(face);
        if b.is_positive() && h(&big, &b) <= h(&small, &b) {
            return Err(witness(&b, true));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, exps: &[&[i64]]) -> SparsePolynomial {
        SparsePolynomial::from_exponents(n, exps).unwrap()
    }

    fn v(c: &[i64]) -> IntVector {
        IntVector::from_i64(c)
    }

    fn cusp_pair() -> MeroPair {
        MeroPair::new(poly(2, &[&[2, 0], &[0, 3]]), poly(2, &[&[1, 0], &[0, 1]]), Mode::Local).unwrap()
    }

    #[test]
    fn polynomial_construction() {
        let one = BigRational::from_integer(1.into());
        let zero = SparsePolynomial::new(1, [(v(&[1]), one.clone()), (v(&[1]), -one.clone())]);
        assert_eq!(zero, Err(NewtonError::ZeroPolynomial));
        assert!(matches!(SparsePolynomial::new(1, [(v(&[-1]), one.clone())]), Err(NewtonError::NegativeExponent(_))));
        assert!(SparsePolynomial::one(3).is_constant());
        let g = poly(2, &[&[2, 0], &[0, 3], &[1, 1]]);
        assert_eq!(g.restrict(&[0]).unwrap().support(), vec![v(&[2])]);
        assert!(poly(2, &[&[1, 1]]).restrict(&[1]).is_none());
    }

    #[test]
    fn newton_polyhedra() {
        let g = poly(2, &[&[2, 0], &[0, 3]]);
        let local = newton_polyhedron(&g, Mode::Local);
        assert_eq!(local.vertices(), &[v(&[0, 3]), v(&[2, 0])]);
        assert_eq!(local.rays().len(), 2);
        let inf = newton_polyhedron(&g, Mode::Infinity);
        assert_eq!(inf.vertices(), &[v(&[0, 0]), v(&[0, 3]), v(&[2, 0])]);
        assert!(inf.is_bounded());
        let one = newton_polyhedron(&SparsePolynomial::one(2), Mode::Local);
        assert_eq!(one.vertices(), &[v(&[0, 0])]);
    }

    #[test]
    fn convenience() {
        assert!(is_convenient(&poly(2, &[&[2, 0], &[0, 3]])));
        assert!(!is_convenient(&poly(2, &[&[2, 1], &[0, 3]])));
        assert!(is_convenient(&SparsePolynomial::one(2)));
    }

    #[test]
    fn worked_pair_facet_data() {
        let pair = cusp_pair();
        let data = facet_data(&pair, &[0, 1]);
        assert_eq!(data.len(), 2);
        let a = &data[0];
        assert_eq!(a.alpha, v(&[1, 1]));
        assert_eq!(a.facet, vec![v(&[2, 1]), v(&[3, 0])]);
        assert_eq!((a.d_p.clone(), a.d_q.clone(), a.d.clone(), a.v.clone()), (2.into(), 1.into(), 1.into(), 1.into()));
        let b = &data[1];
        assert_eq!(b.alpha, v(&[3, 2]));
        assert_eq!(b.facet, vec![v(&[0, 4]), v(&[2, 1])]);
        assert_eq!((b.d_p.clone(), b.d_q.clone(), b.d.clone(), b.v.clone()), (6.into(), 2.into(), 4.into(), 1.into()));

        let axis = facet_data(&pair, &[0]);
        assert_eq!(axis.len(), 1);
        assert_eq!(axis[0].facet, vec![v(&[3])]);
        assert_eq!((axis[0].d_p.clone(), axis[0].d_q.clone(), axis[0].v.clone()), (2.into(), 1.into(), 1.into()));
    }

    #[test]
    fn single_polynomial_data() {
        let pair = MeroPair::new(poly(2, &[&[2, 0], &[0, 3]]), SparsePolynomial::one(2), Mode::Local).unwrap();
        let data = facet_data(&pair, &[0, 1]);
        assert_eq!(data.len(), 1);
        assert_eq!(data[0].alpha, v(&[3, 2]));
        assert_eq!(data[0].d, 6.into());
        assert_eq!(data[0].d_q, 0.into());
        assert_eq!(data[0].v, 1.into());
    }

    #[test]
    fn empty_stratum_is_skipped() {
        let pair = MeroPair::new(poly(2, &[&[1, 1]]), SparsePolynomial::one(2), Mode::Local).unwrap();
        assert!(facet_data(&pair, &[0]).is_empty());
    }

    #[test]
    fn infinity_data_in_one_variable() {
        let pair = MeroPair::new(poly(1, &[&[2]]), poly(1, &[&[1], &[0]]), Mode::Infinity).unwrap();
        let data = facet_data(&pair, &[0]);
        assert_eq!(data.len(), 1);
        assert_eq!(data[0].alpha, v(&[1]));
        assert_eq!((data[0].d_p.clone(), data[0].d_q.clone(), data[0].v.clone()), (2.into(), 1.into(), 1.into()));
    }

    #[test]
    fn proper_containment() {
        assert_eq!(is_properly_contained(&cusp_pair()), Ok(()));
        let p = poly(2, &[&[2, 0], &[0, 3]]);
        let same = MeroPair::new(p.clone(), p.clone(), Mode::Local).unwrap();
        assert!(is_properly_contained(&same).is_err());
        let bad = MeroPair::new(p, poly(2, &[&[3, 0], &[0, 5]]), Mode::Local).unwrap();
        let w = is_properly_contained(&bad).unwrap_err();
        assert!(w.h_p < w.h_q || w.strict_failure);
        // The failure at u = (1,1) is visible directly.
        let u = v(&[1, 1]);
        assert!(support_value(bad.gamma_p(), &u) < support_value(bad.gamma_q(), &u));
    }

    #[test]
    fn proper_containment_at_infinity() {
        let p = poly(2, &[&[3, 0], &[0, 3]]);
        let q = poly(2, &[&[1, 0], &[0, 1], &[0, 0]]);
        let pair = MeroPair::new(p.clone(), q.clone(), Mode::Infinity).unwrap();
        assert_eq!(is_properly_contained(&pair), Ok(()));
        let swapped = MeroPair::new(q, p, Mode::Infinity).unwrap();
        assert!(is_properly_contained(&swapped).is_err());
    }
}
