use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::SpectrumError;
use crate::ehrhart::{regular_subdivision, AffineFunction, PiecewiseAffine, Subdivision};
use crate::lattice_core::{convex_hull, lattice_points, support_value, supporting_face, IntVector, Polyhedron};
use crate::newton::{is_convenient, is_properly_contained, MeroPair, Mode};

/// The Cayley polytope `□_γ = conv(γ(P) ∪ γ(Q))` over a compact face `γ`
/// of `Γ₊(f)`, with its lattice height data.
#[derive(Clone, Debug)]
pub struct CayleyCell {
    pub gamma: Polyhedron,
    pub face_p: Polyhedron,
    pub face_q: Polyhedron,
    pub cell: Polyhedron,
    /// A conormal of `γ` in `Γ₊(f)` from the relative interior of its cone.
    pub conormal: IntVector,
    /// `α_γ` in the lattice frame of `cell`: zero along `γ(Q)`, `d_γ` on `γ(P)`.
    pub alpha: Vec<BigInt>,
    pub d_gamma: BigInt,
    pub s_gamma: usize,
    pub m_gamma: usize,
    h_q: BigInt,
    h_p: BigInt,
    step: BigInt,
}

impl CayleyCell {
    pub fn dim_gamma(&self) -> i64 {
        self.gamma.dim()
    }

    /// Lattice height of `v ∈ aff(□_γ) ∩ ℤⁿ` above the `γ(Q)` hyperplane.
    pub fn height(&self, v: &IntVector) -> BigInt {
        let (h, r) = (self.conormal.dot(v) - &self.h_q).div_rem(&self.step);
        debug_assert!(r.is_zero(), "{v} is not a lattice point of aff □");
        h
    }

    /// `ν` on `□_γ`: 0 on `γ(P)`, 1 on `γ(Q)`.
    pub fn nu(&self) -> AffineFunction {
        AffineFunction::new(-&self.conormal, self.h_p.clone(), &self.h_p - &self.h_q)
    }

    /// True when the relative interior of `γ` lies in the open orthant.
    pub fn is_interior(&self) -> bool {
        self.s_gamma == self.gamma.ambient_dim()
    }

    pub fn sorted_vertices(&self) -> Vec<IntVector> {
        let mut v = self.cell.vertices().to_vec();
        v.sort();
        v
    }
}

/// `K` with the weight `ν` and the subdivision `S_ν` on which it is affine.
#[derive(Debug)]
pub struct WeightedRegion {
    pub k: Polyhedron,
    pub nu: PiecewiseAffine,
    pub subdivision: Subdivision,
    pub cells: Vec<CayleyCell>,
}

fn check_local(pair: &MeroPair) -> Result<(), SpectrumError> {
    if pair.mode() != Mode::Local {
        return Err(SpectrumError::WrongMode);
    }
    if !is_convenient(pair.p()) {
        return Err(SpectrumError::NotConvenient("P"));
    }
    if !is_convenient(pair.q()) {
        return Err(SpectrumError::NotConvenient("Q"));
    }
    is_properly_contained(pair).map_err(SpectrumError::NotProperlyContained)
}

fn cayley_cell(pair: &MeroPair, face: usize) -> Result<CayleyCell, SpectrumError> {
    let n = pair.n();
    let gf = pair.gamma_f();
    let gamma = gf.face_polyhedron(gf.face(face));
    let u = gf.relative_interior_normal(gf.face(face));
    let face_p = pair.gamma_p().face_polyhedron(&supporting_face(pair.gamma_p(), &u)?);
    let face_q = pair.gamma_q().face_polyhedron(&supporting_face(pair.gamma_q(), &u)?);
    let pts: Vec<IntVector> = face_p.vertices().iter().chain(face_q.vertices()).cloned().collect();
    let cell = convex_hull(n, &pts, &[])?;
    if cell.dim() != gamma.dim() + 1 {
        return Err(SpectrumError::HypothesisViolation(format!(
            "□ over the face with conormal {u} has dimension {} instead of {}",
            cell.dim(),
            gamma.dim() + 1
        )));
    }
    let h_p = support_value(pair.gamma_p(), &u).expect("bounded below on the cone");
    let h_q = support_value(pair.gamma_q(), &u).expect("bounded below on the cone");
    let push = cell.frame().expect("nonempty").pushforward(&u);
    let step = push.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let gap = &h_p - &h_q;
    if !gap.is_positive() || step.is_zero() || !gap.is_multiple_of(&step) {
        return Err(SpectrumError::HypothesisViolation(format!("degenerate heights {h_p}, {h_q} at conormal {u}")));
    }
    let s_gamma = (0..n).filter(|&i| gamma.vertices().iter().any(|v| !v.coords()[i].is_zero())).count();
    let m_gamma = s_gamma as i64 - gamma.dim() - 1;
    if m_gamma < 0 {
        return Err(SpectrumError::HypothesisViolation(format!("m_γ = {m_gamma} at conormal {u}")));
    }
    Ok(CayleyCell {
        alpha: push.iter().map(|x| x / &step).collect(),
        d_gamma: &gap / &step,
        gamma,
        face_p,
        face_q,
        cell,
        conormal: u,
        s_gamma,
        m_gamma: m_gamma as usize,
        h_q,
        h_p,
        step,
    })
}

/// One Cayley cell per compact face of `Γ₊(f)`, in face-lattice order.
pub fn cayley_cells(pair: &MeroPair) -> Result<Vec<CayleyCell>, SpectrumError> {
    check_local(pair)?;
    let gf = pair.gamma_f();
    (0..gf.faces().len())
        .filter(|&i| !gf.face(i).is_empty() && gf.face(i).is_bounded())
        .map(|i| cayley_cell(pair, i))
        .collect()
}

fn sorted_vertex_sets<'a>(cells: impl Iterator<Item = &'a Polyhedron>) -> Vec<Vec<IntVector>> {
    let mut out: Vec<Vec<IntVector>> = cells
        .map(|c| {
            let mut v = c.vertices().to_vec();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

/// Builds `K = conv(V(Γ₊P) ∪ V(Γ₊Q))`, the weight `ν` and `S_ν`.
///
/// The cell set is checked twice: the cells must tile `K`, and the
/// regular subdivision lifting `Γ_P`-vertices to 0 and `Γ_Q`-vertices to 1
/// must produce the same maximal cells.
pub fn build_weighted_region(pair: &MeroPair) -> Result<WeightedRegion, SpectrumError> {
    let n = pair.n();
    let cells = cayley_cells(pair)?;
    let mut points: Vec<IntVector> = pair.gamma_p().vertices().to_vec();
    let np = points.len();
    points.extend(pair.gamma_q().vertices().iter().cloned());
    let k = convex_hull(n, &points, &[])?;
    let mut pieces = Vec::new();
    for c in &cells {
        if !c.cell.vertices().iter().all(|v| k.contains(v)) {
            return Err(SpectrumError::HypothesisViolation(format!("□ with conormal {} leaves K", c.conormal)));
        }
        if c.dim_gamma() == n as i64 - 1 {
            pieces.push((c.cell.clone(), c.nu()));
        }
    }
    let conv_p = convex_hull(n, pair.gamma_p().vertices(), &[])?;
    if conv_p.dim() == n as i64 {
        pieces.push((conv_p, AffineFunction::new(IntVector::zero(n), BigInt::zero(), BigInt::from(1))));
    }
    let subdivision = Subdivision::new(k.clone(), pieces.iter().map(|(c, _)| c.clone()).collect())?;
    let nu = PiecewiseAffine::new(pieces);
    if !nu.is_continuous() {
        return Err(SpectrumError::HypothesisViolation("ν disagrees on shared vertices".into()));
    }
    let omega: Vec<BigInt> = (0..points.len()).map(|i| BigInt::from(u8::from(i >= np))).collect();
    let (regular, _) = regular_subdivision(&k, &points, &omega)?;
    let ours = sorted_vertex_sets(nu.pieces().iter().map(|(c, _)| c));
    let lifted = sorted_vertex_sets(regular.maximal_cells().iter().map(|&i| &regular.cell(i).poly));
    if ours != lifted {
        return Err(SpectrumError::HypothesisViolation(format!(
            "Cayley cells {ours:?} differ from the lifted subdivision {lifted:?}"
        )));
    }
    Ok(WeightedRegion { k, nu, subdivision, cells })
}

/// Lattice points in the relative interior of a polytope.
pub(crate) fn relint_points(p: &Polyhedron) -> Result<Vec<IntVector>, SpectrumError> {
    let walls: Vec<Polyhedron> =
        p.faces().iter().filter(|f| !f.is_empty() && f.dim() == p.dim() - 1).map(|f| p.face_polyhedron(f)).collect();
    Ok(lattice_points(p, 1)?.into_iter().filter(|x| walls.iter().all(|w| !w.contains(x))).collect())
}
