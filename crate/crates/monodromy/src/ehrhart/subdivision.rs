use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::UniPoly;
use super::poset::{FacePoset, Orientation};
use super::weights::{AffineFunction, PiecewiseAffine};
use super::EhrhartError;
use crate::lattice_core::{convex_hull, normalized_volume, IntVector, Polyhedron};

/// A cell of a [`Subdivision`], identified by its vertex set.
#[derive(Clone, Debug)]
pub struct Cell {
    pub vertices: Vec<IntVector>,
    pub poly: Polyhedron,
}

impl Cell {
    pub fn dim(&self) -> i64 {
        self.poly.dim()
    }
}

/// Lattice polyhedral subdivision of a polytope `P`, closed under faces
/// and including ∅.
#[derive(Debug)]
pub struct Subdivision {
    ambient: Polyhedron,
    ambient_poset: FacePoset,
    cells: Vec<Cell>,
    index: HashMap<Vec<IntVector>, usize>,
    poset: FacePoset,
    sigma: Vec<usize>,
    maximal: Vec<usize>,
}

impl Subdivision {
    /// Builds the complex generated by `maximal` cells and validates that
    /// they tile `ambient`: each has full dimension, lies inside, and the
    /// normalized volumes add up.
    pub fn new(ambient: Polyhedron, maximal: Vec<Polyhedron>) -> Result<Self, EhrhartError> {
        if ambient.is_empty() {
            return Ok(Self::trivial(ambient));
        }
        let frame = ambient.frame().expect("nonempty").clone();
        let mut vol = BigInt::zero();
        for cell in &maximal {
            if cell.dim() != ambient.dim() || !cell.vertices().iter().all(|v| ambient.contains(v)) {
                return Err(EhrhartError::NotASubdivision(format!("cell with vertices {:?} does not fit", cell.vertices())));
            }
            vol += normalized_volume(cell, &frame).expect("cell inside the ambient frame");
        }
        let total = normalized_volume(&ambient, &frame).expect("own frame");
        if vol != total {
            return Err(EhrhartError::NotASubdivision(format!("cell volumes sum to {vol}, polytope has {total}")));
        }
        Ok(Self::assemble(ambient, maximal))
    }

    /// The subdivision whose only maximal cell is `P` itself.
    pub fn trivial(ambient: Polyhedron) -> Self {
        let maximal = if ambient.is_empty() { vec![] } else { vec![ambient.clone()] };
        Self::assemble(ambient, maximal)
    }

    fn assemble(ambient: Polyhedron, maximal: Vec<Polyhedron>) -> Self {
        let n = ambient.ambient_dim();
        let mut by_vertices: BTreeMap<Vec<IntVector>, Polyhedron> = BTreeMap::new();
        by_vertices.insert(vec![], Polyhedron::empty(n));
        for cell in &maximal {
            for face in cell.faces().iter().filter(|f| !f.is_empty()) {
                let mut vs = cell.face_vertices(face);
                vs.sort();
                by_vertices.entry(vs).or_insert_with(|| cell.face_polyhedron(face));
            }
        }
        let mut cells: Vec<Cell> = by_vertices.into_iter().map(|(vertices, poly)| Cell { vertices, poly }).collect();
        cells.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.vertices.cmp(&b.vertices)));
        let index = cells.iter().enumerate().map(|(i, c)| (c.vertices.clone(), i)).collect();
        let poset = FacePoset::new(cells.iter().map(|c| c.dim()).collect(), |i, j| {
            cells[i].vertices.iter().all(|v| cells[j].vertices.binary_search(v).is_ok())
        });
        let sigma = cells.iter().map(|c| carrier_face(&ambient, &c.vertices)).collect();
        let mut max_idx: Vec<usize> = maximal
            .iter()
            .map(|c| {
                let mut vs = c.vertices().to_vec();
                vs.sort();
                index_of(&cells, &vs)
            })
            .collect();
        max_idx.sort();
        let ambient_poset = FacePoset::of_polyhedron(&ambient);
        Subdivision { ambient, ambient_poset, cells, index, poset, sigma, maximal: max_idx }
    }

    pub fn ambient(&self) -> &Polyhedron {
        &self.ambient
    }

    pub fn ambient_poset(&self) -> &FacePoset {
        &self.ambient_poset
    }

    /// All cells, sorted by dimension then vertex set; index 0 is ∅.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn maximal_cells(&self) -> &[usize] {
        &self.maximal
    }

    pub fn poset(&self) -> &FacePoset {
        &self.poset
    }

    /// Index of the cell with the given (sorted) vertex set.
    pub fn find(&self, vertices: &[IntVector]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// `σ(F)`: index in `ambient().faces()` of the smallest face of `P`
    /// containing the cell.
    pub fn sigma(&self, cell: usize) -> usize {
        self.sigma[cell]
    }

    /// Cells contained in the face `q` of `P` (the restriction `S|_Q`).
    pub fn cells_in_face(&self, q: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&c| self.ambient_poset.leq(self.sigma[c], q)).collect()
    }
}

fn index_of(cells: &[Cell], vs: &[IntVector]) -> usize {
    cells.iter().position(|c| c.vertices == vs).expect("maximal cell recorded")
}

/// Smallest face of `p` containing all `points`.
fn carrier_face(p: &Polyhedron, points: &[IntVector]) -> usize {
    if points.is_empty() {
        return p.empty_face();
    }
    (0..p.faces().len())
        .filter(|&i| !p.face(i).is_empty())
        .filter(|&i| {
            p.facets_containing(p.face(i))
                .iter()
                .all(|&k| points.iter().all(|x| p.facets()[k].normal.dot(x) == p.facets()[k].offset))
        })
        .min_by_key(|&i| p.face(i).dim())
        .expect("the whole polytope contains its points")
}

/// `h(LK_{S|Q}(F); t)`, where `Q` is a face of `P` (index into the
/// ambient faces) containing `σ(F)`.
pub fn h_link_in(sub: &Subdivision, cell: usize, q: usize) -> Result<UniPoly, EhrhartError> {
    let dim_q = sub.ambient.face(q).dim();
    let dim_f = sub.cells[cell].dim();
    let mut r = UniPoly::zero();
    for c in sub.cells_in_face(q) {
        if !sub.poset.leq(cell, c) {
            continue;
        }
        let g = sub.poset.g(cell, c, Orientation::Forward)?;
        r = &r + &(&g * &UniPoly::t_minus_one_pow((dim_q - sub.cells[c].dim()) as usize));
    }
    Ok(r.reverse((dim_q - dim_f) as usize))
}

/// `h(LK_S(F); t)`; the link contains `F` itself.
pub fn h_link(sub: &Subdivision, cell: usize) -> Result<UniPoly, EhrhartError> {
    h_link_in(sub, cell, sub.ambient.whole_face())
}

/// The local h-polynomial `l_P(S, F; t)`.
pub fn local_h(sub: &Subdivision, cell: usize) -> Result<UniPoly, EhrhartError> {
    let p = &sub.ambient;
    let top = p.whole_face();
    let sigma = sub.sigma[cell];
    let mut out = UniPoly::zero();
    for q in 0..p.faces().len() {
        if !sub.ambient_poset.leq(sigma, q) {
            continue;
        }
        let h = h_link_in(sub, cell, q)?;
        let g = sub.ambient_poset.g(q, top, Orientation::Reversed)?;
        let term = &h * &g;
        out = if (p.dim() - p.face(q).dim()) % 2 == 0 { &out + &term } else { &out - &term };
    }
    Ok(out)
}

/// Regular subdivision of `P` induced by integer heights `omega` on the
/// lattice points `points` (which must contain the vertices of `P`), with
/// the convex piecewise affine function it carries.
///
/// Cells are the projections of the lower facets of the lifted hull.
pub fn regular_subdivision(
    p: &Polyhedron,
    points: &[IntVector],
    omega: &[BigInt],
) -> Result<(Subdivision, PiecewiseAffine), EhrhartError> {
    assert_eq!(points.len(), omega.len(), "one height per point");
    if !p.vertices().iter().all(|v| points.contains(v)) || !points.iter().all(|x| p.contains(x)) {
        return Err(EhrhartError::NotASubdivision("points must lie in P and include its vertices".into()));
    }
    let n = p.ambient_dim();
    let lifted: Vec<IntVector> = points
        .iter()
        .zip(omega)
        .map(|(x, w)| {
            let mut c = x.coords().to_vec();
            c.push(w.clone());
            IntVector::new(c)
        })
        .collect();
    let up = IntVector::unit(n + 1, n);
    let hull = convex_hull(n + 1, &lifted, std::slice::from_ref(&up)).expect("consistent dimensions");
    let mut cells = Vec::new();
    let mut pieces = Vec::new();
    for (k, facet) in hull.facets().iter().enumerate() {
        if !facet.normal.dot(&up).is_positive() {
            continue;
        }
        let face = hull
            .faces()
            .iter()
            .find(|f| hull.facets_containing(f) == vec![k])
            .expect("every facet is a face");
        let verts = hull.face_vertices(face);
        let proj: Vec<IntVector> = verts.iter().map(|v| IntVector::new(v.coords()[..n].to_vec())).collect();
        let values: Vec<BigRational> = verts.iter().map(|v| BigRational::from_integer(v.coords()[n].clone())).collect();
        let cell = convex_hull(n, &proj, &[]).expect("consistent dimensions");
        let f = AffineFunction::interpolate(&proj, &values).ok_or(EhrhartError::NotAffine)?;
        pieces.push((cell.clone(), f));
        cells.push(cell);
    }
    let sub = Subdivision::new(p.clone(), cells)?;
    Ok((sub, PiecewiseAffine::new(pieces)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_core::lattice_points;
    use num_traits::One;

    fn indicator_heights(len: usize, at: usize) -> Vec<BigInt> {
        (0..len).map(|i| if i == at { BigInt::one() } else { BigInt::zero() }).collect()
    }

    fn seg(a: i64, b: i64) -> Polyhedron {
        Polyhedron::from_points_i64(1, &[&[a], &[b]]).unwrap()
    }

    #[test]
    fn segment_link_and_local_h() {
        let trivial = Subdivision::trivial(seg(0, 1));
        assert_eq!(h_link(&trivial, 0).unwrap(), UniPoly::one());
        assert_eq!(local_h(&trivial, 0).unwrap(), UniPoly::zero());

        let split = Subdivision::new(seg(0, 2), vec![seg(0, 1), seg(1, 2)]).unwrap();
        assert_eq!(split.cells().len(), 6);
        assert_eq!(h_link(&split, 0).unwrap(), UniPoly::from_i64(&[1, 1]));
        assert_eq!(local_h(&split, 0).unwrap(), UniPoly::from_i64(&[0, 1]));
        for &m in split.maximal_cells() {
            assert_eq!(h_link(&split, m).unwrap(), UniPoly::one());
        }
        // The interior vertex 1 has σ = P and link two segments.
        let mid = split.find(&[IntVector::from_i64(&[1])]).unwrap();
        assert_eq!(split.sigma(mid), split.ambient().whole_face());
        assert_eq!(h_link(&split, mid).unwrap(), UniPoly::from_i64(&[1, 1]));
        assert_eq!(local_h(&split, mid).unwrap(), UniPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn bad_tilings_are_rejected() {
        assert!(Subdivision::new(seg(0, 2), vec![seg(0, 1)]).is_err());
        assert!(Subdivision::new(seg(0, 2), vec![seg(0, 3)]).is_err());
    }

    #[test]
    fn regular_subdivisions() {
        let p = seg(0, 2);
        let pts = lattice_points(&p, 1).unwrap();
        let (s, nu) = regular_subdivision(&p, &pts, &[0, 0, 1].map(BigInt::from)).unwrap();
        assert_eq!(s.maximal_cells().len(), 2);
        let at = |x: i64| nu.value(&IntVector::from_i64(&[x])).unwrap();
        assert_eq!(at(1), BigRational::zero());
        assert_eq!(at(2), BigRational::one());

        let (s, _) = regular_subdivision(&seg(0, 1), &[IntVector::from_i64(&[0]), IntVector::from_i64(&[1])], &[BigInt::zero(), BigInt::zero()]).unwrap();
        assert_eq!(s.maximal_cells().len(), 1);

        let sq = Polyhedron::from_points_i64(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let pts = lattice_points(&sq, 1).unwrap();
        let (s, _) = regular_subdivision(&sq, &pts, &indicator_heights(4, 0)).unwrap();
        assert_eq!(s.maximal_cells().len(), 2);
        assert!(s.maximal_cells().iter().all(|&c| s.cell(c).vertices.len() == 3));
    }

    #[test]
    fn local_h_is_palindromic_on_small_regular_subdivisions() {
        let tri = Polyhedron::from_points_i64(2, &[&[0, 0], &[3, 0], &[0, 3]]).unwrap();
        let pts = lattice_points(&tri, 1).unwrap();
        for seed in 0..8u64 {
            let omega: Vec<BigInt> = pts
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let s = x.coords().iter().map(|c| c * c).sum::<BigInt>();
                    s + BigInt::from((seed.wrapping_mul(2654435761).wrapping_add(i as u64 * 40503) >> 5) % 3)
                })
                .collect();
            let (s, _) = regular_subdivision(&tri, &pts, &omega).unwrap();
            for c in 0..s.cells().len() {
                let l = local_h(&s, c).unwrap();
                let span = (tri.dim() - s.cell(c).dim()) as usize;
                assert!(l.is_palindromic(span), "cell {c}: {l}");
                assert!(h_link(&s, c).unwrap().is_nonnegative());
                assert_eq!(h_link(&s, c).unwrap().coeff(0), BigInt::one());
            }
        }
    }
}
