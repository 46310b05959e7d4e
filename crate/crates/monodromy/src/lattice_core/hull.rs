use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::frame::AffineLatticeFrame;
use super::matrix;
use super::vector::IntVector;
use super::GeometryError;

/// A face of a [`Polyhedron`], recorded by the generators it contains.
///
/// Indices refer to [`Polyhedron::vertices`] and [`Polyhedron::rays`] of the
/// owning polyhedron. The empty face has dimension −1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    vertices: Vec<usize>,
    rays: Vec<usize>,
    dim: i64,
    incidence: FixedBitSet,
}

impl Face {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Face inclusion `other ⊆ self`.
    pub fn contains(&self, other: &Face) -> bool {
        other.incidence.is_subset(&self.incidence)
    }
}

/// Facet inequality `⟨normal, x⟩ ≥ offset` with a primitive inward normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: IntVector,
    pub offset: BigInt,
}

/// Lattice polyhedron `conv(vertices) + cone(rays)` with its facet
/// description and complete face lattice.
///
/// Bounded polyhedra (no rays) are lattice polytopes.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    ambient_dim: usize,
    vertices: Vec<IntVector>,
    rays: Vec<IntVector>,
    dim: i64,
    frame: Option<AffineLatticeFrame>,
    frame_facets: Vec<(Vec<BigInt>, BigInt)>,
    facets: Vec<Facet>,
    facet_incidence: Vec<FixedBitSet>,
    faces: Vec<Face>,
    face_index: HashMap<FixedBitSet, usize>,
}

/// A lattice polytope is a bounded [`Polyhedron`].
pub type LatticePolytope = Polyhedron;
/// Polyhedron with an orthant-type recession cone.
pub type LatticePolyhedron = Polyhedron;

/// Convex hull of `points` plus the cone over `rays`, in ambient dimension `n`.
pub fn convex_hull(n: usize, points: &[IntVector], rays: &[IntVector]) -> Result<Polyhedron, GeometryError> {
    for v in points.iter().chain(rays) {
        if v.dim() != n {
            return Err(GeometryError::DimensionMismatch { expected: n, found: v.dim() });
        }
    }
    if points.is_empty() {
        if rays.iter().any(|r| !r.is_zero()) {
            return Err(GeometryError::RaysWithoutPoints);
        }
        return Ok(Polyhedron::empty(n));
    }
    let pts: Vec<IntVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let rys: Vec<IntVector> = rays
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.primitive())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let base = pts[0].clone();
    let mut dirs: Vec<IntVector> = pts.iter().map(|p| p - &base).collect();
    dirs.extend(rys.iter().cloned());
    let frame = if dirs.iter().all(|d| d.is_zero()) {
        AffineLatticeFrame::spanned_by(&base, &[])
    } else {
        AffineLatticeFrame::spanned_by(&base, &dirs)
    };
    let k = frame.dim();

    let zp: Vec<Vec<BigInt>> = pts.iter().map(|p| frame.coordinates(p).expect("point in own frame")).collect();
    let zr: Vec<Vec<BigInt>> = rys
        .iter()
        .map(|r| frame.direction_coordinates(r).expect("ray in own frame"))
        .collect();

    // Homogenized generators: points at height 1, rays at height 0.
    let mut gens: Vec<Vec<BigInt>> = Vec::with_capacity(zp.len() + zr.len());
    for z in &zp {
        let mut g = z.clone();
        g.push(BigInt::from(1));
        gens.push(g);
    }
    for z in &zr {
        let mut g = z.clone();
        g.push(BigInt::zero());
        gens.push(g);
    }

    let polar = double_description(&gens, k + 1);
    let mut frame_facets: Vec<(Vec<BigInt>, BigInt)> = polar
        .into_iter()
        .filter(|a| a[..k].iter().any(|x| !x.is_zero()))
        .map(|mut a| {
            let c0 = a.pop().unwrap();
            (a, c0)
        })
        .collect();

    let eval = |f: &(Vec<BigInt>, BigInt), g: &[BigInt]| -> BigInt {
        f.0.iter().zip(g).map(|(a, b)| a * b).sum::<BigInt>() + &f.1 * &g[k]
    };

    // Extreme generators: tight facet normals must have rank k.
    let is_extreme = |g: &[BigInt], at_infinity: bool| -> bool {
        let mut rows: Vec<Vec<BigInt>> = frame_facets
            .iter()
            .filter(|f| eval(f, g).is_zero())
            .map(|f| {
                let mut r = f.0.clone();
                r.push(f.1.clone());
                r
            })
            .collect();
        if at_infinity {
            let mut h = vec![BigInt::zero(); k + 1];
            h[k] = BigInt::from(1);
            rows.push(h);
        }
        matrix::rank(&rows) == k
    };
    let mut vertex_ids: Vec<usize> = (0..pts.len()).filter(|&i| is_extreme(&gens[i], false)).collect();
    let ray_ids: Vec<usize> = (0..rys.len())
        .filter(|&j| is_extreme(&gens[pts.len() + j], true))
        .collect();
    if k == 0 {
        vertex_ids = vec![0];
    }

    let vertices: Vec<IntVector> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();
    let rays_out: Vec<IntVector> = ray_ids.iter().map(|&j| rys[j].clone()).collect();
    let vgens: Vec<Vec<BigInt>> = vertex_ids
        .iter()
        .map(|&i| gens[i].clone())
        .chain(ray_ids.iter().map(|&j| gens[pts.len() + j].clone()))
        .collect();

    // Canonical facet order: by ambient inequality.
    let mut with_ambient: Vec<(Facet, (Vec<BigInt>, BigInt))> = frame_facets
        .drain(..)
        .map(|(c, c0)| {
            let normal = frame.pullback(&c);
            let offset = normal.dot(frame.base_point()) - &c0;
            (Facet { normal, offset }, (c, c0))
        })
        .collect();
    with_ambient.sort();
    let facets: Vec<Facet> = with_ambient.iter().map(|x| x.0.clone()).collect();
    let frame_facets: Vec<(Vec<BigInt>, BigInt)> = with_ambient.into_iter().map(|x| x.1).collect();

    let ng = vgens.len();
    let facet_incidence: Vec<FixedBitSet> = frame_facets
        .iter()
        .map(|f| {
            let mut s = FixedBitSet::with_capacity(ng);
            for (i, g) in vgens.iter().enumerate() {
                if eval(f, g).is_zero() {
                    s.insert(i);
                }
            }
            s
        })
        .collect();

    let nv = vertices.len();
    let faces = enumerate_faces(&vgens, nv, &facet_incidence);
    let face_index = faces.iter().enumerate().map(|(i, f)| (f.incidence.clone(), i)).collect();

    Ok(Polyhedron {
        ambient_dim: n,
        vertices,
        rays: rays_out,
        dim: k as i64,
        frame: Some(frame),
        frame_facets,
        facets,
        facet_incidence,
        faces,
        face_index,
    })
}

/// Extreme rays of `{a : ⟨a, g⟩ ≥ 0 for all g ∈ gens}` for a spanning set of
/// generators in ℝ^d (double description method, combinatorial adjacency).
fn double_description(gens: &[Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
    let basis = matrix::independent_rows(gens);
    assert_eq!(basis.len(), d, "generators must span");
    let a0: Vec<Vec<BigInt>> = basis.iter().map(|&i| gens[i].clone()).collect();
    let inv = matrix::inverse(&a0).expect("basis is invertible");

    struct Ray {
        v: Vec<BigInt>,
        zero: FixedBitSet,
    }
    let ng = gens.len();
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let col: Vec<num_rational::BigRational> = (0..d).map(|i| inv[i][j].clone()).collect();
            let den = col.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
            let v: Vec<BigInt> = col.iter().map(|x| (x * num_rational::BigRational::from(den.clone())).to_integer()).collect();
            let mut zero = FixedBitSet::with_capacity(ng);
            for (r, &gi) in basis.iter().enumerate() {
                if r != j {
                    zero.insert(gi);
                }
            }
            Ray { v: primitive(v), zero }
        })
        .collect();

    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let in_basis: FixedBitSet = basis.iter().copied().collect::<FixedBitSet>();

    for (t, g) in gens.iter().enumerate().take(ng) {
        if t < in_basis.len() && in_basis.contains(t) {
            continue;
        }
        let s: Vec<BigInt> = rays.iter().map(|r| dot(&r.v, g)).collect();
        if s.iter().all(|x| !x.is_negative()) {
            for (r, sv) in rays.iter_mut().zip(&s) {
                if sv.is_zero() {
                    r.zero.insert(t);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| s[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| s[i].is_negative()).collect();
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = &rays[p].zero & &rays[q].zero;
                if d >= 2 && common.count_ones(..) < d - 2 {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|r| r == p || r == q || !common.is_subset(&rays[r].zero));
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(b, a)| &s[p] * b - &s[q] * a)
                    .collect();
                let mut zero = common;
                zero.insert(t);
                fresh.push(Ray { v: primitive(v), zero });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if s[i].is_negative() {
                continue;
            }
            if s[i].is_zero() {
                r.zero.insert(t);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }
    rays.into_iter().map(|r| r.v).collect()
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// All faces as intersections of facets, plus the whole polyhedron and ∅.
fn enumerate_faces(vgens: &[Vec<BigInt>], nv: usize, facet_incidence: &[FixedBitSet]) -> Vec<Face> {
    let ng = vgens.len();
    let mut full = FixedBitSet::with_capacity(ng);
    full.insert_range(..);
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    let mut stack = vec![full.clone()];
    seen.insert(full, ());
    while let Some(f) = stack.pop() {
        for inc in facet_incidence {
            let g = &f & inc;
            if g == f || !g.ones().any(|i| i < nv) || seen.contains_key(&g) {
                continue;
            }
            seen.insert(g.clone(), ());
            stack.push(g);
        }
    }
    let mut faces: Vec<Face> = seen
        .into_keys()
        .map(|inc| {
            let vertices: Vec<usize> = inc.ones().filter(|&i| i < nv).collect();
            let rays: Vec<usize> = inc.ones().filter(|&i| i >= nv).map(|i| i - nv).collect();
            let rows: Vec<Vec<BigInt>> = inc.ones().map(|i| vgens[i].clone()).collect();
            let dim = matrix::rank(&rows) as i64 - 1;
            Face { vertices, rays, dim, incidence: inc }
        })
        .collect();
    faces.push(Face { vertices: vec![], rays: vec![], dim: -1, incidence: FixedBitSet::with_capacity(ng) });
    faces.sort_by(|a, b| (a.dim, &a.vertices, &a.rays).cmp(&(b.dim, &b.vertices, &b.rays)));
    faces
}

impl Polyhedron {
    /// The empty polytope in ambient dimension `n` (dimension −1).
    pub fn empty(n: usize) -> Self {
        let empty = Face { vertices: vec![], rays: vec![], dim: -1, incidence: FixedBitSet::with_capacity(0) };
        let mut face_index = HashMap::new();
        face_index.insert(empty.incidence.clone(), 0);
        Polyhedron {
            ambient_dim: n,
            vertices: vec![],
            rays: vec![],
            dim: -1,
            frame: None,
            frame_facets: vec![],
            facets: vec![],
            facet_incidence: vec![],
            faces: vec![empty],
            face_index,
        }
    }

    /// Convenience constructor for a lattice polytope from `i64` points.
    pub fn from_points_i64(n: usize, points: &[&[i64]]) -> Result<Self, GeometryError> {
        let pts: Vec<IntVector> = points.iter().map(|p| IntVector::from_i64(p)).collect();
        convex_hull(n, &pts, &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// The lattice frame of the affine hull; `None` for the empty polytope.
    pub fn frame(&self) -> Option<&AffineLatticeFrame> {
        self.frame.as_ref()
    }

    /// Facets in frame coordinates: `⟨c, z⟩ + c₀ ≥ 0`.
    pub fn frame_facets(&self) -> &[(Vec<BigInt>, BigInt)] {
        &self.frame_facets
    }

    /// All faces, sorted by dimension then vertex indices; the first entry
    /// is ∅ and the last is the polyhedron itself.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, idx: usize) -> &Face {
        &self.faces[idx]
    }

    pub fn whole_face(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn empty_face(&self) -> usize {
        0
    }

    /// Position of a face in [`Polyhedron::faces`].
    pub fn face_position(&self, face: &Face) -> usize {
        self.face_index[&face.incidence]
    }

    pub fn face_vertices(&self, face: &Face) -> Vec<IntVector> {
        face.vertices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Faces of dimension `dim(face) − 1` contained in `face`.
    pub fn subfacets(&self, face: usize) -> Vec<usize> {
        let f = &self.faces[face];
        (0..self.faces.len())
            .filter(|&i| self.faces[i].dim == f.dim - 1 && f.contains(&self.faces[i]))
            .collect()
    }

    /// Facets (as inequality indices) that contain the given face.
    pub fn facets_containing(&self, face: &Face) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| face.incidence.is_subset(&self.facet_incidence[i]))
            .collect()
    }

    /// A normal vector exposing exactly `face`: the sum of the normals of
    /// the facets containing it. Zero for the whole polyhedron.
    pub fn relative_interior_normal(&self, face: &Face) -> IntVector {
        let mut u = IntVector::zero(self.ambient_dim);
        for i in self.facets_containing(face) {
            u = &u + &self.facets[i].normal;
        }
        u
    }

    /// The face as a polyhedron of its own.
    pub fn face_polyhedron(&self, face: &Face) -> Polyhedron {
        let pts = self.face_vertices(face);
        let rays: Vec<IntVector> = face.rays.iter().map(|&j| self.rays[j].clone()).collect();
        convex_hull(self.ambient_dim, &pts, &rays).expect("face of a valid polyhedron")
    }

    /// Membership of `x` in the dilate `m · P`.
    pub fn contains_dilate(&self, x: &IntVector, m: &BigInt) -> bool {
        let Some(frame) = &self.frame else { return false };
        let shifted = x - &frame.base_point().scale(m);
        let Some(z) = frame.direction_coordinates(&shifted) else { return false };
        self.frame_facets.iter().all(|(c, c0)| {
            let v: BigInt = c.iter().zip(&z).map(|(a, b)| a * b).sum::<BigInt>() + c0 * m;
            !v.is_negative()
        })
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.contains_dilate(x, &BigInt::from(1))
    }
}

/// The face on which `⟨u, ·⟩` attains its minimum over `p`.
pub fn supporting_face(p: &Polyhedron, u: &IntVector) -> Result<Face, GeometryError> {
    if u.dim() != p.ambient_dim {
        return Err(GeometryError::DimensionMismatch { expected: p.ambient_dim, found: u.dim() });
    }
    if p.is_empty() {
        return Ok(p.faces[0].clone());
    }
    if p.rays.iter().any(|r| u.dot(r).is_negative()) {
        return Err(GeometryError::NoSupportingFace);
    }
    let values: Vec<BigInt> = p.vertices.iter().map(|v| u.dot(v)).collect();
    let min = values.iter().min().unwrap();
    let nv = p.vertices.len();
    let mut inc = FixedBitSet::with_capacity(nv + p.rays.len());
    for (i, val) in values.iter().enumerate() {
        if val == min {
            inc.insert(i);
        }
    }
    for (j, r) in p.rays.iter().enumerate() {
        if u.dot(r).is_zero() {
            inc.insert(nv + j);
        }
    }
    let idx = p.face_index.get(&inc).copied().expect("argmin set is a face");
    Ok(p.faces[idx].clone())
}

/// Minimum of `⟨u, ·⟩` over `p`; `None` if unbounded below or `p` empty.
pub fn support_value(p: &Polyhedron, u: &IntVector) -> Option<BigInt> {
    if p.is_empty() || p.rays.iter().any(|r| u.dot(r).is_negative()) {
        return None;
    }
    p.vertices.iter().map(|v| u.dot(v)).min()
}

/// Minkowski sum `A + B`.
pub fn minkowski_sum(a: &Polyhedron, b: &Polyhedron) -> Result<Polyhedron, GeometryError> {
    if a.ambient_dim != b.ambient_dim {
        return Err(GeometryError::DimensionMismatch { expected: a.ambient_dim, found: b.ambient_dim });
    }
    if a.is_empty() || b.is_empty() {
        return Ok(Polyhedron::empty(a.ambient_dim));
    }
    let pts: Vec<IntVector> = a
        .vertices
        .iter()
        .flat_map(|x| b.vertices.iter().map(move |y| x + y))
        .collect();
    let rays: Vec<IntVector> = a.rays.iter().chain(&b.rays).cloned().collect();
    convex_hull(a.ambient_dim, &pts, &rays)
}

/// Lattice frame of the affine span of a nonempty face.
pub fn lattice_frame(p: &Polyhedron, face: &Face) -> Option<AffineLatticeFrame> {
    if face.is_empty() {
        return None;
    }
    let pts = p.face_vertices(face);
    let base = pts.iter().min().unwrap().clone();
    let mut dirs: Vec<IntVector> = pts.iter().map(|x| x - &base).collect();
    dirs.extend(face.rays.iter().map(|&j| p.rays[j].clone()));
    Some(AffineLatticeFrame::spanned_by(&base, &dirs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> IntVector {
        IntVector::from_i64(c)
    }

    fn count_dim(p: &Polyhedron, d: i64) -> usize {
        p.faces().iter().filter(|f| f.dim() == d).count()
    }

    #[test]
    fn unit_square() {
        let p = Polyhedron::from_points_i64(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(count_dim(&p, 0), 4);
        assert_eq!(count_dim(&p, 1), 4);
        assert_eq!(count_dim(&p, 2), 1);
        assert_eq!(count_dim(&p, -1), 1);
    }

    #[test]
    fn cusp_staircase() {
        let p = convex_hull(2, &[v(&[2, 0]), v(&[0, 3])], &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(p.vertices(), &[v(&[0, 3]), v(&[2, 0])]);
        let facets: Vec<(IntVector, BigInt)> = p.facets().iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
        assert!(facets.contains(&(v(&[3, 2]), BigInt::from(6))));
        assert!(facets.contains(&(v(&[1, 0]), BigInt::from(0))));
        assert!(facets.contains(&(v(&[0, 1]), BigInt::from(0))));
        assert_eq!(facets.len(), 3);
    }

    #[test]
    fn empty_input() {
        let p = convex_hull(3, &[], &[]).unwrap();
        assert_eq!(p.dim(), -1);
        assert_eq!(p.faces().len(), 1);
        assert!(convex_hull(2, &[], &[v(&[1, 0])]).is_err());
        assert!(convex_hull(2, &[v(&[1, 0, 0])], &[]).is_err());
    }

    #[test]
    fn redundant_points_removed() {
        let p = Polyhedron::from_points_i64(2, &[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[1, 0], &[0, 0]]).unwrap();
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn lower_dimensional_polytope() {
        let p = Polyhedron::from_points_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1]]).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(count_dim(&p, 1), 4);
        for f in p.facets() {
            for x in p.vertices() {
                assert!(f.normal.dot(x) >= f.offset);
            }
        }
    }

    #[test]
    fn cube_face_lattice() {
        let mut pts = vec![];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    pts.push(v(&[a, b, c]));
                }
            }
        }
        let p = convex_hull(3, &pts, &[]).unwrap();
        assert_eq!((count_dim(&p, 0), count_dim(&p, 1), count_dim(&p, 2)), (8, 12, 6));
    }

    #[test]
    fn supporting_faces() {
        let sq = Polyhedron::from_points_i64(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let f = supporting_face(&sq, &v(&[1, 0])).unwrap();
        assert_eq!(sq.face_vertices(&f), vec![v(&[0, 0]), v(&[0, 1])]);
        let whole = supporting_face(&sq, &v(&[0, 0])).unwrap();
        assert_eq!(whole.dim(), 2);

        let cusp = convex_hull(2, &[v(&[2, 0]), v(&[0, 3])], &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let f = supporting_face(&cusp, &v(&[3, 2])).unwrap();
        assert_eq!(cusp.face_vertices(&f), vec![v(&[0, 3]), v(&[2, 0])]);
        assert!(f.is_bounded());
        assert_eq!(supporting_face(&cusp, &v(&[-1, 1])), Err(GeometryError::NoSupportingFace));
    }

    #[test]
    fn minkowski_sums() {
        let a = convex_hull(2, &[v(&[2, 0]), v(&[0, 3])], &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let b = convex_hull(2, &[v(&[1, 0]), v(&[0, 1])], &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let s = minkowski_sum(&a, &b).unwrap();
        assert_eq!(s.vertices(), &[v(&[0, 4]), v(&[2, 1]), v(&[3, 0])]);
        let compact: Vec<IntVector> = s
            .facets()
            .iter()
            .filter(|f| f.normal.is_positive())
            .map(|f| f.normal.clone())
            .collect();
        assert_eq!(compact, vec![v(&[1, 1]), v(&[3, 2])]);

        let e1 = Polyhedron::from_points_i64(2, &[&[0, 0], &[1, 0]]).unwrap();
        let e2 = Polyhedron::from_points_i64(2, &[&[0, 0], &[0, 1]]).unwrap();
        let sq = minkowski_sum(&e1, &e2).unwrap();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.dim(), 2);

        let pt = Polyhedron::from_points_i64(2, &[&[5, 7]]).unwrap();
        let t = minkowski_sum(&pt, &sq).unwrap();
        assert_eq!(t.vertices()[0], v(&[5, 7]));
    }

    #[test]
    fn frames_of_faces() {
        let cusp = convex_hull(2, &[v(&[2, 0]), v(&[0, 3])], &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let f = supporting_face(&cusp, &v(&[3, 2])).unwrap();
        let fr = lattice_frame(&cusp, &f).unwrap();
        assert_eq!(fr.dim(), 1);
        let b = &fr.basis()[0];
        assert!(*b == v(&[-2, 3]) || *b == v(&[2, -3]));
        let pt = supporting_face(&cusp, &v(&[1, 1])).unwrap();
        assert_eq!(lattice_frame(&cusp, &pt).unwrap().dim(), 0);
    }
}
