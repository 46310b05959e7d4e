use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::frame::AffineLatticeFrame;
use super::hull::{convex_hull, Polyhedron};
use super::matrix;
use super::vector::IntVector;
use super::GeometryError;

pub(crate) fn factorial(d: usize) -> BigInt {
    (1..=d).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Simplices (as vertex index lists) of the pulling triangulation of a
/// face: cone from its smallest vertex over the triangulated subfacets
/// that avoid it.
fn pulling_simplices(p: &Polyhedron, face: usize) -> Vec<Vec<usize>> {
    let f = p.face(face);
    if f.dim() == 0 {
        return vec![vec![f.vertices()[0]]];
    }
    let apex = f.vertices()[0];
    let mut out = Vec::new();
    for sub in p.subfacets(face) {
        if p.face(sub).vertices().contains(&apex) {
            continue;
        }
        for mut s in pulling_simplices(p, sub) {
            s.push(apex);
            out.push(s);
        }
    }
    out
}

/// Vol_ℤ of a full-dimensional polytope whose vertices are given in the
/// coordinates `z` of a rank-`d` lattice.
fn volume_in_coordinates(p: &Polyhedron, z: &[Vec<BigInt>], d: usize) -> BigInt {
    let mut total = BigInt::zero();
    for s in pulling_simplices(p, p.whole_face()) {
        let apex = &z[s[d]];
        let rows: Vec<Vec<BigInt>> = s[..d]
            .iter()
            .map(|&i| z[i].iter().zip(apex).map(|(a, b)| a - b).collect())
            .collect();
        total += matrix::determinant(&rows).abs();
    }
    total
}

/// Normalized volume `Vol_ℤ = d! · vol` of `p` measured in `frame`.
pub fn normalized_volume(p: &Polyhedron, frame: &AffineLatticeFrame) -> Result<BigInt, GeometryError> {
    if p.ambient_dim() != frame.ambient_dim() {
        return Err(GeometryError::DimensionMismatch { expected: frame.ambient_dim(), found: p.ambient_dim() });
    }
    if p.is_empty() {
        return Ok(BigInt::zero());
    }
    if !p.is_bounded() {
        return Err(GeometryError::Unbounded);
    }
    let z: Vec<Vec<BigInt>> = p
        .vertices()
        .iter()
        .map(|v| frame.coordinates(v).ok_or(GeometryError::NotInFrame))
        .collect::<Result<_, _>>()?;
    let d = frame.dim();
    if p.dim() < d as i64 {
        return Ok(BigInt::zero());
    }
    if d == 0 {
        return Ok(BigInt::one());
    }
    Ok(volume_in_coordinates(p, &z, d))
}

/// Vol_ℤ in `ℤ^d` of the convex hull of a point set given in coordinates.
pub(crate) fn volume_of_point_set(d: usize, pts: &[Vec<BigInt>]) -> BigInt {
    if pts.is_empty() {
        return BigInt::zero();
    }
    if d == 0 {
        return BigInt::one();
    }
    let vs: Vec<IntVector> = pts.iter().map(|z| IntVector::new(z.clone())).collect();
    let hull = convex_hull(d, &vs, &[]).expect("consistent dimensions");
    if hull.dim() < d as i64 {
        return BigInt::zero();
    }
    let z: Vec<Vec<BigInt>> = hull.vertices().iter().map(|v| v.coords().to_vec()).collect();
    volume_in_coordinates(&hull, &z, d)
}

fn minkowski_points(d: usize, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let sums: Vec<IntVector> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| IntVector::new(x.iter().zip(y).map(|(s, t)| s + t).collect())))
        .collect();
    let hull = convex_hull(d, &sums, &[]).expect("consistent dimensions");
    hull.vertices().iter().map(|v| v.coords().to_vec()).collect()
}

/// Mixed volume of `args` in `frame`, by the alternating sum over subsets
/// of Vol_ℤ of partial Minkowski sums, divided by d!.
///
/// Each argument may lie in any translate of the frame's linear span.
pub fn mixed_volume(args: &[&Polyhedron], frame: &AffineLatticeFrame) -> Result<BigInt, GeometryError> {
    let lists: Vec<Vec<IntVector>> = args.iter().map(|p| p.vertices().to_vec()).collect();
    mixed_volume_of_points(&lists, frame)
}

/// [`mixed_volume`] on polytopes given by (possibly redundant) point lists.
pub fn mixed_volume_of_points(args: &[Vec<IntVector>], frame: &AffineLatticeFrame) -> Result<BigInt, GeometryError> {
    let d = frame.dim();
    if args.len() != d {
        return Err(GeometryError::DimensionMismatch { expected: d, found: args.len() });
    }
    if args.iter().any(|a| a.is_empty()) {
        return Ok(BigInt::zero());
    }
    if d == 0 {
        return Ok(BigInt::one());
    }
    let coords: Vec<Vec<Vec<BigInt>>> = args
        .iter()
        .map(|pts| {
            let base = pts.iter().min().unwrap();
            pts.iter()
                .map(|x| frame.direction_coordinates(&(x - base)).ok_or(GeometryError::NotInFrame))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let mut total = BigInt::zero();
    for mask in 1u32..(1u32 << d) {
        let mut sum: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); d]];
        for (i, c) in coords.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = minkowski_points(d, &sum, c);
            }
        }
        let vol = volume_of_point_set(d, &sum);
        let k = mask.count_ones() as usize;
        if (d - k).is_multiple_of(2) {
            total += vol;
        } else {
            total -= vol;
        }
    }
    let fact = factorial(d);
    let (q, r) = total.div_rem(&fact);
    assert!(r.is_zero() && !q.is_negative(), "mixed volume sum {total} not a nonnegative multiple of {d}!");
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(d: usize) -> Polyhedron {
        let pts: Vec<IntVector> = (0..1u32 << d)
            .map(|m| IntVector::from_i64(&(0..d).map(|i| ((m >> i) & 1) as i64).collect::<Vec<_>>()))
            .collect();
        convex_hull(d, &pts, &[]).unwrap()
    }

    fn simplex(d: usize) -> Polyhedron {
        let mut pts = vec![IntVector::zero(d)];
        pts.extend((0..d).map(|i| IntVector::unit(d, i)));
        convex_hull(d, &pts, &[]).unwrap()
    }

    #[test]
    fn cube_and_simplex_volumes() {
        for d in 1..=4 {
            let fr = AffineLatticeFrame::standard(d);
            assert_eq!(normalized_volume(&cube(d), &fr).unwrap(), factorial(d));
            assert_eq!(normalized_volume(&simplex(d), &fr).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn segment_lattice_length() {
        let seg = Polyhedron::from_points_i64(2, &[&[2, 0], &[0, 3]]).unwrap();
        let fr = seg.frame().unwrap().clone();
        assert_eq!(normalized_volume(&seg, &fr).unwrap(), BigInt::one());
        let long = Polyhedron::from_points_i64(2, &[&[0, 0], &[4, 6]]).unwrap();
        let fr = long.frame().unwrap().clone();
        assert_eq!(normalized_volume(&long, &fr).unwrap(), BigInt::from(2));
    }

    #[test]
    fn degenerate_conventions() {
        let fr = AffineLatticeFrame::standard(2);
        let seg = Polyhedron::from_points_i64(2, &[&[0, 0], &[1, 0]]).unwrap();
        assert_eq!(normalized_volume(&seg, &fr).unwrap(), BigInt::zero());
        assert_eq!(normalized_volume(&Polyhedron::empty(2), &fr).unwrap(), BigInt::zero());
        let pt = Polyhedron::from_points_i64(2, &[&[3, 1]]).unwrap();
        let pfr = pt.frame().unwrap().clone();
        assert_eq!(normalized_volume(&pt, &pfr).unwrap(), BigInt::one());
        assert_eq!(normalized_volume(&seg, &pfr), Err(GeometryError::NotInFrame));
    }

    #[test]
    fn mixed_volumes_by_hand() {
        let fr = AffineLatticeFrame::standard(2);
        let e1 = Polyhedron::from_points_i64(2, &[&[0, 0], &[1, 0]]).unwrap();
        let e2 = Polyhedron::from_points_i64(2, &[&[0, 0], &[0, 1]]).unwrap();
        assert_eq!(mixed_volume(&[&e1, &e2], &fr).unwrap(), BigInt::one());
        let a = Polyhedron::from_points_i64(2, &[&[0, 0], &[3, 0]]).unwrap();
        let b = Polyhedron::from_points_i64(2, &[&[0, 0], &[0, 5]]).unwrap();
        assert_eq!(mixed_volume(&[&a, &b], &fr).unwrap(), BigInt::from(15));
        let t = Polyhedron::from_points_i64(2, &[&[0, 0], &[2, 0], &[0, 3]]).unwrap();
        assert_eq!(mixed_volume(&[&t, &t], &fr).unwrap(), normalized_volume(&t, &fr).unwrap());
        assert_eq!(mixed_volume(&[&t, &Polyhedron::empty(2)], &fr).unwrap(), BigInt::zero());
        let f0 = AffineLatticeFrame::of_points(&[IntVector::from_i64(&[1, 1])]).unwrap();
        assert_eq!(mixed_volume(&[], &f0).unwrap(), BigInt::one());
    }

    #[test]
    fn mixed_volume_in_a_sublattice_frame() {
        // Two segments in the plane x+y+z = 1 of ℝ³.
        let a = Polyhedron::from_points_i64(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let b = Polyhedron::from_points_i64(3, &[&[0, 0, 1], &[0, 1, 0]]).unwrap();
        let fr = AffineLatticeFrame::of_points(&[
            IntVector::from_i64(&[1, 0, 0]),
            IntVector::from_i64(&[0, 1, 0]),
            IntVector::from_i64(&[0, 0, 1]),
        ])
        .unwrap();
        assert_eq!(mixed_volume(&[&a, &b], &fr).unwrap(), BigInt::one());
    }
}
