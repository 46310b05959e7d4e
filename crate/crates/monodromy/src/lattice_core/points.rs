use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::hull::Polyhedron;
use super::vector::IntVector;
use super::GeometryError;

/// Frame-coordinate scanner for the lattice points of dilates `m · P`.
///
/// Points of `m · P ∩ ℤⁿ` correspond bijectively to integer `w` with
/// `m·base + Σ wᵢ bᵢ ∈ m · P`, so the scan runs over a `dim P`-dimensional
/// bounding box regardless of the ambient dimension.
pub struct LatticeScanner<'a> {
    poly: &'a Polyhedron,
    k: usize,
    facets: Vec<(Vec<i64>, i64)>,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl<'a> LatticeScanner<'a> {
    pub fn new(poly: &'a Polyhedron) -> Result<Self, GeometryError> {
        if !poly.is_bounded() {
            return Err(GeometryError::Unbounded);
        }
        let k = poly.dim().max(0) as usize;
        let facets = poly
            .frame_facets()
            .iter()
            .map(|(c, c0)| {
                let c: Option<Vec<i64>> = c.iter().map(|x| x.to_i64()).collect();
                Some((c?, c0.to_i64()?))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or(GeometryError::Overflow)?;
        let mut lo = vec![i64::MAX; k];
        let mut hi = vec![i64::MIN; k];
        if let Some(frame) = poly.frame() {
            for v in poly.vertices() {
                let z = frame.coordinates(v).expect("vertex in own frame");
                for i in 0..k {
                    let zi = z[i].to_i64().ok_or(GeometryError::Overflow)?;
                    lo[i] = lo[i].min(zi);
                    hi[i] = hi[i].max(zi);
                }
            }
        }
        Ok(LatticeScanner { poly, k, facets, lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// Calls `f` with the frame coordinates `w` of every lattice point of
    /// `m · P`. Nothing is visited for the empty polytope.
    pub fn for_each(&self, m: i64, mut f: impl FnMut(&[i64])) -> Result<(), GeometryError> {
        if self.poly.is_empty() {
            return Ok(());
        }
        let lo: Vec<i64> = self.lo.iter().map(|x| x.checked_mul(m)).collect::<Option<_>>().ok_or(GeometryError::Overflow)?;
        let hi: Vec<i64> = self.hi.iter().map(|x| x.checked_mul(m)).collect::<Option<_>>().ok_or(GeometryError::Overflow)?;
        if self.k == 0 {
            f(&[]);
            return Ok(());
        }
        let mut w = lo.clone();
        // Partial sums ⟨c, w⟩ + m·c₀ over the first `level` coordinates.
        let base: Vec<i128> = self.facets.iter().map(|(_, c0)| *c0 as i128 * m as i128).collect();
        self.recurse(0, &mut w, &lo, &hi, &base, &mut f);
        Ok(())
    }

    fn recurse(&self, level: usize, w: &mut Vec<i64>, lo: &[i64], hi: &[i64], acc: &[i128], f: &mut impl FnMut(&[i64])) {
        let k = self.k;
        if level == k - 1 {
            // Solve the last coordinate's interval directly.
            let mut a = lo[level] as i128;
            let mut b = hi[level] as i128;
            for ((c, _), s) in self.facets.iter().zip(acc) {
                let cl = c[level] as i128;
                if cl == 0 {
                    if *s < 0 {
                        return;
                    }
                } else if cl > 0 {
                    a = a.max(div_ceil(-s, cl));
                } else {
                    b = b.min(div_floor(-s, cl));
                }
            }
            let mut x = a;
            while x <= b {
                w[level] = x as i64;
                f(w);
                x += 1;
            }
            return;
        }
        for x in lo[level]..=hi[level] {
            w[level] = x;
            let next: Vec<i128> = self
                .facets
                .iter()
                .zip(acc)
                .map(|((c, _), s)| s + c[level] as i128 * x as i128)
                .collect();
            self.recurse(level + 1, w, lo, hi, &next, f);
        }
    }

    /// Ambient point `m·base + Σ wᵢ bᵢ`.
    pub fn ambient(&self, m: i64, w: &[i64]) -> IntVector {
        let frame = self.poly.frame().expect("nonempty");
        let z: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
        &frame.base_point().scale(&BigInt::from(m)) + &frame.direction(&z)
    }

    /// Number of lattice points of `m · P`.
    pub fn count(&self, m: i64) -> Result<u64, GeometryError> {
        let mut n = 0u64;
        self.for_each(m, |_| n += 1)?;
        Ok(n)
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// All lattice points of the dilate `m · P`, in lexicographic order.
pub fn lattice_points(p: &Polyhedron, m: u64) -> Result<Vec<IntVector>, GeometryError> {
    let scanner = LatticeScanner::new(p)?;
    let m = m as i64;
    let mut out = Vec::new();
    scanner.for_each(m, |w| out.push(scanner.ambient(m, w)))?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_and_triangle_counts() {
        let sq = Polyhedron::from_points_i64(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(lattice_points(&sq, 2).unwrap().len(), 9);
        let t = Polyhedron::from_points_i64(2, &[&[0, 0], &[2, 0], &[0, 2]]).unwrap();
        assert_eq!(lattice_points(&t, 1).unwrap().len(), 6);
    }

    #[test]
    fn primitive_segment_has_only_endpoints() {
        let seg = Polyhedron::from_points_i64(2, &[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(
            lattice_points(&seg, 1).unwrap(),
            vec![IntVector::from_i64(&[0, 3]), IntVector::from_i64(&[2, 0])]
        );
        assert_eq!(lattice_points(&seg, 3).unwrap().len(), 4);
    }

    #[test]
    fn zero_dilate_and_empty() {
        let t = Polyhedron::from_points_i64(2, &[&[1, 1], &[2, 1], &[1, 2]]).unwrap();
        assert_eq!(lattice_points(&t, 0).unwrap(), vec![IntVector::zero(2)]);
        assert!(lattice_points(&Polyhedron::empty(2), 0).unwrap().is_empty());
        let pt = Polyhedron::from_points_i64(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(lattice_points(&pt, 2).unwrap(), vec![IntVector::from_i64(&[2, 4, 6])]);
    }

    #[test]
    fn lower_dimensional_triangle_in_space() {
        // Standard 2-simplex {x+y+z = 1}; its m-th dilate has C(m+2,2) points.
        let t = Polyhedron::from_points_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        for m in 0..6u64 {
            assert_eq!(lattice_points(&t, m).unwrap().len() as u64, (m + 1) * (m + 2) / 2);
        }
    }
}
