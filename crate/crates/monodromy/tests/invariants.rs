use monodromy::ehrhart::{local_h, regular_subdivision, Subdivision, UniPoly};
use monodromy::lattice_core::{convex_hull, lattice_points, mixed_volume, normalized_volume, IntVector, Polyhedron};
use monodromy::newton::{is_properly_contained, MeroPair, Mode, SparsePolynomial};
use monodromy::spectrum::{build_weighted_region, Analysis};
use monodromy::zeta::multiplicity;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn point_set(d: usize, max: i64, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..=max, d), len)
}

fn hull(d: usize, pts: &[Vec<i64>]) -> Polyhedron {
    let v: Vec<IntVector> = pts.iter().map(|p| IntVector::from_i64(p)).collect();
    convex_hull(d, &v, &[]).unwrap()
}

fn convenient(n: usize, lo: i64, hi: i64, extra_max: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (prop::collection::vec(lo..=hi, n), point_set(n, extra_max, 0..=2)).prop_map(move |(axes, extra)| {
        let mut s: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { axes[i] } else { 0 }).collect())
            .collect();
        s.extend(extra.into_iter().filter(|v| v.iter().any(|&x| x > 0)));
        s
    })
}

fn local_pair() -> impl Strategy<Value = MeroPair> {
    (2usize..=3)
        .prop_flat_map(|n| (Just(n), convenient(n, 1, 2, 2), convenient(n, 2, 5, 4)))
        .prop_map(|(n, q, p)| {
            let sp = |s: &[Vec<i64>]| {
                let refs: Vec<&[i64]> = s.iter().map(|v| v.as_slice()).collect();
                SparsePolynomial::from_exponents(n, &refs).unwrap()
            };
            MeroPair::new(sp(&p), sp(&q), Mode::Local).unwrap()
        })
        .prop_filter("proper containment", |pair| is_properly_contained(pair).is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hodge_jordan_and_spectrum_invariants(pair in local_pair()) {
        let region = build_weighted_region(&pair).unwrap();
        let a = Analysis::new(&pair, &region);
        let n = pair.n() as i64;
        let sp = a.reduced_spectrum().unwrap();
        prop_assert_eq!(sp.reflect(&BigRational::from_integer(n.into())), sp.clone());
        for l in a.eigenvalue_candidates() {
            let e = a.e_lambda(&l).unwrap();
            for (&(p, q), c) in e.poly.terms() {
                prop_assert_eq!(c, &e.e(n - 1 - q, n - 1 - p));
            }
            prop_assert_eq!(a.e_lambda(&l.conjugate()).unwrap().poly, e.poly.swap());
            let j = a.jordan_counts(&l).unwrap();
            prop_assert_eq!(&j.via_local_h, &j.via_weights);
            let m = multiplicity(&pair, &l).unwrap();
            prop_assert_eq!(j.total_dimension(), m.clone());
            prop_assert_eq!(sp.mass_at(&l), m);
        }
    }

    #[test]
    fn weighted_region_tiles_k(pair in local_pair()) {
        let region = build_weighted_region(&pair).unwrap();
        let sub = &region.subdivision;
        let frame = region.k.frame().unwrap();
        let total: BigInt = sub.maximal_cells().iter().map(|&i| normalized_volume(&sub.cell(i).poly, frame).unwrap()).sum();
        prop_assert_eq!(total, normalized_volume(&region.k, frame).unwrap());
        for (i, c) in sub.cells().iter().enumerate().skip(1) {
            let span = (region.k.dim() - c.dim()) as usize;
            prop_assert!(local_h(sub, i).unwrap().is_palindromic(span));
        }
    }

    #[test]
    fn mixed_volume_of_equal_arguments_is_volume(pts in (1usize..=3).prop_flat_map(|d| point_set(d, 3, 1..=5))) {
        let d = pts[0].len();
        let p = hull(d, &pts);
        prop_assume!(p.dim() == d as i64);
        let frame = p.frame().unwrap();
        let args: Vec<&Polyhedron> = (0..d).map(|_| &p).collect();
        prop_assert_eq!(mixed_volume(&args, frame).unwrap(), normalized_volume(&p, frame).unwrap());
    }

    #[test]
    fn regular_subdivisions_tile(pts in point_set(2, 3, 3..=6), heights in prop::collection::vec(0i64..3, 16)) {
        let p = hull(2, &pts);
        prop_assume!(p.dim() == 2);
        let points = lattice_points(&p, 1).unwrap();
        let omega: Vec<BigInt> = points.iter().enumerate().map(|(i, _)| BigInt::from(heights[i % 16])).collect();
        let (sub, nu) = regular_subdivision(&p, &points, &omega).unwrap();
        prop_assert!(nu.is_continuous());
        let frame = p.frame().unwrap();
        let total: BigInt = sub.maximal_cells().iter().map(|&i| normalized_volume(&sub.cell(i).poly, frame).unwrap()).sum();
        prop_assert_eq!(total, normalized_volume(&p, frame).unwrap());
        // The trivial subdivision has no local h at the empty cell.
        prop_assert_eq!(local_h(&Subdivision::trivial(p.clone()), 0).unwrap(), UniPoly::zero());
    }
}
