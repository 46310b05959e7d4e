use std::collections::BTreeMap;

use monodromy::lattice_core::{convex_hull, mixed_volume, normalized_volume, AffineLatticeFrame, IntVector, Polyhedron};
use monodromy::newton::{is_properly_contained, MeroPair, Mode, SparsePolynomial};
use monodromy::spectrum::reduced_spectrum;
use monodromy::zeta::zeta_local;
use monodromy_oracles::{mixed_volume_by_interpolation, spectrum_by_definition, volume_by_dilation, zeta_staircase_2d};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn hull(d: usize, pts: &[Vec<i64>]) -> Polyhedron {
    let v: Vec<IntVector> = pts.iter().map(|p| IntVector::from_i64(p)).collect();
    convex_hull(d, &v, &[]).unwrap()
}

fn point_set(d: usize, max: i64, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..=max, d), len)
}

fn pair_of(n: usize, p: &[Vec<i64>], q: &[Vec<i64>]) -> MeroPair {
    let sp = |s: &[Vec<i64>]| {
        let refs: Vec<&[i64]> = s.iter().map(|v| v.as_slice()).collect();
        SparsePolynomial::from_exponents(n, &refs).unwrap()
    };
    MeroPair::new(sp(p), sp(q), Mode::Local).unwrap()
}

/// Convenient supports: axis powers `lo..=hi` plus extra terms.
fn convenient(n: usize, lo: i64, hi: i64, extra_max: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (prop::collection::vec(lo..=hi, n), point_set(n, extra_max, 0..=2)).prop_map(move |(axes, extra)| {
        let mut s: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { axes[i] } else { 0 }).collect())
            .collect();
        s.extend(extra.into_iter().filter(|v| v.iter().any(|&x| x > 0)));
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn volume_matches_dilation_counts(pts in (1usize..=3).prop_flat_map(|d| point_set(d, 4, 1..=6))) {
        let dim = pts[0].len();
        let p = hull(dim, &pts);
        let vol = normalized_volume(&p, p.frame().unwrap()).unwrap();
        prop_assert_eq!(vol.to_i128().unwrap(), volume_by_dilation(&pts));
    }

    #[test]
    fn mixed_volume_matches_interpolation(args in (1usize..=3).prop_flat_map(|d| prop::collection::vec(point_set(d, 3, 1..=4), d))) {
        let d = args.len();
        let polys: Vec<Polyhedron> = args.iter().map(|a| hull(d, a)).collect();
        let refs: Vec<&Polyhedron> = polys.iter().collect();
        let mv = mixed_volume(&refs, &AffineLatticeFrame::standard(d)).unwrap();
        prop_assert_eq!(mv.to_i128().unwrap(), mixed_volume_by_interpolation(&args));
    }

    #[test]
    fn zeta_matches_the_staircase(p in point_set(2, 5, 1..=4), q in point_set(2, 5, 1..=3)) {
        let z = zeta_local(&pair_of(2, &p, &q)).unwrap();
        let engine: BTreeMap<i64, i64> =
            z.factors().iter().map(|(d, e)| (d.to_i64().unwrap(), e.to_i64().unwrap())).collect();
        prop_assert_eq!(engine, zeta_staircase_2d(&p, &q));
    }

    #[test]
    fn spectrum_matches_the_definition(
        (n, q, p) in (2usize..=3).prop_flat_map(|n| (Just(n), convenient(n, 1, 2, 2), convenient(n, 2, 5, 4)))
    ) {
        let pair = pair_of(n, &p, &q);
        prop_assume!(is_properly_contained(&pair).is_ok());
        let sp = reduced_spectrum(&pair).unwrap();
        let engine: BTreeMap<Ratio<i64>, i64> = sp
            .terms()
            .iter()
            .map(|(b, c)| (Ratio::new(b.numer().to_i64().unwrap(), b.denom().to_i64().unwrap()), c.to_i64().unwrap()))
            .collect();
        prop_assert_eq!(engine, spectrum_by_definition(&p, &q, n as i64 + 2).unwrap());
    }
}
