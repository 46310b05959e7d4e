use std::collections::BTreeSet;

use crate::geometry::{affine_rank, binomial, HRep, Point};

/// Normalized volume of `conv(points)` in its affine hull, read off the
/// Ehrhart counts `E(0), …, E(k)` as the k-th finite difference.
pub fn volume_by_dilation(points: &[Point]) -> i128 {
    let k = affine_rank(points);
    if k < 0 {
        return 0;
    }
    let h = HRep::new(points);
    (0..=k)
        .map(|i| {
            let s = if (k - i) % 2 == 0 { 1 } else { -1 };
            s * binomial(k, i) * h.count(i) as i128
        })
        .sum()
}

fn full_volume(points: &[Point], d: usize) -> i128 {
    if affine_rank(points) < d as i64 {
        0
    } else {
        volume_by_dilation(points)
    }
}

fn scaled_sum(args: &[Vec<Point>], c: &[i64]) -> Vec<Point> {
    let d = args[0][0].len();
    let mut acc: BTreeSet<Point> = BTreeSet::from([vec![0; d]]);
    for (a, &ci) in args.iter().zip(c) {
        let mut next = BTreeSet::new();
        for x in &acc {
            for p in a {
                next.insert(x.iter().zip(p).map(|(u, v)| u + ci * v).collect());
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

/// Normalized mixed volume of `d` polytopes in `ℤ^d` (given by point sets).
///
/// `F(c) = Vol_ℤ(c₁Δ₁ + … + c_dΔ_d)` is a form of degree `d`, so its mixed
/// difference over the grid `{1, 2}^d` is the coefficient of `c₁⋯c_d`,
/// which equals `d! · MV`.
pub fn mixed_volume_by_interpolation(args: &[Vec<Point>]) -> i128 {
    let d = args.len();
    assert!(d >= 1 && args.iter().all(|a| !a.is_empty() && a[0].len() == d), "need d point sets in ℤ^d");
    let mut coeff = 0i128;
    for mask in 0u32..(1 << d) {
        let c: Vec<i64> = (0..d).map(|i| 1 + i64::from(mask >> i & 1)).collect();
        let s = if (d as u32 - mask.count_ones()).is_multiple_of(2) { 1 } else { -1 };
        coeff += s * full_volume(&scaled_sum(args, &c), d);
    }
    let fact: i128 = (1..=d as i128).product();
    assert_eq!(coeff % fact, 0, "mixed difference {coeff} not divisible by {d}!");
    coeff / fact
}
