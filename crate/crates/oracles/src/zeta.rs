use std::collections::BTreeMap;

use num_integer::Integer;

use crate::geometry::Point;

/// Cyclotomic-type product `Π (1 − t^d)^{e_d}` as the map `d ↦ e_d`,
/// without zero exponents.
pub type Factors = BTreeMap<i64, i64>;

fn bump(f: &mut Factors, d: i64, e: i64) {
    let slot = f.entry(d).or_insert(0);
    *slot += e;
    if *slot == 0 {
        f.remove(&d);
    }
}

fn lower_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Lattice length of the part of `pts` minimizing `⟨α, ·⟩`, measured along
/// the primitive direction with horizontal step `step`.
fn tight_length(pts: &[Point], alpha: (i64, i64), step: i64) -> (i64, i64) {
    let val = |p: &Point| alpha.0 * p[0] + alpha.1 * p[1];
    let h = pts.iter().map(val).min().unwrap();
    let xs: Vec<i64> = pts.iter().filter(|p| val(p) == h).map(|p| p[0]).collect();
    (h, (xs.iter().max().unwrap() - xs.iter().min().unwrap()) / step)
}

/// Local zeta function of `P/Q` at `0 ∈ ℂ²` from the supports alone, by
/// walking the staircase of `supp P + supp Q`.
///
/// The axis strata contribute `(1 − t^{a−b})` where `a`, `b` are the
/// lowest axis exponents of `P` and `Q`; each compact edge of the lower
/// convex chain with primitive normal `α` contributes
/// `(1 − t^{d_P − d_Q})^{−(ℓ_P + ℓ_Q)}` with `ℓ` the lattice lengths of
/// the `α`-faces. Only positive `d` count.
pub fn zeta_staircase_2d(p: &[Point], q: &[Point]) -> Factors {
    let mut out = Factors::new();
    for axis in 0..2 {
        let low = |s: &[Point]| s.iter().filter(|x| x[1 - axis] == 0).map(|x| x[axis]).min();
        if let (Some(a), Some(b)) = (low(p), low(q)) {
            if a > b {
                bump(&mut out, a - b, 1);
            }
        }
    }
    let sums: Vec<(i64, i64)> = p.iter().flat_map(|a| q.iter().map(move |b| (a[0] + b[0], a[1] + b[1]))).collect();
    let hull = lower_hull(sums);
    for w in hull.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        if dy >= 0 {
            break;
        }
        let g = dx.gcd(&dy);
        let alpha = (-dy / g, dx / g);
        let (hp, lp) = tight_length(p, alpha, dx / g);
        let (hq, lq) = tight_length(q, alpha, dx / g);
        if hp > hq {
            bump(&mut out, hp - hq, -(lp + lq));
        }
    }
    out
}

/// Zeta function at infinity of `P/Q` on `ℂ` for generic coefficients
/// with the given exponent sets, from the explicit cover `f⁻¹(R)`, `R ≫ 0`.
///
/// The fiber splits into one cycle of length `deg P − deg Q` near `∞`
/// (when positive), one fixed point near each simple nonzero root of `Q`,
/// and one cycle of length `ord₀Q − ord₀P` near `0` (when positive).
pub fn zeta_infinity_cover_1d(p: &[i64], q: &[i64]) -> Factors {
    let (p_lo, p_hi) = (*p.iter().min().unwrap(), *p.iter().max().unwrap());
    let (q_lo, q_hi) = (*q.iter().min().unwrap(), *q.iter().max().unwrap());
    let mut out = Factors::new();
    if p_hi > q_hi {
        bump(&mut out, p_hi - q_hi, 1);
    }
    if q_hi > q_lo {
        bump(&mut out, 1, q_hi - q_lo);
    }
    if q_lo > p_lo {
        bump(&mut out, q_lo - p_lo, 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[(i64, i64)]) -> Factors {
        v.iter().copied().collect()
    }

    #[test]
    fn staircase_examples() {
        let cusp = vec![vec![2, 0], vec![0, 3]];
        let one = vec![vec![0, 0]];
        let line = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(zeta_staircase_2d(&cusp, &one), f(&[(2, 1), (3, 1), (6, -1)]));
        assert_eq!(zeta_staircase_2d(&cusp, &line), f(&[(2, 1), (4, -1)]));
        assert_eq!(zeta_staircase_2d(&[vec![2, 0], vec![0, 2]], &line), f(&[(1, -1)]));
    }

    #[test]
    fn cover_examples() {
        assert_eq!(zeta_infinity_cover_1d(&[2], &[1, 0]), f(&[(1, 2)]));
        assert_eq!(zeta_infinity_cover_1d(&[2], &[0]), f(&[(2, 1)]));
        assert_eq!(zeta_infinity_cover_1d(&[0, 1], &[3]), f(&[(3, 1)]));
    }
}
