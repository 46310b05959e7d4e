use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_rational::Ratio;

use crate::geometry::{affine_rank, binomial, cross, dot, rank, sub, HRep, Point};

/// Rational exponent `β ↦` integer coefficient.
pub type Spectrum = BTreeMap<Ratio<i64>, i64>;

fn add(s: &mut Spectrum, b: Ratio<i64>, c: i64) {
    let slot = s.entry(b).or_insert(0);
    *slot += c;
    if *slot == 0 {
        s.remove(&b);
    }
}

/// A face of `Γ₊ = conv(points) + ℝⁿ₊`: indices of the generating points
/// on it and the coordinate rays in its recession cone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Face {
    points: BTreeSet<usize>,
    rays: BTreeSet<usize>,
}

fn unit(n: usize, i: usize) -> Vec<i128> {
    (0..n).map(|j| i128::from(j == i)).collect()
}

fn primitive(v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    v.into_iter().map(|x| x / g).collect()
}

fn choose(items: usize, k: usize) -> Vec<Vec<usize>> {
    crate::geometry::subsets(items, k)
}

/// Facets of `conv(points) + ℝⁿ₊` with their inner normals, found by
/// trying every hyperplane through `k` points parallel to `n − k` rays.
fn facets(points: &[Point], n: usize) -> Vec<(Vec<i128>, Face)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for k in 1..=n.min(points.len()) {
        for pick in choose(points.len(), k) {
            for rays in choose(n, n - k) {
                let mut vs: Vec<Vec<i128>> = pick[1..].iter().map(|&i| sub(&points[i], &points[pick[0]])).collect();
                vs.extend(rays.iter().map(|&i| unit(n, i)));
                let mut w = cross(&vs, n);
                if w.iter().all(|&x| x == 0) {
                    continue;
                }
                if w.iter().all(|&x| x <= 0) {
                    w = w.iter().map(|x| -x).collect();
                }
                if w.iter().any(|&x| x < 0) {
                    continue;
                }
                let w = primitive(w);
                if !seen.insert(w.clone()) {
                    continue;
                }
                let h = points.iter().map(|p| dot(&w, p)).min().unwrap();
                let tight: BTreeSet<usize> = (0..points.len()).filter(|&i| dot(&w, &points[i]) == h).collect();
                let zero: BTreeSet<usize> = (0..n).filter(|&i| w[i] == 0).collect();
                let base = &points[*tight.iter().next().unwrap()];
                let mut span: Vec<Vec<i128>> = tight.iter().map(|&i| sub(&points[i], base)).collect();
                span.extend(zero.iter().map(|&i| unit(n, i)));
                if rank(&span) == n - 1 {
                    out.push((w, Face { points: tight, rays: zero }));
                }
            }
        }
    }
    out
}

/// All nonempty compact faces with a conormal from the relative interior of
/// their normal cone (the sum of the facet normals containing them).
fn compact_faces(points: &[Point], n: usize) -> Vec<(BTreeSet<usize>, Vec<i128>)> {
    let fs = facets(points, n);
    let mut all: BTreeSet<Face> = fs.iter().map(|(_, f)| f.clone()).collect();
    let mut frontier: Vec<Face> = all.iter().cloned().collect();
    while let Some(face) = frontier.pop() {
        for (_, f) in &fs {
            let meet = Face {
                points: face.points.intersection(&f.points).copied().collect(),
                rays: face.rays.intersection(&f.rays).copied().collect(),
            };
            if !meet.points.is_empty() && all.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    all.into_iter()
        .filter(|f| f.rays.is_empty())
        .map(|f| {
            let mut u = vec![0i128; n];
            for (w, g) in &fs {
                if f.points.is_subset(&g.points) {
                    for (a, b) in u.iter_mut().zip(w) {
                        *a += b;
                    }
                }
            }
            (f.points, u)
        })
        .collect()
}

fn argmin(pts: &[Point], u: &[i128]) -> (i128, Vec<Point>) {
    let h = pts.iter().map(|p| dot(u, p)).min().unwrap();
    (h, pts.iter().filter(|p| dot(u, p) == h).cloned().collect())
}

/// Reduced spectrum of `P/Q` at `0 ∈ ℂⁿ` (n ≤ 3) by literal evaluation of
/// `Σ_γ (−1)^{n−1−dim γ} (1 − t)^{s_γ} h_γ(t)` below `t^bound`, where
///
/// `h_γ(t) = Σ_{β ∉ ℤ} [φ_{e(β)}(□_γ; ⌊β⌋ + 1) − φ_{e(β)}(□_γ; ⌊β⌋)] t^β`
///
/// and `φ_λ(□; m)` counts lattice points `v ∈ m□_γ` whose weight
/// `m·ν(v/m) = (m h_P − ⟨u, v⟩)/(h_P − h_Q)` has class `λ`.
///
/// Fails if a term survives in `[n, bound)` or the result is not symmetric.
pub fn spectrum_by_definition(p: &[Point], q: &[Point], bound: i64) -> Result<Spectrum, String> {
    let n = p[0].len();
    assert!(n <= 3, "face enumeration is written for n ≤ 3");
    assert!(bound >= n as i64 + 2, "bound must be at least n + 2");
    let sums: Vec<Point> = p
        .iter()
        .flat_map(|a| q.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect::<Point>()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut out = Spectrum::new();
    for (face, u) in compact_faces(&sums, n) {
        let gamma: Vec<Point> = face.iter().map(|&i| sums[i].clone()).collect();
        let dim_gamma = affine_rank(&gamma);
        let s_gamma = (0..n).filter(|&i| gamma.iter().any(|v| v[i] != 0)).count() as i64;
        let (hp, gp) = argmin(p, &u);
        let (hq, gq) = argmin(q, &u);
        let den = hp - hq;
        if den <= 0 {
            return Err(format!("no proper containment at conormal {u:?}"));
        }
        let mut cell = gp;
        cell.extend(gq);
        let hrep = HRep::new(&cell);
        let den64 = den as i64;
        let mut counts = vec![vec![0i64; den64 as usize]; bound as usize + 1];
        for (m, row) in counts.iter_mut().enumerate() {
            hrep.for_each_point(m as i64, |v| {
                let r = (m as i128 * hp - dot(&u, v)).rem_euclid(den);
                row[r as usize] += 1;
            });
        }
        let mut h = Spectrum::new();
        for j in 1..bound * den64 {
            if j % den64 == 0 {
                continue;
            }
            let (fl, r) = (j / den64, (j % den64) as usize);
            add(&mut h, Ratio::new(j, den64), counts[fl as usize + 1][r] - counts[fl as usize][r]);
        }
        let sign = if (n as i64 - 1 - dim_gamma) % 2 == 0 { 1 } else { -1 };
        for (b, c) in &h {
            for i in 0..=s_gamma {
                let e = b + Ratio::from_integer(i);
                if e < Ratio::from_integer(bound) {
                    let s = if i % 2 == 0 { 1 } else { -1 };
                    add(&mut out, e, sign * s * binomial(s_gamma, i) as i64 * c);
                }
            }
        }
    }
    let top = Ratio::from_integer(n as i64);
    if let Some((b, c)) = out.iter().find(|(b, _)| **b >= top) {
        return Err(format!("term {c}·t^{b} at or beyond t^{n}"));
    }
    let mirrored: Spectrum = out.iter().map(|(b, c)| (top - b, *c)).collect();
    if mirrored != out {
        return Err("spectrum is not symmetric about n/2".into());
    }
    Ok(out)
}
