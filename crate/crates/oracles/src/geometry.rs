//! Brute-force polyhedral helpers over small machine integers.

use num_integer::Integer;
use num_rational::Ratio;

pub type Point = Vec<i64>;

type Q = Ratio<i128>;

/// Rows of a rational matrix reduced to echelon form; returns the rank.
fn echelon(rows: &mut [Vec<Q>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != Q::from(0)) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != Q::from(0) {
                let f = rows[i][c] / rows[r][c];
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x -= f * *y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn rank(vectors: &[Vec<i128>]) -> usize {
    let mut rows: Vec<Vec<Q>> = vectors.iter().map(|v| v.iter().map(|&x| Q::from(x)).collect()).collect();
    echelon(&mut rows)
}

pub fn affine_rank(points: &[Point]) -> i64 {
    if points.is_empty() {
        return -1;
    }
    let diffs: Vec<Vec<i128>> = points.iter().map(|p| sub(p, &points[0])).collect();
    rank(&diffs) as i64
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i128> {
    a.iter().zip(b).map(|(x, y)| *x as i128 - *y as i128).collect()
}

pub fn dot(a: &[i128], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * *y as i128).sum()
}

fn primitive(v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g <= 1 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

/// Integer basis of the orthogonal complement of the span of `vectors`
/// inside ℚⁿ (not necessarily a lattice basis).
pub fn orthogonal_complement(vectors: &[Vec<i128>], n: usize) -> Vec<Vec<i128>> {
    let mut rows: Vec<Vec<Q>> = vectors.iter().map(|v| v.iter().map(|&x| Q::from(x)).collect()).collect();
    if rows.is_empty() {
        rows.push(vec![Q::from(0); n]);
    }
    let r = echelon(&mut rows);
    let mut pivots = Vec::new();
    for row in rows.iter().take(r) {
        pivots.push(row.iter().position(|x| *x != Q::from(0)).unwrap());
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::from(0); n];
        v[free] = Q::from(1);
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free] / row[p];
        }
        let den = v.iter().fold(1i128, |l, x| l.lcm(x.denom()));
        out.push(primitive(v.iter().map(|x| (x * den).to_integer()).collect()));
    }
    out
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut rows: Vec<Vec<Q>> = m.iter().map(|v| v.iter().map(|&x| Q::from(x)).collect()).collect();
    let mut d = Q::from(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| rows[i][c] != Q::from(0)) else { return 0 };
        if p != c {
            rows.swap(p, c);
            d = -d;
        }
        d *= rows[c][c];
        for i in c + 1..n {
            let f = rows[i][c] / rows[c][c];
            let pr = rows[c].clone();
            for (x, y) in rows[i].iter_mut().zip(&pr) {
                *x -= f * *y;
            }
        }
    }
    d.to_integer()
}

/// Generalized cross product of `n-1` vectors in ℤⁿ (cofactor expansion).
pub fn cross(vs: &[Vec<i128>], n: usize) -> Vec<i128> {
    (0..n)
        .map(|i| {
            let minor: Vec<Vec<i128>> = vs
                .iter()
                .map(|v| (0..n).filter(|&j| j != i).map(|j| v[j]).collect())
                .collect();
            let s = if i % 2 == 0 { 1 } else { -1 };
            s * det(&minor)
        })
        .collect()
}

/// All `k`-element index subsets of `0..n`.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Removes every point that is the midpoint of two others; vertices are
/// never midpoints, so the convex hull is unchanged.
fn drop_midpoints(points: &[Point]) -> Vec<Point> {
    let mut set: Vec<Point> = points.to_vec();
    set.sort();
    set.dedup();
    let doubled: std::collections::HashSet<Point> = set.iter().map(|p| p.iter().map(|x| 2 * x).collect()).collect();
    let mut mids = std::collections::HashSet::new();
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            let s: Point = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if doubled.contains(&s) {
                mids.insert(s);
            }
        }
    }
    set.into_iter().filter(|p| !mids.contains(&p.iter().map(|x| 2 * x).collect::<Point>())).collect()
}

/// Half-space description of `conv(points)`: equalities pinning the affine
/// hull and facet inequalities, each stored as `(a, b)` meaning
/// `⟨a, x⟩ = b` resp. `⟨a, x⟩ ≥ b`.
pub struct HRep {
    pub n: usize,
    pub eqs: Vec<(Vec<i128>, i128)>,
    pub ineqs: Vec<(Vec<i128>, i128)>,
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl HRep {
    pub fn new(points: &[Point]) -> HRep {
        let points = &drop_midpoints(points);
        let n = points[0].len();
        let k = affine_rank(points) as usize;
        let diffs: Vec<Vec<i128>> = points.iter().map(|p| sub(p, &points[0])).collect();
        let perp = orthogonal_complement(&diffs, n);
        let eqs: Vec<(Vec<i128>, i128)> = perp.iter().map(|a| (a.clone(), dot(a, &points[0]))).collect();
        let mut ineqs: Vec<(Vec<i128>, i128)> = Vec::new();
        if k > 0 {
            for s in subsets(points.len(), k) {
                let mut vs: Vec<Vec<i128>> = s[1..].iter().map(|&i| sub(&points[i], &points[s[0]])).collect();
                vs.extend(perp.iter().cloned());
                let w = cross(&vs, n);
                if w.iter().all(|&x| x == 0) {
                    continue;
                }
                let w = primitive(w);
                for sgn in [1i128, -1] {
                    let a: Vec<i128> = w.iter().map(|x| sgn * x).collect();
                    let b = points.iter().map(|p| dot(&a, p)).min().unwrap();
                    let tight: Vec<Point> = points.iter().filter(|p| dot(&a, p) == b).cloned().collect();
                    if affine_rank(&tight) as usize == k - 1 && !ineqs.contains(&(a.clone(), b)) {
                        ineqs.push((a, b));
                    }
                }
            }
        }
        let lo = (0..n).map(|i| points.iter().map(|p| p[i]).min().unwrap()).collect();
        let hi = (0..n).map(|i| points.iter().map(|p| p[i]).max().unwrap()).collect();
        HRep { n, eqs, ineqs, lo, hi }
    }

    pub fn contains_dilate(&self, x: &[i64], m: i64) -> bool {
        self.eqs.iter().all(|(a, b)| dot(a, x) == b * m as i128) && self.ineqs.iter().all(|(a, b)| dot(a, x) >= b * m as i128)
    }

    /// Calls `f` on every lattice point of the dilate `m · conv(points)`.
    pub fn for_each_point(&self, m: i64, mut f: impl FnMut(&[i64])) {
        let lo: Vec<i64> = self.lo.iter().map(|x| x * m).collect();
        let hi: Vec<i64> = self.hi.iter().map(|x| x * m).collect();
        let mut x = lo.clone();
        loop {
            if self.contains_dilate(&x, m) {
                f(&x);
            }
            let mut i = 0;
            loop {
                if i == self.n {
                    return;
                }
                if x[i] < hi[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = lo[i];
                i += 1;
            }
        }
    }

    pub fn count(&self, m: i64) -> u64 {
        let mut c = 0;
        self.for_each_point(m, |_| c += 1);
        c
    }
}

pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}
