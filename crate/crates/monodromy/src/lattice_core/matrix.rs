//! Small exact matrix routines over ℤ and ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rank of a list of integer rows (fraction-free elimination).
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    independent_rows(rows).len()
}

/// Indices of a maximal linearly independent subset of `rows`, chosen
/// greedily in order.
pub fn independent_rows(rows: &[Vec<BigInt>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (pivot, b) in &basis {
            if r[*pivot].is_zero() {
                continue;
            }
            let f = r[*pivot].clone();
            let g = b[*pivot].clone();
            for (x, y) in r.iter_mut().zip(b) {
                *x = &*x * &g - y * &f;
            }
            let c = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !c.is_zero() && !c.is_one() {
                r.iter_mut().for_each(|x| *x /= &c);
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            basis.push((p, r));
            chosen.push(idx);
        }
    }
    chosen
}

/// Determinant by Bareiss elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Inverse of a square integer matrix over ℚ, or `None` if singular.
pub fn inverse(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|x| BigRational::from(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Unimodular `W` (n × n) with `W · M = [H; 0]`, where the columns of `M`
/// are `cols` and `H` has `rank` rows. Returns `(W, rank)`.
///
/// The first `rank` rows of `W` are integer coordinates on the saturated
/// lattice `ℤⁿ ∩ span(cols)`; the remaining rows vanish on it.
pub fn unimodular_row_reduction(cols: &[Vec<BigInt>], n: usize) -> (Vec<Vec<BigInt>>, usize) {
    let m = cols.len();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let mut w: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0;
    for col in 0..m {
        if r == n {
            break;
        }
        for i in r + 1..n {
            while !a[i][col].is_zero() {
                let q = &a[r][col] / &a[i][col];
                if !q.is_zero() {
                    sub_row(&mut a, r, i, &q);
                    sub_row(&mut w, r, i, &q);
                }
                a.swap(r, i);
                w.swap(r, i);
            }
        }
        if !a[r][col].is_zero() {
            if a[r][col].is_negative() {
                a[r].iter_mut().for_each(|x| *x = -x.clone());
                w[r].iter_mut().for_each(|x| *x = -x.clone());
            }
            r += 1;
        }
    }
    (w, r)
}

fn sub_row(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = a[source].clone();
    for (x, y) in a[target].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

/// Primitive integer vector spanning the one-dimensional kernel of `rows`
/// (which must be `d-1` independent rows of length `d`).
pub fn kernel_vector(rows: &[Vec<BigInt>], d: usize) -> Option<Vec<BigInt>> {
    let cols: Vec<Vec<BigInt>> = rows.to_vec();
    let (w, r) = unimodular_row_reduction(&cols, d);
    if r != d - 1 {
        return None;
    }
    // Row d-1 of W is orthogonal to every row of `rows` and primitive.
    Some(w[d - 1].clone())
}
