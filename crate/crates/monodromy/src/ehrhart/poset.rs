use std::cell::RefCell;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::poly::UniPoly;
use super::EhrhartError;
use crate::lattice_core::Polyhedron;

/// Which of the two interval recursions defines `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `g([F, F′])`, recursing over the lower part of the interval.
    Forward,
    /// `g([F, F′]*)`, the same recursion on the dual interval.
    Reversed,
}

/// Finite graded poset with memoized g-polynomials of its intervals.
///
/// Elements are indexed `0..len`; `rank` is the dimension (−1 for ∅).
#[derive(Debug)]
pub struct FacePoset {
    dims: Vec<i64>,
    below: Vec<FixedBitSet>,
    cache: RefCell<HashMap<(usize, usize, Orientation), UniPoly>>,
}

impl FacePoset {
    pub fn new(dims: Vec<i64>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = dims.len();
        let below = (0..n)
            .map(|j| {
                let mut s = FixedBitSet::with_capacity(n);
                for i in (0..n).filter(|&i| leq(i, j)) {
                    s.insert(i);
                }
                s
            })
            .collect();
        FacePoset { dims, below, cache: RefCell::new(HashMap::new()) }
    }

    /// The face lattice of `p`, indexed like [`Polyhedron::faces`].
    pub fn of_polyhedron(p: &Polyhedron) -> Self {
        let faces = p.faces();
        Self::new(faces.iter().map(|f| f.dim()).collect(), |i, j| faces[j].contains(&faces[i]))
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, i: usize) -> i64 {
        self.dims[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    /// Elements `x` with `lo ≤ x ≤ hi`.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        self.below[hi].ones().filter(|&x| self.leq(lo, x)).collect()
    }

    /// `g` of the interval `[lo, hi]` in the given orientation.
    ///
    /// With `d = dim hi − dim lo` and `H` the recursion sum, the
    /// coefficients `g_i = H_{d−i}` are read off for `i ≤ ⌊(d−1)/2⌋`,
    /// and the full identity `t^d g(1/t) = H + g` is then checked.
    pub fn g(&self, lo: usize, hi: usize, orientation: Orientation) -> Result<UniPoly, EhrhartError> {
        assert!(self.leq(lo, hi), "g needs lo ≤ hi");
        if lo == hi {
            return Ok(UniPoly::one());
        }
        if let Some(g) = self.cache.borrow().get(&(lo, hi, orientation)) {
            return Ok(g.clone());
        }
        let d = (self.dims[hi] - self.dims[lo]) as usize;
        let mut h = UniPoly::zero();
        for x in self.interval(lo, hi) {
            let term = match orientation {
                Orientation::Forward if x != hi => {
                    let k = (self.dims[hi] - self.dims[x]) as usize;
                    &UniPoly::t_minus_one_pow(k) * &self.g(lo, x, orientation)?
                }
                Orientation::Reversed if x != lo => {
                    let k = (self.dims[x] - self.dims[lo]) as usize;
                    &UniPoly::t_minus_one_pow(k) * &self.g(x, hi, orientation)?
                }
                _ => continue,
            };
            h = &h + &term;
        }
        let top = (d - 1) / 2;
        let g = UniPoly::new((0..=top).map(|i| h.coeff(d - i)).collect());
        if g.reverse(d) != &h + &g {
            return Err(EhrhartError::NotEulerian { lower_dim: self.dims[lo], upper_dim: self.dims[hi] });
        }
        self.cache.borrow_mut().insert((lo, hi, orientation), g.clone());
        Ok(g)
    }
}

/// `g` of the face interval `[lower, upper]` of `p`.
pub fn g_poly(p: &Polyhedron, lower: usize, upper: usize, orientation: Orientation) -> Result<UniPoly, EhrhartError> {
    FacePoset::of_polyhedron(p).g(lower, upper, orientation)
}
