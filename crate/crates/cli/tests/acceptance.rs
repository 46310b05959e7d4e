//! Acceptance criteria 1–7, one PASS/FAIL line each. Runs without the
//! libtest harness; the process fails if any criterion fails.

use std::time::{Duration, Instant};

use monodromy::ehrhart::{
    g_poly, hstar, local_h, AffineFunction, FacePoset, Orientation, PiecewiseAffine, Subdivision, UniPoly,
    WeightedEhrhart,
};
use monodromy::lattice_core::{convex_hull, mixed_volume, normalized_volume, AffineLatticeFrame, IntVector, Polyhedron};
use monodromy::newton::{is_properly_contained, MeroPair, Mode, SparsePolynomial};
use monodromy::spectrum::{build_weighted_region, Analysis};
use monodromy::zeta::{multiplicity, zeta_infinity, zeta_local, CyclotomicProduct, RootOfUnity};
use monodromy_cli::audit::{factors, spectrum_terms};
use monodromy_cli::{characteristic_polynomial, parse_polynomial};
use monodromy_oracles::{
    mixed_volume_by_interpolation, spectrum_by_definition, volume_by_dilation, zeta_infinity_cover_1d,
    zeta_staircase_2d, Factors,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

const CUSP_BUDGET: Duration = Duration::from_secs(1);
const WORKED_PAIR_BUDGET: Duration = Duration::from_secs(5);
const ORACLE_BUDGET: Duration = Duration::from_secs(300);
/// Instances per oracle pair; four pairs give 240 in total.
const ORACLE_INSTANCES_EACH: usize = 60;
const MIN_ORACLE_INSTANCES: usize = 200;
const INVARIANT_CORPUS: usize = 40;

// Every comparison below is exact equality; no mismatch is tolerated.

type Outcome = Result<String, String>;
type Instance = (usize, Vec<Vec<i64>>, Vec<Vec<i64>>);
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(text: &str, n: usize) -> SparsePolynomial {
    parse_polynomial(text, n).unwrap()
}

fn pair(p: &str, q: &str, n: usize, mode: Mode) -> MeroPair {
    MeroPair::new(poly(p, n), poly(q, n), mode).unwrap()
}

fn lam(k: i64, d: u64) -> RootOfUnity {
    RootOfUnity::new(k, d).unwrap()
}

fn fac(v: &[(i64, i64)]) -> Factors {
    v.iter().copied().collect()
}

fn sparse(n: usize, pts: &[Vec<i64>]) -> SparsePolynomial {
    let refs: Vec<&[i64]> = pts.iter().map(|v| v.as_slice()).collect();
    SparsePolynomial::from_exponents(n, &refs).unwrap()
}

fn hull(d: usize, pts: &[Vec<i64>]) -> Polyhedron {
    let v: Vec<IntVector> = pts.iter().map(|p| IntVector::from_i64(p)).collect();
    convex_hull(d, &v, &[]).unwrap()
}

fn point_set(d: usize, max: i64, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..=max, d), len)
}

fn convenient(n: usize, lo: i64, hi: i64, extra_max: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (prop::collection::vec(lo..=hi, n), point_set(n, extra_max, 0..=2)).prop_map(move |(axes, extra)| {
        let mut s: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { axes[i] } else { 0 }).collect()).collect();
        s.extend(extra.into_iter().filter(|v| v.iter().any(|&x| x > 0)));
        s
    })
}

/// Convenient local pairs `(n, P, Q)` with `Γ₊(P) ⊂⊂ Γ₊(Q)`, exponents ≤ 5.
fn local_pairs(runner: &mut TestRunner, count: usize) -> Vec<Instance> {
    let s = (2usize..=3).prop_flat_map(|n| (Just(n), convenient(n, 2, 5, 4), convenient(n, 1, 2, 2)));
    let mut out = Vec::new();
    while out.len() < count {
        let (n, p, q) = s.new_tree(runner).unwrap().current();
        if is_properly_contained(&MeroPair::new(sparse(n, &p), sparse(n, &q), Mode::Local).unwrap()).is_ok() {
            out.push((n, p, q));
        }
    }
    out
}

fn draw<S: Strategy>(runner: &mut TestRunner, s: &S) -> S::Value {
    s.new_tree(runner).unwrap().current()
}

fn cusp_reduction() -> Outcome {
    let p = pair("x^2 + y^3", "1", 2, Mode::Local);
    let z = zeta_local(&p).map_err(|e| e.to_string())?;
    let expect = fac(&[(2, 1), (3, 1), (6, -1)]);
    ensure(factors(&z) == Some(expect.clone()), || format!("zeta_local = {z}"))?;
    let oracle = zeta_staircase_2d(&[vec![2, 0], vec![0, 3]], &[vec![0, 0]]);
    ensure(oracle == expect, || format!("staircase oracle gives {oracle:?}"))?;
    let ch = characteristic_polynomial(&z, 2);
    ensure(ch == Some(UniPoly::from_i64(&[1, -1, 1])), || format!("characteristic polynomial {ch:?}"))?;
    Ok(format!("zeta = {z}, characteristic polynomial t^2 - t + 1"))
}

fn worked_pair() -> Outcome {
    let p = pair("x^2 + y^3", "x + y", 2, Mode::Local);
    let z = zeta_local(&p).map_err(|e| e.to_string())?;
    ensure(factors(&z) == Some(fac(&[(2, 1), (4, -1)])), || format!("zeta_local = {z}"))?;
    let (i, minus_one, minus_i) = (lam(1, 4), lam(1, 2), lam(3, 4));
    for (l, m) in [(i, 1), (minus_i, 1), (minus_one, 0)] {
        let got = multiplicity(&p, &l).map_err(|e| e.to_string())?;
        ensure(got == BigInt::from(m), || format!("multiplicity({l}) = {got}, expected {m}"))?;
    }
    let region = build_weighted_region(&p).map_err(|e| e.to_string())?;
    let a = Analysis::new(&p, &region);
    let j = a.jordan_counts(&i).map_err(|e| e.to_string())?;
    ensure(j.blocks() == vec![(1, BigInt::from(1))], || format!("J at i = {:?}", j.blocks()))?;
    ensure(j.via_local_h == j.via_weights, || "Jordan paths disagree".into())?;
    for l in a.eigenvalue_candidates() {
        let (top, _) = a.jordan_extremes_census(&l).map_err(|e| e.to_string())?;
        ensure(top.is_zero(), || format!("J_2 = {top} at λ = {l}"))?;
    }
    let sp = a.reduced_spectrum().map_err(|e| e.to_string())?;
    let two = BigRational::from_integer(2.into());
    ensure(sp.terms().len() == 2 && sp.reflect(&two) == sp, || format!("spectrum {sp}"))?;
    ensure(sp.terms().keys().all(|b| b.is_positive() && *b < two), || format!("spectrum {sp} leaves (0, 2)"))?;
    let oracle = spectrum_by_definition(&[vec![2, 0], vec![0, 3]], &[vec![1, 0], vec![0, 1]], 4)?;
    ensure(spectrum_terms(&sp) == Some(oracle), || format!("spectrum {sp} differs from the oracle"))?;
    Ok(format!("mult(i) = mult(-i) = 1, mult(-1) = 0, J(i) = {{1:1}}, spectrum {sp}"))
}

fn oracle_suite() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let mut total = 0usize;
    let mut bad: Vec<String> = Vec::new();
    let vol = (1usize..=3).prop_flat_map(|d| point_set(d, 5, 1..=6));
    for _ in 0..ORACLE_INSTANCES_EACH {
        let pts = draw(&mut runner, &vol);
        let p = hull(pts[0].len(), &pts);
        let e = normalized_volume(&p, p.frame().unwrap()).unwrap().to_i128().unwrap();
        if e != volume_by_dilation(&pts) {
            bad.push(format!("volume of {pts:?}"));
        }
        total += 1;
    }
    let mv = (1usize..=3).prop_flat_map(|d| prop::collection::vec(point_set(d, 3, 1..=4), d));
    for _ in 0..ORACLE_INSTANCES_EACH {
        let args = draw(&mut runner, &mv);
        let d = args.len();
        let polys: Vec<Polyhedron> = args.iter().map(|a| hull(d, a)).collect();
        let refs: Vec<&Polyhedron> = polys.iter().collect();
        let e = mixed_volume(&refs, &AffineLatticeFrame::standard(d)).unwrap().to_i128().unwrap();
        if e != mixed_volume_by_interpolation(&args) {
            bad.push(format!("mixed volume of {args:?}"));
        }
        total += 1;
    }
    let zs = (point_set(2, 5, 1..=4), point_set(2, 5, 1..=3));
    for _ in 0..ORACLE_INSTANCES_EACH {
        let (p, q) = draw(&mut runner, &zs);
        let z = zeta_local(&MeroPair::new(sparse(2, &p), sparse(2, &q), Mode::Local).unwrap()).unwrap();
        if factors(&z) != Some(zeta_staircase_2d(&p, &q)) {
            bad.push(format!("zeta of {p:?} / {q:?}"));
        }
        total += 1;
    }
    for (n, p, q) in local_pairs(&mut runner, ORACLE_INSTANCES_EACH) {
        let pair = MeroPair::new(sparse(n, &p), sparse(n, &q), Mode::Local).unwrap();
        let engine = monodromy::spectrum::reduced_spectrum(&pair).map_err(|e| e.to_string());
        let oracle = spectrum_by_definition(&p, &q, n as i64 + 2);
        match (engine, oracle) {
            (Ok(e), Ok(o)) if spectrum_terms(&e) == Some(o.clone()) => {}
            (e, o) => bad.push(format!("spectrum of {p:?} / {q:?}: engine {e:?}, oracle {o:?}")),
        }
        total += 1;
    }
    ensure(total >= MIN_ORACLE_INSTANCES, || format!("only {total} instances"))?;
    ensure(bad.is_empty(), || format!("{} of {total} disagree, first: {}", bad.len(), bad[0]))?;
    Ok(format!("{total} instances, all four oracle pairs agree"))
}

fn simplex(d: usize) -> Polyhedron {
    let mut pts = vec![vec![0; d]];
    pts.extend((0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()));
    hull(d, &pts)
}

fn identity_suite() -> Outcome {
    for pts in [
        vec![vec![0, 0], vec![3, 1], vec![1, 2]],
        vec![vec![0, 0, 0], vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 1], vec![1, 1, 1]],
        vec![vec![1], vec![4]],
    ] {
        let d = pts[0].len();
        let p = hull(d, &pts);
        let args: Vec<&Polyhedron> = (0..d).map(|_| &p).collect();
        let frame = AffineLatticeFrame::standard(d);
        ensure(mixed_volume(&args, &frame).unwrap() == normalized_volume(&p, &frame).unwrap(), || {
            format!("MV(Δ, …, Δ) ≠ Vol for {pts:?}")
        })?;
    }
    for d in 1..=4 {
        let s = simplex(d);
        let poset = FacePoset::of_polyhedron(&s);
        for lo in 0..poset.len() {
            for hi in (0..poset.len()).filter(|&hi| poset.leq(lo, hi)) {
                for o in [Orientation::Forward, Orientation::Reversed] {
                    let g = poset.g(lo, hi, o).map_err(|e| e.to_string())?;
                    ensure(g == UniPoly::one(), || format!("g = {g} on a simplex interval in dimension {d}"))?;
                }
            }
        }
    }
    let sq = hull(2, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    let g = g_poly(&sq, sq.empty_face(), sq.whole_face(), Orientation::Forward).map_err(|e| e.to_string())?;
    ensure(g == UniPoly::from_i64(&[1, 1]), || format!("g([∅, square]) = {g}"))?;
    let seg = |a: i64, b: i64| hull(1, &[vec![a], vec![b]]);
    let l = local_h(&Subdivision::trivial(seg(0, 1)), 0).map_err(|e| e.to_string())?;
    ensure(l.is_zero(), || format!("local h of the trivial subdivision at ∅ is {l}"))?;
    let split = Subdivision::new(seg(0, 2), vec![seg(0, 1), seg(1, 2)]).map_err(|e| e.to_string())?;
    let l = local_h(&split, 0).map_err(|e| e.to_string())?;
    ensure(l == UniPoly::from_i64(&[0, 1]), || format!("local h of the split segment at ∅ is {l}"))?;
    let zero = PiecewiseAffine::affine(seg(0, 1), AffineFunction::new(IntVector::zero(1), 0.into(), 1.into()));
    let h = hstar(&seg(0, 1), &zero, &RootOfUnity::one()).map_err(|e| e.to_string())?;
    ensure(h == UniPoly::one(), || format!("h*_1([0,1], 0) = {h}"))?;
    let half = PiecewiseAffine::affine(seg(0, 2), AffineFunction::new(IntVector::from_i64(&[1]), 0.into(), 2.into()));
    let h = hstar(&seg(0, 2), &half, &lam(1, 2)).map_err(|e| e.to_string())?;
    ensure(h == UniPoly::from_i64(&[0, 1]), || format!("h*_-1([0,2], x/2) = {h}"))?;
    Ok("MV, g, local h and h* identities hold".into())
}

/// The worked pair, a three-variable pair and a seeded random corpus.
fn invariant_corpus() -> Vec<MeroPair> {
    let mut out = vec![
        pair("x^2 + y^3", "x + y", 2, Mode::Local),
        pair("x^6 + x^2 y^2 + y^6", "x^2 + y^2", 2, Mode::Local),
        pair("x^3 + y^3 + z^3", "x + y + z", 3, Mode::Local),
    ];
    let mut runner = TestRunner::deterministic();
    out.extend(
        local_pairs(&mut runner, INVARIANT_CORPUS)
            .into_iter()
            .map(|(n, p, q)| MeroPair::new(sparse(n, &p), sparse(n, &q), Mode::Local).unwrap()),
    );
    out
}

fn invariant_suite() -> Outcome {
    let corpus = invariant_corpus();
    let mut violations: Vec<String> = Vec::new();
    let mut runs = 0usize;
    for pair in &corpus {
        let n = pair.n() as i64;
        let region = build_weighted_region(pair).map_err(|e| e.to_string())?;
        let a = Analysis::new(pair, &region);
        let sp = a.spectrum_closed_form().map_err(|e| e.to_string())?;
        if sp.reflect(&BigRational::from_integer(n.into())) != sp {
            violations.push(format!("spectrum {sp} not symmetric"));
        }
        for l in a.eigenvalue_candidates() {
            runs += 1;
            let m = multiplicity(pair, &l).map_err(|e| e.to_string())?;
            let e = a.e_lambda(&l).map_err(|e| e.to_string())?;
            if e.poly.terms().iter().any(|(&(p, q), c)| *c != e.e(n - 1 - q, n - 1 - p)) {
                violations.push(format!("Hodge symmetry of E_{l} = {e}"));
            }
            let path_a = a.jordan_via_local_h(&l).map_err(|e| e.to_string())?;
            let j = a.jordan_counts(&l).map_err(|e| e.to_string())?;
            if path_a != j.via_weights {
                violations.push(format!("paths A {path_a:?} and B {:?} at λ = {l}", j.via_weights));
            }
            let weighted: BigInt = j.via_weights.iter().enumerate().map(|(k, c)| BigInt::from(k + 1) * c).sum();
            if weighted != m {
                violations.push(format!("Σ k·J_k = {weighted} ≠ {m} at λ = {l}"));
            }
            if sp.mass_at(&l) != m {
                violations.push(format!("λ-mass {} ≠ {m} at λ = {l}", sp.mass_at(&l)));
            }
        }
    }
    ensure(violations.is_empty(), || format!("{} violations, first: {}", violations.len(), violations[0]))?;
    Ok(format!("{} pairs, {runs} eigenvalue runs, zero violations", corpus.len()))
}

fn infinity_mode() -> Outcome {
    let prod = |v: &[(i64, i64)]| CyclotomicProduct::from_factors(v.iter().map(|&(d, e)| (d.into(), e.into())));
    for (p, n, expect) in [
        ("x^2", 1, prod(&[(2, 1)])),
        ("x + y", 2, prod(&[(1, 1)])),
        ("x^2 + y^3", 2, prod(&[(2, 1), (3, 1), (6, -1)])),
    ] {
        let z = zeta_infinity(&pair(p, "1", n, Mode::Infinity)).map_err(|e| e.to_string())?;
        ensure(z == expect, || format!("zeta_infinity({p}) = {z}, expected {expect}"))?;
    }
    let z = zeta_infinity(&pair("x^2", "x + 1", 1, Mode::Infinity)).map_err(|e| e.to_string())?;
    let cover = zeta_infinity_cover_1d(&[2], &[1, 0]);
    ensure(factors(&z) == Some(cover.clone()), || format!("zeta_infinity(x^2/(x+1)) = {z}, cover {cover:?}"))?;
    Ok(format!("Q = 1 products reproduced, x^2/(x+1) gives {z} as the cover does"))
}

fn polynomiality_guard() -> Outcome {
    let mut accepted = 0usize;
    for pair in invariant_corpus() {
        let region = build_weighted_region(&pair).map_err(|e| e.to_string())?;
        let w = WeightedEhrhart::new(&region.nu);
        let period = Analysis::new(&pair, &region).period().to_u64().unwrap();
        for c in &region.cells {
            for l in RootOfUnity::dividing(period) {
                w.hstar(&c.cell, &l).map_err(|e| format!("rejected a vertex-integral ν: {e}"))?;
                accepted += 1;
            }
        }
    }
    let seg = hull(1, &[vec![0], vec![1]]);
    let bad = PiecewiseAffine::affine(seg.clone(), AffineFunction::new(IntVector::from_i64(&[1]), 0.into(), 2.into()));
    match hstar(&seg, &bad, &RootOfUnity::one()) {
        Err(monodromy::ehrhart::EhrhartError::PolynomialityViolated { .. }) => {}
        other => return Err(format!("ν(1) = 1/2 on [0,1] gave {other:?}")),
    }
    Ok(format!("{accepted} corpus h* computations accepted, ν(1) = 1/2 rejected"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("cusp reduction", cusp_reduction, Some(CUSP_BUDGET)),
        ("worked meromorphic pair", worked_pair, Some(WORKED_PAIR_BUDGET)),
        ("oracle equivalence", oracle_suite, Some(ORACLE_BUDGET)),
        ("identity suite", identity_suite, None),
        ("invariant suite", invariant_suite, None),
        ("infinity mode", infinity_mode, None),
        ("polynomiality guard", polynomiality_guard, None),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let took = start.elapsed();
        if let (Ok(_), Some(b)) = (&outcome, budget) {
            if took > b {
                outcome = Err(format!("took {took:.2?}, budget {b:?}"));
            }
        }
        match outcome {
            Ok(msg) => println!("PASS {} {name}: {msg} ({took:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg} ({took:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
