use monodromy::ehrhart::{LaurentBiPoly, UniPoly, WeightedEhrhart};
use monodromy::newton::{all_facet_data, is_convenient, is_properly_contained, MeroPair, Mode};
use monodromy::spectrum::{build_weighted_region, Analysis, EHDPolynomial, JordanCounts, WeightedRegion};
use monodromy::zeta::{multiplicity, zeta_infinity, zeta_local, CyclotomicProduct, RootOfUnity};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::audit;
use crate::codec::{cyclotomic, int, puiseux};
use crate::job::{Command, JobSpec};
use crate::report::{Report, Status};

/// Runs one job. Failures are recorded in the report, never panicked.
pub fn run(job: &JobSpec) -> Report {
    let mut report = Report::new(job.inputs());
    let pair = match MeroPair::new(job.p.clone(), job.q.clone(), job.mode) {
        Ok(p) => p,
        Err(e) => {
            report.fail(e);
            return report;
        }
    };
    hypotheses(job, &pair, &mut report);
    if let Some(h) = report.hypotheses.iter().find(|h| h.blocks()) {
        let why = match &h.detail {
            Some(d) => format!("{} {}: {d}", h.name, h.status_text()),
            None => format!("{} {}", h.name, h.status_text()),
        };
        report.fail(format!("{} refused: {why}", job.command));
        return report;
    }
    if let Err(e) = dispatch(job, &pair, &mut report) {
        report.fail(e);
    }
    report
}

fn hypotheses(job: &JobSpec, pair: &MeroPair, report: &mut Report) {
    let region = job.command.needs_region();
    let local = job.mode == Mode::Local;
    let conv_needed = local && (region || job.command == Command::Multiplicity);
    for (name, g) in [("P convenient", pair.p()), ("Q convenient", pair.q())] {
        let status = match (local, is_convenient(g)) {
            (false, _) => Status::NotApplicable,
            (true, true) => Status::Holds,
            (true, false) => Status::Fails,
        };
        report.hypothesis(name, status, conv_needed, None);
    }
    match is_properly_contained(pair) {
        Ok(()) => report.hypothesis("properly contained", Status::Holds, region, None),
        Err(w) => report.hypothesis("properly contained", Status::Fails, region, Some(w.to_string())),
    }
    let needed = job.command.needs_assumptions();
    for (name, on) in job.assumptions.flags() {
        let status = if on { Status::Asserted } else { Status::NotAsserted };
        let detail = (needed && !on).then(|| format!("pass --assume-{name}"));
        report.hypothesis(name, status, needed, detail);
    }
}

fn dispatch(job: &JobSpec, pair: &MeroPair, report: &mut Report) -> Result<(), String> {
    let s = |e: &dyn std::fmt::Display| e.to_string();
    match job.command {
        Command::ZetaLocal | Command::ZetaInfinity => {
            let z = zeta_of(pair).map_err(|e| s(&e))?;
            report.result("zeta", cyclotomic(&z), format!("zeta = {z}"));
            if job.mode == Mode::Local && pair.q().is_constant() {
                if let Some(ch) = characteristic_polynomial(&z, job.n) {
                    report.result("characteristic_polynomial", coefficients(&ch), format!("characteristic polynomial = {ch}"));
                }
            }
            Ok(())
        }
        Command::Multiplicity => {
            let mut rows = Vec::new();
            let mut text = Vec::new();
            for l in lambdas(job, facet_period(pair), false) {
                let m = multiplicity(pair, &l).map_err(|e| s(&e))?;
                rows.push(json!({ "lambda": l.to_string(), "value": int(&m) }));
                text.push(format!("multiplicity({l}) = {m}"));
            }
            report.result("multiplicity", Value::Array(rows), text.join("\n"));
            Ok(())
        }
        Command::Lefschetz => {
            let z = zeta_of(pair).map_err(|e| s(&e))?;
            let ms = if job.m.is_empty() { (1..=zeta_period(&z)).collect() } else { job.m.clone() };
            let mut rows = Vec::new();
            let mut text = Vec::new();
            for m in ms {
                let v = z.lefschetz(&BigInt::from(m));
                rows.push(json!({ "m": m, "value": int(&v) }));
                text.push(format!("Λ({m}) = {v}"));
            }
            report.result("lefschetz", Value::Array(rows), text.join("\n"));
            Ok(())
        }
        Command::Check => audit::run_oracles(pair, report),
        _ => {
            let region = build_weighted_region(pair).map_err(|e| s(&e))?;
            let a = Analysis::new(pair, &region);
            match job.command {
                Command::ELambda => run_e_lambda(job, pair, &a, report),
                Command::Jordan => run_jordan(job, pair, &a, report),
                Command::JordanExtremes => run_extremes(job, &a, report),
                Command::Spectrum => run_spectrum(pair, &a, report),
                Command::Ehrhart => run_ehrhart(job, &region, &a, report),
                _ => unreachable!("handled above"),
            }
        }
    }
}

fn zeta_of(pair: &MeroPair) -> Result<CyclotomicProduct, monodromy::zeta::ZetaError> {
    match pair.mode() {
        Mode::Local => zeta_local(pair),
        Mode::Infinity => zeta_infinity(pair),
    }
}

fn lcm_u64(xs: impl Iterator<Item = BigInt>) -> u64 {
    xs.fold(BigInt::one(), |l, d| l.lcm(&d)).to_u64().expect("period fits in u64")
}

fn facet_period(pair: &MeroPair) -> u64 {
    lcm_u64(all_facet_data(pair).into_iter().filter(|x| x.d.is_positive()).map(|x| x.d))
}

fn zeta_period(z: &CyclotomicProduct) -> u64 {
    lcm_u64(z.factors().keys().cloned())
}

/// The requested eigenvalues, or every class of order dividing `period`.
fn lambdas(job: &JobSpec, period: u64, with_one: bool) -> Vec<RootOfUnity> {
    if job.all_lambdas {
        RootOfUnity::dividing(period).into_iter().filter(|l| with_one || !l.is_one()).collect()
    } else {
        job.lambdas.clone()
    }
}

fn analysis_period(a: &Analysis) -> u64 {
    a.period().to_u64().expect("period fits in u64")
}

/// Characteristic polynomial of the monodromy on `H^{n−1}` of the Milnor
/// fiber of a holomorphic germ with zeta function `z`, from
/// `ζ(t) = (1 − t) · det(1 − t·h)^{(−1)^{n−1}}`. `None` if the quotient
/// is not a polynomial.
pub fn characteristic_polynomial(z: &CyclotomicProduct, n: usize) -> Option<UniPoly> {
    let mut w = z.clone();
    w.mul_factor(BigInt::one(), -BigInt::one());
    if n.is_multiple_of(2) {
        w = CyclotomicProduct::from_factors(w.factors().iter().map(|(d, e)| (d.clone(), -e)));
    }
    let (num, den) = w.reduced_fraction();
    if den.len() != 1 {
        return None;
    }
    let p = UniPoly::new(num);
    let deg = p.degree().unwrap_or(0);
    Some(p.reverse(deg))
}

fn coefficients(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(int).collect())
}

fn bipoly(p: &LaurentBiPoly) -> Value {
    Value::Array(p.terms().iter().map(|(&(i, j), c)| json!({ "u": i, "v": j, "coeff": int(c) })).collect())
}

fn hodge_json(e: &EHDPolynomial) -> Value {
    let numbers: Vec<Value> =
        e.hodge_numbers().iter().map(|(&(p, q), h)| json!({ "p": p, "q": q, "h": int(h) })).collect();
    json!({
        "lambda": e.lambda.to_string(),
        "e": bipoly(&e.poly),
        "hodge_numbers": numbers,
        "dimension": int(&e.dimension()),
    })
}

fn run_e_lambda(job: &JobSpec, pair: &MeroPair, a: &Analysis, report: &mut Report) -> Result<(), String> {
    let n = job.n as i64;
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for l in lambdas(job, analysis_period(a), false) {
        let e = a.e_lambda(&l).map_err(|e| e.to_string())?;
        let symmetric = e.poly.terms().iter().all(|(&(p, q), c)| *c == e.e(n - 1 - q, n - 1 - p));
        report.check(format!("Hodge symmetry at λ = {l}"), symmetric, None);
        let m = multiplicity(pair, &l).map_err(|e| e.to_string())?;
        report.check(
            format!("dim E_{l} = multiplicity"),
            e.dimension() == m,
            Some(format!("{} vs {m}", e.dimension())),
        );
        text.push(format!("E_{l}(u, v) = {e}"));
        rows.push(hodge_json(&e));
    }
    report.result("e_lambda", Value::Array(rows), text.join("\n"));
    Ok(())
}

fn jordan_json(j: &JordanCounts) -> Value {
    let blocks: Vec<Value> = j.blocks().iter().map(|(k, c)| json!({ "k": k, "count": int(c) })).collect();
    json!({
        "lambda": j.lambda.to_string(),
        "blocks": blocks,
        "via_local_h": j.via_local_h.iter().map(int).collect::<Vec<_>>(),
        "via_weights": j.via_weights.iter().map(int).collect::<Vec<_>>(),
        "via_extremes": { "J_n": int(&j.via_extremes.0), "J_n_minus_1": int(&j.via_extremes.1) },
    })
}

fn blocks_text(j: &JordanCounts) -> String {
    let body: Vec<String> = j.blocks().iter().map(|(k, c)| format!("J_{k} = {c}")).collect();
    if body.is_empty() {
        "no blocks".into()
    } else {
        body.join(", ")
    }
}

fn run_jordan(job: &JobSpec, pair: &MeroPair, a: &Analysis, report: &mut Report) -> Result<(), String> {
    let n = job.n;
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for l in lambdas(job, analysis_period(a), false) {
        let j = a.jordan_counts(&l).map_err(|e| e.to_string())?;
        report.check(format!("local h path = weight path at λ = {l}"), j.via_local_h == j.via_weights, None);
        let next = if n >= 2 { j.get(n - 1) } else { BigInt::from(0) };
        report.check(
            format!("extremes census at λ = {l}"),
            j.via_extremes == (j.get(n), next),
            None,
        );
        let m = multiplicity(pair, &l).map_err(|e| e.to_string())?;
        report.check(
            format!("Σ k·J_k = multiplicity at λ = {l}"),
            j.total_dimension() == m,
            Some(format!("{} vs {m}", j.total_dimension())),
        );
        text.push(format!("λ = {l}: {}", blocks_text(&j)));
        rows.push(jordan_json(&j));
    }
    report.result("jordan", Value::Array(rows), text.join("\n"));
    Ok(())
}

fn run_extremes(job: &JobSpec, a: &Analysis, report: &mut Report) -> Result<(), String> {
    let n = job.n;
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for l in lambdas(job, analysis_period(a), false) {
        let (top, next) = a.jordan_extremes_census(&l).map_err(|e| e.to_string())?;
        let general = a.jordan_via_local_h(&l).map_err(|e| e.to_string())?;
        let expect = (general[n - 1].clone(), if n >= 2 { general[n - 2].clone() } else { BigInt::from(0) });
        report.check(format!("census = local h count at λ = {l}"), expect == (top.clone(), next.clone()), None);
        text.push(format!("λ = {l}: J_{n} = {top}, J_{} = {next}", n - 1));
        rows.push(json!({ "lambda": l.to_string(), "J_n": int(&top), "J_n_minus_1": int(&next) }));
    }
    report.result("jordan_extremes", Value::Array(rows), text.join("\n"));
    Ok(())
}

fn run_spectrum(pair: &MeroPair, a: &Analysis, report: &mut Report) -> Result<(), String> {
    let sp = a.reduced_spectrum().map_err(|e| e.to_string())?;
    let n = BigRational::from_integer(pair.n().into());
    report.check("symmetric about n/2", sp.reflect(&n) == sp, None);
    report.check(
        "supported in (0, n) ∖ ℤ",
        sp.terms().keys().all(|b| b.is_positive() && *b < n && !b.is_integer()),
        None,
    );
    let closed = a.spectrum_closed_form().map_err(|e| e.to_string())?;
    let hodge = a.spectrum_from_hodge().map_err(|e| e.to_string())?;
    report.check("closed form = Hodge-number form", closed == hodge, None);
    for l in a.eigenvalue_candidates() {
        let m = multiplicity(pair, &l).map_err(|e| e.to_string())?;
        report.check(format!("mass at λ = {l} is the multiplicity"), sp.mass_at(&l) == m, Some(format!("{m}")));
    }
    report.result("spectrum", puiseux(&sp), format!("spectrum = {sp}"));
    Ok(())
}

fn run_ehrhart(job: &JobSpec, region: &WeightedRegion, a: &Analysis, report: &mut Report) -> Result<(), String> {
    let w = WeightedEhrhart::new(&region.nu);
    let s = |e: monodromy::ehrhart::EhrhartError| e.to_string();
    let mut cells = Vec::new();
    let mut text = Vec::new();
    for c in &region.cells {
        let verts: Vec<String> = c.gamma.vertices().iter().map(|v| v.to_string()).collect();
        cells.push(json!({
            "gamma": verts,
            "conormal": c.conormal.to_string(),
            "d_gamma": int(&c.d_gamma),
            "s_gamma": c.s_gamma,
            "m_gamma": c.m_gamma,
        }));
        text.push(format!(
            "cell over γ = conv{{{}}}: u = {}, d = {}, s = {}",
            verts.join(", "),
            c.conormal,
            c.d_gamma,
            c.s_gamma
        ));
    }
    report.result("cells", Value::Array(cells), text.join("\n"));
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for l in lambdas(job, analysis_period(a), true) {
        let hk = w.hstar(&region.k, &l).map_err(s)?;
        let lk = w.lstar(&region.k, &l).map_err(s)?;
        let hm = w.hstar_mixed(&region.subdivision, &l).map_err(s)?;
        let lm = w.lstar_mixed(&region.subdivision, &l).map_err(s)?;
        report.check(
            format!("h*_{l}(u, 1) = h*_{l}(u) on K"),
            hm.at_v_one() == hk,
            None,
        );
        text.push(format!("λ = {l}: h* = {hk}, l* = {lk}, h*(u, v) = {hm}, l*(u, v) = {lm}"));
        rows.push(json!({
            "lambda": l.to_string(),
            "hstar": coefficients(&hk),
            "lstar": coefficients(&lk),
            "hstar_mixed": bipoly(&hm),
            "lstar_mixed": bipoly(&lm),
        }));
    }
    report.result("ehrhart", Value::Array(rows), text.join("\n"));
    Ok(())
}
