//! The `check` subcommand: recomputes what it can with the brute-force
//! oracles and compares.

use monodromy::lattice_core::{mixed_volume, normalized_volume, AffineLatticeFrame, IntVector, Polyhedron};
use monodromy::newton::{is_convenient, is_properly_contained, newton_polytope, MeroPair, Mode, SparsePolynomial};
use monodromy::spectrum::reduced_spectrum;
use monodromy::zeta::{zeta_infinity, zeta_local, CyclotomicProduct};
use monodromy_oracles::{
    mixed_volume_by_interpolation, spectrum_by_definition, volume_by_dilation, zeta_infinity_cover_1d,
    zeta_staircase_2d, Factors, OracleReport, Spectrum,
};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::report::Report;

/// Largest exponent for which the lattice-point oracles are attempted.
pub const MAX_ORACLE_EXPONENT: i64 = 8;

fn points(g: &SparsePolynomial) -> Option<Vec<Vec<i64>>> {
    g.support().iter().map(IntVector::to_i64_vec).collect()
}

pub fn factors(z: &CyclotomicProduct) -> Option<Factors> {
    z.factors().iter().map(|(d, e)| Some((d.to_i64()?, e.to_i64()?))).collect()
}

pub fn spectrum_terms(s: &monodromy::spectrum::PuiseuxPolynomial) -> Option<Spectrum> {
    s.terms()
        .iter()
        .map(|(b, c)| Some((Ratio::new(b.numer().to_i64()?, b.denom().to_i64()?), c.to_i64()?)))
        .collect()
}

/// Keys as `p/q` strings so reports print like the text output.
fn readable(s: &Spectrum) -> std::collections::BTreeMap<String, i64> {
    s.iter().map(|(b, c)| (b.to_string(), *c)).collect()
}

fn volume(p: &Polyhedron) -> Option<i128> {
    normalized_volume(p, p.frame()?).ok()?.to_i128()
}

fn record(out: &mut Vec<OracleReport>, skipped: &mut Vec<String>, r: Result<OracleReport, String>) {
    match r {
        Ok(r) => out.push(r),
        Err(why) => skipped.push(why),
    }
}

/// Every oracle comparison that applies to `pair`.
pub fn oracle_reports(pair: &MeroPair) -> (Vec<OracleReport>, Vec<String>) {
    let n = pair.n();
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    let (Some(p), Some(q)) = (points(pair.p()), points(pair.q())) else {
        skipped.push("exponents do not fit i64".into());
        return (out, skipped);
    };
    let small = p.iter().chain(&q).flatten().all(|&x| x <= MAX_ORACLE_EXPONENT);
    if small {
        for (name, g, pts) in [("P", pair.p(), &p), ("Q", pair.q(), &q)] {
            let engine = volume(&newton_polytope(g)).ok_or_else(|| format!("volume of Δ_{name} does not fit i128"));
            record(&mut out, &mut skipped, engine.map(|e| {
                OracleReport::compare(format!("normalized volume of Δ_{name}"), &volume_by_dilation(pts), &e)
            }));
        }
    } else {
        skipped.push(format!("volume: exponents above {MAX_ORACLE_EXPONENT}"));
    }
    if small && n <= 3 {
        let (dp, dq) = (newton_polytope(pair.p()), newton_polytope(pair.q()));
        let args: Vec<&Polyhedron> = (0..n).map(|i| if i % 2 == 0 { &dp } else { &dq }).collect();
        let lists: Vec<Vec<Vec<i64>>> = (0..n).map(|i| if i % 2 == 0 { p.clone() } else { q.clone() }).collect();
        let engine = mixed_volume(&args, &AffineLatticeFrame::standard(n))
            .map_err(|e| e.to_string())
            .and_then(|v| v.to_i128().ok_or_else(|| "mixed volume does not fit i128".to_string()));
        record(&mut out, &mut skipped, engine.map(|e| {
            OracleReport::compare("mixed volume MV(Δ_P, Δ_Q, …)", &mixed_volume_by_interpolation(&lists), &e)
        }));
    } else {
        skipped.push("mixed volume: needs n ≤ 3 and small exponents".into());
    }
    match (pair.mode(), n) {
        (Mode::Local, 2) => {
            let engine = zeta_local(pair).map_err(|e| e.to_string()).and_then(|z| factors(&z).ok_or("zeta too large".into()));
            record(&mut out, &mut skipped, engine.map(|e| OracleReport::compare("zeta_local", &zeta_staircase_2d(&p, &q), &e)));
        }
        (Mode::Infinity, 1) => {
            let flat = |v: &[Vec<i64>]| v.iter().map(|x| x[0]).collect::<Vec<i64>>();
            let engine = zeta_infinity(pair).map_err(|e| e.to_string()).and_then(|z| factors(&z).ok_or("zeta too large".into()));
            record(&mut out, &mut skipped, engine.map(|e| {
                OracleReport::compare("zeta_infinity (generic coefficients)", &zeta_infinity_cover_1d(&flat(&p), &flat(&q)), &e)
            }));
        }
        _ => skipped.push("zeta: the oracles cover local n = 2 and infinity n = 1".into()),
    }
    let spectral = pair.mode() == Mode::Local
        && (2..=3).contains(&n)
        && small
        && is_convenient(pair.p())
        && is_convenient(pair.q())
        && is_properly_contained(pair).is_ok();
    if spectral {
        let bound = n as i64 + 2;
        let oracle = spectrum_by_definition(&p, &q, bound);
        let engine = reduced_spectrum(pair)
            .map_err(|e| e.to_string())
            .and_then(|sp| spectrum_terms(&sp).ok_or_else(|| "spectrum too large".to_string()));
        out.push(match (oracle, engine) {
            (Ok(o), Ok(e)) => OracleReport::compare("reduced spectrum", &readable(&o), &readable(&e)),
            (o, e) => OracleReport {
                quantity: "reduced spectrum".into(),
                oracle: format!("{o:?}"),
                engine: format!("{e:?}"),
                agree: false,
            },
        });
    } else {
        skipped.push("spectrum: needs local mode, 2 ≤ n ≤ 3, convenient, properly contained".into());
    }
    (out, skipped)
}

pub fn run_oracles(pair: &MeroPair, report: &mut Report) -> Result<(), String> {
    let (reports, skipped) = oracle_reports(pair);
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for r in &reports {
        rows.push(json!({ "quantity": r.quantity, "oracle": r.oracle, "engine": r.engine, "agree": r.agree }));
        text.push(r.to_string());
        report.check(format!("oracle: {}", r.quantity), r.agree, None);
    }
    for s in &skipped {
        text.push(format!("skipped {s}"));
    }
    report.result("oracles", Value::Array(rows), text.join("\n"));
    report.result("skipped", json!(skipped), String::new());
    Ok(())
}
