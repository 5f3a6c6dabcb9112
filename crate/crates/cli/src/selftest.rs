use csmm_core::arithgeo::{dedekind_sum, seifert_data};
use csmm_core::corealg::{rat, HSeries, NPoly};
use csmm_core::diagrams::{lmo_pair, lmo_pair_monomial, phi, psi, JacobiDiagram};
use csmm_core::gaussmm::{gauss_moment, harer_zagier, schur_expectation};
use csmm_core::seifert::seifert_potential;
use csmm_core::symfun::{partitions_of, Monomial, Partition, SymFunc};
use csmm_core::wrt2::{wrt_lens_su2, wrt_sphere_su2};
use csmm_core::Result;
use serde_json::{json, Value};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec())
}

fn examples() -> Result<bool> {
    let half = rat(1, 2);
    let w2 = JacobiDiagram::wheel(2, 0)?;
    let h2 = |c: &[i64]| HSeries::monomial(2, NPoly::from_ints(c), 2);
    let wheel = SymFunc::power_sum_product(1, 0, &[2], h2(&[0, 2])?)?
        .add(&SymFunc::power_sum_product(1, 0, &[1, 1], h2(&[-2])?)?)?;
    Ok(gauss_moment(&p(&[2]))? == NPoly::from_ints(&[0, 0, 1])
        && gauss_moment(&p(&[1, 1]))? == NPoly::n()
        && lmo_pair(&psi(&w2)?, 1, 1)?.normalized() == NPoly::from_ints(&[0, -2, 0, 2])
        && schur_expectation(&p(&[2]))? == NPoly::from_terms([(1, half.clone()), (2, half.clone())])
        && schur_expectation(&p(&[1, 1]))? == NPoly::from_terms([(1, half.clone()), (2, -half)])
        && phi(&psi(&w2)?, 1, 2)? == wheel)
}

fn two_routes() -> Result<bool> {
    for w in (0..=6).step_by(2) {
        for l in partitions_of(w)? {
            let surface = lmo_pair_monomial(&Monomial::single(l.clone()), w as u32 / 2)?.normalized();
            if surface != gauss_moment(&l)? {
                return Ok(false);
            }
        }
    }
    for m in 1..=4 {
        if harer_zagier(m)? != gauss_moment(&p(&[2 * m as u32]))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn grading_audit() -> Result<bool> {
    for pairs in [
        vec![(2, 1)],
        vec![(2, 1), (3, 1), (5, -4)],
        vec![(2, -1), (3, 1), (7, 2)],
        vec![(2, 1), (3, 2), (5, 3), (7, -1)],
    ] {
        // seifert_potential itself rejects a grading violation
        seifert_potential(&seifert_data(&pairs)?, 6)?;
    }
    Ok(true)
}

fn number_theory() -> Result<bool> {
    Ok(dedekind_sum(1, 3)? == rat(1, 18) && dedekind_sum(5, 7)? == csmm_core::arithgeo::dedekind_sum_sawtooth(5, 7)?)
}

fn lens_sphere() -> Result<bool> {
    for k in 1..=6 {
        if (wrt_lens_su2(1, 1, k, 128)?.abs - wrt_sphere_su2(k)?).abs() > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs every check; the boolean is true when all of them passed.
pub fn run() -> (Value, bool) {
    let checks: [(&str, fn() -> Result<bool>); 5] = [
        ("worked_examples", examples),
        ("wick_equals_surface_pairing", two_routes),
        ("seifert_grading_audit", grading_audit),
        ("dedekind_sums", number_theory),
        ("su2_unknot_surgery", lens_sphere),
    ];
    let mut all = true;
    let rows: Vec<Value> = checks
        .iter()
        .map(|(name, f)| {
            let (pass, detail) = match f() {
                Ok(b) => (b, Value::Null),
                Err(e) => (false, json!(e.to_string())),
            };
            all &= pass;
            json!({"name": name, "pass": pass, "detail": detail})
        })
        .collect();
    (json!({"checks": rows, "passed": all}), all)
}
