use csmm_core::arithgeo::{
    dedekind_sum, dedekind_sum_cot, dedekind_sum_sawtooth, linking_signature, rademacher_phi, seifert_data, Sl2z,
};
use csmm_core::corealg::{scalar_to_f64, NPoly};
use csmm_core::diagrams::{
    gl_n_bruteforce, lmo_pair_monomial, lmo_pair_per_color, lmo_pair_symfunc, phi, psi, JacobiDiagram,
};
use csmm_core::gaussmm::{gauss_moment, gauss_moment_multicolor, harer_zagier, schur_expectation};
use csmm_core::seifert::{
    gue_eigen_average, gue_sample_moments, lmo_seifert_free_energy, lmo_seifert_integral, lmo_seifert_partition,
    numeric_coupling, omega_coeffs, seifert_integral_numeric, seifert_potential, theta_prefactor, QuadratureOptions,
};
use csmm_core::symfun::{powersum_to_schur, schur_to_powersum_coeffs, sym_character, Monomial, Partition};
use csmm_core::wrt2::{complete_sl2z, u_matrix_su2, wrt_lens_su2, wrt_sphere_su2, wrt_surgery_su2};
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::input::{self, DiagramArgs};
use crate::{Failure, MomentRoute, SchurMode};

type Out = Result<Value, Failure>;

fn v<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn partitions(raw: &[String]) -> Result<Vec<Partition>, Failure> {
    if raw.is_empty() {
        return Err(Failure::Usage("at least one --partition is required".into()));
    }
    raw.iter().map(|s| input::partition(s)).collect()
}

pub fn moment(raw: &[String], route: MomentRoute, n: Option<i64>) -> Out {
    let parts = partitions(raw)?;
    let poly = match route {
        MomentRoute::Wick if parts.len() == 1 => gauss_moment(&parts[0])?,
        MomentRoute::Wick => gauss_moment_multicolor(&parts)?,
        MomentRoute::Surface => monomial_pairing(&parts)?.0,
        MomentRoute::HarerZagier => {
            let [p] = parts.as_slice() else {
                return Err(Failure::Usage("harer-zagier takes one partition (2m)".into()));
            };
            match p.parts() {
                [w] if w % 2 == 0 => harer_zagier(*w as i64 / 2)?,
                _ => return Err(Failure::Usage("harer-zagier needs a single even part".into())),
            }
        }
    };
    let mut out = Map::new();
    out.insert("result".into(), v(&poly));
    if let Some(n) = n {
        out.insert("at_n".into(), json!(poly.eval(n).to_string()));
    }
    Ok(Value::Object(out))
}

pub fn schur(raw: &str, mode: SchurMode, character: Option<&str>) -> Out {
    let lambda = input::partition(raw)?;
    let result = match mode {
        SchurMode::Expectation => v(&schur_expectation(&lambda)?),
        SchurMode::Character => {
            let mu = input::partition(
                character.ok_or_else(|| Failure::Usage("--mode character needs --class".into()))?,
            )?;
            json!(sym_character(&lambda, &mu)?)
        }
        SchurMode::ToPowersum => Value::Array(
            schur_to_powersum_coeffs(&lambda)
                .iter()
                .map(|(mu, c)| json!({"partition": v(mu), "coeff": c.to_string()}))
                .collect(),
        ),
        SchurMode::FromPowersum => Value::Array(
            powersum_to_schur(&lambda)
                .iter()
                .map(|(mu, c)| json!({"partition": v(mu), "coeff": c.to_string()}))
                .collect(),
        ),
    };
    Ok(json!({ "result": result }))
}

/// Surface pairing of a monomial with `m_x = |λ_x|/2` per color; odd
/// weights integrate to zero.
fn monomial_pairing(parts: &[Partition]) -> Result<(NPoly, Value), Failure> {
    if parts.iter().any(|p| p.weight() % 2 != 0) {
        return Ok((NPoly::zero(), json!({})));
    }
    let mono = Monomial::new(parts.to_vec());
    let val = if parts.len() == 1 {
        lmo_pair_monomial(&mono, parts[0].weight() / 2)?
    } else {
        let s = csmm_core::diagrams::SurfaceCombo::single(csmm_core::diagrams::monomial_surface(&mono));
        let ms: Vec<u32> = parts.iter().map(|p| p.weight() / 2).collect();
        lmo_pair_per_color(&s, &ms)?
    };
    Ok((val.normalized(), v(val.graded())))
}

fn diagram_colors(d: &JacobiDiagram) -> usize {
    d.legs().iter().map(|&(_, c)| c as usize + 1).max().unwrap_or(0)
}

pub fn pair(raw: &[String], diagram: &DiagramArgs) -> Out {
    if diagram.is_given() {
        let d = diagram.build()?;
        let colors = diagram_colors(&d);
        let mut counts = vec![0u32; colors];
        for (_, c) in d.legs() {
            counts[c as usize] += 1;
        }
        let surfaces = psi(&d)?;
        if counts.iter().any(|c| c % 2 != 0) {
            return Ok(json!({"result": v(&NPoly::zero()), "graded": {}}));
        }
        let ms: Vec<u32> = counts.iter().map(|c| c / 2).collect();
        let val = lmo_pair_per_color(&surfaces, &ms)?;
        let mut out = Map::new();
        out.insert("result".into(), v(&val.normalized()));
        out.insert("graded".into(), v(val.graded()));
        if colors <= 1 {
            // same integral, taken after the power-sum map
            let m = ms.first().copied().unwrap_or(0);
            let order = d.vassiliev_degree() as i32;
            let f = phi(&surfaces, colors, order)?;
            out.insert("via_power_sums".into(), v(&lmo_pair_symfunc(&f, m)?));
        }
        return Ok(Value::Object(out));
    }
    let parts = partitions(raw)?;
    let (poly, graded) = monomial_pairing(&parts)?;
    let wick = if parts.len() == 1 {
        gauss_moment(&parts[0])?
    } else {
        gauss_moment_multicolor(&parts)?
    };
    Ok(json!({"result": v(&poly), "graded": graded, "wick": v(&wick)}))
}

pub fn weight(diagram: &DiagramArgs, order: Option<i32>, gl_n: Option<&str>) -> Out {
    let d = diagram.build()?;
    let order = order.unwrap_or(d.vassiliev_degree() as i32);
    let surfaces = psi(&d)?;
    let image = phi(&surfaces, diagram_colors(&d), order)?;
    let mut out = Map::new();
    out.insert(
        "degree".into(),
        json!({"vassiliev": d.vassiliev_degree(), "euler": d.euler_degree()}),
    );
    out.insert("psi".into(), v(&surfaces));
    out.insert("phi".into(), v(&image));
    if let Some(list) = gl_n {
        let mut brute = Map::new();
        for n in input::int_list::<u32>(list)? {
            brute.insert(n.to_string(), json!(gl_n_bruteforce(&d, n)?.to_string()));
        }
        out.insert("gl_n".into(), Value::Object(brute));
    }
    Ok(Value::Object(out))
}

pub fn dedekind(p: i64, q: i64, method: crate::DedekindMethod, bits: usize) -> Out {
    use crate::DedekindMethod::*;
    Ok(match method {
        Reciprocity => json!({"result": dedekind_sum(p, q)?.to_string()}),
        Sawtooth => json!({"result": dedekind_sum_sawtooth(p, q)?.to_string()}),
        Cot => json!({"result": dedekind_sum_cot(p, q, bits)?}),
    })
}

pub fn rademacher(entries: &[i64]) -> Out {
    let u = match *entries {
        [p, q] => complete_sl2z(p, q)?,
        [p, r, q, s] => Sl2z::new(p, r, q, s)?,
        _ => return Err(Failure::Usage("give p q (completed) or p r q s".into())),
    };
    Ok(json!({"matrix": v(&u), "result": rademacher_phi(&u)?.to_string()}))
}

pub fn seifert_data_cmd(pairs: &str, linking: Option<&str>) -> Out {
    let d = seifert_data(&input::pairs(pairs)?)?;
    let mut out = Map::new();
    out.insert("result".into(), v(&d));
    if let Some(m) = linking {
        out.insert("signature".into(), json!(linking_signature(&input::matrix(m)?)?));
    }
    Ok(Value::Object(out))
}

pub fn seifert_z(pairs: &str, order: i32, numeric: Option<&str>, cfg: &RunConfig) -> Out {
    let d = seifert_data(&input::pairs(pairs)?)?;
    let pot = seifert_potential(&d, order)?;
    let integral = lmo_seifert_integral(&d, order)?;
    let omega: Vec<String> = omega_coeffs((order / 2) as usize).iter().map(|b| b.to_string()).collect();
    let mut out = Map::new();
    out.insert("data".into(), v(&d));
    out.insert("order".into(), json!(order));
    out.insert("omega".into(), json!(omega));
    out.insert("log_potential".into(), v(&pot.log_potential));
    out.insert("integral".into(), v(&integral));
    out.insert("prefactor".into(), v(&theta_prefactor(&d, order)?));
    out.insert("partition".into(), v(&lmo_seifert_partition(&d, order)?));
    out.insert("free_energy".into(), v(&lmo_seifert_free_energy(&d, order)?));
    if let Some(spec) = numeric {
        let (n, hbar) = input::numeric_spec(spec)?;
        let g = numeric_coupling(&d, hbar)?;
        let opts = QuadratureOptions {
            tol: cfg.tol,
            ..Default::default()
        };
        let q = seifert_integral_numeric(&d, n, g, None, &opts)?;
        let series = integral.eval_f64(n as i64, hbar);
        out.insert(
            "numeric".into(),
            json!({
                "continuation": "real hbar, coupling hbar^2/e",
                "N": n,
                "hbar": hbar,
                "coupling": g,
                "series_integral": series,
                "value": q.value,
                "error_estimate": q.error_estimate,
                "nodes": q.nodes,
                "relative_difference": ((series - q.value) / q.value).abs(),
            }),
        );
    }
    Ok(Value::Object(out))
}

pub struct NumericArgs<'a> {
    pub pairs: Option<&'a str>,
    pub moment: Option<&'a str>,
    pub n: usize,
    pub hbar: Option<f64>,
    pub shift: Option<&'a str>,
}

pub fn numeric_z(a: NumericArgs<'_>, cfg: &RunConfig) -> Out {
    let opts = QuadratureOptions {
        tol: cfg.tol,
        ..Default::default()
    };
    if let Some(raw) = a.moment {
        let lambda = input::partition(raw)?;
        let parts = lambda.parts().to_vec();
        let r = gue_eigen_average(
            a.n,
            |x| parts.iter().map(|&k| x.iter().map(|xi| xi.powi(k as i32)).sum::<f64>()).product(),
            &opts,
        )?;
        let exact = gauss_moment(&lambda)?.eval(a.n as i64);
        return Ok(json!({"result": v(&r), "exact": exact.to_string(), "exact_value": scalar_to_f64(&exact)}));
    }
    let pairs = a
        .pairs
        .ok_or_else(|| Failure::Usage("numeric-z needs --pairs or --moment".into()))?;
    let hbar = a.hbar.ok_or_else(|| Failure::Usage("numeric-z --pairs needs --hbar".into()))?;
    let d = seifert_data(&input::pairs(pairs)?)?;
    let g = numeric_coupling(&d, hbar)?;
    let shift = a.shift.map(input::float_list).transpose()?;
    let r = seifert_integral_numeric(&d, a.n, g, shift.as_deref(), &opts)?;
    Ok(json!({
        "continuation": "real hbar, coupling hbar^2/e",
        "coupling": g,
        "result": v(&r),
    }))
}

pub fn gue_mc(n: usize, raw: &str, samples: usize, seed: u64) -> Out {
    let lambda = input::partition(raw)?;
    let (mean, se) = gue_sample_moments(n, &lambda, samples, seed)?;
    let exact = gauss_moment(&lambda)?.eval(n as i64);
    let x = scalar_to_f64(&exact);
    Ok(json!({
        "estimate": mean,
        "std_error": se,
        "samples": samples,
        "seed": seed,
        "exact": exact.to_string(),
        "within_3se": (mean - x).abs() <= 3.0 * se,
    }))
}

pub struct WrtArgs<'a> {
    pub lens: Option<&'a [i64]>,
    pub surgery: Option<&'a [i64]>,
    pub sphere: bool,
    pub level: u32,
    pub bits: usize,
    pub u_matrix: bool,
}

pub fn wrt_su2(a: WrtArgs<'_>) -> Out {
    if a.sphere {
        return Ok(json!({"abs": wrt_sphere_su2(a.level)?}));
    }
    let u = match (a.lens, a.surgery) {
        (Some(&[p, q]), None) => {
            if !a.u_matrix {
                return Ok(v(&wrt_lens_su2(p, q, a.level, a.bits)?));
            }
            complete_sl2z(p, q)?
        }
        (None, Some(&[p, r, q, s])) => Sl2z::new(p, r, q, s)?,
        _ => return Err(Failure::Usage("give exactly one of --lens p q, --surgery p r q s, --sphere".into())),
    };
    if a.u_matrix {
        let m = u_matrix_su2(&u, a.level as i64 + 2, a.bits)?;
        let rows: Vec<Value> = m
            .iter()
            .map(|row| Value::Array(row.iter().map(|z| json!({"re": z.re, "im": z.im})).collect()))
            .collect();
        return Ok(json!({"matrix": v(&u), "result": rows}));
    }
    Ok(v(&wrt_surgery_su2(&u, a.level, a.bits)?))
}
