use gauss_quad::GaussHermite;

use crate::arithgeo::SeifertData;
use crate::corealg::scalar_to_f64;
use crate::par;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    /// Relative difference between successive refinements that counts as
    /// converged.
    pub tol: f64,
    /// Nodes per dimension on the first pass; doubled each refinement.
    pub start_nodes: usize,
    pub max_nodes: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            start_nodes: 8,
            max_nodes: 256,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct NumericResult {
    pub value: f64,
    /// Difference to the previous refinement.
    pub error_estimate: f64,
    pub nodes: usize,
}

/// Largest number of tensor-grid points evaluated in one pass.
const MAX_GRID: f64 = 2e8;

/// Tensor Gauss–Hermite sum `Σ w f(x) Δ(x)²` against `e^{-|x|²/2}`.
fn grid_sum<F>(n: usize, nodes: usize, f: &F) -> Result<(f64, f64)>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let rule = GaussHermite::new(nodes)
        .map_err(|e| Error::NonConvergent(format!("Gauss-Hermite rule: {e}")))?;
    // weight e^{-y²}, x = √2 y
    let pts: Vec<(f64, f64)> = rule
        .as_node_weight_pairs()
        .into_iter()
        .map(|(y, w)| (std::f64::consts::SQRT_2 * y, *w))
        .collect();
    let sums = par::map_indexed(pts.len(), |first| {
        let mut x = vec![0.0; n];
        let mut idx = vec![0usize; n];
        idx[0] = first;
        let (mut num, mut den) = (0.0, 0.0);
        loop {
            let mut w = 1.0;
            for (k, &i) in idx.iter().enumerate() {
                x[k] = pts[i].0;
                w *= pts[i].1;
            }
            let mut vandermonde = 1.0;
            for i in 0..n {
                for j in i + 1..n {
                    let d = x[i] - x[j];
                    vandermonde *= d * d;
                }
            }
            let wv = w * vandermonde;
            if wv != 0.0 {
                num += wv * f(&x);
                den += wv;
            }
            // odometer over dimensions 1..n
            let mut k = 1;
            while k < n {
                idx[k] += 1;
                if idx[k] < pts.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k >= n {
                break;
            }
        }
        (num, den)
    });
    Ok(sums
        .into_iter()
        .fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d)))
}

/// `E[f(x)]` over the GUE eigenvalue density `∝ Δ(x)² e^{-|x|²/2}` on
/// `ℝ^n`, refined until converged.
pub fn gue_eigen_average<F>(n: usize, f: F, opts: &QuadratureOptions) -> Result<NumericResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if n == 0 {
        return Err(Error::OutOfRange("need at least one eigenvalue".into()));
    }
    let mut nodes = opts.start_nodes.max(n + 1);
    let mut prev: Option<f64> = None;
    while nodes <= opts.max_nodes {
        if (nodes as f64).powi(n as i32) > MAX_GRID {
            break;
        }
        let (num, den) = grid_sum(n, nodes, &f)?;
        let value = num / den;
        if !value.is_finite() {
            return Err(Error::NonConvergent(format!("non-finite value at {nodes} nodes")));
        }
        if let Some(p) = prev {
            let err = (value - p).abs();
            if err <= opts.tol * value.abs().max(f64::MIN_POSITIVE) {
                return Ok(NumericResult {
                    value,
                    error_estimate: err,
                    nodes,
                });
            }
        }
        prev = Some(value);
        nodes *= 2;
    }
    Err(Error::NonConvergent(format!(
        "no convergence to {} within {} nodes per dimension for n = {n}",
        opts.tol, opts.max_nodes
    )))
}

/// Coupling of the quadrature, `g = ℏ²/e`; needs `e > 0` so the
/// Gaussian is convergent at real ℏ.
pub fn numeric_coupling(d: &SeifertData, hbar: f64) -> Result<f64> {
    let e = scalar_to_f64(&d.e);
    if e <= 0.0 {
        return Err(Error::NonConvergent(format!(
            "e = {} is not positive; the real-coupling integral diverges",
            d.e
        )));
    }
    Ok(hbar * hbar / e)
}

fn sinhc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        let z2 = z * z;
        1.0 + z2 / 6.0 * (1.0 + z2 / 20.0)
    } else {
        z.sinh() / z
    }
}

/// `E[∏_{i<j} sinhc(β_ij/2)^{2-n} ∏_ℓ sinhc(β_ij/(2p_ℓ)) · e^{-t·β}]` with
/// `β = √g x` and `x` GUE eigenvalues, `sinhc z = sinh z / z`.
pub fn seifert_integral_numeric(
    d: &SeifertData,
    n: usize,
    g: f64,
    t_shift: Option<&[f64]>,
    opts: &QuadratureOptions,
) -> Result<NumericResult> {
    if !(g > 0.0 && g.is_finite()) {
        return Err(Error::OutOfRange(format!("coupling g must be positive, got {g}")));
    }
    if n > 6 {
        return Err(Error::OutOfRange(format!("tensor quadrature supports N <= 6, got {n}")));
    }
    if let Some(t) = t_shift {
        if t.len() != n {
            return Err(Error::Invalid(format!("t_shift has {} entries, expected {n}", t.len())));
        }
    }
    let sg = g.sqrt();
    let fibers = 2 - d.pairs.len() as i32;
    let inv_p: Vec<f64> = d.pairs.iter().map(|&(p, _)| 1.0 / p as f64).collect();
    let kernel = |x: &[f64]| {
        let mut v = 1.0;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let b = sg * (x[i] - x[j]) / 2.0;
                v *= sinhc(b).powi(fibers);
                for &ip in &inv_p {
                    v *= sinhc(b * ip);
                }
            }
        }
        if let Some(t) = t_shift {
            let dot: f64 = t.iter().zip(x).map(|(t, x)| t * x).sum();
            v *= (-sg * dot).exp();
        }
        v
    };
    gue_eigen_average(n, kernel, opts)
}
