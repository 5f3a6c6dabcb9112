//! Gaussian Hermitian matrix integrals with measure `exp(-½ tr M²)`,
//! normalized so that `⟨1⟩ = 1`, computed by Wick contraction.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::corealg::{HSeries, NPoly, Scalar};
use crate::par;
use crate::symfun::{schur_to_powersum_coeffs, Monomial, Partition, SymFunc};
use crate::{Error, Result};

/// Largest weight the matching enumerator accepts (`15!! ≈ 2·10⁶`).
pub const MAX_WICK_WEIGHT: u32 = 16;

fn memo() -> &'static RwLock<HashMap<Partition, NPoly>> {
    static MEMO: OnceLock<RwLock<HashMap<Partition, NPoly>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Completes the matching `alpha` (free slots hold `usize::MAX`) in every
/// possible way and records `#cycles(σ∘α)` for each.
fn enumerate(alpha: &mut [usize], sigma: &[usize], hist: &mut [u64]) {
    let Some(first) = alpha.iter().position(|&a| a == usize::MAX) else {
        hist[count_cycles(alpha, sigma)] += 1;
        return;
    };
    for partner in first + 1..alpha.len() {
        if alpha[partner] != usize::MAX {
            continue;
        }
        alpha[first] = partner;
        alpha[partner] = first;
        enumerate(alpha, sigma, hist);
        alpha[first] = usize::MAX;
        alpha[partner] = usize::MAX;
    }
}

fn count_cycles(alpha: &[usize], sigma: &[usize]) -> usize {
    let mut seen = vec![false; alpha.len()];
    let mut cycles = 0;
    for start in 0..alpha.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = sigma[alpha[h]];
        }
    }
    cycles
}

fn wick(lambda: &Partition) -> NPoly {
    let w = lambda.weight() as usize;
    if w == 0 {
        return NPoly::one();
    }
    if w % 2 == 1 {
        return NPoly::zero();
    }
    // σ: next half-edge inside the same trace factor.
    let mut sigma = Vec::with_capacity(w);
    for &j in lambda.parts() {
        let base = sigma.len();
        let j = j as usize;
        sigma.extend((0..j).map(|i| base + (i + 1) % j));
    }
    let hists = par::map_indexed(w - 1, |k| {
        let mut alpha = vec![usize::MAX; w];
        alpha[0] = k + 1;
        alpha[k + 1] = 0;
        let mut hist = vec![0u64; w + 1];
        enumerate(&mut alpha, &sigma, &mut hist);
        hist
    });
    let mut out = NPoly::zero();
    for hist in hists {
        for (faces, count) in hist.into_iter().enumerate() {
            if count > 0 {
                out.add_term(faces as u32, Scalar::from_integer(count.into()));
            }
        }
    }
    out
}

/// `⟨∏_i tr M^{λ_i}⟩` as a polynomial in `N`.
pub fn gauss_moment(lambda: &Partition) -> Result<NPoly> {
    if lambda.weight() > MAX_WICK_WEIGHT && lambda.weight() % 2 == 0 {
        return Err(Error::OutOfRange(format!(
            "Wick enumeration is limited to weight {MAX_WICK_WEIGHT}"
        )));
    }
    if let Some(v) = memo().read().expect("memo poisoned").get(lambda) {
        return Ok(v.clone());
    }
    let v = wick(lambda);
    memo()
        .write()
        .expect("memo poisoned")
        .insert(lambda.clone(), v.clone());
    Ok(v)
}

/// Independent Hermitian matrices, one per color.
pub fn gauss_moment_multicolor(mu: &[Partition]) -> Result<NPoly> {
    mu.iter()
        .try_fold(NPoly::one(), |acc, l| Ok(&acc * &gauss_moment(l)?))
}

/// Termwise Gaussian average. The ℏ carried by each coefficient is left as
/// is; `.at_unit_hbar()` of the result is the ℏ-free value.
pub fn gauss_integrate(f: &SymFunc) -> Result<HSeries> {
    let mut out = HSeries::zero(f.order());
    for (m, c) in f.terms() {
        let v = monomial_moment(m)?;
        if !v.is_zero() {
            out = out.add(&c.mul_npoly(&v))?;
        }
    }
    Ok(out)
}

fn monomial_moment(m: &Monomial) -> Result<NPoly> {
    gauss_moment_multicolor(m.partitions())
}

/// `⟨s_λ(M)⟩` through the power-sum expansion.
pub fn schur_expectation(lambda: &Partition) -> Result<NPoly> {
    let mut out = NPoly::zero();
    for (mu, c) in schur_to_powersum_coeffs(lambda) {
        out = &out + &gauss_moment(&mu)?.scale(&c);
    }
    Ok(out)
}

/// `⟨tr M^{2m}⟩` from the Harer–Zagier recursion
/// `(n+1) T_n = (4n-2) N T_{n-1} + (n-1)(2n-1)(2n-3) T_{n-2}`.
pub fn harer_zagier(m: i64) -> Result<NPoly> {
    if m < 0 {
        return Err(Error::Negative(m));
    }
    let mut prev = NPoly::n();
    if m == 0 {
        return Ok(prev);
    }
    let mut cur = NPoly::monomial(2, Scalar::from_integer(1.into()));
    for n in 2..=m {
        let a = NPoly::monomial(1, Scalar::from_integer((4 * n - 2).into()));
        let b = Scalar::from_integer(((n - 1) * (2 * n - 1) * (2 * n - 3)).into());
        let next = (&(&a * &cur) + &prev.scale(&b)).scale(&Scalar::new(1.into(), (n + 1).into()));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Connected part: the logarithm of a partition function with constant
/// term 1.
pub fn free_energy(z: &HSeries) -> Result<HSeries> {
    z.log()
}
