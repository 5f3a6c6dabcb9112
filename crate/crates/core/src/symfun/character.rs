use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_rational::BigRational;
use num_traits::Zero;

use super::partition::{partitions_of, Partition};
use super::symfunc::{Monomial, SymFunc};
use crate::corealg::{int, HSeries, NPoly, Scalar};
use crate::{Error, Result};

type CharCache = RwLock<HashMap<(Partition, Partition), i64>>;

fn cache() -> &'static CharCache {
    static CACHE: OnceLock<CharCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// χ^λ(μ), the irreducible S_n character indexed by λ on cycle type μ.
pub fn sym_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch(lambda.weight(), mu.weight()));
    }
    Ok(character(lambda, mu.parts()))
}

fn character(lambda: &Partition, mu: &[u32]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return i64::from(lambda.is_empty());
    };
    let key = (lambda.clone(), Partition::new(mu.to_vec()));
    if let Some(&v) = cache().read().expect("character cache poisoned").get(&key) {
        return v;
    }
    // Murnaghan–Nakayama on the beta-set: removing a border strip of length r
    // moves one bead from b to b - r; the height is the number of beads
    // jumped over.
    let len = lambda.len();
    let beta: Vec<u32> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (len - 1 - i) as u32)
        .collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let parts = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j) as u32)
            .collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * character(&Partition::new(parts), rest);
    }
    cache()
        .write()
        .expect("character cache poisoned")
        .insert(key, total);
    total
}

/// Coefficients of `s_λ = Σ_μ χ^λ(μ)/z_μ · p_μ`.
pub fn schur_to_powersum_coeffs(lambda: &Partition) -> BTreeMap<Partition, Scalar> {
    partitions_of(lambda.weight() as i64)
        .expect("weights are nonnegative")
        .into_iter()
        .filter_map(|mu| {
            let chi = character(lambda, mu.parts());
            (chi != 0).then(|| {
                let c = BigRational::new(chi.into(), mu.z());
                (mu, c)
            })
        })
        .collect()
}

/// `s_λ` as a one-color [`SymFunc`] with ℏ-constant coefficients.
pub fn schur_to_powersum(lambda: &Partition, order: i32) -> SymFunc {
    let mut f = SymFunc::zero(1, order);
    for (mu, c) in schur_to_powersum_coeffs(lambda) {
        f.add_term(
            Monomial::single(mu),
            HSeries::constant(NPoly::constant(c), order),
        )
        .expect("same order");
    }
    f
}

/// Coefficients of `p_μ = Σ_λ χ^λ(μ) s_λ`.
pub fn powersum_to_schur(mu: &Partition) -> BTreeMap<Partition, Scalar> {
    partitions_of(mu.weight() as i64)
        .expect("weights are nonnegative")
        .into_iter()
        .filter_map(|lambda| {
            let chi = character(&lambda, mu.parts());
            (chi != 0).then(|| (lambda, int(chi)))
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}
