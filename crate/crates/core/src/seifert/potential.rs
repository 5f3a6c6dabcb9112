use num_traits::Zero;

use crate::arithgeo::SeifertData;
use crate::corealg::{int, inv_factorial, rat, HSeries, Scalar};
use crate::diagrams::{phi, psi, JacobiDiagram};
use crate::gaussmm::gauss_integrate;
use crate::symfun::SymFunc;
use crate::{Error, Result};

/// `b_{2m}` for `m = 0..=max_m` (index `m`), the coefficients of
/// `½ log(sinh(x/2)/(x/2)) = Σ b_{2m} x^{2m}`.
pub fn omega_coeffs(max_m: usize) -> Vec<Scalar> {
    // sinh(x/2)/(x/2) = Σ_k a_k u^k with u = x², a_k = 4^{-k}/(2k+1)!
    let a: Vec<Scalar> = (0..=max_m)
        .map(|k| inv_factorial(2 * k as u32 + 1) / Scalar::from_integer(num_bigint::BigInt::from(4).pow(k as u32)))
        .collect();
    // l = log a: k l_k = k a_k - Σ_{j<k} j l_j a_{k-j}
    let mut l = vec![Scalar::zero(); max_m + 1];
    for k in 1..=max_m {
        let mut acc = int(k as i64) * &a[k];
        for j in 1..k {
            acc -= int(j as i64) * &l[j] * &a[k - j];
        }
        l[k] = acc / int(k as i64);
    }
    l.into_iter().map(|x| x * rat(1, 2)).collect()
}

/// `Φ(Ψ(w_n))` in one color, truncated at `order`.
pub fn wheel_image(n: usize, order: i32) -> Result<SymFunc> {
    phi(&psi(&JacobiDiagram::wheel(n, 0)?)?, 1, order)
}

/// `Φ(Ψ(θ))`, the closed two-vertex diagram: `2(N³ - N)ℏ`.
pub fn theta_value(order: i32) -> Result<HSeries> {
    Ok(phi(&psi(&JacobiDiagram::theta())?, 0, order)?.constant_term())
}

/// The potential `log Ω^{2-n}_{x/√e} ∏_ℓ Ω_{x/(√e p_ℓ)}` and its
/// exponential, in one color.
#[derive(Clone, Debug, PartialEq)]
pub struct SeifertPotential {
    pub data: SeifertData,
    pub order: i32,
    pub log_potential: SymFunc,
    pub potential: SymFunc,
}

pub fn seifert_potential(d: &SeifertData, order: i32) -> Result<SeifertPotential> {
    if order < 0 {
        return Err(Error::OutOfRange(format!("order must be >= 0, got {order}")));
    }
    if d.e.is_zero() {
        return Err(Error::ZeroOrder);
    }
    let max_m = (order / 2) as usize;
    let b = omega_coeffs(max_m);
    let mut omega_log = SymFunc::zero(1, order);
    for (m, bm) in b.iter().enumerate().skip(1) {
        omega_log = omega_log.add(&wheel_image(2 * m, order)?.scale(bm))?;
    }
    let inv_e = d.e.recip();
    let fibers = int(2 - d.pairs.len() as i64);
    let mut log_potential = omega_log.substitute_scale_sq(0, &inv_e)?.scale(&fibers);
    for &(p, _) in &d.pairs {
        let t2 = &inv_e * rat(1, p * p);
        log_potential = log_potential.add(&omega_log.substitute_scale_sq(0, &t2)?)?;
    }
    log_potential.check_string_grading()?;
    let potential = log_potential.exp()?;
    Ok(SeifertPotential {
        data: d.clone(),
        order,
        log_potential,
        potential,
    })
}

/// `exp(φ/48 · W(θ))` with `W(θ) = 2(N³ - N)ℏ`.
pub fn theta_prefactor(d: &SeifertData, order: i32) -> Result<HSeries> {
    let arg = theta_value(order)?.scale(&(&d.phi / int(48)));
    if arg.is_zero() {
        return Ok(HSeries::one(order));
    }
    arg.exp()
}

/// Gaussian average of the potential; the prefactor-normalized part of `Z`.
pub fn lmo_seifert_integral(d: &SeifertData, order: i32) -> Result<HSeries> {
    gauss_integrate(&seifert_potential(d, order)?.potential)
}

/// Prefactor times the Gaussian average.
pub fn lmo_seifert_partition(d: &SeifertData, order: i32) -> Result<HSeries> {
    theta_prefactor(d, order)?.mul(&lmo_seifert_integral(d, order)?)
}

pub fn lmo_seifert_free_energy(d: &SeifertData, order: i32) -> Result<HSeries> {
    lmo_seifert_partition(d, order)?.log()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithgeo::seifert_data;
    use crate::corealg::NPoly;
    use num_bigint::BigInt;
    use num_traits::One;

    /// Bernoulli numbers from `Σ_{j<=n} C(n+1, j) B_j = 0`.
    fn bernoulli(n: usize) -> Vec<Scalar> {
        let mut b = vec![Scalar::one()];
        for m in 1..=n {
            let mut acc = Scalar::zero();
            let mut c = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                acc += Scalar::from_integer(c.clone()) * bj;
                c = c * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-acc / int(m as i64 + 1));
        }
        b
    }

    #[test]
    fn omega_low_terms() {
        let b = omega_coeffs(3);
        assert_eq!(b[0], int(0));
        assert_eq!(b[1], rat(1, 48));
        assert_eq!(b[2], rat(-1, 5760));
    }

    #[test]
    fn omega_bernoulli_oracle() {
        let b = omega_coeffs(8);
        let bern = bernoulli(16);
        for m in 1..=8usize {
            let fact: BigInt = (1..=2 * m).map(BigInt::from).product();
            let expect = &bern[2 * m] / Scalar::from_integer(fact * BigInt::from(4 * m));
            assert_eq!(b[m], expect, "m = {m}");
        }
    }

    #[test]
    fn theta_is_two_n_cubed_minus_n() {
        assert_eq!(theta_value(2).unwrap(), HSeries::monomial(1, NPoly::from_ints(&[0, -2, 0, 2]), 2).unwrap());
    }

    #[test]
    fn single_trivial_fiber() {
        let d = seifert_data(&[(1, 1)]).unwrap();
        let pot = seifert_potential(&d, 2).unwrap();
        let w2 = wheel_image(2, 2).unwrap().scale(&rat(1, 24));
        assert_eq!(pot.log_potential, w2);
        assert_eq!(pot.potential, SymFunc::one(1, 2).add(&w2).unwrap());
    }

    #[test]
    fn order_zero_is_one() {
        let d = seifert_data(&[(2, 1), (3, 1), (5, -4)]).unwrap();
        assert_eq!(seifert_potential(&d, 0).unwrap().potential, SymFunc::one(1, 0));
        assert_eq!(lmo_seifert_partition(&d, 0).unwrap(), HSeries::one(0));
    }

    #[test]
    fn two_fibers_drop_the_middle_factor() {
        let d = seifert_data(&[(2, 1), (3, 1)]).unwrap();
        let pot = seifert_potential(&d, 4).unwrap();
        let b = omega_coeffs(2);
        let mut expect = SymFunc::zero(1, 4);
        for (p, m) in [(2i64, 1usize), (3, 1), (2, 2), (3, 2)] {
            let t2 = (d.e.clone() * int(p * p)).recip();
            let t = num_traits::pow::Pow::pow(&t2, m as i32);
            expect = expect.add(&wheel_image(2 * m, 4).unwrap().scale(&(&b[m] * t))).unwrap();
        }
        assert_eq!(pot.log_potential, expect);
    }

    #[test]
    fn grading_audit() {
        for pairs in [vec![(2, 1)], vec![(2, 1), (3, 1), (5, -4)], vec![(2, -1), (3, 1), (7, 2)]] {
            let d = seifert_data(&pairs).unwrap();
            let pot = seifert_potential(&d, 6).unwrap();
            pot.log_potential.check_string_grading().unwrap();
        }
    }

    #[test]
    fn free_energy_leading_term() {
        let d = seifert_data(&[(2, 1), (3, 1), (5, -4)]).unwrap();
        let f = lmo_seifert_free_energy(&d, 2).unwrap();
        // ℏ¹: φ/48 · 2(N³ - N)
        let lead = NPoly::from_ints(&[0, -2, 0, 2]).scale(&(&d.phi / int(48)));
        assert_eq!(f.coeff(1), lead);
        assert!(f.coeff(0).is_zero());
    }
}
