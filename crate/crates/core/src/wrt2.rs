//! SU(2) Witten–Reshetikhin–Turaev invariants of lens spaces from the
//! `SL(2, ℤ)` representation on the level-`k` chamber, in arbitrary
//! precision floating point.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arithgeo::{rademacher_phi, Sl2z};
use crate::corealg::Scalar;
use crate::hp::{to_f64, Hp};
use crate::par;
use crate::{Error, Result};

pub const DEFAULT_PRECISION: usize = 128;

/// Rank-one data: `r = 1`, `d = 3`, `y = 2`, `|Δ₊| = 1`, `l = k + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDataSU2 {
    pub rank: u32,
    pub dimension: u32,
    pub dual_coxeter: u32,
    pub positive_roots: u32,
    pub level: u32,
    pub l: u32,
}

impl GroupDataSU2 {
    pub fn new(level: u32) -> Result<Self> {
        if level < 1 {
            return Err(Error::OutOfRange("level k must be >= 1".into()));
        }
        Ok(Self {
            rank: 1,
            dimension: 3,
            dual_coxeter: 2,
            positive_roots: 1,
            level,
            l: level + 2,
        })
    }

    /// The chamber `ℱ_l = {1, …, l-1}`; `ρ` is 1.
    pub fn chamber(&self) -> std::ops::RangeInclusive<i64> {
        1..=self.l as i64 - 1
    }
}

/// Completion of `(p, q)` to an `SL(2, ℤ)` matrix with minimal `|r|`.
pub fn complete_sl2z(p: i64, q: i64) -> Result<Sl2z> {
    if q == 0 {
        return Err(Error::ZeroLowerLeft);
    }
    Sl2z::complete(p, q)
}

#[derive(Clone)]
struct HpComplex {
    re: BigFloat,
    im: BigFloat,
}

impl HpComplex {
    fn zero(hp: &Hp) -> Self {
        Self {
            re: hp.int(0),
            im: hp.int(0),
        }
    }

    /// `exp(iπ·num/den)` with the angle reduced exactly mod 2.
    fn pi_phase(hp: &mut Hp, num: &BigInt, den: &BigInt) -> Self {
        let (mut num, mut den) = (num.clone(), den.clone());
        if den < BigInt::zero() {
            num = -num;
            den = -den;
        }
        let two_den = &den * 2;
        let num = num.mod_floor(&two_den);
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() { (num, den) } else { (&num / &g, &den / &g) };
        let as_bf = |x: &BigInt| {
            x.to_i128()
                .map(|v| BigFloat::from_i128(v, hp.p))
                .expect("phase fits in i128 after reduction")
        };
        let x = hp.mul(hp.pi(), &hp.div(&as_bf(&num), &as_bf(&den)));
        Self {
            re: hp.cos(&x),
            im: hp.sin(&x),
        }
    }

    fn add(&self, o: &Self, hp: &Hp) -> Self {
        Self {
            re: hp.add(&self.re, &o.re),
            im: hp.add(&self.im, &o.im),
        }
    }

    fn sub(&self, o: &Self, hp: &Hp) -> Self {
        Self {
            re: hp.sub(&self.re, &o.re),
            im: hp.sub(&self.im, &o.im),
        }
    }

    fn mul(&self, o: &Self, hp: &Hp) -> Self {
        Self {
            re: hp.sub(&hp.mul(&self.re, &o.re), &hp.mul(&self.im, &o.im)),
            im: hp.add(&hp.mul(&self.re, &o.im), &hp.mul(&self.im, &o.re)),
        }
    }

    fn scale(&self, c: &BigFloat, hp: &Hp) -> Self {
        Self {
            re: hp.mul(&self.re, c),
            im: hp.mul(&self.im, c),
        }
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

fn check_chamber(l: i64, a: i64) -> Result<()> {
    if !(1..l).contains(&a) {
        return Err(Error::OutOfRange(format!("index {a} outside the chamber 1..{}", l - 1)));
    }
    Ok(())
}

fn u_element_hp(u: &Sl2z, a: i64, b: i64, l: i64, hp: &mut Hp) -> Result<HpComplex> {
    if u.q == 0 {
        return Err(Error::ZeroLowerLeft);
    }
    check_chamber(l, a)?;
    check_chamber(l, b)?;
    let phi = rademacher_phi(u)?;
    let (p, q, s) = (BigInt::from(u.p), BigInt::from(u.q), BigInt::from(u.s));
    let (a, b, lb) = (BigInt::from(a), BigInt::from(b), BigInt::from(l));
    let den = &lb * &q * 2;
    let mut sum = HpComplex::zero(hp);
    for j in 0..u.q.abs() {
        for w in [1i64, -1] {
            let m = &lb * 2 * j + &b * w;
            let num = &p * &a * &a - &a * &m * 2 + &s * &m * &m;
            let term = HpComplex::pi_phase(hp, &num, &den);
            sum = if w == 1 { sum.add(&term, hp) } else { sum.sub(&term, hp) };
        }
    }
    // [i·sign q]/√(2l|q|) · exp(-iπΦ/4)
    let framing = -phi / Scalar::from_integer(4.into());
    let rot = HpComplex::pi_phase(hp, framing.numer(), framing.denom());
    let norm = hp.div(&hp.int(1), &hp.sqrt(&hp.int(2 * l * u.q.abs())));
    let i_sign = HpComplex {
        re: hp.int(0),
        im: hp.int(u.q.signum()),
    };
    Ok(i_sign.mul(&rot, hp).mul(&sum, hp).scale(&norm, hp))
}

/// `𝒰_{ab}` for SU(2) at `l = k + 2`, chamber indices `1 ≤ a, b ≤ l-1`.
pub fn u_matrix_element_su2(u: &Sl2z, a: i64, b: i64, l: i64, bits: usize) -> Result<Complex64> {
    let mut hp = Hp::new(bits.max(64));
    Ok(u_element_hp(u, a, b, l, &mut hp)?.to_c64())
}

/// Full chamber matrix, rows and columns indexed by `1..l`.
pub fn u_matrix_su2(u: &Sl2z, l: i64, bits: usize) -> Result<Vec<Vec<Complex64>>> {
    let n = (l - 1).max(0) as usize;
    let rows = par::map_indexed(n, |i| {
        let mut hp = Hp::new(bits.max(64));
        (0..n)
            .map(|j| Ok(u_element_hp(u, i as i64 + 1, j as i64 + 1, l, &mut hp)?.to_c64()))
            .collect::<Result<Vec<_>>>()
    });
    rows.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WrtValue {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    /// `φ_fr` in radians.
    pub framing_phase: f64,
}

/// `Z(L(p, q))` with the completion `u` of the column `(p, q)`.
pub fn wrt_surgery_su2(u: &Sl2z, k: u32, bits: usize) -> Result<WrtValue> {
    let g = GroupDataSU2::new(k)?;
    let l = g.l as i64;
    let chamber: Vec<i64> = g.chamber().collect();
    let terms = par::map_slice(&chamber, |&a| -> Result<(BigFloat, HpComplex, Hp)> {
        let mut hp = Hp::new(bits.max(64));
        let x = hp.div(&hp.mul(hp.pi(), &hp.int(a)), &hp.int(l));
        // Z_a(unknot) = S_{1a} = √(2/l) sin(πa/l)
        let sin = hp.sin(&x);
        let s1a = hp.mul(&hp.sqrt(&hp.div(&hp.int(2), &hp.int(l))), &sin);
        let ua1 = u_element_hp(u, a, 1, l, &mut hp)?;
        Ok((s1a, ua1, hp))
    });
    let mut hp = Hp::new(bits.max(64));
    let mut sum = HpComplex::zero(&hp);
    for t in terms {
        let (s1a, ua1, _) = t?;
        sum = sum.add(&ua1.scale(&s1a, &hp), &hp);
    }
    // φ_fr = (π k d / 12 l)(Φ(U) - 3σ), σ = sign(p/q)
    let sigma = (u.p.signum() * u.q.signum()) as i64;
    let phi = rademacher_phi(u)?;
    let fr = (phi - Scalar::from_integer((3 * sigma).into()))
        * Scalar::new((3 * k as i64).into(), (12 * l).into());
    let rot = HpComplex::pi_phase(&mut hp, fr.numer(), fr.denom());
    let z = rot.mul(&sum, &hp).to_c64();
    let framing_phase = std::f64::consts::PI * crate::corealg::scalar_to_f64(&fr);
    Ok(WrtValue {
        re: z.re,
        im: z.im,
        abs: z.norm(),
        framing_phase,
    })
}

/// `Z(L(p, q))` at level `k`, using the minimal completion of `(p, q)`.
pub fn wrt_lens_su2(p: i64, q: i64, k: u32, bits: usize) -> Result<WrtValue> {
    if p < 1 {
        return Err(Error::OutOfRange(format!("lens space needs p >= 1, got {p}")));
    }
    wrt_surgery_su2(&complete_sl2z(p, q)?, k, bits)
}

/// `Z(S³) = S_{11} = √(2/l) sin(π/l)`.
pub fn wrt_sphere_su2(k: u32) -> Result<f64> {
    let l = GroupDataSU2::new(k)?.l as f64;
    Ok((2.0 / l).sqrt() * (std::f64::consts::PI / l).sin())
}
