use std::collections::BTreeMap;

use num_traits::One;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use super::partition::Partition;
use crate::corealg::{HSeries, NPoly, Scalar};
use crate::{Error, Result};

pub type Color = u8;

/// Power-sum monomial `p_{λ_1} ⊗ … ⊗ p_{λ_r}`, one partition per color.
/// `p_0` never appears: such factors are folded into the coefficient as
/// powers of `N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Monomial(Vec<Partition>);

impl Monomial {
    pub fn new(parts: Vec<Partition>) -> Self {
        Self(parts)
    }

    /// The constant monomial in `colors` colors.
    pub fn unit(colors: usize) -> Self {
        Self(vec![Partition::empty(); colors])
    }

    pub fn single(lambda: Partition) -> Self {
        Self(vec![lambda])
    }

    pub fn colors(&self) -> usize {
        self.0.len()
    }

    pub fn part(&self, color: Color) -> &Partition {
        &self.0[color as usize]
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.0
    }

    /// Total weight across colors.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(Partition::weight).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(Partition::is_empty)
    }

    fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.union(b)).collect())
    }
}

/// Finite ℚ[N]((ℏ))-linear combination of power-sum monomials in `colors`
/// colors, truncated at a common ℏ order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    colors: usize,
    order: i32,
    terms: BTreeMap<Monomial, HSeries>,
}

impl SymFunc {
    pub fn zero(colors: usize, order: i32) -> Self {
        Self {
            colors,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(colors: usize, order: i32) -> Self {
        let mut f = Self::zero(colors, order);
        f.terms.insert(Monomial::unit(colors), HSeries::one(order));
        f
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &HSeries)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> HSeries {
        self.terms.get(m).cloned().unwrap_or_else(|| HSeries::zero(self.order))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_color(&self, color: Color) -> Result<()> {
        if color as usize >= self.colors {
            return Err(Error::UnknownColor {
                color,
                colors: self.colors,
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.colors != other.colors {
            return Err(Error::Invalid(format!(
                "color counts differ: {} vs {}",
                self.colors, other.colors
            )));
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add_term(&mut self, m: Monomial, coeff: HSeries) -> Result<()> {
        if m.colors() != self.colors {
            return Err(Error::Invalid(format!(
                "monomial has {} colors, expected {}",
                m.colors(),
                self.colors
            )));
        }
        if coeff.order() != self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: coeff.order(),
            });
        }
        let sum = match self.terms.remove(&m) {
            Some(existing) => existing.add(&coeff)?,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
        Ok(())
    }

    /// `coeff · ∏ p_{parts[i]}` in one color; zero parts become factors of `N`.
    pub fn power_sum_product(
        colors: usize,
        color: Color,
        parts: &[u32],
        coeff: HSeries,
    ) -> Result<Self> {
        let mut f = Self::zero(colors, coeff.order());
        f.check_color(color)?;
        let zeros = parts.iter().filter(|&&p| p == 0).count() as u32;
        let mut m = Monomial::unit(colors);
        m.0[color as usize] = Partition::new(parts.to_vec());
        f.add_term(m, coeff.mul_npoly(&NPoly::n().pow(zeros)))?;
        Ok(f)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_coeffs(|s| s.scale(c))
    }

    pub fn mul_series(&self, s: &HSeries) -> Result<Self> {
        let mut out = Self::zero(self.colors, self.order);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.mul(s)?)?;
        }
        Ok(out)
    }

    fn map_coeffs(&self, f: impl Fn(&HSeries) -> HSeries) -> Self {
        Self {
            colors: self.colors,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.colors, self.order);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let c = ca.mul(cb)?;
                if !c.is_zero() {
                    out.add_term(ma.mul(mb), c)?;
                }
            }
        }
        Ok(out)
    }

    /// Rescales the variables of one color, `x → t·x`: the coefficient of a
    /// monomial whose partition in that color has weight `w` gains `t^w`.
    pub fn substitute_scale(&self, color: Color, factor: &Scalar) -> Result<Self> {
        self.check_color(color)?;
        let mut out = Self::zero(self.colors, self.order);
        for (m, c) in self.terms() {
            let w = m.part(color).weight() as i32;
            out.add_term(m.clone(), c.scale(&num_traits::pow::Pow::pow(factor, w)))?;
        }
        Ok(out)
    }

    /// Rescaling by a factor known only through its square `t2 = t²`:
    /// the coefficient of a monomial of even weight `w` in that color gains
    /// `t2^{w/2}`. Odd weights are rejected.
    pub fn substitute_scale_sq(&self, color: Color, t2: &Scalar) -> Result<Self> {
        self.check_color(color)?;
        let mut out = Self::zero(self.colors, self.order);
        for (m, c) in self.terms() {
            let w = m.part(color).weight() as i32;
            if w % 2 != 0 {
                return Err(Error::Invalid(format!(
                    "square-root rescaling of odd weight {w}"
                )));
            }
            out.add_term(m.clone(), c.scale(&num_traits::pow::Pow::pow(t2, w / 2)))?;
        }
        Ok(out)
    }

    /// Truncated exponential. Every coefficient must have strictly positive
    /// ℏ valuation so the series terminates at the truncation order.
    pub fn exp(&self) -> Result<Self> {
        if self.terms.values().any(|c| c.valuation().is_some_and(|v| v < 1)) {
            return Err(Error::ExpDomain);
        }
        let mut sum = Self::one(self.colors, self.order);
        let mut power = Self::one(self.colors, self.order);
        let mut k = 1i64;
        loop {
            power = power.mul(self)?.scale(&Scalar::new(1.into(), k.into()));
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
            k += 1;
        }
        Ok(sum)
    }

    /// Membership in Str^p_r: the coefficient of a monomial of total weight
    /// `w` lies in ℏ^{w-2}ℚ[N,ℏ], and for `r > 0` there is no constant term.
    pub fn check_string_grading(&self) -> Result<()> {
        for (m, c) in self.terms() {
            if self.colors > 0 && m.is_unit() {
                return Err(Error::Grading(format!("constant term {c}")));
            }
            let floor = m.weight() as i32 - 2;
            if let Some(v) = c.valuation() {
                if v < floor {
                    return Err(Error::Grading(format!(
                        "monomial {:?} of weight {} has hbar valuation {v} < {floor}",
                        m.partitions(),
                        m.weight()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> HSeries {
        self.coeff(&Monomial::unit(self.colors))
    }
}

impl Serialize for SymFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a BTreeMap<Monomial, HSeries>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                #[derive(Serialize)]
                struct Term<'a> {
                    monomial: &'a Monomial,
                    coeff: &'a HSeries,
                }
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (monomial, coeff) in self.0 {
                    seq.serialize_element(&Term { monomial, coeff })?;
                }
                seq.end()
            }
        }
        let mut st = s.serialize_struct("SymFunc", 3)?;
        st.serialize_field("colors", &self.colors)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("terms", &Terms(&self.terms))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::{int, rat};
    use proptest::prelude::*;

    fn p(colors: usize, color: Color, parts: &[u32], order: i32) -> SymFunc {
        SymFunc::power_sum_product(colors, color, parts, HSeries::one(order)).unwrap()
    }

    #[test]
    fn substitute_scale_examples() {
        let f = p(1, 0, &[2], 4).substitute_scale(0, &rat(1, 3)).unwrap();
        assert_eq!(f, p(1, 0, &[2], 4).scale(&rat(1, 9)));
        let g = p(1, 0, &[1, 1, 3], 4);
        let t = rat(2, 5);
        let scaled = g.substitute_scale(0, &t).unwrap();
        assert_eq!(scaled, g.scale(&num_traits::pow::Pow::pow(&t, 5i32)));
        assert_eq!(g.substitute_scale(0, &int(1)).unwrap(), g);
        assert_eq!(
            g.substitute_scale(1, &t).unwrap_err(),
            Error::UnknownColor { color: 1, colors: 1 }
        );
    }

    #[test]
    fn multiplication_merges_parts() {
        let p1 = p(1, 0, &[1], 2);
        assert_eq!(p1.mul(&p1).unwrap(), p(1, 0, &[1, 1], 2));
    }

    #[test]
    fn p0_becomes_n() {
        let f = p(1, 0, &[0, 2], 2);
        let m = Monomial::single(Partition::new(vec![2]));
        assert_eq!(f.coeff(&m), HSeries::constant(NPoly::n(), 2));
    }

    #[test]
    fn two_color_monomials_stay_separate() {
        let a = p(2, 0, &[2], 2);
        let b = p(2, 1, &[1], 2);
        let ab = a.mul(&b).unwrap();
        let m = Monomial::new(vec![Partition::new(vec![2]), Partition::new(vec![1])]);
        assert_eq!(ab.coeff(&m), HSeries::one(2));
    }

    #[test]
    fn grading_check() {
        let coeff = HSeries::monomial(2, NPoly::one(), 4).unwrap();
        let ok = SymFunc::power_sum_product(1, 0, &[2, 2], coeff).unwrap();
        assert!(ok.check_string_grading().is_ok());
        let low = HSeries::monomial(1, NPoly::one(), 4).unwrap();
        let bad = SymFunc::power_sum_product(1, 0, &[2, 2], low).unwrap();
        assert!(matches!(bad.check_string_grading(), Err(Error::Grading(_))));
        assert!(SymFunc::one(1, 2).check_string_grading().is_err());
        // r = 0 allows constants down to ℏ^{-2}.
        let mut closed = SymFunc::zero(0, 2);
        closed
            .add_term(Monomial::unit(0), HSeries::monomial(-2, NPoly::n(), 2).unwrap())
            .unwrap();
        assert!(closed.check_string_grading().is_ok());
    }

    #[test]
    fn exp_requires_positive_valuation() {
        assert_eq!(p(1, 0, &[2], 4).exp().unwrap_err(), Error::ExpDomain);
        let x = SymFunc::power_sum_product(1, 0, &[2], HSeries::monomial(2, NPoly::one(), 4).unwrap())
            .unwrap();
        let e = x.exp().unwrap();
        // 1 + x + x²/2
        let expect = SymFunc::one(1, 4)
            .add(&x)
            .unwrap()
            .add(&x.mul(&x).unwrap().scale(&rat(1, 2)))
            .unwrap();
        assert_eq!(e, expect);
    }

    proptest! {
        #[test]
        fn substitute_scale_multiplicative(a in 1i64..6, b in 1i64..6, parts in proptest::collection::vec(1u32..4, 0..4)) {
            let f = p(1, 0, &parts, 3);
            let s = rat(a, 7);
            let t = rat(b, 3);
            let lhs = f.substitute_scale(0, &(&s * &t)).unwrap();
            let rhs = f.substitute_scale(0, &s).unwrap().substitute_scale(0, &t).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
