use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::npoly::NPoly;
use super::scalar::{int, Scalar};
use crate::{Error, Result};

/// Lowest ℏ power any series may carry; the connected closed sector sits in
/// ℏ^{-2}ℚ[N,ℏ].
pub const MIN_HBAR_EXPONENT: i32 = -2;

/// Series in ℏ with [`NPoly`] coefficients, known exactly up to and
/// including `ℏ^order`.
///
/// The truncation order travels with the value. Binary operations require
/// equal orders; a product involving negative exponents lowers the order of
/// the result to what is actually determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries {
    order: i32,
    terms: BTreeMap<i32, NPoly>,
}

impl HSeries {
    pub fn zero(order: i32) -> Self {
        Self {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: i32) -> Self {
        Self::constant(NPoly::one(), order)
    }

    pub fn constant(c: NPoly, order: i32) -> Self {
        let mut s = Self::zero(order);
        if order >= 0 && !c.is_zero() {
            s.terms.insert(0, c);
        }
        s
    }

    /// `c·ℏ^exponent`; exponents above `order` vanish.
    pub fn monomial(exponent: i32, c: NPoly, order: i32) -> Result<Self> {
        let mut s = Self::zero(order);
        s.add_term(exponent, c)?;
        Ok(s)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, NPoly)>>(terms: I, order: i32) -> Result<Self> {
        let mut s = Self::zero(order);
        for (e, c) in terms {
            s.add_term(e, c)?;
        }
        Ok(s)
    }

    pub fn add_term(&mut self, exponent: i32, c: NPoly) -> Result<()> {
        if exponent < MIN_HBAR_EXPONENT {
            return Err(Error::ExponentFloor(exponent as i64));
        }
        if exponent > self.order || c.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(exponent).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
        Ok(())
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: i32) -> NPoly {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &NPoly)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.mul_npoly(&NPoly::constant(c.clone()))
    }

    pub fn mul_npoly(&self, p: &NPoly) -> Self {
        let mut out = Self::zero(self.order);
        for (e, c) in self.terms() {
            let prod = c * p;
            if !prod.is_zero() {
                out.terms.insert(e, prod);
            }
        }
        out
    }

    /// Multiplies by ℏ^k; the truncation order moves with the shift.
    pub fn shift(&self, k: i32) -> Result<Self> {
        let mut out = Self::zero(self.order + k);
        for (e, c) in self.terms() {
            out.add_term(e + k, c.clone())?;
        }
        Ok(out)
    }

    /// Truncated product. Orders must match; when a factor has negative
    /// valuation the result is only known to a lower order, which the
    /// returned series records.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let va = self.valuation().map_or(0, |v| v.min(0));
        let vb = other.valuation().map_or(0, |v| v.min(0));
        let order = self.order + va.min(vb);
        let mut out = Self::zero(order);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let e = ea + eb;
                if e > order {
                    break;
                }
                out.add_term(e, ca * cb)?;
            }
        }
        Ok(out)
    }

    /// Re-truncates to a lower order; asking for a higher one is an error.
    pub fn truncate(&self, order: i32) -> Result<Self> {
        if order > self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: order,
            });
        }
        let mut out = Self::zero(order);
        for (e, c) in self.terms() {
            out.add_term(e, c.clone())?;
        }
        Ok(out)
    }

    fn has_negative_terms(&self) -> bool {
        self.valuation().is_some_and(|v| v < 0)
    }

    /// `exp(a)` for a series with no ℏ^0 and no negative-exponent terms.
    pub fn exp(&self) -> Result<Self> {
        if self.has_negative_terms() || !self.coeff(0).is_zero() {
            return Err(Error::ExpDomain);
        }
        let mut sum = Self::one(self.order);
        let mut power = Self::one(self.order);
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

    /// `log(a)` for a series whose ℏ^0 coefficient is exactly 1 and which
    /// has no negative-exponent terms.
    pub fn log(&self) -> Result<Self> {
        if self.has_negative_terms() || !self.coeff(0).is_one() {
            return Err(Error::NonUnitLeadingTerm(self.coeff(0).to_string()));
        }
        let x = self.sub(&Self::one(self.order))?;
        let mut sum = Self::zero(self.order);
        let mut power = Self::one(self.order);
        let mut k = 1i64;
        loop {
            power = power.mul(&x)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum = sum.add(&power.scale(&Scalar::new(sign.into(), k.into())))?;
            k += 1;
        }
        Ok(sum)
    }

    /// The NPoly obtained by setting ℏ = 1.
    pub fn at_unit_hbar(&self) -> NPoly {
        self.terms().fold(NPoly::zero(), |acc, (_, c)| &acc + c)
    }

    /// Exact coefficients after substituting `N = n`.
    pub fn eval_n(&self, n: i64) -> BTreeMap<i32, Scalar> {
        self.terms()
            .map(|(e, c)| (e, c.eval(n)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    /// Floating-point value at `N = n` and a real coupling `hbar`.
    pub fn eval_f64(&self, n: i64, hbar: f64) -> f64 {
        self.terms()
            .map(|(e, c)| super::scalar::scalar_to_f64(&c.eval(n)) * hbar.powi(e))
            .sum()
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*h^{e}")?,
            }
        }
        write!(f, " + O(h^{})", self.order + 1)
    }
}

impl Serialize for HSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: BTreeMap<String, &NPoly> =
            self.terms.iter().map(|(e, c)| (e.to_string(), c)).collect();
        let mut st = s.serialize_struct("HSeries", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// `1/k!` as a scalar.
pub(crate) fn inv_factorial(k: u32) -> Scalar {
    let f = (1..=k as i64).fold(int(1), |acc, j| acc * int(j));
    f.recip()
}
