use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{int, parse_scalar, scalar_to_f64, Scalar};

/// Polynomial in the formal symbol `N` with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NPoly {
    coeffs: BTreeMap<u32, Scalar>,
}

impl NPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(0, c)
    }

    /// The symbol `N` itself.
    pub fn n() -> Self {
        Self::monomial(1, Scalar::one())
    }

    pub fn monomial(degree: u32, c: Scalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Self { coeffs }
    }

    /// Builds from `(degree, coefficient)` pairs, summing repeated degrees.
    pub fn from_terms<I: IntoIterator<Item = (u32, Scalar)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    /// Integer-coefficient constructor, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(d, &c)| (d as u32, int(c))))
    }

    pub fn add_term(&mut self, degree: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(degree).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u32) -> Scalar {
        self.coeffs.get(&degree).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> + '_ {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    /// Exact value at `N = n`.
    pub fn eval(&self, n: i64) -> Scalar {
        let n = int(n);
        // Horner from the top degree down.
        let Some(top) = self.degree() else {
            return Scalar::zero();
        };
        let mut acc = Scalar::zero();
        for d in (0..=top).rev() {
            acc = acc * &n + self.coeff(d);
        }
        acc
    }

    pub fn eval_f64(&self, n: f64) -> f64 {
        self.terms().map(|(d, c)| scalar_to_f64(c) * n.powi(d as i32)).sum()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&d, v)| (d, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl From<Scalar> for NPoly {
    fn from(c: Scalar) -> Self {
        Self::constant(c)
    }
}

impl Add<&NPoly> for &NPoly {
    type Output = NPoly;
    fn add(self, rhs: &NPoly) -> NPoly {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Sub<&NPoly> for &NPoly {
    type Output = NPoly;
    fn sub(self, rhs: &NPoly) -> NPoly {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, -c);
        }
        out
    }
}

impl Mul<&NPoly> for &NPoly {
    type Output = NPoly;
    fn mul(self, rhs: &NPoly) -> NPoly {
        let mut out = NPoly::zero();
        for (da, ca) in self.terms() {
            for (db, cb) in rhs.terms() {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

impl Neg for &NPoly {
    type Output = NPoly;
    fn neg(self) -> NPoly {
        NPoly {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<NPoly> for NPoly {
            type Output = NPoly;
            fn $m(self, rhs: NPoly) -> NPoly { (&self).$m(&rhs) }
        }
        impl $tr<&NPoly> for NPoly {
            type Output = NPoly;
            fn $m(self, rhs: &NPoly) -> NPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for NPoly {
    type Output = NPoly;
    fn neg(self) -> NPoly {
        -&self
    }
}

impl fmt::Display for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_coeff = !a.is_one() || *d == 0;
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match d {
                0 => {}
                1 if show_coeff => write!(f, "*N")?,
                1 => write!(f, "N")?,
                _ if show_coeff => write!(f, "*N^{d}")?,
                _ => write!(f, "N^{d}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for NPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.coeffs.iter().map(|(d, c)| (d.to_string(), c.to_string())))
    }
}

impl<'de> Deserialize<'de> for NPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut p = NPoly::zero();
        for (k, v) in raw {
            let deg: u32 = k.parse().map_err(D::Error::custom)?;
            let c = parse_scalar(&v).map_err(D::Error::custom)?;
            p.add_term(deg, c);
        }
        Ok(p)
    }
}
