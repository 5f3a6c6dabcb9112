use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Displays as `num/den`, or `num` when the denominator is 1.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num/den`; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Invalid(s.to_string()))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Invalid(s.to_string()))?;
            if d.is_zero() {
                return Err(Error::Invalid(format!("zero denominator in {s}")));
            }
            Scalar::new(n, d)
        }
        None => Scalar::from_integer(s.parse().map_err(|_| Error::Invalid(s.to_string()))?),
    };
    Ok(parsed)
}

/// Nearest double; handles numerators and denominators beyond `f64` range.
pub fn scalar_to_f64(x: &Scalar) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let (n, d) = (x.numer(), x.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
    let n = (n.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (d >> shift).to_f64().unwrap_or(f64::INFINITY);
    let v = n / d;
    if x.is_negative() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_display() {
        assert_eq!(rat(2, -4).to_string(), "-1/2");
        assert_eq!(rat(6, 3).to_string(), "2");
        assert_eq!(parse_scalar("-3/9").unwrap(), rat(-1, 3));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn huge_to_f64() {
        let big = Scalar::from_integer(BigInt::from(10).pow(400));
        let x = &big / (&big * int(3));
        assert!((scalar_to_f64(&x) - 1.0 / 3.0).abs() < 1e-15);
    }
}
