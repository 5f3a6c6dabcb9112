//! Arbitrary-precision float helpers over `astro-float`.

use astro_float::{BigFloat, Consts, RoundingMode};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Shared working state: precision in bits plus the constants cache.
pub(crate) struct Hp {
    pub p: usize,
    pub cc: Consts,
    pi: BigFloat,
}

impl Hp {
    pub fn new(bits: usize) -> Self {
        let mut cc = Consts::new().expect("astro-float constants");
        let pi = cc.pi(bits, RM);
        Self { p: bits, cc, pi }
    }

    pub fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    pub fn ratio(&self, num: i128, den: i128) -> BigFloat {
        let n = BigFloat::from_i128(num, self.p);
        n.div(&BigFloat::from_i128(den, self.p), self.p, RM)
    }

    pub fn pi(&self) -> &BigFloat {
        &self.pi
    }

    pub fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(self.p, RM, &mut self.cc)
    }

    pub fn cos(&mut self, x: &BigFloat) -> BigFloat {
        x.cos(self.p, RM, &mut self.cc)
    }

    pub fn sqrt(&self, x: &BigFloat) -> BigFloat {
        x.sqrt(self.p, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }
}

/// Nearest `f64`, through the decimal rendering.
pub(crate) fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.to_string().parse().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        let mut hp = Hp::new(128);
        assert_eq!(to_f64(&hp.int(0)), 0.0);
        assert_eq!(to_f64(&hp.ratio(-3, 4)), -0.75);
        let s = hp.sin(&hp.div(hp.pi(), &hp.int(6)));
        assert!((to_f64(&s) - 0.5).abs() < 1e-16);
        assert!((to_f64(&hp.sqrt(&hp.int(2))) - 2f64.sqrt()).abs() < 1e-16);
    }
}
