//! Dedekind sums, the Rademacher function, Seifert data and the signature
//! of a linking matrix, all in exact arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::corealg::{int, rat, Scalar};
use crate::hp::{to_f64, Hp};
use crate::{Error, Result};

fn check_dedekind_args(p: i64, q: i64) -> Result<()> {
    if q < 1 {
        return Err(Error::OutOfRange(format!("Dedekind sum needs q >= 1, got {q}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p, q));
    }
    Ok(())
}

/// `s(p, q) = Σ_{n=1}^{q-1} ((n/q))((np/q))`, evaluated as
/// `Σ n·(np mod q) / q² - (q-1)/4`. Linear in `q`.
pub fn dedekind_sum_sawtooth(p: i64, q: i64) -> Result<Scalar> {
    check_dedekind_args(p, q)?;
    let (p, q) = (p.rem_euclid(q) as i128, q as i128);
    let mut acc: i128 = 0;
    let mut r: i128 = 0;
    for n in 1..q {
        r = (r + p) % q;
        acc += n * r;
    }
    Ok(Scalar::new(acc.into(), (q * q).into()) - Scalar::new((q - 1).into(), 4.into()))
}

/// Same value through reciprocity,
/// `s(p,q) + s(q,p) = -1/4 + (p/q + q/p + 1/(pq))/12`, in `O(log q)` steps.
pub fn dedekind_sum(p: i64, q: i64) -> Result<Scalar> {
    check_dedekind_args(p, q)?;
    let mut total = Scalar::zero();
    let mut sign = Scalar::one();
    let (mut a, mut b) = (BigInt::from(p).mod_floor(&BigInt::from(q)), BigInt::from(q));
    while !a.is_zero() {
        // s(a, b) = -s(b mod a, a) - 1/4 + (a/b + b/a + 1/(ab))/12
        let ab = Scalar::new(a.clone(), b.clone());
        let ba = Scalar::new(b.clone(), a.clone());
        let inv = Scalar::new(BigInt::one(), &a * &b);
        let term = (ab + ba + inv) / int(12) - rat(1, 4);
        total += &sign * term;
        sign = -sign;
        let next = b.mod_floor(&a);
        b = a;
        a = next;
    }
    Ok(total)
}

/// `(1/4q) Σ_{n=1}^{q-1} cot(πn/q) cot(πnp/q)` in `bits`-bit floating point.
pub fn dedekind_sum_cot(p: i64, q: i64, bits: usize) -> Result<f64> {
    check_dedekind_args(p, q)?;
    let mut hp = Hp::new(bits.max(64));
    let p = p.rem_euclid(q);
    let cot = |hp: &mut Hp, k: i64| {
        // argument reduced to (0, π)
        let x = hp.mul(hp.pi(), &hp.ratio(k.rem_euclid(q) as i128, q as i128));
        let (c, s) = (hp.cos(&x), hp.sin(&x));
        hp.div(&c, &s)
    };
    let mut acc = hp.int(0);
    for n in 1..q {
        let a = cot(&mut hp, n);
        let b = cot(&mut hp, ((n as i128 * p as i128) % q as i128) as i64);
        acc = hp.add(&acc, &hp.mul(&a, &b));
    }
    Ok(to_f64(&hp.div(&acc, &hp.int(4 * q))))
}

/// `[[p, r], [q, s]]` with `ps - qr = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2z {
    pub p: i64,
    pub r: i64,
    pub q: i64,
    pub s: i64,
}

impl Sl2z {
    pub fn new(p: i64, r: i64, q: i64, s: i64) -> Result<Self> {
        let det = p as i128 * s as i128 - q as i128 * r as i128;
        if det != 1 {
            return Err(Error::NotSl2z(format!("[[{p},{r}],[{q},{s}]] has determinant {det}")));
        }
        Ok(Self { p, r, q, s })
    }

    /// Completes a coprime first column `(p, q)` with the `r` of least
    /// absolute value (ties to the positive one).
    pub fn complete(p: i64, q: i64) -> Result<Self> {
        let g = p.extended_gcd(&q);
        if g.gcd.abs() != 1 {
            return Err(Error::NotCoprime(p, q));
        }
        // p·x + q·y = ±1  ⇒  s = x, r = -y (up to sign)
        let (mut s, mut r) = (g.x * g.gcd, -g.y * g.gcd);
        if p != 0 {
            // r → r + k p, s → s + k q keeps the determinant
            let k = (-(r as f64) / p as f64).round() as i64;
            let candidates = [k - 1, k, k + 1];
            let best = candidates
                .iter()
                .map(|&k| (r + k * p, s + k * q))
                .min_by_key(|&(r, _)| (r.abs(), r < 0))
                .expect("non-empty");
            r = best.0;
            s = best.1;
        }
        Self::new(p, r, q, s)
    }

    pub fn neg(&self) -> Self {
        Self {
            p: -self.p,
            r: -self.r,
            q: -self.q,
            s: -self.s,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            p: self.p * o.p + self.r * o.q,
            r: self.p * o.r + self.r * o.s,
            q: self.q * o.p + self.s * o.q,
            s: self.q * o.r + self.s * o.s,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            p: self.s,
            r: -self.r,
            q: -self.q,
            s: self.p,
        }
    }
}

/// `Φ(U) = (p + s)/q - 12 s(p, |q|) sign(q)`; only `q ≠ 0`.
pub fn rademacher_phi(u: &Sl2z) -> Result<Scalar> {
    if u.q == 0 {
        return Err(Error::ZeroLowerLeft);
    }
    let q = u.q.abs();
    let sign = int(u.q.signum());
    Ok(Scalar::new((u.p + u.s).into(), u.q.into()) - int(12) * dedekind_sum(u.p, q)? * sign)
}

/// Seifert invariants `(p_j, q_j)` with the derived `P`, `H`, `e = H/P`
/// and `φ = e - 3 sign(e) - 12 Σ s(q_j, p_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub pairs: Vec<(i64, i64)>,
    pub p_total: BigInt,
    pub h: BigInt,
    pub e: Scalar,
    pub phi: Scalar,
}

pub fn seifert_data(pairs: &[(i64, i64)]) -> Result<SeifertData> {
    if pairs.is_empty() {
        return Err(Error::Invalid("no Seifert pairs".into()));
    }
    for &(p, q) in pairs {
        if p < 1 {
            return Err(Error::OutOfRange(format!("p_j must be positive, got {p}")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime(p, q));
        }
    }
    for (i, &(a, _)) in pairs.iter().enumerate() {
        for &(b, _) in &pairs[i + 1..] {
            if a.gcd(&b) != 1 {
                return Err(Error::NotCoprime(a, b));
            }
        }
    }
    let p_total: BigInt = pairs.iter().map(|&(p, _)| BigInt::from(p)).product();
    let e: Scalar = pairs.iter().map(|&(p, q)| rat(q, p)).sum();
    let h = (&e * Scalar::from_integer(p_total.clone())).to_integer();
    if h.is_zero() {
        return Err(Error::ZeroOrder);
    }
    let mut dedekind = Scalar::zero();
    for &(p, q) in pairs {
        dedekind += dedekind_sum(q, p)?;
    }
    let phi = &e - int(3) * int(if e.is_positive() { 1 } else { -1 }) - int(12) * dedekind;
    Ok(SeifertData {
        pairs: pairs.to_vec(),
        p_total,
        h,
        e,
        phi,
    })
}

impl Serialize for SeifertData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SeifertData", 5)?;
        let pairs: Vec<String> = self.pairs.iter().map(|(p, q)| format!("{p}/{q}")).collect();
        st.serialize_field("pairs", &pairs)?;
        st.serialize_field("P", &self.p_total.to_string())?;
        st.serialize_field("H", &self.h.to_string())?;
        st.serialize_field("e", &self.e.to_string())?;
        st.serialize_field("phi", &self.phi.to_string())?;
        st.end()
    }
}

/// Signature of a symmetric integer matrix by exact congruence
/// diagonalization over ℚ.
pub fn linking_signature(matrix: &[Vec<i64>]) -> Result<i64> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::Invalid("linking matrix must be square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if matrix[i][j] != matrix[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut a: Vec<Vec<Scalar>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| int(x)).collect())
        .collect();
    let mut sig = 0i64;
    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero()) {
            swap_sym(&mut a, k, i);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && !a[i][j].is_zero())
        {
            // row/col j added to i makes a[i][i] = 2 a[i][j] ≠ 0
            for c in 0..n {
                let v = a[j][c].clone();
                a[i][c] += v;
            }
            for r in 0..n {
                let v = a[r][j].clone();
                a[r][i] += v;
            }
            swap_sym(&mut a, k, i);
        } else {
            break;
        }
        let pivot = a[k][k].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            let f = &a[i][k] / &pivot;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
    }
    Ok(sig)
}

fn swap_sym(a: &mut [Vec<Scalar>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_sum(1, 2).unwrap(), int(0));
        assert_eq!(dedekind_sum(1, 3).unwrap(), rat(1, 18));
        assert_eq!(dedekind_sum(2, 3).unwrap(), rat(-1, 18));
        assert_eq!(dedekind_sum(3, 5).unwrap(), int(0));
        assert_eq!(dedekind_sum(-4, 5).unwrap(), rat(1, 5));
        assert_eq!(dedekind_sum(0, 1).unwrap(), int(0));
        assert!(dedekind_sum(2, 4).is_err());
        assert!(dedekind_sum(1, 0).is_err());
    }

    #[test]
    fn fast_matches_sawtooth() {
        for q in 1..60 {
            for p in -70..70 {
                if p.gcd(&q) == 1 {
                    assert_eq!(dedekind_sum(p, q).unwrap(), dedekind_sum_sawtooth(p, q).unwrap(), "s({p},{q})");
                }
            }
        }
    }

    #[test]
    fn cot_form() {
        for (p, q) in [(1, 3), (3, 5), (7, 11), (5, 12), (-4, 5)] {
            let exact = crate::corealg::scalar_to_f64(&dedekind_sum_sawtooth(p, q).unwrap());
            assert!((dedekind_sum_cot(p, q, 128).unwrap() - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn rademacher_examples() {
        assert_eq!(rademacher_phi(&Sl2z::new(0, -1, 1, 0).unwrap()).unwrap(), int(0));
        assert_eq!(rademacher_phi(&Sl2z::new(1, 0, 1, 1).unwrap()).unwrap(), int(2));
        assert_eq!(rademacher_phi(&Sl2z::new(2, 1, 1, 1).unwrap()).unwrap(), int(3));
        let u = Sl2z::new(5, 2, 2, 1).unwrap();
        assert_eq!(rademacher_phi(&u).unwrap(), rademacher_phi(&u.neg()).unwrap());
        assert_eq!(rademacher_phi(&Sl2z::new(1, 1, 0, 1).unwrap()), Err(Error::ZeroLowerLeft));
        assert!(Sl2z::new(1, 1, 1, 1).is_err());
    }

    #[test]
    fn completion() {
        assert_eq!(Sl2z::complete(5, 2).unwrap(), Sl2z::new(5, 2, 2, 1).unwrap());
        for p in -9..10i64 {
            for q in -9..10i64 {
                if p.gcd(&q) == 1 {
                    let u = Sl2z::complete(p, q).unwrap();
                    assert_eq!((u.p, u.q), (p, q));
                    if p != 0 {
                        assert!(2 * u.r.abs() <= p.abs(), "{u:?}");
                    }
                }
            }
        }
        assert!(Sl2z::complete(4, 2).is_err());
    }

    #[test]
    fn seifert_examples() {
        let d = seifert_data(&[(2, 1), (3, 1), (5, -4)]).unwrap();
        assert_eq!(d.p_total, BigInt::from(30));
        assert_eq!(d.h, BigInt::from(1));
        assert_eq!(d.e, rat(1, 30));
        assert_eq!(d.phi, rat(-181, 30));
        let d = seifert_data(&[(2, 1)]).unwrap();
        assert_eq!((d.h.clone(), d.e.clone()), (BigInt::from(1), rat(1, 2)));
        let d = seifert_data(&[(2, 1), (3, 1), (5, 1)]).unwrap();
        assert_eq!((d.h, d.e), (BigInt::from(31), rat(31, 30)));
        assert_eq!(seifert_data(&[(2, 1), (4, 1)]), Err(Error::NotCoprime(2, 4)));
        assert_eq!(seifert_data(&[(2, 1), (2, -1)]), Err(Error::NotCoprime(2, 2)));
        assert_eq!(seifert_data(&[(4, 2)]), Err(Error::NotCoprime(4, 2)));
    }

    #[test]
    fn order_sign_and_zero() {
        assert_eq!(seifert_data(&[(2, 1), (3, 1), (5, 1), (1, -1)]).unwrap().h, BigInt::from(1));
        assert_eq!(seifert_data(&[(2, 1), (1, 0), (3, -1), (5, -1)]).unwrap().h, BigInt::from(-1));
        assert_eq!(seifert_data(&[(1, 1), (1, -1)]).unwrap_err(), Error::ZeroOrder);
        assert_eq!(seifert_data(&[(0, 1)]).unwrap_err().code(), "out_of_range");
    }

    #[test]
    fn signatures() {
        assert_eq!(linking_signature(&[vec![1]]).unwrap(), 1);
        assert_eq!(linking_signature(&[vec![0, 1], vec![1, 0]]).unwrap(), 0);
        let d = vec![vec![2, 0, 0], vec![0, -3, 0], vec![0, 0, 5]];
        assert_eq!(linking_signature(&d).unwrap(), 1);
        assert_eq!(linking_signature(&[vec![0, 0], vec![0, 0]]).unwrap(), 0);
        let e8_like = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(linking_signature(&e8_like).unwrap(), 3);
        assert_eq!(linking_signature(&[vec![1, 2], vec![3, 1]]), Err(Error::NotSymmetric));
    }
}
