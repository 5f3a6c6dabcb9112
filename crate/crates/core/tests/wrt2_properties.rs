use csmm_core::arithgeo::Sl2z;
use csmm_core::wrt2::{complete_sl2z, u_matrix_su2, wrt_lens_su2, wrt_sphere_su2, wrt_surgery_su2};
use num_complex::Complex64;

const BITS: usize = 128;
const TOL: f64 = 1e-9;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn coprime_pairs(max_p: i64, q_range: std::ops::RangeInclusive<i64>) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in 1..=max_p {
        for q in q_range.clone() {
            if q != 0 && gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

#[test]
fn shift_q_by_p() {
    for (p, q) in coprime_pairs(5, -5..=5) {
        if q + p == 0 {
            continue;
        }
        for k in 1..=8 {
            let a = wrt_lens_su2(p, q, k, BITS).unwrap().abs;
            let b = wrt_lens_su2(p, q + p, k, BITS).unwrap().abs;
            assert!((a - b).abs() < TOL, "L({p},{q}) k={k}: {a} vs {b}");
        }
    }
}

#[test]
fn completion_choice_is_irrelevant() {
    for (p, q) in coprime_pairs(5, -4..=4) {
        let u = complete_sl2z(p, q).unwrap();
        for m in [-2i64, -1, 1, 3] {
            let v = Sl2z::new(u.p, u.r + m * u.p, u.q, u.s + m * u.q).unwrap();
            for k in 1..=6 {
                let a = wrt_surgery_su2(&u, k, BITS).unwrap().abs;
                let b = wrt_surgery_su2(&v, k, BITS).unwrap().abs;
                assert!((a - b).abs() < TOL, "L({p},{q}) m={m} k={k}");
            }
        }
    }
}

#[test]
fn integer_surgery_on_unknot_with_p_one_is_s3() {
    for q in [1, 2, 3] {
        for k in 1..=10 {
            let z = wrt_lens_su2(1, q, k, BITS).unwrap();
            assert!((z.abs - wrt_sphere_su2(k).unwrap()).abs() < TOL);
        }
    }
}

#[test]
fn homeomorphic_lens_spaces_agree() {
    // L(p, q) ≅ L(p, q') when q q' ≡ ±1 mod p; orientation reversal q → -q
    // conjugates Z.
    for (p, q, q2) in [(5, 2, 3), (7, 2, 4), (7, 3, 5), (8, 3, 3), (5, 1, 4)] {
        for k in 1..=6 {
            let a = wrt_lens_su2(p, q, k, BITS).unwrap().abs;
            let b = wrt_lens_su2(p, q2, k, BITS).unwrap().abs;
            let c = wrt_lens_su2(p, -q, k, BITS).unwrap().abs;
            assert!((a - b).abs() < TOL && (a - c).abs() < TOL, "L({p},{q}) k={k}");
        }
    }
}

fn matmul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

#[test]
fn group_law_up_to_phase() {
    let m = |p, r, q, s| Sl2z::new(p, r, q, s).unwrap();
    let cases = [
        (m(0, -1, 1, 0), m(1, 0, 1, 1)),
        (m(2, 1, 1, 1), m(1, 0, 1, 1)),
        (m(5, 2, 2, 1), m(0, -1, 1, 0)),
        (m(3, 1, 2, 1), m(1, 1, 1, 2)),
        (m(2, 1, 1, 1), m(3, 2, 1, 1)),
    ];
    for l in [3, 4, 5, 7] {
        for (u1, u2) in &cases {
            let prod = u1.mul(u2);
            assert!(u1.q != 0 && u2.q != 0 && prod.q != 0);
            let lhs = matmul(&u_matrix_su2(u1, l, BITS).unwrap(), &u_matrix_su2(u2, l, BITS).unwrap());
            let rhs = u_matrix_su2(&prod, l, BITS).unwrap();
            for (ra, rb) in lhs.iter().zip(&rhs) {
                for (x, y) in ra.iter().zip(rb) {
                    assert!((x.norm() - y.norm()).abs() < TOL, "l={l} {u1:?} {u2:?}");
                }
            }
        }
    }
}

#[test]
fn every_u_matrix_is_unitary() {
    for u in [Sl2z::new(2, 1, 1, 1).unwrap(), Sl2z::new(5, 2, 2, 1).unwrap(), Sl2z::new(-3, 1, -7, 2).unwrap()] {
        for l in 3..8 {
            let m = u_matrix_su2(&u, l, BITS).unwrap();
            for i in 0..m.len() {
                for j in 0..m.len() {
                    let dot: Complex64 = (0..m.len()).map(|k| m[i][k] * m[j][k].conj()).sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - Complex64::new(expect, 0.0)).norm() < TOL);
                }
            }
        }
    }
}
