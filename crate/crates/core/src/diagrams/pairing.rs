use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::surface::{MarkedSurface, SurfaceCombo};
use super::thicken::check_color;
use crate::corealg::{HSeries, NPoly, Scalar};
use crate::par;
use crate::symfun::{Monomial, SymFunc};
use crate::{Error, Result};

/// Upper bound on the number of cup bijections enumerated for one surface.
const MAX_BIJECTIONS: usize = 20_000_000;

/// Result of gluing cup strips: the χ-graded value (key `-χ_glued`) and
/// the same value with ℏ set to 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairingValue {
    graded: BTreeMap<i64, NPoly>,
}

impl PairingValue {
    fn add(&mut self, exponent: i64, value: NPoly) {
        let slot = self.graded.entry(exponent).or_insert_with(NPoly::zero);
        *slot = &*slot + &value;
        if slot.is_zero() {
            self.graded.remove(&exponent);
        }
    }

    pub fn graded(&self) -> &BTreeMap<i64, NPoly> {
        &self.graded
    }

    pub fn normalized(&self) -> NPoly {
        self.graded.values().fold(NPoly::zero(), |acc, v| &acc + v)
    }

    pub fn is_zero(&self) -> bool {
        self.graded.is_empty()
    }

    pub fn to_series(&self, order: i32) -> Result<HSeries> {
        let mut out = HSeries::zero(order);
        for (&e, v) in &self.graded {
            let e = i32::try_from(e).map_err(|_| Error::ExponentFloor(e))?;
            out.add_term(e, v.clone())?;
        }
        Ok(out)
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Boundary-circle histogram after gluing `m_x` cups per color onto the
/// marked points of `s`, over all bijections between points and cup ends.
fn glue_histogram(s: &MarkedSurface, ms: &[u32]) -> Result<Vec<u64>> {
    // Points in circle order; `next` walks along the circle.
    let mut color_of = Vec::new();
    let mut next = Vec::new();
    for circle in s.boundary() {
        let base = color_of.len();
        for (i, &c) in circle.iter().enumerate() {
            color_of.push(c as usize);
            next.push(base + (i + 1) % circle.len());
        }
    }
    let points_by_color: Vec<Vec<usize>> = (0..ms.len())
        .map(|x| (0..color_of.len()).filter(|&p| color_of[p] == x).collect())
        .collect();
    let perms: Vec<Vec<Vec<usize>>> = ms.iter().map(|&m| permutations(2 * m as usize)).collect();
    let total = perms.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.len()));
    let total = match total {
        Some(t) if t <= MAX_BIJECTIONS => t,
        _ => return Err(Error::OutOfRange(format!("too many cup bijections for m = {ms:?}"))),
    };
    let n_points = color_of.len();
    let empty = s.empty_circles();
    const CHUNK: usize = 2048;
    let chunks = total.div_ceil(CHUNK);
    let hists = par::map_indexed(chunks, |chunk| {
        let mut hist = vec![0u64; n_points + empty + 1];
        // cup_end[p]: global cup-endpoint id attached to point p; the two
        // ends of cup k are 2k and 2k+1.
        let mut cup_end = vec![0usize; n_points];
        let mut point_at = vec![0usize; n_points];
        let mut seen = vec![false; n_points];
        for idx in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
            let mut rest = idx;
            let mut offset = 0;
            for (x, pts) in points_by_color.iter().enumerate() {
                let choice = &perms[x][rest % perms[x].len()];
                rest /= perms[x].len();
                for (i, &p) in pts.iter().enumerate() {
                    cup_end[p] = offset + choice[i];
                    point_at[offset + choice[i]] = p;
                }
                offset += pts.len();
            }
            seen.iter_mut().for_each(|v| *v = false);
            let mut cycles = 0;
            for start in 0..n_points {
                if seen[start] {
                    continue;
                }
                cycles += 1;
                let mut p = start;
                while !seen[p] {
                    seen[p] = true;
                    // along the circle, across a cup side, back onto the surface
                    p = point_at[cup_end[next[p]] ^ 1];
                }
            }
            hist[cycles + empty] += 1;
        }
        hist
    });
    let mut hist = vec![0u64; n_points + empty + 1];
    for h in hists {
        for (a, b) in hist.iter_mut().zip(h) {
            *a += b;
        }
    }
    Ok(hist)
}

/// Pairing with `ms[x]` cup strips of color `x`.
pub fn lmo_pair_per_color(s: &SurfaceCombo, ms: &[u32]) -> Result<PairingValue> {
    let colors = ms.len();
    let weight = ms.iter().fold(Scalar::one(), |acc, &m| {
        acc / Scalar::from_integer(factorial(m) * (BigInt::one() << m))
    });
    let mut out = PairingValue::default();
    for (surface, c) in s.terms() {
        for circle in surface.boundary() {
            for &x in circle {
                check_color(x, colors)?;
            }
        }
        if (0..colors).any(|x| surface.points_of_color(x as u8) != 2 * ms[x] as usize) {
            continue;
        }
        let hist = glue_histogram(surface, ms)?;
        let mut value = NPoly::zero();
        for (b, &count) in hist.iter().enumerate() {
            if count > 0 {
                value.add_term(b as u32, Scalar::from_integer(count.into()));
            }
        }
        let chi = surface.euler_char() - ms.iter().map(|&m| m as i64).sum::<i64>();
        out.add(-chi, value.scale(&(c * &weight)));
    }
    Ok(out)
}

/// ∫^{(m)}: `m` cup strips in each of `colors` colors.
pub fn lmo_pair(s: &SurfaceCombo, m: u32, colors: usize) -> Result<PairingValue> {
    lmo_pair_per_color(s, &vec![m; colors])
}

/// A power-sum monomial realized as a disjoint union of disks `R_j`.
pub fn monomial_surface(mono: &Monomial) -> MarkedSurface {
    let mut circles = Vec::new();
    for (x, lambda) in mono.partitions().iter().enumerate() {
        for &j in lambda.parts() {
            circles.push(vec![x as u8; j as usize]);
        }
    }
    MarkedSurface::new(circles.len() as i64, circles)
}

pub fn lmo_pair_monomial(mono: &Monomial, m: u32) -> Result<PairingValue> {
    lmo_pair(&SurfaceCombo::single(monomial_surface(mono)), m, mono.colors())
}

/// ∫^{(m)} of a symmetric function. The ℏ already carried by the
/// coefficients is kept and shifted by `ℏ^{-m·r}`, which matches the
/// χ-graded surface pairing of the Φ-preimage.
pub fn lmo_pair_symfunc(f: &SymFunc, m: u32) -> Result<HSeries> {
    let shift = -(m as i32) * f.colors() as i32;
    let mut out = HSeries::zero(f.order());
    for (mono, c) in f.terms() {
        let v = lmo_pair_monomial(mono, m)?.normalized();
        if !v.is_zero() {
            out = out.add(&c.mul_npoly(&v))?;
        }
    }
    out.shift(shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{phi, psi, JacobiDiagram};
    use crate::symfun::Partition;

    fn mono(parts: &[u32]) -> Monomial {
        Monomial::single(Partition::new(parts.to_vec()))
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        let p = permutations(3);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
    }

    #[test]
    fn pbasis_m1() {
        let v = lmo_pair_monomial(&mono(&[2]), 1).unwrap();
        assert_eq!(v.normalized(), NPoly::from_ints(&[0, 0, 1]));
        assert_eq!(v.graded().keys().copied().collect::<Vec<_>>(), vec![0]);
        let v = lmo_pair_monomial(&mono(&[1, 1]), 1).unwrap();
        assert_eq!(v.normalized(), NPoly::n());
        assert_eq!(v.graded().keys().copied().collect::<Vec<_>>(), vec![-1]);
    }

    #[test]
    fn pbasis_wheel() {
        let s = psi(&JacobiDiagram::wheel(2, 0).unwrap()).unwrap();
        let v = lmo_pair(&s, 1, 1).unwrap();
        assert_eq!(v.normalized(), NPoly::from_ints(&[0, -2, 0, 2]));
        // agrees with the closed theta diagram, graded by -χ
        assert_eq!(v.graded().keys().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn wrong_point_count_is_zero() {
        assert!(lmo_pair_monomial(&mono(&[3]), 1).unwrap().is_zero());
        assert!(lmo_pair_monomial(&mono(&[2]), 2).unwrap().is_zero());
        let unit = Monomial::unit(1);
        assert_eq!(lmo_pair_monomial(&unit, 0).unwrap().normalized(), NPoly::one());
    }

    #[test]
    fn known_moments() {
        // ⟨tr M^4⟩ = 2N³ + N, ⟨(tr M)^4⟩ = 3N², ⟨tr M³ tr M⟩ = 3N²
        let v = lmo_pair_monomial(&mono(&[4]), 2).unwrap().normalized();
        assert_eq!(v, NPoly::from_ints(&[0, 1, 0, 2]));
        let v = lmo_pair_monomial(&mono(&[1, 1, 1, 1]), 2).unwrap().normalized();
        assert_eq!(v, NPoly::from_ints(&[0, 0, 3]));
        let v = lmo_pair_monomial(&mono(&[3, 1]), 2).unwrap().normalized();
        assert_eq!(v, NPoly::from_ints(&[0, 0, 3]));
    }

    #[test]
    fn symfunc_route_matches_surface_route() {
        let s = psi(&JacobiDiagram::wheel(4, 0).unwrap()).unwrap();
        let f = phi(&s, 1, 4).unwrap();
        let via_f = lmo_pair_symfunc(&f, 2).unwrap();
        let via_s = lmo_pair(&s, 2, 1).unwrap().to_series(2).unwrap();
        assert_eq!(via_f, via_s);
    }

    #[test]
    fn color_checks() {
        let s = SurfaceCombo::single(MarkedSurface::new(1, vec![vec![2, 2]]));
        assert!(matches!(lmo_pair(&s, 1, 1), Err(Error::UnknownColor { .. })));
        let two = Monomial::new(vec![Partition::new(vec![2]), Partition::new(vec![1, 1])]);
        let v = lmo_pair_monomial(&two, 1).unwrap().normalized();
        assert_eq!(v, NPoly::from_ints(&[0, 0, 0, 1]));
    }
}
