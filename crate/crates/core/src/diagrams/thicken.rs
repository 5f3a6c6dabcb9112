use super::jacobi::{JacobiDiagram, Vertex};
use super::surface::{MarkedSurface, SurfaceCombo};
use crate::corealg::{HSeries, NPoly, Scalar};
use crate::par;
use crate::symfun::{Color, Monomial, Partition, SymFunc};
use crate::{Error, Result};

/// Thickening with one marking: rotation `σ` around vertices, boundary
/// walks are the cycles of `σ ∘ pairing`.
fn thicken(d: &JacobiDiagram, mask: u64) -> MarkedSurface {
    let n = d.half_edge_count();
    let mut sigma = vec![0usize; n];
    let mut leg_color = vec![None; n];
    let mut t = 0;
    for v in d.vertices() {
        match *v {
            Vertex::Trivalent([a, b, c]) => {
                if mask >> t & 1 == 0 {
                    sigma[a] = b;
                    sigma[b] = c;
                    sigma[c] = a;
                } else {
                    sigma[a] = c;
                    sigma[c] = b;
                    sigma[b] = a;
                }
                t += 1;
            }
            Vertex::Leg { half_edge, color } => {
                sigma[half_edge] = half_edge;
                leg_color[half_edge] = Some(color);
            }
        }
    }
    let pairing = d.pairing();
    let mut seen = vec![false; n];
    let mut circles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut word = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            if let Some(c) = leg_color[h] {
                word.push(c);
            }
            h = sigma[pairing[h]];
        }
        circles.push(word);
    }
    MarkedSurface::new(d.euler_characteristic(), circles)
}

/// Ψ: signed sum over all markings of the trivalent vertices.
pub fn psi(d: &JacobiDiagram) -> Result<SurfaceCombo> {
    let t = d.trivalent_count();
    if t > 24 {
        return Err(Error::DiagramTooLarge(format!("{t} trivalent vertices")));
    }
    let surfaces = par::map_indexed(1usize << t, |mask| thicken(d, mask as u64));
    let mut out = SurfaceCombo::new();
    for (mask, s) in surfaces.into_iter().enumerate() {
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        out.add_term(s, Scalar::from_integer(sign.into()));
    }
    Ok(out)
}

/// Φ: a surface goes to `N^{#empty circles} ∏ p_{|circle|} ℏ^{deg₁}` with
/// the power sums taken in the color of the circle.
pub fn phi(s: &SurfaceCombo, colors: usize, order: i32) -> Result<SymFunc> {
    let mut out = SymFunc::zero(colors, order);
    for (surface, c) in s.terms() {
        let mut parts: Vec<Vec<u32>> = vec![Vec::new(); colors];
        for circle in surface.boundary() {
            let Some(&first) = circle.first() else {
                continue;
            };
            if circle.iter().any(|&x| x != first) {
                return Err(Error::MixedColorCircle);
            }
            check_color(first, colors)?;
            parts[first as usize].push(circle.len() as u32);
        }
        let deg = surface.vassiliev_degree();
        let exp = i32::try_from(deg).map_err(|_| Error::ExponentFloor(deg))?;
        if exp > order {
            continue;
        }
        let npow = NPoly::n().pow(surface.empty_circles() as u32);
        let coeff = HSeries::monomial(exp, npow.scale(c), order)?;
        let m = Monomial::new(parts.into_iter().map(Partition::new).collect());
        out.add_term(m, coeff)?;
    }
    Ok(out)
}

pub(crate) fn check_color(c: Color, colors: usize) -> Result<()> {
    if c as usize >= colors {
        return Err(Error::UnknownColor { color: c, colors });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::int;
    use crate::diagrams::ribbon_r;

    fn binom(n: u32, k: u32) -> i64 {
        (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
    }

    /// `ℏⁿ Σ_s (-1)^s C(n,s) p_s p_{n-s}` with `p_0 = N`.
    fn wheel_image(n: u32) -> SymFunc {
        let order = n as i32;
        let mut f = SymFunc::zero(1, order);
        for s in 0..=n {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            let c = HSeries::monomial(order, NPoly::constant(int(sign * binom(n, s))), order).unwrap();
            let term = SymFunc::power_sum_product(1, 0, &[s, n - s], c).unwrap();
            f = f.add(&term).unwrap();
        }
        f
    }

    #[test]
    fn psi_w2_two_annuli() {
        let w2 = JacobiDiagram::wheel(2, 0).unwrap();
        let s = psi(&w2).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(&MarkedSurface::new(0, vec![vec![0, 0], vec![]])), int(2));
        assert_eq!(s.coeff(&MarkedSurface::new(0, vec![vec![0], vec![0]])), int(-2));
    }

    #[test]
    fn phi_psi_w2() {
        let w2 = JacobiDiagram::wheel(2, 0).unwrap();
        let f = phi(&psi(&w2).unwrap(), 1, 4).unwrap();
        let expect = SymFunc::power_sum_product(1, 0, &[2], HSeries::monomial(2, NPoly::from_ints(&[0, 2]), 4).unwrap())
            .unwrap()
            .add(&SymFunc::power_sum_product(1, 0, &[1, 1], HSeries::monomial(2, NPoly::from_ints(&[-2]), 4).unwrap()).unwrap())
            .unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn phi_psi_wheels_binomial() {
        for n in 2..=7u32 {
            let w = JacobiDiagram::wheel(n as usize, 0).unwrap();
            let f = phi(&psi(&w).unwrap(), 1, n as i32).unwrap();
            assert_eq!(f, wheel_image(n), "wheel {n}");
        }
    }

    #[test]
    fn theta_image() {
        let f = phi(&psi(&JacobiDiagram::theta()).unwrap(), 0, 2).unwrap();
        let c = f.constant_term();
        assert_eq!(c, HSeries::monomial(1, NPoly::from_ints(&[0, -2, 0, 2]), 2).unwrap());
    }

    #[test]
    fn degrees_preserved() {
        let mut corpus = vec![JacobiDiagram::theta()];
        for n in 2..=6 {
            let w = JacobiDiagram::wheel(n, 0).unwrap();
            corpus.push(w.clone());
            corpus.push(w.disjoint_union(&JacobiDiagram::wheel(2, 0).unwrap()));
        }
        let w4 = JacobiDiagram::wheel(4, 0).unwrap();
        corpus.push(w4.close_legs(&[(0, 2)]).unwrap());
        for d in &corpus {
            for (s, _) in psi(d).unwrap().terms() {
                assert_eq!(s.vassiliev_degree(), d.vassiliev_degree());
                assert_eq!(s.euler_degree(), d.euler_degree());
            }
            assert_eq!(d.vassiliev_degree(), d.euler_degree() + d.legs().len() as i64);
        }
    }

    #[test]
    fn phi_ribbon() {
        let f = phi(&SurfaceCombo::single(ribbon_r(3, 0).unwrap()), 1, 3).unwrap();
        let expect = SymFunc::power_sum_product(1, 0, &[3], HSeries::monomial(2, NPoly::one(), 3).unwrap()).unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn phi_errors() {
        let mixed = SurfaceCombo::single(MarkedSurface::new(1, vec![vec![0, 1]]));
        assert_eq!(phi(&mixed, 2, 3), Err(Error::MixedColorCircle));
        let far = SurfaceCombo::single(MarkedSurface::new(1, vec![vec![3]]));
        assert!(matches!(phi(&far, 2, 3), Err(Error::UnknownColor { .. })));
    }

    #[test]
    fn two_color_wheel_union() {
        let d = JacobiDiagram::wheel(2, 0).unwrap().disjoint_union(&JacobiDiagram::wheel(2, 1).unwrap());
        let f = phi(&psi(&d).unwrap(), 2, 4).unwrap();
        let m = Monomial::new(vec![Partition::new(vec![2]), Partition::new(vec![2])]);
        assert_eq!(f.coeff(&m), HSeries::monomial(4, NPoly::from_ints(&[0, 0, 4]), 4).unwrap());
        assert_eq!(f.len(), 4);
    }
}
