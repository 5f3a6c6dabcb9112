use super::jacobi::{JacobiDiagram, Vertex};
use crate::corealg::Scalar;
use crate::{Error, Result};

/// Guard on the total number of multiply-adds in one contraction.
pub const MAX_CONTRACTION_WORK: u64 = 4_000_000_000;

/// Value of the gl(n) weight system on a closed diagram, by contracting
/// the structure tensor `tr(x[y,z])` over the basis `e_ij` at each vertex,
/// with each edge carrying the Casimir `Σ e_ij ⊗ e_ji`.
pub fn gl_n_bruteforce(d: &JacobiDiagram, n: u32) -> Result<Scalar> {
    if !d.is_closed() {
        return Err(Error::InvalidDiagram("brute-force contraction needs a closed diagram".into()));
    }
    if !(1..=4).contains(&n) {
        return Err(Error::OutOfRange(format!("gl_n contraction supports 1 <= n <= 4, got {n}")));
    }
    let n = n as usize;
    let dim = n * n;
    let pairing = d.pairing();
    // Edge ids; the smaller half-edge carries e_ij, its partner e_ji.
    let mut edge_of = vec![usize::MAX; pairing.len()];
    let mut edges = 0;
    for h in 0..pairing.len() {
        if h < pairing[h] {
            edge_of[h] = edges;
            edge_of[pairing[h]] = edges;
            edges += 1;
        }
    }
    let dual = |a: usize| (a % n) * n + a / n;
    let value_at = |h: usize, a: usize| if h < pairing[h] { a } else { dual(a) };

    let verts: Vec<[usize; 3]> = d
        .vertices()
        .iter()
        .map(|v| match v {
            Vertex::Trivalent(hs) => *hs,
            Vertex::Leg { .. } => unreachable!("closed diagram"),
        })
        .collect();
    let vars_of: Vec<Vec<usize>> = verts
        .iter()
        .map(|hs| {
            let mut v: Vec<usize> = hs.iter().map(|&h| edge_of[h]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();

    let trace3 = |a: usize, b: usize, c: usize| -> i128 {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        let (m, o) = (c / n, c % n);
        (j == k && l == m && o == i) as i128
    };
    let local_tensor = |v: usize| -> Vec<i128> {
        let vars = &vars_of[v];
        let hs = verts[v];
        let size = dim.pow(vars.len() as u32);
        (0..size)
            .map(|idx| {
                let digit = |e: usize| {
                    let pos = vars.iter().position(|&x| x == e).expect("own edge");
                    idx / dim.pow(pos as u32) % dim
                };
                let [a, b, c] = hs.map(|h| value_at(h, digit(edge_of[h])));
                trace3(a, b, c) - trace3(a, c, b)
            })
            .collect()
    };

    // Greedy order: next vertex adds the fewest new open edges.
    let mut remaining_ends = vec![2usize; edges];
    let mut done = vec![false; verts.len()];
    let mut open: Vec<usize> = Vec::new();
    let mut tensor: Vec<i128> = vec![1];
    let mut work = 0u64;
    for _ in 0..verts.len() {
        let v = (0..verts.len())
            .filter(|&v| !done[v])
            .min_by_key(|&v| vars_of[v].iter().filter(|e| !open.contains(e)).count())
            .expect("vertex left");
        done[v] = true;
        let fresh: Vec<usize> = vars_of[v].iter().copied().filter(|e| !open.contains(e)).collect();
        for h in verts[v] {
            remaining_ends[edge_of[h]] -= 1;
        }
        let union: Vec<usize> = open.iter().chain(&fresh).copied().collect();
        let next_open: Vec<usize> = union.iter().copied().filter(|&e| remaining_ends[e] > 0).collect();
        let step = (tensor.len() as u64).saturating_mul((dim as u64).pow(fresh.len() as u32));
        work = work.saturating_add(step);
        if work > MAX_CONTRACTION_WORK {
            return Err(Error::DiagramTooLarge(format!(
                "{edges} edges at n = {n} exceed the contraction budget"
            )));
        }
        let local = local_tensor(v);
        let stride = |list: &[usize], e: usize| {
            list.iter().position(|&x| x == e).map_or(0, |p| dim.pow(p as u32))
        };
        let local_stride: Vec<usize> = union.iter().map(|&e| stride(&vars_of[v], e)).collect();
        let new_stride: Vec<usize> = union.iter().map(|&e| stride(&next_open, e)).collect();
        let mut next = vec![0i128; dim.pow(next_open.len() as u32)];
        let fresh_size = dim.pow(fresh.len() as u32);
        let mut digits = vec![0usize; union.len()];
        for (o, &t) in tensor.iter().enumerate() {
            if t == 0 {
                continue;
            }
            let mut rest = o;
            for d in digits.iter_mut().take(open.len()) {
                *d = rest % dim;
                rest /= dim;
            }
            for w in 0..fresh_size {
                let mut rest = w;
                for d in digits.iter_mut().skip(open.len()) {
                    *d = rest % dim;
                    rest /= dim;
                }
                let (mut li, mut ni) = (0, 0);
                for (k, &dg) in digits.iter().enumerate() {
                    li += dg * local_stride[k];
                    ni += dg * new_stride[k];
                }
                let x = local[li];
                if x != 0 {
                    next[ni] += t * x;
                }
            }
        }
        open = next_open;
        tensor = next;
    }
    debug_assert!(open.is_empty());
    Ok(Scalar::from_integer(tensor[0].into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::int;

    #[test]
    fn theta_values() {
        let t = JacobiDiagram::theta();
        assert_eq!(gl_n_bruteforce(&t, 1).unwrap(), int(0));
        assert_eq!(gl_n_bruteforce(&t, 2).unwrap(), int(12));
        assert_eq!(gl_n_bruteforce(&t, 3).unwrap(), int(48));
    }

    #[test]
    fn rejects_open_and_large_n() {
        let w = JacobiDiagram::wheel(2, 0).unwrap();
        assert!(gl_n_bruteforce(&w, 2).is_err());
        assert!(gl_n_bruteforce(&JacobiDiagram::theta(), 5).is_err());
        assert!(gl_n_bruteforce(&JacobiDiagram::theta(), 0).is_err());
    }
}
