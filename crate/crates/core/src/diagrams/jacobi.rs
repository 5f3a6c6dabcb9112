use serde::{Deserialize, Serialize};

use crate::symfun::Color;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Vertex {
    /// Three half-edges listed in their cyclic order.
    Trivalent([usize; 3]),
    /// A univalent vertex carrying a color.
    Leg { half_edge: usize, color: Color },
}

impl Vertex {
    fn half_edges(&self) -> &[usize] {
        match self {
            Vertex::Trivalent(h) => h,
            Vertex::Leg { half_edge, .. } => std::slice::from_ref(half_edge),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    pairing: Vec<usize>,
    vertices: Vec<Vertex>,
}

/// Unitrivalent graph with cyclically ordered trivalent vertices and
/// colored legs, stored as half-edges: `pairing` is a fixed-point-free
/// involution (the edges) and every half-edge belongs to exactly one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct JacobiDiagram {
    pairing: Vec<usize>,
    vertices: Vec<Vertex>,
    /// Vertex owning each half-edge.
    owner: Vec<usize>,
}

impl TryFrom<RawDiagram> for JacobiDiagram {
    type Error = Error;
    fn try_from(raw: RawDiagram) -> Result<Self> {
        Self::new(raw.pairing, raw.vertices)
    }
}

impl From<JacobiDiagram> for RawDiagram {
    fn from(d: JacobiDiagram) -> Self {
        RawDiagram {
            pairing: d.pairing,
            vertices: d.vertices,
        }
    }
}

impl JacobiDiagram {
    pub fn new(pairing: Vec<usize>, vertices: Vec<Vertex>) -> Result<Self> {
        let n = pairing.len();
        if n == 0 || vertices.is_empty() {
            return Err(Error::InvalidDiagram("empty diagram".into()));
        }
        for (h, &p) in pairing.iter().enumerate() {
            if p >= n || p == h || pairing[p] != h {
                return Err(Error::InvalidDiagram(format!(
                    "pairing is not a fixed-point-free involution at half-edge {h}"
                )));
            }
        }
        let mut owner = vec![usize::MAX; n];
        for (v, vertex) in vertices.iter().enumerate() {
            for &h in vertex.half_edges() {
                if h >= n || owner[h] != usize::MAX {
                    return Err(Error::InvalidDiagram(format!(
                        "half-edge {h} is out of range or shared"
                    )));
                }
                owner[h] = v;
            }
        }
        if let Some(h) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidDiagram(format!("half-edge {h} has no vertex")));
        }
        Ok(Self {
            pairing,
            vertices,
            owner,
        })
    }

    /// The wheel with `n` spokes, all legs colored `color` and all legs on
    /// the same side of the rim.
    pub fn wheel(n: usize, color: Color) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("wheel needs n >= 2, got {n}")));
        }
        // Vertex i owns 3i (towards i-1), 3i+1 (towards i+1), 3i+2 (spoke);
        // leg i is half-edge 3n+i.
        let mut pairing = vec![0; 4 * n];
        let mut vertices = Vec::with_capacity(2 * n);
        for i in 0..n {
            let next = (i + 1) % n;
            pairing[3 * i + 1] = 3 * next;
            pairing[3 * next] = 3 * i + 1;
            pairing[3 * i + 2] = 3 * n + i;
            pairing[3 * n + i] = 3 * i + 2;
            vertices.push(Vertex::Trivalent([3 * i, 3 * i + 1, 3 * i + 2]));
        }
        for i in 0..n {
            vertices.push(Vertex::Leg {
                half_edge: 3 * n + i,
                color,
            });
        }
        Self::new(pairing, vertices)
    }

    /// Two trivalent vertices joined by three edges: the closure of `w_2`.
    pub fn theta() -> Self {
        Self::wheel(2, 0)
            .and_then(|w| w.close_legs(&[(0, 1)]))
            .expect("theta is well formed")
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn half_edge_count(&self) -> usize {
        self.pairing.len()
    }

    pub fn edge_count(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn owner(&self, half_edge: usize) -> usize {
        self.owner[half_edge]
    }

    pub fn trivalent_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| matches!(v, Vertex::Trivalent(_)))
            .count()
    }

    /// Legs in vertex order as `(half_edge, color)`.
    pub fn legs(&self) -> Vec<(usize, Color)> {
        self.vertices
            .iter()
            .filter_map(|v| match v {
                Vertex::Leg { half_edge, color } => Some((*half_edge, *color)),
                Vertex::Trivalent(_) => None,
            })
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.legs().is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64
    }

    /// Half the number of vertices, legs included.
    pub fn vassiliev_degree(&self) -> i64 {
        debug_assert!(self.vertices.len() % 2 == 0);
        self.vertices.len() as i64 / 2
    }

    /// `-χ(D)`.
    pub fn euler_degree(&self) -> i64 {
        -self.euler_characteristic()
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.pairing.len();
        let mut pairing = self.pairing.clone();
        pairing.extend(other.pairing.iter().map(|&p| p + off));
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().map(|v| match v {
            Vertex::Trivalent([a, b, c]) => Vertex::Trivalent([a + off, b + off, c + off]),
            Vertex::Leg { half_edge, color } => Vertex::Leg {
                half_edge: half_edge + off,
                color: *color,
            },
        }));
        Self::new(pairing, vertices).expect("union of valid diagrams")
    }

    /// Glues legs pairwise. Indices refer to positions in [`Self::legs`];
    /// legs not mentioned stay.
    pub fn close_legs(&self, pairs: &[(usize, usize)]) -> Result<Self> {
        let legs = self.legs();
        let mut removed = vec![false; self.pairing.len()];
        let mut pairing = self.pairing.clone();
        for &(a, b) in pairs {
            let (la, lb) = match (legs.get(a), legs.get(b)) {
                (Some(&(la, _)), Some(&(lb, _))) if a != b => (la, lb),
                _ => return Err(Error::InvalidDiagram(format!("bad leg pair ({a}, {b})"))),
            };
            if removed[la] || removed[lb] {
                return Err(Error::InvalidDiagram(format!("leg reused in ({a}, {b})")));
            }
            let (ha, hb) = (pairing[la], pairing[lb]);
            if ha == lb {
                return Err(Error::InvalidDiagram(
                    "closing a strut leaves a loop without vertices".into(),
                ));
            }
            pairing[ha] = hb;
            pairing[hb] = ha;
            removed[la] = true;
            removed[lb] = true;
        }
        let mut index = vec![usize::MAX; pairing.len()];
        let mut next = 0;
        for (h, &gone) in removed.iter().enumerate() {
            if !gone {
                index[h] = next;
                next += 1;
            }
        }
        let new_pairing = (0..pairing.len())
            .filter(|&h| !removed[h])
            .map(|h| index[pairing[h]])
            .collect();
        let vertices = self
            .vertices
            .iter()
            .filter_map(|v| match v {
                Vertex::Trivalent([a, b, c]) => {
                    Some(Vertex::Trivalent([index[*a], index[*b], index[*c]]))
                }
                Vertex::Leg { half_edge, color } => (!removed[*half_edge]).then(|| Vertex::Leg {
                    half_edge: index[*half_edge],
                    color: *color,
                }),
            })
            .collect();
        Self::new(new_pairing, vertices)
    }
}

/// All perfect matchings of `0..n` (`n` even), each as a list of pairs with
/// the smaller element first. There are `(n-1)!!` of them.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = free.remove(0);
        for i in 0..free.len() {
            let partner = free.remove(i);
            cur.push((first, partner));
            rec(free, cur, out);
            cur.pop();
            free.insert(i, partner);
        }
        free.insert(0, first);
    }
    let mut out = Vec::new();
    if n % 2 == 0 {
        rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_degrees() {
        let w2 = JacobiDiagram::wheel(2, 0).unwrap();
        assert_eq!(w2.trivalent_count(), 2);
        assert_eq!(w2.legs().len(), 2);
        assert_eq!(w2.vassiliev_degree(), 2);
        let w4 = JacobiDiagram::wheel(4, 0).unwrap();
        assert_eq!(w4.vassiliev_degree(), 4);
        assert_eq!(w4.euler_degree(), 0);
        for n in 2..=8 {
            let w = JacobiDiagram::wheel(n, 0).unwrap();
            assert_eq!(w.vassiliev_degree(), w.euler_degree() + w.legs().len() as i64);
        }
        assert!(JacobiDiagram::wheel(1, 0).is_err());
    }

    #[test]
    fn theta_shape() {
        let t = JacobiDiagram::theta();
        assert!(t.is_closed());
        assert_eq!(t.trivalent_count(), 2);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.euler_degree(), 1);
        assert_eq!(t.vassiliev_degree(), 1);
    }

    #[test]
    fn invalid_inputs() {
        assert!(JacobiDiagram::new(vec![], vec![]).is_err());
        // A bare loop: two half-edges and no vertices.
        assert!(JacobiDiagram::new(vec![1, 0], vec![]).is_err());
        // Half-edge without a vertex.
        let v = vec![Vertex::Leg { half_edge: 0, color: 0 }];
        assert!(JacobiDiagram::new(vec![1, 0], v).is_err());
        // Fixed point in the pairing.
        let v = vec![Vertex::Leg { half_edge: 0, color: 0 }];
        assert!(JacobiDiagram::new(vec![0], v).is_err());
        // Closing a strut on itself.
        let strut = JacobiDiagram::new(
            vec![1, 0],
            vec![
                Vertex::Leg { half_edge: 0, color: 0 },
                Vertex::Leg { half_edge: 1, color: 0 },
            ],
        )
        .unwrap();
        assert!(strut.close_legs(&[(0, 1)]).is_err());
    }

    #[test]
    fn matchings_count() {
        let expect = [1, 1, 3, 15, 105];
        for (k, &e) in expect.iter().enumerate() {
            assert_eq!(perfect_matchings(2 * k).len(), e);
        }
        assert!(perfect_matchings(3).is_empty());
    }

    #[test]
    fn json_roundtrip() {
        let w = JacobiDiagram::wheel(3, 1).unwrap();
        let js = serde_json::to_string(&w).unwrap();
        let back: JacobiDiagram = serde_json::from_str(&js).unwrap();
        assert_eq!(back, w);
        let bad = r#"{"pairing":[1,0],"vertices":[]}"#;
        assert!(serde_json::from_str::<JacobiDiagram>(bad).is_err());
    }
}
