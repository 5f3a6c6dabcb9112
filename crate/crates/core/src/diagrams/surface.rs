use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::corealg::Scalar;
use crate::symfun::Color;
use crate::{Error, Result};

/// Compact oriented surface with colored points on its boundary, kept only
/// up to what the power-sum map sees: the Euler characteristic and the
/// cyclic color word on each boundary circle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MarkedSurface {
    euler_char: i64,
    boundary: Vec<Vec<Color>>,
}

fn min_rotation(word: &[Color]) -> Vec<Color> {
    (0..word.len())
        .map(|k| [&word[k..], &word[..k]].concat())
        .min()
        .unwrap_or_default()
}

impl MarkedSurface {
    /// Builds the canonical form: each circle rotated to its smallest
    /// rotation, circles sorted.
    pub fn new(euler_char: i64, boundary: Vec<Vec<Color>>) -> Self {
        let mut boundary: Vec<_> = boundary.iter().map(|c| min_rotation(c)).collect();
        boundary.sort();
        Self {
            euler_char,
            boundary,
        }
    }

    pub fn euler_char(&self) -> i64 {
        self.euler_char
    }

    pub fn boundary(&self) -> &[Vec<Color>] {
        &self.boundary
    }

    pub fn marked_points(&self) -> usize {
        self.boundary.iter().map(Vec::len).sum()
    }

    pub fn points_of_color(&self, color: Color) -> usize {
        self.boundary
            .iter()
            .flatten()
            .filter(|&&c| c == color)
            .count()
    }

    pub fn empty_circles(&self) -> usize {
        self.boundary.iter().filter(|c| c.is_empty()).count()
    }

    /// `-χ + |γ|`.
    pub fn vassiliev_degree(&self) -> i64 {
        -self.euler_char + self.marked_points() as i64
    }

    /// `-χ`.
    pub fn euler_degree(&self) -> i64 {
        -self.euler_char
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut boundary = self.boundary.clone();
        boundary.extend(other.boundary.iter().cloned());
        Self::new(self.euler_char + other.euler_char, boundary)
    }
}

/// Disk with `n` points of one color on its single boundary circle.
pub fn ribbon_r(n: usize, color: Color) -> Result<MarkedSurface> {
    if n == 0 {
        return Err(Error::OutOfRange("ribbon graph R_n needs n >= 1".into()));
    }
    Ok(MarkedSurface::new(1, vec![vec![color; n]]))
}

/// Finite ℚ-linear combination of marked surfaces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceCombo {
    terms: BTreeMap<MarkedSurface, Scalar>,
}

impl SurfaceCombo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(s: MarkedSurface) -> Self {
        let mut c = Self::new();
        c.add_term(s, Scalar::from_integer(1.into()));
        c
    }

    pub fn add_term(&mut self, s: MarkedSurface, c: Scalar) {
        let sum = match self.terms.remove(&s) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(s, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MarkedSurface, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &MarkedSurface) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::new();
        for (s, v) in self.terms() {
            out.add_term(s.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, v) in other.terms() {
            out.add_term(s.clone(), v.clone());
        }
        out
    }

    /// Bilinear extension of [`MarkedSurface::disjoint_union`].
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(a.disjoint_union(b), x * y);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct ComboEntry {
    surface: MarkedSurface,
    coeff: String,
}

impl Serialize for SurfaceCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms().map(|(surface, c)| ComboEntry {
            surface: surface.clone(),
            coeff: c.to_string(),
        }))
    }
}

impl<'de> Deserialize<'de> for SurfaceCombo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<ComboEntry>::deserialize(d)?;
        let mut out = Self::new();
        for e in entries {
            let c = crate::corealg::parse_scalar(&e.coeff).map_err(serde::de::Error::custom)?;
            let s = MarkedSurface::new(e.surface.euler_char, e.surface.boundary);
            out.add_term(s, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::int;

    #[test]
    fn canonical_rotation() {
        let a = MarkedSurface::new(0, vec![vec![1, 0, 0], vec![]]);
        let b = MarkedSurface::new(0, vec![vec![], vec![0, 1, 0]]);
        assert_eq!(a, b);
        assert_eq!(a.boundary(), &[vec![], vec![0, 0, 1]]);
        assert_eq!(a.empty_circles(), 1);
    }

    #[test]
    fn ribbon_degrees() {
        let r2 = ribbon_r(2, 0).unwrap();
        assert_eq!(r2.euler_char(), 1);
        assert_eq!(r2.boundary(), &[vec![0, 0]]);
        let r3 = ribbon_r(3, 0).unwrap();
        assert_eq!(r3.vassiliev_degree(), 2);
        assert!(ribbon_r(0, 0).is_err());
    }

    #[test]
    fn combo_cancels() {
        let s = ribbon_r(1, 0).unwrap();
        let mut c = SurfaceCombo::single(s.clone());
        c.add_term(s, int(-1));
        assert!(c.is_empty());
    }

    #[test]
    fn combo_json_roundtrip() {
        let mut c = SurfaceCombo::new();
        c.add_term(MarkedSurface::new(0, vec![vec![0, 0], vec![]]), int(2));
        c.add_term(MarkedSurface::new(0, vec![vec![0], vec![0]]), int(-2));
        let js = serde_json::to_string(&c).unwrap();
        let back: SurfaceCombo = serde_json::from_str(&js).unwrap();
        assert_eq!(back, c);
    }
}
