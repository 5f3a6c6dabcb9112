use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Integer partition stored as weakly decreasing positive parts.
///
/// The order used for sorting (and so for serialization keys) is by weight
/// first, then reverse lexicographic on the parts: `(3) < (2,1) < (1,1,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Parses `"3,1,1"`; an empty string is the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Invalid(format!("bad partition part {t:?}")))
                    .and_then(|v| u32::try_from(v).map_err(|_| Error::Negative(v)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.0.first().copied().unwrap_or(0);
        Self(
            (1..=width)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// Part sizes mapped to how often they occur.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `z_μ = ∏ j^{k_j} k_j!`, the order of the centralizer of cycle type μ.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::from(1);
        for (j, k) in self.multiplicities() {
            for i in 1..=k {
                z *= BigInt::from(j) * BigInt::from(i);
            }
        }
        z
    }

    /// Partition whose parts are the multiset union of both.
    pub fn union(&self, other: &Self) -> Self {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Self::new(parts)
    }
}

impl From<Vec<u32>> for Partition {
    fn from(v: Vec<u32>) -> Self {
        Self::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, in reverse lexicographic order: `(n)` first,
/// `(1^n)` last.
pub fn partitions_of(n: i64) -> Result<Vec<Partition>> {
    if n < 0 {
        return Err(Error::Negative(n));
    }
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    Ok(out)
}
