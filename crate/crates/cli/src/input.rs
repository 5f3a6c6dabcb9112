use clap::Args;
use csmm_core::diagrams::JacobiDiagram;
use csmm_core::symfun::Partition;

use crate::Failure;

fn usage<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Usage(format!("{what}: {e}"))
}

pub fn partition(s: &str) -> Result<Partition, Failure> {
    Partition::parse(s).map_err(usage("partition"))
}

/// `2/1,3/1,5/-4`.
pub fn pairs(s: &str) -> Result<Vec<(i64, i64)>, Failure> {
    s.split(',')
        .map(|t| {
            let (p, q) = t
                .trim()
                .split_once('/')
                .ok_or_else(|| Failure::Usage(format!("pair {t:?} is not p/q")))?;
            Ok((
                p.trim().parse().map_err(usage("pair numerator"))?,
                q.trim().parse().map_err(usage("pair denominator"))?,
            ))
        })
        .collect()
}

pub fn int_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    s.split(',').map(|t| t.trim().parse().map_err(usage("list entry"))).collect()
}

pub fn float_list(s: &str) -> Result<Vec<f64>, Failure> {
    int_list(s)
}

/// Rows separated by `;`, entries by `,`.
pub fn matrix(s: &str) -> Result<Vec<Vec<i64>>, Failure> {
    s.split(';').map(int_list).collect()
}

/// `N=2,hbar=0.02`.
pub fn numeric_spec(s: &str) -> Result<(usize, f64), Failure> {
    let (mut n, mut hbar) = (None, None);
    for kv in s.split(',') {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("numeric spec {kv:?} is not key=value")))?;
        match k.trim() {
            "N" | "n" => n = Some(v.trim().parse().map_err(usage("N"))?),
            "hbar" => hbar = Some(v.trim().parse().map_err(usage("hbar"))?),
            k => return Err(Failure::Usage(format!("numeric spec: unknown key {k:?}"))),
        }
    }
    match (n, hbar) {
        (Some(n), Some(h)) => Ok((n, h)),
        _ => Err(Failure::Usage("numeric spec needs N and hbar".into())),
    }
}

#[derive(Args, Debug, Default)]
pub struct DiagramArgs {
    /// Diagram as JSON `{"pairing": [...], "vertices": [...]}`, or `@path`.
    #[arg(long)]
    pub diagram: Option<String>,
    /// Wheel with this many legs; repeat for a disjoint union.
    #[arg(long)]
    pub wheel: Vec<usize>,
    /// The theta graph.
    #[arg(long)]
    pub theta: bool,
    /// Glue legs pairwise, by leg index: `0-1,2-3`.
    #[arg(long)]
    pub close: Option<String>,
}

impl DiagramArgs {
    pub fn is_given(&self) -> bool {
        self.diagram.is_some() || !self.wheel.is_empty() || self.theta
    }

    pub fn build(&self) -> Result<JacobiDiagram, Failure> {
        let mut parts = Vec::new();
        if let Some(src) = &self.diagram {
            let text = match src.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path).map_err(usage("diagram file"))?,
                None => src.clone(),
            };
            parts.push(serde_json::from_str::<JacobiDiagram>(&text).map_err(usage("diagram"))?);
        }
        for &n in &self.wheel {
            parts.push(JacobiDiagram::wheel(n, 0)?);
        }
        if self.theta {
            parts.push(JacobiDiagram::theta());
        }
        let mut it = parts.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Failure::Usage("no diagram given (--diagram, --wheel or --theta)".into()))?;
        let d = it.fold(first, |acc, x| acc.disjoint_union(&x));
        match &self.close {
            None => Ok(d),
            Some(spec) => {
                let pairs = spec
                    .split(',')
                    .map(|t| {
                        let (a, b) = t
                            .split_once('-')
                            .ok_or_else(|| Failure::Usage(format!("leg pair {t:?} is not a-b")))?;
                        Ok((
                            a.trim().parse().map_err(usage("leg index"))?,
                            b.trim().parse().map_err(usage("leg index"))?,
                        ))
                    })
                    .collect::<Result<Vec<(usize, usize)>, Failure>>()?;
                Ok(d.close_legs(&pairs)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsers() {
        assert_eq!(pairs("2/1, 3/1,5/-4").unwrap(), vec![(2, 1), (3, 1), (5, -4)]);
        assert!(pairs("2:1").is_err());
        assert_eq!(numeric_spec("N=2,hbar=0.02").unwrap(), (2, 0.02));
        assert!(numeric_spec("N=2").is_err());
        assert_eq!(matrix("2,1;1,2").unwrap(), vec![vec![2, 1], vec![1, 2]]);
    }

    #[test]
    fn closed_wheel() {
        let a = DiagramArgs {
            wheel: vec![2],
            close: Some("0-1".into()),
            ..Default::default()
        };
        assert!(a.build().unwrap().is_closed());
    }
}
