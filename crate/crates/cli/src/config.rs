use std::path::{Path, PathBuf};

use crate::Failure;

/// Settings shared by all subcommands. Precedence is flag, then
/// environment, then config file, then the defaults below.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub order: i32,
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
    pub precision: usize,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            order: 4,
            tol: 1e-10,
            seed: 0,
            samples: 100_000,
            precision: csmm_core::wrt2::DEFAULT_PRECISION,
            threads: None,
            output: None,
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Failure> {
    v.parse()
        .map_err(|_| Failure::Usage(format!("config: bad value {v:?} for {key}")))
}

impl RunConfig {
    /// Reads a flat `key = value` file; `#` starts a comment.
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("config line {}: expected key=value", i + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "order" => {
                    cfg.order = parse_value(k, v)?;
                    if cfg.order < 0 {
                        return Err(Failure::Usage("config: order must be >= 0".into()));
                    }
                }
                "tol" => cfg.tol = parse_value(k, v)?,
                "seed" => cfg.seed = parse_value(k, v)?,
                "samples" => cfg.samples = parse_value(k, v)?,
                "precision" => cfg.precision = parse_value(k, v)?,
                "threads" => cfg.threads = Some(parse_value(k, v)?),
                "output" => cfg.output = Some(PathBuf::from(v)),
                _ => return Err(Failure::Usage(format!("config: unknown key {k:?}"))),
            }
        }
        Ok(cfg)
    }
}
