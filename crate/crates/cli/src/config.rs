//! JSON experiment configuration, merged with command-line overrides.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fairagg_core::metrics::Metric;
use fairagg_core::oracle::ORACLE_MAX_D;
use fairagg_core::rational::parse_rational;
use fairagg_core::solvers::Variant;
use fairagg_core::{FairnessSpec, GroupAssignment};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// How `k` is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum KPolicy {
    Fixed(usize),
    /// Only `"d/2"` is accepted.
    Named(String),
    /// Equivalent to a sweep over `k`.
    List(Vec<usize>),
}

impl KPolicy {
    pub fn resolve(&self, d: usize) -> CliResult<usize> {
        let k = match self {
            KPolicy::Fixed(k) => *k,
            KPolicy::Named(s) if s == "d/2" => d / 2,
            KPolicy::Named(s) => return Err(CliError::Input(format!("unknown k policy {s:?}; use an integer or \"d/2\""))),
            KPolicy::List(ks) if ks.len() == 1 => ks[0],
            KPolicy::List(_) => return Err(CliError::Input("a k list is only valid for sweep".into())),
        };
        if k > d {
            return Err(CliError::Input(format!("k = {k} exceeds d = {d}")));
        }
        Ok(k)
    }
}

impl FromStr for KPolicy {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        if s == "d/2" {
            return Ok(KPolicy::Named(s.into()));
        }
        let ks = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CliError::Input(format!("bad --k value {s:?}")))?;
        Ok(match ks.as_slice() {
            [k] => KPolicy::Fixed(*k),
            _ => KPolicy::List(ks),
        })
    }
}

/// Per-group `alpha`/`beta`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum FairnessPolicy {
    /// Only `"proportional"`: `alpha_a = beta_a = |G_a| / d`.
    Named(String),
    Explicit { alpha: Vec<String>, beta: Vec<String> },
}

impl FairnessPolicy {
    /// Fairness parameters for `groups`; `kept` lists which original groups
    /// survive after subsetting, for explicit parameters.
    pub fn resolve(&self, groups: &GroupAssignment, k: usize, kept: Option<&[usize]>) -> CliResult<FairnessSpec> {
        match self {
            FairnessPolicy::Named(s) if s == "proportional" => Ok(FairnessSpec::proportional(groups, k)?),
            FairnessPolicy::Named(s) => Err(CliError::Input(format!("unknown fairness policy {s:?}"))),
            FairnessPolicy::Explicit { alpha, beta } => {
                let parse = |v: &[String]| -> CliResult<Vec<_>> {
                    let all = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
                    Ok(match kept {
                        Some(idx) => idx.iter().map(|&i| all[i]).collect(),
                        None => all,
                    })
                };
                if let Some(idx) = kept {
                    if idx.iter().any(|&i| i >= alpha.len() || i >= beta.len()) {
                        return Err(CliError::Input("alpha/beta lists shorter than the group count".into()));
                    }
                }
                let spec = FairnessSpec::new(k, parse(alpha)?, parse(beta)?)?;
                if spec.g() != groups.g() {
                    return Err(CliError::Input(format!(
                        "{} alpha/beta values for {} groups",
                        spec.g(),
                        groups.g()
                    )));
                }
                Ok(spec)
            }
        }
    }
}

/// Sweep dimensions; each present list contributes one point per value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub k: Option<Vec<usize>>,
    pub n: Option<Vec<usize>>,
    pub d: Option<Vec<usize>>,
}

/// What the harness runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Solver(Variant),
    /// Exhaustive fair optimum.
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Solver(v) => v.name(),
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        if s == "oracle" {
            return Ok(Algorithm::Oracle);
        }
        s.parse::<Variant>()
            .map(Algorithm::Solver)
            .map_err(|_| CliError::Input(format!("unknown algorithm {s:?}")))
    }
}

/// On-disk configuration. Relative paths resolve against the file's
/// directory.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub rankings: Option<PathBuf>,
    pub groups: Option<PathBuf>,
    /// One-row rankings file scored alongside the algorithms.
    pub external: Option<PathBuf>,
    pub k: Option<KPolicy>,
    pub fairness: Option<FairnessPolicy>,
    pub algorithms: Option<Vec<String>>,
    pub metrics: Option<Vec<String>>,
    pub sweep: Option<SweepSpec>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub oracle_max_d: Option<usize>,
    pub record_timing: Option<bool>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg: ExperimentConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.rankings, &mut cfg.groups, &mut cfg.external, &mut cfg.out]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// Fully resolved settings.
#[derive(Debug, Clone)]
pub struct Settings {
    pub rankings: Option<PathBuf>,
    pub groups: Option<PathBuf>,
    pub external: Option<PathBuf>,
    pub k: KPolicy,
    pub fairness: FairnessPolicy,
    pub algorithms: Vec<Algorithm>,
    pub metrics: Vec<Metric>,
    pub sweep: SweepSpec,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub oracle_max_d: usize,
    pub record_timing: bool,
}

pub const DEFAULT_ALGORITHMS: [&str; 5] = ["alg1", "alg2", "alg3", "bfi", "unconstrained"];

pub fn parse_list<T: FromStr<Err = E>, E: Into<CliError>>(items: &[String]) -> CliResult<Vec<T>> {
    let mut out = Vec::new();
    for s in items.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        out.push(s.parse().map_err(Into::into)?);
    }
    Ok(out)
}

impl Settings {
    pub fn dataset_paths(&self) -> CliResult<(&Path, &Path)> {
        let r = self
            .rankings
            .as_deref()
            .ok_or_else(|| CliError::Input("missing --rankings (or \"rankings\" in the config)".into()))?;
        let g = self
            .groups
            .as_deref()
            .ok_or_else(|| CliError::Input("missing --groups (or \"groups\" in the config)".into()))?;
        Ok((r, g))
    }

    pub fn metric_enabled(&self, m: Metric) -> bool {
        self.metrics.contains(&m)
    }
}

/// Command-line overrides, applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub config: Option<PathBuf>,
    pub rankings: Option<PathBuf>,
    pub groups: Option<PathBuf>,
    pub external: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub algs: Option<Vec<String>>,
    pub metrics: Option<Vec<String>>,
    pub oracle_max_d: Option<usize>,
    pub k: Option<KPolicy>,
    pub alpha: Option<Vec<String>>,
    pub beta: Option<Vec<String>>,
    pub no_timing: bool,
}

impl Overrides {
    pub fn resolve(self) -> CliResult<Settings> {
        let cfg = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        let rankings = self.rankings.or(cfg.rankings);
        let groups = self.groups.or(cfg.groups);
        let fairness = match (self.alpha, self.beta) {
            (Some(alpha), Some(beta)) => FairnessPolicy::Explicit {
                alpha: split(&alpha),
                beta: split(&beta),
            },
            (None, None) => cfg.fairness.unwrap_or(FairnessPolicy::Named("proportional".into())),
            _ => return Err(CliError::Input("--alpha and --beta must be given together".into())),
        };
        let algs = self
            .algs
            .or(cfg.algorithms)
            .unwrap_or_else(|| DEFAULT_ALGORITHMS.iter().map(|s| s.to_string()).collect());
        let algorithms: Vec<Algorithm> = parse_list(&algs)?;
        let metrics_raw = self
            .metrics
            .or(cfg.metrics)
            .unwrap_or_else(|| vec!["footrule".into(), "kendall".into()]);
        let metrics: Vec<Metric> = parse_list::<Metric, fairagg_core::Error>(&metrics_raw)?;
        if algorithms.is_empty() {
            return Err(CliError::Input("no algorithms selected".into()));
        }
        Ok(Settings {
            rankings,
            groups,
            external: self.external.or(cfg.external),
            k: self.k.or(cfg.k).unwrap_or(KPolicy::Named("d/2".into())),
            fairness,
            algorithms,
            metrics,
            sweep: cfg.sweep.unwrap_or_default(),
            out: self.out.or(cfg.out),
            seed: self.seed.or(cfg.seed).unwrap_or(0),
            oracle_max_d: self.oracle_max_d.or(cfg.oracle_max_d).unwrap_or(ORACLE_MAX_D),
            record_timing: !self.no_timing && cfg.record_timing.unwrap_or(true),
        })
    }
}

fn split(items: &[String]) -> Vec<String> {
    items
        .iter()
        .flat_map(|s| s.split(','))
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_policies() {
        assert_eq!("3".parse::<KPolicy>().unwrap(), KPolicy::Fixed(3));
        assert_eq!("2,3".parse::<KPolicy>().unwrap(), KPolicy::List(vec![2, 3]));
        assert_eq!(KPolicy::Named("d/2".into()).resolve(57).unwrap(), 28);
        assert!(KPolicy::Fixed(5).resolve(4).is_err());
        assert!("x".parse::<KPolicy>().is_err());
    }

    #[test]
    fn config_parses() {
        let cfg: ExperimentConfig = serde_json::from_str(
            r#"{"k": "d/2", "fairness": {"alpha": ["0.5", "1/2"], "beta": ["1", "1"]},
                "algorithms": ["alg3", "oracle"], "sweep": {"k": [2, 3]}, "seed": 7}"#,
        )
        .unwrap();
        assert_eq!(cfg.k, Some(KPolicy::Named("d/2".into())));
        assert_eq!(cfg.sweep.unwrap().k, Some(vec![2, 3]));
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn algorithm_names() {
        assert_eq!("oracle".parse::<Algorithm>().unwrap(), Algorithm::Oracle);
        assert_eq!("alg3".parse::<Algorithm>().unwrap(), Algorithm::Solver(Variant::Alg3));
        assert!("alg9".parse::<Algorithm>().is_err());
    }
}
