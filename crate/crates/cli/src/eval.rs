use std::time::{Duration, Instant};

use fairagg_core::metrics::{kendall_objective, objective, Metric};
use fairagg_core::oracle::brute_fair_full_opt_guarded;
use fairagg_core::rational::format_rational;
use fairagg_core::solvers::{aggregate, certified_ratio, unconstrained_aggregate};
use fairagg_core::{check_fairness, Error, Instance, Ranking, Rational};
use serde::Serialize;

use crate::config::{Algorithm, Settings};
use crate::error::{CliError, CliResult};

/// One algorithm's output on one instance.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub name: String,
    /// Branch picked by `alg3`.
    pub chosen: Option<String>,
    pub ranking: Ranking,
    pub objective: u64,
    pub kendall_objective: Option<u64>,
    pub lower_bound: u64,
    pub certified_ratio: Option<Rational>,
    pub fair: bool,
    pub wall_time: Duration,
}

/// Serialized form of an [`Evaluation`].
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub algorithm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen: Option<String>,
    pub objective: u64,
    pub kendall_objective: Option<u64>,
    pub lower_bound: u64,
    pub certified_ratio: Option<String>,
    pub fair: bool,
    pub wall_ms: f64,
    /// Candidate ids in rank order.
    pub ranking: Vec<String>,
}

pub fn wall_ms(t: Duration, record: bool) -> f64 {
    if record {
        (t.as_secs_f64() * 1e6).round() / 1e3
    } else {
        0.0
    }
}

impl Evaluation {
    pub fn record(&self, labels: Vec<String>, record_timing: bool) -> Record {
        Record {
            algorithm: self.name.clone(),
            chosen: self.chosen.clone(),
            objective: self.objective,
            kendall_objective: self.kendall_objective,
            lower_bound: self.lower_bound,
            certified_ratio: self.certified_ratio.map(format_rational),
            fair: self.fair,
            wall_ms: wall_ms(self.wall_time, record_timing),
            ranking: labels,
        }
    }
}

fn kendall(inst: &Instance, sigma: &Ranking, s: &Settings) -> CliResult<Option<u64>> {
    if s.metric_enabled(Metric::Kendall) {
        Ok(Some(kendall_objective(inst.rankings(), sigma)?))
    } else {
        Ok(None)
    }
}

/// Runs `alg` on `inst`. The oracle respects `s.oracle_max_d`; under the
/// Kendall metric it also reports the Kendall fair optimum.
pub fn evaluate(inst: &Instance, alg: Algorithm, s: &Settings) -> CliResult<Evaluation> {
    match alg {
        Algorithm::Solver(v) => {
            let res = aggregate(inst, v)?;
            let fair = check_fairness(&res.ranking, inst.bounds(), inst.groups())?;
            Ok(Evaluation {
                name: v.name().into(),
                chosen: (res.chosen != v).then(|| res.chosen.name().into()),
                kendall_objective: kendall(inst, &res.ranking, s)?,
                objective: res.objective,
                lower_bound: res.lower_bound,
                certified_ratio: res.certified_ratio,
                fair,
                wall_time: res.wall_time,
                ranking: res.ranking,
            })
        }
        Algorithm::Oracle => {
            let start = Instant::now();
            let (ranking, opt) = brute_fair_full_opt_guarded(inst, Metric::Footrule, s.oracle_max_d)
                .map_err(oracle_error)?;
            let kendall_opt = if s.metric_enabled(Metric::Kendall) {
                Some(
                    brute_fair_full_opt_guarded(inst, Metric::Kendall, s.oracle_max_d)
                        .map_err(oracle_error)?
                        .1,
                )
            } else {
                None
            };
            let wall_time = start.elapsed();
            let (_, lower_bound) = unconstrained_aggregate(inst.rankings())?;
            Ok(Evaluation {
                name: "oracle".into(),
                chosen: None,
                fair: check_fairness(&ranking, inst.bounds(), inst.groups())?,
                ranking,
                objective: opt,
                kendall_objective: kendall_opt,
                lower_bound,
                certified_ratio: certified_ratio(opt, lower_bound),
                wall_time,
            })
        }
    }
}

fn oracle_error(e: Error) -> CliError {
    match e {
        Error::TooLarge { limit, actual, .. } => CliError::Guard(format!(
            "oracle guard breached: d = {actual} exceeds --oracle-max-d {limit}"
        )),
        other => other.into(),
    }
}

/// Scores a ranking produced elsewhere.
pub fn evaluate_external(inst: &Instance, sigma: Ranking, s: &Settings) -> CliResult<Evaluation> {
    let obj = objective(inst.rankings(), &sigma)?;
    let (_, lower_bound) = unconstrained_aggregate(inst.rankings())?;
    Ok(Evaluation {
        name: "external".into(),
        chosen: None,
        fair: check_fairness(&sigma, inst.bounds(), inst.groups())?,
        kendall_objective: kendall(inst, &sigma, s)?,
        objective: obj,
        lower_bound,
        certified_ratio: certified_ratio(obj, lower_bound),
        wall_time: Duration::ZERO,
        ranking: sigma,
    })
}
