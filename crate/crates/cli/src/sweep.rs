//! Sweeps over `k`, `n` and `d`.
//!
//! Subsets are prefixes of one seed-determined order of the rankings and
//! one of the candidates, so a larger point always contains a smaller one.
//! After subsetting, candidate ids are remapped densely (keeping their
//! original relative order), empty groups are dropped, and the fairness
//! parameters are re-derived.

use fairagg_core::{GroupAssignment, Instance, Ranking};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Settings;
use crate::data::Dataset;
use crate::error::{CliError, CliResult};
use crate::eval::{evaluate, wall_ms};

/// Seed-determined orders of rankings and candidates.
#[derive(Debug, Clone)]
pub struct CanonicalOrder {
    pub rankings: Vec<usize>,
    pub candidates: Vec<usize>,
}

impl CanonicalOrder {
    pub fn new(n: usize, d: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rankings: Vec<usize> = (0..n).collect();
        rankings.shuffle(&mut rng);
        let mut candidates: Vec<usize> = (0..d).collect();
        candidates.shuffle(&mut rng);
        Self { rankings, candidates }
    }
}

/// A dataset restricted to some rankings and candidates, with the indices
/// of the original groups that survived.
#[derive(Debug, Clone)]
pub struct Subset {
    pub data: Dataset,
    pub kept_groups: Vec<usize>,
}

/// Keeps rankings `ranking_idx` (in that order) over candidates
/// `candidate_idx`.
pub fn restrict(data: &Dataset, ranking_idx: &[usize], candidate_idx: &[usize]) -> CliResult<Subset> {
    let mut keep: Vec<usize> = candidate_idx.to_vec();
    keep.sort_unstable();
    let mut new_id = vec![usize::MAX; data.d()];
    for (i, &c) in keep.iter().enumerate() {
        new_id[c] = i;
    }
    // Surviving groups, in original label order.
    let mut by_label: Vec<usize> = keep.iter().map(|&c| data.group_of[c]).collect();
    by_label.sort_unstable();
    by_label.dedup();
    let mut group_map = vec![usize::MAX; data.group_labels.len()];
    for (new, &old) in by_label.iter().enumerate() {
        group_map[old] = new;
    }
    let group_of = keep.iter().map(|&c| group_map[data.group_of[c]]).collect();
    let rankings = ranking_idx
        .iter()
        .map(|&r| {
            let order: Vec<usize> = data.rankings[r]
                .order()
                .into_iter()
                .filter(|&c| new_id[c] != usize::MAX)
                .map(|c| new_id[c])
                .collect();
            Ranking::from_order(&order).map_err(CliError::from)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Subset {
        data: Dataset {
            candidate_ids: keep.iter().map(|&c| data.candidate_ids[c].clone()).collect(),
            group_labels: by_label.iter().map(|&g| data.group_labels[g].clone()).collect(),
            group_of,
            rankings,
        },
        kept_groups: by_label,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    K,
    N,
    D,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::K => "k",
            SweepVar::N => "n",
            SweepVar::D => "d",
        }
    }
}

/// One CSV row.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub sweep_var: &'static str,
    pub value: usize,
    pub algorithm: String,
    pub objective: u64,
    pub kendall_objective: Option<u64>,
    pub certified_ratio: Option<String>,
    pub wall_ms: f64,
}

fn instance_for(subset: &Subset, k: usize, s: &Settings) -> CliResult<Instance> {
    let groups = GroupAssignment::new(subset.data.group_of.clone(), subset.data.group_labels.len())?;
    let fairness = s.fairness.resolve(&groups, k, Some(&subset.kept_groups))?;
    Ok(Instance::new(subset.data.rankings.clone(), groups, fairness)?)
}

fn run_point(data: &Dataset, order: &CanonicalOrder, var: SweepVar, value: usize, s: &Settings) -> CliResult<Vec<Row>> {
    let all_rankings: Vec<usize> = (0..data.n()).collect();
    let all_candidates: Vec<usize> = (0..data.d()).collect();
    let (inst, label) = match var {
        SweepVar::K => {
            let subset = restrict(data, &all_rankings, &all_candidates)?;
            if value > data.d() {
                return Err(CliError::Input(format!("sweep k = {value} exceeds d = {}", data.d())));
            }
            (instance_for(&subset, value, s)?, value)
        }
        SweepVar::N => {
            if value == 0 || value > data.n() {
                return Err(CliError::Input(format!("sweep n = {value} outside 1..={}", data.n())));
            }
            let subset = restrict(data, &order.rankings[..value], &all_candidates)?;
            let k = s.k.resolve(subset.data.d())?;
            (instance_for(&subset, k, s)?, value)
        }
        SweepVar::D => {
            if value == 0 || value > data.d() {
                return Err(CliError::Input(format!("sweep d = {value} outside 1..={}", data.d())));
            }
            let subset = restrict(data, &all_rankings, &order.candidates[..value])?;
            let k = s.k.resolve(value)?;
            (instance_for(&subset, k, s)?, value)
        }
    };
    s.algorithms
        .iter()
        .map(|&alg| {
            let e = evaluate(&inst, alg, s)?;
            Ok(Row {
                sweep_var: var.name(),
                value: label,
                algorithm: e.name,
                objective: e.objective,
                kendall_objective: e.kendall_objective,
                certified_ratio: e.certified_ratio.map(fairagg_core::rational::format_rational),
                wall_ms: wall_ms(e.wall_time, s.record_timing),
            })
        })
        .collect()
}

/// Sweep points in output order: all `k` values, then `n`, then `d`.
pub fn points(s: &Settings) -> Vec<(SweepVar, usize)> {
    let mut pts = Vec::new();
    let k_list = match (&s.sweep.k, &s.k) {
        (Some(ks), _) => ks.clone(),
        (None, crate::config::KPolicy::List(ks)) => ks.clone(),
        _ => Vec::new(),
    };
    pts.extend(k_list.into_iter().map(|v| (SweepVar::K, v)));
    pts.extend(s.sweep.n.iter().flatten().map(|&v| (SweepVar::N, v)));
    pts.extend(s.sweep.d.iter().flatten().map(|&v| (SweepVar::D, v)));
    pts
}

/// Evaluates every point in parallel; rows come back in point order.
pub fn run_sweep(data: &Dataset, s: &Settings) -> CliResult<Vec<Row>> {
    let pts = points(s);
    if pts.is_empty() {
        return Err(CliError::Input(
            "nothing to sweep: give a k list or a \"sweep\" object in the config".into(),
        ));
    }
    let order = CanonicalOrder::new(data.n(), data.d(), s.seed);
    let chunks: Vec<Vec<Row>> = pts
        .par_iter()
        .map(|&(var, value)| run_point(data, &order, var, value, s))
        .collect::<CliResult<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

pub fn to_csv(rows: &[Row]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Input(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Input(format!("csv: {e}")))
}
