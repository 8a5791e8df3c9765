use std::collections::BTreeMap;
use std::path::Path;

use fairagg_core::hardness::{decide_33sat_via_matching, reduce_33sat, CnfFormula, FairMatchingInstance};
use fairagg_core::metrics::Metric;
use fairagg_core::oracle::{brute_fair_full_opt_guarded, brute_sat};
use fairagg_core::rational::format_rational;
use fairagg_core::solvers::{aggregate, Variant};
use fairagg_core::synthetic::{generate, RankingModel};
use fairagg_core::{check_fairness, FairnessSpec, Instance, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Algorithm, Settings};
use crate::data::{self, Dataset};
use crate::error::{CliError, CliResult};
use crate::eval::{evaluate, evaluate_external, Record};
use crate::sweep::{run_sweep, to_csv};

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(format!("json: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn load(s: &Settings) -> CliResult<Dataset> {
    let (r, g) = s.dataset_paths()?;
    data::load(r, g)
}

fn build_instance(data: &Dataset, s: &Settings) -> CliResult<Instance> {
    let groups = data.groups()?;
    let k = s.k.resolve(data.d())?;
    let fairness = s.fairness.resolve(&groups, k, None)?;
    Ok(Instance::new(data.rankings.clone(), groups, fairness)?)
}

#[derive(Debug, Serialize)]
struct GroupSummary {
    label: String,
    size: usize,
    lower: usize,
    upper: usize,
}

#[derive(Debug, Serialize)]
struct AggregateReport {
    d: usize,
    n: usize,
    k: usize,
    groups: Vec<GroupSummary>,
    results: BTreeMap<String, Record>,
}

pub fn aggregate_cmd(s: &Settings) -> CliResult<()> {
    let data = load(s)?;
    let inst = build_instance(&data, s)?;
    let mut results = BTreeMap::new();
    for &alg in &s.algorithms {
        let e = evaluate(&inst, alg, s)?;
        results.insert(e.name.clone(), e.record(data.labels(&e.ranking), s.record_timing));
    }
    if let Some(path) = &s.external {
        let sigma = data::read_rankings(path, &data.candidate_ids)?;
        if sigma.len() != 1 {
            return Err(CliError::Input(format!(
                "{}: expected exactly one ranking, found {}",
                path.display(),
                sigma.len()
            )));
        }
        let e = evaluate_external(&inst, sigma.into_iter().next().unwrap(), s)?;
        results.insert(e.name.clone(), e.record(data.labels(&e.ranking), s.record_timing));
    }
    let b = inst.bounds();
    let report = AggregateReport {
        d: inst.d(),
        n: inst.n(),
        k: inst.k(),
        groups: data
            .group_labels
            .iter()
            .enumerate()
            .map(|(a, label)| GroupSummary {
                label: label.clone(),
                size: inst.groups().sizes()[a],
                lower: b.lower[a],
                upper: b.upper[a],
            })
            .collect(),
        results,
    };
    data::emit(s.out.as_deref(), &to_json(&report)?)
}

pub fn sweep_cmd(s: &Settings) -> CliResult<()> {
    let data = load(s)?;
    let rows = run_sweep(&data, s)?;
    data::emit(s.out.as_deref(), &to_csv(&rows)?)
}

pub struct GenArgs {
    pub d: usize,
    pub n: usize,
    pub g: usize,
    pub seed: u64,
    pub model: RankingModel,
}

/// Writes `rankings.csv` and `groups.csv` into `dir`.
pub fn gen_cmd(args: &GenArgs, dir: &Path) -> CliResult<()> {
    let data = generate(args.d, args.n, args.g, args.seed, args.model)?;
    let rows: Vec<Vec<String>> = data
        .rankings
        .iter()
        .map(|r| r.order().into_iter().map(|c| c.to_string()).collect())
        .collect();
    data::write_rankings(&dir.join("rankings.csv"), &rows)?;
    let groups: Vec<(String, String)> = data
        .groups
        .group_of()
        .iter()
        .enumerate()
        .map(|(c, g)| (c.to_string(), g.to_string()))
        .collect();
    data::write_groups(&dir.join("groups.csv"), &groups)
}

#[derive(Debug, Serialize)]
struct CheckRow {
    instance: usize,
    d: usize,
    n: usize,
    k: usize,
    algorithm: String,
    objective: u64,
    optimum: u64,
    ratio: Option<String>,
    /// Guaranteed factor, if any.
    bound: Option<u64>,
    fair: bool,
    ok: bool,
}

#[derive(Debug, Serialize)]
struct CheckReport {
    instances: usize,
    checks: usize,
    failures: usize,
    rows: Vec<CheckRow>,
}

pub struct RandomSuite {
    pub count: usize,
    pub max_d: usize,
    pub max_n: usize,
    pub max_g: usize,
}

fn random_instances(suite: &RandomSuite, seed: u64) -> CliResult<Vec<Instance>> {
    if suite.max_d < 2 || suite.max_n == 0 || suite.max_g == 0 {
        return Err(CliError::Input("need --max-d >= 2, --max-n >= 1, --max-g >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..suite.count)
        .map(|_| {
            let d = rng.random_range(2..=suite.max_d);
            let g = rng.random_range(1..=suite.max_g.min(d));
            let n = rng.random_range(1..=suite.max_n);
            let k = rng.random_range(1..=d);
            let model = if rng.random_bool(0.5) {
                RankingModel::Uniform
            } else {
                RankingModel::Mallows { theta: 0.5 }
            };
            let data = generate(d, n, g, rng.random(), model)?;
            let fairness = FairnessSpec::proportional(&data.groups, k)?;
            Ok(Instance::new(data.rankings, data.groups, fairness)?)
        })
        .collect()
}

/// Compares every selected solver against the exhaustive optimum: the
/// fair pipelines within 2x, the baseline within 3x, the median at most
/// the optimum, and every fair variant's output fair.
pub fn oracle_check_cmd(s: &Settings, random: Option<RandomSuite>) -> CliResult<()> {
    let instances = match random {
        Some(suite) => random_instances(&suite, s.seed)?,
        None => vec![build_instance(&load(s)?, s)?],
    };
    let mut rows = Vec::new();
    for (i, inst) in instances.iter().enumerate() {
        let (_, opt) = brute_fair_full_opt_guarded(inst, Metric::Footrule, s.oracle_max_d).map_err(|e| match e {
            fairagg_core::Error::TooLarge { limit, actual, .. } => {
                CliError::Guard(format!("oracle guard breached: d = {actual} exceeds --oracle-max-d {limit}"))
            }
            other => other.into(),
        })?;
        for &alg in &s.algorithms {
            let Algorithm::Solver(v) = alg else { continue };
            let res = aggregate(inst, v)?;
            let fair = check_fairness(&res.ranking, inst.bounds(), inst.groups())?;
            let bound = match v {
                Variant::Alg1 | Variant::Alg2 | Variant::Alg3 => Some(2),
                Variant::Bfi => Some(3),
                Variant::Unconstrained => None,
            };
            let ok = match bound {
                Some(f) => fair && res.objective >= opt && res.objective <= f * opt,
                None => res.objective <= opt,
            };
            rows.push(CheckRow {
                instance: i,
                d: inst.d(),
                n: inst.n(),
                k: inst.k(),
                algorithm: v.name().into(),
                objective: res.objective,
                optimum: opt,
                ratio: (opt > 0).then(|| format_rational(Rational::new(res.objective as i64, opt as i64))),
                bound,
                fair,
                ok,
            });
        }
    }
    let failures = rows.iter().filter(|r| !r.ok).count();
    let report = CheckReport {
        instances: instances.len(),
        checks: rows.len(),
        failures,
        rows,
    };
    data::emit(s.out.as_deref(), &to_json(&report)?)?;
    if failures > 0 {
        return Err(CliError::Check(format!("{failures} of {} oracle checks failed", report.checks)));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ReductionReport<'a> {
    num_vars: usize,
    num_clauses: usize,
    clauses: &'a [Vec<i32>],
    target: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    decision: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    truth_table: Option<String>,
    instance: &'a FairMatchingInstance,
}

pub fn reduce_sat_cmd(formula: &Path, out: Option<&Path>, decide: bool) -> CliResult<()> {
    let text = if formula == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Input(format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(formula).map_err(|e| CliError::io(formula, e))?
    };
    let f = CnfFormula::parse_dimacs(&text)?;
    let inst = reduce_33sat(&f)?;
    let (decision, truth_table) = if decide {
        (
            Some(decide_33sat_via_matching(&f)?.to_string()),
            Some(brute_sat(&f)?.to_string()),
        )
    } else {
        (None, None)
    };
    let report = ReductionReport {
        num_vars: f.num_vars(),
        num_clauses: f.num_clauses(),
        clauses: f.clauses(),
        target: inst.target,
        decision,
        truth_table,
        instance: &inst,
    };
    data::emit(out, &to_json(&report)?)
}
