use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use super::completion::complete_list;
use super::topk::solve_constrained_side;
use crate::error::{Error, Result};
use crate::flow::{solve_assignment, AssignmentProblem};
use crate::metrics::{objective, Direction};
use crate::model::{Instance, Ranking};
use crate::Rational;

/// Aggregation method that produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Fair leftward top-k, then leftward completion.
    Alg1,
    /// Fair rightward bottom-(d-k), then rightward completion.
    Alg2,
    /// Better of `Alg1` and `Alg2`.
    Alg3,
    /// Best closest-fair-ranking of any single input.
    Bfi,
    /// Exact footrule median, ignoring fairness.
    Unconstrained,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Alg1,
        Variant::Alg2,
        Variant::Alg3,
        Variant::Bfi,
        Variant::Unconstrained,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Alg1 => "alg1",
            Variant::Alg2 => "alg2",
            Variant::Alg3 => "alg3",
            Variant::Bfi => "bfi",
            Variant::Unconstrained => "unconstrained",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm {s:?}")))
    }
}

/// Output of one aggregation run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregationResult {
    pub variant: Variant,
    /// For `Alg3`, the branch whose ranking was returned; otherwise `variant`.
    pub chosen: Variant,
    pub ranking: Ranking,
    pub objective: u64,
    /// Unconstrained optimum, a lower bound on the fair optimum.
    pub lower_bound: u64,
    /// `objective / lower_bound`; `None` when the bound is 0 but the
    /// objective is not.
    pub certified_ratio: Option<Rational>,
    pub wall_time: Duration,
}

/// `objective / lower_bound`, or `None` when only the bound is zero.
pub fn certified_ratio(objective: u64, lower_bound: u64) -> Option<Rational> {
    match (objective, lower_bound) {
        (0, 0) => Some(Rational::from_integer(1)),
        (_, 0) => None,
        (o, l) => Some(Rational::new(o as i64, l as i64)),
    }
}

pub(crate) fn finish(
    variant: Variant,
    chosen: Variant,
    ranking: Ranking,
    s: &[Ranking],
    lower_bound: u64,
    wall_time: Duration,
) -> Result<AggregationResult> {
    let objective = objective(s, &ranking)?;
    Ok(AggregationResult {
        variant,
        chosen,
        certified_ratio: certified_ratio(objective, lower_bound),
        ranking,
        objective,
        lower_bound,
        wall_time,
    })
}

/// Exact footrule median: a `d × d` assignment with cost
/// `Σ_π |π(i) - j|`.
pub fn unconstrained_aggregate(s: &[Ranking]) -> Result<(Ranking, u64)> {
    let d = s
        .first()
        .ok_or_else(|| Error::InvalidRanking("the ranking set is empty".into()))?
        .d();
    if let Some(r) = s.iter().find(|r| r.d() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: r.d(),
        });
    }
    let problem = AssignmentProblem::from_fn(d, |c, col| {
        let j = col as i64 + 1;
        s.iter().map(|pi| (pi.rank(c) as i64 - j).abs()).sum()
    });
    let m = solve_assignment(&problem);
    let ranking = Ranking::from_ranks(m.col_of_row.iter().map(|&j| j + 1).collect())?;
    Ok((ranking, m.cost as u64))
}

fn alg1_ranking(inst: &Instance) -> Result<Ranking> {
    let (tau, _) = solve_constrained_side(
        inst.rankings(),
        inst.groups(),
        inst.bounds(),
        Direction::Leftward,
    )?;
    complete_list(inst.rankings(), &tau)
}

fn alg2_ranking(inst: &Instance) -> Result<Ranking> {
    let bounds = inst.complement_bounds();
    let (tau, _) =
        solve_constrained_side(inst.rankings(), inst.groups(), &bounds, Direction::Rightward)?;
    complete_list(inst.rankings(), &tau)
}

fn run(
    inst: &Instance,
    variant: Variant,
    f: impl FnOnce(&Instance) -> Result<Ranking>,
) -> Result<AggregationResult> {
    let start = Instant::now();
    let ranking = f(inst)?;
    let elapsed = start.elapsed();
    let (_, lower_bound) = unconstrained_aggregate(inst.rankings())?;
    finish(variant, variant, ranking, inst.rankings(), lower_bound, elapsed)
}

/// Fair top-`k` by leftward cost, then the optimal leftward completion.
pub fn aggregate_alg1(inst: &Instance) -> Result<AggregationResult> {
    run(inst, Variant::Alg1, alg1_ranking)
}

/// Fair bottom-`(d-k)` under the complement bounds by rightward cost, then
/// the optimal rightward completion.
pub fn aggregate_alg2(inst: &Instance) -> Result<AggregationResult> {
    run(inst, Variant::Alg2, alg2_ranking)
}

/// Runs both pipelines and keeps the smaller objective; ties go to `Alg1`.
pub fn aggregate_alg3(inst: &Instance) -> Result<AggregationResult> {
    let start = Instant::now();
    let s = inst.rankings();
    let left = alg1_ranking(inst)?;
    let right = alg2_ranking(inst)?;
    let (ranking, chosen) = if objective(s, &left)? <= objective(s, &right)? {
        (left, Variant::Alg1)
    } else {
        (right, Variant::Alg2)
    };
    let elapsed = start.elapsed();
    let (_, lower_bound) = unconstrained_aggregate(s)?;
    finish(Variant::Alg3, chosen, ranking, s, lower_bound, elapsed)
}

/// [`unconstrained_aggregate`] wrapped as a result; not fair in general.
pub fn aggregate_unconstrained(inst: &Instance) -> Result<AggregationResult> {
    let start = Instant::now();
    let (ranking, lower_bound) = unconstrained_aggregate(inst.rankings())?;
    let elapsed = start.elapsed();
    finish(
        Variant::Unconstrained,
        Variant::Unconstrained,
        ranking,
        inst.rankings(),
        lower_bound,
        elapsed,
    )
}

/// Dispatches on `variant`.
pub fn aggregate(inst: &Instance, variant: Variant) -> Result<AggregationResult> {
    match variant {
        Variant::Alg1 => aggregate_alg1(inst),
        Variant::Alg2 => aggregate_alg2(inst),
        Variant::Alg3 => aggregate_alg3(inst),
        Variant::Bfi => super::bfi::bfi_aggregate(inst),
        Variant::Unconstrained => aggregate_unconstrained(inst),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_fairness, FairnessSpec, GroupAssignment};

    fn e1() -> Instance {
        Instance::new(
            vec![
                Ranking::identity(4),
                Ranking::from_ranks(vec![2, 1, 4, 3]).unwrap(),
            ],
            GroupAssignment::new(vec![0, 0, 1, 1], 2).unwrap(),
            FairnessSpec::parse(2, &["1/2", "1/2"], &["1/2", "1/2"]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn e1_values() {
        let inst = e1();
        for f in [aggregate_alg1, aggregate_alg2, aggregate_alg3] {
            let r = f(&inst).unwrap();
            assert_eq!(r.objective, 8, "{:?}", r.variant);
            assert!(check_fairness(&r.ranking, inst.bounds(), inst.groups()).unwrap());
            assert_eq!(r.lower_bound, 4);
            assert_eq!(r.certified_ratio, Some(Rational::from_integer(2)));
        }
        let r = aggregate_alg1(&inst).unwrap();
        assert_eq!(r.ranking.ranks(), &[1, 3, 2, 4]);
        assert_eq!(aggregate_alg3(&inst).unwrap().chosen, Variant::Alg1);
    }

    #[test]
    fn unconstrained_examples() {
        let pi = Ranking::from_ranks(vec![2, 3, 1]).unwrap();
        assert_eq!(unconstrained_aggregate(std::slice::from_ref(&pi)).unwrap(), (pi.clone(), 0));
        assert_eq!(unconstrained_aggregate(e1().rankings()).unwrap().1, 4);
        let s = vec![pi.clone(), pi.reversed()];
        assert_eq!(unconstrained_aggregate(&s).unwrap().1, 4);
        assert!(unconstrained_aggregate(&[]).is_err());
    }

    #[test]
    fn single_input_with_forced_swap() {
        let inst = Instance::new(
            vec![Ranking::identity(4)],
            GroupAssignment::new(vec![0, 0, 1, 1], 2).unwrap(),
            FairnessSpec::parse(2, &["1/2", "1/2"], &["1/2", "1/2"]).unwrap(),
        )
        .unwrap();
        let r = aggregate_alg1(&inst).unwrap();
        assert_eq!(r.objective, 2);
        assert_eq!(r.certified_ratio, None);
    }

    #[test]
    fn alg2_at_full_k_is_the_median() {
        let inst = e1().with_fairness(FairnessSpec::vacuous(2, 4).unwrap()).unwrap();
        let r = aggregate_alg2(&inst).unwrap();
        assert_eq!(r.objective, 4);
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("alg4".parse::<Variant>().is_err());
    }
}
