//! Exhaustive reference solvers for small instances.
//!
//! Every function enumerates its whole search space and keeps the first
//! optimum in lexicographic order of the enumerated candidate sequences.
//! Size guards return [`Error::TooLarge`] instead of running for hours.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hardness::{CnfFormula, FairMatchingInstance, Satisfiability};
use crate::metrics::{directional_objective, objective, Direction, DirectionalObjectiveSpec, Metric};
use crate::model::{CountBounds, GroupAssignment, Instance, Ranking, Side, TopKList};

/// Default largest `d` for permutation enumeration.
pub const ORACLE_MAX_D: usize = 9;
/// Largest `|V|` for [`brute_fair_matching`].
pub const MATCHING_MAX_VERTICES: usize = 9;
/// Largest variable count for [`brute_sat`].
pub const SAT_MAX_VARS: usize = 20;

fn guard(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        return Err(Error::TooLarge {
            what,
            limit,
            actual,
        });
    }
    Ok(())
}

fn counts_ok(members: &[usize], groups: &GroupAssignment, bounds: &CountBounds) -> bool {
    let mut counts = vec![0usize; groups.g()];
    for &c in members {
        counts[groups.group(c)] += 1;
    }
    bounds.admits(&counts)
}

/// Fair full ranking minimizing `metric` summed over the inputs.
pub fn brute_fair_full_opt(inst: &Instance, metric: Metric) -> Result<(Ranking, u64)> {
    brute_fair_full_opt_guarded(inst, metric, ORACLE_MAX_D)
}

pub fn brute_fair_full_opt_guarded(
    inst: &Instance,
    metric: Metric,
    max_d: usize,
) -> Result<(Ranking, u64)> {
    let d = inst.d();
    guard("d", d, max_d)?;
    let k = inst.k();
    let mut best: Option<(u64, Ranking)> = None;
    for order in (0..d).permutations(d) {
        if !counts_ok(&order[..k], inst.groups(), inst.bounds()) {
            continue;
        }
        let sigma = Ranking::from_order(&order)?;
        let value = metric.objective(inst.rankings(), &sigma)?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, sigma));
        }
    }
    best.map(|(v, r)| (r, v)).ok_or(Error::Infeasible)
}

/// Fair top-`k` list minimizing the generalized footrule objective.
pub fn brute_fair_topk_opt(inst: &Instance) -> Result<(TopKList, u64)> {
    let d = inst.d();
    guard("d", d, ORACLE_MAX_D)?;
    let k = inst.k();
    let mut best: Option<(u64, TopKList)> = None;
    for order in (0..d).permutations(k) {
        if !counts_ok(&order, inst.groups(), inst.bounds()) {
            continue;
        }
        let entries: Vec<(usize, usize)> =
            order.iter().enumerate().map(|(j, &c)| (c, j + 1)).collect();
        let tau = TopKList::top(d, &entries)?;
        let value = objective(inst.rankings(), &tau)?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, tau));
        }
    }
    best.map(|(v, t)| (t, v)).ok_or(Error::Infeasible)
}

/// Footrule median over all `d!` rankings.
pub fn brute_unconstrained(s: &[Ranking]) -> Result<(Ranking, u64)> {
    let d = s
        .first()
        .ok_or_else(|| Error::InvalidRanking("the ranking set is empty".into()))?
        .d();
    guard("d", d, ORACLE_MAX_D)?;
    let mut best: Option<(u64, Ranking)> = None;
    for order in (0..d).permutations(d) {
        let sigma = Ranking::from_order(&order)?;
        let value = objective(s, &sigma)?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, sigma));
        }
    }
    Ok(best.map(|(v, r)| (r, v)).expect("d! >= 1"))
}

/// Fair ranking at minimum footrule distance from `pi`, with its distance.
pub fn brute_closest_fair_ranking(
    pi: &Ranking,
    bounds: &CountBounds,
    groups: &GroupAssignment,
) -> Result<(Ranking, u64)> {
    let d = pi.d();
    guard("d", d, ORACLE_MAX_D)?;
    let mut best: Option<(u64, Ranking)> = None;
    for order in (0..d).permutations(d) {
        if !counts_ok(&order[..bounds.k], groups, bounds) {
            continue;
        }
        let sigma = Ranking::from_order(&order)?;
        let value = crate::metrics::footrule(pi, &sigma)?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, sigma));
        }
    }
    best.map(|(v, r)| (r, v)).ok_or(Error::Infeasible)
}

/// Minimum directional weight of a constrained list, enumerating every
/// ordered choice of `bounds.k` candidates.
///
/// `Leftward` fills positions `1..=k` (top bounds) and charges
/// `2 Σ_π (π(i) - j)` when positive; `Rightward` fills `d-k+1..=d` (bottom
/// bounds) and charges `2 Σ_π (j - π(i))` when positive.
pub fn brute_constrained_side(
    s: &[Ranking],
    groups: &GroupAssignment,
    bounds: &CountBounds,
    direction: Direction,
) -> Result<(TopKList, u64)> {
    let d = groups.d();
    guard("d", d, ORACLE_MAX_D)?;
    let k = bounds.k;
    let (side, first) = match direction {
        Direction::Leftward => (Side::Top, 1),
        Direction::Rightward => (Side::Bottom, d - k + 1),
    };
    if bounds.side != side {
        return Err(Error::WrongSide {
            expected: side.name(),
            found: bounds.side.name(),
        });
    }
    let mut best: Option<(u64, TopKList)> = None;
    for chosen in (0..d).permutations(k) {
        if !counts_ok(&chosen, groups, bounds) {
            continue;
        }
        let entries: Vec<(usize, usize)> =
            chosen.iter().enumerate().map(|(j, &c)| (c, first + j)).collect();
        let mut value = 0u64;
        for pi in s {
            for &(c, j) in &entries {
                let p = pi.rank(c);
                value += 2 * match direction {
                    Direction::Leftward => p.saturating_sub(j),
                    Direction::Rightward => j.saturating_sub(p),
                } as u64;
            }
        }
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, TopKList::new(d, side, &entries)?));
        }
    }
    best.map(|(v, t)| (t, v)).ok_or(Error::Infeasible)
}

/// Cheapest extension of `partial` to a full ranking, scored by the
/// directional objective over the unplaced candidates (leftward for a top
/// list, rightward for a bottom list).
pub fn brute_completion(s: &[Ranking], partial: &TopKList) -> Result<(Ranking, u64)> {
    let d = partial.d();
    guard("d", d, ORACLE_MAX_D)?;
    let free: Vec<usize> = (0..d).filter(|&c| partial.position(c).is_none()).collect();
    let positions: Vec<usize> = match partial.side() {
        Side::Top => (partial.k() + 1..=d).collect(),
        Side::Bottom => (1..=d - partial.k()).collect(),
    };
    let direction = match partial.side() {
        Side::Top => Direction::Leftward,
        Side::Bottom => Direction::Rightward,
    };
    let spec = DirectionalObjectiveSpec::new(direction, free.clone());
    let mut best: Option<(u64, Ranking)> = None;
    for perm in free.iter().copied().permutations(free.len()) {
        let mut rank_of: Vec<usize> = partial.positions().iter().map(|p| p.unwrap_or(0)).collect();
        for (&c, &p) in perm.iter().zip(&positions) {
            rank_of[c] = p;
        }
        let sigma = Ranking::from_ranks(rank_of)?;
        let value = directional_objective(s, &sigma, &spec)?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, sigma));
        }
    }
    Ok(best.map(|(v, r)| (r, v)).expect("at least one permutation"))
}

/// Maximum-value fair perfect matching over all `|V|!` matchings.
///
/// Returns the value and `right_of_left`, or [`Error::Infeasible`] when no
/// perfect matching is fair.
pub fn brute_fair_matching(inst: &FairMatchingInstance) -> Result<(i64, Vec<usize>)> {
    inst.validate()?;
    let n = inst.size();
    guard("|V|", n, MATCHING_MAX_VERTICES)?;
    let mut best: Option<(i64, Vec<usize>)> = None;
    for m in (0..n).permutations(n) {
        if !inst.is_fair(&m) {
            continue;
        }
        let value = inst.value(&m);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, m));
        }
    }
    best.ok_or(Error::Infeasible)
}

/// Truth-table satisfiability check.
pub fn brute_sat(f: &CnfFormula) -> Result<Satisfiability> {
    let n = f.num_vars();
    guard("variables", n, SAT_MAX_VARS)?;
    let mut assignment = vec![false; n];
    for mask in 0u32..(1 << n) {
        for (v, a) in assignment.iter_mut().enumerate() {
            *a = mask >> v & 1 == 1;
        }
        if f.evaluate(&assignment) {
            return Ok(Satisfiability::Sat);
        }
    }
    Ok(Satisfiability::Unsat)
}
