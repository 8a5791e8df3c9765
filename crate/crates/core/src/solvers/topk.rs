use std::ops::RangeInclusive;

use super::weights::{build_weights, WeightKind};
use crate::error::{Error, Result};
use crate::flow::{solve_min_cost_flow, FlowNetwork};
use crate::metrics::Direction;
use crate::model::{CountBounds, GroupAssignment, Ranking, Side, TopKList};

/// Places exactly `|positions|` candidates on `positions` so that per-group
/// counts respect `bounds`, minimizing `Σ cost(c, pos)`.
///
/// Flow layout: source → group gate `[lower_a, upper_a]` → candidate (cap 1)
/// → position (cost) → sink (cap 1).
fn place(
    groups: &GroupAssignment,
    bounds: &CountBounds,
    positions: RangeInclusive<usize>,
    side: Side,
    cost: impl Fn(usize, usize) -> i64,
) -> Result<TopKList> {
    let d = groups.d();
    let g = groups.g();
    let k = positions.clone().count();
    let first = *positions.start();
    let source = 0;
    let gate = |a: usize| 1 + a;
    let cand = |c: usize| 1 + g + c;
    let slot = |j: usize| 1 + g + d + (j - first);
    let sink = 1 + g + d + k;

    let mut net = FlowNetwork::new(sink + 1, source, sink, k as i64);
    for a in 0..g {
        net.add_arc(source, gate(a), bounds.lower[a] as i64, bounds.upper[a] as i64, 0);
    }
    for c in 0..d {
        net.add_arc(gate(groups.group(c)), cand(c), 0, 1, 0);
    }
    let mut placement_arcs = Vec::with_capacity(d * k);
    for c in 0..d {
        for j in positions.clone() {
            let e = net.add_arc(cand(c), slot(j), 0, 1, cost(c, j));
            placement_arcs.push((e, c, j));
        }
    }
    for j in positions.clone() {
        net.add_arc(slot(j), sink, 0, 1, 0);
    }

    let sol = solve_min_cost_flow(&net).map_err(|e| match e {
        Error::Infeasible => Error::InfeasibleBounds(format!(
            "no {} placement of {k} candidates meets lower {:?} / upper {:?}",
            side.name(),
            bounds.lower,
            bounds.upper
        )),
        other => other,
    })?;
    let mut pos_of = vec![None; d];
    for (e, c, j) in placement_arcs {
        debug_assert!(sol.flow[e] == 0 || sol.flow[e] == 1);
        if sol.flow[e] == 1 {
            pos_of[c] = Some(j);
        }
    }
    TopKList::from_positions(d, side, pos_of)
}

fn check_bounds(s: &[Ranking], groups: &GroupAssignment, bounds: &CountBounds) -> Result<usize> {
    let d = groups.d();
    if let Some(r) = s.iter().find(|r| r.d() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: r.d(),
        });
    }
    if bounds.g() != groups.g() || bounds.upper.len() != groups.g() {
        return Err(Error::DimensionMismatch {
            expected: groups.g(),
            found: bounds.g(),
        });
    }
    if bounds.k > d {
        return Err(Error::InfeasibleBounds(format!("k = {} exceeds d = {d}", bounds.k)));
    }
    Ok(d)
}

/// Optimal fair top-`k` list under the generalized footrule.
///
/// Returns the list and `Σ_π F(π, τ)`. Placement arcs are costed
/// `w[i][j] - w[i][k+1]`; the constant `Σ_i w[i][k+1]` is added back to
/// the reported objective.
pub fn fair_topk_exact(
    s: &[Ranking],
    groups: &GroupAssignment,
    bounds: &CountBounds,
) -> Result<(TopKList, u64)> {
    check_bounds(s, groups, bounds)?;
    if bounds.side != Side::Top {
        return Err(Error::WrongSide {
            expected: "top",
            found: bounds.side.name(),
        });
    }
    let k = bounds.k;
    let d = groups.d();
    let w = build_weights(s, k, WeightKind::ExactTopK);
    let tau = place(groups, bounds, 1..=k, Side::Top, |c, j| w.get(c, j) - w.get(c, k + 1))?;
    let base: i64 = (0..d).map(|c| w.get(c, k + 1)).sum();
    let placed: i64 = tau
        .entries()
        .iter()
        .map(|&(c, j)| w.get(c, j) - w.get(c, k + 1))
        .sum();
    Ok((tau, (base + placed) as u64))
}

/// Constrained list minimizing a directional displacement cost.
///
/// `Leftward` fills the top `bounds.k` positions with leftward weights;
/// `Rightward` fills the bottom `bounds.k` positions with rightward
/// weights. Returns the list and its weight sum.
pub fn solve_constrained_side(
    s: &[Ranking],
    groups: &GroupAssignment,
    bounds: &CountBounds,
    kind: Direction,
) -> Result<(TopKList, u64)> {
    let d = check_bounds(s, groups, bounds)?;
    let (side, weight_kind, split) = match kind {
        Direction::Leftward => (Side::Top, WeightKind::Leftward, bounds.k),
        Direction::Rightward => (Side::Bottom, WeightKind::Rightward, d - bounds.k),
    };
    if bounds.side != side {
        return Err(Error::WrongSide {
            expected: side.name(),
            found: bounds.side.name(),
        });
    }
    let w = build_weights(s, split, weight_kind);
    let tau = place(groups, bounds, w.positions(), side, |c, j| w.get(c, j))?;
    let cost: i64 = tau.entries().iter().map(|&(c, j)| w.get(c, j)).sum();
    Ok((tau, cost as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::objective;
    use crate::model::{derive_complement_bounds, derive_topk_bounds, FairnessSpec};

    fn e1() -> (Vec<Ranking>, GroupAssignment, FairnessSpec) {
        (
            vec![
                Ranking::identity(4),
                Ranking::from_ranks(vec![2, 1, 4, 3]).unwrap(),
            ],
            GroupAssignment::new(vec![0, 0, 1, 1], 2).unwrap(),
            FairnessSpec::parse(2, &["1/2", "1/2"], &["1/2", "1/2"]).unwrap(),
        )
    }

    #[test]
    fn exact_topk_on_e1() {
        let (s, g, f) = e1();
        let b = derive_topk_bounds(&f, &g).unwrap();
        let (tau, obj) = fair_topk_exact(&s, &g, &b).unwrap();
        assert_eq!(obj, 8);
        assert_eq!(objective(&s, &tau).unwrap(), 8);

        let vac = CountBounds::vacuous(&g, 2);
        let (tau, obj) = fair_topk_exact(&s, &g, &vac).unwrap();
        assert_eq!(obj, 4);
        assert_eq!(tau.domain(), vec![0, 1]);
    }

    #[test]
    fn exact_topk_single_ranking() {
        let s = vec![Ranking::identity(4)];
        let g = GroupAssignment::new(vec![0, 0, 1, 1], 2).unwrap();
        let (tau, obj) = fair_topk_exact(&s, &g, &CountBounds::vacuous(&g, 2)).unwrap();
        assert_eq!(obj, 1);
        assert_eq!(tau.entries(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn leftward_side_on_e1() {
        let (s, g, f) = e1();
        let b = derive_topk_bounds(&f, &g).unwrap();
        let (tau, cost) = solve_constrained_side(&s, &g, &b, Direction::Leftward).unwrap();
        assert_eq!(cost, 8);
        assert_eq!(tau.entries(), vec![(0, 1), (2, 2)]);
    }

    #[test]
    fn rightward_side_on_e1() {
        let (s, g, f) = e1();
        let b = derive_complement_bounds(&f, &g).unwrap();
        let (tau, cost) = solve_constrained_side(&s, &g, &b, Direction::Rightward).unwrap();
        assert_eq!(tau.side(), Side::Bottom);
        assert_eq!(tau.first_position(), 3);
        // Minimum over the 8 placements of one candidate per group on {3, 4}.
        let w = build_weights(&s, 2, WeightKind::Rightward);
        let mut best = i64::MAX;
        for a in [0, 1] {
            for b in [2, 3] {
                best = best.min(w.get(a, 3) + w.get(b, 4)).min(w.get(b, 3) + w.get(a, 4));
            }
        }
        assert_eq!(cost as i64, best);
        let counts = crate::model::group_counts(&tau, &g, 3..=4);
        assert_eq!(counts, vec![1, 1]);
    }

    #[test]
    fn side_mismatch_is_rejected() {
        let (s, g, f) = e1();
        let b = derive_topk_bounds(&f, &g).unwrap();
        assert!(matches!(
            solve_constrained_side(&s, &g, &b, Direction::Rightward),
            Err(Error::WrongSide { .. })
        ));
        let b = derive_complement_bounds(&f, &g).unwrap();
        assert!(matches!(fair_topk_exact(&s, &g, &b), Err(Error::WrongSide { .. })));
    }

    #[test]
    fn empty_bottom_side() {
        let (s, g, _) = e1();
        let f = FairnessSpec::vacuous(2, 4).unwrap();
        let b = derive_complement_bounds(&f, &g).unwrap();
        let (tau, cost) = solve_constrained_side(&s, &g, &b, Direction::Rightward).unwrap();
        assert_eq!((tau.k(), cost), (0, 0));
    }
}
