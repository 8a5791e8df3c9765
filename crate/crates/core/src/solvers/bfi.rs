use std::time::Instant;

use super::aggregate::{finish, unconstrained_aggregate, AggregationResult, Variant};
use crate::error::{Error, Result};
use crate::metrics::footrule;
use crate::model::{CountBounds, GroupAssignment, Instance, Ranking, Side};

/// Default limit on feasible per-group count vectors.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A fair ranking at minimum footrule distance from `pi`.
pub fn closest_fair_ranking(
    pi: &Ranking,
    bounds: &CountBounds,
    groups: &GroupAssignment,
) -> Result<Ranking> {
    closest_fair_ranking_with_cap(pi, bounds, groups, DEFAULT_ENUMERATION_CAP)
}

/// Enumerates every feasible count vector `(n_a)` with `Σ n_a = k`. For a
/// given vector the best ranking takes the `n_a` best-ranked members of each
/// group into the top `k`, keeping `pi`'s relative order on both sides.
pub fn closest_fair_ranking_with_cap(
    pi: &Ranking,
    bounds: &CountBounds,
    groups: &GroupAssignment,
    cap: usize,
) -> Result<Ranking> {
    let d = groups.d();
    if pi.d() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: pi.d(),
        });
    }
    if bounds.side != Side::Top {
        return Err(Error::WrongSide {
            expected: "top",
            found: bounds.side.name(),
        });
    }
    if bounds.g() != groups.g() || bounds.k > d {
        return Err(Error::InfeasibleBounds(format!(
            "bounds for {} groups and k = {} do not fit d = {d}, g = {}",
            bounds.g(),
            bounds.k,
            groups.g()
        )));
    }
    let order = pi.order();
    // Group members in pi's order.
    let mut by_group: Vec<Vec<usize>> = vec![Vec::new(); groups.g()];
    for &c in &order {
        by_group[groups.group(c)].push(c);
    }
    let lo: Vec<usize> = bounds.lower.clone();
    let hi: Vec<usize> = bounds
        .upper
        .iter()
        .zip(groups.sizes())
        .map(|(&u, &s)| u.min(s))
        .collect();
    // Suffix sums for pruning.
    let g = groups.g();
    let mut lo_suffix = vec![0; g + 1];
    let mut hi_suffix = vec![0; g + 1];
    for a in (0..g).rev() {
        lo_suffix[a] = lo_suffix[a + 1] + lo[a];
        hi_suffix[a] = hi_suffix[a + 1] + hi[a];
    }

    let mut search = Search {
        pi,
        order: &order,
        by_group: &by_group,
        groups,
        lo: &lo,
        hi: &hi,
        lo_suffix: &lo_suffix,
        hi_suffix: &hi_suffix,
        k: bounds.k,
        cap,
        visited: 0,
        counts: vec![0; g],
        best: None,
    };
    search.walk(0, bounds.k)?;
    search
        .best
        .map(|(_, r)| r)
        .ok_or_else(|| Error::InfeasibleBounds("no feasible count vector".into()))
}

struct Search<'a> {
    pi: &'a Ranking,
    order: &'a [usize],
    by_group: &'a [Vec<usize>],
    groups: &'a GroupAssignment,
    lo: &'a [usize],
    hi: &'a [usize],
    lo_suffix: &'a [usize],
    hi_suffix: &'a [usize],
    k: usize,
    cap: usize,
    visited: usize,
    counts: Vec<usize>,
    best: Option<(u64, Ranking)>,
}

impl Search<'_> {
    fn walk(&mut self, a: usize, remaining: usize) -> Result<()> {
        if a == self.counts.len() {
            if remaining == 0 {
                self.visited += 1;
                if self.visited > self.cap {
                    return Err(Error::EnumerationCapExceeded { cap: self.cap });
                }
                self.evaluate()?;
            }
            return Ok(());
        }
        for n in self.lo[a]..=self.hi[a].min(remaining) {
            let rest = remaining - n;
            if rest < self.lo_suffix[a + 1] || rest > self.hi_suffix[a + 1] {
                continue;
            }
            self.counts[a] = n;
            self.walk(a + 1, rest)?;
        }
        Ok(())
    }

    fn evaluate(&mut self) -> Result<()> {
        let d = self.order.len();
        let mut selected = vec![false; d];
        for (a, members) in self.by_group.iter().enumerate() {
            for &c in &members[..self.counts[a]] {
                selected[c] = true;
            }
        }
        let mut rank_of = vec![0; d];
        let (mut top, mut rest) = (1, self.k + 1);
        for &c in self.order {
            if selected[c] {
                rank_of[c] = top;
                top += 1;
            } else {
                rank_of[c] = rest;
                rest += 1;
            }
        }
        debug_assert!(self.groups.d() == d);
        let candidate = Ranking::from_ranks(rank_of)?;
        let dist = footrule(self.pi, &candidate)?;
        if self.best.as_ref().is_none_or(|(b, _)| dist < *b) {
            self.best = Some((dist, candidate));
        }
        Ok(())
    }
}

/// Best-fair-input baseline: the closest fair ranking to each input, keeping
/// the one with the smallest objective (first on ties).
pub fn bfi_aggregate(inst: &Instance) -> Result<AggregationResult> {
    bfi_aggregate_with_cap(inst, DEFAULT_ENUMERATION_CAP)
}

pub fn bfi_aggregate_with_cap(inst: &Instance, cap: usize) -> Result<AggregationResult> {
    let start = Instant::now();
    let s = inst.rankings();
    let mut best: Option<(u64, Ranking)> = None;
    for pi in s {
        let candidate = closest_fair_ranking_with_cap(pi, inst.bounds(), inst.groups(), cap)?;
        let obj = crate::metrics::objective(s, &candidate)?;
        if best.as_ref().is_none_or(|(b, _)| obj < *b) {
            best = Some((obj, candidate));
        }
    }
    let (_, ranking) = best.expect("instances hold at least one ranking");
    let elapsed = start.elapsed();
    let (_, lower_bound) = unconstrained_aggregate(s)?;
    finish(Variant::Bfi, Variant::Bfi, ranking, s, lower_bound, elapsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_fairness, derive_topk_bounds, FairnessSpec};

    fn setup() -> (GroupAssignment, CountBounds) {
        let g = GroupAssignment::new(vec![0, 0, 1, 1], 2).unwrap();
        let f = FairnessSpec::parse(2, &["1/2", "1/2"], &["1/2", "1/2"]).unwrap();
        let b = derive_topk_bounds(&f, &g).unwrap();
        (g, b)
    }

    #[test]
    fn closest_to_identity() {
        let (g, b) = setup();
        let id = Ranking::identity(4);
        let sigma = closest_fair_ranking(&id, &b, &g).unwrap();
        assert_eq!(sigma.ranks(), &[1, 3, 2, 4]);
        assert_eq!(footrule(&id, &sigma).unwrap(), 2);
    }

    #[test]
    fn fair_input_is_its_own_closest() {
        let (g, b) = setup();
        let pi = Ranking::from_ranks(vec![1, 3, 2, 4]).unwrap();
        assert_eq!(closest_fair_ranking(&pi, &b, &g).unwrap(), pi);
    }

    #[test]
    fn closest_to_second_e1_ranking() {
        let (g, b) = setup();
        let pi = Ranking::from_ranks(vec![2, 1, 4, 3]).unwrap();
        let sigma = closest_fair_ranking(&pi, &b, &g).unwrap();
        assert_eq!(footrule(&pi, &sigma).unwrap(), 2);
        assert!(check_fairness(&sigma, &b, &g).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let g = GroupAssignment::round_robin(8, 4).unwrap();
        let b = CountBounds::vacuous(&g, 4);
        let err = closest_fair_ranking_with_cap(&Ranking::identity(8), &b, &g, 3).unwrap_err();
        assert_eq!(err, Error::EnumerationCapExceeded { cap: 3 });
    }

    #[test]
    fn bfi_examples() {
        let (g, _) = setup();
        let f = FairnessSpec::parse(2, &["1/2", "1/2"], &["1/2", "1/2"]).unwrap();
        let inst = Instance::new(
            vec![
                Ranking::identity(4),
                Ranking::from_ranks(vec![2, 1, 4, 3]).unwrap(),
            ],
            g.clone(),
            f.clone(),
        )
        .unwrap();
        assert_eq!(bfi_aggregate(&inst).unwrap().objective, 8);

        let pi = Ranking::from_ranks(vec![1, 3, 2, 4]).unwrap();
        let inst = Instance::new(vec![pi.clone(); 3], g, f).unwrap();
        let r = bfi_aggregate(&inst).unwrap();
        assert_eq!((r.ranking, r.objective), (pi, 0));
    }
}
