use crate::error::{Error, Result};
use crate::flow::{solve_assignment, AssignmentProblem};
use crate::model::{Ranking, Side, TopKList};

/// The assignment instance behind [`complete_list`]: row `r` is candidate
/// `candidates[r]`, column `c` is position `positions[c]`.
#[derive(Debug, Clone)]
pub struct CompletionProblem {
    pub candidates: Vec<usize>,
    pub positions: Vec<usize>,
    pub assignment: AssignmentProblem,
}

impl CompletionProblem {
    /// Cost of placing `candidate` at `position`, if both are free.
    pub fn cost_of(&self, candidate: usize, position: usize) -> Option<i64> {
        let r = self.candidates.iter().position(|&c| c == candidate)?;
        let c = self.positions.iter().position(|&p| p == position)?;
        Some(self.assignment.cost(r, c))
    }
}

/// Builds the completion instance for `partial`.
///
/// For a top list the free candidates go to `k+1..=d` at leftward cost
/// `2 Σ_π (π(a) - b) · [b < π(a)]`; for a bottom list they go to the free
/// front positions at the mirrored rightward cost.
pub fn completion_problem(s: &[Ranking], partial: &TopKList) -> Result<CompletionProblem> {
    let d = partial.d();
    if let Some(r) = s.iter().find(|r| r.d() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: r.d(),
        });
    }
    let candidates: Vec<usize> = (0..d).filter(|&c| partial.position(c).is_none()).collect();
    let positions: Vec<usize> = match partial.side() {
        Side::Top => (partial.k() + 1..=d).collect(),
        Side::Bottom => (1..=d - partial.k()).collect(),
    };
    let side = partial.side();
    let assignment = AssignmentProblem::from_fn(candidates.len(), |r, col| {
        let a = candidates[r];
        let b = positions[col] as i64;
        2 * s
            .iter()
            .map(|pi| {
                let p = pi.rank(a) as i64;
                match side {
                    Side::Top => (p - b).max(0),
                    Side::Bottom => (b - p).max(0),
                }
            })
            .sum::<i64>()
    });
    Ok(CompletionProblem {
        candidates,
        positions,
        assignment,
    })
}

/// Extends `partial` to a full ranking at minimum directional cost over the
/// unplaced candidates.
pub fn complete_list(s: &[Ranking], partial: &TopKList) -> Result<Ranking> {
    let problem = completion_problem(s, partial)?;
    let matching = solve_assignment(&problem.assignment);
    let mut rank_of: Vec<usize> = partial
        .positions()
        .iter()
        .map(|p| p.unwrap_or(0))
        .collect();
    for (r, &col) in matching.col_of_row.iter().enumerate() {
        rank_of[problem.candidates[r]] = problem.positions[col];
    }
    Ranking::from_ranks(rank_of)
}
