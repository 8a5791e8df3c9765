use std::ops::RangeInclusive;

use crate::model::Ranking;

/// Which per-(candidate, position) cost a [`WeightMatrix`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// `Σ_π |π(i) - j|` for `j in 1..=k+1`.
    ExactTopK,
    /// `2 Σ_π (π(i) - j) · [j < π(i)]` for `j in 1..=k`.
    Leftward,
    /// `2 Σ_π (j - π(i)) · [π(i) < j]` for `j in k+1..=d`.
    Rightward,
}

/// Costs `w[i][j]` of placing candidate `i` at position `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    kind: WeightKind,
    d: usize,
    first: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl WeightMatrix {
    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Positions covered by this matrix.
    pub fn positions(&self) -> RangeInclusive<usize> {
        self.first..=self.first + self.cols - 1
    }

    /// Weight of candidate `c` at 1-based position `pos`.
    #[inline]
    pub fn get(&self, c: usize, pos: usize) -> i64 {
        debug_assert!(self.positions().contains(&pos));
        self.entries[c * self.cols + pos - self.first]
    }
}

/// Builds the weight matrix of `kind` for rankings `s` and split point `k`.
pub fn build_weights(s: &[Ranking], k: usize, kind: WeightKind) -> WeightMatrix {
    let d = s.first().map_or(0, Ranking::d);
    let positions = match kind {
        WeightKind::ExactTopK => 1..=k + 1,
        WeightKind::Leftward => 1..=k,
        WeightKind::Rightward => k + 1..=d,
    };
    let first = *positions.start();
    let cols = positions.clone().count();
    let mut entries = vec![0i64; d * cols];
    for pi in s {
        for c in 0..d {
            let p = pi.rank(c) as i64;
            let row = &mut entries[c * cols..(c + 1) * cols];
            for (slot, j) in row.iter_mut().zip(positions.clone()) {
                let j = j as i64;
                *slot += match kind {
                    WeightKind::ExactTopK => (p - j).abs(),
                    WeightKind::Leftward => 2 * (p - j).max(0),
                    WeightKind::Rightward => 2 * (j - p).max(0),
                };
            }
        }
    }
    WeightMatrix {
        kind,
        d,
        first,
        cols,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> Vec<Ranking> {
        vec![
            Ranking::identity(4),
            Ranking::from_ranks(vec![2, 1, 4, 3]).unwrap(),
        ]
    }

    #[test]
    fn exact_topk_entries() {
        let w = build_weights(&e1(), 2, WeightKind::ExactTopK);
        assert_eq!(w.positions(), 1..=3);
        assert_eq!(w.get(0, 1), 1);
        assert_eq!(w.get(2, 2), 3);
        assert_eq!(w.get(2, 3), 1);
    }

    #[test]
    fn leftward_entries() {
        let w = build_weights(&e1(), 2, WeightKind::Leftward);
        assert_eq!(w.get(0, 2), 0);
        assert_eq!(w.get(2, 1), 10);
        assert_eq!(w.get(2, 2), 6);
    }

    #[test]
    fn leftward_vanishes_below_every_input_rank() {
        let s = e1();
        let w = build_weights(&s, 4, WeightKind::Leftward);
        for c in 0..4 {
            let worst = s.iter().map(|p| p.rank(c)).max().unwrap();
            for j in worst..=4 {
                assert_eq!(w.get(c, j), 0);
            }
        }
    }

    #[test]
    fn rightward_entries() {
        let w = build_weights(&e1(), 2, WeightKind::Rightward);
        assert_eq!(w.positions(), 3..=4);
        // c1 has ranks 1 and 2: 2 * ((4-1) + (4-2)) = 10 at position 4.
        assert_eq!(w.get(0, 4), 10);
        // c3 has ranks 3 and 4: 2 * (0 + 0) at position 3.
        assert_eq!(w.get(2, 3), 0);
    }
}
