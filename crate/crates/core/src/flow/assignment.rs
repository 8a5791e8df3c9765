use crate::error::{Error, Result};

/// Square cost matrix for a min-cost perfect assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentProblem {
    m: usize,
    cost: Vec<i64>,
}

impl AssignmentProblem {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: r.len(),
            });
        }
        Ok(Self {
            m,
            cost: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let cost = (0..m * m).map(|x| f(x / m, x % m)).collect();
        Self { m, cost }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn cost(&self, row: usize, col: usize) -> i64 {
        self.cost[row * self.m + col]
    }
}

/// `col_of_row[i]` is the column matched to row `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub col_of_row: Vec<usize>,
    pub cost: i64,
}

/// Minimum-cost perfect assignment.
///
/// Among all optimal assignments, returns the lexicographically smallest
/// `col_of_row`. The Hungarian method yields dual potentials `u`, `v`; the
/// optimal assignments are exactly the perfect matchings on edges with zero
/// reduced cost, and those are searched greedily row by row.
pub fn solve_assignment(p: &AssignmentProblem) -> Assignment {
    let m = p.size();
    if m == 0 {
        return Assignment {
            col_of_row: Vec::new(),
            cost: 0,
        };
    }
    let (u, v, mut col_of_row) = hungarian(p);
    let tight = |i: usize, j: usize| p.cost(i, j) - u[i] - v[j] == 0;
    debug_assert!((0..m).all(|i| (0..m).all(|j| p.cost(i, j) - u[i] - v[j] >= 0)));

    let mut row_of_col = vec![0; m];
    for (i, &j) in col_of_row.iter().enumerate() {
        row_of_col[j] = i;
    }
    let mut fixed_col = vec![false; m];
    for i in 0..m {
        for j in 0..m {
            if fixed_col[j] || !tight(i, j) {
                continue;
            }
            if col_of_row[i] == j {
                break;
            }
            // Re-route the current owner of j to the column i releases.
            let target = col_of_row[i];
            let owner = row_of_col[j];
            let mut seen = fixed_col.clone();
            seen[j] = true;
            let mut path = Vec::new();
            if reroute(owner, target, &tight, &col_of_row, &row_of_col, &mut seen, &mut path, m) {
                // path holds (row, new column) pairs.
                for &(r, c) in &path {
                    col_of_row[r] = c;
                    row_of_col[c] = r;
                }
                col_of_row[i] = j;
                row_of_col[j] = i;
                break;
            }
        }
        debug_assert!(tight(i, col_of_row[i]));
        fixed_col[col_of_row[i]] = true;
    }
    let cost = col_of_row.iter().enumerate().map(|(i, &j)| p.cost(i, j)).sum();
    Assignment { col_of_row, cost }
}

/// Alternating-path search: move `row` to a tight unseen column, evicting
/// its owner recursively, until `target` is reached.
#[allow(clippy::too_many_arguments)]
fn reroute(
    row: usize,
    target: usize,
    tight: &impl Fn(usize, usize) -> bool,
    col_of_row: &[usize],
    row_of_col: &[usize],
    seen: &mut [bool],
    path: &mut Vec<(usize, usize)>,
    m: usize,
) -> bool {
    for c in 0..m {
        if seen[c] || !tight(row, c) {
            continue;
        }
        seen[c] = true;
        path.push((row, c));
        if c == target {
            return true;
        }
        let next = row_of_col[c];
        debug_assert_eq!(col_of_row[next], c);
        if reroute(next, target, tight, col_of_row, row_of_col, seen, path, m) {
            return true;
        }
        path.pop();
    }
    false
}

/// O(m^3) Hungarian method with potentials. Returns row potentials, column
/// potentials and an optimal `col_of_row`.
fn hungarian(p: &AssignmentProblem) -> (Vec<i64>, Vec<i64>, Vec<usize>) {
    const INF: i64 = i64::MAX / 4;
    let m = p.size();
    // 1-based internally; index 0 is the virtual column.
    let mut u = vec![0i64; m + 1];
    let mut v = vec![0i64; m + 1];
    let mut row_at = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=m {
        row_at[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = row_at[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=m {
                if !used[j] {
                    let cur = p.cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[row_at[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_at[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_at[j0] = row_at[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col_of_row = vec![0; m];
    for j in 1..=m {
        col_of_row[row_at[j] - 1] = j - 1;
    }
    (u[1..].to_vec(), v[1..].to_vec(), col_of_row)
}
