//! Reduction from (3,3)-SAT to fair colorful weighted perfect matching.
//!
//! Each variable `x_i` contributes six left vertices `(x_i^T, r)`,
//! `(x_i^F, r)` for `r = 1, 2, 3`, three protected right vertices
//! `(x_i, a)`, `(x_i, b)`, `(x_i, c)` and three colors `c_{i,r}` shared by
//! `(x_i^T, r)` and `(x_i^F, r)`. Weight-1 edges:
//!
//! ```text
//! (x_i, a) -- (x_i^T, 1), (x_i^F, 3)
//! (x_i, b) -- (x_i^T, 2), (x_i^F, 1)
//! (x_i, c) -- (x_i^T, 3), (x_i^F, 2)
//! ```
//!
//! Each clause gets one right vertex joined to `(x_j^T, r)` for a positive
//! `r`-th occurrence of `x_j` and to `(x_j^F, r)` for a negated one. Dummy
//! right vertices pad `W` to `6n`; every other edge has weight 0. Each color
//! must send exactly one vertex into the protected set, and the target is
//! `3n + m`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{ceil_mul, floor_mul};
use crate::Rational;

/// CNF formula with at most three literals per clause and at most three
/// occurrences per variable. Literals are nonzero, 1-based, signed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        let bad = |m: String| Err(Error::MalformedFormula(m));
        let mut occurrences = vec![0usize; num_vars];
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return bad(format!("clause {} is empty", i + 1));
            }
            if clause.len() > 3 {
                return bad(format!("clause {} has {} literals", i + 1, clause.len()));
            }
            for &lit in clause {
                let v = lit.unsigned_abs() as usize;
                if lit == 0 || v > num_vars {
                    return bad(format!("clause {}: literal {lit} out of range", i + 1));
                }
                occurrences[v - 1] += 1;
                if occurrences[v - 1] > 3 {
                    return bad(format!("variable {v} occurs more than three times"));
                }
            }
        }
        if clauses.len() > 3 * num_vars {
            return bad(format!("{} clauses exceed 3n = {}", clauses.len(), 3 * num_vars));
        }
        Ok(Self { num_vars, clauses })
    }

    /// Parses DIMACS CNF: `c` comment lines, a `p cnf n m` header, then
    /// clauses as signed integers terminated by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let bad = |m: String| Error::MalformedFormula(m);
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(bad(format!("line {}: bad header {line:?}", lineno + 1)));
                }
                let n = parts[2].parse().map_err(|_| bad(format!("bad variable count {:?}", parts[2])))?;
                let m = parts[3].parse().map_err(|_| bad(format!("bad clause count {:?}", parts[3])))?;
                header = Some((n, m));
                continue;
            }
            if header.is_none() {
                return Err(bad("clause before the p cnf header".into()));
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| bad(format!("line {}: bad literal {tok:?}", lineno + 1)))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        if !current.is_empty() {
            clauses.push(current);
        }
        let (n, m) = header.ok_or_else(|| bad("missing p cnf header".into()))?;
        if clauses.len() != m {
            return Err(bad(format!("header announces {m} clauses, found {}", clauses.len())));
        }
        Self::new(n, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&format!("{lit} "));
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Truth value under `assignment[v - 1]` for variable `v`.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&lit| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0))
        })
    }
}

/// Complete bipartite graph `V × W` with colored left vertices, a protected
/// subset `Z ⊆ W`, per-color bounds and a target value.
///
/// A perfect matching is fair when, for every color `i`, the number of
/// color-`i` left vertices matched into `Z` lies in
/// `[alpha_i |Z|, beta_i |Z|]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FairMatchingInstance {
    pub left_labels: Vec<String>,
    pub right_labels: Vec<String>,
    /// `weights[u][w]` for left `u`, right `w`.
    pub weights: Vec<Vec<i64>>,
    /// Indices of the protected right vertices.
    pub protected: Vec<usize>,
    pub color_of: Vec<usize>,
    pub num_colors: usize,
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub target: i64,
}

impl FairMatchingInstance {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        let n = self.left_labels.len();
        if self.right_labels.len() != n {
            return bad(format!("|V| = {n} but |W| = {}", self.right_labels.len()));
        }
        if self.weights.len() != n || self.weights.iter().any(|r| r.len() != n) {
            return bad("weight matrix is not |V| × |W|".into());
        }
        if self.color_of.len() != n || self.color_of.iter().any(|&c| c >= self.num_colors) {
            return bad("every left vertex needs a valid color".into());
        }
        if self.alpha.len() != self.num_colors || self.beta.len() != self.num_colors {
            return bad("one alpha and beta per color".into());
        }
        let mut seen = vec![false; n];
        for &z in &self.protected {
            if z >= n || std::mem::replace(&mut seen[z], true) {
                return bad(format!("protected vertex {z} invalid or repeated"));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.left_labels.len()
    }

    /// Integer count window `[⌈alpha |Z|⌉, ⌊beta |Z|⌋]` per color.
    pub fn count_bounds(&self) -> (Vec<usize>, Vec<usize>) {
        let z = self.protected.len();
        let lo = self.alpha.iter().map(|&a| ceil_mul(a, z).max(0) as usize).collect();
        let hi = self.beta.iter().map(|&b| floor_mul(b, z).max(0) as usize).collect();
        (lo, hi)
    }

    pub fn protected_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.size()];
        for &z in &self.protected {
            mask[z] = true;
        }
        mask
    }

    /// Whether the perfect matching `right_of_left` meets every color window.
    pub fn is_fair(&self, right_of_left: &[usize]) -> bool {
        let (lo, hi) = self.count_bounds();
        let mask = self.protected_mask();
        let mut counts = vec![0usize; self.num_colors];
        for (u, &w) in right_of_left.iter().enumerate() {
            if mask[w] {
                counts[self.color_of[u]] += 1;
            }
        }
        counts
            .iter()
            .zip(lo.iter().zip(&hi))
            .all(|(&c, (&l, &h))| l <= c && c <= h)
    }

    pub fn value(&self, right_of_left: &[usize]) -> i64 {
        right_of_left
            .iter()
            .enumerate()
            .map(|(u, &w)| self.weights[u][w])
            .sum()
    }
}

/// Builds the fair matching instance for a (3,3)-SAT formula.
pub fn reduce_33sat(f: &CnfFormula) -> Result<FairMatchingInstance> {
    // Re-validate: the fields are private, but keep the invariant explicit.
    let f = CnfFormula::new(f.num_vars, f.clauses.clone())?;
    let n = f.num_vars();
    let m = f.num_clauses();
    let size = 6 * n;

    let left = |var: usize, truth: bool, r: usize| 6 * var + 2 * (r - 1) + usize::from(!truth);
    let var_right = |var: usize, slot: usize| 3 * var + slot;
    let clause_right = |j: usize| 3 * n + j;

    let mut left_labels = vec![String::new(); size];
    let mut color_of = vec![0; size];
    for var in 0..n {
        for r in 1..=3 {
            for truth in [true, false] {
                let u = left(var, truth, r);
                left_labels[u] = format!("(x{}^{},{r})", var + 1, if truth { 'T' } else { 'F' });
                color_of[u] = 3 * var + (r - 1);
            }
        }
    }
    let mut right_labels = Vec::with_capacity(size);
    for var in 0..n {
        for slot in ['a', 'b', 'c'] {
            right_labels.push(format!("(x{},{slot})", var + 1));
        }
    }
    for j in 0..m {
        right_labels.push(format!("C{}", j + 1));
    }
    for i in 0..size - 3 * n - m {
        right_labels.push(format!("dummy{}", i + 1));
    }

    let mut weights = vec![vec![0i64; size]; size];
    for var in 0..n {
        for (slot, t_r, f_r) in [(0, 1, 3), (1, 2, 1), (2, 3, 2)] {
            weights[left(var, true, t_r)][var_right(var, slot)] = 1;
            weights[left(var, false, f_r)][var_right(var, slot)] = 1;
        }
    }
    let mut seen = vec![0usize; n];
    for (j, clause) in f.clauses().iter().enumerate() {
        for &lit in clause {
            let var = lit.unsigned_abs() as usize - 1;
            seen[var] += 1;
            weights[left(var, lit > 0, seen[var])][clause_right(j)] = 1;
        }
    }

    let colors = 3 * n;
    let share = if colors == 0 {
        Vec::new()
    } else {
        vec![Rational::new(1, colors as i64); colors]
    };
    Ok(FairMatchingInstance {
        left_labels,
        right_labels,
        weights,
        protected: (0..3 * n).collect(),
        color_of,
        num_colors: colors,
        alpha: share.clone(),
        beta: share,
        target: (3 * n + m) as i64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Satisfiability {
    Sat,
    Unsat,
}

impl fmt::Display for Satisfiability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Satisfiability::Sat => "SAT",
            Satisfiability::Unsat => "UNSAT",
        })
    }
}

/// Largest `|V|` handled by [`max_fair_value_01`].
pub const GADGET_MATCHER_MAX: usize = 18;

/// Decides a (3,3)-SAT formula by checking whether the reduced instance has
/// a fair perfect matching of value at least `3n + m`.
///
/// `n = 1` uses the exhaustive matcher; `n <= 3` uses the 0/1-weight
/// matcher; larger formulas are rejected.
pub fn decide_33sat_via_matching(f: &CnfFormula) -> Result<Satisfiability> {
    let inst = reduce_33sat(f)?;
    let best = if inst.size() <= crate::oracle::MATCHING_MAX_VERTICES {
        match crate::oracle::brute_fair_matching(&inst) {
            Ok((value, _)) => Some(value),
            Err(Error::Infeasible) => None,
            Err(e) => return Err(e),
        }
    } else if inst.size() <= GADGET_MATCHER_MAX {
        max_fair_value_01(&inst)?
    } else {
        return Err(Error::TooLarge {
            what: "6n",
            limit: GADGET_MATCHER_MAX,
            actual: inst.size(),
        });
    };
    Ok(match best {
        Some(v) if v >= inst.target => Satisfiability::Sat,
        _ => Satisfiability::Unsat,
    })
}

/// Maximum value of a fair perfect matching when every weight is 0 or 1,
/// or `None` if no fair perfect matching exists.
///
/// Weight-0 edges never add value, so only sets of weight-1 edges are
/// enumerated; each is kept if the remaining vertices can be matched fairly.
/// Since the graph is complete, that reduces to a per-color count check.
pub fn max_fair_value_01(inst: &FairMatchingInstance) -> Result<Option<i64>> {
    inst.validate()?;
    let n = inst.size();
    if n > GADGET_MATCHER_MAX {
        return Err(Error::TooLarge {
            what: "|V|",
            limit: GADGET_MATCHER_MAX,
            actual: n,
        });
    }
    if inst.weights.iter().flatten().any(|&w| w != 0 && w != 1) {
        return Err(Error::InvalidParameter("weights must be 0 or 1".into()));
    }
    let (lo, hi) = inst.count_bounds();
    let mask = inst.protected_mask();
    let candidates: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|w| (w, (0..n).filter(|&u| inst.weights[u][w] == 1).collect::<Vec<_>>()))
        .filter(|(_, us)| !us.is_empty())
        .collect();
    let mut s = GadgetSearch {
        inst,
        lo,
        hi,
        mask,
        candidates,
        used: vec![false; n],
        counts: vec![0; inst.num_colors],
        covered_z: 0,
        best: None,
    };
    s.walk(0, 0);
    Ok(s.best)
}

struct GadgetSearch<'a> {
    inst: &'a FairMatchingInstance,
    lo: Vec<usize>,
    hi: Vec<usize>,
    mask: Vec<bool>,
    candidates: Vec<(usize, Vec<usize>)>,
    used: Vec<bool>,
    counts: Vec<usize>,
    covered_z: usize,
    best: Option<i64>,
}

impl GadgetSearch<'_> {
    fn walk(&mut self, i: usize, value: i64) {
        let remaining = (self.candidates.len() - i) as i64;
        if self.best.is_some_and(|b| value + remaining <= b) {
            return;
        }
        if i == self.candidates.len() {
            if self.completable() {
                self.best = Some(value);
            }
            return;
        }
        let w = self.candidates[i].0;
        for idx in 0..self.candidates[i].1.len() {
            let u = self.candidates[i].1[idx];
            if self.used[u] {
                continue;
            }
            let color = self.inst.color_of[u];
            if self.mask[w] {
                if self.counts[color] + 1 > self.hi[color] {
                    continue;
                }
                self.counts[color] += 1;
                self.covered_z += 1;
            }
            self.used[u] = true;
            self.walk(i + 1, value + 1);
            self.used[u] = false;
            if self.mask[w] {
                self.counts[color] -= 1;
                self.covered_z -= 1;
            }
        }
        // w is matched by a weight-0 edge in the completion.
        self.walk(i + 1, value);
    }

    fn completable(&self) -> bool {
        let uncovered = self.inst.protected.len() - self.covered_z;
        let mut free = vec![0usize; self.inst.num_colors];
        for (u, &used) in self.used.iter().enumerate() {
            if !used {
                free[self.inst.color_of[u]] += 1;
            }
        }
        let (mut need, mut room) = (0, 0);
        for (c, &f) in free.iter().enumerate() {
            let min = self.lo[c].saturating_sub(self.counts[c]);
            let max = f.min(self.hi[c] - self.counts[c]);
            if min > max {
                return false;
            }
            need += min;
            room += max;
        }
        need <= uncovered && uncovered <= room
    }
}
