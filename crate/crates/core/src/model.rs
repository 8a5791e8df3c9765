//! Domain types, validation, and derivation of per-group count bounds.
//!
//! Candidates are dense ids `0..d`. Ranks and positions are 1-based, so a
//! [`Ranking`] maps every candidate to a distinct rank in `1..=d`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ceil_mul, floor_mul, format_rational};
use crate::Rational;

/// A full ranking (permutation) of `d` candidates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    rank_of: Vec<usize>,
}

impl Ranking {
    /// Builds a ranking from `rank_of[c]`, the 1-based rank of candidate `c`.
    pub fn from_ranks(rank_of: Vec<usize>) -> Result<Self> {
        if let Some(v) = ranking_violations(0, &rank_of).into_iter().next() {
            return Err(Error::InvalidRanking(v.to_string()));
        }
        Ok(Self { rank_of })
    }

    /// Builds a ranking from a list of candidates in rank order.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let d = order.len();
        let mut rank_of = vec![0; d];
        for (p, &c) in order.iter().enumerate() {
            if c >= d {
                return Err(Error::InvalidRanking(format!(
                    "candidate {c} out of range for d = {d}"
                )));
            }
            if rank_of[c] != 0 {
                return Err(Error::InvalidRanking(format!("candidate {c} listed twice")));
            }
            rank_of[c] = p + 1;
        }
        Ok(Self { rank_of })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            rank_of: (1..=d).collect(),
        }
    }

    /// The ranking that lists candidates in the opposite order.
    pub fn reversed(&self) -> Self {
        let d = self.d();
        Self {
            rank_of: self.rank_of.iter().map(|&r| d + 1 - r).collect(),
        }
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.rank_of.len()
    }

    /// Rank of candidate `c`, in `1..=d`.
    #[inline]
    pub fn rank(&self, c: usize) -> usize {
        self.rank_of[c]
    }

    #[inline]
    pub fn ranks(&self) -> &[usize] {
        &self.rank_of
    }

    /// Candidates sorted by rank.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.d()];
        for (c, &r) in self.rank_of.iter().enumerate() {
            order[r - 1] = c;
        }
        order
    }

    /// The top-`k` prefix of this ranking as a list.
    pub fn top_k(&self, k: usize) -> TopKList {
        let pos_of = self
            .rank_of
            .iter()
            .map(|&r| (r <= k).then_some(r))
            .collect();
        TopKList {
            d: self.d(),
            side: Side::Top,
            k: k.min(self.d()),
            pos_of,
        }
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.order().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Which end of a ranking a partial list occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Top,
    Bottom,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Top => "top",
            Side::Bottom => "bottom",
        }
    }
}

/// A partial ranking placing exactly `k` candidates.
///
/// A top list occupies positions `1..=k`; a bottom list occupies
/// `d-k+1..=d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TopKList {
    d: usize,
    side: Side,
    k: usize,
    pos_of: Vec<Option<usize>>,
}

impl TopKList {
    /// Builds a list from `(candidate, position)` pairs.
    pub fn new(d: usize, side: Side, entries: &[(usize, usize)]) -> Result<Self> {
        let k = entries.len();
        if k > d {
            return Err(Error::InvalidList(format!("{k} entries for d = {d}")));
        }
        let mut pos_of = vec![None; d];
        for &(c, p) in entries {
            if c >= d {
                return Err(Error::InvalidList(format!("candidate {c} out of range")));
            }
            if pos_of[c].is_some() {
                return Err(Error::InvalidList(format!("candidate {c} placed twice")));
            }
            pos_of[c] = Some(p);
        }
        Self::from_positions(d, side, pos_of)
    }

    pub fn top(d: usize, entries: &[(usize, usize)]) -> Result<Self> {
        Self::new(d, Side::Top, entries)
    }

    pub fn bottom(d: usize, entries: &[(usize, usize)]) -> Result<Self> {
        Self::new(d, Side::Bottom, entries)
    }

    /// Builds a list from a per-candidate position map.
    pub fn from_positions(d: usize, side: Side, pos_of: Vec<Option<usize>>) -> Result<Self> {
        if pos_of.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: pos_of.len(),
            });
        }
        let k = pos_of.iter().filter(|p| p.is_some()).count();
        let first = match side {
            Side::Top => 1,
            Side::Bottom => d - k + 1,
        };
        let mut seen = vec![false; k];
        for p in pos_of.iter().flatten() {
            if *p < first || *p >= first + k {
                return Err(Error::InvalidList(format!(
                    "position {p} outside {}..={} of a {} list",
                    first,
                    first + k - 1,
                    side.name()
                )));
            }
            if std::mem::replace(&mut seen[p - first], true) {
                return Err(Error::InvalidList(format!("position {p} used twice")));
            }
        }
        Ok(Self { d, side, k, pos_of })
    }

    /// An empty list on the given side.
    pub fn empty(d: usize, side: Side) -> Self {
        Self {
            d,
            side,
            k: 0,
            pos_of: vec![None; d],
        }
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn side(&self) -> Side {
        self.side
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// First position the list occupies.
    pub fn first_position(&self) -> usize {
        match self.side {
            Side::Top => 1,
            Side::Bottom => self.d - self.k + 1,
        }
    }

    #[inline]
    pub fn position(&self, c: usize) -> Option<usize> {
        self.pos_of[c]
    }

    pub fn positions(&self) -> &[Option<usize>] {
        &self.pos_of
    }

    /// Placed candidates in increasing id order.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.d).filter(|&c| self.pos_of[c].is_some()).collect()
    }

    /// `(candidate, position)` pairs sorted by position.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self
            .pos_of
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (c, p)))
            .collect();
        e.sort_by_key(|&(_, p)| p);
        e
    }

    /// Converts a list covering all `d` candidates into a ranking.
    pub fn to_ranking(&self) -> Option<Ranking> {
        (self.k == self.d).then(|| Ranking {
            rank_of: self.pos_of.iter().map(|p| p.unwrap()).collect(),
        })
    }
}

/// Partition of candidates into `g` groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAssignment {
    g: usize,
    group_of: Vec<usize>,
    sizes: Vec<usize>,
}

impl GroupAssignment {
    /// Every group id in `0..g` must be used.
    pub fn new(group_of: Vec<usize>, g: usize) -> Result<Self> {
        Self::build(group_of, g, false)
    }

    /// Like [`GroupAssignment::new`] but tolerates empty groups.
    pub fn with_empty_allowed(group_of: Vec<usize>, g: usize) -> Result<Self> {
        Self::build(group_of, g, true)
    }

    fn build(group_of: Vec<usize>, g: usize, allow_empty: bool) -> Result<Self> {
        if let Some(v) = group_violations(&group_of, g, group_of.len(), allow_empty)
            .into_iter()
            .next()
        {
            return Err(Error::InvalidGroups(v.to_string()));
        }
        let mut sizes = vec![0; g];
        for &a in &group_of {
            sizes[a] += 1;
        }
        Ok(Self { g, group_of, sizes })
    }

    /// Candidate `c` goes to group `c mod g`.
    pub fn round_robin(d: usize, g: usize) -> Result<Self> {
        Self::new((0..d).map(|c| c % g.max(1)).collect(), g)
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.group_of.len()
    }

    #[inline]
    pub fn g(&self) -> usize {
        self.g
    }

    #[inline]
    pub fn group(&self, c: usize) -> usize {
        self.group_of[c]
    }

    pub fn group_of(&self) -> &[usize] {
        &self.group_of
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn members(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.group_of
            .iter()
            .enumerate()
            .filter(move |&(_, &b)| b == a)
            .map(|(c, _)| c)
    }
}

/// Proportional fairness parameters: per-group `alpha <= beta` and `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessSpec {
    k: usize,
    alpha: Vec<Rational>,
    beta: Vec<Rational>,
}

impl FairnessSpec {
    pub fn new(k: usize, alpha: Vec<Rational>, beta: Vec<Rational>) -> Result<Self> {
        let violations = fairness_violations(k, &alpha, &beta);
        if let Some(v) = violations.into_iter().next() {
            return Err(Error::InvalidFairness(v.to_string()));
        }
        Ok(Self { k, alpha, beta })
    }

    /// Parses decimal or fractional strings, e.g. `"0.3"` or `"1/3"`.
    pub fn parse(k: usize, alpha: &[&str], beta: &[&str]) -> Result<Self> {
        let p = |v: &[&str]| {
            v.iter()
                .map(|s| crate::rational::parse_rational(s))
                .collect::<Result<Vec<_>>>()
        };
        Self::new(k, p(alpha)?, p(beta)?)
    }

    /// `alpha_a = beta_a = |G_a| / d` for every group.
    pub fn proportional(groups: &GroupAssignment, k: usize) -> Result<Self> {
        let d = groups.d() as i64;
        if d == 0 {
            return Err(Error::InvalidFairness("no candidates".into()));
        }
        let props: Vec<Rational> = groups
            .sizes()
            .iter()
            .map(|&s| Rational::new(s as i64, d))
            .collect();
        Self::new(k, props.clone(), props)
    }

    /// `alpha = 0`, `beta = 1`: every list is fair.
    pub fn vacuous(g: usize, k: usize) -> Result<Self> {
        Self::new(
            k,
            vec![Rational::from_integer(0); g],
            vec![Rational::from_integer(1); g],
        )
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }

    pub fn g(&self) -> usize {
        self.alpha.len()
    }

    /// Same parameters with a different `k`.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(k, self.alpha.clone(), self.beta.clone())
    }
}

/// Integer per-group floor/ceiling counts on `k` positions of one side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountBounds {
    pub side: Side,
    /// Number of positions governed.
    pub k: usize,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

impl CountBounds {
    /// Checks every feasibility invariant against the group sizes.
    pub fn new(
        side: Side,
        k: usize,
        lower: Vec<usize>,
        upper: Vec<usize>,
        groups: &GroupAssignment,
    ) -> Result<Self> {
        let lo: Vec<i64> = lower.iter().map(|&v| v as i64).collect();
        let up: Vec<i64> = upper.iter().map(|&v| v as i64).collect();
        let violations = bound_violations(&lo, &up, k, groups.sizes(), side);
        if !violations.is_empty() {
            return Err(infeasible(&violations));
        }
        Ok(Self {
            side,
            k,
            lower,
            upper,
        })
    }

    /// Bounds every assignment of `k` top positions satisfies.
    pub fn vacuous(groups: &GroupAssignment, k: usize) -> Self {
        Self {
            side: Side::Top,
            k,
            lower: vec![0; groups.g()],
            upper: vec![k; groups.g()],
        }
    }

    pub fn g(&self) -> usize {
        self.lower.len()
    }

    /// Whether per-group counts all fall inside `[lower, upper]`.
    pub fn admits(&self, counts: &[usize]) -> bool {
        counts.len() == self.lower.len()
            && counts
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&c, (&lo, &up))| lo <= c && c <= up)
    }

    /// Positions governed, given the ranking length `d`.
    pub fn range(&self, d: usize) -> std::ops::RangeInclusive<usize> {
        match self.side {
            Side::Top => 1..=self.k,
            Side::Bottom => d - self.k + 1..=d,
        }
    }
}

/// `lower_a = ⌊alpha_a k⌋`, `upper_a = ⌈beta_a k⌉` on the top `k` positions.
pub fn derive_topk_bounds(fairness: &FairnessSpec, groups: &GroupAssignment) -> Result<CountBounds> {
    check_dims(fairness, groups)?;
    let k = fairness.k();
    let lo: Vec<i64> = fairness.alpha().iter().map(|&a| floor_mul(a, k)).collect();
    let up: Vec<i64> = fairness.beta().iter().map(|&b| ceil_mul(b, k)).collect();
    let violations = bound_violations(&lo, &up, k, groups.sizes(), Side::Top);
    if !violations.is_empty() {
        return Err(infeasible(&violations));
    }
    Ok(CountBounds {
        side: Side::Top,
        k,
        lower: lo.into_iter().map(|v| v as usize).collect(),
        upper: up.into_iter().map(|v| v as usize).collect(),
    })
}

/// Equivalent bounds on the bottom `d - k` positions:
/// `lower_a = |G_a| - ⌈beta_a k⌉` (clamped at 0), `upper_a = |G_a| - ⌊alpha_a k⌋`.
pub fn derive_complement_bounds(
    fairness: &FairnessSpec,
    groups: &GroupAssignment,
) -> Result<CountBounds> {
    let top = derive_topk_bounds(fairness, groups)?;
    let d = groups.d();
    let lo: Vec<i64> = groups
        .sizes()
        .iter()
        .zip(&top.upper)
        .map(|(&s, &u)| (s as i64 - u as i64).max(0))
        .collect();
    let up: Vec<i64> = groups
        .sizes()
        .iter()
        .zip(&top.lower)
        .map(|(&s, &l)| s as i64 - l as i64)
        .collect();
    let k = d - top.k;
    let violations = bound_violations(&lo, &up, k, groups.sizes(), Side::Bottom);
    if !violations.is_empty() {
        return Err(infeasible(&violations));
    }
    Ok(CountBounds {
        side: Side::Bottom,
        k,
        lower: lo.into_iter().map(|v| v as usize).collect(),
        upper: up.into_iter().map(|v| v as usize).collect(),
    })
}

/// Either a full ranking or a partial list, for fairness and objective checks.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Full(&'a Ranking),
    Partial(&'a TopKList),
}

impl<'a> From<&'a Ranking> for Subject<'a> {
    fn from(r: &'a Ranking) -> Self {
        Subject::Full(r)
    }
}

impl<'a> From<&'a TopKList> for Subject<'a> {
    fn from(t: &'a TopKList) -> Self {
        Subject::Partial(t)
    }
}

impl Subject<'_> {
    pub fn d(&self) -> usize {
        match self {
            Subject::Full(r) => r.d(),
            Subject::Partial(t) => t.d(),
        }
    }

    fn position(&self, c: usize) -> Option<usize> {
        match self {
            Subject::Full(r) => Some(r.rank(c)),
            Subject::Partial(t) => t.position(c),
        }
    }
}

/// Per-group counts of candidates whose position lies in `range`.
pub fn group_counts<'a>(
    subject: impl Into<Subject<'a>>,
    groups: &GroupAssignment,
    range: std::ops::RangeInclusive<usize>,
) -> Vec<usize> {
    let subject = subject.into();
    let mut counts = vec![0; groups.g()];
    for c in 0..subject.d() {
        if let Some(p) = subject.position(c) {
            if range.contains(&p) {
                counts[groups.group(c)] += 1;
            }
        }
    }
    counts
}

/// True iff every group's count in the positions governed by `bounds`
/// lies in `[lower, upper]`.
pub fn check_fairness<'a>(
    subject: impl Into<Subject<'a>>,
    bounds: &CountBounds,
    groups: &GroupAssignment,
) -> Result<bool> {
    let subject = subject.into();
    if subject.d() != groups.d() {
        return Err(Error::DimensionMismatch {
            expected: groups.d(),
            found: subject.d(),
        });
    }
    if bounds.g() != groups.g() {
        return Err(Error::DimensionMismatch {
            expected: groups.g(),
            found: bounds.g(),
        });
    }
    if bounds.k > subject.d() {
        return Err(Error::DimensionMismatch {
            expected: subject.d(),
            found: bounds.k,
        });
    }
    let counts = group_counts(subject, groups, bounds.range(subject.d()));
    Ok(bounds.admits(&counts))
}

/// A validated aggregation instance: rankings `S`, groups and fairness.
#[derive(Debug, Clone)]
pub struct Instance {
    rankings: Vec<Ranking>,
    groups: GroupAssignment,
    fairness: FairnessSpec,
    bounds: CountBounds,
}

impl Instance {
    pub fn new(
        rankings: Vec<Ranking>,
        groups: GroupAssignment,
        fairness: FairnessSpec,
    ) -> Result<Self> {
        if rankings.is_empty() {
            return Err(Error::InvalidRanking("the ranking set is empty".into()));
        }
        let d = groups.d();
        if let Some(r) = rankings.iter().find(|r| r.d() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: r.d(),
            });
        }
        if fairness.k() > d {
            return Err(Error::InvalidFairness(format!(
                "k = {} exceeds d = {d}",
                fairness.k()
            )));
        }
        let bounds = derive_topk_bounds(&fairness, &groups)?;
        Ok(Self {
            rankings,
            groups,
            fairness,
            bounds,
        })
    }

    pub fn rankings(&self) -> &[Ranking] {
        &self.rankings
    }

    pub fn groups(&self) -> &GroupAssignment {
        &self.groups
    }

    pub fn fairness(&self) -> &FairnessSpec {
        &self.fairness
    }

    /// Derived top-`k` bounds.
    pub fn bounds(&self) -> &CountBounds {
        &self.bounds
    }

    pub fn complement_bounds(&self) -> CountBounds {
        // Feasible whenever the top bounds are.
        derive_complement_bounds(&self.fairness, &self.groups)
            .expect("complement of feasible bounds is feasible")
    }

    pub fn d(&self) -> usize {
        self.groups.d()
    }

    pub fn n(&self) -> usize {
        self.rankings.len()
    }

    pub fn k(&self) -> usize {
        self.fairness.k()
    }

    /// The same rankings and groups under different fairness parameters.
    pub fn with_fairness(&self, fairness: FairnessSpec) -> Result<Self> {
        Self::new(self.rankings.clone(), self.groups.clone(), fairness)
    }
}

/// Unvalidated instance data, as read from files.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawInstance {
    /// Each entry is a `rank_of` vector with 1-based ranks.
    pub rankings: Vec<Vec<usize>>,
    pub group_of: Vec<usize>,
    pub g: usize,
    pub k: usize,
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub allow_empty_groups: bool,
}

impl RawInstance {
    /// Validates and converts into an [`Instance`].
    pub fn into_instance(self) -> Result<Instance> {
        let report = validate_instance(&self);
        if let Some(v) = report.violations.first() {
            return Err(match v {
                Violation::Infeasible { .. } => infeasible(&report.violations),
                _ => Error::InvalidParameter(report.to_string()),
            });
        }
        let rankings = self
            .rankings
            .into_iter()
            .map(Ranking::from_ranks)
            .collect::<Result<Vec<_>>>()?;
        let groups = if self.allow_empty_groups {
            GroupAssignment::with_empty_allowed(self.group_of, self.g)?
        } else {
            GroupAssignment::new(self.group_of, self.g)?
        };
        let fairness = FairnessSpec::new(self.k, self.alpha, self.beta)?;
        Instance::new(rankings, groups, fairness)
    }
}

/// One violated invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyRankingSet,
    RankingLength { ranking: usize, expected: usize, found: usize },
    RankOutOfRange { ranking: usize, candidate: usize, rank: usize },
    DuplicateRank { ranking: usize, rank: usize },
    GroupLength { expected: usize, found: usize },
    GroupOutOfRange { candidate: usize, group: usize },
    EmptyGroup { group: usize },
    KOutOfRange { k: usize, d: usize },
    ParameterCount { g: usize, alpha: usize, beta: usize },
    ParameterOutOfRange { group: usize, name: &'static str, value: Rational },
    AlphaAboveBeta { group: usize },
    Infeasible { side: Side, detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyRankingSet => write!(f, "no rankings given"),
            Violation::RankingLength {
                ranking,
                expected,
                found,
            } => write!(f, "ranking {ranking}: length {found}, expected {expected}"),
            Violation::RankOutOfRange {
                ranking,
                candidate,
                rank,
            } => write!(
                f,
                "ranking {ranking}: candidate {candidate} has rank {rank} out of range"
            ),
            Violation::DuplicateRank { ranking, rank } => {
                write!(f, "ranking {ranking}: rank {rank} duplicated")
            }
            Violation::GroupLength { expected, found } => {
                write!(f, "group assignment covers {found} candidates, expected {expected}")
            }
            Violation::GroupOutOfRange { candidate, group } => {
                write!(f, "candidate {candidate}: group id {group} out of range")
            }
            Violation::EmptyGroup { group } => write!(f, "group {group} is empty"),
            Violation::KOutOfRange { k, d } => write!(f, "k = {k} not in 1..={d}"),
            Violation::ParameterCount { g, alpha, beta } => write!(
                f,
                "{alpha} alpha and {beta} beta values given for {g} groups"
            ),
            Violation::ParameterOutOfRange { group, name, value } => write!(
                f,
                "group {group}: {name} = {} not in [0, 1]",
                format_rational(*value)
            ),
            Violation::AlphaAboveBeta { group } => write!(f, "group {group}: alpha > beta"),
            Violation::Infeasible { side, detail } => {
                write!(f, "infeasible {} bounds: {detail}", side.name())
            }
        }
    }
}

/// Outcome of [`validate_instance`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks every invariant of the raw instance, including bound feasibility.
pub fn validate_instance(raw: &RawInstance) -> ValidationReport {
    let mut violations = Vec::new();
    let d = raw.group_of.len();
    if raw.rankings.is_empty() {
        violations.push(Violation::EmptyRankingSet);
    }
    for (i, r) in raw.rankings.iter().enumerate() {
        if r.len() != d {
            violations.push(Violation::RankingLength {
                ranking: i,
                expected: d,
                found: r.len(),
            });
        }
        violations.extend(ranking_violations(i, r));
    }
    violations.extend(group_violations(&raw.group_of, raw.g, d, raw.allow_empty_groups));
    if raw.k == 0 || raw.k > d {
        violations.push(Violation::KOutOfRange { k: raw.k, d });
    }
    if raw.alpha.len() != raw.g || raw.beta.len() != raw.g {
        violations.push(Violation::ParameterCount {
            g: raw.g,
            alpha: raw.alpha.len(),
            beta: raw.beta.len(),
        });
    }
    let param_violations = fairness_violations(raw.k.max(1), &raw.alpha, &raw.beta);
    violations.extend(
        param_violations
            .into_iter()
            .filter(|v| !matches!(v, Violation::KOutOfRange { .. } | Violation::ParameterCount { .. })),
    );
    if violations.is_empty() {
        let mut sizes = vec![0; raw.g];
        for &a in &raw.group_of {
            sizes[a] += 1;
        }
        let lo: Vec<i64> = raw.alpha.iter().map(|&a| floor_mul(a, raw.k)).collect();
        let up: Vec<i64> = raw.beta.iter().map(|&b| ceil_mul(b, raw.k)).collect();
        violations.extend(bound_violations(&lo, &up, raw.k, &sizes, Side::Top));
    }
    ValidationReport { violations }
}

fn ranking_violations(index: usize, rank_of: &[usize]) -> Vec<Violation> {
    let d = rank_of.len();
    let mut out = Vec::new();
    let mut seen = vec![false; d + 1];
    for (c, &r) in rank_of.iter().enumerate() {
        if r == 0 || r > d {
            out.push(Violation::RankOutOfRange {
                ranking: index,
                candidate: c,
                rank: r,
            });
        } else if std::mem::replace(&mut seen[r], true) {
            out.push(Violation::DuplicateRank {
                ranking: index,
                rank: r,
            });
        }
    }
    out
}

fn group_violations(group_of: &[usize], g: usize, d: usize, allow_empty: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    if group_of.len() != d {
        out.push(Violation::GroupLength {
            expected: d,
            found: group_of.len(),
        });
    }
    let mut used = vec![false; g];
    for (c, &a) in group_of.iter().enumerate() {
        if a >= g {
            out.push(Violation::GroupOutOfRange {
                candidate: c,
                group: a,
            });
        } else {
            used[a] = true;
        }
    }
    if !allow_empty {
        out.extend(
            used.iter()
                .enumerate()
                .filter(|(_, &u)| !u)
                .map(|(group, _)| Violation::EmptyGroup { group }),
        );
    }
    out
}

fn fairness_violations(k: usize, alpha: &[Rational], beta: &[Rational]) -> Vec<Violation> {
    let mut out = Vec::new();
    if k == 0 {
        out.push(Violation::KOutOfRange { k, d: 0 });
    }
    if alpha.len() != beta.len() {
        out.push(Violation::ParameterCount {
            g: alpha.len(),
            alpha: alpha.len(),
            beta: beta.len(),
        });
    }
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    for (name, values) in [("alpha", alpha), ("beta", beta)] {
        for (group, &value) in values.iter().enumerate() {
            if value < zero || value > one {
                out.push(Violation::ParameterOutOfRange { group, name, value });
            }
        }
    }
    for (group, (a, b)) in alpha.iter().zip(beta).enumerate() {
        if a > b {
            out.push(Violation::AlphaAboveBeta { group });
        }
    }
    out
}

fn bound_violations(lo: &[i64], up: &[i64], k: usize, sizes: &[usize], side: Side) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |detail: String| out.push(Violation::Infeasible { side, detail });
    if lo.len() != sizes.len() || up.len() != sizes.len() {
        push(format!(
            "{} lower and {} upper bounds for {} groups",
            lo.len(),
            up.len(),
            sizes.len()
        ));
        return out;
    }
    let k = k as i64;
    for (a, ((&l, &u), &s)) in lo.iter().zip(up).zip(sizes).enumerate() {
        if l < 0 || u < 0 {
            push(format!("group {a}: negative bound (lower {l}, upper {u})"));
        }
        if l > u {
            push(format!("group {a}: lower {l} > upper {u}"));
        }
        if l > s as i64 {
            push(format!("group {a}: lower {l} > |G| = {s}"));
        }
    }
    let lower_sum: i64 = lo.iter().sum();
    if lower_sum > k {
        push(format!("sum of lower bounds {lower_sum} > k = {k}"));
    }
    let capacity: i64 = up.iter().zip(sizes).map(|(&u, &s)| u.min(s as i64).max(0)).sum();
    if capacity < k {
        push(format!("k = {k} > sum of min(upper, |G|) = {capacity}"));
    }
    out
}

fn infeasible(violations: &[Violation]) -> Error {
    let parts: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    Error::InfeasibleBounds(parts.join("; "))
}

fn check_dims(fairness: &FairnessSpec, groups: &GroupAssignment) -> Result<()> {
    if fairness.g() != groups.g() {
        return Err(Error::DimensionMismatch {
            expected: groups.g(),
            found: fairness.g(),
        });
    }
    if fairness.k() > groups.d() {
        return Err(Error::InvalidFairness(format!(
            "k = {} exceeds d = {}",
            fairness.k(),
            groups.d()
        )));
    }
    Ok(())
}
