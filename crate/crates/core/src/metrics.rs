//! Footrule, Kendall-tau, and the aggregate objectives built on them.
//!
//! All values are exact integers.

use crate::error::{Error, Result};
use crate::model::{Ranking, Side, Subject, TopKList};

fn same_d(p: usize, q: usize) -> Result<()> {
    if p != q {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: q,
        });
    }
    Ok(())
}

/// Spearman footrule `Σ_i |p(i) - q(i)|`.
pub fn footrule(p: &Ranking, q: &Ranking) -> Result<u64> {
    same_d(p.d(), q.d())?;
    Ok(p.ranks()
        .iter()
        .zip(q.ranks())
        .map(|(&a, &b)| a.abs_diff(b) as u64)
        .sum())
}

/// Footrule between a ranking and a top-`k` list, with unplaced candidates
/// charged as if at rank `k + 1`.
pub fn footrule_topk(sigma: &Ranking, tau: &TopKList) -> Result<u64> {
    same_d(sigma.d(), tau.d())?;
    if tau.side() != Side::Top {
        return Err(Error::WrongSide {
            expected: "top",
            found: tau.side().name(),
        });
    }
    let missing = tau.k() + 1;
    Ok((0..sigma.d())
        .map(|c| sigma.rank(c).abs_diff(tau.position(c).unwrap_or(missing)) as u64)
        .sum())
}

/// Number of candidate pairs ordered oppositely by `p` and `q`.
///
/// Counts inversions of `q`'s ranks read in `p`'s order with a merge sort.
pub fn kendall_tau(p: &Ranking, q: &Ranking) -> Result<u64> {
    same_d(p.d(), q.d())?;
    let mut seq: Vec<usize> = p.order().iter().map(|&c| q.rank(c)).collect();
    let mut buf = vec![0; seq.len()];
    Ok(count_inversions(&mut seq, &mut buf))
}

fn count_inversions(a: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = a.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (l, r) = a.split_at_mut(mid);
        count_inversions(l, &mut buf[..mid]) + count_inversions(r, &mut buf[mid..])
    };
    let (mut i, mut j, mut t) = (0, mid, 0);
    while i < mid && j < n {
        if a[i] <= a[j] {
            buf[t] = a[i];
            i += 1;
        } else {
            buf[t] = a[j];
            j += 1;
            inv += (mid - i) as u64;
        }
        t += 1;
    }
    buf[t..t + mid - i].copy_from_slice(&a[i..mid]);
    t += mid - i;
    buf[t..t + n - j].copy_from_slice(&a[j..n]);
    a.copy_from_slice(&buf[..n]);
    inv
}

/// Quadratic pair-by-pair Kendall-tau; reference for tests.
pub fn kendall_tau_naive(p: &Ranking, q: &Ranking) -> Result<u64> {
    same_d(p.d(), q.d())?;
    let d = p.d();
    let mut count = 0;
    for a in 0..d {
        for b in a + 1..d {
            let pa = p.rank(a) < p.rank(b);
            let qa = q.rank(a) < q.rank(b);
            if pa != qa {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `Σ_{π ∈ S} F(π, subject)`, using the generalized footrule for lists.
pub fn objective<'a>(s: &[Ranking], subject: impl Into<Subject<'a>>) -> Result<u64> {
    let subject = subject.into();
    s.iter()
        .map(|pi| match subject {
            Subject::Full(sigma) => footrule(pi, sigma),
            Subject::Partial(tau) => footrule_topk(pi, tau),
        })
        .sum()
}

/// `Σ_{π ∈ S} κ(π, sigma)`.
pub fn kendall_objective(s: &[Ranking], sigma: &Ranking) -> Result<u64> {
    s.iter().map(|pi| kendall_tau(pi, sigma)).sum()
}

/// Distance used for a full-ranking objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Footrule,
    Kendall,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Footrule => "footrule",
            Metric::Kendall => "kendall",
        }
    }

    pub fn distance(self, p: &Ranking, q: &Ranking) -> Result<u64> {
        match self {
            Metric::Footrule => footrule(p, q),
            Metric::Kendall => kendall_tau(p, q),
        }
    }

    pub fn objective(self, s: &[Ranking], sigma: &Ranking) -> Result<u64> {
        s.iter().map(|pi| self.distance(pi, sigma)).sum()
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "footrule" => Ok(Metric::Footrule),
            "kendall" => Ok(Metric::Kendall),
            _ => Err(Error::InvalidParameter(format!("unknown metric {s:?}"))),
        }
    }
}

/// Sum of `π(i) - σ(i)` over candidates that `σ` moves toward the front.
pub fn left_displacement(pi: &Ranking, sigma: &Ranking) -> Result<u64> {
    same_d(pi.d(), sigma.d())?;
    Ok(pi
        .ranks()
        .iter()
        .zip(sigma.ranks())
        .filter(|(p, s)| s < p)
        .map(|(&p, &s)| (p - s) as u64)
        .sum())
}

/// Sum of `σ(i) - π(i)` over candidates that `σ` moves toward the back.
pub fn right_displacement(pi: &Ranking, sigma: &Ranking) -> Result<u64> {
    left_displacement(sigma, pi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Leftward,
    Rightward,
}

/// Direction and candidate domain of a directional objective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionalObjectiveSpec {
    pub direction: Direction,
    pub domain: Vec<usize>,
}

impl DirectionalObjectiveSpec {
    pub fn new(direction: Direction, domain: Vec<usize>) -> Self {
        Self { direction, domain }
    }

    /// Domain covering all `d` candidates.
    pub fn all(direction: Direction, d: usize) -> Self {
        Self::new(direction, (0..d).collect())
    }
}

/// Twice the leftward (or rightward) displacement of `sigma` relative to
/// every `π ∈ S`, restricted to the candidates in `spec.domain`.
///
/// Over the full domain both directions equal [`objective`].
pub fn directional_objective(
    s: &[Ranking],
    sigma: &Ranking,
    spec: &DirectionalObjectiveSpec,
) -> Result<u64> {
    let d = sigma.d();
    if let Some(&c) = spec.domain.iter().find(|&&c| c >= d) {
        return Err(Error::InvalidParameter(format!(
            "domain candidate {c} out of range for d = {d}"
        )));
    }
    let mut total = 0u64;
    for pi in s {
        same_d(pi.d(), d)?;
        for &i in &spec.domain {
            let (p, q) = (pi.rank(i), sigma.rank(i));
            total += match spec.direction {
                Direction::Leftward if q < p => (p - q) as u64,
                Direction::Rightward if p < q => (q - p) as u64,
                _ => 0,
            };
        }
    }
    Ok(2 * total)
}
