//! Seeded synthetic ranking generators.
//!
//! All generators draw from a caller-supplied RNG; pair them with
//! `ChaCha8Rng` for output that is identical across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{GroupAssignment, Ranking};

/// How rankings are sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RankingModel {
    /// Uniform over all permutations.
    Uniform,
    /// Mallows model around a random center with dispersion `exp(-theta)`.
    Mallows { theta: f64 },
}

pub fn uniform_ranking<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Ranking {
    let mut order: Vec<usize> = (0..d).collect();
    order.shuffle(rng);
    Ranking::from_order(&order).expect("shuffled identity is a permutation")
}

/// Draws from the Mallows distribution centered at `center` by repeated
/// insertion: the `i`-th candidate of the center is inserted `s` slots above
/// the bottom of the partial list with probability proportional to
/// `exp(-theta)^s`.
pub fn mallows_ranking<R: Rng + ?Sized>(center: &Ranking, theta: f64, rng: &mut R) -> Ranking {
    let phi = (-theta).exp();
    let center_order = center.order();
    let mut order: Vec<usize> = Vec::with_capacity(center_order.len());
    for (i, &c) in center_order.iter().enumerate() {
        // Weights phi^0 .. phi^i for displacing c by 0..=i slots upward.
        let weights: Vec<f64> = (0..=i).map(|s| phi.powi(s as i32)).collect();
        let total: f64 = weights.iter().sum();
        let mut x = rng.random::<f64>() * total;
        let mut shift = i;
        for (s, w) in weights.iter().enumerate() {
            if x < *w {
                shift = s;
                break;
            }
            x -= w;
        }
        order.insert(i - shift, c);
    }
    Ranking::from_order(&order).expect("insertion keeps a permutation")
}

/// A generated dataset: `n` rankings and a round-robin group assignment.
#[derive(Debug, Clone)]
pub struct SyntheticData {
    pub rankings: Vec<Ranking>,
    pub groups: GroupAssignment,
}

/// `n` rankings over `d` candidates in `g` round-robin groups; deterministic
/// in `seed`.
pub fn generate(d: usize, n: usize, g: usize, seed: u64, model: RankingModel) -> Result<SyntheticData> {
    if g == 0 || d < g {
        return Err(Error::InvalidParameter(format!("need d >= g >= 1, got d = {d}, g = {g}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    if let RankingModel::Mallows { theta } = model {
        if !(theta.is_finite() && theta >= 0.0) {
            return Err(Error::InvalidParameter(format!("theta = {theta} must be finite and >= 0")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rankings = match model {
        RankingModel::Uniform => (0..n).map(|_| uniform_ranking(d, &mut rng)).collect(),
        RankingModel::Mallows { theta } => {
            let center = uniform_ranking(d, &mut rng);
            (0..n).map(|_| mallows_ranking(&center, theta, &mut rng)).collect()
        }
    };
    Ok(SyntheticData {
        rankings,
        groups: GroupAssignment::round_robin(d, g)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{footrule, kendall_tau};
    use itertools::Itertools;

    #[test]
    fn deterministic_per_seed() {
        let a = generate(6, 3, 2, 7, RankingModel::Uniform).unwrap();
        let b = generate(6, 3, 2, 7, RankingModel::Uniform).unwrap();
        assert_eq!(a.rankings, b.rankings);
        let c = generate(6, 3, 2, 8, RankingModel::Uniform).unwrap();
        assert_ne!(a.rankings, c.rankings);
    }

    #[test]
    fn round_robin_sizes() {
        let data = generate(7, 1, 3, 0, RankingModel::Uniform).unwrap();
        assert_eq!(data.groups.sizes(), &[3, 2, 2]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate(2, 1, 3, 0, RankingModel::Uniform).is_err());
        assert!(generate(3, 0, 1, 0, RankingModel::Uniform).is_err());
        assert!(generate(3, 1, 0, 0, RankingModel::Uniform).is_err());
        assert!(generate(3, 1, 1, 0, RankingModel::Mallows { theta: -1.0 }).is_err());
    }

    #[test]
    fn uniform_mean_footrule_matches_exhaustive_mean() {
        let d = 5;
        let id = Ranking::identity(d);
        let all: Vec<u64> = (0..d)
            .permutations(d)
            .map(|o| footrule(&id, &Ranking::from_order(&o).unwrap()).unwrap())
            .collect();
        let exact = all.iter().sum::<u64>() as f64 / all.len() as f64;
        // (d^2 - 1) / 3 = 8 for d = 5.
        assert!((exact - 8.0).abs() < 1e-12);
        let data = generate(d, 1000, 1, 42, RankingModel::Uniform).unwrap();
        let mean = data
            .rankings
            .iter()
            .map(|r| footrule(&id, r).unwrap())
            .sum::<u64>() as f64
            / 1000.0;
        assert!((mean - exact).abs() / exact < 0.05, "mean {mean} vs {exact}");
    }

    #[test]
    fn mallows_concentrates_with_theta() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let center = uniform_ranking(10, &mut rng);
        let mean_kt = |theta: f64, rng: &mut ChaCha8Rng| {
            (0..300)
                .map(|_| kendall_tau(&center, &mallows_ranking(&center, theta, rng)).unwrap())
                .sum::<u64>() as f64
                / 300.0
        };
        let loose = mean_kt(0.0, &mut rng);
        let tight = mean_kt(2.0, &mut rng);
        // theta = 0 is uniform: expected Kendall distance 45 / 2.
        assert!((loose - 22.5).abs() < 2.0, "{loose}");
        assert!(tight < 3.0, "{tight}");
        let huge = mallows_ranking(&center, 50.0, &mut rng);
        assert_eq!(huge, center);
    }
}
