#![allow(dead_code)]

use fairagg_core::synthetic::{mallows_ranking, uniform_ranking};
use fairagg_core::{FairnessSpec, GroupAssignment, Instance, Ranking, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random partition of `d` candidates into `g` nonempty groups.
pub fn random_groups<R: Rng>(d: usize, g: usize, rng: &mut R) -> GroupAssignment {
    let mut group_of: Vec<usize> = (0..d).map(|c| if c < g { c } else { rng.random_range(0..g) }).collect();
    group_of.shuffle(rng);
    GroupAssignment::new(group_of, g).unwrap()
}

/// Rankings drawn uniformly or around a random center.
pub fn random_rankings<R: Rng>(d: usize, n: usize, rng: &mut R) -> Vec<Ranking> {
    if rng.random_bool(0.5) {
        (0..n).map(|_| uniform_ranking(d, rng)).collect()
    } else {
        let center = uniform_ranking(d, rng);
        let theta = [0.3, 0.7, 1.5][rng.random_range(0..3)];
        (0..n).map(|_| mallows_ranking(&center, theta, rng)).collect()
    }
}

fn clamp01(r: Rational) -> Rational {
    r.max(Rational::from_integer(0)).min(Rational::from_integer(1))
}

/// Random alpha/beta around the group proportions, widened by a random slack.
pub fn random_fairness<R: Rng>(groups: &GroupAssignment, k: usize, rng: &mut R) -> FairnessSpec {
    let d = groups.d() as i64;
    let slack = [0, 0, 1, 2, 4][rng.random_range(0..5)];
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for &s in groups.sizes() {
        let p = Rational::new(s as i64, d);
        let lo = Rational::new(rng.random_range(0..=slack), 10);
        let hi = Rational::new(rng.random_range(0..=slack), 10);
        alpha.push(clamp01(p - lo));
        beta.push(clamp01(p + hi));
    }
    FairnessSpec::new(k, alpha, beta).unwrap()
}

/// Random instance with feasible bounds, `2 <= d <= max_d`.
pub fn random_instance<R: Rng>(max_d: usize, max_n: usize, max_g: usize, rng: &mut R) -> Instance {
    loop {
        let d = rng.random_range(2..=max_d);
        let g = rng.random_range(1..=max_g.min(d));
        let n = rng.random_range(1..=max_n);
        let k = rng.random_range(1..=d);
        let groups = random_groups(d, g, rng);
        let rankings = random_rankings(d, n, rng);
        let fairness = random_fairness(&groups, k, rng);
        if let Ok(inst) = Instance::new(rankings, groups, fairness) {
            return inst;
        }
    }
}

/// Instance with `alpha = beta` = group proportions.
pub fn proportional_instance<R: Rng>(max_d: usize, max_n: usize, max_g: usize, rng: &mut R) -> Instance {
    loop {
        let d = rng.random_range(2..=max_d);
        let g = rng.random_range(1..=max_g.min(d));
        let n = rng.random_range(1..=max_n);
        let k = rng.random_range(1..=d);
        let groups = random_groups(d, g, rng);
        let rankings = random_rankings(d, n, rng);
        let fairness = FairnessSpec::proportional(&groups, k).unwrap();
        if let Ok(inst) = Instance::new(rankings, groups, fairness) {
            return inst;
        }
    }
}
