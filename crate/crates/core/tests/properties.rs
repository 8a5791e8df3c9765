mod common;

use common::{random_instance, rng};
use fairagg_core::metrics::{
    directional_objective, footrule, footrule_topk, kendall_tau, left_displacement, objective,
    right_displacement, Direction, DirectionalObjectiveSpec,
};
use fairagg_core::rational::{ceil_mul, floor_mul, parse_rational};
use fairagg_core::synthetic::uniform_ranking;
use fairagg_core::{check_fairness, Rational, Ranking};
use itertools::Itertools;
use proptest::prelude::*;

fn ranking_pair() -> impl Strategy<Value = (Ranking, Ranking)> {
    (1usize..=12, any::<u64>()).prop_map(|(d, seed)| {
        let mut r = rng(seed);
        (uniform_ranking(d, &mut r), uniform_ranking(d, &mut r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn floor_and_ceil_match_integer_division(p in 0i64..=1_000_000, q in 1i64..=1_000_000, k in 0usize..=10_000) {
        let r = Rational::new(p, q);
        let prod = p as i128 * k as i128;
        let q = q as i128;
        prop_assert_eq!(floor_mul(r, k) as i128, prod / q);
        prop_assert_eq!(ceil_mul(r, k) as i128, (prod + q - 1) / q);
    }

    #[test]
    fn decimal_strings_are_exact(int in 0u32..=3, frac in 0u32..=9999) {
        let text = format!("{int}.{frac:04}");
        let r = parse_rational(&text).unwrap();
        let scaled = int as i64 * 10_000 + frac as i64;
        prop_assert_eq!(floor_mul(r, 10_000), scaled);
        prop_assert_eq!(ceil_mul(r, 10_000), scaled);
    }

    #[test]
    fn displacement_sums_agree((p, q) in ranking_pair()) {
        prop_assert_eq!(left_displacement(&p, &q).unwrap(), right_displacement(&p, &q).unwrap());
        prop_assert_eq!(footrule(&p, &q).unwrap(), 2 * left_displacement(&p, &q).unwrap());
    }

    #[test]
    fn diaconis_graham((p, q) in ranking_pair()) {
        let f = footrule(&p, &q).unwrap();
        let k = kendall_tau(&p, &q).unwrap();
        prop_assert!(k <= f && f <= 2 * k);
    }

    #[test]
    fn full_list_footrule_is_footrule((p, q) in ranking_pair()) {
        prop_assert_eq!(footrule_topk(&p, &q.top_k(q.d())).unwrap(), footrule(&p, &q).unwrap());
    }

    #[test]
    fn directional_objectives_equal_objective(seed in any::<u64>(), n in 1usize..=5, d in 1usize..=10) {
        let mut r = rng(seed);
        let s: Vec<Ranking> = (0..n).map(|_| uniform_ranking(d, &mut r)).collect();
        let sigma = uniform_ranking(d, &mut r);
        let obj = objective(&s, &sigma).unwrap();
        for dir in [Direction::Leftward, Direction::Rightward] {
            let spec = DirectionalObjectiveSpec::all(dir, d);
            prop_assert_eq!(directional_objective(&s, &sigma, &spec).unwrap(), obj);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// A ranking meets the top bounds iff its bottom `d - k` positions meet
    /// the complement bounds, checked over every permutation.
    #[test]
    fn complement_bounds_are_equivalent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_instance(7, 1, 3, &mut r);
        let top = inst.bounds();
        let bottom = inst.complement_bounds();
        let d = inst.d();
        for order in (0..d).permutations(d) {
            let sigma = Ranking::from_order(&order).unwrap();
            prop_assert_eq!(
                check_fairness(&sigma, top, inst.groups()).unwrap(),
                check_fairness(&sigma, &bottom, inst.groups()).unwrap()
            );
        }
    }
}
