mod common;

use common::rng;
use fairagg_core::hardness::{
    decide_33sat_via_matching, max_fair_value_01, reduce_33sat, CnfFormula, FairMatchingInstance,
};
use fairagg_core::oracle::{brute_fair_matching, brute_sat};
use fairagg_core::{Error, Rational};
use itertools::Itertools;
use rand::Rng;

/// Every clause over `n` variables: distinct literals, 1 to 3 of them.
fn all_clauses(n: i32) -> Vec<Vec<i32>> {
    let lits: Vec<i32> = (1..=n).flat_map(|v| [v, -v]).collect();
    (1..=3)
        .flat_map(|size| lits.iter().copied().combinations(size))
        .collect()
}

/// Every (3,3) formula with `n` variables and at most `max_m` clauses.
fn all_formulas(n: usize, max_m: usize) -> Vec<CnfFormula> {
    let clauses = all_clauses(n as i32);
    let mut out = Vec::new();
    for m in 0..=max_m {
        for combo in (0..clauses.len()).combinations_with_replacement(m) {
            let cs = combo.iter().map(|&i| clauses[i].clone()).collect();
            if let Ok(f) = CnfFormula::new(n, cs) {
                out.push(f);
            }
        }
    }
    out
}

fn weight_one_count(inst: &FairMatchingInstance, w: usize) -> usize {
    inst.weights.iter().filter(|row| row[w] == 1).count()
}

fn check_structure(f: &CnfFormula, inst: &FairMatchingInstance) {
    let n = f.num_vars();
    let m = f.num_clauses();
    assert_eq!(inst.size(), 6 * n);
    assert_eq!(inst.target, (3 * n + m) as i64);
    assert_eq!(inst.protected, (0..3 * n).collect::<Vec<_>>());
    assert_eq!(inst.num_colors, 3 * n);
    let touched = (0..inst.size()).filter(|&w| weight_one_count(inst, w) > 0).count();
    assert_eq!(touched, 3 * n + m);
    for var in 0..n {
        let edges: usize = (3 * var..3 * var + 3).map(|w| weight_one_count(inst, w)).sum();
        assert_eq!(edges, 6);
    }
    for (j, clause) in f.clauses().iter().enumerate() {
        assert_eq!(weight_one_count(inst, 3 * n + j), clause.len());
    }
    for w in 3 * n + m..6 * n {
        assert_eq!(weight_one_count(inst, w), 0);
    }
    if n > 0 {
        assert_eq!(inst.count_bounds(), (vec![1; 3 * n], vec![1; 3 * n]));
    }
}

#[test]
fn agrees_with_truth_table_on_all_small_formulas() {
    let mut checked = 0;
    for n in 1..=2 {
        for f in all_formulas(n, 3) {
            let inst = reduce_33sat(&f).unwrap();
            check_structure(&f, &inst);
            assert_eq!(
                decide_33sat_via_matching(&f).unwrap(),
                brute_sat(&f).unwrap(),
                "{:?}",
                f.clauses()
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 347);
}

/// Random (3,3) formula on `n` variables.
pub fn random_formula<R: Rng>(n: usize, r: &mut R) -> CnfFormula {
    loop {
        let m = r.random_range(1..=3 * n);
        let clauses: Vec<Vec<i32>> = (0..m)
            .map(|_| {
                let size = r.random_range(1..=3);
                (0..size)
                    .map(|_| {
                        let v = r.random_range(1..=n as i32);
                        if r.random_bool(0.5) { v } else { -v }
                    })
                    .collect()
            })
            .collect();
        if let Ok(f) = CnfFormula::new(n, clauses) {
            return f;
        }
    }
}

#[test]
fn agrees_with_truth_table_on_three_variables() {
    let mut r = rng(81);
    for _ in 0..10 {
        let f = random_formula(3, &mut r);
        let inst = reduce_33sat(&f).unwrap();
        check_structure(&f, &inst);
        assert_eq!(decide_33sat_via_matching(&f).unwrap(), brute_sat(&f).unwrap());
    }
}

fn random_01_instance<R: Rng>(r: &mut R) -> FairMatchingInstance {
    let n = r.random_range(1..=6);
    let colors = r.random_range(1..=3);
    let weights = (0..n)
        .map(|_| (0..n).map(|_| i64::from(r.random_bool(0.4))).collect())
        .collect();
    let protected: Vec<usize> = (0..n).filter(|_| r.random_bool(0.5)).collect();
    let quarters = |r: &mut R| Rational::new(r.random_range(0..=4), 4);
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    for _ in 0..colors {
        let (a, b) = (quarters(r), quarters(r));
        alpha.push(a.min(b));
        beta.push(a.max(b));
    }
    FairMatchingInstance {
        left_labels: (0..n).map(|i| format!("u{i}")).collect(),
        right_labels: (0..n).map(|i| format!("w{i}")).collect(),
        weights,
        protected,
        color_of: (0..n).map(|_| r.random_range(0..colors)).collect(),
        num_colors: colors,
        alpha,
        beta,
        target: 0,
    }
}

#[test]
fn zero_one_matcher_matches_enumeration() {
    let mut r = rng(82);
    for _ in 0..300 {
        let inst = random_01_instance(&mut r);
        let fast = max_fair_value_01(&inst).unwrap();
        let slow = match brute_fair_matching(&inst) {
            Ok((v, m)) => {
                assert!(inst.is_fair(&m));
                Some(v)
            }
            Err(Error::Infeasible) => None,
            Err(e) => panic!("{e}"),
        };
        assert_eq!(fast, slow);
    }
}

#[test]
fn tiny_matching_examples() {
    let one = FairMatchingInstance {
        left_labels: vec!["u".into()],
        right_labels: vec!["w".into()],
        weights: vec![vec![3]],
        protected: vec![],
        color_of: vec![0],
        num_colors: 1,
        alpha: vec![Rational::from_integer(0)],
        beta: vec![Rational::from_integer(1)],
        target: 3,
    };
    assert_eq!(brute_fair_matching(&one).unwrap(), (3, vec![0]));

    // Two colors, Z = {w0}; each color may send at most one vertex into Z.
    let two = FairMatchingInstance {
        left_labels: vec!["u0".into(), "u1".into()],
        right_labels: vec!["w0".into(), "w1".into()],
        weights: vec![vec![5, 1], vec![2, 1]],
        protected: vec![0],
        color_of: vec![0, 1],
        num_colors: 2,
        alpha: vec![Rational::from_integer(0); 2],
        beta: vec![Rational::from_integer(1); 2],
        target: 0,
    };
    assert_eq!(brute_fair_matching(&two).unwrap(), (6, vec![0, 1]));
    // Forcing color 1 into Z leaves only the other matching.
    let forced = FairMatchingInstance {
        alpha: vec![Rational::from_integer(0), Rational::from_integer(1)],
        ..two.clone()
    };
    assert_eq!(brute_fair_matching(&forced).unwrap(), (3, vec![1, 0]));
    let impossible = FairMatchingInstance {
        alpha: vec![Rational::from_integer(1); 2],
        ..two
    };
    assert_eq!(brute_fair_matching(&impossible), Err(Error::Infeasible));
}

#[test]
fn satisfiable_gadget_reaches_target() {
    let f = CnfFormula::new(1, vec![vec![1]]).unwrap();
    let inst = reduce_33sat(&f).unwrap();
    let (value, m) = brute_fair_matching(&inst).unwrap();
    assert!(value >= inst.target);
    assert!(inst.is_fair(&m));
}
