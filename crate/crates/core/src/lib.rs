//! Fair rank aggregation under the Spearman footrule distance.
//!
//! Given rankings `S` over `d` candidates partitioned into groups, and
//! per-group proportional bounds on the top-`k` positions, the crate offers:
//!
//! * an exact solver for the fair top-`k` aggregation problem
//!   ([`solvers::fair_topk_exact`]), built on an integral min-cost flow;
//! * two 2-approximate fair full-ranking pipelines and their best-of-two
//!   combiner ([`solvers::aggregate_alg1`], [`solvers::aggregate_alg2`],
//!   [`solvers::aggregate_alg3`]);
//! * the best-fair-input baseline ([`solvers::bfi_aggregate`]) and the exact
//!   unconstrained footrule median ([`solvers::unconstrained_aggregate`]);
//! * exhaustive oracles ([`oracle`]) used to verify all of the above;
//! * the (3,3)-SAT reduction to fair colorful weighted perfect matching
//!   ([`hardness`]).
//!
//! ```
//! use fairagg_core::{FairnessSpec, GroupAssignment, Instance, Ranking};
//! use fairagg_core::solvers::aggregate_alg3;
//!
//! let s = vec![
//!     Ranking::from_ranks(vec![1, 2, 3, 4]).unwrap(),
//!     Ranking::from_ranks(vec![2, 1, 4, 3]).unwrap(),
//! ];
//! let groups = GroupAssignment::new(vec![0, 0, 1, 1], 2).unwrap();
//! let fairness = FairnessSpec::parse(2, &["1/2", "1/2"], &["1/2", "1/2"]).unwrap();
//! let inst = Instance::new(s, groups, fairness).unwrap();
//! let res = aggregate_alg3(&inst).unwrap();
//! assert_eq!(res.objective, 8);
//! ```

pub mod error;
pub mod flow;
pub mod hardness;
pub mod metrics;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod solvers;
pub mod synthetic;

pub use error::{Error, Result};
pub use model::{
    check_fairness, derive_complement_bounds, derive_topk_bounds, validate_instance, CountBounds,
    FairnessSpec, GroupAssignment, Instance, RawInstance, Ranking, Side, Subject, TopKList,
    ValidationReport, Violation,
};
pub use num_rational::Ratio;

/// Exact rational used for fairness parameters.
pub type Rational = Ratio<i64>;
