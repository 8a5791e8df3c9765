//! Aggregation algorithms.
//!
//! * [`fair_topk_exact`]: optimal fair top-`k` list (min-cost flow).
//! * [`solve_constrained_side`] and [`complete_list`]: the two halves of the
//!   approximate full-ranking pipelines.
//! * [`aggregate_alg1`], [`aggregate_alg2`], [`aggregate_alg3`]: fair full
//!   rankings within a factor 2 of optimal.
//! * [`bfi_aggregate`]: best closest-fair-ranking of any input (factor 3).
//! * [`unconstrained_aggregate`]: exact footrule median, ignoring fairness.

mod aggregate;
mod bfi;
mod completion;
mod topk;
mod weights;

pub use aggregate::{
    aggregate, aggregate_alg1, aggregate_alg2, aggregate_alg3, aggregate_unconstrained,
    certified_ratio, unconstrained_aggregate, AggregationResult, Variant,
};
pub use bfi::{
    bfi_aggregate, bfi_aggregate_with_cap, closest_fair_ranking, closest_fair_ranking_with_cap,
    DEFAULT_ENUMERATION_CAP,
};
pub use completion::{complete_list, completion_problem, CompletionProblem};
pub use topk::{fair_topk_exact, solve_constrained_side};
pub use weights::{build_weights, WeightKind, WeightMatrix};
