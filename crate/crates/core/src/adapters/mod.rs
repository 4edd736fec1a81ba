//! Reductions of the ordered, cyclic and classical fixed point settings to
//! the generalized α-ψ contractive pair framework.

mod corollary;
mod cyclic;
mod order;

use thiserror::Error;

pub use corollary::{check_direct_form, check_dominance, reduce_corollary, CorollaryConfig, Reduction};
pub use cyclic::{
    alpha_from_cyclic, alpha_from_cyclic_interval, check_cyclic_conditions, check_cyclic_conditions_interval,
    CyclicAlpha, CyclicConditions,
};
pub use order::{
    alpha_from_order, check_g_nondecreasing, check_g_regular, check_ordered_initial_point, check_upper_bound_hypothesis,
    OrderAlpha,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AdapterError {
    #[error("coefficient out of range: {0}")]
    CoefficientOutOfRange(String),
    #[error("image of {set} under g is not a bounded closed interval")]
    ImageNotClosed { set: &'static str },
}
