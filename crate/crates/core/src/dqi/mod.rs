//! Shell weights, failure profiles and measurement probabilities.

mod probability;
mod profile;
mod shell;
mod weights;

pub use probability::{
    amplitude_oracle, default_degree, normalization, oracle_probabilities, p_approx, p_exact,
    p_opt_approx, p_opt_exact, DqiEstimate, AMPLITUDE_MAX_VARS,
};
pub use profile::{
    exact_profile_size, failure_profile_exact, failure_profile_exact_with_budget,
    failure_profile_mc, sample_error, DecodedError, FailureProfile, ProfileMode,
    DEFAULT_ENUMERATION_BUDGET, DEFAULT_SAMPLES,
};
pub use shell::{binomial, binomial_f64, shell_sum_a, shell_sum_ratio};
pub use weights::{dicke_weights, DickeWeights};
