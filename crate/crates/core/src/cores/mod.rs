//! Reductions, reduction numbers and cores.
//!
//! The core of `I` is the intersection of all its reductions. Three routes
//! compute it:
//!
//! * colon: `core(I) = J^{r+1} : I^r` for a minimal reduction `J` with
//!   reduction number `r`, checked against a second, independently sampled
//!   reduction;
//! * polyhedral: `core(I) = adj(I^h)` for normal cofinite monomial ideals;
//! * sandwich: the intersection of sampled reductions bounds the core from
//!   above; the polyhedral or colon core bounds it from below.
//!
//! Everything is local at the origin. When a reduction is not generated by
//! forms its powers are replaced by their contractions from the local ring
//! before taking colons.
//!
//! All randomness flows from one 64-bit seed through [`child_seed`] into
//! ChaCha8 generators, so results are reproducible bit for bit.

mod checks;
mod routes;
mod sampling;

pub use checks::{
    graded_core_maximal, verify_core_integrally_closed, verify_core_power, GradedCoreReport, IcCoreCheck,
    PowerCoreCheck,
};
pub use routes::{coefficient_ideal, core_colon, core_polyhedral, core_sandwich, CoefficientIdeal, CoreResult, Route};
pub use sampling::{child_seed, is_reduction, random_reduction, splitmix64, ReductionCertificate, MAX_RESAMPLES};

/// Warning attached to prime-characteristic colon results with `r >= 2`.
pub const WARN_HEURISTIC: &str = "heuristic: prime characteristic with reduction number at least 2";
/// Warning attached to ideals whose hypotheses cannot be checked.
pub const WARN_CALLER_HYPOTHESES: &str = "hypotheses asserted by caller";
/// Warning attached to forced polyhedral cores of non-normal ideals.
pub const WARN_UNVERIFIED: &str = "formula hypothesis unverified";

/// Which elements reduction generators combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SamplingMode {
    /// Combinations of all generators of `I`.
    General,
    /// Combinations of forms of one degree only.
    Graded,
}

/// Knobs shared by the randomized routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreOptions {
    pub seed: u64,
    /// Random coefficients are drawn from `[-coeff_bound, coeff_bound] \ {0}`.
    pub coeff_bound: u64,
    /// Largest reduction number searched for.
    pub r_max: u32,
    /// Reductions intersected by the sandwich route.
    pub trials: u32,
    /// Compute polyhedral cores of ideals failing the normality check.
    pub force: bool,
    pub mode: SamplingMode,
}

impl Default for CoreOptions {
    fn default() -> Self {
        CoreOptions {
            seed: 0,
            coeff_bound: 20,
            r_max: 20,
            trials: 25,
            force: false,
            mode: SamplingMode::General,
        }
    }
}

#[cfg(test)]
mod tests;
