//! Exact, compositional probability over finitely-supported distributions.
//!
//! Weights are arbitrary-precision rationals, so every expectation,
//! variance, probability, and conditional mean is computed exactly, with
//! no floating point anywhere. Distributions are built from a handful of
//! primitives (point masses, pushforwards, sequencing through Markov
//! kernels, mixtures) and held in a canonical form that makes equality of
//! distributions decidable.
//!
//! ```
//! use finprob::{catalog, Proportion, Rational, Outcome};
//!
//! let p = Proportion::new(Rational::new(1, 3)?)?;
//! let binomial = catalog::binomial(3, &p)?;
//! assert_eq!(binomial.mass_at(&Outcome::Nat(1))?.to_string(), "4/9");
//! # Ok::<(), finprob::Error>(())
//! ```

pub mod algebra;
pub mod catalog;
pub mod combinators;
pub mod conditioning;
pub mod dist;
pub mod error;
pub mod indicator;
pub mod kernel;
pub mod numeric;
pub mod outcome;

pub use algebra::{AlgebraShape, MValue};
pub use dist::{Dist, RandomVariable, SupportEntry};
pub use error::{Error, Result};
pub use indicator::{pr, satisfiable, Indicator, ThresholdDirection};
pub use kernel::Kernel;
pub use numeric::{count_ratio, Proportion, Rational, Simplex};
pub use outcome::{outcome_cmp, outcome_eq, Outcome, OutcomeSpace, Side};

#[cfg(test)]
mod thread_safety {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_share_across_threads() {
        assert_send_sync::<crate::Dist>();
        assert_send_sync::<crate::RandomVariable>();
        assert_send_sync::<crate::Kernel>();
        assert_send_sync::<crate::Indicator>();
        assert_send_sync::<crate::combinators::OutcomeMap>();
        assert_send_sync::<crate::conditioning::ConditionalRV>();
    }
}
