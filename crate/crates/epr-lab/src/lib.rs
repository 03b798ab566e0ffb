//! A Cl(3,0) geometric-algebra engine and correlation laboratory for
//! EPR-Bohm spin experiments.
//!
//! The crate has four layers, each cross-validating the next:
//!
//! * [`ga`] — exact double-precision Clifford arithmetic: multivectors,
//!   geometric/inner/outer products, grades, commutators, and the oriented
//!   unit bivectors that serve as measurement outcomes.
//! * [`pauli`] — an independent quantum oracle: Pauli matrices, the
//!   two-particle singlet, exact expectation values by matrix contraction,
//!   and the 2x2 representation that checks the blade table.
//! * [`models`] — the two local hidden-variable models (Bell's sign model
//!   and the Clifford-valued bivector model) with exact and seeded Monte
//!   Carlo estimators in the factorized local form.
//! * [`chsh`] — CHSH-string evaluation, the F-function diagnostics, and
//!   settings sweeps locating the classical bound 2 and the Tsirelson
//!   bound `2 sqrt(2)`.
//!
//! The guide under `book/` walks through the same material chapter by
//! chapter; its code snippets are doc-tested here.
//!
//! ```
//! use epr_lab::ga::UnitVector3;
//! use epr_lab::models::{bell_joint_closed, clifford_joint_exact};
//! use epr_lab::pauli::singlet_expectation_joint;
//!
//! // at 60 degrees the quantum and Clifford-model correlations are -0.5,
//! // while Bell's sign model only reaches -1/3
//! let a = UnitVector3::X;
//! let b = UnitVector3::in_plane(&UnitVector3::X, &UnitVector3::Y, 60f64.to_radians()).unwrap();
//! assert!((singlet_expectation_joint(&a, &b) + 0.5).abs() < 1e-12);
//! assert!((clifford_joint_exact(&a, &b).value.scalar_part() + 0.5).abs() < 1e-12);
//! assert!((bell_joint_closed(&a, &b) + 1.0 / 3.0).abs() < 1e-12);
//! ```

/// The guide chapters from `book/`, included verbatim so their code
/// snippets run as doc-tests and the book can never drift from the crate.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    pub mod algebra {}
    #[doc = include_str!("../../../book/src/quantum.md")]
    pub mod quantum {}
    #[doc = include_str!("../../../book/src/models.md")]
    pub mod models {}
    #[doc = include_str!("../../../book/src/chsh.md")]
    pub mod chsh {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

pub mod chsh;
pub mod fmt;
pub mod ga;
pub mod models;
pub mod pauli;
pub mod verify;

/// The two measurement parties of an EPR-Bohm run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    A,
    B,
}

#[cfg(test)]
pub(crate) fn test_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand_core::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
pub(crate) fn random_unit(rng: &mut impl rand_core::RngCore) -> ga::UnitVector3 {
    models::sample_unit_vector(rng)
}

#[cfg(test)]
pub(crate) fn random_multivector(rng: &mut impl rand_core::RngCore) -> ga::Multivector {
    let mut coeffs = [0.0f64; 8];
    for c in coeffs.iter_mut() {
        *c = 2.0 * ((rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)) - 1.0;
    }
    ga::Multivector::from_coeffs(coeffs)
}
