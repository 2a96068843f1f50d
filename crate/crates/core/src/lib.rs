//! Covering and distortion bounds for complex polynomials.
//!
//! The library revolves around a handful of classical-looking facts about a
//! complex polynomial `q` with `q(0) = 0`:
//!
//! * the coefficient-reversal ("n-inversion") of a polynomial at a declared
//!   degree, an involution that swaps root locations inside and outside the
//!   unit disk;
//! * Schur stability of a polynomial expressed two independent ways (root
//!   locations vs. omitted values of the reversed polynomial);
//! * coefficient bounds `|q̂(k)| ≤ C(n,k)|w|` for any omitted value `w`, and
//!   the resulting guarantee that `q(Δ_R)` covers a disk of radius `R·n(q̃)`
//!   (at least `R/n` when `q'(0) = 1`) around the origin;
//! * a constructive distortion witness: a point `ζ` with `p(ζ) = p(z2)` and
//!   `|p(z1) − p(z2)| ≥ (1/n)|p'(z1)||z1 − ζ|`.
//!
//! Every guaranteed bound is cross-checked against a brute-force oracle built
//! on an Aberth–Ehrlich root finder, so nothing here is taken on faith.

pub mod covering;
pub mod distortion;
pub mod poly;
pub mod rootfind;
pub mod stability;

pub mod cli;

pub use covering::{
    covering_certificate, covering_lower_bound, extremal_corollary3, extremal_lemma3,
    inradius_oracle, lemma3_bound_check, membership, CoveringCertificate, CoveringStatus,
    InradiusEstimate, Lemma3Report, MembershipResult, MembershipVerdict,
};
pub use distortion::{distortion_witness, q_construction, DistortionWitness, WitnessBranch};
pub use poly::{binomial, Closure, Complex, Disk, Polynomial};
pub use rootfind::{classify_roots, find_roots, DiskClassification, RootLocation, RootSet};
pub use stability::{
    is_schur_stable, lemma_equivalence_check, zero_omitted_closed_disk, Agreement, LemmaReport,
    LemmaSides, Stability, StabilityVerdict, StabilityWitness, Ternary,
};

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A non-finite (NaN or infinite) value reached a public operation.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    /// A documented precondition was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A coefficient or intermediate value left the representable range.
    #[error("numeric range exceeded: {0}")]
    NumericRange(String),
    /// The root iteration hit its sweep cap on both attempts.
    #[error("root solver did not converge")]
    NonConvergence,
    /// The zero polynomial has no roots to find.
    #[error("zero polynomial has no roots")]
    ZeroPolynomial,
    /// A brute-force oracle could not reach a verdict.
    #[error("oracle failure: {0}")]
    OracleFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
