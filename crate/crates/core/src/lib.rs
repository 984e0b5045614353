//! Relative submajorization of multi-state boxes.
//!
//! A *box* is a tuple `(ρ₁, …, ρ_m, σ)` of positive semidefinite operators on
//! one finite-dimensional space with σ positive definite. Boxes form a
//! semiring (direct sum as addition, tensor product as multiplication) and
//! carry a preorder: one box dominates another when a completely positive
//! trace-nonincreasing map sends every ρ component above its counterpart and
//! the σ component below.
//!
//! This crate decides that preorder and its relaxations:
//!
//! - [`submaj`]: the single-shot decision as a conic feasibility problem
//!   (Choi-matrix SDP with slack maximization and certificates), an LP oracle
//!   for commuting boxes, and the map-upgrading construction that turns the σ
//!   inequality into an equality.
//! - [`monotones`]: the complete family of monotone semiring homomorphisms:
//!   sandwiched Rényi quantities for α ∈ [1, ∞), the max-divergence at α = ∞,
//!   and finite-n pinched two-sided bounds.
//! - [`asymptotics`]: decision procedures for the asymptotic preorder,
//!   strict-inequality certificates for many-copy/catalytic transformations,
//!   power-universal exponents, and strong-converse exponents.
//! - [`hypotest`]: composite-null hypothesis testing: optimal type-II error
//!   under a significance budget, the test↔map dictionary, multi-hypothesis
//!   POVM feasibility, and error-tradeoff curves.
//!
//! The numerical backends are self-contained: a primal-dual interior-point
//! solver for dense Hermitian SDPs ([`sdp`]) and a two-phase simplex for the
//! classical LP route ([`lp`]).

pub mod asymptotics;
pub mod boxes;
pub mod error;
pub mod hermat;
pub mod hypotest;
pub mod lp;
pub mod monotones;
pub mod sdp;
pub mod submaj;

pub use error::{Error, Result};
pub use hermat::{psd_leq, HermitianMatrix, Keep, Spectrum};

pub use asymptotics::{
    AsymptoticDecision, ExponentResult, GridOptions, PowerUniversalExponent, StrictCertificate,
};
pub use boxes::{ScalarBox, StateBox};
pub use hypotest::{DiscriminationOutcome, DiscriminationSpec, Test};
pub use monotones::{Alpha, MonotoneIndex, MonotoneValue};
pub use submaj::{ChoiMatrix, FeasibilityResult, InfeasibilityCertificate};
