//! Provably computing all integral points on an odd-degree hyperelliptic curve
//! `y^2 = f(x)` over Q whose Jacobian has Mordell-Weil rank equal to the genus.
//!
//! The pipeline combines two halves:
//!
//! * **Quadratic Chabauty**: at each good ordinary prime `p`, the locally
//!   analytic function `rho(z) = tau(z) - sum a_ij f_i(z) f_j(z)` (built from
//!   a double Coleman integral `tau` and single Coleman integrals `f_i`)
//!   takes values on p-integral points inside a finite set `T` of Q-linear
//!   combinations of logarithms of bad primes, computed by intersection
//!   theory on regular models. Solving `rho(z) = t` on every residue disk
//!   yields a finite superset of the integral points, to precision `p^N`.
//! * **Mordell-Weil sieve**: the solutions that do not come from rational
//!   points are turned into residue classes in `J(Q)/MJ(Q)` and eliminated
//!   by intersecting their reductions with the image of `X(F_v)` for a
//!   well-chosen set of auxiliary primes `v`.
//!
//! Module map: [`padic`] (capped-precision Z/p^N and Q_p arithmetic),
//! [`ratmat`] (exact rational linear algebra, Moore-Penrose), [`series`]
//! (power series over Q_p, root finding), [`curve`] (the curve, points and
//! residue disks), [`ffgroup`] (Mumford arithmetic and group structure of
//! `J(F_v)`), [`cohomology`] (Kedlaya's algorithm, cup products, unit-root
//! splitting), [`coleman`] (single/double/third-kind Coleman integrals, the
//! local height `tau`), [`heights`] (global p-adic heights and the
//! `alpha_ij` system), [`regmodel`] (intersection patterns from regular-model
//! data), [`qcsolve`] (per-disk solving and classification), [`sieve`]
//! (class sets and the sieve itself), [`elliptic`] (the rank-1 elliptic
//! specialization), and [`pipeline`] (configuration, orchestration,
//! reporting).

pub mod padic;
pub mod ratmat;
pub mod series;
pub mod curve;
pub mod ffgroup;
pub mod unram;
pub mod cohomology;
pub mod coleman;
pub mod heights;
pub mod regmodel;
pub mod qcsolve;
pub mod sieve;
pub mod elliptic;
pub mod pipeline;

mod arith;

pub use padic::CappedPadic;
pub use ratmat::RationalMatrix;
pub use series::PadicSeries;

use thiserror::Error;

/// Error type shared by the whole pipeline.
///
/// Several variants mirror explicit exits of the algorithm (precision
/// escalation, epsilon exhaustion, linear dependence of the `f_i`); the
/// rest are input or environment failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid regular model data: {0}")]
    InvalidModel(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("prime {0} is not ordinary for this curve")]
    NotOrdinary(u64),
    #[error("matrix singular to working precision")]
    SingularMatrix,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("the functionals f_i are linearly dependent on J(Q) (tensor Q); divert to classical Chabauty-Coleman")]
    LinearDependence,
    #[error("escalation bound exceeded while separating a multiple root")]
    EscalationExceeded,
    #[error("epsilon exhausted without an empty sieve result")]
    EpsilonExhausted,
    #[error("group order at v={0} has a prime factor above the smoothness bound")]
    NotSmooth(u64),
    #[error("element not in the span of the given generators")]
    NotInSubgroup,
    #[error("division by zero p-adic value")]
    DivisionByZero,
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
