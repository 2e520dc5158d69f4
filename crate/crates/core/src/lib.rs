//! Numerical toolkit for weight sequences of ultradifferentiable (Denjoy–Carleman)
//! classes and the estimate machinery built on top of them.
//!
//! The crate is organised in five layers:
//!
//! - [`weights`]: weight sequences `M_k` in log-domain arithmetic, their quotient
//!   and root ladders `μ_k`, `Λ_k`, structural condition checks (log-convexity,
//!   analytic inclusion, moderate growth, derivation closedness) and the
//!   comparison order between sequences.
//! - [`assoc`]: the associated weight function `ω(t) = sup_k log(t^k / M_k)`,
//!   with a brute-force evaluator, a fast piecewise evaluator and the linear
//!   bound `ω(Λ_k) ≤ H·k`.
//! - [`ladder`]: geometric band subsequences `(k_j)` with
//!   `σ^{j-1} Λ_k ≤ Λ_{k_j} ≤ σ^j Λ_k`, built by binary search and re-verified
//!   from scratch.
//! - [`calculus`]: sampled-function calculus on periodic grids — spectral
//!   derivatives, the weighted norm scales, smooth cutoff families, frequency
//!   band decompositions and the inequality checks that consume them.
//! - [`harness`]: model operators with spectral pseudo-inverses, a-priori
//!   estimate fitting, run configuration and the command line front end.
//!
//! All values are immutable after construction and every operation is a pure
//! function of its inputs, so everything here can be shared freely across
//! threads.

// pub mod assoc;
// pub mod calculus;
pub mod error;
// pub mod harness;
// pub mod ladder;
pub mod logdomain;
pub mod weights;

pub use error::{Error, Result};
