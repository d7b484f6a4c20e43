//! Exact computation of cohomology tables `h^i(T_f(-k))` and `h^i(N_f(-k))` for
//! maps `f: P^n -> P^s` given by forms of degree `d`, viewed as linear
//! projections of the degree-`d` Veronese embedding away from a subspace
//! `T` of `S^d U`.
//!
//! Everything is computed over the rationals; there is no floating point
//! anywhere in the crate. The layers, bottom up:
//!
//! - [`exactla`]: rank, kernels and subspace operations over `Q`.
//! - [`symspace`]: sparse polynomials, monomial bases, apolarity contraction.
//! - [`operators`]: polarization, `delta`, `theta`, `xi`, `D`, `psi` and the
//!   subspaces built from them (`dT`, `d^-t T`, `T^perp`, Pieri summands).
//! - [`cohomology`]: [`cohomology::MapSpec`] and the cohomology tables, each
//!   `h^{n-1}` available through two independent routes.
//! - [`surface`]: combinatorial shortcuts for monomial maps of `P^2`.
//! - [`branch`]: Jacobian minors and the divisorial degree of the branch
//!   locus of maps `P^2 -> P^3`.
//! - [`cli`]: JSON spec files and the `verocohom` command line.

pub mod branch;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod exactla;
pub mod gcd;
pub mod operators;
pub mod surface;
pub mod symspace;

pub use error::{Error, Result};
pub use exactla::{QMatrix, Rational, Subspace};
pub use symspace::{MonomialBasis, MultiIndex, QPoly, Side};
