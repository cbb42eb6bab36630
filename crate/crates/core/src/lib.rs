//! Schur generalized matrix functions for unitary representations of
//! permutation groups.
//!
//! The library computes `M_K = Σ_{σ∈G} M(σ) Π_i K(i,σ(i))` for a finite
//! permutation group `G` and a unitary representation `M`, checks the Schur
//! determinant inequality `det(H) ≤ (M_H u, u)` together with its exact
//! equality conditions, and cross-checks everything against a brute-force
//! symmetric-tensor oracle.
//!
//! Module map:
//! - [`permgroup`]: permutations, subgroup closure, orbits, stabilizers,
//!   support groups of matrices.
//! - [`cxlinalg`]: dense complex kernel (upper Cholesky, determinant,
//!   permanent, Hermitian Jacobi eigensolver).
//! - [`repcat`]: built-in and user-defined unitary representations.
//! - [`genmatfn`]: the generalized matrix function, Schur/Marcus checks,
//!   equality diagnosis, trace form.
//! - [`tensorlab`]: the tensor-space oracle (symmetrizer `T_G`, inner
//!   products, collinearity, projection identities).
//! - [`compat`]: compatible-permutation combinatorics (spike functions,
//!   restricted sets, `Γ_{n,p}`).
//!
//! Everything is double-precision complex; every operation is a pure
//! function over immutable inputs. Degrees are desk scale (`n ≤ 8` for
//! groups, `n ≤ 6` for the tensor oracle).

pub mod compat;
pub mod cxlinalg;
mod error;
pub mod genmatfn;
pub mod permgroup;
pub mod random;
pub mod repcat;
pub mod tensorlab;
mod tolerances;

pub use error::{Error, Result};
pub use tolerances::Tolerances;

pub use num_complex::Complex64;
