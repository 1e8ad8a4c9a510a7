//! Exact certification of torsion points on Tate normal form curves over
//! number fields, and exhaustive finite-field scans of X1(N).
//!
//! - [`field`]: rationals, prime fields, tower extensions, polynomials.
//! - [`elliptic`]: Tate normal form, invariants, group law, order certificates.
//! - [`scan`]: enumeration of `(b, c)` over `F_{p^d}` with residue degrees.
//! - [`fixture`] and [`verify`]: the example fixtures and their verification.
//! - [`cli`]: the `tatecert` command line.

pub mod cli;
pub mod elliptic;
pub mod field;
pub mod fixture;
pub mod scan;
pub mod verify;
