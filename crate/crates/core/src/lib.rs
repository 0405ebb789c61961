//! Exact computations for finite Weyl groups and their parabolic calculus.
//!
//! The crate is organised bottom-up:
//!
//! * [`coxcore`]: root systems, group elements as root permutations, parabolic
//!   subsets, coset and double-coset minima, diagram automorphisms.
//! * [`jtower`]: piece indices `^{ε(J)}W`, the descending subset tower and its
//!   stable limit, and the twisted stabiliser set.
//! * [`grouptab`]: explicit finite groups, conjugacy classes, exact character
//!   tables over cyclotomic fields, induction and restriction.
//! * [`hcduality`]: Harish-Chandra induction/restriction on coset class
//!   functions, the alternating duality operator, the Mackey formula, cuspidal
//!   kernels and Harish-Chandra series.
//! * [`hecke`]: Iwahori–Hecke algebras over `Z[v, v^-1]` with unequal
//!   parameters.
//! * [`extgroups`]: reflection classes, special subsets, affine data, the
//!   group `Ω`, extended groups and quasi-rationality certificates.
//! * [`verify`]: exhaustive property sweeps shared by the CLI and the
//!   acceptance tests.

pub mod coxcore;
pub mod cyclotomic;
pub mod error;
pub mod extgroups;
pub mod grouptab;
pub mod hcduality;
pub mod hecke;
pub mod jtower;
pub mod linalg;
pub mod par;
pub mod verify;

pub use error::{Error, Result};
