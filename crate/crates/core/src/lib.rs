//! Exact computations with comodules over finite flat Hopf algebras.
//!
//! The crate covers Smith-normal-form based linear algebra over ℤ and its
//! quotients, Hopf algebras given by structure constants, comodules and their
//! cobar cohomology, base change of invariants along ℤ → S, and a degreewise
//! study of invariant rings of products of determinantal varieties over ℚ.

pub mod basechange;
pub mod cli;
pub mod comodule;
pub mod detinv;
pub mod error;
pub mod exactlin;
pub mod glinv;
pub mod hopf;

pub use error::{Error, Result};
