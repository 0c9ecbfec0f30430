//! Exact symbolic engine for N-fold supersymmetric quantum mechanics.
//!
//! The crate builds supercharges and Hamiltonians as normal-ordered
//! differential operators over exact coefficient rings and checks the
//! operator identities between them with zero tolerance: intertwining,
//! the constraint system for general prepotentials, the isolated-state
//! determinant and the Mother Hamiltonian identity.
//!
//! `no_std`; only `alloc` is required.

#![no_std]

extern crate alloc;

pub mod diffop;
pub mod error;
pub mod isolated;
pub mod mother;
pub mod nogo;
pub mod poly;
pub mod ratfunc;
pub mod rings;
pub mod scalar;
pub mod susy;

pub use diffop::DiffOp;
pub use error::Error;
pub use poly::UPoly;
pub use ratfunc::RatFunc;
pub use rings::{DifferentialRing, Field, FormalPoly, FunctionRing, HalfInt, QPoly, Ring, TrigPoly};
pub use scalar::GaussianRational;
