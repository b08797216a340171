//! Exact symbolic toolkit for Nijenhuis operators with a unity.
//!
//! Everything is computed over exact rational coefficients: either the
//! polynomial ring Q[x1..xn] or its truncation Q[x]/m^(N+1). There are no
//! floating-point paths; a verification verdict is a theorem about the
//! presented coefficients, not a numerical estimate.

pub mod cli;
pub mod fman;
pub mod forms;
pub mod model;
pub mod parser;
pub mod ring;
pub mod selftest;
pub mod tensor;
pub mod verify;
