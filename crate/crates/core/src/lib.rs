//! Certified search for small prime powers in the Fibonacci sequence.
//!
//! For each prime `q` in {5, 7, 11, 13, 17} the crate rebuilds the chain
//! from a Thue-type unit equation in the field cut out by `f_q`, through a
//! Baker–Wüstholz bound and LLL reduction, to a residue sieve over Fibonacci
//! indices, and records every step in a JSON certificate.
//!
//! Each file under `examples/` drives one module on its own;
//! `examples/full_case.rs` runs the whole chain through [`pipeline::run_case`].

pub mod arith;
pub mod bounds;
pub mod error;
pub mod lll;
pub mod numberfield;
pub mod pipeline;
pub mod polynomial;
pub mod search;

pub use error::{Error, Result};
