//! Final search: coefficient growth, the Fibonacci index bound, the
//! residue sieve with exact checks, and direct unit enumeration.

mod enumerate;
mod growth;
mod sieve;

pub use enumerate::{direct_enumeration, gray_walk, LinearUnit};
pub use growth::{growth_constant, index_bound, max_power_coefficient, reduction_table, GrowthData};
pub use sieve::{
    check_survivors, exact_power_check, fib_mod_scan, fib_pair, fib_pair_mod, fibonacci,
    qth_power_residues, ScanMode, SievePanel, Survivor,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serializer;

pub(crate) fn ser_big<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_rat<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
