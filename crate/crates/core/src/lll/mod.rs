//! Exact integral LLL and the iterated bound reduction for linear forms in
//! logarithms.

mod basis;
mod reduction;

pub use basis::{lll_reduce, lll_reduce_progressive, LatticeBasis, Reduced};
pub use reduction::{
    build_reduction_lattice, default_sigma, reduce_to_fixpoint, reduction_step, LinearForm,
    ReductionConfig, ReductionRecord, ReductionTrace,
};

#[cfg(test)]
mod tests;
