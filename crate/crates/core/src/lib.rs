//! Anyon braid compiler for SU(2)_k models.
//!
//! - [`qalgebra`]: q-integers, 6j symbols, F- and R-symbols.
//! - [`anyon`]: elementary braiding matrices and braidwords.
//! - [`metrics`]: phase-invariant distance, Makhlin invariants, leakage.
//! - [`search`]: exhaustive, genetic and Solovay-Kitaev compilers.

pub mod anyon;
pub mod fixtures;
pub mod metrics;
pub mod qalgebra;
pub mod search;
