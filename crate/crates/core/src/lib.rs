//! Exact SU(2) spin-matrix algebra.
//!
//! * [`scalar`]: exact numbers `sum q*sqrt(m) + i * sum q*sqrt(m)`.
//! * [`spinrep`]: dense matrices and the spin generators of dimension `D`.
//! * [`symalg`]: symmetric products and generalized Kronecker deltas.
//! * [`charid`]: characteristic equations and the dimension-specific
//!   reduction identity for symmetric products of `D` generators.
//! * [`rewrite`]: parser, printer and normal-form rewriter for spin-operator
//!   expressions.
//! * [`cli`]: the `spinid` command line.

pub mod charid;
pub mod cli;
pub mod rewrite;
pub mod scalar;
pub mod spinrep;
pub mod symalg;
