//! Exact-arithmetic engine for saturation and hereditary normality of finite
//! vector sets, with weight-set generation for the classical root systems
//! `B_n`, `C_n`, `D_n` and a classification driver that maps a dominant
//! weight to a machine-checkable verdict.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals,
//! no floating point anywhere. The crate is `no_std` (alloc required);
//! IO, file formats and the CLI live in the companion `satset` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod certify;
pub mod classify;
pub mod counterexamples;
pub mod linalg;
pub mod rootsystem;
pub mod saturation;
pub mod structure;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
