//! Burst-error-correction analysis of quantum cyclic codes (CSS and Hermitian
//! constructions) and quantum Reed-Solomon codes, and a quantum error-trapping
//! decoder.

pub mod cycliccode;
pub mod error;
pub mod fixtures;
pub mod galois;
pub mod matgf;
pub mod notation;
pub mod polyring;
pub mod qccburst;
pub mod qetd;
pub mod qrsburst;
pub mod report;
pub mod search;

pub use error::{Error, Result};
