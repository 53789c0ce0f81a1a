//! Exact engine for spin-refined Siegel–Veech constants and Masur–Veech volume
//! differences of strata of abelian differentials with odd zero orders.

pub mod error;
pub mod exact;
pub mod partitions;
pub mod qmf;
pub mod symfun;
pub mod brackets;
pub mod graphs;
pub mod sergeev;
pub mod svgf;
pub mod verify;

pub use error::{Error, Result};
pub use exact::Rational;
