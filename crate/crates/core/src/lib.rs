//! Exact verification and rectification of polynomial embeddings of the
//! complex line into `SL_n`.
//!
//! The pipeline for `n ≥ 3` moves an embedding to the standard curve
//! `t ↦ E_{n1}(t)` through an explicit word of automorphisms of `SL_n`,
//! recording every intermediate curve and the facts checked along the way.

pub mod autoword;
pub mod error;
pub mod exactalg;
pub mod rectifier;
pub mod rng;
pub mod sl2bridge;
pub mod slcurve;

pub use error::{Error, Result};
