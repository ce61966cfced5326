//! Exact representation zeta functions of the nilpotent group schemes
//! `F_{n,delta}`, `G_n` and `H_n`, computed from two independent formulas and
//! checked against Weyl group statistics, matrix counts over finite rings and
//! Igusa local zeta functions.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod counting;
pub mod error;
pub mod igusa;
pub mod qalg;
pub mod schemes;
pub mod weyl;

pub use error::{Error, Result};
