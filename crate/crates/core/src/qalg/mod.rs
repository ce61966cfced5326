//! Exact polynomial and rational-function arithmetic plus q-series tools.

pub mod identities;
pub mod parse;
mod poly;
pub mod product;
pub mod qseries;
mod ratfun;

pub use identities::{verify_identity, IdentityKind};
pub use parse::{parse_poly, parse_ratfun};
pub use poly::{Monomial, Poly, Var, NVARS};
pub use product::{Binom, ProductForm};
pub use qseries::{gaussian_binomial, pochhammer, pochhammer_poly, q_multinomial, SubsetIndex};
pub use ratfun::{rat_equal, RatFun};
