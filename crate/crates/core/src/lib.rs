//! Exact algebra of Frobenius-semilinear maps in characteristic `p`.

#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::wrong_self_convention, clippy::while_let_loop)]

pub mod arith;
pub mod certify;
pub mod cli;
pub mod config;
pub mod error;
pub mod fp_linalg;
pub mod io;
pub mod frobmod;
pub mod matrix;
pub mod stable;
pub mod submodule;

pub use config::Config;
pub use error::{Error, Result};
pub use frobmod::FrobModule;
