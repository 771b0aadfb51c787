//! Average characteristic polynomials of products of truncated unitary and
//! Ginibre matrices: exact and adaptive evaluation, certified zeros,
//! Plancherel-Rotach asymptotics, the Raney limit law, Monte-Carlo
//! simulation and the `wishart` command line.

pub mod asymptotics;
pub mod charpoly;
pub mod cli;
pub mod empirics;
pub mod error;
pub mod numerics;
pub mod raney;
pub mod rmt;

pub use error::{Error, Result};
