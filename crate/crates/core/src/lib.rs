//! Exact solvers for one-clock priced timed games.
//!
//! The crate is layered bottom-up:
//!
//! - [`numerics`]: exact rationals, extended costs, piecewise-linear functions.
//! - [`priced_game`]: untimed priced games, extended Dijkstra, strategy iteration.
//! - [`sptg`]: the backward sweep for simple priced timed games on `[0, 1]`.
//! - [`ptg`]: general one-clock games with availability intervals and resets.
//! - [`oracle`]: independent checkers (value iteration, simulation, brute force).
//! - [`io`]: the JSON game format and result documents.

pub mod error;
pub mod io;
pub mod numerics;
pub mod oracle;
pub mod priced_game;
pub mod ptg;
pub mod sptg;

pub use error::{Error, Result};
