//! Independent checkers used to validate the solvers.
//!
//! None of these share code paths with the solvers beyond the numeric layer
//! and the game types: value iteration works on whole functions, brute force
//! enumerates profiles, and the simulator plays strategies out step by step.

mod brute_force;
mod equilibrium;
pub mod families;
pub mod fixtures;
mod grid;
mod random;
mod simulate;
mod value_iteration;

pub use brute_force::{brute_force_priced, BRUTE_FORCE_BUDGET};
pub use equilibrium::{check_equilibrium, sample_times, EquilibriumReport};
pub use grid::{priced_grid, sptg_grid, GridSpec};
pub use random::{random_priced, random_ptg, random_sptg, RandomConfig};
pub use simulate::{simulate, Arena, Play, PlayStep};
pub use value_iteration::{default_cap, value_iteration_sptg, ValueIteration};
