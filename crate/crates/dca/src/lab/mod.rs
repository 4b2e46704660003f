//! Closure verification: seeded member generators, the counterexample
//! registry, the encoded closure tables, and the runner that checks them.

pub mod checks;
pub mod fixtures;
pub mod generate;
pub mod runner;
pub mod tables;

pub use checks::{convex_extension_gap, ExtensionGap};
pub use fixtures::{registry, Fixture, FixtureOutcome};
pub use generate::{generate_fn, generate_function, generate_lattice_set, generate_set, trial_rng, GenConfig, Member};
