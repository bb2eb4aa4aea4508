//! Command-line front end for `knapsack-core`: instance files, a seeded
//! generator, timing sweeps and the oracle suites behind `selftest`.

pub mod app;
pub mod bench;
pub mod gen;
pub mod io;
pub mod solvers;
pub mod suites;

pub use io::{parse_instance, InstanceFile, ParseError};
pub use solvers::{run_solver, Outcome, SolverKind};
