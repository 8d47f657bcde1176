//! Explicit finite-difference solver on a uniform 1-D grid.

mod convergence;
mod grid;
mod run;
mod scheme;

pub use convergence::{self_convergence, ConvergenceReport, ObservedOrder};
pub use grid::{cfl_check, cfl_ratio, Field, Grid1D, TimeGrid, CFL_LIMIT};
pub use run::{
    initial_field, run, total_capital, Diagnostics, NegativeEvent, Snapshot, SnapshotSeries,
    Summary,
};
pub use scheme::{ghost_values, step, FluxArgument, NegativityPolicy, SolverOptions, SourceForm};
