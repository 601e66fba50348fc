//! Row-parallel assembly on a rayon pool capped by `FLOER_THREADS`.

use crate::CliError;
use floer_core::arc_engine::{braid_diagram, build_cell_complex, CellComplex, Mode};
use floer_core::braid_core::BraidWord;
use floer_core::invariants::{Assembly, BuildOptions, FloerComplex, InvariantError};
use rayon::prelude::*;

pub const THREADS_VAR: &str = "FLOER_THREADS";

/// Worker cap from the environment; `None` leaves the choice to rayon.
pub fn worker_count() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Config(format!("{} must be a positive integer, got '{}'", THREADS_VAR, s))),
        },
    }
}

fn pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = worker_count()? {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Config(e.to_string()))
}

/// Same result as [`FloerComplex::build`], rows computed concurrently.
pub fn build(cx: CellComplex, options: BuildOptions) -> Result<FloerComplex, CliError> {
    let a = Assembly::new(cx, options)?;
    let rows = pool()?.install(|| (0..a.len()).into_par_iter().map(|i| a.row(i)).collect());
    Ok(a.finish(rows)?)
}

pub fn build_braid(mode: Mode, b: &BraidWord, options: BuildOptions) -> Result<FloerComplex, CliError> {
    let d = braid_diagram(mode, b).map_err(InvariantError::from)?;
    let cx = build_cell_complex(&d).map_err(InvariantError::from)?;
    build(cx, options)
}
