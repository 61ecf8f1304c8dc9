//! Thread pool setup and the parallel umbilic pipeline.
//!
//! Work is split into independent pieces whose results are collected in
//! order, so the output does not depend on the number of threads.

use rayon::prelude::*;
use spacelike_core::fields::umbilic::{
    classify_umbilic, finalize_umbilics, merge_refined, refine_candidate, row_chunks, scan_rows, ScanGrid, ScanSummary,
};
use spacelike_core::fields::UmbilicReport;
use spacelike_core::surface::{NormalField, SurfaceChart};

use crate::error::CliError;

pub const THREADS_ENV: &str = "SPACELIKE_SURF_THREADS";

/// Thread count from the environment; `None` lets rayon decide.
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(_) => Err(CliError::Config(format!("{THREADS_ENV} must be a non-negative integer, got `{s}`"))),
        },
    }
}

pub fn build_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

/// Same result as the serial `find_umbilics`, computed on the current pool.
pub fn find_umbilics_par(chart: &dyn SurfaceChart, normal: NormalField, nu: usize, nv: usize) -> UmbilicReport {
    let grid = ScanGrid::new(chart.domain(), nu, nv);
    let chunks = row_chunks(&grid, 4).into_par_iter().map(|r| scan_rows(chart, normal, &grid, r)).collect();
    let summary = ScanSummary::from_chunks(chunks);
    if summary.is_degenerate() {
        return finalize_umbilics(&summary, Vec::new());
    }
    let refined = summary
        .candidates
        .par_iter()
        .filter_map(|&c| refine_candidate(chart, normal, &grid, c))
        .collect();
    let merged = merge_refined(&grid, refined);
    let pts = merged.into_par_iter().map(|p| classify_umbilic(chart, normal, &grid, p)).collect();
    finalize_umbilics(&summary, pts)
}

/// Maps `f` over `0..n` on the current pool, keeping order.
pub fn ordered_map<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use spacelike_core::fields::find_umbilics;
    use spacelike_core::surface::{AnalyticChart, Graph4};

    #[test]
    fn parallel_matches_serial() {
        let g = Graph4 { b21: 1.0, b03: 3.0, a20: 0.2, ..Default::default() };
        let ch = AnalyticChart::graph4(g, 0.5);
        let n = NormalField::Null { n1: 1.0, n2: 0.0 };
        let pool = build_pool(Some(3)).unwrap();
        let par = pool.install(|| find_umbilics_par(&ch, n, 33, 30));
        assert_eq!(par, find_umbilics(&ch, n, 33, 30));
        assert!(!par.umbilics.is_empty());
    }
}
