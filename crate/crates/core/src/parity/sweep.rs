//! Exhaustive verification over every index set up to given `h` and `k`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::verify::{verify_index_set, IndexReport, IndexSet};
use crate::error::{Error, Result};

/// All index sets with `1 ≤ h ≤ h_max`, `1 ≤ k ≤ k_max`, in lexicographic
/// order of `(h, k, indices)`.
pub fn index_sets(h_max: i64, k_max: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    for h in 1..=h_max {
        for k in 1..=k_max.min(h as usize) {
            for combo in (1..=h).combinations(k) {
                out.push(IndexSet::new(h, combo).expect("combinations are valid"));
            }
        }
    }
    out
}

/// Pass/fail counts for one `(h, k)` cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub h: i64,
    pub k: usize,
    pub checked: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub h_max: i64,
    pub k_max: usize,
    pub rows: Vec<SweepRow>,
    pub checked: usize,
    pub failures: Vec<IndexReport>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(h_max: i64, k_max: usize, reports: Vec<IndexReport>) -> SweepReport {
        let mut rows: Vec<SweepRow> = Vec::new();
        let mut failures = Vec::new();
        for r in reports.iter() {
            let (h, k) = (r.index_set.h(), r.index_set.k());
            match rows.last_mut() {
                Some(row) if row.h == h && row.k == k => row.checked += 1,
                _ => rows.push(SweepRow {
                    h,
                    k,
                    checked: 1,
                    failed: 0,
                }),
            }
            if !r.passed() {
                rows.last_mut().expect("pushed").failed += 1;
                failures.push(r.clone());
            }
        }
        SweepReport {
            h_max,
            k_max,
            rows,
            checked: reports.len(),
            failures,
        }
    }
}

fn check_bounds(h_max: i64, k_max: usize) -> Result<()> {
    if h_max < 1 || k_max < 1 {
        return Err(Error::OutOfRange(format!(
            "need h_max, k_max >= 1, got {h_max}, {k_max}"
        )));
    }
    Ok(())
}

pub fn sweep_sequential(h_max: i64, k_max: usize) -> Result<SweepReport> {
    check_bounds(h_max, k_max)?;
    let reports = index_sets(h_max, k_max)
        .iter()
        .map(verify_index_set)
        .collect();
    Ok(SweepReport::merge(h_max, k_max, reports))
}

#[cfg(feature = "parallel")]
pub fn sweep_parallel(h_max: i64, k_max: usize) -> Result<SweepReport> {
    use rayon::prelude::*;
    check_bounds(h_max, k_max)?;
    let reports = index_sets(h_max, k_max)
        .par_iter()
        .map(verify_index_set)
        .collect();
    Ok(SweepReport::merge(h_max, k_max, reports))
}

/// The default sweep: data-parallel when the `parallel` feature is on.
pub fn sweep(h_max: i64, k_max: usize) -> Result<SweepReport> {
    #[cfg(feature = "parallel")]
    {
        sweep_parallel(h_max, k_max)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sweep_sequential(h_max, k_max)
    }
}

/// Runs the sweep on a pool of `jobs` workers. Output does not depend on
/// `jobs`. Without the `parallel` feature this is the sequential sweep.
pub fn sweep_with_jobs(h_max: i64, k_max: usize, jobs: usize) -> Result<SweepReport> {
    if jobs == 0 {
        return Err(Error::OutOfRange("jobs must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    {
        if jobs == 1 {
            return sweep_sequential(h_max, k_max);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
        pool.install(|| sweep_parallel(h_max, k_max))
    }
    #[cfg(not(feature = "parallel"))]
    {
        sweep_sequential(h_max, k_max)
    }
}
