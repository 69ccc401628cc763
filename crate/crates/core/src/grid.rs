//! Exhaustive cross-checks of the deciders over integer grids, and the
//! timing comparison behind `cyclering bench`.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::decide::{deep_decide, theorem_characterization};
use crate::error::{Error, Result};
use crate::feasible::decide_by_enumeration;

/// Constant in the gcd-call bound `c * (log2 p + 1) * (log2 q + 1)`.
pub const GCD_BOUND_CONSTANT: f64 = 4.0;

pub fn gcd_call_bound(p: u64, q: u64) -> f64 {
    GCD_BOUND_CONSTANT * ((p as f64).log2() + 1.0) * ((q as f64).log2() + 1.0)
}

/// A triple on which the three deciders did not agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub gcd_decider: bool,
    pub characterization: bool,
    pub enumeration: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GridReport {
    pub p_max: u64,
    pub q_max: u64,
    pub n_max: u64,
    pub triples: u64,
    pub solvable: u64,
    pub disagreement_count: u64,
    /// First few disagreements, for diagnostics.
    pub disagreements: Vec<Disagreement>,
    /// Triples whose gcd-call count exceeded [`gcd_call_bound`].
    pub gcd_bound_violations: u64,
    pub max_gcd_calls: u64,
    /// Largest observed `calls / bound`.
    pub max_gcd_ratio: f64,
    pub elapsed_ns: u64,
}

const KEPT_DISAGREEMENTS: usize = 20;

impl GridReport {
    fn merge(mut self, other: GridReport) -> GridReport {
        self.triples += other.triples;
        self.solvable += other.solvable;
        self.disagreement_count += other.disagreement_count;
        self.disagreements.extend(other.disagreements);
        self.disagreements.truncate(KEPT_DISAGREEMENTS);
        self.gcd_bound_violations += other.gcd_bound_violations;
        self.max_gcd_calls = self.max_gcd_calls.max(other.max_gcd_calls);
        self.max_gcd_ratio = self.max_gcd_ratio.max(other.max_gcd_ratio);
        self
    }
}

fn check_row(p: u64, q_max: u64, n_max: u64) -> Result<GridReport> {
    let mut row = GridReport::default();
    for q in 1..=q_max {
        let bound = gcd_call_bound(p, q);
        for n in 1..=n_max {
            let report = deep_decide(p, q, n)?;
            let characterization = theorem_characterization(p, q, n)?;
            let enumeration = decide_by_enumeration(p, q, n)?;
            row.triples += 1;
            row.solvable += report.verdict as u64;
            if report.verdict != characterization || report.verdict != enumeration {
                row.disagreement_count += 1;
                if row.disagreements.len() < KEPT_DISAGREEMENTS {
                    row.disagreements.push(Disagreement {
                        p,
                        q,
                        n,
                        gcd_decider: report.verdict,
                        characterization,
                        enumeration,
                    });
                }
            }
            let calls = report.gcd_calls.unwrap_or(0);
            row.max_gcd_calls = row.max_gcd_calls.max(calls);
            row.max_gcd_ratio = row.max_gcd_ratio.max(calls as f64 / bound);
            if calls as f64 > bound {
                row.gcd_bound_violations += 1;
            }
        }
    }
    Ok(row)
}

/// Runs the gcd decider, the factorization criterion and the feasible-divisor
/// decider on every `(p, q, n)` with `p <= p_max`, `q <= q_max`, `n <= n_max`.
///
/// Rows of fixed `p` are processed independently; `workers` caps the thread
/// count (all cores when `None`).
pub fn three_way_check(
    p_max: u64,
    q_max: u64,
    n_max: u64,
    workers: Option<usize>,
) -> Result<GridReport> {
    if p_max == 0 || q_max == 0 || n_max == 0 {
        return Err(Error::invalid("grid bounds must be positive"));
    }
    let start = Instant::now();
    let run = || {
        (1..=p_max)
            .into_par_iter()
            .map(|p| check_row(p, q_max, n_max))
            .try_reduce(GridReport::default, |a, b| Ok(a.merge(b)))
    };
    let mut report = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    // rows arrive in arbitrary order; keep the reported examples deterministic
    report.disagreements.sort_by_key(|d| (d.p, d.q, d.n));
    report.p_max = p_max;
    report.q_max = q_max;
    report.n_max = n_max;
    report.elapsed_ns = start.elapsed().as_nanos() as u64;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub p: u64,
    pub q: u64,
    pub n: u64,
    pub verdict: bool,
    pub gcd_calls: u64,
    pub gcd_bound: f64,
    pub deep_ns: u64,
    /// `None` when `q` is beyond the divisor-scan limit.
    pub enumeration_ns: Option<u64>,
}

/// Instances of growing size: `p = 2^k 3^(k/2) 5`, `q = p * 2 * 3^k * 7`,
/// and `n` a multiple of the deficient part.
pub fn bench_instances() -> Vec<(u64, u64, u64)> {
    (1..=12u32)
        .map(|k| {
            let p = 2u64.pow(k) * 3u64.pow(k / 2) * 5;
            let q = p * 2 * 3u64.pow(k) * 7;
            let n = 2u64.pow(k) * 3u64.pow(k / 2) * 11;
            (p, q, n)
        })
        .chain([
            (1_000_000_007, 1_000_000_007 * 999_999_937, 1),
            (1 << 40, 1 << 62, 1 << 40),
            (999_999_999_989 * 18, 999_999_999_989 * 36, 2),
        ])
        .collect()
}

/// Times the gcd decider against the feasible-divisor decider.
pub fn bench(instances: &[(u64, u64, u64)], repeats: u32) -> Result<Vec<BenchRow>> {
    let repeats = repeats.max(1);
    instances
        .iter()
        .map(|&(p, q, n)| {
            let start = Instant::now();
            let mut report = deep_decide(p, q, n)?;
            for _ in 1..repeats {
                report = deep_decide(p, q, n)?;
            }
            let deep_ns = start.elapsed().as_nanos() as u64 / repeats as u64;
            let enumeration_ns = if q <= crate::arith::TRIAL_DIVISION_LIMIT {
                let start = Instant::now();
                let verdict = decide_by_enumeration(p, q, n)?;
                debug_assert_eq!(verdict, report.verdict);
                Some(start.elapsed().as_nanos() as u64)
            } else {
                None
            };
            Ok(BenchRow {
                p,
                q,
                n,
                verdict: report.verdict,
                gcd_calls: report.gcd_calls.unwrap_or(0),
                gcd_bound: gcd_call_bound(p, q),
                deep_ns,
                enumeration_ns,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_agrees() {
        let report = three_way_check(24, 24, 12, Some(2)).unwrap();
        assert_eq!(report.triples, 24 * 24 * 12);
        assert_eq!(report.disagreement_count, 0, "{:?}", report.disagreements);
        assert_eq!(report.gcd_bound_violations, 0);
        assert!(report.solvable > 0);
    }

    #[test]
    fn bench_rows() {
        let rows = bench(&bench_instances()[..3], 1).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.enumeration_ns.is_some()));
        assert!(rows.iter().all(|r| r.gcd_calls as f64 <= r.gcd_bound));
    }

    #[test]
    fn zero_bounds_rejected() {
        assert!(three_way_check(0, 1, 1, None).is_err());
    }
}
