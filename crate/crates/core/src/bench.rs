//! Timing sweeps comparing the direct transform with the fast backends, and
//! the full-grid Weyl speedup experiment.
//!
//! Every timed section is single-threaded. Plans and input states are built
//! outside the timer, one warm-up run is discarded and the median of `reps`
//! runs is reported.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::number_theory::gcd;
use crate::phase_space::{direct_with_stats, fast_with_stats, PhaseSpaceKind};
use crate::plan::{Backend, Plan};
use crate::reference_dft::{dft_direct_with_stats, random_state, StateVector};
use crate::OpStats;

pub const MIN_REPS: usize = 3;
pub const DEFAULT_REPS: usize = 5;

/// One timed transform. Serializes to the bench CSV columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    #[serde(rename = "D")]
    pub dim: usize,
    pub backend: String,
    pub time_seconds: f64,
    pub mult_count: u64,
    pub ratio_t_over_d2: f64,
    pub ratio_tf_over_dlogd: f64,
}

impl BenchRecord {
    fn new(dim: usize, backend: Backend, time_seconds: f64, mult_count: u64) -> Self {
        let d = dim as f64;
        BenchRecord {
            dim,
            backend: backend.label().to_string(),
            time_seconds,
            mult_count,
            ratio_t_over_d2: time_seconds / (d * d),
            ratio_tf_over_dlogd: time_seconds / (d * d.ln()),
        }
    }
}

pub fn default_radix_sweep() -> Vec<i64> {
    (51..=101).step_by(2).collect()
}

pub fn default_pfa_sweep() -> (i64, Vec<i64>) {
    (53, (55..=101).step_by(2).collect())
}

pub fn default_weyl_factorizations() -> Vec<Vec<i64>> {
    vec![vec![21, 23], vec![3, 7, 23]]
}

pub fn quick_weyl_factorizations() -> Vec<Vec<i64>> {
    vec![vec![15, 7], vec![3, 5, 7]]
}

fn check_reps(reps: usize) -> Result<()> {
    if reps < MIN_REPS {
        return Err(Error::InvalidArgument(format!("at least {MIN_REPS} repetitions are required, got {reps}")));
    }
    Ok(())
}

/// Median wall time of `reps` calls after one warm-up.
pub fn time_median<T>(reps: usize, mut f: impl FnMut() -> T) -> f64 {
    std::hint::black_box(f());
    let mut times: Vec<f64> = (0..reps.max(1))
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(f());
            start.elapsed().as_secs_f64()
        })
        .collect();
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        0.5 * (times[mid - 1] + times[mid])
    }
}

/// Times the direct transform and `plan` on one seeded random state.
fn bench_pair(plan: &Plan, seed: u64, reps: usize) -> Result<[BenchRecord; 2]> {
    let dim = plan.dim();
    let s = random_state(dim, seed)?;

    let mut direct_stats = OpStats::default();
    dft_direct_with_stats(&s, &mut direct_stats);
    let mut fast_stats = OpStats::default();
    plan.forward_with_stats(&s, &mut fast_stats)?;

    let t_direct = time_median(reps, || dft_direct_with_stats(&s, &mut OpStats::default()));
    let t_fast = time_median(reps, || plan.forward_with_stats(&s, &mut OpStats::default()));
    Ok([
        BenchRecord::new(dim, Backend::Direct, t_direct, direct_stats.complex_mults),
        BenchRecord::new(dim, plan.backend(), t_fast, fast_stats.complex_mults),
    ])
}

/// Direct and radix timings for `D = d^n` over `d_values`, as (direct, fast) pairs.
pub fn bench_radix_sweep(d_values: &[i64], n: u32, seed: u64, reps: usize) -> Result<Vec<BenchRecord>> {
    check_reps(reps)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("the radix sweep needs n >= 2, got {n}")));
    }
    let plans = d_values.iter().map(|&d| Plan::radix(d, n)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(2 * plans.len());
    for (i, plan) in plans.iter().enumerate() {
        out.extend(bench_pair(plan, seed.wrapping_add(i as u64), reps)?);
    }
    Ok(out)
}

/// Direct and prime-factor timings for `D = d1·d2` over `d2_values`.
pub fn bench_pfa_sweep(d1: i64, d2_values: &[i64], seed: u64, reps: usize) -> Result<Vec<BenchRecord>> {
    check_reps(reps)?;
    let mut plans = Vec::with_capacity(d2_values.len());
    for &d2 in d2_values {
        if gcd(d1, d2) != 1 {
            return Err(Error::NotCoprime { first: d1, second: d2 });
        }
        plans.push(Plan::prime_factor(&[d1, d2])?);
    }
    let mut out = Vec::with_capacity(2 * plans.len());
    for (i, plan) in plans.iter().enumerate() {
        out.extend(bench_pair(plan, seed.wrapping_add(i as u64), reps)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeylTiming {
    pub factors: Vec<i64>,
    pub fast_seconds: f64,
    pub fast_mults: u64,
    /// Largest entrywise deviation from the direct table.
    pub max_error: f64,
    /// Direct time over fast time.
    pub speedup: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeylReport {
    pub dim: usize,
    pub direct_seconds: f64,
    pub direct_mults: u64,
    pub tolerance: f64,
    pub timings: Vec<WeylTiming>,
}

/// Full-grid Weyl function, direct against each factorization of one `D`.
///
/// Each fast table must match the direct one within `1e-9·√D` before any
/// time is measured; otherwise a verification error is returned.
pub fn bench_weyl(factorizations: &[Vec<i64>], seed: u64, reps: usize) -> Result<WeylReport> {
    check_reps(reps)?;
    let Some(first) = factorizations.first() else {
        return Err(Error::InvalidArgument("no factorization given".into()));
    };
    let dim: i64 = first.iter().product();
    let plans = factorizations
        .iter()
        .map(|f| {
            let product: i64 = f.iter().product();
            if product != dim {
                return Err(Error::InvalidArgument(format!(
                    "factorization {f:?} multiplies to {product}, expected {dim}"
                )));
            }
            Plan::prime_factor(f)
        })
        .collect::<Result<Vec<_>>>()?;

    let kind = PhaseSpaceKind::Weyl;
    let dim = dim as usize;
    let s = random_state(dim, seed)?;
    let tolerance = 1e-9 * (dim as f64).sqrt();

    let mut direct_stats = OpStats::default();
    let reference = direct_with_stats(kind, &s, &mut direct_stats)?;
    let mut gated = Vec::with_capacity(plans.len());
    for (f, plan) in factorizations.iter().zip(&plans) {
        let mut stats = OpStats::default();
        let table = fast_with_stats(kind, &s, plan, &mut stats)?;
        let err = table.max_abs_diff(&reference)?;
        if err.is_nan() || err > tolerance {
            return Err(Error::Verification(format!(
                "fast Weyl table for {f:?} deviates by {err:e} (tolerance {tolerance:e})"
            )));
        }
        gated.push((err, stats.complex_mults));
    }

    let direct_seconds = time_weyl(reps, &s, None)?;
    let mut timings = Vec::with_capacity(plans.len());
    for ((f, plan), (max_error, fast_mults)) in factorizations.iter().zip(&plans).zip(gated) {
        let fast_seconds = time_weyl(reps, &s, Some(plan))?;
        timings.push(WeylTiming {
            factors: f.clone(),
            fast_seconds,
            fast_mults,
            max_error,
            speedup: direct_seconds / fast_seconds,
        });
    }
    Ok(WeylReport { dim, direct_seconds, direct_mults: direct_stats.complex_mults, tolerance, timings })
}

fn time_weyl(reps: usize, s: &StateVector, plan: Option<&Plan>) -> Result<f64> {
    let mut failure = None;
    let t = time_median(reps, || {
        let r = match plan {
            Some(p) => fast_with_stats(PhaseSpaceKind::Weyl, s, p, &mut OpStats::default()),
            None => direct_with_stats(PhaseSpaceKind::Weyl, s, &mut OpStats::default()),
        };
        if let Err(e) = r {
            failure = Some(e);
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(t),
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Records of one backend, in sweep order.
pub fn select(records: &[BenchRecord], backend: Backend) -> impl Iterator<Item = &BenchRecord> {
    records.iter().filter(move |r| r.backend == backend.label())
}

/// Slope of time (or, with `counts`, multiplication count) against `D`.
pub fn sweep_slope(records: &[BenchRecord], backend: Backend, counts: bool) -> Option<f64> {
    let pts: Vec<(f64, f64)> = select(records, backend)
        .map(|r| (r.dim as f64, if counts { r.mult_count as f64 } else { r.time_seconds }))
        .collect();
    log_log_slope(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sweeps_have_expected_sizes() {
        assert_eq!(default_radix_sweep().len(), 26);
        assert_eq!(default_pfa_sweep().1.len(), 24);
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<_> = (1..10).map(|x| (x as f64, 3.0 * (x as f64).powi(2))).collect();
        assert!((log_log_slope(&pts).unwrap() - 2.0).abs() < 1e-12);
        assert!(log_log_slope(&pts[..1]).is_none());
    }

    #[test]
    fn small_radix_sweep() {
        let recs = bench_radix_sweep(&[3, 5, 7], 2, 1, 3).unwrap();
        assert_eq!(recs.len(), 6);
        for pair in recs.chunks(2) {
            assert_eq!(pair[0].backend, "direct");
            assert_eq!(pair[1].backend, "radix");
            let d = pair[0].dim as u64;
            assert_eq!(pair[0].mult_count, d * d);
            assert!(pair[0].ratio_t_over_d2 > 0.0 && pair[1].ratio_tf_over_dlogd > 0.0);
        }
        assert!((sweep_slope(&recs, Backend::Direct, true).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_arguments_are_checked() {
        assert!(matches!(bench_radix_sweep(&[4], 2, 0, 3), Err(Error::InvalidModulus(_))));
        assert!(bench_radix_sweep(&[3], 1, 0, 3).is_err());
        assert!(bench_radix_sweep(&[3], 2, 0, 2).is_err());
        assert!(matches!(bench_pfa_sweep(3, &[9], 0, 3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn weyl_quick_gate_and_products() {
        let report = bench_weyl(&[vec![3, 5], vec![5, 3]], 4, 3).unwrap();
        assert_eq!(report.dim, 15);
        assert_eq!(report.timings.len(), 2);
        assert!(report.timings.iter().all(|t| t.max_error <= report.tolerance));
        assert!(matches!(bench_weyl(&[vec![3, 5], vec![3, 7]], 4, 3), Err(Error::InvalidArgument(_))));
    }
}
