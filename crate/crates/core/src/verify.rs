//! Self-check suite run by `qfft verify`.
//!
//! Each check reports the largest error it observed next to its tolerance.
//! Seeds are fixed, so a report is reproducible apart from timing.

use std::fmt;

use crate::error::Result;
use crate::fft_prime_factor::PfaPlan;
use crate::fft_radix::RadixPlan;
use crate::number_theory::{
    crt_kernel_product, omega, radix_decode, radix_encode, radix_kernel_product, CenteredResidue, CrtBasis,
    RadixDigits,
};
use crate::phase_space::{direct_with_stats, fast_with_stats, PhaseSpaceKind};
use crate::plan::Plan;
use crate::reference_dft::{dft_direct, dft_direct_with_stats, random_state, StateVector};
use crate::OpStats;

/// Largest dimension exercised by the default suite.
pub const DEFAULT_BUDGET: usize = 315;

const RANDOM_VECTORS: u64 = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, max_error: f64, tolerance: f64) -> Self {
        Check { name: name.into(), max_error, tolerance, passed: max_error <= tolerance }
    }

    fn exact(name: impl Into<String>, ok: bool) -> Self {
        Check::new(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:<48} max_err={:.3e} tol={:.3e}", self.name, self.max_error, self.tolerance)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub budget: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed (budget D <= {})", self.checks.len(), failed, self.budget)
    }
}

/// Runs every check whose dimension fits in `budget`.
pub fn verify_all(budget: usize) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    checks.extend(worked_examples()?);

    for (d, n) in [(3i64, 2u32), (3, 3)] {
        if d.pow(n) as usize <= budget {
            checks.push(radix_kernel_check(d, n)?);
        }
    }
    for factors in [&[3, 5][..], &[3, 5, 7]] {
        if factors.iter().product::<i64>() as usize <= budget {
            checks.push(crt_kernel_check(factors)?);
        }
    }

    for (d, n) in [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
        let plan = RadixPlan::new(d, n)?;
        if plan.dim() <= budget {
            let err = radix_oracle_error(&plan)?;
            checks.push(Check::new(format!("radix vs direct d={d} n={n}"), err, oracle_tol(plan.dim())));
        }
    }
    for factors in [&[3, 5][..], &[3, 7], &[5, 7], &[5, 9], &[3, 5, 7], &[5, 7, 11], &[3, 7, 23]] {
        let plan = PfaPlan::new(factors)?;
        if plan.dim() <= budget {
            let err = oracle_error(&Plan::PrimeFactor(plan.clone()))?;
            checks.push(Check::new(format!("pfa vs direct {factors:?}"), err, oracle_tol(plan.dim())));
        }
    }

    for plan in [Plan::direct(105)?, Plan::radix(3, 4)?, Plan::prime_factor(&[3, 5, 7])?] {
        if plan.dim() <= budget {
            checks.extend(unitarity_checks(&plan)?);
        }
    }

    checks.extend(count_checks(budget)?);

    for factors in [&[3, 5][..], &[3, 5, 7], &[5, 7, 9]] {
        if factors.iter().product::<i64>() as usize <= budget {
            checks.extend(phase_space_checks(factors)?);
        }
    }
    Ok(VerifyReport { budget, checks })
}

fn oracle_tol(dim: usize) -> f64 {
    1e-10 * (dim as f64).sqrt()
}

fn worked_examples() -> Result<Vec<Check>> {
    let four = CenteredResidue::new(4, 9)?;
    let minus_four = CenteredResidue::new(-4, 9)?;
    let radix_ok = radix_encode(four, 3, 2)?.digits() == [1, 1]
        && radix_encode(minus_four, 3, 2)?.digits() == [-1, -1]
        && radix_decode(&RadixDigits::new(3, vec![1, 1])?)?.value() == 4
        && four.add(&four)?.value() == -1;

    let basis = CrtBasis::new(&[3, 5])?;
    let eleven = CenteredResidue::new(11, 15)?;
    let residues_mod = |v: Vec<CenteredResidue>| -> Vec<i64> {
        v.iter().map(|r| r.value().rem_euclid(r.modulus())).collect()
    };
    let crt_ok = basis.a() == [5, 3]
        && basis.b() == [2, 2]
        && basis.c() == [10, 6]
        && residues_mod(basis.encode(eleven)?) == [2, 1]
        && residues_mod(basis.encode_hat(eleven)?) == [4 % 3, 2]
        && basis.decode(&[2, 1])?.value() == eleven.value();
    Ok(vec![Check::exact("radix digit example d=3", radix_ok), Check::exact("crt basis example (3,5)", crt_ok)])
}

fn radix_kernel_check(d: i64, n: u32) -> Result<Check> {
    let dim = d.pow(n);
    let mut err: f64 = 0.0;
    for j in CenteredResidue::all(dim)? {
        for k in CenteredResidue::all(dim)? {
            let direct = omega(dim, j.value() * k.value())?;
            err = err.max((direct - radix_kernel_product(j, k, d, n)?).norm());
        }
    }
    Ok(Check::new(format!("radix kernel factorization D={dim}"), err, 1e-12))
}

fn crt_kernel_check(factors: &[i64]) -> Result<Check> {
    let basis = CrtBasis::new(factors)?;
    let dim = basis.dim();
    let mut err: f64 = 0.0;
    for j in CenteredResidue::all(dim)? {
        for k in CenteredResidue::all(dim)? {
            let direct = omega(dim, j.value() * k.value())?;
            err = err.max((direct - crt_kernel_product(j, k, &basis)?).norm());
        }
    }
    Ok(Check::new(format!("coprime kernel factorization D={dim}"), err, 1e-12))
}

/// Largest relative L2 error of `plan` against the direct transform over
/// seeded random states.
pub fn oracle_error(plan: &Plan) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for seed in 0..RANDOM_VECTORS {
        let s = random_state(plan.dim(), seed)?;
        let reference = dft_direct(&s);
        let fast = plan.forward(&s)?;
        worst = worst.max(fast.distance(&reference)? / reference.norm());
    }
    Ok(worst)
}

fn radix_oracle_error(plan: &RadixPlan) -> Result<f64> {
    oracle_error(&Plan::Radix(plan.clone()))
}

fn unitarity_checks(plan: &Plan) -> Result<Vec<Check>> {
    let s = random_state(plan.dim(), 11)?;
    let fs = plan.forward(&s)?;
    let norm_err = (fs.norm() - s.norm()).abs();
    let mut f4 = s.clone();
    for _ in 0..4 {
        f4 = plan.forward(&f4)?;
    }
    let back = plan.inverse(&fs)?;
    let label = format!("{} D={}", plan.backend(), plan.dim());
    Ok(vec![
        Check::new(format!("norm preserved {label}"), norm_err, 1e-12),
        Check::new(format!("F^4 = I {label}"), f4.max_abs_diff(&s)?, 1e-11),
        Check::new(format!("inverse round trip {label}"), back.max_abs_diff(&s)?, 1e-11),
    ])
}

fn count_checks(budget: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut direct_ok = true;
    let mut radix_ok = true;
    let mut pfa_ok = true;
    for (d, n) in [(3u32, 2u32), (3, 4), (5, 3), (7, 2)] {
        let plan = RadixPlan::new(d as i64, n)?;
        let dim = plan.dim() as u64;
        if plan.dim() > budget {
            continue;
        }
        let s = random_state(plan.dim(), 1)?;
        let mut stats = OpStats::default();
        dft_direct_with_stats(&s, &mut stats);
        direct_ok &= stats.complex_mults == dim * dim;
        let mut stats = OpStats::default();
        plan.forward_with_stats(&s, &mut stats)?;
        radix_ok &= stats.complex_mults == radix_mults(d as u64, n as u64);
    }
    for factors in [&[3i64, 5][..], &[3, 5, 7], &[5, 7, 9]] {
        let plan = PfaPlan::new(factors)?;
        if plan.dim() > budget {
            continue;
        }
        let s = random_state(plan.dim(), 1)?;
        let mut stats = OpStats::default();
        plan.forward_with_stats(&s, &mut stats)?;
        let expected: u64 = factors.iter().map(|&f| plan.dim() as u64 * f as u64).sum();
        pfa_ok &= stats.complex_mults == expected;
    }
    checks.push(Check::exact("direct count = D^2", direct_ok));
    checks.push(Check::exact("radix count = n·D·d + (n-1)·D", radix_ok));
    checks.push(Check::exact("pfa count = Σ D·d_v", pfa_ok));
    Ok(checks)
}

/// Multiplications of the radix transform on `D = d^n`: `n` kernel stages of
/// `D·d` plus `n-1` twiddle passes of `D`.
pub fn radix_mults(d: u64, n: u64) -> u64 {
    let dim = d.pow(n as u32);
    n * dim * d + (n - 1) * dim
}

fn phase_space_checks(factors: &[i64]) -> Result<Vec<Check>> {
    let plan = Plan::prime_factor(factors)?;
    let dim = plan.dim();
    let s = random_state(dim, 21)?;
    let tol = 1e-9 * (dim as f64).sqrt();
    let mut checks = Vec::new();
    for kind in [PhaseSpaceKind::Weyl, PhaseSpaceKind::Wigner] {
        let direct = direct_with_stats(kind, &s, &mut OpStats::default())?;
        let fast = fast_with_stats(kind, &s, &plan, &mut OpStats::default())?;
        checks.push(Check::new(format!("{} fast vs direct {factors:?}", kind.label()), fast.max_abs_diff(&direct)?, tol));
        if kind == PhaseSpaceKind::Wigner {
            checks.push(Check::new(format!("wigner imaginary part {factors:?}"), fast.max_imag(), 1e-9));
            checks.push(Check::new(format!("wigner marginal {factors:?}"), marginal_error(&fast, &s), 1e-8));
        }
    }
    Ok(checks)
}

/// Largest deviation of `Σ_A W(A,B)` from `D|s(B)|²`.
pub fn marginal_error(table: &crate::PhaseSpaceTable, s: &StateVector) -> f64 {
    let dim = s.dim() as f64;
    let half = s.half();
    (-half..=half)
        .map(|b| {
            let sum: crate::Complex64 = table.row(b).iter().sum();
            (sum - dim * s.get(b).norm_sqr()).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_budget_passes() {
        let report = verify_all(45).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.checks.len() > 10);
    }

    #[test]
    fn tampered_twiddle_sign_is_caught() {
        let mut plan = RadixPlan::new(3, 3).unwrap();
        assert!(radix_oracle_error(&plan).unwrap() <= oracle_tol(27));
        plan.conjugate_twiddles();
        assert!(radix_oracle_error(&plan).unwrap() > oracle_tol(27));
    }
}
