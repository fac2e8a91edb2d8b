//! Staged Fourier transform for `D = d^n`, `d` odd.
//!
//! Positions are split into balanced digits `K = k_0 + k_1 d + ... + k_{n-1} d^{n-1}`.
//! Because the centered offset of `K` is `Σ (k_r + (d-1)/2) d^r`, digit `r` of a
//! position is simply axis `r` (stride `d^r`) of the storage array.
//!
//! Stage `r` (1-based) consumes axis `n-r`, which holds `k_{n-r}`, and leaves
//! `j_{r-1}` in its place:
//!
//! ```text
//! s_r(j_0..j_{r-1} | k_0..k_{n-r-1})
//!     = 1/√d Σ_k ω_d(j_{r-1} k) · ω_{d^r}(k · P) · s_{r-1}(j_0..j_{r-2} | k_0..k_{n-r})
//! P   = j_0 + j_1 d + ... + j_{r-2} d^{r-2}
//! ```
//!
//! The single twiddle `ω_{d^r}(kP)` equals the product
//! `ω_{d^2}(j_{r-2}k) ω_{d^3}(j_{r-3}k) ... ω_{d^r}(j_0k)`.
//! After the last stage axis `a` holds `j_{n-1-a}`, so the output is
//! digit-reversed once into natural order.

use std::thread;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::number_theory::{checked_power, modulo, omega, RadixDigits, RootTable};
use crate::reference_dft::StateVector;
use crate::OpStats;

/// Relative tolerance used by [`factorization_necessary_check`] when none is given.
pub const DEFAULT_FACTORIZATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RadixPlan {
    d: i64,
    n: u32,
    dim: usize,
    /// `powers[a] = d^a`, `a = 0..=n`.
    powers: Vec<usize>,
    /// `roots[m - 1]` holds `ω_{d^m}`, `m = 1..=n`.
    roots: Vec<RootTable>,
    /// `ω_d(jk)/√d`, row-major over the offsets of `j` and `k`.
    kernel: Vec<Complex64>,
    reversal: Vec<usize>,
}

impl RadixPlan {
    pub fn new(d: i64, n: u32) -> Result<Self> {
        if d < 3 || d % 2 == 0 {
            return Err(Error::InvalidModulus(d));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("the number of digits must be at least 1".into()));
        }
        let dim = checked_power(d, n)? as usize;
        let du = d as usize;
        let powers: Vec<usize> = (0..=n).map(|a| du.pow(a)).collect();
        let roots = (1..=n)
            .map(|m| RootTable::new(powers[m as usize] as i64))
            .collect::<Result<Vec<_>>>()?;

        let half = (d - 1) / 2;
        let scaled = RootTable::scaled(d, 1.0 / (d as f64).sqrt())?;
        let mut kernel = Vec::with_capacity(du * du);
        for j in -half..=half {
            for k in -half..=half {
                kernel.push(scaled.get(j * k));
            }
        }

        let reversal = (0..dim)
            .map(|t| {
                let (mut rest, mut rev) = (t, 0);
                for _ in 0..n {
                    rev = rev * du + rest % du;
                    rest /= du;
                }
                rev
            })
            .collect();

        Ok(RadixPlan { d, n, dim, powers, roots, kernel, reversal })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Table of `ω_{d^m}(s)`, `m = 1..=n`.
    pub fn roots(&self, m: u32) -> &RootTable {
        &self.roots[m as usize - 1]
    }

    fn half(&self) -> i64 {
        (self.d - 1) / 2
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::mismatch(self.dim, len));
        }
        Ok(())
    }

    pub fn forward(&self, s: &StateVector) -> Result<StateVector> {
        self.forward_with_stats(s, &mut OpStats::default())
    }

    pub fn inverse(&self, s: &StateVector) -> Result<StateVector> {
        self.inverse_with_stats(s, &mut OpStats::default())
    }

    pub fn forward_with_stats(&self, s: &StateVector, stats: &mut OpStats) -> Result<StateVector> {
        self.check(s.dim())?;
        let mut buf = s.amplitudes().to_vec();
        let mut scratch = vec![Complex64::default(); self.dim];
        for r in 1..=self.n {
            self.run_forward_stage(&mut buf, &mut scratch, r, stats);
        }
        Ok(StateVector::from_vec_unchecked(self.permute(&buf)))
    }

    pub fn inverse_with_stats(&self, s: &StateVector, stats: &mut OpStats) -> Result<StateVector> {
        self.check(s.dim())?;
        let mut buf = self.permute(s.amplitudes());
        let mut scratch = vec![Complex64::default(); self.dim];
        for r in (1..=self.n).rev() {
            self.run_inverse_stage(&mut buf, &mut scratch, r, stats);
        }
        Ok(StateVector::from_vec_unchecked(buf))
    }

    /// All intermediates `s_0 = s, s_1, ..., s_n` in stage layout (axis `n-r`
    /// replaced by `j_{r-1}`). `s_n` is the transform before digit reversal.
    pub fn forward_trace(&self, s: &StateVector) -> Result<Vec<Vec<Complex64>>> {
        self.check(s.dim())?;
        let mut buf = s.amplitudes().to_vec();
        let mut scratch = vec![Complex64::default(); self.dim];
        let mut trace = vec![buf.clone()];
        for r in 1..=self.n {
            self.run_forward_stage(&mut buf, &mut scratch, r, &mut OpStats::default());
            trace.push(buf.clone());
        }
        Ok(trace)
    }

    /// Applies stage `r` (`1..=n`) in place.
    pub fn forward_stage(&self, buf: &mut [Complex64], r: u32, stats: &mut OpStats) -> Result<()> {
        self.check(buf.len())?;
        self.check_stage(r)?;
        let mut scratch = vec![Complex64::default(); self.dim];
        self.run_forward_stage(buf, &mut scratch, r, stats);
        Ok(())
    }

    /// Undoes stage `r` in place: conjugate kernel over `j_{r-1}`, then conjugate twiddle.
    pub fn inverse_stage(&self, buf: &mut [Complex64], r: u32, stats: &mut OpStats) -> Result<()> {
        self.check(buf.len())?;
        self.check_stage(r)?;
        let mut scratch = vec![Complex64::default(); self.dim];
        self.run_inverse_stage(buf, &mut scratch, r, stats);
        Ok(())
    }

    fn check_stage(&self, r: u32) -> Result<()> {
        if r == 0 || r > self.n {
            return Err(Error::InvalidArgument(format!("stage {r} outside 1..={}", self.n)));
        }
        Ok(())
    }

    /// Converts between natural digit order and the final stage layout.
    /// The map is an involution.
    pub fn permute(&self, buf: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); buf.len()];
        for (t, &rev) in self.reversal.iter().enumerate() {
            out[rev] = buf[t];
        }
        out
    }

    /// `P = Σ_{i<r-1} j_i d^i` for block `hi`, where `hi` enumerates the
    /// digits on axes above `n-r` and axis `n-1-i` holds `j_i`.
    fn twiddle_base(&self, hi: usize, r: u32) -> i64 {
        let du = self.d as usize;
        let axis = (self.n - r) as usize;
        let mut p = 0i64;
        for i in 0..(r as usize - 1) {
            let a = self.n as usize - 1 - i;
            let u = (hi / self.powers[a - axis - 1]) % du;
            p += (u as i64 - self.half()) * self.powers[i] as i64;
        }
        p
    }

    fn twiddle_line(&self, hi: usize, r: u32, line: &mut [Complex64]) {
        let p = self.twiddle_base(hi, r);
        let table = &self.roots[r as usize - 1];
        let order = table.order();
        let half = self.half();
        for (u, tw) in line.iter_mut().enumerate() {
            *tw = table.at(modulo((u as i64 - half) * p, order) as usize);
        }
    }

    fn run_forward_stage(&self, buf: &mut [Complex64], scratch: &mut [Complex64], r: u32, stats: &mut OpStats) {
        let du = self.d as usize;
        let stride = self.powers[(self.n - r) as usize];
        let block = stride * du;
        let mut tw = vec![Complex64::new(1.0, 0.0); du];

        // Each block is a d x stride matrix whose row index is the summed digit.
        for (hi, chunk) in buf.chunks_exact_mut(block).enumerate() {
            let work = &mut scratch[..block];
            work.copy_from_slice(chunk);
            if r >= 2 {
                self.twiddle_line(hi, r, &mut tw);
                for (row, &t) in work.chunks_exact_mut(stride).zip(&tw) {
                    row.iter_mut().for_each(|x| *x *= t);
                }
            }
            small_dft(&self.kernel, du, work, chunk, stride, false);
        }
        if r >= 2 {
            stats.complex_mults += self.dim as u64;
        }
        stats.complex_mults += (self.dim * du) as u64;
    }

    fn run_inverse_stage(&self, buf: &mut [Complex64], scratch: &mut [Complex64], r: u32, stats: &mut OpStats) {
        let du = self.d as usize;
        let stride = self.powers[(self.n - r) as usize];
        let block = stride * du;
        let mut tw = vec![Complex64::new(1.0, 0.0); du];

        for (hi, chunk) in buf.chunks_exact_mut(block).enumerate() {
            let work = &mut scratch[..block];
            work.copy_from_slice(chunk);
            small_dft(&self.kernel, du, work, chunk, stride, true);
            if r >= 2 {
                self.twiddle_line(hi, r, &mut tw);
                for (row, &t) in chunk.chunks_exact_mut(stride).zip(&tw) {
                    let t = t.conj();
                    row.iter_mut().for_each(|x| *x *= t);
                }
            }
        }
        if r >= 2 {
            stats.complex_mults += self.dim as u64;
        }
        stats.complex_mults += (self.dim * du) as u64;
    }

    #[cfg(test)]
    pub(crate) fn conjugate_twiddles(&mut self) {
        for table in self.roots.iter_mut().skip(1) {
            table.conjugate();
        }
    }
}

/// `out[j] = Σ_k K[j][k] · input[k]` over rows of length `stride`. With
/// `conjugate`, applies `K^†` instead (the kernel is symmetric).
pub(crate) fn small_dft(
    kernel: &[Complex64],
    size: usize,
    input: &[Complex64],
    out: &mut [Complex64],
    stride: usize,
    conjugate: bool,
) {
    if stride == 1 {
        for (j, o) in out.iter_mut().enumerate() {
            let row = &kernel[j * size..(j + 1) * size];
            *o = if conjugate {
                row.iter().zip(input).map(|(kv, x)| kv.conj() * x).sum()
            } else {
                row.iter().zip(input).map(|(kv, x)| kv * x).sum()
            };
        }
        return;
    }
    for (j, row_out) in out.chunks_exact_mut(stride).enumerate() {
        row_out.iter_mut().for_each(|x| *x = Complex64::default());
        for (k, row_in) in input.chunks_exact(stride).enumerate() {
            let mut kv = kernel[j * size + k];
            if conjugate {
                kv = kv.conj();
            }
            for (o, &x) in row_out.iter_mut().zip(row_in) {
                *o += kv * x;
            }
        }
    }
}

pub fn plan_radix(d: i64, n: u32) -> Result<RadixPlan> {
    RadixPlan::new(d, n)
}

pub fn fft_radix(s: &StateVector, plan: &RadixPlan) -> Result<StateVector> {
    plan.forward(s)
}

pub fn ifft_radix(s: &StateVector, plan: &RadixPlan) -> Result<StateVector> {
    plan.inverse(s)
}

/// `<j_0..j_{n-1}| F |k_0..k_{n-1}> = ω_{d^n}[Σ_{r+t<n} d^{r+t} j_r k_t] / √(d^n)`.
pub fn radix_matrix_element(j: &RadixDigits, k: &RadixDigits) -> Result<Complex64> {
    check_digit_pair(j, k)?;
    let d = j.base();
    let n = j.len();
    let dim = checked_power(d, n as u32)?;
    let mut exponent = 0i64;
    for r in 0..n {
        for t in 0..n - r {
            exponent += d.pow((r + t) as u32) * j.digits()[r] * k.digits()[t];
        }
    }
    Ok(omega(dim, modulo(exponent, dim))? / (dim as f64).sqrt())
}

/// The same matrix element as the ordered product of per-stage factors
/// `A(k_{n-1}) A(k_{n-2}) ... A(k_0)`, where
/// `A(k_{n-1-r}) = ω_d(j_r k) ω_{d^2}(j_{r-1} k) ... ω_{d^{r+1}}(j_0 k) / √d`.
pub fn radix_matrix_element_staged(j: &RadixDigits, k: &RadixDigits) -> Result<Complex64> {
    check_digit_pair(j, k)?;
    let d = j.base();
    let n = j.len();
    let mut product = Complex64::new(1.0, 0.0);
    for r in 0..n {
        let kv = k.digits()[n - 1 - r];
        let mut factor = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
        for m in 1..=r + 1 {
            factor *= omega(d.pow(m as u32), j.digits()[r + 1 - m] * kv)?;
        }
        product *= factor;
    }
    Ok(product)
}

fn check_digit_pair(j: &RadixDigits, k: &RadixDigits) -> Result<()> {
    if j.base() != k.base() || j.len() != k.len() {
        return Err(Error::mismatch(j.len(), k.len()));
    }
    Ok(())
}

/// Normal transform written over digits (one full double sum per output);
/// `O(D^2)`, used as the comparison baseline for the staged form.
pub fn dft_in_digit_form(s: &StateVector, plan: &RadixPlan) -> Result<StateVector> {
    plan.check(s.dim())?;
    let digits: Vec<RadixDigits> = (0..plan.dim).map(|t| plan.digits_at(t)).collect();
    let out = digits
        .iter()
        .map(|j| {
            digits
                .iter()
                .zip(s.amplitudes())
                .map(|(k, amp)| radix_matrix_element(j, k).map(|f| f * amp))
                .sum::<Result<Complex64>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StateVector::from_vec_unchecked(out))
}

impl RadixPlan {
    /// Balanced digits of the position stored at offset `t`.
    pub fn digits_at(&self, t: usize) -> RadixDigits {
        let du = self.d as usize;
        let digits = (0..self.n as usize)
            .map(|a| ((t / self.powers[a]) % du) as i64 - self.half())
            .collect();
        RadixDigits::new(self.d, digits).expect("digits within the centered period")
    }
}

/// Execution mode for independent per-factor work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Serial,
    /// One scoped thread per factor, joined once.
    Concurrent,
}

/// A function of the leading output digits `j_0..j_{arity-1}`, stored at
/// offset `Σ (j_i + (d-1)/2) d^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorTable {
    pub arity: usize,
    pub values: Vec<Complex64>,
}

/// Per-factor outputs for a product input `s(k) = Π g_v(k_v)`. Entry `v` is the
/// transform of `g_v` and depends on `j_0..j_{n-1-v}`; the last entry is the
/// plain `d`-point transform of `g_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizedTransform {
    pub factors: Vec<FactorTable>,
}

impl FactorizedTransform {
    /// `s̃(j) = Π_v factor_v(j_0..j_{n-1-v})`.
    pub fn assemble(&self, plan: &RadixPlan) -> Result<StateVector> {
        if self.factors.len() != plan.n as usize {
            return Err(Error::mismatch(plan.n as usize, self.factors.len()));
        }
        let out = (0..plan.dim)
            .map(|t| {
                self.factors
                    .iter()
                    .map(|f| f.values[t % plan.powers[f.arity]])
                    .product()
            })
            .collect();
        Ok(StateVector::from_vec_unchecked(out))
    }
}

/// Transforms a product state factor by factor. Factors have no shared state
/// and may be computed concurrently.
pub fn fft_radix_factorized(
    g: &[Vec<Complex64>],
    plan: &RadixPlan,
    execution: Execution,
) -> Result<FactorizedTransform> {
    let n = plan.n as usize;
    if g.len() != n {
        return Err(Error::mismatch(n, g.len()));
    }
    if let Some(bad) = g.iter().find(|f| f.len() != plan.d as usize) {
        return Err(Error::mismatch(plan.d as usize, bad.len()));
    }
    let factors = match execution {
        Execution::Serial => (0..n).map(|v| transform_factor(plan, v, &g[v])).collect(),
        Execution::Concurrent => thread::scope(|scope| {
            let handles: Vec<_> = (0..n)
                .map(|v| {
                    let g = &g[v];
                    scope.spawn(move || transform_factor(plan, v, g))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("factor transform panicked")).collect()
        }),
    };
    Ok(FactorizedTransform { factors })
}

/// `G̃_v(j_0..j_r) = 1/√d Σ_k ω_d(j_r k) ω_{d^{r+1}}(k P) g_v(k)`, `r = n-1-v`,
/// `P = j_0 + ... + j_{r-1} d^{r-1}`.
fn transform_factor(plan: &RadixPlan, v: usize, g: &[Complex64]) -> FactorTable {
    let du = plan.d as usize;
    let half = plan.half();
    let r = plan.n as usize - 1 - v;
    let prefixes = plan.powers[r];
    let table = &plan.roots[r];
    let mut values = vec![Complex64::default(); prefixes * du];
    let mut twiddled = vec![Complex64::default(); du];
    for prefix in 0..prefixes {
        let p: i64 = (0..r)
            .map(|i| (((prefix / plan.powers[i]) % du) as i64 - half) * plan.powers[i] as i64)
            .sum();
        for (u, (tg, &x)) in twiddled.iter_mut().zip(g).enumerate() {
            *tg = table.get((u as i64 - half) * p) * x;
        }
        for uj in 0..du {
            let row = &plan.kernel[uj * du..(uj + 1) * du];
            values[prefix + uj * prefixes] = row.iter().zip(&twiddled).map(|(k, x)| k * x).sum();
        }
    }
    FactorTable { arity: r + 1, values }
}

/// `s(k_0..k_{n-1}) = Π g_v(k_v)` in storage order.
pub fn product_state(g: &[Vec<Complex64>], plan: &RadixPlan) -> Result<StateVector> {
    let n = plan.n as usize;
    if g.len() != n {
        return Err(Error::mismatch(n, g.len()));
    }
    if let Some(bad) = g.iter().find(|f| f.len() != plan.d as usize) {
        return Err(Error::mismatch(plan.d as usize, bad.len()));
    }
    let du = plan.d as usize;
    let out = (0..plan.dim)
        .map(|t| (0..n).map(|a| g[a][(t / plan.powers[a]) % du]).product())
        .collect();
    Ok(StateVector::from_vec_unchecked(out))
}

/// Necessary condition for `s` to be a product over its radix digits: with the
/// per-axis marginals `|g(k_v)|^2 = Σ_{other digits} |s|^2` (of the normalized
/// state), every `|s(k)|` must equal `Π |g(k_v)|` within `tol` relative to the
/// largest amplitude. Passing does not prove the state factorizes.
pub fn factorization_necessary_check(s: &StateVector, d: i64, n: u32, tol: f64) -> Result<bool> {
    let plan_dim = checked_power(d, n)? as usize;
    if s.dim() != plan_dim {
        return Err(Error::mismatch(plan_dim, s.dim()));
    }
    let total = s.norm_sqr();
    if total == 0.0 {
        return Ok(true);
    }
    let du = d as usize;
    let n = n as usize;
    let probs: Vec<f64> = s.amplitudes().iter().map(|a| a.norm_sqr() / total).collect();
    let mut marginals = vec![vec![0.0; du]; n];
    for (t, &p) in probs.iter().enumerate() {
        let mut rest = t;
        for m in marginals.iter_mut() {
            m[rest % du] += p;
            rest /= du;
        }
    }
    let scale = probs.iter().cloned().fold(0.0, f64::max).sqrt();
    Ok(probs.iter().enumerate().all(|(t, &p)| {
        let mut rest = t;
        let mut predicted = 1.0;
        for m in &marginals {
            predicted *= m[rest % du].sqrt();
            rest /= du;
        }
        (p.sqrt() - predicted).abs() <= tol * scale
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference_dft::{dft_direct, random_state};

    fn close(a: &StateVector, b: &StateVector, tol: f64) -> bool {
        a.distance(b).unwrap() <= tol
    }

    #[test]
    fn plan_examples() {
        assert_eq!(RadixPlan::new(3, 2).unwrap().dim(), 9);
        assert_eq!(RadixPlan::new(51, 2).unwrap().dim(), 2601);
        let p = RadixPlan::new(3, 2).unwrap();
        assert!((p.roots(2).get(3) - p.roots(1).get(1)).norm() < 1e-15);
        assert_eq!(RadixPlan::new(5, 3).unwrap(), RadixPlan::new(5, 3).unwrap());
        assert!(matches!(RadixPlan::new(4, 2), Err(Error::InvalidModulus(4))));
        assert!(matches!(RadixPlan::new(1001, 4), Err(Error::Capacity { .. })));
        assert!(RadixPlan::new(3, 0).is_err());
    }

    #[test]
    fn root_tables_are_multiplicative() {
        let p = RadixPlan::new(5, 3).unwrap();
        for m in 1..=3 {
            let t = p.roots(m);
            for s in 0..t.order() {
                for u in [1, 7, t.order() - 1] {
                    assert!((t.get(s) * t.get(u) - t.get(s + u)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn delta_goes_to_uniform() {
        for (d, n) in [(3, 2), (5, 3), (7, 1)] {
            let p = RadixPlan::new(d, n).unwrap();
            let out = p.forward(&StateVector::delta(p.dim(), 0).unwrap()).unwrap();
            assert!(close(&out, &StateVector::uniform(p.dim()).unwrap(), 1e-12));
            let back = p.inverse(&StateVector::uniform(p.dim()).unwrap()).unwrap();
            assert!(close(&back, &StateVector::delta(p.dim(), 0).unwrap(), 1e-12));
        }
    }

    #[test]
    fn two_digit_forms_agree_with_direct() {
        let p = RadixPlan::new(3, 2).unwrap();
        for seed in 0..10 {
            let s = random_state(9, seed).unwrap();
            let direct = dft_direct(&s);
            assert!(close(&p.forward(&s).unwrap(), &direct, 1e-11));
            assert!(close(&dft_in_digit_form(&s, &p).unwrap(), &direct, 1e-11));
        }
    }

    #[test]
    fn single_digit_plan_is_plain_dft() {
        let p = RadixPlan::new(11, 1).unwrap();
        let s = random_state(11, 4).unwrap();
        assert!(close(&p.forward(&s).unwrap(), &dft_direct(&s), 1e-12));
    }

    #[test]
    fn intermediates_keep_unit_norm() {
        let p = RadixPlan::new(3, 4).unwrap();
        let s = random_state(81, 2).unwrap();
        for stage in p.forward_trace(&s).unwrap() {
            let norm: f64 = stage.iter().map(|x| x.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn one_backward_stage_recovers_previous_intermediate() {
        let p = RadixPlan::new(3, 3).unwrap();
        let s = random_state(27, 9).unwrap();
        let trace = p.forward_trace(&s).unwrap();
        let mut last = trace[3].clone();
        p.inverse_stage(&mut last, 3, &mut OpStats::default()).unwrap();
        let err = last.iter().zip(&trace[2]).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-11);
        assert!(p.inverse_stage(&mut last, 4, &mut OpStats::default()).is_err());
    }

    #[test]
    fn round_trips() {
        for (d, n) in [(3, 2), (3, 3), (5, 3)] {
            let p = RadixPlan::new(d, n).unwrap();
            for seed in 0..100 {
                let s = random_state(p.dim(), seed).unwrap();
                assert!(close(&p.inverse(&p.forward(&s).unwrap()).unwrap(), &s, 1e-11));
            }
        }
    }

    #[test]
    fn wrong_length_is_rejected() {
        let p = RadixPlan::new(3, 2).unwrap();
        let s = random_state(27, 0).unwrap();
        assert!(matches!(p.forward(&s), Err(Error::DimensionMismatch { expected: 9, found: 27 })));
    }

    #[test]
    fn staged_factors_equal_matrix_elements() {
        for (d, n) in [(3, 2), (3, 3)] {
            let p = RadixPlan::new(d, n).unwrap();
            for tj in 0..p.dim() {
                for tk in 0..p.dim() {
                    let (j, k) = (p.digits_at(tj), p.digits_at(tk));
                    let a = radix_matrix_element(&j, &k).unwrap();
                    let b = radix_matrix_element_staged(&j, &k).unwrap();
                    assert!((a - b).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn operation_count_structure() {
        let p = RadixPlan::new(5, 3).unwrap();
        let mut stats = OpStats::default();
        p.forward_with_stats(&random_state(125, 0).unwrap(), &mut stats).unwrap();
        // three kernel stages of D·d plus two twiddle passes of D
        assert_eq!(stats.complex_mults, 3 * 125 * 5 + 2 * 125);
    }

    #[test]
    fn factorized_two_digit_matches_full_transform() {
        let p = RadixPlan::new(3, 2).unwrap();
        let g = vec![
            random_state(3, 1).unwrap().into_vec(),
            random_state(3, 2).unwrap().into_vec(),
        ];
        let parts = fft_radix_factorized(&g, &p, Execution::Serial).unwrap();
        assert_eq!(parts.factors[0].arity, 2);
        assert_eq!(parts.factors[1].arity, 1);
        let full = p.forward(&product_state(&g, &p).unwrap()).unwrap();
        assert!(close(&parts.assemble(&p).unwrap(), &full, 1e-11));
    }

    #[test]
    fn factorized_delta() {
        let p = RadixPlan::new(5, 3).unwrap();
        let delta = StateVector::delta(5, 0).unwrap().into_vec();
        let g = vec![delta.clone(), delta.clone(), delta];
        let parts = fft_radix_factorized(&g, &p, Execution::Serial).unwrap();
        let full = p.forward(&product_state(&g, &p).unwrap()).unwrap();
        assert!(close(&parts.assemble(&p).unwrap(), &full, 1e-12));
        assert!(close(&full, &StateVector::uniform(125).unwrap(), 1e-12));
    }

    #[test]
    fn concurrent_factors_are_bit_identical() {
        let p = RadixPlan::new(7, 3).unwrap();
        let g: Vec<_> = (0..3).map(|i| random_state(7, i).unwrap().into_vec()).collect();
        let serial = fft_radix_factorized(&g, &p, Execution::Serial).unwrap();
        let concurrent = fft_radix_factorized(&g, &p, Execution::Concurrent).unwrap();
        assert_eq!(serial, concurrent);
        let bad = vec![g[0].clone(), g[1].clone(), vec![Complex64::default(); 5]];
        assert!(fft_radix_factorized(&bad, &p, Execution::Serial).is_err());
    }

    #[test]
    fn factorization_check_cases() {
        let p = RadixPlan::new(3, 2).unwrap();
        let g = vec![random_state(3, 5).unwrap().into_vec(), random_state(3, 6).unwrap().into_vec()];
        let prod = product_state(&g, &p).unwrap();
        assert!(factorization_necessary_check(&prod, 3, 2, DEFAULT_FACTORIZATION_TOL).unwrap());

        // (|-1,-1> + |0,0> + |1,1>)/√3: uniform marginals, joint not a product
        let mut amps = vec![Complex64::default(); 9];
        for u in 0..3 {
            amps[u + 3 * u] = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
        }
        let entangled = StateVector::new(amps).unwrap();
        assert!(!factorization_necessary_check(&entangled, 3, 2, DEFAULT_FACTORIZATION_TOL).unwrap());

        let mut perturbed = prod.clone();
        perturbed.amplitudes_mut()[4] += Complex64::new(1e-3, 0.0);
        assert!(!factorization_necessary_check(&perturbed, 3, 2, 1e-6).unwrap());
        assert!(factorization_necessary_check(&prod, 3, 3, 1e-6).is_err());
    }
}
