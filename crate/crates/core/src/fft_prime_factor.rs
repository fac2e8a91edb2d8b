//! Staged Fourier transform for `D = d_0 d_1 ... d_{n-1}` with pairwise coprime
//! odd factors.
//!
//! With `j_v = J mod d_v` and `k_v = K mod d_v` the kernel splits exactly,
//! `ω_D(JK) = Π_v ω_{d_v}(j_v b_v k_v)`, so the transform is a tensor product
//! of small transforms and needs no twiddles. The input is gathered once into
//! tensor layout (axis `v` has stride `d_0 ... d_{v-1}` and holds the centered
//! residue mod `d_v`), every axis is transformed, and the result is scattered
//! back through the same index map.

use std::thread;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft_radix::{small_dft, Execution};
use crate::number_theory::{mul_mod, CenteredResidue, CrtBasis, RootTable};
use crate::reference_dft::StateVector;
use crate::OpStats;

#[derive(Debug, Clone, PartialEq)]
pub struct PfaPlan {
    basis: CrtBasis,
    dim: usize,
    strides: Vec<usize>,
    /// Tensor position -> storage offset of the corresponding `J`.
    gather: Vec<usize>,
    /// Storage offset -> tensor position; inverse of `gather`.
    scatter: Vec<usize>,
    roots: Vec<RootTable>,
    /// `ω_{d_v}(j b_v k)/√d_v`, row-major over the offsets of `j` and `k`.
    kernels: Vec<Vec<Complex64>>,
}

impl PfaPlan {
    pub fn new(factors: &[i64]) -> Result<Self> {
        let basis = CrtBasis::new(factors)?;
        let dim = basis.dim() as usize;
        let sizes: Vec<usize> = factors.iter().map(|&f| f as usize).collect();
        let strides: Vec<usize> = sizes
            .iter()
            .scan(1usize, |acc, &f| {
                let s = *acc;
                *acc *= f;
                Some(s)
            })
            .collect();

        let mut gather = vec![0usize; dim];
        let mut scatter = vec![0usize; dim];
        let mut residues = vec![0i64; sizes.len()];
        for (pos, slot) in gather.iter_mut().enumerate() {
            for (v, r) in residues.iter_mut().enumerate() {
                let u = (pos / strides[v]) % sizes[v];
                *r = u as i64 - (sizes[v] as i64 - 1) / 2;
            }
            let offset = basis.decode(&residues)?.offset();
            *slot = offset;
            scatter[offset] = pos;
        }

        let roots = factors.iter().map(|&f| RootTable::new(f)).collect::<Result<Vec<_>>>()?;
        let kernels = factors
            .iter()
            .zip(basis.b())
            .map(|(&f, &b)| scaled_kernel(f, b, 1.0 / (f as f64).sqrt()))
            .collect::<Result<Vec<_>>>()?;

        Ok(PfaPlan { basis, dim, strides, gather, scatter, roots, kernels })
    }

    pub fn basis(&self) -> &CrtBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &[i64] {
        self.basis.factors()
    }

    pub fn gather_table(&self) -> &[usize] {
        &self.gather
    }

    pub fn scatter_table(&self) -> &[usize] {
        &self.scatter
    }

    /// Table of `ω_{d_v}(s)`.
    pub fn roots(&self, v: usize) -> &RootTable {
        &self.roots[v]
    }

    /// Normalized kernel `ω_{d_v}(j b_v k)/√d_v` for axis `v`.
    pub fn kernel(&self, v: usize) -> &[Complex64] {
        &self.kernels[v]
    }

    pub(crate) fn strides(&self) -> &[usize] {
        &self.strides
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::mismatch(self.dim, len));
        }
        Ok(())
    }

    /// Descending axis order, last factor first.
    pub fn default_order(&self) -> Vec<usize> {
        (0..self.basis.len()).rev().collect()
    }

    pub fn forward(&self, s: &StateVector) -> Result<StateVector> {
        self.forward_with_stats(s, &mut OpStats::default())
    }

    pub fn inverse(&self, s: &StateVector) -> Result<StateVector> {
        self.inverse_with_stats(s, &mut OpStats::default())
    }

    pub fn forward_with_stats(&self, s: &StateVector, stats: &mut OpStats) -> Result<StateVector> {
        self.transform(s, &self.default_order(), false, stats)
    }

    pub fn inverse_with_stats(&self, s: &StateVector, stats: &mut OpStats) -> Result<StateVector> {
        let order: Vec<usize> = (0..self.basis.len()).collect();
        self.transform(s, &order, true, stats)
    }

    /// Forward transform with the axes processed in `order`.
    pub fn forward_in_order(&self, s: &StateVector, order: &[usize]) -> Result<StateVector> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.basis.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument(format!("{order:?} is not a permutation of the axes")));
        }
        self.transform(s, order, false, &mut OpStats::default())
    }

    fn transform(&self, s: &StateVector, order: &[usize], inverse: bool, stats: &mut OpStats) -> Result<StateVector> {
        self.check(s.dim())?;
        let mut tensor = self.to_tensor(s.amplitudes());
        let mut scratch = vec![Complex64::default(); self.dim];
        for &v in order {
            self.apply_axis(&mut tensor, &mut scratch, v, &self.kernels[v], inverse);
            stats.complex_mults += (self.dim * self.basis.factors()[v] as usize) as u64;
        }
        Ok(StateVector::from_vec_unchecked(self.untensor(&tensor)))
    }

    pub(crate) fn to_tensor(&self, amps: &[Complex64]) -> Vec<Complex64> {
        self.gather.iter().map(|&t| amps[t]).collect()
    }

    pub(crate) fn untensor(&self, tensor: &[Complex64]) -> Vec<Complex64> {
        self.scatter.iter().map(|&p| tensor[p]).collect()
    }

    /// Contracts axis `v` of `tensor` against a `d_v x d_v` kernel.
    pub(crate) fn apply_axis(
        &self,
        tensor: &mut [Complex64],
        scratch: &mut [Complex64],
        v: usize,
        kernel: &[Complex64],
        conjugate: bool,
    ) {
        let size = self.basis.factors()[v] as usize;
        let stride = self.strides[v];
        let block = stride * size;
        for chunk in tensor.chunks_exact_mut(block) {
            let work = &mut scratch[..block];
            work.copy_from_slice(chunk);
            small_dft(kernel, size, work, chunk, stride, conjugate);
        }
    }
}

/// `scale · ω_f(j b k)` over centered `j, k`, row-major.
pub(crate) fn scaled_kernel(f: i64, b: i64, scale: f64) -> Result<Vec<Complex64>> {
    let table = RootTable::scaled(f, scale)?;
    let half = (f - 1) / 2;
    let mut kernel = Vec::with_capacity((f * f) as usize);
    for j in -half..=half {
        for k in -half..=half {
            kernel.push(table.get(mul_mod(mul_mod(j, b, f), k, f)));
        }
    }
    Ok(kernel)
}

pub fn plan_pfa(factors: &[i64]) -> Result<PfaPlan> {
    PfaPlan::new(factors)
}

pub fn fft_pfa(s: &StateVector, plan: &PfaPlan) -> Result<StateVector> {
    plan.forward(s)
}

pub fn ifft_pfa(s: &StateVector, plan: &PfaPlan) -> Result<StateVector> {
    plan.inverse(s)
}

/// Full `D x D` matrix `F(J, K)` assembled from the per-factor kernels,
/// row `J` and column `K` in storage order.
pub fn assembled_matrix(plan: &PfaPlan) -> Vec<Complex64> {
    let dim = plan.dim;
    let n = plan.basis.len();
    let sizes: Vec<usize> = plan.factors().iter().map(|&f| f as usize).collect();
    let mut m = vec![Complex64::default(); dim * dim];
    for (pj, &tj) in plan.gather.iter().enumerate() {
        for (pk, &tk) in plan.gather.iter().enumerate() {
            m[tj * dim + tk] = (0..n)
                .map(|v| {
                    let uj = (pj / plan.strides[v]) % sizes[v];
                    let uk = (pk / plan.strides[v]) % sizes[v];
                    plan.kernels[v][uj * sizes[v] + uk]
                })
                .product();
        }
    }
    m
}

/// `s(K) = Π_v g_v(K mod d_v)` for factor states of lengths `d_v`.
pub fn product_state(g: &[Vec<Complex64>], plan: &PfaPlan) -> Result<StateVector> {
    check_factor_lengths(g, plan)?;
    let sizes: Vec<usize> = plan.factors().iter().map(|&f| f as usize).collect();
    let tensor: Vec<Complex64> = (0..plan.dim)
        .map(|p| (0..g.len()).map(|v| g[v][(p / plan.strides[v]) % sizes[v]]).product())
        .collect();
    Ok(StateVector::from_vec_unchecked(plan.untensor(&tensor)))
}

fn check_factor_lengths(g: &[Vec<Complex64>], plan: &PfaPlan) -> Result<()> {
    if g.len() != plan.basis.len() {
        return Err(Error::mismatch(plan.basis.len(), g.len()));
    }
    for (gv, &f) in g.iter().zip(plan.factors()) {
        if gv.len() != f as usize {
            return Err(Error::mismatch(f as usize, gv.len()));
        }
    }
    Ok(())
}

/// Per-factor transforms `g̃_v(j) = Σ_k ω_{d_v}(j b_v k) g_v(k) / √d_v` of a
/// product input; the transform of the product is the product of these.
pub fn fft_pfa_factorized(
    g: &[Vec<Complex64>],
    plan: &PfaPlan,
    execution: Execution,
) -> Result<Vec<Vec<Complex64>>> {
    check_factor_lengths(g, plan)?;
    let one = |v: usize| {
        let size = plan.factors()[v] as usize;
        let mut out = vec![Complex64::default(); size];
        small_dft(&plan.kernels[v], size, &g[v], &mut out, 1, false);
        out
    };
    Ok(match execution {
        Execution::Serial => (0..g.len()).map(one).collect(),
        Execution::Concurrent => thread::scope(|scope| {
            let handles: Vec<_> = (0..g.len()).map(|v| scope.spawn(move || one(v))).collect();
            handles.into_iter().map(|h| h.join().expect("factor transform panicked")).collect()
        }),
    })
}

/// Residues `(J mod d_0, ..., J mod d_{n-1})` of a centered `J`, as offsets
/// into each axis.
pub(crate) fn residue_offsets(plan: &PfaPlan, j: i64) -> Vec<usize> {
    plan.factors()
        .iter()
        .map(|&f| CenteredResidue::new(j, f).expect("odd factor").offset())
        .collect()
}
