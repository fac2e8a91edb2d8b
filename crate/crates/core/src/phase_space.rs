//! Weyl and Wigner functions of a pure state on `Z(D) x Z(D)`:
//!
//! ```text
//! W̃(A,B) = ω_D(2⁻¹AB) Σ_K ω_D(AK)   s(K) s*(B+K)
//! W(A,B)  = ω_D(2AB)   Σ_K ω_D(-2AK) s(K) s*(2B-K)
//! ```
//!
//! For fixed `B` each is a length-`D` Fourier sum, so the fast versions run the
//! coprime-factor stages on the product sequence. The shifted index `B+K` (or
//! `2B-K`) is formed componentwise on the residues, which is valid only
//! because the Chinese-remainder map is a ring isomorphism.

use std::thread;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft_prime_factor::{residue_offsets, scaled_kernel, PfaPlan};
use crate::number_theory::{half_inverse, modulo, mul_mod, CenteredResidue, RootTable};
use crate::plan::Plan;
use crate::reference_dft::StateVector;
use crate::OpStats;

/// Largest `D` for which a full `D x D` table is materialized. Larger grids
/// must be streamed row by row.
pub const MAX_TABLE_DIM: usize = 1500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseSpaceKind {
    Weyl,
    Wigner,
}

impl PhaseSpaceKind {
    pub fn label(&self) -> &'static str {
        match self {
            PhaseSpaceKind::Weyl => "weyl",
            PhaseSpaceKind::Wigner => "wigner",
        }
    }

    /// Multiplier `c` of the Fourier phase `ω_D(c·A·K)`.
    fn phase_factor(&self) -> i64 {
        match self {
            PhaseSpaceKind::Weyl => 1,
            PhaseSpaceKind::Wigner => -2,
        }
    }

    /// Exponent of the prefactor: `2⁻¹AB` or `2AB`.
    fn prefactor_exponent(&self, a: i64, b: i64, dim: i64) -> i64 {
        let scale = match self {
            PhaseSpaceKind::Weyl => half_inverse(dim).expect("odd dimension"),
            PhaseSpaceKind::Wigner => 2,
        };
        mul_mod(mul_mod(scale, a, dim), b, dim)
    }

    /// Storage offset of the conjugated partner of `K` for shift `B`:
    /// `B+K` or `2B-K`.
    fn partner(&self, k: i64, b: i64, modulus: i64) -> usize {
        let value = match self {
            PhaseSpaceKind::Weyl => b + k,
            PhaseSpaceKind::Wigner => 2 * b - k,
        };
        CenteredResidue::new(value, modulus).expect("odd modulus").offset()
    }
}

/// A `D x D` grid indexed by centered `(A, B)`, stored row-major in `B`
/// (rows) then `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceTable {
    dim: usize,
    kind: PhaseSpaceKind,
    grid: Vec<Complex64>,
}

impl PhaseSpaceTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> PhaseSpaceKind {
        self.kind
    }

    pub fn grid(&self) -> &[Complex64] {
        &self.grid
    }

    pub fn get(&self, a: i64, b: i64) -> Complex64 {
        let dim = self.dim as i64;
        let half = (dim - 1) / 2;
        let (ta, tb) = (modulo(a + half, dim) as usize, modulo(b + half, dim) as usize);
        self.grid[tb * self.dim + ta]
    }

    /// Values for fixed `B` over all `A`.
    pub fn row(&self, b: i64) -> &[Complex64] {
        let dim = self.dim as i64;
        let tb = modulo(b + (dim - 1) / 2, dim) as usize;
        &self.grid[tb * self.dim..(tb + 1) * self.dim]
    }

    pub fn max_imag(&self) -> f64 {
        self.grid.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::mismatch(self.dim, other.dim));
        }
        Ok(self.grid.iter().zip(&other.grid).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

/// Computes one `B`-row at a time with private scratch.
trait RowEngine {
    fn row(&mut self, b: i64, out: &mut [Complex64], stats: &mut OpStats);
}

struct DirectRows<'a> {
    kind: PhaseSpaceKind,
    state: &'a [Complex64],
    dim: i64,
    roots: RootTable,
    product: Vec<Complex64>,
}

impl<'a> DirectRows<'a> {
    fn new(kind: PhaseSpaceKind, s: &'a StateVector) -> Self {
        let dim = s.dim() as i64;
        DirectRows {
            kind,
            state: s.amplitudes(),
            dim,
            roots: RootTable::new(dim).expect("validated dimension"),
            product: vec![Complex64::default(); s.dim()],
        }
    }
}

impl RowEngine for DirectRows<'_> {
    fn row(&mut self, b: i64, out: &mut [Complex64], stats: &mut OpStats) {
        let dim = self.dim;
        let half = (dim - 1) / 2;
        for (t, p) in self.product.iter_mut().enumerate() {
            let k = t as i64 - half;
            *p = self.state[t] * self.state[self.kind.partner(k, b, dim)].conj();
        }
        let c = self.kind.phase_factor();
        let prefactor_step = self.kind.prefactor_exponent(1, b, dim);
        for (ta, slot) in out.iter_mut().enumerate() {
            let a = ta as i64 - half;
            let step = modulo(c * a, dim) as usize;
            let mut idx = modulo(-c * a * half, dim) as usize;
            let mut acc = Complex64::default();
            for p in &self.product {
                acc += self.roots.at(idx) * p;
                idx += step;
                if idx >= dim as usize {
                    idx -= dim as usize;
                }
            }
            *slot = self.roots.get(prefactor_step * a) * acc;
        }
        let d = dim as u64;
        stats.complex_mults += d + d * d + d;
    }
}

struct FastRows<'a> {
    kind: PhaseSpaceKind,
    plan: &'a PfaPlan,
    dim: i64,
    /// State in tensor layout.
    tensor_state: Vec<Complex64>,
    /// `ω_{d_v}(c · a · b_v · k)` per axis, unnormalized.
    kernels: Vec<Vec<Complex64>>,
    roots: RootTable,
    work: Vec<Complex64>,
    scratch: Vec<Complex64>,
    digits: Vec<usize>,
    partner: Vec<Vec<usize>>,
}

impl<'a> FastRows<'a> {
    fn new(kind: PhaseSpaceKind, s: &StateVector, plan: &'a PfaPlan) -> Result<Self> {
        let basis = plan.basis();
        let kernels = basis
            .factors()
            .iter()
            .zip(basis.b())
            .map(|(&f, &b)| scaled_kernel(f, mul_mod(kind.phase_factor(), b, f), 1.0))
            .collect::<Result<Vec<_>>>()?;
        let dim = plan.dim();
        Ok(FastRows {
            kind,
            plan,
            dim: dim as i64,
            tensor_state: plan.to_tensor(s.amplitudes()),
            kernels,
            roots: RootTable::new(dim as i64)?,
            work: vec![Complex64::default(); dim],
            scratch: vec![Complex64::default(); dim],
            digits: vec![0; basis.len()],
            partner: plan.factors().iter().map(|&f| vec![0; f as usize]).collect(),
        })
    }
}

impl RowEngine for FastRows<'_> {
    fn row(&mut self, b: i64, out: &mut [Complex64], stats: &mut OpStats) {
        let plan = self.plan;
        let factors = plan.factors();
        let strides = plan.strides();

        // Per-axis partner offsets: (k_v + b_v) or (2b_v - k_v) in Z(d_v).
        let b_res = residue_offsets(plan, b);
        for (v, table) in self.partner.iter_mut().enumerate() {
            let f = factors[v];
            let bv = b_res[v] as i64 - (f - 1) / 2;
            for (u, slot) in table.iter_mut().enumerate() {
                let kv = u as i64 - (f - 1) / 2;
                *slot = self.kind.partner(kv, bv, f) * strides[v];
            }
        }

        // Product sequence in tensor layout, walking the residue digits as an odometer.
        self.digits.iter_mut().for_each(|d| *d = 0);
        for (pos, w) in self.work.iter_mut().enumerate() {
            let other: usize = self.digits.iter().enumerate().map(|(v, &u)| self.partner[v][u]).sum();
            *w = self.tensor_state[pos] * self.tensor_state[other].conj();
            for (v, d) in self.digits.iter_mut().enumerate() {
                *d += 1;
                if *d < factors[v] as usize {
                    break;
                }
                *d = 0;
            }
        }

        for v in plan.default_order() {
            plan.apply_axis(&mut self.work, &mut self.scratch, v, &self.kernels[v], false);
        }

        let dim = self.dim;
        let half = (dim - 1) / 2;
        let step = self.kind.prefactor_exponent(1, b, dim);
        for (pos, &t) in plan.gather_table().iter().enumerate() {
            let a = t as i64 - half;
            out[t] = self.roots.get(step * a) * self.work[pos];
        }

        let d = dim as u64;
        let staged: u64 = factors.iter().map(|&f| d * f as u64).sum();
        stats.complex_mults += d + staged + d;
    }
}

fn check_state(s: &StateVector, dim: usize) -> Result<()> {
    if s.dim() != dim {
        return Err(Error::mismatch(dim, s.dim()));
    }
    Ok(())
}

fn check_table_size(dim: usize) -> Result<()> {
    if dim > MAX_TABLE_DIM {
        return Err(Error::Capacity { requested: dim as u128, limit: MAX_TABLE_DIM });
    }
    Ok(())
}

fn collect_rows(kind: PhaseSpaceKind, dim: usize, engine: &mut dyn RowEngine, stats: &mut OpStats) -> PhaseSpaceTable {
    let half = (dim as i64 - 1) / 2;
    let mut grid = vec![Complex64::default(); dim * dim];
    for (tb, row) in grid.chunks_exact_mut(dim).enumerate() {
        engine.row(tb as i64 - half, row, stats);
    }
    PhaseSpaceTable { dim, kind, grid }
}

pub fn direct_with_stats(kind: PhaseSpaceKind, s: &StateVector, stats: &mut OpStats) -> Result<PhaseSpaceTable> {
    check_table_size(s.dim())?;
    Ok(collect_rows(kind, s.dim(), &mut DirectRows::new(kind, s), stats))
}

pub fn fast_with_stats(
    kind: PhaseSpaceKind,
    s: &StateVector,
    plan: &Plan,
    stats: &mut OpStats,
) -> Result<PhaseSpaceTable> {
    let pfa = plan.phase_space_plan()?;
    check_state(s, pfa.dim())?;
    check_table_size(s.dim())?;
    Ok(collect_rows(kind, s.dim(), &mut FastRows::new(kind, s, pfa)?, stats))
}

pub fn weyl_direct(s: &StateVector) -> Result<PhaseSpaceTable> {
    direct_with_stats(PhaseSpaceKind::Weyl, s, &mut OpStats::default())
}

pub fn wigner_direct(s: &StateVector) -> Result<PhaseSpaceTable> {
    direct_with_stats(PhaseSpaceKind::Wigner, s, &mut OpStats::default())
}

pub fn weyl_fast(s: &StateVector, plan: &Plan) -> Result<PhaseSpaceTable> {
    fast_with_stats(PhaseSpaceKind::Weyl, s, plan, &mut OpStats::default())
}

pub fn wigner_fast(s: &StateVector, plan: &Plan) -> Result<PhaseSpaceTable> {
    fast_with_stats(PhaseSpaceKind::Wigner, s, plan, &mut OpStats::default())
}

/// Fast rows emitted one `B` at a time in ascending order, for grids too
/// large to hold. No size cap applies.
pub fn stream_fast_rows<F>(kind: PhaseSpaceKind, s: &StateVector, plan: &Plan, mut emit: F) -> Result<()>
where
    F: FnMut(i64, &[Complex64]) -> Result<()>,
{
    let pfa = plan.phase_space_plan()?;
    check_state(s, pfa.dim())?;
    let mut engine = FastRows::new(kind, s, pfa)?;
    let half = (s.dim() as i64 - 1) / 2;
    let mut row = vec![Complex64::default(); s.dim()];
    for b in -half..=half {
        engine.row(b, &mut row, &mut OpStats::default());
        emit(b, &row)?;
    }
    Ok(())
}

/// Fast table with rows split across `threads` workers, each with its own
/// scratch. Output is independent of scheduling.
pub fn fast_parallel(kind: PhaseSpaceKind, s: &StateVector, plan: &Plan, threads: usize) -> Result<PhaseSpaceTable> {
    let pfa = plan.phase_space_plan()?;
    check_state(s, pfa.dim())?;
    check_table_size(s.dim())?;
    let dim = s.dim();
    let half = (dim as i64 - 1) / 2;
    let rows_per = dim.div_ceil(threads.max(1));
    let mut grid = vec![Complex64::default(); dim * dim];
    thread::scope(|scope| -> Result<()> {
        let mut handles = Vec::new();
        for (chunk_idx, chunk) in grid.chunks_mut(rows_per * dim).enumerate() {
            handles.push(scope.spawn(move || -> Result<()> {
                let mut engine = FastRows::new(kind, s, pfa)?;
                for (i, row) in chunk.chunks_exact_mut(dim).enumerate() {
                    let tb = chunk_idx * rows_per + i;
                    engine.row(tb as i64 - half, row, &mut OpStats::default());
                }
                Ok(())
            }));
        }
        handles.into_iter().try_for_each(|h| h.join().expect("row worker panicked"))
    })?;
    Ok(PhaseSpaceTable { dim, kind, grid })
}
