//! State vectors over `Z(D)` and the brute-force `O(D^2)` Fourier transform
//! that every fast path is checked against.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::number_theory::{modulo, omega, CenteredResidue, RootTable, MAX_DIM};
use crate::OpStats;

/// Amplitudes `s(J)` for `J` in `Z(D)`, stored at offset `J + (D-1)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim.is_multiple_of(2) {
            return Err(Error::InvalidModulus(dim as i64));
        }
        if dim > MAX_DIM {
            return Err(Error::Capacity { requested: dim as u128, limit: MAX_DIM });
        }
        Ok(StateVector { amplitudes })
    }

    pub(crate) fn from_vec_unchecked(amplitudes: Vec<Complex64>) -> Self {
        debug_assert!(amplitudes.len() % 2 == 1);
        StateVector { amplitudes }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(i64) -> Complex64) -> Result<Self> {
        let half = (dim as i64 - 1) / 2;
        Self::new((-half..=half).map(&mut f).collect())
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// Position eigenstate `|X; J>`.
    pub fn delta(dim: usize, j: i64) -> Result<Self> {
        let mut s = Self::zeros(dim)?;
        let at = CenteredResidue::new(j, dim as i64)?.offset();
        s.amplitudes[at] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// The normalized constant state.
    pub fn uniform(dim: usize) -> Result<Self> {
        let amp = 1.0 / (dim as f64).sqrt();
        Self::new(vec![Complex64::new(amp, 0.0); dim])
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn half(&self) -> i64 {
        (self.dim() as i64 - 1) / 2
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// `s(J)` for any integer `J`, reduced into `Z(D)`.
    pub fn get(&self, j: i64) -> Complex64 {
        let dim = self.dim() as i64;
        self.amplitudes[modulo(j + self.half(), dim) as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            self.amplitudes.iter_mut().for_each(|a| *a /= n);
        }
        self
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.same_dim(other)?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// Euclidean distance `||self - other||`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.same_dim(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Largest componentwise modulus of the difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_dim(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub(crate) fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::mismatch(self.dim(), other.dim()));
        }
        Ok(())
    }
}

/// Seeded state with standard complex Gaussian components, normalized.
pub fn random_state(dim: usize, seed: u64) -> Result<StateVector> {
    if dim.is_multiple_of(2) {
        return Err(Error::InvalidModulus(dim as i64));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let amplitudes = (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    Ok(StateVector::new(amplitudes)?.normalized())
}

/// `<X;J| F |X;K> = ω_D(JK) / √D`.
pub fn dft_matrix_element(j: CenteredResidue, k: CenteredResidue, dim: i64) -> Result<Complex64> {
    for r in [j, k] {
        if r.modulus() != dim {
            return Err(Error::mismatch(dim as usize, r.modulus() as usize));
        }
    }
    let exponent = crate::number_theory::mul_mod(j.value(), k.value(), dim);
    Ok(omega(dim, exponent)? / (dim as f64).sqrt())
}

pub fn dft_direct(s: &StateVector) -> StateVector {
    dft_direct_with_stats(s, &mut OpStats::default())
}

pub fn idft_direct(s: &StateVector) -> StateVector {
    idft_direct_with_stats(s, &mut OpStats::default())
}

/// `s̃(J) = (1/√D) Σ_K ω_D(JK) s(K)`; exactly `D^2` kernel multiplications.
pub fn dft_direct_with_stats(s: &StateVector, stats: &mut OpStats) -> StateVector {
    direct(s, 1, stats)
}

pub fn idft_direct_with_stats(s: &StateVector, stats: &mut OpStats) -> StateVector {
    direct(s, -1, stats)
}

fn direct(s: &StateVector, sign: i64, stats: &mut OpStats) -> StateVector {
    let dim = s.dim() as i64;
    let half = s.half();
    let roots = RootTable::scaled(dim, 1.0 / (dim as f64).sqrt()).expect("validated dimension");
    let amps = s.amplitudes();
    let out = (-half..=half)
        .map(|j| {
            // exponent of the first term (K = -half), then stepped by J per K
            let step = modulo(sign * j, dim) as usize;
            let mut idx = modulo(-sign * j * half, dim) as usize;
            let mut acc = Complex64::new(0.0, 0.0);
            for amp in amps {
                acc += roots.at(idx) * amp;
                idx += step;
                if idx >= dim as usize {
                    idx -= dim as usize;
                }
            }
            acc
        })
        .collect();
    stats.complex_mults += (dim * dim) as u64;
    StateVector::from_vec_unchecked(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    // Independent route: transcendental call per term, plain double loop.
    fn naive_dft(s: &StateVector) -> Vec<Complex64> {
        let dim = s.dim() as i64;
        let half = s.half();
        (-half..=half)
            .map(|j| {
                (-half..=half)
                    .map(|k| {
                        let phase = TAU * ((j * k) as f64) / dim as f64;
                        Complex64::from_polar(1.0, phase) * s.get(k)
                    })
                    .sum::<Complex64>()
                    / (dim as f64).sqrt()
            })
            .collect()
    }

    #[test]
    fn matrix_element_examples() {
        let d = 3;
        let zero = CenteredResidue::new(0, d).unwrap();
        let one = CenteredResidue::new(1, d).unwrap();
        let expect = 1.0 / 3f64.sqrt();
        assert!((dft_matrix_element(zero, one, d).unwrap() - expect).norm() < 1e-15);
        let e = Complex64::from_polar(1.0, TAU / 3.0) / 3f64.sqrt();
        assert!((dft_matrix_element(one, one, d).unwrap() - e).norm() < 1e-15);
        assert!(dft_matrix_element(one, CenteredResidue::new(1, 5).unwrap(), d).is_err());
    }

    #[test]
    fn rows_are_orthonormal() {
        let dim = 15;
        for j in CenteredResidue::all(dim).unwrap() {
            for jp in CenteredResidue::all(dim).unwrap() {
                let sum: Complex64 = CenteredResidue::all(dim)
                    .unwrap()
                    .map(|k| dft_matrix_element(j, k, dim).unwrap() * dft_matrix_element(jp, k, dim).unwrap().conj())
                    .sum();
                let expect = if j == jp { 1.0 } else { 0.0 };
                assert!((sum - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn delta_and_uniform_are_dual() {
        let out = dft_direct(&StateVector::delta(3, 0).unwrap());
        for a in out.amplitudes() {
            assert!((a - Complex64::new(1.0 / 3f64.sqrt(), 0.0)).norm() < 1e-15);
        }
        for dim in [3, 9, 15, 105] {
            let out = dft_direct(&StateVector::uniform(dim).unwrap());
            assert!(out.distance(&StateVector::delta(dim, 0).unwrap()).unwrap() < 1e-12);
            let back = idft_direct(&StateVector::uniform(dim).unwrap());
            assert!(back.distance(&StateVector::delta(dim, 0).unwrap()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn matches_naive_double_loop() {
        for seed in 0..5 {
            let s = random_state(15, seed).unwrap();
            let fast = dft_direct(&s);
            for (a, b) in fast.amplitudes().iter().zip(naive_dft(&s)) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn round_trip_and_fourth_power() {
        for dim in [9, 15, 105] {
            for seed in 0..100 {
                let s = random_state(dim, seed).unwrap();
                let back = idft_direct(&dft_direct(&s));
                assert!(back.distance(&s).unwrap() < 1e-12);
            }
        }
        let s = random_state(15, 7).unwrap();
        let four = (0..4).fold(s.clone(), |acc, _| dft_direct(&acc));
        assert!(four.distance(&s).unwrap() < 1e-11);
    }

    #[test]
    fn counts_exactly_d_squared() {
        let mut stats = OpStats::default();
        dft_direct_with_stats(&random_state(21, 1).unwrap(), &mut stats);
        assert_eq!(stats.complex_mults, 441);
    }

    #[test]
    fn random_state_properties() {
        assert_eq!(random_state(15, 3).unwrap(), random_state(15, 3).unwrap());
        for seed in 0..100 {
            assert!((random_state(15, seed).unwrap().norm() - 1.0).abs() < 1e-12);
        }
        let a = random_state(105, 1).unwrap();
        let b = random_state(105, 2).unwrap();
        assert!(a.inner(&b).unwrap().norm() < 0.99);
        assert!(matches!(random_state(10, 0), Err(Error::InvalidModulus(10))));
    }

    #[test]
    fn state_vector_rejects_even_length() {
        assert!(StateVector::new(vec![Complex64::new(0.0, 0.0); 4]).is_err());
        let s = StateVector::from_fn(5, |j| Complex64::new(j as f64, 0.0)).unwrap();
        assert_eq!(s.get(-2).re, -2.0);
        assert_eq!(s.get(3).re, -2.0);
    }
}
