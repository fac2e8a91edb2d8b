//! Fast Fourier transforms for odd-dimensional systems `Z(D)`, plus direct and
//! fast Weyl and Wigner functions.
//!
//! Two fast backends are provided:
//!
//! * [`fft_radix`] for `D = d^n`, a staged transform over balanced radix digits
//!   with twiddle factors between stages;
//! * [`fft_prime_factor`] for `D = d_0 ... d_{n-1}` with pairwise coprime odd
//!   factors, which needs no twiddles and, because the index map is a ring
//!   isomorphism, also drives the fast phase-space functions in [`phase_space`].
//!
//! Both are checked against the brute-force transform in [`reference_dft`].

pub mod bench;
pub mod error;
pub mod fft_prime_factor;
pub mod fft_radix;
pub mod io;
pub mod number_theory;
pub mod phase_space;
pub mod plan;
pub mod reference_dft;
pub mod verify;

pub use error::{Error, Result};
pub use fft_prime_factor::PfaPlan;
pub use fft_radix::RadixPlan;
pub use num_complex::Complex64;
pub use number_theory::{CenteredResidue, CrtBasis, RadixDigits};
pub use phase_space::{PhaseSpaceKind, PhaseSpaceTable};
pub use plan::{Backend, Plan};
pub use reference_dft::StateVector;

/// Operation counters filled in by the `*_with_stats` entry points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpStats {
    /// Complex multiplications, including those against kernel and twiddle
    /// tables. Additions and index arithmetic are not counted.
    pub complex_mults: u64,
}
