use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fft_prime_factor::PfaPlan;
use crate::fft_radix::RadixPlan;
use crate::reference_dft::{dft_direct_with_stats, idft_direct_with_stats, StateVector};
use crate::OpStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Direct,
    Radix,
    PrimeFactor,
}

impl Backend {
    pub fn label(&self) -> &'static str {
        match self {
            Backend::Direct => "direct",
            Backend::Radix => "radix",
            Backend::PrimeFactor => "pfa",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Backend::Direct),
            "radix" => Ok(Backend::Radix),
            "pfa" | "prime-factor" => Ok(Backend::PrimeFactor),
            other => Err(Error::InvalidArgument(format!("unknown backend '{other}'"))),
        }
    }
}

/// A prepared transform for one dimension and one backend.
#[derive(Debug, Clone, PartialEq)]
pub enum Plan {
    Direct { dim: usize },
    Radix(RadixPlan),
    PrimeFactor(PfaPlan),
}

impl Plan {
    pub fn direct(dim: usize) -> Result<Self> {
        if dim.is_multiple_of(2) {
            return Err(Error::InvalidModulus(dim as i64));
        }
        Ok(Plan::Direct { dim })
    }

    pub fn radix(d: i64, n: u32) -> Result<Self> {
        RadixPlan::new(d, n).map(Plan::Radix)
    }

    pub fn prime_factor(factors: &[i64]) -> Result<Self> {
        PfaPlan::new(factors).map(Plan::PrimeFactor)
    }

    pub fn backend(&self) -> Backend {
        match self {
            Plan::Direct { .. } => Backend::Direct,
            Plan::Radix(_) => Backend::Radix,
            Plan::PrimeFactor(_) => Backend::PrimeFactor,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Plan::Direct { dim } => *dim,
            Plan::Radix(p) => p.dim(),
            Plan::PrimeFactor(p) => p.dim(),
        }
    }

    pub fn forward(&self, s: &StateVector) -> Result<StateVector> {
        self.forward_with_stats(s, &mut OpStats::default())
    }

    pub fn inverse(&self, s: &StateVector) -> Result<StateVector> {
        self.inverse_with_stats(s, &mut OpStats::default())
    }

    pub fn forward_with_stats(&self, s: &StateVector, stats: &mut OpStats) -> Result<StateVector> {
        match self {
            Plan::Direct { dim } => {
                if s.dim() != *dim {
                    return Err(Error::mismatch(*dim, s.dim()));
                }
                Ok(dft_direct_with_stats(s, stats))
            }
            Plan::Radix(p) => p.forward_with_stats(s, stats),
            Plan::PrimeFactor(p) => p.forward_with_stats(s, stats),
        }
    }

    pub fn inverse_with_stats(&self, s: &StateVector, stats: &mut OpStats) -> Result<StateVector> {
        match self {
            Plan::Direct { dim } => {
                if s.dim() != *dim {
                    return Err(Error::mismatch(*dim, s.dim()));
                }
                Ok(idft_direct_with_stats(s, stats))
            }
            Plan::Radix(p) => p.inverse_with_stats(s, stats),
            Plan::PrimeFactor(p) => p.inverse_with_stats(s, stats),
        }
    }

    /// The prime-factor plan, the only backend whose index map respects sums
    /// and products and can therefore drive the phase-space functions.
    pub fn phase_space_plan(&self) -> Result<&PfaPlan> {
        match self {
            Plan::PrimeFactor(p) => Ok(p),
            Plan::Radix(_) => Err(Error::UnsupportedBackend(
                "the radix digit map does not carry K+B to componentwise sums, \
                 so it cannot factor the phase-space transforms; use coprime factors"
                    .into(),
            )),
            Plan::Direct { .. } => Err(Error::UnsupportedBackend(
                "the direct backend has no fast phase-space path; use weyl_direct/wigner_direct".into(),
            )),
        }
    }
}

impl From<RadixPlan> for Plan {
    fn from(p: RadixPlan) -> Self {
        Plan::Radix(p)
    }
}

impl From<PfaPlan> for Plan {
    fn from(p: PfaPlan) -> Self {
        Plan::PrimeFactor(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference_dft::random_state;

    #[test]
    fn backends_parse() {
        assert_eq!("radix".parse::<Backend>().unwrap(), Backend::Radix);
        assert_eq!("pfa".parse::<Backend>().unwrap(), Backend::PrimeFactor);
        assert_eq!("direct".parse::<Backend>().unwrap(), Backend::Direct);
        assert!("fast".parse::<Backend>().is_err());
    }

    #[test]
    fn all_backends_agree() {
        let s = random_state(15, 3).unwrap();
        let direct = Plan::direct(15).unwrap().forward(&s).unwrap();
        let pfa = Plan::prime_factor(&[3, 5]).unwrap().forward(&s).unwrap();
        assert!(direct.distance(&pfa).unwrap() < 1e-12);
        let s = random_state(9, 3).unwrap();
        let direct = Plan::direct(9).unwrap().forward(&s).unwrap();
        let radix = Plan::radix(3, 2).unwrap().forward(&s).unwrap();
        assert!(direct.distance(&radix).unwrap() < 1e-12);
        assert!(Plan::direct(15).unwrap().forward(&s).is_err());
    }

    #[test]
    fn only_prime_factor_serves_phase_space() {
        assert!(Plan::prime_factor(&[3, 5]).unwrap().phase_space_plan().is_ok());
        assert!(matches!(
            Plan::radix(3, 2).unwrap().phase_space_plan(),
            Err(Error::UnsupportedBackend(_))
        ));
    }
}
