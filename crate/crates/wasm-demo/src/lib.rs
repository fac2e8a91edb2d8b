//! Browser bindings for the static page in `www/`.
//!
//! Each exported function is a thin wrapper over a plain Rust function that
//! returns `Result<_, String>`, so the logic is tested natively.

use wasm_bindgen::prelude::*;

use qfft::number_theory::{radix_encode, CenteredResidue, CrtBasis};
use qfft::phase_space::{direct_with_stats, fast_with_stats};
use qfft::reference_dft::{dft_direct_with_stats, random_state};
use qfft::{OpStats, PhaseSpaceKind, Plan, StateVector};

/// Heatmaps above this size get slow to draw and to compute directly.
pub const MAX_HEATMAP_DIM: usize = 255;
pub const MAX_SPECTRUM_DIM: usize = 1 << 16;

fn parse_factors(text: &str) -> Result<Vec<i64>, String> {
    let factors = text
        .split([',', ' ', 'x', '*'])
        .filter(|t| !t.is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad factor '{t}': {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if factors.is_empty() {
        return Err("no factors given".into());
    }
    Ok(factors)
}

fn make_state(shape: &str, dim: usize, seed: u32) -> Result<StateVector, String> {
    let s = match shape {
        "random" => random_state(dim, seed as u64),
        "delta" => StateVector::delta(dim, 0),
        "uniform" => StateVector::uniform(dim),
        "gaussian" => {
            let width = (dim as f64).sqrt() / 2.0;
            StateVector::from_fn(dim, |j| {
                let x = j as f64 / width;
                qfft::Complex64::new((-0.5 * x * x).exp(), 0.0)
            })
            .map(StateVector::normalized)
        }
        other => return Err(format!("unknown state '{other}'")),
    };
    s.map_err(|e| e.to_string())
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Spectrum {
    dim: usize,
    magnitudes: Vec<f64>,
    max_error: f64,
    fast_mults: u64,
    direct_mults: u64,
}

#[wasm_bindgen]
impl Spectrum {
    #[wasm_bindgen(getter)]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `|F s(K)|` for centered `K` in ascending order.
    #[wasm_bindgen(getter)]
    pub fn magnitudes(&self) -> Vec<f64> {
        self.magnitudes.clone()
    }

    #[wasm_bindgen(getter, js_name = maxError)]
    pub fn max_error(&self) -> f64 {
        self.max_error
    }

    #[wasm_bindgen(getter, js_name = fastMults)]
    pub fn fast_mults(&self) -> f64 {
        self.fast_mults as f64
    }

    #[wasm_bindgen(getter, js_name = directMults)]
    pub fn direct_mults(&self) -> f64 {
        self.direct_mults as f64
    }
}

/// `backend` is `radix` (with `params` = `d,n`) or `pfa` (with coprime factors).
pub fn spectrum_inner(backend: &str, params: &str, shape: &str, seed: u32) -> Result<Spectrum, String> {
    let nums = parse_factors(params)?;
    let plan = match (backend, nums.as_slice()) {
        ("radix", &[d, n]) => Plan::radix(d, u32::try_from(n).map_err(|_| "n out of range".to_string())?),
        ("radix", _) => return Err("radix takes 'd,n'".into()),
        ("pfa", f) => Plan::prime_factor(f),
        (other, _) => return Err(format!("unknown backend '{other}'")),
    }
    .map_err(|e| e.to_string())?;
    if plan.dim() > MAX_SPECTRUM_DIM {
        return Err(format!("D = {} is above the demo limit of {MAX_SPECTRUM_DIM}", plan.dim()));
    }
    let s = make_state(shape, plan.dim(), seed)?;
    let mut fast_stats = OpStats::default();
    let fast = plan.forward_with_stats(&s, &mut fast_stats).map_err(|e| e.to_string())?;
    let mut direct_stats = OpStats::default();
    let direct = dft_direct_with_stats(&s, &mut direct_stats);
    Ok(Spectrum {
        dim: plan.dim(),
        magnitudes: fast.amplitudes().iter().map(|z| z.norm()).collect(),
        max_error: fast.max_abs_diff(&direct).map_err(|e| e.to_string())?,
        fast_mults: fast_stats.complex_mults,
        direct_mults: direct_stats.complex_mults,
    })
}

#[wasm_bindgen]
pub fn spectrum(backend: &str, params: &str, shape: &str, seed: u32) -> Result<Spectrum, JsError> {
    spectrum_inner(backend, params, shape, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Heatmap {
    dim: usize,
    values: Vec<f64>,
    max_error: f64,
    max_imag: f64,
}

#[wasm_bindgen]
impl Heatmap {
    #[wasm_bindgen(getter)]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major, `B` rows then `A`: the real part for Wigner, the modulus for Weyl.
    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    /// Largest deviation of the fast table from the direct one.
    #[wasm_bindgen(getter, js_name = maxError)]
    pub fn max_error(&self) -> f64 {
        self.max_error
    }

    #[wasm_bindgen(getter, js_name = maxImag)]
    pub fn max_imag(&self) -> f64 {
        self.max_imag
    }
}

pub fn heatmap_inner(kind: &str, factors: &str, shape: &str, seed: u32) -> Result<Heatmap, String> {
    let kind = match kind {
        "weyl" => PhaseSpaceKind::Weyl,
        "wigner" => PhaseSpaceKind::Wigner,
        other => return Err(format!("unknown function '{other}'")),
    };
    let plan = Plan::prime_factor(&parse_factors(factors)?).map_err(|e| e.to_string())?;
    if plan.dim() > MAX_HEATMAP_DIM {
        return Err(format!("D = {} is above the demo limit of {MAX_HEATMAP_DIM}", plan.dim()));
    }
    let s = make_state(shape, plan.dim(), seed)?;
    let fast = fast_with_stats(kind, &s, &plan, &mut OpStats::default()).map_err(|e| e.to_string())?;
    let direct = direct_with_stats(kind, &s, &mut OpStats::default()).map_err(|e| e.to_string())?;
    let values = fast
        .grid()
        .iter()
        .map(|z| if kind == PhaseSpaceKind::Wigner { z.re } else { z.norm() })
        .collect();
    Ok(Heatmap {
        dim: plan.dim(),
        values,
        max_error: fast.max_abs_diff(&direct).map_err(|e| e.to_string())?,
        max_imag: fast.max_imag(),
    })
}

#[wasm_bindgen]
pub fn heatmap(kind: &str, factors: &str, shape: &str, seed: u32) -> Result<Heatmap, JsError> {
    heatmap_inner(kind, factors, shape, seed).map_err(|e| JsError::new(&e))
}

/// Plain-text table of every `J` with its balanced digits (`mode` = `radix`,
/// `params` = `d,n`) or its residues and hat residues (`mode` = `crt`).
pub fn index_map_inner(mode: &str, params: &str) -> Result<String, String> {
    let nums = parse_factors(params)?;
    let mut out = String::new();
    match (mode, nums.as_slice()) {
        ("radix", &[d, n]) => {
            let n = u32::try_from(n).map_err(|_| "n out of range".to_string())?;
            let dim = qfft::number_theory::checked_power(d, n).map_err(|e| e.to_string())?;
            if dim > 729 {
                return Err("keep d^n at most 729".into());
            }
            out.push_str(&format!("{:>5}  digits (j_0 .. j_{})\n", "J", n - 1));
            for j in CenteredResidue::all(dim).map_err(|e| e.to_string())? {
                let digits = radix_encode(j, d, n).map_err(|e| e.to_string())?;
                out.push_str(&format!("{:>5}  {:?}\n", j.value(), digits.digits()));
            }
        }
        ("radix", _) => return Err("radix takes 'd,n'".into()),
        ("crt", factors) => {
            let basis = CrtBasis::new(factors).map_err(|e| e.to_string())?;
            if basis.dim() > 729 {
                return Err("keep the product at most 729".into());
            }
            out.push_str(&format!("a = {:?}  b = {:?}  c = {:?}\n", basis.a(), basis.b(), basis.c()));
            out.push_str(&format!("{:>5}  {:<20} {}\n", "J", "j (J mod d)", "ĵ (J·b mod d)"));
            for j in CenteredResidue::all(basis.dim()).map_err(|e| e.to_string())? {
                let plain: Vec<i64> = basis.encode(j).map_err(|e| e.to_string())?.iter().map(|r| r.value()).collect();
                let hat: Vec<i64> = basis.encode_hat(j).map_err(|e| e.to_string())?.iter().map(|r| r.value()).collect();
                out.push_str(&format!("{:>5}  {:<20} {:?}\n", j.value(), format!("{plain:?}"), hat));
            }
        }
        (other, _) => return Err(format!("unknown map '{other}'")),
    }
    Ok(out)
}

#[wasm_bindgen(js_name = indexMap)]
pub fn index_map(mode: &str, params: &str) -> Result<String, JsError> {
    index_map_inner(mode, params).map_err(|e| JsError::new(&e))
}
