//! CSV formats shared with the command line:
//!
//! * state vectors: `index,real,imag`, one row per centered `J` in ascending order;
//! * phase-space tables: `A,B,real,imag`, rows grouped by `B`, `A` varying fastest;
//!   the real-only Wigner variant is `A,B,value`;
//! * benchmark records: `D,backend,time_seconds,mult_count,ratio_t_over_d2,ratio_tf_over_dlogd`.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bench::BenchRecord;
use crate::error::{Error, Result};
use crate::phase_space::{PhaseSpaceKind, PhaseSpaceTable};
use crate::reference_dft::StateVector;

/// Imaginary parts above this make a Wigner table unfit for real-only export.
pub const WIGNER_IMAG_BOUND: f64 = 1e-9;

#[derive(Debug, Serialize, Deserialize)]
struct StateRow {
    index: i64,
    real: f64,
    imag: f64,
}

#[derive(Debug, Serialize)]
struct TableRow {
    #[serde(rename = "A")]
    a: i64,
    #[serde(rename = "B")]
    b: i64,
    real: f64,
    imag: f64,
}

#[derive(Debug, Serialize)]
struct RealTableRow {
    #[serde(rename = "A")]
    a: i64,
    #[serde(rename = "B")]
    b: i64,
    value: f64,
}

pub fn write_state<W: Write>(writer: W, s: &StateVector) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let half = s.half();
    for (t, amp) in s.amplitudes().iter().enumerate() {
        w.serialize(StateRow { index: t as i64 - half, real: amp.re, imag: amp.im })?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a state, checking the index column and, when given, the dimension.
pub fn read_state<R: Read>(reader: R, expected_dim: Option<usize>) -> Result<StateVector> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["index", "real", "imag"] {
        return Err(Error::Format(format!("expected header index,real,imag, found {}", headers.as_slice())));
    }
    let rows = r.deserialize::<StateRow>().collect::<std::result::Result<Vec<_>, _>>()?;
    let dim = rows.len();
    if dim == 0 || dim % 2 == 0 {
        return Err(Error::Format(format!("a state needs an odd number of rows, found {dim}")));
    }
    if let Some(expected) = expected_dim {
        if expected != dim {
            return Err(Error::mismatch(expected, dim));
        }
    }
    let half = (dim as i64 - 1) / 2;
    let mut amps = Vec::with_capacity(dim);
    for (t, row) in rows.into_iter().enumerate() {
        if row.index != t as i64 - half {
            return Err(Error::Format(format!(
                "row {} has index {}, expected {}",
                t + 1,
                row.index,
                t as i64 - half
            )));
        }
        if !row.real.is_finite() || !row.imag.is_finite() {
            return Err(Error::Format(format!("non-finite amplitude at index {}", row.index)));
        }
        amps.push(Complex64::new(row.real, row.imag));
    }
    StateVector::new(amps)
}

/// Incremental writer for phase-space rows, usable with streamed grids.
pub struct PhaseSpaceWriter<W: Write> {
    inner: csv::Writer<W>,
    real_only: bool,
}

impl<W: Write> PhaseSpaceWriter<W> {
    pub fn new(writer: W, real_only: bool) -> Self {
        PhaseSpaceWriter { inner: csv::Writer::from_writer(writer), real_only }
    }

    /// Writes all `A` for one `B`. In real-only mode every imaginary part must
    /// be within [`WIGNER_IMAG_BOUND`].
    pub fn write_row(&mut self, b: i64, row: &[Complex64]) -> Result<()> {
        let half = (row.len() as i64 - 1) / 2;
        for (ta, z) in row.iter().enumerate() {
            let a = ta as i64 - half;
            if self.real_only {
                if z.im.abs() > WIGNER_IMAG_BOUND {
                    return Err(Error::Format(format!(
                        "imaginary part {:e} at (A={a}, B={b}) exceeds {WIGNER_IMAG_BOUND:e}",
                        z.im
                    )));
                }
                self.inner.serialize(RealTableRow { a, b, value: z.re })?;
            } else {
                self.inner.serialize(TableRow { a, b, real: z.re, imag: z.im })?;
            }
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

pub fn write_table<W: Write>(writer: W, table: &PhaseSpaceTable, real_only: bool) -> Result<()> {
    if real_only && table.kind() != PhaseSpaceKind::Wigner {
        return Err(Error::InvalidArgument("only Wigner tables have a real-only export".into()));
    }
    let mut w = PhaseSpaceWriter::new(writer, real_only);
    let half = (table.dim() as i64 - 1) / 2;
    for b in -half..=half {
        w.write_row(b, table.row(b))?;
    }
    w.finish()
}

pub fn write_bench<W: Write>(writer: W, records: &[BenchRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
