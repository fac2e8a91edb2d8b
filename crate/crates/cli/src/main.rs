//! `qfft`: transforms, phase-space tables, timing sweeps and self-checks.
//!
//! Exit status: 0 success, 1 failed verification, 2 bad usage, 3 file errors.

mod plot;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qfft::bench::{self, BenchRecord, WeylReport};
use qfft::io::{read_state, write_bench, write_state, write_table, PhaseSpaceWriter};
use qfft::phase_space::{self, MAX_TABLE_DIM};
use qfft::reference_dft::random_state;
use qfft::verify::{verify_all, DEFAULT_BUDGET};
use qfft::{Backend, Error, OpStats, PhaseSpaceKind, Plan, StateVector};

/// Overrides the default output directory of `bench` and anchors relative
/// `--out` paths.
const OUT_DIR_ENV: &str = "QFFT_OUT_DIR";

#[derive(Parser)]
#[command(name = "qfft", version, about = "Fast Fourier transforms and phase-space functions on Z(D), D odd")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier transform of a state read from CSV or drawn at random.
    Fft(FftArgs),
    /// Weyl function table W̃(A,B).
    Weyl(PhaseArgs),
    /// Wigner function table W(A,B).
    Wigner(PhaseArgs),
    /// Timing sweeps of direct against fast transforms.
    Bench(BenchArgs),
    /// Runs the self-check suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Radix,
    Pfa,
    Direct,
}

#[derive(Args)]
struct FftArgs {
    #[arg(long, value_enum, default_value = "pfa")]
    backend: BackendArg,
    /// Radix base, D = d^n (radix), or D itself (direct, with n = 1).
    #[arg(long)]
    d: Option<i64>,
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Pairwise coprime odd factors, D = their product.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    factors: Option<Vec<i64>>,
    /// Input state CSV (index,real,imag). A seeded random state is used if absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output CSV; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Apply the inverse transform.
    #[arg(long)]
    inverse: bool,
}

#[derive(Args)]
struct PhaseArgs {
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    factors: Option<Vec<i64>>,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Use the factorization 15,7 (D = 105) and check fast against direct.
    #[arg(long)]
    quick: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `direct` evaluates the defining sums; `radix` is rejected.
    #[arg(long, value_enum, default_value = "pfa")]
    backend: BackendArg,
    /// Wigner only: write `A,B,value` after checking imaginary parts.
    #[arg(long)]
    real: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Radix,
    Pfa,
    Weyl,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = bench::DEFAULT_REPS)]
    reps: usize,
    /// Defaults to $QFFT_OUT_DIR, then `results`.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Smaller sizes, for a run of a few seconds.
    #[arg(long)]
    quick: bool,
    /// Also write SVG line plots.
    #[arg(long)]
    plot: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest dimension to exercise.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Verification(_) => 1,
        e if e.is_io() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Fft(args) => run_fft(args),
        Command::Weyl(args) => run_phase(PhaseSpaceKind::Weyl, args),
        Command::Wigner(args) => run_phase(PhaseSpaceKind::Wigner, args),
        Command::Bench(args) => run_bench(args),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qfft: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn create(path: &Path) -> qfft::Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

/// Runs `f` on the `--out` file, or on stdout.
fn with_output(out: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> qfft::Result<()>) -> qfft::Result<()> {
    match out {
        Some(p) => {
            let mut w = create(&resolve_out(p))?;
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn load_state(input: Option<&Path>, dim: usize, seed: u64) -> qfft::Result<StateVector> {
    match input {
        Some(p) => {
            let file = File::open(p).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display())))?;
            read_state(file, Some(dim))
        }
        None => random_state(dim, seed),
    }
}

fn fft_plan(args: &FftArgs) -> qfft::Result<Plan> {
    match (args.backend, args.d, &args.factors) {
        (BackendArg::Radix, Some(d), None) => {
            if args.n < 2 {
                return Err(usage("the radix backend needs --n >= 2"));
            }
            Plan::radix(d, args.n)
        }
        (BackendArg::Pfa, None, Some(f)) => Plan::prime_factor(f),
        (BackendArg::Direct, Some(d), None) => Plan::direct(qfft::number_theory::checked_power(d, args.n)? as usize),
        (BackendArg::Direct, None, Some(f)) => Plan::direct(f.iter().product::<i64>() as usize),
        (BackendArg::Radix, ..) => Err(usage("--backend radix takes --d and --n")),
        (BackendArg::Pfa, ..) => Err(usage("--backend pfa takes --factors")),
        (BackendArg::Direct, ..) => Err(usage("--backend direct takes either --d [--n] or --factors")),
    }
}

fn run_fft(args: FftArgs) -> qfft::Result<()> {
    let plan = fft_plan(&args)?;
    let s = load_state(args.input.as_deref(), plan.dim(), args.seed)?;
    let mut stats = OpStats::default();
    let out = if args.inverse {
        plan.inverse_with_stats(&s, &mut stats)?
    } else {
        plan.forward_with_stats(&s, &mut stats)?
    };
    eprintln!("backend={} D={} complex_mults={}", plan.backend(), plan.dim(), stats.complex_mults);
    with_output(args.out.as_deref(), |w| write_state(w, &out))
}

fn run_phase(kind: PhaseSpaceKind, args: PhaseArgs) -> qfft::Result<()> {
    let factors = match (&args.factors, args.quick) {
        (Some(f), _) => f.clone(),
        (None, true) => vec![15, 7],
        (None, false) => return Err(usage("--factors is required unless --quick is given")),
    };
    if args.real && kind != PhaseSpaceKind::Wigner {
        return Err(usage("--real applies to wigner only"));
    }
    let plan = match args.backend {
        BackendArg::Radix => {
            return Err(Error::UnsupportedBackend(
                "the radix digit map does not turn K+B into componentwise sums; use --backend pfa".into(),
            ))
        }
        BackendArg::Pfa => Plan::prime_factor(&factors)?,
        BackendArg::Direct => Plan::direct(factors.iter().product::<i64>() as usize)?,
    };
    let dim = plan.dim();
    let s = load_state(args.input.as_deref(), dim, args.seed)?;

    if args.quick {
        let pfa = Plan::prime_factor(&factors)?;
        let direct = phase_space::direct_with_stats(kind, &s, &mut OpStats::default())?;
        let fast = phase_space::fast_with_stats(kind, &s, &pfa, &mut OpStats::default())?;
        let err = fast.max_abs_diff(&direct)?;
        let tol = 1e-9 * (dim as f64).sqrt();
        eprintln!("{} D={dim}: fast vs direct max error {err:.3e} (tolerance {tol:.3e})", kind.label());
        if err.is_nan() || err > tol {
            return Err(Error::Verification(format!("fast {} table deviates by {err:e}", kind.label())));
        }
    }

    match plan {
        Plan::PrimeFactor(_) if dim > MAX_TABLE_DIM => with_output(args.out.as_deref(), |w| {
            let mut writer = PhaseSpaceWriter::new(w, args.real);
            phase_space::stream_fast_rows(kind, &s, &plan, |b, row| writer.write_row(b, row))?;
            writer.finish()
        }),
        Plan::PrimeFactor(_) => {
            let mut stats = OpStats::default();
            let table = phase_space::fast_with_stats(kind, &s, &plan, &mut stats)?;
            eprintln!("{} fast D={dim} complex_mults={}", kind.label(), stats.complex_mults);
            with_output(args.out.as_deref(), |w| write_table(w, &table, args.real))
        }
        _ => {
            let mut stats = OpStats::default();
            let table = phase_space::direct_with_stats(kind, &s, &mut stats)?;
            eprintln!("{} direct D={dim} complex_mults={}", kind.label(), stats.complex_mults);
            with_output(args.out.as_deref(), |w| write_table(w, &table, args.real))
        }
    }
}

fn out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("results"))
}

fn summarize_sweep(records: &[BenchRecord], fast: Backend) {
    for pair in records.chunks(2) {
        if let [d, f] = pair {
            println!(
                "D={:>6}  T={:.3e}s  T_f={:.3e}s  speedup={:>7.1}  mults {} / {}",
                d.dim,
                d.time_seconds,
                f.time_seconds,
                d.time_seconds / f.time_seconds,
                d.mult_count,
                f.mult_count
            );
        }
    }
    let time_slope = bench::sweep_slope(records, Backend::Direct, false);
    let count_slope = bench::sweep_slope(records, Backend::Direct, true);
    println!(
        "log-log slope of direct time {:.3}, of direct count {:.3}",
        time_slope.unwrap_or(f64::NAN),
        count_slope.unwrap_or(f64::NAN)
    );
    if let Some(slope) = time_slope.filter(|s| !(1.7..=2.3).contains(s)) {
        eprintln!("warning: direct-time slope {slope:.3} outside [1.7, 2.3]");
    }
    let slower: Vec<_> = records
        .chunks(2)
        .filter(|p| p.len() == 2 && p[1].time_seconds >= p[0].time_seconds)
        .map(|p| p[0].dim)
        .collect();
    if !slower.is_empty() {
        eprintln!("warning: {fast} was not faster than direct at D = {slower:?}");
    }
}

fn weyl_records(report: &WeylReport) -> Vec<BenchRecord> {
    let d = report.dim as f64;
    let mut out = vec![BenchRecord {
        dim: report.dim,
        backend: "weyl-direct".into(),
        time_seconds: report.direct_seconds,
        mult_count: report.direct_mults,
        ratio_t_over_d2: report.direct_seconds / (d * d),
        ratio_tf_over_dlogd: report.direct_seconds / (d * d.ln()),
    }];
    for t in &report.timings {
        let label = t.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("x");
        out.push(BenchRecord {
            dim: report.dim,
            backend: format!("weyl-pfa-{label}"),
            time_seconds: t.fast_seconds,
            mult_count: t.fast_mults,
            ratio_t_over_d2: t.fast_seconds / (d * d),
            ratio_tf_over_dlogd: t.fast_seconds / (d * d.ln()),
        });
    }
    out
}

fn run_bench(args: BenchArgs) -> qfft::Result<()> {
    let dir = out_dir(args.out_dir);
    fs::create_dir_all(&dir)?;
    let (name, records) = match args.suite {
        Suite::Radix => {
            let ds = if args.quick { (11..=31).step_by(2).collect() } else { bench::default_radix_sweep() };
            let recs = bench::bench_radix_sweep(&ds, 2, args.seed, args.reps)?;
            summarize_sweep(&recs, Backend::Radix);
            ("radix", recs)
        }
        Suite::Pfa => {
            let (d1, d2s) = if args.quick { (13, (15..=41).step_by(2).collect()) } else { bench::default_pfa_sweep() };
            let d2s: Vec<i64> = d2s.into_iter().filter(|&d2| qfft::number_theory::gcd(d1, d2) == 1).collect();
            let recs = bench::bench_pfa_sweep(d1, &d2s, args.seed, args.reps)?;
            summarize_sweep(&recs, Backend::PrimeFactor);
            ("pfa", recs)
        }
        Suite::Weyl => {
            let f = if args.quick { bench::quick_weyl_factorizations() } else { bench::default_weyl_factorizations() };
            let report = bench::bench_weyl(&f, args.seed, args.reps)?;
            println!("D={} direct T={:.3e}s (tolerance {:.1e})", report.dim, report.direct_seconds, report.tolerance);
            for t in &report.timings {
                println!(
                    "  factors {:?}: T_f={:.3e}s  T/T_f={:.1}  max error {:.2e}",
                    t.factors, t.fast_seconds, t.speedup, t.max_error
                );
            }
            ("weyl", weyl_records(&report))
        }
    };
    let csv_path = dir.join(format!("bench_{name}.csv"));
    let mut w = create(&csv_path)?;
    write_bench(&mut w, &records)?;
    w.flush()?;
    println!("wrote {}", csv_path.display());
    if args.plot && name != "weyl" {
        for path in plot::sweep_plots(&dir, name, &records)? {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> qfft::Result<()> {
    let report = verify_all(args.budget)?;
    println!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Verification(format!("{} checks failed", report.failures().count())))
    }
}
