//! `lct-joint` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad arguments,
//! 3 unreadable or malformed input, 4 numeric precondition violated.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::apps::demo::{
    demo_grid, if_chirp, separation_matrix, separation_pair, shear_chirp, IF_CHIRP, SEPARATION_CUTOFF,
};
use crate::apps::{
    if_estimate, lct_filter, recover, separate, shear_reduce, ssb_demodulate, ssb_modulate, ssb_recovery_error,
    stft_tfd, FilterSpec, LctCutoff, ShearSearch, Side, SsbKey,
};
use crate::error::Error;
use crate::fourier::{analytic_complex, fourier, hilbert};
use crate::io;
use crate::joint::{joint_transform, la, JointKind};
use crate::lct::{lct_with_form, LctForm};
use crate::signal::{max_abs_diff, relative_l2, Grid, LctParams, RealSignal, SampledSignal};
use crate::verify::{
    joint_suite, matrix_a0, matrix_aneq0, Harness, A0_NOTICE, DEFAULT_TOLERANCE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "LCT_JOINT_THREADS";

#[derive(Parser, Debug)]
#[command(name = "lct-joint", version, about = "Joint linear canonical transforms, verification and demos")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply one transform to a signal file.
    Transform(TransformArgs),
    /// Compare every joint transform with its cascade.
    Verify(VerifyArgs),
    /// Run an application demo and write CSVs for plotting.
    Demo(DemoArgs),
    /// Write the STFT magnitude of a signal file.
    Tfd(TfdArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Op {
    Fourier,
    Hilbert,
    Analytic,
    Lct,
    Ilct,
    La,
    Lh,
    AlInv,
    HlInv,
    LhlInv,
    LclInv,
    Lca,
}

#[derive(Args, Debug)]
struct TransformArgs {
    op: Op,
    #[arg(short, long)]
    input: PathBuf,
    /// Matrix JSON file or `rot:<angle>`.
    #[arg(short, long)]
    matrix: Option<String>,
    #[arg(short, long)]
    output: PathBuf,
    /// LCT discretisation: 1, 2, 3, 4 or auto.
    #[arg(long, default_value = "auto", value_parser = parse_form)]
    form: LctForm,
}

fn parse_form(s: &str) -> std::result::Result<LctForm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Builtin {
    Aneq0,
    A0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignalChoice {
    Sincgauss,
    Twogauss,
    File,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "matrix")]
    builtin: Option<Builtin>,
    /// Matrix JSON file or `rot:<angle>`.
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long, value_enum, default_value = "twogauss")]
    signal: SignalChoice,
    /// Signal file for `--signal file`.
    #[arg(long, required_if_eq("signal", "file"))]
    input: Option<PathBuf>,
    /// Samples on [-8, 8) for the builtin signals.
    #[arg(long, default_value_t = 1024)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Also write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DemoName {
    Separate,
    Filter,
    Sample,
    If,
    Ssb,
}

#[derive(Args, Debug)]
struct DemoArgs {
    name: DemoName,
    /// Matrix JSON file or `rot:<angle>`.
    #[arg(long = "m", visible_alias = "key")]
    matrix: Option<String>,
    /// SSB carrier.
    #[arg(long, default_value_t = 3.0)]
    fc: f64,
    /// SSB message: twogauss, sincgauss or a signal file.
    #[arg(long, default_value = "twogauss")]
    message: String,
    /// LCT-domain cutoff for separate and filter.
    #[arg(long)]
    cutoff: Option<f64>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Seed for `filter --noise`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Standard deviation of white noise added in the filter demo.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Samples of the demo grid (step 1/64, centred).
    #[arg(long, default_value_t = 2048)]
    n: usize,
    #[arg(long, default_value_t = 128)]
    window: usize,
    #[arg(long, default_value_t = 16)]
    hop: usize,
}

#[derive(Args, Debug)]
struct TfdArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, default_value_t = 128)]
    window: usize,
    #[arg(long, default_value_t = 16)]
    hop: usize,
    #[arg(short, long)]
    output: PathBuf,
}

/// Command failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::Io(_) => EXIT_PARSE,
            Error::InvalidArgument(_) => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    configure_threads();
    let result = match cli.command {
        Command::Transform(a) => cmd_transform(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Demo(a) => cmd_demo(a),
        Command::Tfd(a) => cmd_tfd(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            // Fails only if the pool already exists, e.g. when `run` is called twice.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn require_matrix(m: &Option<String>) -> std::result::Result<LctParams, Failure> {
    let spec = m.as_deref().ok_or_else(|| usage("this operation needs --matrix"))?;
    Ok(io::read_matrix(spec)?)
}

fn real_input(x: &SampledSignal) -> std::result::Result<RealSignal, Failure> {
    if x.samples().iter().any(|v| v.im != 0.0) {
        return Err(usage("this operation takes a real signal (im column must be zero)"));
    }
    Ok(x.re())
}

fn cmd_transform(a: TransformArgs) -> CmdResult {
    let x = io::read_signal(&a.input)?;
    let out = match a.op {
        Op::Fourier => fourier(&x),
        Op::Hilbert => hilbert(&x)?,
        Op::Analytic => analytic_complex(&x)?,
        Op::Lct => lct_with_form(&x, &require_matrix(&a.matrix)?, a.form)?,
        Op::Ilct => lct_with_form(&x, &require_matrix(&a.matrix)?.inverse(), a.form)?,
        op => {
            let kind = match op {
                Op::La => JointKind::La,
                Op::Lh => JointKind::Lh,
                Op::AlInv => JointKind::AlInv,
                Op::HlInv => JointKind::HlInv,
                Op::LhlInv => JointKind::LhlInv,
                Op::LclInv => JointKind::LclInv,
                _ => JointKind::Lca,
            };
            let m = require_matrix(&a.matrix)?;
            if kind.takes_time_signal() {
                real_input(&x)?;
            }
            joint_transform(kind, &x, &m)?
        }
    };
    io::write_signal(&a.output, &out)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    if !(a.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    if a.n < 2 || a.n % 2 != 0 {
        return Err(usage("--n must be an even number of at least 2"));
    }
    let mut notes = Vec::new();
    let m = match (&a.matrix, a.builtin) {
        (Some(spec), _) => io::read_matrix(spec)?,
        (None, Some(Builtin::A0)) => {
            notes.push(A0_NOTICE.to_string());
            matrix_a0()
        }
        (None, _) => matrix_aneq0(),
    };
    let grid = Grid::new(-8.0, 16.0 / a.n as f64, a.n)?;
    let mut harness = Harness::with_builtin(&grid);
    let id = match a.signal {
        SignalChoice::Sincgauss => "sincgauss",
        SignalChoice::Twogauss => "twogauss",
        SignalChoice::File => {
            let path = a.input.as_ref().ok_or_else(|| usage("--signal file needs --input"))?;
            let x = io::read_signal(path)?;
            harness.insert("file", real_input(&x)?);
            "file"
        }
    };
    let mut report = harness.run(&joint_suite(m, id, a.tol));
    report.notes = notes;
    print!("{}", report.to_text());
    if let Some(path) = &a.json {
        io::write_atomic(path, &(report.to_json() + "\n"))?;
    }
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_tfd(a: TfdArgs) -> CmdResult {
    let x = io::read_signal(&a.input)?;
    let tfd = stft_tfd(&x, a.window, a.hop)?;
    io::write_tfd(&a.output, &tfd)?;
    Ok(EXIT_OK)
}

/// Output directory plus the TFD settings shared by every stage.
struct Stages<'a> {
    dir: &'a Path,
    window: usize,
    hop: usize,
}

impl Stages<'_> {
    fn real(&self, name: &str, x: &RealSignal) -> std::result::Result<(), Failure> {
        io::write_real_signal(&self.dir.join(format!("{name}.csv")), x)?;
        self.tfd(name, &x.to_complex())
    }

    fn complex(&self, name: &str, x: &SampledSignal) -> std::result::Result<(), Failure> {
        io::write_signal(&self.dir.join(format!("{name}.csv")), x)?;
        self.tfd(name, x)
    }

    fn tfd(&self, name: &str, x: &SampledSignal) -> std::result::Result<(), Failure> {
        let window = self.window.min(x.len());
        let tfd = stft_tfd(x, window, self.hop)?;
        io::write_tfd(&self.dir.join(format!("tfd_{name}.csv")), &tfd)?;
        Ok(())
    }
}

fn cmd_demo(a: DemoArgs) -> CmdResult {
    if a.n < 16 || a.n % 2 != 0 {
        return Err(usage("--n must be an even number of at least 16"));
    }
    std::fs::create_dir_all(&a.out_dir).map_err(Error::from)?;
    let stages = Stages { dir: &a.out_dir, window: a.window, hop: a.hop };
    let grid = demo_grid(a.n);
    let matrix = |default: LctParams| -> std::result::Result<LctParams, Failure> {
        match &a.matrix {
            Some(spec) => Ok(io::read_matrix(spec)?),
            None => Ok(default),
        }
    };
    match a.name {
        DemoName::Separate => {
            let m = matrix(separation_matrix())?;
            let (x1, x2) = separation_pair(&grid);
            let x = RealSignal::new(grid, x1.samples().iter().zip(x2.samples()).map(|(p, q)| p + q).collect())?;
            let cut = LctCutoff::new(a.cutoff.unwrap_or(SEPARATION_CUTOFF), Side::Below)?;
            let (below, above) = separate(&x, &m, &cut)?;
            let (r1, r2) = (recover(&below, &m)?, recover(&above, &m)?);
            let sum = r1.to_complex().add(&r2.to_complex())?;
            stages.real("input", &x)?;
            stages.complex("lct", &la(&x, &m)?)?;
            stages.real("part1", &r1)?;
            stages.real("part2", &r2)?;
            println!("sum check max_abs_diff = {:.3e}", max_abs_diff(&sum, &x.to_complex())?);
            if a.matrix.is_none() && a.cutoff.is_none() {
                println!("part1 relative L2 error = {:.3e}", relative_l2(&r1.to_complex(), &x1.to_complex())?);
                println!("part2 relative L2 error = {:.3e}", relative_l2(&r2.to_complex(), &x2.to_complex())?);
            }
        }
        DemoName::Filter => {
            let m = matrix(separation_matrix())?;
            let (clean, interference) = separation_pair(&grid);
            if !(a.noise >= 0.0 && a.noise.is_finite()) {
                return Err(usage("--noise must be a non-negative number"));
            }
            let normal = Normal::new(0.0, a.noise).map_err(|e| usage(e.to_string()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let y: Vec<f64> = clean
                .samples()
                .iter()
                .zip(interference.samples())
                .map(|(c, i)| c + i + if a.noise > 0.0 { normal.sample(&mut rng) } else { 0.0 })
                .collect();
            let y = RealSignal::new(grid, y)?;
            let cutoff = a.cutoff.unwrap_or(SEPARATION_CUTOFF);
            let h = FilterSpec::band_for(&grid, &m, f64::NEG_INFINITY, cutoff);
            let filtered = lct_filter(&y, &m, &h)?;
            stages.real("clean", &clean)?;
            stages.real("noisy", &y)?;
            stages.real("filtered", &filtered)?;
            let snr = |z: &RealSignal| {
                let err: f64 = z.samples().iter().zip(clean.samples()).map(|(p, q)| (p - q).powi(2)).sum();
                10.0 * (clean.energy() / clean.grid().dt() / err).log10()
            };
            println!("SNR before = {:.2} dB, after = {:.2} dB", snr(&y), snr(&filtered));
        }
        DemoName::Sample => {
            let x = shear_chirp(&grid);
            let r = shear_reduce(&x, &ShearSearch::default())?;
            stages.real("input", &x)?;
            stages.complex("sheared", &r.signal)?;
            io::write_matrix(&a.out_dir.join("shear_matrix.json"), &r.m)?;
            println!("alpha = {:.4}, beta = {:.4}", r.params.alpha, r.params.beta);
            println!(
                "B_aT_a = {:.3}, 2B_bT_b = {:.3}, 2B_cT_c = {:.3}",
                r.bt.real, r.bt.analytic, r.bt.sheared
            );
        }
        DemoName::If => {
            let m = matrix(LctParams::rotation(0.6))?;
            let x = if_chirp(&grid);
            let l = la(&x, &m)?;
            let pts = if_estimate(&l, &m)?;
            stages.real("input", &x)?;
            stages.complex("lct", &l)?;
            let mut csv = String::from("omega,nu,t,f,valid\n");
            for p in &pts {
                csv += &format!("{:.16e},{:.16e},{:.16e},{:.16e},{}\n", p.omega, p.nu, p.t, p.f, u8::from(p.valid));
            }
            io::write_atomic(&a.out_dir.join("if_points.csv"), &csv)?;
            let (f0, rate) = IF_CHIRP;
            let df = 1.0 / (grid.len() as f64 * grid.dt());
            let worst = pts
                .iter()
                .filter(|p| p.valid)
                .map(|p| (p.f - (f0 + rate * p.t)).abs() / (1.0 + rate * rate).sqrt())
                .fold(0.0, f64::max);
            println!(
                "{} valid points, max distance to the chirp law = {:.3e} ({:.2} bins)",
                pts.iter().filter(|p| p.valid).count(),
                worst,
                worst / df
            );
        }
        DemoName::Ssb => {
            let m = matrix(matrix_aneq0())?;
            let key = SsbKey::new(m, a.fc)?;
            let message = match a.message.as_str() {
                "twogauss" => crate::verify::test_signal_two_gauss(&grid),
                "sincgauss" => crate::verify::test_signal_sinc_gauss(&grid),
                path => real_input(&io::read_signal(Path::new(path))?)?,
            };
            let s = ssb_modulate(&message, &key)?;
            let rec = ssb_demodulate(&s, &key)?;
            stages.real("message", &message)?;
            stages.real("modulated", &s)?;
            stages.real("recovered", &rec)?;
            println!("correct key relative L2 error = {:.3e}", ssb_recovery_error(&message, &rec)?);
            let wrong = LctParams::new(m.a(), m.b() * 1.05, m.c(), (1.0 + m.b() * 1.05 * m.c()) / m.a());
            if let Ok(w) = wrong.and_then(|w| SsbKey::new(w, a.fc)) {
                let bad = ssb_demodulate(&s, &w).and_then(|r| ssb_recovery_error(&message, &r));
                if let Ok(e) = bad {
                    println!("b + 5% key relative L2 error = {e:.3e}");
                }
            }
        }
    }
    Ok(EXIT_OK)
}

