//! Joint-versus-cascade verification suite.
//!
//! Each case builds its input from a named real test signal with the base
//! transforms, evaluates the cascade and the joint transform independently
//! and records the largest pointwise difference.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conv::map_range;
use crate::error::{Error, Result};
use crate::fourier::{analytic, hilbert_real};
use crate::joint::{cascade, joint_transform, JointKind};
use crate::lct::{lct, lct_with_form, LctForm};
use crate::signal::{max_abs_diff, Grid, LctParams, RealSignal, SampledSignal};

/// Absolute tolerance for joint-versus-cascade agreement.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Looser bound for `lhl-inv`, whose principal-value kernel decays as `1/w`.
pub const LHL_TOLERANCE: f64 = 1e-5;

/// `[-8, 8)` with 1024 samples.
pub fn default_grid() -> Grid {
    Grid::new(-8.0, 1.0 / 64.0, 1024).expect("constant grid")
}

/// `(0.8, 1.2, -0.4, 0.65)`.
pub fn matrix_aneq0() -> LctParams {
    LctParams::new(0.8, 1.2, -0.4, 0.65).expect("unit determinant")
}

/// `(0, 1.2, -1/1.2, 0.9)`.
pub fn matrix_a0() -> LctParams {
    LctParams::new(0.0, 1.2, -1.0 / 1.2, 0.9).expect("unit determinant")
}

/// Header line attached to reports that use [`matrix_a0`].
pub const A0_NOTICE: &str =
    "note: a = 0 matrix uses c = -1/b = -0.8333... so that ad - bc = 1 (c = +0.833 gives determinant -1)";

fn sinc(u: f64) -> f64 {
    if u == 0.0 {
        1.0
    } else {
        (PI * u).sin() / (PI * u)
    }
}

/// `2.2 sinc(5.5 (t + 1.5)) + e^{-2 (t-2)^2} cos(2 pi t)`.
pub fn test_signal_sinc_gauss(grid: &Grid) -> RealSignal {
    RealSignal::from_fn(*grid, |t| {
        2.2 * sinc(5.5 * (t + 1.5)) + (-2.0 * (t - 2.0).powi(2)).exp() * (2.0 * PI * t).cos()
    })
    .expect("finite samples")
}

/// Two modulated Gaussians centred at `t = -2` and `t = 1.5`.
pub fn test_signal_two_gauss(grid: &Grid) -> RealSignal {
    RealSignal::from_fn(*grid, |t| {
        let u = t + 2.0;
        let v = t - 1.5;
        (-PI * 13.0 / 45.0 * u * u).exp() * (2.0 * PI * 1.2 * u).cos()
            + (-PI * 16.0 / 25.0 * v * v).exp() * (2.0 * PI * 1.6 * v).cos()
    })
    .expect("finite samples")
}

/// What a case compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// A joint transform against its cascade.
    Joint(JointKind),
    /// Two discretisations of the plain LCT.
    Forms(LctForm, LctForm),
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Joint(k) => write!(f, "{k}"),
            Check::Forms(p, q) => write!(f, "forms:{p}/{q}"),
        }
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("forms:") {
            let (p, q) = rest
                .split_once('/')
                .ok_or_else(|| Error::InvalidArgument(format!("bad form pair '{s}'")))?;
            return Ok(Check::Forms(p.parse()?, q.parse()?));
        }
        s.parse().map(Check::Joint)
    }
}

#[derive(Clone, Debug)]
pub struct VerificationCase {
    pub name: String,
    pub kind: Check,
    pub m: LctParams,
    pub signal_id: String,
    pub tolerance: f64,
}

impl VerificationCase {
    pub fn new(name: &str, kind: Check, m: LctParams, signal_id: &str, tolerance: f64) -> Self {
        VerificationCase { name: name.into(), kind, m, signal_id: signal_id.into(), tolerance }
    }
}

/// The seven joint-versus-cascade cases for one matrix and signal.
pub fn joint_suite(m: LctParams, signal_id: &str, tolerance: f64) -> Vec<VerificationCase> {
    let names = ["a-la", "b-lh", "c-al-inv", "d-hl-inv", "e-lhl-inv", "f-lcl-inv", "g-lca"];
    let kinds = [
        JointKind::La,
        JointKind::Lh,
        JointKind::AlInv,
        JointKind::HlInv,
        JointKind::LhlInv,
        JointKind::LclInv,
        JointKind::Lca,
    ];
    names
        .iter()
        .zip(kinds)
        .map(|(n, k)| {
            let tol = if k == JointKind::LhlInv { tolerance.max(LHL_TOLERANCE) } else { tolerance };
            VerificationCase::new(n, Check::Joint(k), m, signal_id, tol)
        })
        .collect()
}

/// Outcome of one case.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: String,
    pub kind: String,
    pub matrix: LctParams,
    pub max_abs_diff: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub notes: Vec<String>,
    pub cases: Vec<CaseResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    /// Case with the largest difference relative to its tolerance.
    pub fn worst(&self) -> Option<&CaseResult> {
        self.cases.iter().max_by(|a, b| {
            let ra = a.max_abs_diff.map_or(f64::INFINITY, |d| d / a.tolerance);
            let rb = b.max_abs_diff.map_or(f64::INFINITY, |d| d / b.tolerance);
            ra.total_cmp(&rb)
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for n in &self.notes {
            s.push_str(n);
            s.push('\n');
        }
        for c in &self.cases {
            let diff = c.max_abs_diff.map_or("n/a".to_string(), |d| format!("{d:.3e}"));
            s.push_str(&format!(
                "{} {:<10} {:<12} max_abs_diff={} tol={:.0e} {:.3}s",
                if c.passed { "PASS" } else { "FAIL" },
                c.case,
                c.kind,
                diff,
                c.tolerance,
                c.seconds
            ));
            if let Some(e) = &c.error {
                s.push_str(&format!(" error: {e}"));
            }
            s.push('\n');
        }
        if let Some(w) = self.worst() {
            s.push_str(&format!("worst: {}\n", w.case));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serialisable")
    }
}

/// Registry of named signals plus the case runner.
#[derive(Clone, Debug)]
pub struct Harness {
    signals: BTreeMap<String, RealSignal>,
}

impl Harness {
    /// Registers `twogauss` and `sincgauss` on `grid`.
    pub fn with_builtin(grid: &Grid) -> Self {
        let mut signals = BTreeMap::new();
        signals.insert("twogauss".to_string(), test_signal_two_gauss(grid));
        signals.insert("sincgauss".to_string(), test_signal_sinc_gauss(grid));
        Harness { signals }
    }

    pub fn insert(&mut self, id: &str, signal: RealSignal) {
        self.signals.insert(id.to_string(), signal);
    }

    pub fn signal(&self, id: &str) -> Option<&RealSignal> {
        self.signals.get(id)
    }

    /// Runs every case; failures are recorded, never propagated.
    pub fn run(&self, cases: &[VerificationCase]) -> VerificationReport {
        let mut results = map_range(cases.len(), |i| self.run_case(&cases[i]));
        results.sort_by(|a, b| a.case.cmp(&b.case));
        VerificationReport { notes: Vec::new(), cases: results }
    }

    fn run_case(&self, case: &VerificationCase) -> CaseResult {
        let timer = Timer::start();
        let diff = self
            .signals
            .get(&case.signal_id)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown signal '{}'", case.signal_id)))
            .and_then(|x| compare(case, x));
        let seconds = timer.seconds();
        let (max_abs_diff, error) = match diff {
            Ok(d) => (Some(d), None),
            Err(e) => (None, Some(e.to_string())),
        };
        CaseResult {
            case: case.name.clone(),
            kind: case.kind.to_string(),
            matrix: case.m,
            passed: max_abs_diff.is_some_and(|d| d <= case.tolerance),
            max_abs_diff,
            tolerance: case.tolerance,
            seconds,
            error,
        }
    }
}

fn j() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// Joint and cascade outputs for one case, in that order.
pub fn case_outputs(kind: Check, m: &LctParams, x: &RealSignal) -> Result<(SampledSignal, SampledSignal)> {
    let xc = x.to_complex();
    match kind {
        Check::Forms(p, q) => Ok((lct_with_form(&xc, m, p)?, lct_with_form(&xc, m, q)?)),
        Check::Joint(k) => {
            let input = match k {
                JointKind::La | JointKind::HlInv => {
                    let xh = hilbert_real(x)?.to_complex();
                    if k == JointKind::La {
                        xh
                    } else {
                        lct(&xh, m)?
                    }
                }
                JointKind::Lh | JointKind::Lca => xc,
                JointKind::AlInv | JointKind::LhlInv => lct(&xc, m)?,
                JointKind::LclInv => lct(&analytic(x)?, m)?,
            };
            let joint = joint_transform(k, &input, m)?;
            let reference = cascade(k, &input, m)?;
            Ok(match k {
                JointKind::La => (joint.scaled(j()), reference.scaled(j())),
                JointKind::HlInv => (joint.scaled(-Complex64::new(1.0, 0.0)), reference.scaled(-Complex64::new(1.0, 0.0))),
                JointKind::LclInv => {
                    let half = |s: &SampledSignal| input.add(s).map(|v| v.scaled(Complex64::new(0.5, 0.0)));
                    (half(&joint)?, half(&reference)?)
                }
                _ => (joint, reference),
            })
        }
    }
}

fn compare(case: &VerificationCase, x: &RealSignal) -> Result<f64> {
    if !(case.tolerance > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let (joint, reference) = case_outputs(case.kind, &case.m, x)?;
    max_abs_diff(&joint, &reference)
}

/// Runs `cases` against the builtin signals on the default grid.
pub fn run_suite(cases: &[VerificationCase]) -> VerificationReport {
    Harness::with_builtin(&default_grid()).run(cases)
}

/// Wall-clock timer; reads zero where no clock is available.
struct Timer {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Timer {
    fn start() -> Self {
        Timer {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn seconds(&self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed().as_secs_f64()
        }
        #[cfg(target_arch = "wasm32")]
        {
            0.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_gauss_values() {
        let g = Grid::new(-1.5, 3.5, 2).unwrap();
        let x = test_signal_sinc_gauss(&g);
        let g_term = (-24.5f64).exp() * (-3.0 * PI).cos();
        assert!((x.samples()[0] - (2.2 + g_term)).abs() < 1e-15);
        assert!((x.samples()[1] - (1.0 + 2.2 * sinc(5.5 * 3.5))).abs() < 1e-15);
    }

    #[test]
    fn two_gauss_peak() {
        let x = test_signal_two_gauss(&default_grid());
        let peak = x.samples().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!((peak - 1.0).abs() < 0.05);
        let g = Grid::new(-2.0, 1.0, 1).unwrap();
        assert!((test_signal_two_gauss(&g).samples()[0] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn check_names_parse() {
        assert_eq!("lhl-inv".parse::<Check>().unwrap(), Check::Joint(JointKind::LhlInv));
        assert_eq!("forms:I/IV".parse::<Check>().unwrap(), Check::Forms(LctForm::I, LctForm::IV));
    }

    #[test]
    fn unknown_signal_is_recorded_not_raised() {
        let cases = [VerificationCase::new("x", Check::Joint(JointKind::Lh), matrix_aneq0(), "nope", 1e-6)];
        let r = run_suite(&cases);
        assert!(!r.cases[0].passed);
        assert!(r.cases[0].error.is_some());
    }
}
