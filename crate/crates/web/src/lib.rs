//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string so the page needs no generated
//! TypeScript types.

use lct_joint::apps::{ssb_demodulate, ssb_modulate, ssb_recovery_error, stft_tfd, SsbKey};
use lct_joint::joint::la;
use lct_joint::lct::ilct;
use lct_joint::signal::{max_abs_diff, Grid, LctParams, RealSignal};
use lct_joint::special::ChirpKernels;
use lct_joint::verify::{default_grid, test_signal_sinc_gauss, test_signal_two_gauss};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Failure {
    error: String,
}

fn respond<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v),
        Err(error) => serde_json::to_string(&Failure { error }),
    }
    .expect("plain data serialises")
}

fn builtin(signal: &str, grid: &Grid) -> Result<RealSignal, String> {
    match signal {
        "twogauss" => Ok(test_signal_two_gauss(grid)),
        "sincgauss" => Ok(test_signal_sinc_gauss(grid)),
        other => Err(format!("unknown signal '{other}'")),
    }
}

fn matrix(a: f64, b: f64, c: f64) -> Result<LctParams, String> {
    LctParams::from_abc(a, b, c).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct JointView {
    d: f64,
    t: Vec<f64>,
    x: Vec<f64>,
    omega: Vec<f64>,
    re: Vec<f64>,
    im: Vec<f64>,
    abs: Vec<f64>,
    tfd_times: Vec<f64>,
    tfd_freqs: Vec<f64>,
    /// Row-major, one row per frame.
    tfd: Vec<f64>,
    reverse_error: f64,
}

fn joint_view(a: f64, b: f64, c: f64, signal: &str) -> Result<JointView, String> {
    let m = matrix(a, b, c)?;
    let g = default_grid();
    let x = builtin(signal, &g)?;
    let l = la(&x, &m).map_err(|e| e.to_string())?;
    let back = ilct(&l, &m).map_err(|e| e.to_string())?.re();
    let reverse_error = max_abs_diff(&back.to_complex(), &x.to_complex()).map_err(|e| e.to_string())?;
    let tfd = stft_tfd(&l, 128, 16).map_err(|e| e.to_string())?;
    Ok(JointView {
        d: m.d(),
        t: g.points(),
        x: x.samples().to_vec(),
        omega: l.grid().points(),
        re: l.samples().iter().map(|v| v.re).collect(),
        im: l.samples().iter().map(|v| v.im).collect(),
        abs: l.samples().iter().map(|v| v.norm()).collect(),
        tfd: tfd.magnitudes.concat(),
        tfd_times: tfd.times,
        tfd_freqs: tfd.freqs,
        reverse_error,
    })
}

/// Joint LCT analytic signal of a builtin signal, its spectrogram and the
/// reconstruction error of `Re{ilct(la(x))}`.
#[wasm_bindgen]
pub fn joint_la(a: f64, b: f64, c: f64, signal: &str) -> String {
    respond(joint_view(a, b, c, signal))
}

#[derive(Serialize)]
struct SsbView {
    t: Vec<f64>,
    message: Vec<f64>,
    omega: Vec<f64>,
    modulated: Vec<f64>,
    recovered: Vec<f64>,
    wrong_t: Vec<f64>,
    wrong_key: Vec<f64>,
    error: f64,
    wrong_error: f64,
}

fn ssb_view(a: f64, b: f64, c: f64, fc: f64, perturb_pct: f64) -> Result<SsbView, String> {
    let m = matrix(a, b, c)?;
    let wrong = matrix(a, b * (1.0 + perturb_pct / 100.0), c)?;
    let key = SsbKey::new(m, fc).map_err(|e| e.to_string())?;
    let bad_key = SsbKey::new(wrong, fc).map_err(|e| e.to_string())?;
    let g = default_grid();
    let x = test_signal_two_gauss(&g);
    let s = ssb_modulate(&x, &key).map_err(|e| e.to_string())?;
    let rec = ssb_demodulate(&s, &key).map_err(|e| e.to_string())?;
    let bad = ssb_demodulate(&s, &bad_key).map_err(|e| e.to_string())?;
    Ok(SsbView {
        t: g.points(),
        message: x.samples().to_vec(),
        omega: s.grid().points(),
        modulated: s.samples().to_vec(),
        error: ssb_recovery_error(&x, &rec).map_err(|e| e.to_string())?,
        wrong_error: ssb_recovery_error(&x, &bad).map_err(|e| e.to_string())?,
        recovered: rec.samples().to_vec(),
        wrong_t: bad.grid().points(),
        wrong_key: bad.samples().to_vec(),
    })
}

/// SSB round trip of the two-Gaussian message with the key `(a, b, c)`,
/// and the same demodulation with `b` perturbed by `perturb_pct` percent.
#[wasm_bindgen]
pub fn ssb_sensitivity(a: f64, b: f64, c: f64, fc: f64, perturb_pct: f64) -> String {
    respond(ssb_view(a, b, c, fc, perturb_pct))
}

#[derive(Serialize)]
struct KernelView {
    t: Vec<f64>,
    g1_re: Vec<f64>,
    g1_im: Vec<f64>,
    g2_re: Vec<f64>,
    g2_im: Vec<f64>,
}

fn kernel_view(a: f64, b: f64, t_max: f64, n: usize) -> Result<KernelView, String> {
    if !(t_max > 0.0) || n < 2 {
        return Err("need t_max > 0 and at least two points".into());
    }
    let k = ChirpKernels::new(a, b).map_err(|e| e.to_string())?;
    let t: Vec<f64> = (0..n).map(|i| -t_max + 2.0 * t_max * i as f64 / (n - 1) as f64).collect();
    let pairs: Vec<_> = t.iter().map(|&s| k.pair(s)).collect();
    Ok(KernelView {
        g1_re: pairs.iter().map(|p| p.0.re).collect(),
        g1_im: pairs.iter().map(|p| p.0.im).collect(),
        g2_re: pairs.iter().map(|p| p.1.re).collect(),
        g2_im: pairs.iter().map(|p| p.1.im).collect(),
        t,
    })
}

/// The chirp kernel `g1` and its Hilbert partner `g2` on `[-t_max, t_max]`.
#[wasm_bindgen]
pub fn g_kernels(a: f64, b: f64, t_max: f64, n: usize) -> String {
    respond(kernel_view(a, b, t_max, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn joint_view_round_trips() {
        let v = parse(&joint_la(0.8, 1.2, -0.4, "twogauss"));
        assert!(v["reverse_error"].as_f64().unwrap() < 1e-6);
        assert_eq!(v["omega"].as_array().unwrap().len(), 1024);
        let rows = v["tfd_times"].as_array().unwrap().len();
        let cols = v["tfd_freqs"].as_array().unwrap().len();
        assert_eq!(v["tfd"].as_array().unwrap().len(), rows * cols);
    }

    #[test]
    fn errors_are_reported_as_json() {
        assert!(parse(&joint_la(0.0, 1.2, -0.4, "twogauss"))["error"].is_string());
        assert!(parse(&joint_la(0.8, 1.2, -0.4, "nope"))["error"].is_string());
        assert!(parse(&g_kernels(1.0, 0.0, 4.0, 10))["error"].is_string());
    }

    #[test]
    fn ssb_view_shows_key_sensitivity() {
        let v = parse(&ssb_sensitivity(0.8, 1.2, -0.4, 3.0, 5.0));
        assert!(v["error"].as_f64().unwrap() < 1e-4);
        assert!(v["wrong_error"].as_f64().unwrap() > 0.3);
    }

    #[test]
    fn kernels_sum_to_one_at_origin() {
        let v = parse(&g_kernels(0.8, 1.2, 2.0, 5));
        let (g1, g2) = (v["g1_re"][2].as_f64().unwrap(), v["g2_re"][2].as_f64().unwrap());
        assert!((g1 + g2 - 1.0).abs() < 1e-15);
    }
}
