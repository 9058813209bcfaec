//! Linear canonical transform
//!
//! `L(w) = sqrt(1/jb) e^{j pi (d/b) w^2} int x(t) e^{j pi (a/b) t^2} e^{-j 2 pi w t / b} dt`
//!
//! with `L(w) = sqrt(d) e^{j pi c d w^2} x(d w)` when `b = 0`. Square roots
//! are principal: `sqrt(1/jb) = e^{-j pi sgn(b) / 4} / sqrt|b|`.
//!
//! For `b != 0` the natural output grid is `w_k = (k - N/2) dw` with
//! `dw = |b| / (N dt)`. The inverse maps that grid back onto a centred grid
//! with the original step, so `ilct(lct(x))` reproduces `x` exactly for a
//! centred input.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conv::{kernel_sum, map_range, sinc_interpolate, Points};
use crate::error::{Error, Result};
use crate::fourier::{dft_between, fourier};
use crate::signal::{max_abs_diff, Grid, LctParams, SampledSignal};
use crate::special::{cis_2pi, cis_pi};

/// Discretisation route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LctForm {
    /// Chirp, DFT, chirp.
    I,
    /// Chirp times the convolution `x * g1` evaluated at `w / a`.
    II,
    /// Convolution of the scaled, chirped input with `e^{j pi (d/b) t^2}`.
    III,
    /// Spectral route: `X(f) e^{-j pi (b/a) f^2}` then an inverse transform.
    IV,
    /// Form I, or the scaling branch when `b = 0`.
    Auto,
}

impl LctForm {
    pub fn name(&self) -> &'static str {
        match self {
            LctForm::I => "I",
            LctForm::II => "II",
            LctForm::III => "III",
            LctForm::IV => "IV",
            LctForm::Auto => "auto",
        }
    }
}

impl fmt::Display for LctForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LctForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "i" => Ok(LctForm::I),
            "2" | "ii" => Ok(LctForm::II),
            "3" | "iii" => Ok(LctForm::III),
            "4" | "iv" => Ok(LctForm::IV),
            "auto" => Ok(LctForm::Auto),
            _ => Err(Error::InvalidArgument(format!("unknown form '{s}'"))),
        }
    }
}

/// `sqrt(1/(j b))`, principal branch.
pub(crate) fn root_jb(b: f64) -> Complex64 {
    Complex64::from_polar(1.0 / b.abs().sqrt(), -PI / 4.0 * b.signum())
}

/// Output grid of [`lct`] for an input on `grid`.
pub fn lct_output_grid(grid: &Grid, m: &LctParams) -> Grid {
    if m.b_is_zero() {
        *grid
    } else {
        let dw = m.b().abs() / (grid.len() as f64 * grid.dt());
        Grid::centered(dw, grid.len()).expect("step derived from a valid grid")
    }
}

/// LCT on the natural output grid, using form I (or the `b = 0` branch).
pub fn lct(x: &SampledSignal, m: &LctParams) -> Result<SampledSignal> {
    lct_with_form(x, m, LctForm::Auto)
}

/// Inverse LCT, i.e. the LCT with `(d, -b, -c, a)`.
pub fn ilct(l: &SampledSignal, m: &LctParams) -> Result<SampledSignal> {
    lct(l, &m.inverse())
}

/// LCT on the natural output grid with a chosen discretisation.
pub fn lct_with_form(x: &SampledSignal, m: &LctParams, form: LctForm) -> Result<SampledSignal> {
    let out = lct_output_grid(x.grid(), m);
    lct_onto(x, m, form, &out)
}

/// LCT evaluated on an explicit output grid.
///
/// Form I requires the natural step `|b| / (N dt)` and the same length; the
/// other forms accept any grid.
pub fn lct_onto(x: &SampledSignal, m: &LctParams, form: LctForm, out: &Grid) -> Result<SampledSignal> {
    let form = match form {
        LctForm::Auto if m.b_is_zero() => return scaling_branch(x, m, out),
        LctForm::Auto => LctForm::I,
        f => f,
    };
    if m.b_is_zero() {
        return Err(Error::IncompatibleForm { form: form.name(), reason: "b = 0 needs the scaling branch" });
    }
    let samples = match form {
        LctForm::I => form_i(x, m, out)?,
        LctForm::II => form_ii(x, m, out)?,
        LctForm::III => form_iii(x, m, out)?,
        LctForm::IV => form_iv(x, m, out)?,
        LctForm::Auto => unreachable!(),
    };
    SampledSignal::new(*out, samples)
}

fn form_i(x: &SampledSignal, m: &LctParams, out: &Grid) -> Result<Vec<Complex64>> {
    let g = x.grid();
    let n = g.len();
    let (a, b, d) = (m.a(), m.b(), m.d());
    let natural = b.abs() / (n as f64 * g.dt());
    if out.len() != n || (out.dt() - natural).abs() > 1e-12 * natural {
        return Err(Error::GridMismatch(format!(
            "form I needs {n} output points spaced {natural}"
        )));
    }
    let chirped: Vec<Complex64> = x
        .samples()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let t = g.at(i);
            v * cis_pi(a / b * t * t)
        })
        .collect();
    let mut y = dft_between(&chirped, g.t0(), g.dt(), out.t0() / b, b.signum(), -1.0);
    let root = root_jb(b);
    for (k, v) in y.iter_mut().enumerate() {
        let w = out.at(k);
        *v *= root * cis_pi(d / b * w * w);
    }
    Ok(y)
}

fn require_a(m: &LctParams, form: &'static str) -> Result<()> {
    if m.a_is_zero() {
        Err(Error::IncompatibleForm { form, reason: "a = 0" })
    } else {
        Ok(())
    }
}

fn form_ii(x: &SampledSignal, m: &LctParams, out: &Grid) -> Result<Vec<Complex64>> {
    require_a(m, "II")?;
    let g = x.grid();
    let (a, b, c) = (m.a(), m.b(), m.c());
    let rate = a / b;
    let w: Vec<Complex64> = x.samples().iter().map(|v| v * g.dt()).collect();
    let taus = Points { p0: out.t0() / a, step: out.dt() / a, len: out.len() };
    let mut y = kernel_sum(Points::of(g), &w, taus, |s| cis_pi(rate * s * s));
    let root = root_jb(b);
    for (k, v) in y.iter_mut().enumerate() {
        let om = out.at(k);
        *v *= root * cis_pi(c / a * om * om);
    }
    Ok(y)
}

fn form_iii(x: &SampledSignal, m: &LctParams, out: &Grid) -> Result<Vec<Complex64>> {
    let (b, c, d) = (m.b(), m.c(), m.d());
    if d.abs() < crate::signal::ZERO_TOL {
        return Err(Error::IncompatibleForm { form: "III", reason: "d = 0" });
    }
    let g = x.grid();
    // Step in eta keeps the replicas of the output, spaced b / (d h), at
    // least four output half-widths apart.
    let wmax = out.t0().abs().max(out.at(out.len() - 1).abs()).max(out.dt());
    let q = (4.0 * d.abs() * wmax * out.dt() / b.abs()).ceil().max(1.0);
    let h = out.dt() / q;
    let lo = g.t0() / d;
    let hi = g.at(g.len() - 1) / d;
    let (e0, e1) = (lo.min(hi), lo.max(hi));
    let count = ((e1 - e0) / h).floor() as usize + 1;
    let etas: Vec<f64> = (0..count).map(|i| e0 + i as f64 * h).collect();
    let scaled: Vec<f64> = etas.iter().map(|e| d * e).collect();
    let xs = sinc_interpolate(g, x.samples(), &scaled);
    let w: Vec<Complex64> = xs
        .iter()
        .zip(&etas)
        .map(|(v, &e)| v * cis_pi(c * d * e * e) * h)
        .collect();
    let rate = d / b;
    let src = Points { p0: e0, step: h, len: count };
    let mut y = kernel_sum(src, &w, Points::of(out), |s| cis_pi(rate * s * s));
    let k = root_jb(b) * d.abs();
    y.iter_mut().for_each(|v| *v *= k);
    Ok(y)
}

/// Largest zero-padded length used by form IV.
const MAX_PAD: usize = 1 << 20;

fn form_iv(x: &SampledSignal, m: &LctParams, out: &Grid) -> Result<Vec<Complex64>> {
    require_a(m, "IV")?;
    let g = x.grid();
    let n = g.len();
    let (a, b, c) = (m.a(), m.b(), m.c());
    // Pad so that one period of the discretised kernel spans every
    // difference between an output point w/a and an input sample.
    let tau_span = out.span() / a.abs();
    let need = 2 * n + (tau_span / g.dt()).ceil() as usize;
    let p = need.next_power_of_two().min(MAX_PAD).max(n);
    let mut padded = x.samples().to_vec();
    padded.resize(p, Complex64::new(0.0, 0.0));
    let pg = Grid::new(g.t0(), g.dt(), p)?;
    let spec = fourier(&SampledSignal::from_parts(pg, padded));
    let fg = *spec.grid();
    let df = fg.dt();
    let weighted: Vec<Complex64> = spec
        .samples()
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let f = fg.at(k);
            v * cis_pi(-b / a * f * f) * df
        })
        .collect();
    let root = root_jb(b) * Complex64::new(0.0, b / a).sqrt();
    let y = map_range(out.len(), |k| {
        let om = out.at(k);
        let tau = om / a;
        exp_sum(&weighted, fg.t0(), df, tau) * root * cis_pi(c / a * om * om)
    });
    Ok(y)
}

/// `sum_k h_k e^{j 2 pi tau (f0 + k df)}` with a re-anchored phase recurrence.
fn exp_sum(h: &[Complex64], f0: f64, df: f64, tau: f64) -> Complex64 {
    const BLOCK: usize = 256;
    let step = cis_2pi(tau * df);
    let mut acc = Complex64::new(0.0, 0.0);
    for (bi, chunk) in h.chunks(BLOCK).enumerate() {
        let k0 = bi * BLOCK;
        let mut ph = cis_2pi(tau * (f0 + k0 as f64 * df));
        for &v in chunk {
            acc += v * ph;
            ph *= step;
        }
    }
    acc
}

fn scaling_branch(x: &SampledSignal, m: &LctParams, out: &Grid) -> Result<SampledSignal> {
    let (c, d) = (m.c(), m.d());
    if d <= 0.0 {
        return Err(Error::UnsupportedScaling(d));
    }
    let pts: Vec<f64> = out.points().iter().map(|w| d * w).collect();
    let xs = sinc_interpolate(x.grid(), x.samples(), &pts);
    let k = d.sqrt();
    let samples = xs
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let w = out.at(i);
            v * k * cis_pi(c * d * w * w)
        })
        .collect();
    SampledSignal::new(*out, samples)
}

/// `max |conj(L_m[z]) - L_{(a,-b,-c,d)}[conj z]|`; zero up to round-off.
pub fn lct_conjugate_identity_check(z: &SampledSignal, m: &LctParams) -> Result<f64> {
    let lhs = lct(z, m)?.conj();
    let rhs = lct(&z.conj(), &m.conjugate_partner())?;
    max_abs_diff(&lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(grid: Grid) -> SampledSignal {
        SampledSignal::from_fn(grid, |t| Complex64::new((-PI * t * t).exp(), 0.0)).unwrap()
    }

    #[test]
    fn fourier_matrix_matches_fourier() {
        let g = Grid::new(-8.0, 1.0 / 64.0, 1024).unwrap();
        let x = gauss(g);
        let l = lct(&x, &LctParams::fourier()).unwrap();
        let xf = fourier(&x);
        let k = root_jb(1.0);
        for (a, b) in l.samples().iter().zip(xf.samples()) {
            assert!((a - k * b).norm() < 1e-13);
        }
    }

    #[test]
    fn identity_branch_is_exact() {
        let g = Grid::centered(0.1, 64).unwrap();
        let x = gauss(g);
        let l = lct(&x, &LctParams::identity()).unwrap();
        assert_eq!(max_abs_diff(&l, &x).unwrap(), 0.0);
    }

    #[test]
    fn negative_scaling_is_rejected() {
        let g = Grid::centered(0.1, 64).unwrap();
        let m = LctParams::new(-1.0, 0.0, 0.0, -1.0).unwrap();
        assert!(matches!(lct(&gauss(g), &m), Err(Error::UnsupportedScaling(_))));
    }

    #[test]
    fn explicit_form_with_b_zero_is_rejected() {
        let g = Grid::centered(0.1, 64).unwrap();
        let m = LctParams::new(2.0, 0.0, 0.3, 0.5).unwrap();
        assert!(matches!(lct_with_form(&gauss(g), &m, LctForm::I), Err(Error::IncompatibleForm { .. })));
        let f = LctParams::fourier();
        assert!(matches!(lct_with_form(&gauss(g), &f, LctForm::II), Err(Error::IncompatibleForm { .. })));
    }

    #[test]
    fn form_names_parse() {
        assert_eq!("3".parse::<LctForm>().unwrap(), LctForm::III);
        assert_eq!("auto".parse::<LctForm>().unwrap(), LctForm::Auto);
        assert!("5".parse::<LctForm>().is_err());
    }
}
