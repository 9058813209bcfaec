//! Grid-aware DFTs, the discrete Hilbert transform and analytic signals.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::signal::{Grid, RealSignal, SampledSignal};
use crate::special::cis_2pi;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, dir: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(len, dir))
}

/// Unnormalised in-place FFT; `inverse` selects the `e^{+j}` kernel.
pub(crate) fn fft_in_place(buf: &mut [Complex64], inverse: bool) {
    let dir = if inverse { FftDirection::Inverse } else { FftDirection::Forward };
    plan(buf.len(), dir).process(buf);
}

/// Riemann-sum transform between two uniform grids whose steps satisfy
/// `|dx * dout| = 1/N`:
///
/// `out_m = dx * sum_k x_k exp(sigma j 2 pi (out0 + m dout)(x0 + k dx))`
///
/// with `sigma = -1` for a forward kernel and `+1` for an inverse one, and
/// `dout = step_sign / (N dx)`.
pub(crate) fn dft_between(
    x: &[Complex64],
    x0: f64,
    dx: f64,
    out0: f64,
    step_sign: f64,
    sigma: f64,
) -> Vec<Complex64> {
    let n = x.len();
    let dout = step_sign / (n as f64 * dx);
    let mut buf: Vec<Complex64> = x
        .iter()
        .enumerate()
        .map(|(k, &v)| v * cis_2pi(sigma * out0 * (k as f64 * dx)))
        .collect();
    fft_in_place(&mut buf, sigma * step_sign > 0.0);
    buf.iter_mut().enumerate().for_each(|(m, v)| {
        let om = out0 + m as f64 * dout;
        *v *= cis_2pi(sigma * om * x0) * dx;
    });
    buf
}

/// Frequency grid `f_k = (k - N/2) / (N dt)` matching a time grid.
pub fn frequency_grid(grid: &Grid) -> Grid {
    let df = 1.0 / (grid.len() as f64 * grid.dt());
    Grid::centered(df, grid.len()).expect("step derived from a valid grid")
}

/// `X(f_k) = dt sum_n x_n exp(-j 2 pi f_k t_n)` on [`frequency_grid`].
pub fn fourier(x: &SampledSignal) -> SampledSignal {
    let g = x.grid();
    let fg = frequency_grid(g);
    let out = dft_between(x.samples(), g.t0(), g.dt(), fg.t0(), 1.0, -1.0);
    SampledSignal::from_parts(fg, out)
}

/// `x(t_n) = df sum_k X_k exp(j 2 pi f_k t_n)` on the time grid starting at
/// `t0` with step `1 / (N df)`.
pub fn inverse_fourier(spectrum: &SampledSignal, t0: f64) -> SampledSignal {
    let g = spectrum.grid();
    let dt = 1.0 / (g.len() as f64 * g.dt());
    let tg = Grid::new(t0, dt, g.len()).expect("step derived from a valid grid");
    let out = dft_between(spectrum.samples(), g.t0(), g.dt(), t0, 1.0, 1.0);
    SampledSignal::from_parts(tg, out)
}

/// Multiplies FFT bins by `-j sgn(f)`; DC and Nyquist are zeroed.
fn hilbert_samples(x: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = x.len();
    if n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    let mut buf = x.to_vec();
    fft_in_place(&mut buf, false);
    let scale = 1.0 / n as f64;
    for (k, v) in buf.iter_mut().enumerate() {
        *v = if k == 0 || k == n / 2 {
            Complex64::new(0.0, 0.0)
        } else if k < n / 2 {
            Complex64::new(v.im, -v.re) * scale
        } else {
            Complex64::new(-v.im, v.re) * scale
        };
    }
    fft_in_place(&mut buf, true);
    Ok(buf)
}

/// Periodic discrete Hilbert transform. The grid is kept.
pub fn hilbert(x: &SampledSignal) -> Result<SampledSignal> {
    Ok(SampledSignal::from_parts(*x.grid(), hilbert_samples(x.samples())?))
}

/// Hilbert transform of a real signal; the result is real.
pub fn hilbert_real(x: &RealSignal) -> Result<RealSignal> {
    hilbert(&x.to_complex()).map(|h| h.re())
}

/// `x + j H{x}`. The real part is the input exactly.
pub fn analytic(x: &RealSignal) -> Result<SampledSignal> {
    let h = hilbert_real(x)?;
    let samples = x
        .samples()
        .iter()
        .zip(h.samples())
        .map(|(&r, &i)| Complex64::new(r, i))
        .collect();
    Ok(SampledSignal::from_parts(*x.grid(), samples))
}

/// `z + j H{z}` for complex input.
pub fn analytic_complex(z: &SampledSignal) -> Result<SampledSignal> {
    let h = hilbert(z)?;
    z.zip_with(&h, |a, b| a + Complex64::new(-b.im, b.re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> Grid {
        Grid::new(-8.0, 1.0 / 64.0, 1024).unwrap()
    }

    #[test]
    fn gaussian_is_self_dual() {
        let x = SampledSignal::from_fn(grid(), |t| Complex64::new((-PI * t * t).exp(), 0.0)).unwrap();
        let xf = fourier(&x);
        for (i, v) in xf.samples().iter().enumerate() {
            let f = xf.grid().at(i);
            assert!((v - Complex64::new((-PI * f * f).exp(), 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn impulse_has_flat_spectrum() {
        let g = grid();
        let mut s = vec![Complex64::new(0.0, 0.0); g.len()];
        s[512] = Complex64::new(1.0 / g.dt(), 0.0);
        let xf = fourier(&SampledSignal::new(g, s).unwrap());
        assert!(xf.samples().iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn fourier_inverts() {
        let g = Grid::new(-3.0, 0.05, 120).unwrap();
        let x = SampledSignal::from_fn(g, |t| Complex64::new((-t * t).exp(), t.sin() * 0.1)).unwrap();
        let back = inverse_fourier(&fourier(&x), g.t0());
        assert!(back.grid().approx_eq(&g));
        let err = crate::signal::max_abs_diff(&back, &x).unwrap();
        assert!(err < 1e-13, "{err}");
    }

    #[test]
    fn hilbert_of_cosine_is_sine() {
        let g = grid();
        let x = RealSignal::from_fn(g, |t| (2.0 * PI * 3.0 * t).cos()).unwrap();
        let h = hilbert_real(&x).unwrap();
        for (i, v) in h.samples().iter().enumerate() {
            assert!((v - (2.0 * PI * 3.0 * g.at(i)).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn odd_length_is_rejected() {
        let g = Grid::new(0.0, 1.0, 5).unwrap();
        let x = RealSignal::new(g, vec![1.0; 5]).unwrap();
        assert!(matches!(hilbert_real(&x), Err(Error::OddLength(5))));
    }

    #[test]
    fn analytic_keeps_real_part_and_kills_negative_bins() {
        let g = grid();
        let x = RealSignal::from_fn(g, |t| (-t * t).exp() * (2.0 * PI * 2.0 * t).cos()).unwrap();
        let xa = analytic(&x).unwrap();
        assert!(xa.samples().iter().zip(x.samples()).all(|(a, b)| a.re == *b));
        let spec = fourier(&xa);
        let peak = spec.max_abs();
        for (i, v) in spec.samples().iter().enumerate() {
            if spec.grid().at(i) < 0.0 {
                assert!(v.norm() <= 1e-10 * peak);
            }
        }
    }
}
