use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::fft_in_place;
use crate::signal::SampledSignal;

/// STFT magnitude grid. Row `i` is the frame centred at `times[i]`, column
/// `k` the bin at `freqs[k]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TfdMatrix {
    pub times: Vec<f64>,
    pub freqs: Vec<f64>,
    pub magnitudes: Vec<Vec<f64>>,
    pub window_len: usize,
    pub hop: usize,
    /// `sum_n w_n^2` of the window used.
    pub window_energy: f64,
}

impl TfdMatrix {
    /// `sum |S|^2` over the whole matrix.
    pub fn energy(&self) -> f64 {
        self.magnitudes.iter().flatten().map(|v| v * v).sum()
    }

    /// Ratio of [`TfdMatrix::energy`] to `sum_n |x_n|^2` for a signal that
    /// is slowly varying over one hop and zero near the edges:
    /// `window_len * sum w^2 / hop`.
    pub fn energy_factor(&self) -> f64 {
        self.window_len as f64 * self.window_energy / self.hop as f64
    }

    /// Frequency of the largest magnitude in each frame.
    pub fn ridge(&self) -> Vec<f64> {
        self.magnitudes
            .iter()
            .map(|row| {
                let k = row
                    .iter()
                    .enumerate()
                    .fold(0, |best, (k, &v)| if v > row[best] { k } else { best });
                self.freqs[k]
            })
            .collect()
    }
}

/// Gaussian window with standard deviation `len / 6` samples.
fn gaussian_window(len: usize) -> Vec<f64> {
    let mid = (len as f64 - 1.0) / 2.0;
    let sigma = len as f64 / 6.0;
    (0..len).map(|n| (-0.5 * ((n as f64 - mid) / sigma).powi(2)).exp()).collect()
}

/// Magnitude STFT with a Gaussian window.
///
/// Only frames that lie entirely inside the signal are kept. Bins are
/// centred, `f_k = (k - L/2) / (L dt)`, and magnitudes are raw DFT sums, so
/// the matrix energy is about [`TfdMatrix::energy_factor`] times the sample
/// energy of `x`.
pub fn stft_tfd(x: &SampledSignal, window_len: usize, hop: usize) -> Result<TfdMatrix> {
    let n = x.len();
    if window_len == 0 || window_len > n {
        return Err(Error::InvalidArgument(format!("window length {window_len} must be in 1..={n}")));
    }
    if hop == 0 {
        return Err(Error::InvalidArgument("hop must be positive".into()));
    }
    let g = x.grid();
    let w = gaussian_window(window_len);
    let half = window_len / 2;
    let freqs = (0..window_len)
        .map(|k| (k as f64 - half as f64) / (window_len as f64 * g.dt()))
        .collect();
    let starts: Vec<usize> = (0..=n - window_len).step_by(hop).collect();
    let times = starts
        .iter()
        .map(|&s| g.t0() + (s as f64 + (window_len as f64 - 1.0) / 2.0) * g.dt())
        .collect();
    let s = x.samples();
    let magnitudes = crate::conv::map_range(starts.len(), |i| {
        let start = starts[i];
        let mut buf: Vec<Complex64> = (0..window_len).map(|k| s[start + k] * w[k]).collect();
        fft_in_place(&mut buf, false);
        (0..window_len).map(|k| buf[(k + window_len - half) % window_len].norm()).collect()
    });
    Ok(TfdMatrix {
        times,
        freqs,
        magnitudes,
        window_len,
        hop,
        window_energy: w.iter().map(|v| v * v).sum(),
    })
}
