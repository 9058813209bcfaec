//! Quadrature primitives: kernel sums between uniform grids, band-limited
//! interpolation and the discrete principal-value Hilbert kernel.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::fourier::fft_in_place;
use crate::signal::Grid;

/// Maps `f` over `0..n`, in parallel when the `parallel` feature is on.
pub(crate) fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Uniform point set `p0 + k step`, `k = 0..len`. The step may be negative.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Points {
    pub p0: f64,
    pub step: f64,
    pub len: usize,
}

impl Points {
    pub fn of(grid: &Grid) -> Self {
        Points { p0: grid.t0(), step: grid.dt(), len: grid.len() }
    }

    #[inline]
    pub fn at(&self, k: usize) -> f64 {
        self.p0 + k as f64 * self.step
    }
}

/// Largest kernel table built for the lattice path.
const MAX_TABLE: usize = 1 << 23;

/// When both steps are integer multiples of the smaller one, every
/// difference `o_m - p_k` falls on a single lattice `s0 + j h`.
fn lattice(src: &Points, out: &Points) -> Option<(f64, i64, i64)> {
    let h = src.step.abs().min(out.step.abs());
    let rp = src.step / h;
    let ro = out.step / h;
    let (ip, io) = (rp.round(), ro.round());
    if (rp - ip).abs() > 1e-9 || (ro - io).abs() > 1e-9 {
        return None;
    }
    Some((h, ip as i64, io as i64))
}

/// `out_m = sum_k w_k kernel(o_m - p_k)`.
///
/// Kernel values are tabulated once on the difference lattice when the two
/// steps are commensurate; otherwise the kernel is evaluated per pair.
pub(crate) fn kernel_sum<K>(src: Points, weights: &[Complex64], out: Points, kernel: K) -> Vec<Complex64>
where
    K: Fn(f64) -> Complex64 + Sync + Send,
{
    debug_assert_eq!(src.len, weights.len());
    if let Some((h, ip, io)) = lattice(&src, &out) {
        let (kmax, mmax) = (src.len as i64 - 1, out.len as i64 - 1);
        let corners = [0, mmax * io, -kmax * ip, mmax * io - kmax * ip];
        let jmin = *corners.iter().min().unwrap();
        let jmax = *corners.iter().max().unwrap();
        let size = (jmax - jmin + 1) as usize;
        if size <= MAX_TABLE {
            let s0 = out.p0 - src.p0;
            let table = map_range(size, |i| kernel(s0 + (jmin + i as i64) as f64 * h));
            return map_range(out.len, |m| {
                let base = m as i64 * io - jmin;
                weights
                    .iter()
                    .enumerate()
                    .fold(Complex64::new(0.0, 0.0), |acc, (k, &w)| {
                        acc + w * table[(base - k as i64 * ip) as usize]
                    })
            });
        }
    }
    kernel_sum_direct(src, weights, out, kernel)
}

/// Pairwise evaluation of [`kernel_sum`].
pub(crate) fn kernel_sum_direct<K>(src: Points, weights: &[Complex64], out: Points, kernel: K) -> Vec<Complex64>
where
    K: Fn(f64) -> Complex64 + Sync + Send,
{
    map_range(out.len, |m| {
        let o = out.at(m);
        weights
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, &w)| acc + w * kernel(o - src.at(k)))
    })
}

/// Band-limited (Whittaker) interpolation of samples on `grid` at `points`.
/// Samples outside the grid are taken as zero.
pub(crate) fn sinc_interpolate(grid: &Grid, samples: &[Complex64], points: &[f64]) -> Vec<Complex64> {
    map_range(points.len(), |i| {
        let u = (points[i] - grid.t0()) / grid.dt();
        let r = u.round();
        if (u - r).abs() < 1e-12 {
            return if r >= 0.0 && (r as usize) < samples.len() {
                samples[r as usize]
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        // sin(pi (u - n)) = (-1)^n sin(pi u) and sin(pi u) = (-1)^r sin(pi (u - r))
        let parity = if (r as i64) % 2 == 0 { 1.0 } else { -1.0 };
        let spu = parity * (PI * (u - r)).sin();
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, &v) in samples.iter().enumerate() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            acc += v * (sign / (u - n as f64));
        }
        acc * (spu / PI)
    })
}

/// Principal-value Hilbert sum on a uniform grid for band-limited data:
/// `out_m = sum_{m-k odd} h_k * 2 / (pi (m - k))`.
///
/// This is the sampled continuous Hilbert transform of the band-limited
/// interpolant; the singular sample and all even offsets carry zero weight.
#[cfg(test)]
pub(crate) fn pv_hilbert_direct(h: &[Complex64]) -> Vec<Complex64> {
    let n = h.len();
    map_range(n, |m| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &v) in h.iter().enumerate() {
            let j = m as i64 - k as i64;
            if j % 2 != 0 {
                acc += v * (2.0 / (PI * j as f64));
            }
        }
        acc
    })
}

/// FFT evaluation of [`pv_hilbert_direct`] with `2N` zero padding.
pub(crate) fn pv_hilbert_fft(h: &[Complex64]) -> Vec<Complex64> {
    let n = h.len();
    let len = 2 * n;
    let mut kern = vec![Complex64::new(0.0, 0.0); len];
    for j in 1..n as i64 {
        if j % 2 != 0 {
            let v = 2.0 / (PI * j as f64);
            kern[j as usize] = Complex64::new(v, 0.0);
            kern[len - j as usize] = Complex64::new(-v, 0.0);
        }
    }
    let mut sig = vec![Complex64::new(0.0, 0.0); len];
    sig[..n].copy_from_slice(h);
    fft_in_place(&mut kern, false);
    fft_in_place(&mut sig, false);
    for (s, k) in sig.iter_mut().zip(&kern) {
        *s *= k / len as f64;
    }
    fft_in_place(&mut sig, true);
    sig.truncate(n);
    sig
}
