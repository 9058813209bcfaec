use serde::{Deserialize, Serialize};

use crate::conv::map_range;
use crate::error::{Error, Result};
use crate::fourier::{analytic, fourier, inverse_fourier};
use crate::signal::{Grid, LctParams, RealSignal, SampledSignal};
use crate::special::cis_pi;

/// Horizontal shear `alpha` followed by vertical shear `beta`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShearParams {
    pub alpha: f64,
    pub beta: f64,
}

impl ShearParams {
    /// `[[1, 0], [beta, 1]] . [[1, alpha], [0, 1]]`.
    pub fn matrix(&self) -> LctParams {
        LctParams::new(1.0, self.alpha, self.beta, 1.0 + self.alpha * self.beta)
            .expect("shear matrices have unit determinant")
    }
}

/// Search window for [`shear_reduce`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShearSearch {
    pub alpha: (f64, f64),
    pub beta: (f64, f64),
    /// Coarse grid points per axis.
    pub steps: usize,
    /// Refinement factor around the coarse optimum.
    pub refine: usize,
}

impl Default for ShearSearch {
    fn default() -> Self {
        ShearSearch { alpha: (-4.0, 4.0), beta: (-4.0, 4.0), steps: 81, refine: 10 }
    }
}

/// Bandwidth-duration products, all measured as 99% energy extents.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BtProducts {
    /// `B T` of the real input, with its two-sided spectrum.
    pub real: f64,
    /// `2 B T` of the analytic signal.
    pub analytic: f64,
    /// `2 B T` of the sheared analytic signal.
    pub sheared: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShearResult {
    pub params: ShearParams,
    pub m: LctParams,
    /// Joint LCT analytic signal under `m`, on the zero-padded grid.
    pub signal: SampledSignal,
    pub bt: BtProducts,
}

const PAD: usize = 4;

/// Width of the interval holding the central 99% of `sum p`.
fn extent(grid: &Grid, p: &[f64]) -> f64 {
    let total: f64 = p.iter().sum();
    let quantile = |q: f64| {
        let target = q * total;
        let mut acc = 0.0;
        for (i, &v) in p.iter().enumerate() {
            if acc + v >= target && v > 0.0 {
                return grid.at(i) + ((target - acc) / v - 0.5) * grid.dt();
            }
            acc += v;
        }
        grid.at(p.len() - 1)
    };
    quantile(0.995) - quantile(0.005)
}

fn power(z: &SampledSignal) -> Vec<f64> {
    z.samples().iter().map(|v| v.norm_sqr()).collect()
}

fn duration(z: &SampledSignal) -> f64 {
    extent(z.grid(), &power(z))
}

fn bandwidth(z: &SampledSignal) -> f64 {
    let spec = fourier(z);
    extent(spec.grid(), &power(&spec))
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = if n <= 1 {
        vec![0.5 * (lo + hi)]
    } else {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    };
    if lo <= 0.0 && hi >= 0.0 && !v.contains(&0.0) {
        v.push(0.0);
    }
    v
}

/// Coarse-to-fine minimisation of `cost` over `[lo, hi]`. Ties go to the
/// value of smaller magnitude.
fn search(lo: f64, hi: f64, steps: usize, refine: usize, cost: impl Fn(f64) -> f64 + Sync + Send) -> f64 {
    let pick = |cands: Vec<f64>| {
        let costs = map_range(cands.len(), |i| cost(cands[i]));
        let mut best = 0;
        for i in 1..cands.len() {
            let better = costs[i] < costs[best]
                || (costs[i] == costs[best] && cands[i].abs() < cands[best].abs());
            if better {
                best = i;
            }
        }
        (cands[best], costs[best])
    };
    let (coarse, coarse_cost) = pick(axis(lo, hi, steps));
    if steps < 2 || refine < 2 {
        return coarse;
    }
    let h = (hi - lo) / (steps - 1) as f64;
    let (fine, fine_cost) = pick(axis((coarse - h).max(lo), (coarse + h).min(hi), 2 * refine + 1));
    if fine_cost < coarse_cost {
        fine
    } else {
        coarse
    }
}

/// Shears the time-frequency distribution of `x_A` to shrink its
/// bandwidth-duration product.
///
/// `alpha` minimises the duration of the horizontally sheared signal, then
/// `beta` minimises the bandwidth after the vertical shear. Everything is
/// computed spectrally on a grid zero-padded to four times the input
/// length. If the sequential search ends with a larger `2 B T` than the
/// unsheared signal, `alpha = beta = 0` is returned instead.
pub fn shear_reduce(x: &RealSignal, range: &ShearSearch) -> Result<ShearResult> {
    if x.energy() == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let g = x.grid();
    let n = x.len();
    let left = (PAD - 1) * n / 2;
    let pg = Grid::new(g.t0() - left as f64 * g.dt(), g.dt(), PAD * n)?;
    let mut padded = vec![0.0; PAD * n];
    padded[left..left + n].copy_from_slice(x.samples());
    let xr = RealSignal::new(pg, padded)?;

    let spec_a = fourier(&analytic(&xr)?);
    let horizontal = |alpha: f64| {
        let s = spec_a.map_indexed(|f, v| v * cis_pi(-alpha * f * f));
        inverse_fourier(&s, pg.t0())
    };
    let vertical = |z: &SampledSignal, beta: f64| z.map_indexed(|t, v| v * cis_pi(beta * t * t));

    let alpha = search(range.alpha.0, range.alpha.1, range.steps, range.refine, |a| duration(&horizontal(a)));
    let z = horizontal(alpha);
    let beta = search(range.beta.0, range.beta.1, range.steps, range.refine, |b| bandwidth(&vertical(&z, b)));

    let base = horizontal(0.0);
    let bt_real = bandwidth(&xr.to_complex()) * duration(&xr.to_complex());
    let bt_analytic = 2.0 * bandwidth(&base) * duration(&base);
    let mut params = ShearParams { alpha, beta };
    let mut signal = vertical(&z, beta);
    let mut bt_sheared = 2.0 * bandwidth(&signal) * duration(&signal);
    if bt_sheared > bt_analytic {
        params = ShearParams { alpha: 0.0, beta: 0.0 };
        signal = base;
        bt_sheared = bt_analytic;
    }
    Ok(ShearResult {
        params,
        m: params.matrix(),
        signal,
        bt: BtProducts { real: bt_real, analytic: bt_analytic, sheared: bt_sheared },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn extent_of_uniform_block() {
        let g = Grid::new(0.0, 1.0, 100).unwrap();
        let p = vec![1.0; 100];
        assert!((extent(&g, &p) - 99.0).abs() < 1e-9);
    }

    #[test]
    fn chirp_shear_matches_rate() {
        let g = Grid::centered(1.0 / 32.0, 1024).unwrap();
        let k = 2.0;
        let x = RealSignal::from_fn(g, |t| (-PI * (t / 4.0).powi(2)).exp() * (2.0 * PI * (8.0 * t + 0.5 * k * t * t)).cos()).unwrap();
        let r = shear_reduce(&x, &ShearSearch::default()).unwrap();
        // the envelope moves the optimum to -k / (k^2 + 1/256)
        assert!((r.params.alpha + k / (k * k + 1.0 / 256.0)).abs() < 0.02, "{:?}", r.params);
        assert!(r.bt.sheared < 0.25 * r.bt.real, "{:?}", r.bt);
        assert!(r.bt.sheared <= r.bt.analytic);
    }
}
