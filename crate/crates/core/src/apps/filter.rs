use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::joint::la;
use crate::lct::{ilct, lct_output_grid};
use crate::signal::{Grid, LctParams, RealSignal};

/// Tabulated LCT-domain mask `H(w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterSpec {
    grid: Grid,
    gain: Vec<Complex64>,
}

impl FilterSpec {
    pub fn new(grid: Grid, gain: Vec<Complex64>) -> Result<Self> {
        if gain.len() != grid.len() {
            return Err(Error::GridMismatch(format!("{} gains for {} points", gain.len(), grid.len())));
        }
        if gain.iter().any(|g| !(g.re.is_finite() && g.im.is_finite())) {
            return Err(Error::InvalidArgument("non-finite filter gain".into()));
        }
        Ok(FilterSpec { grid, gain })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        FilterSpec::new(grid, grid.points().into_iter().map(f).collect())
    }

    pub fn constant(grid: Grid, v: f64) -> Self {
        FilterSpec { grid, gain: vec![Complex64::new(v, 0.0); grid.len()] }
    }

    /// 1 on `lo <= w <= hi`, 0 elsewhere.
    pub fn band(grid: Grid, lo: f64, hi: f64) -> Self {
        let gain = grid
            .points()
            .into_iter()
            .map(|w| Complex64::new(if (lo..=hi).contains(&w) { 1.0 } else { 0.0 }, 0.0))
            .collect();
        FilterSpec { grid, gain }
    }

    /// Mask for signals on `time_grid` transformed with `m`.
    pub fn band_for(time_grid: &Grid, m: &LctParams, lo: f64, hi: f64) -> Self {
        FilterSpec::band(lct_output_grid(time_grid, m), lo, hi)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn gain(&self) -> &[Complex64] {
        &self.gain
    }
}

/// `Re{ilct(H . la(y, m), m)}`.
pub fn lct_filter(y: &RealSignal, m: &LctParams, h: &FilterSpec) -> Result<RealSignal> {
    let l = la(y, m)?;
    if !l.grid().approx_eq(&h.grid) {
        return Err(Error::GridMismatch("filter mask is not on the LCT grid of the input".into()));
    }
    let samples = l.samples().iter().zip(&h.gain).map(|(a, b)| a * b).collect();
    let filtered = crate::signal::SampledSignal::new(*l.grid(), samples)?;
    Ok(ilct(&filtered, m)?.re())
}
