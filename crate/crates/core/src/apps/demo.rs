//! Built-in signals used by the CLI demos and the tests.

use std::f64::consts::PI;

use crate::signal::{Grid, LctParams, RealSignal};

/// `[-16, 16)` with step 1/64.
pub fn demo_grid(n: usize) -> Grid {
    Grid::new(-(n as f64) / 128.0, 1.0 / 64.0, n).expect("positive length")
}

fn gauss_chirp(t: f64, width: f64, f0: f64, rate: f64) -> f64 {
    (-PI * (t / width).powi(2)).exp() * (2.0 * PI * (f0 * t + 0.5 * rate * t * t)).cos()
}

/// Matrix that maps both [`separation_pair`] components to constant `w`.
pub fn separation_matrix() -> LctParams {
    LctParams::new(-0.5, 1.0, -1.0, 0.0).expect("unit determinant")
}

/// Cutoff between the two [`separation_pair`] components under
/// [`separation_matrix`]; they sit near `w = 4` and `w = 9`.
pub const SEPARATION_CUTOFF: f64 = 6.5;

/// Two chirps with the same rate and carriers 4 and 9. They overlap in
/// time and in frequency but not along the `w` axis of
/// [`separation_matrix`].
pub fn separation_pair(grid: &Grid) -> (RealSignal, RealSignal) {
    let x1 = RealSignal::from_fn(*grid, |t| gauss_chirp(t, 3.0, 4.0, 0.5)).expect("finite");
    let x2 = RealSignal::from_fn(*grid, |t| 0.8 * gauss_chirp(t, 3.0, 9.0, 0.5)).expect("finite");
    (x1, x2)
}

/// Carrier and rate of [`if_chirp`].
pub const IF_CHIRP: (f64, f64) = (10.0, 1.0);

/// Long Gaussian chirp with instantaneous frequency `10 + t`.
pub fn if_chirp(grid: &Grid) -> RealSignal {
    RealSignal::from_fn(*grid, |t| gauss_chirp(t, 6.0, IF_CHIRP.0, IF_CHIRP.1)).expect("finite")
}

/// Chirp with instantaneous frequency `12 + 2t`.
pub fn shear_chirp(grid: &Grid) -> RealSignal {
    RealSignal::from_fn(*grid, |t| gauss_chirp(t, 3.0, 12.0, 2.0)).expect("finite")
}
