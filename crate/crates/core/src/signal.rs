//! Uniform grids, sampled signals and LCT parameter matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `ad - bc = 1`.
pub const DET_TOL: f64 = 1e-12;

/// Entries with magnitude below this are treated as exactly zero when
/// choosing between the `a = 0` / `b = 0` branches and the general ones.
pub const ZERO_TOL: f64 = 1e-12;

/// Uniform sampling grid `t_n = t0 + n dt`, `n = 0..len`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    t0: f64,
    dt: f64,
    len: usize,
}

impl Grid {
    pub fn new(t0: f64, dt: f64, len: usize) -> Result<Self> {
        if !t0.is_finite() || !dt.is_finite() {
            return Err(Error::InvalidGrid("non-finite origin or step".into()));
        }
        if dt <= 0.0 {
            return Err(Error::InvalidGrid(format!("step {dt} must be positive")));
        }
        if len == 0 {
            return Err(Error::InvalidGrid("grid is empty".into()));
        }
        Ok(Grid { t0, dt, len })
    }

    /// Grid with `t_{len/2} = 0`, i.e. `t0 = -(len/2) dt`.
    pub fn centered(dt: f64, len: usize) -> Result<Self> {
        Grid::new(-((len / 2) as f64) * dt, dt, len)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Position of sample `i`, computed without accumulation.
    #[inline]
    pub fn at(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.at(i)).collect()
    }

    /// Total covered span `len * dt`.
    pub fn span(&self) -> f64 {
        self.len as f64 * self.dt
    }

    pub fn is_centered(&self) -> bool {
        let c = -((self.len / 2) as f64) * self.dt;
        (self.t0 - c).abs() <= 1e-9 * self.dt
    }

    /// Same length and positions within `1e-9` of a step.
    pub fn approx_eq(&self, other: &Grid) -> bool {
        self.len == other.len
            && (self.dt - other.dt).abs() <= 1e-9 * self.dt
            && (self.t0 - other.t0).abs() <= 1e-9 * self.dt
    }

    pub(crate) fn ensure_matches(&self, other: &Grid) -> Result<()> {
        if self.approx_eq(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "({}, {}, {}) vs ({}, {}, {})",
                self.t0, self.dt, self.len, other.t0, other.dt, other.len
            )))
        }
    }
}

/// Sample positions `t0 + n dt` for `n = 0..len`.
pub fn make_grid(t0: f64, dt: f64, len: usize) -> Vec<f64> {
    (0..len).map(|i| t0 + i as f64 * dt).collect()
}

fn check_finite<I: Iterator<Item = bool>>(it: I) -> Result<()> {
    match it.enumerate().find(|(_, ok)| !ok) {
        Some((i, _)) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

/// Real samples on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RealSignal {
    grid: Grid,
    samples: Vec<f64>,
}

impl RealSignal {
    pub fn new(grid: Grid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} samples for a grid of {}",
                samples.len(),
                grid.len()
            )));
        }
        check_finite(samples.iter().map(|v| v.is_finite()))?;
        Ok(RealSignal { grid, samples })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let samples = grid.points().into_iter().map(f).collect();
        RealSignal::new(grid, samples)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn to_complex(&self) -> SampledSignal {
        SampledSignal {
            grid: self.grid,
            samples: self.samples.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    /// `sum |x|^2 dt`.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|v| v * v).sum::<f64>() * self.grid.dt
    }

    pub fn scaled(&self, k: f64) -> RealSignal {
        RealSignal {
            grid: self.grid,
            samples: self.samples.iter().map(|v| v * k).collect(),
        }
    }
}

/// Complex samples on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledSignal {
    grid: Grid,
    samples: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(grid: Grid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} samples for a grid of {}",
                samples.len(),
                grid.len()
            )));
        }
        check_finite(samples.iter().map(|v| v.re.is_finite() && v.im.is_finite()))?;
        Ok(SampledSignal { grid, samples })
    }

    /// Internal constructor for values already known to be finite.
    pub(crate) fn from_parts(grid: Grid, samples: Vec<Complex64>) -> Self {
        debug_assert_eq!(grid.len(), samples.len());
        SampledSignal { grid, samples }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let samples = grid.points().into_iter().map(f).collect();
        SampledSignal::new(grid, samples)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Real part as a [`RealSignal`].
    pub fn re(&self) -> RealSignal {
        RealSignal {
            grid: self.grid,
            samples: self.samples.iter().map(|v| v.re).collect(),
        }
    }

    pub fn im(&self) -> RealSignal {
        RealSignal {
            grid: self.grid,
            samples: self.samples.iter().map(|v| v.im).collect(),
        }
    }

    pub fn conj(&self) -> SampledSignal {
        self.map(|v| v.conj())
    }

    pub fn scaled(&self, k: Complex64) -> SampledSignal {
        self.map(|v| v * k)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> SampledSignal {
        SampledSignal {
            grid: self.grid,
            samples: self.samples.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Applies `f(position, value)` sample by sample.
    pub fn map_indexed(&self, f: impl Fn(f64, Complex64) -> Complex64) -> SampledSignal {
        SampledSignal {
            grid: self.grid,
            samples: self
                .samples
                .iter()
                .enumerate()
                .map(|(i, &v)| f(self.grid.at(i), v))
                .collect(),
        }
    }

    /// Pointwise combination with a signal on the same grid.
    pub fn zip_with(
        &self,
        other: &SampledSignal,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<SampledSignal> {
        self.grid.ensure_matches(&other.grid)?;
        Ok(SampledSignal {
            grid: self.grid,
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &SampledSignal) -> Result<SampledSignal> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SampledSignal) -> Result<SampledSignal> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `sum |x|^2 dt`.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dt
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// `max_n |x_n - y_n|`. Both signals must share a grid.
pub fn max_abs_diff(x: &SampledSignal, y: &SampledSignal) -> Result<f64> {
    x.grid.ensure_matches(&y.grid)?;
    Ok(x
        .samples
        .iter()
        .zip(&y.samples)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

/// Relative L2 error `||x - y|| / ||y||`.
pub fn relative_l2(x: &SampledSignal, y: &SampledSignal) -> Result<f64> {
    x.grid.ensure_matches(&y.grid)?;
    let num: f64 = x.samples.iter().zip(&y.samples).map(|(a, b)| (a - b).norm_sqr()).sum();
    let den: f64 = y.samples.iter().map(|b| b.norm_sqr()).sum();
    if den == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    Ok((num / den).sqrt())
}

/// Unimodular 2x2 matrix `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct LctParams {
    pub(crate) a: f64,
    pub(crate) b: f64,
    pub(crate) c: f64,
    pub(crate) d: f64,
}

#[derive(Deserialize)]
struct RawParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl TryFrom<RawParams> for LctParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        LctParams::new(r.a, r.b, r.c, r.d)
    }
}

impl LctParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite matrix entry".into()));
        }
        let det = a * d - b * c;
        if (det - 1.0).abs() > DET_TOL {
            return Err(Error::Determinant { det });
        }
        Ok(LctParams { a, b, c, d })
    }

    /// Fills in `d = (1 + bc) / a`.
    pub fn from_abc(a: f64, b: f64, c: f64) -> Result<Self> {
        if a.abs() < ZERO_TOL {
            return Err(Error::DegenerateParameter("a = 0 leaves d undetermined"));
        }
        LctParams::new(a, b, c, (1.0 + b * c) / a)
    }

    pub fn identity() -> Self {
        LctParams { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// `(0, 1, -1, 0)`: the Fourier transform with `omega = f`.
    pub fn fourier() -> Self {
        LctParams { a: 0.0, b: 1.0, c: -1.0, d: 0.0 }
    }

    /// Fractional Fourier matrix `(cos, sin, -sin, cos)`.
    pub fn rotation(alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        LctParams { a: c, b: s, c: -s, d: c }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// `(d, -b, -c, a)`.
    pub fn inverse(&self) -> Self {
        LctParams { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Matrix product `self * other`: the transform that applies `other`
    /// first and then `self`.
    pub fn compose(&self, other: &LctParams) -> Self {
        LctParams {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// `(a, -b, -c, d)`: `conj(L_m[z]) = L_{m'}[conj z]`.
    pub fn conjugate_partner(&self) -> Self {
        LctParams { a: self.a, b: -self.b, c: -self.c, d: self.d }
    }

    pub fn a_is_zero(&self) -> bool {
        self.a.abs() < ZERO_TOL
    }

    pub fn b_is_zero(&self) -> bool {
        self.b.abs() < ZERO_TOL
    }
}
