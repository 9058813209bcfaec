//! Faddeeva function, complex error function and the chirp kernels built
//! from them.
//!
//! `w(z)` follows the Poppe-Wijers continued fraction for large `|z|` and the
//! Zaghloul-Ali series (ACM TOMS Algorithm 916) elsewhere, with the region
//! boundaries and term-count fit of S. G. Johnson's Faddeeva package.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{Grid, ZERO_TOL};

const ISPI: f64 = 0.564_189_583_547_756_286_948_079_451_56; // 1/sqrt(pi)

// Series parameters for a relative error of one machine epsilon.
const A: f64 = 0.518_321_480_430_085_929_872; // pi / sqrt(-ln(eps/2))
const C: f64 = 0.329_973_702_884_629_072_537; // 2a/pi
const A2: f64 = 0.268_657_157_075_235_951_582; // a^2
const RELERR: f64 = f64::EPSILON;

fn expa2n2(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let t = TABLE.get_or_init(|| (1..=64).map(|k| (-A2 * (k * k) as f64).exp()).collect());
    t.get(n - 1).copied().unwrap_or(0.0)
}

/// `exp(y^2)` with the rounding error of `y*y` folded back in.
fn exp_sq(y: f64) -> f64 {
    let hi = y * y;
    let lo = y.mul_add(y, -hi);
    hi.exp() * (1.0 + lo)
}

/// Scaled complementary error function `exp(y^2) erfc(y)` for real `y`.
pub fn erfcx(y: f64) -> f64 {
    if y.is_nan() {
        return y;
    }
    if y < 0.0 {
        if y < -26.7 {
            return f64::INFINITY;
        }
        return 2.0 * exp_sq(y) - erfcx(-y);
    }
    if y < 25.0 {
        return exp_sq(y) * libm::erfc(y);
    }
    // Asymptotic series; at y >= 25 eight terms reach full precision.
    let inv2y2 = 0.5 / (y * y);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..10 {
        term *= -((2 * k - 1) as f64) * inv2y2;
        sum += term;
    }
    ISPI / y * sum
}

fn sinc_with(x: f64, sinx: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - 0.166_666_666_666_666_666_667 * x * x
    } else {
        sinx / x
    }
}

fn sinh_taylor(x: f64) -> f64 {
    x * (1.0 + (x * x) * (0.166_666_666_666_666_666_667 + 0.008_333_333_333_333_333_333_33 * (x * x)))
}

/// Faddeeva function `w(z) = exp(-z^2) erfc(-iz)`.
///
/// Relative error is near machine precision away from the zeros of `w`
/// in the lower half-plane.
pub fn faddeeva(z: Complex64) -> Complex64 {
    if z.re == 0.0 {
        return Complex64::new(erfcx(z.im), z.re);
    }
    let x = z.re.abs();
    let ya = z.im.abs();
    if use_continued_fraction(x, ya) {
        w_continued_fraction(z)
    } else {
        w_series(z)
    }
}

fn use_continued_fraction(x: f64, ya: f64) -> bool {
    ya > 7.0 || (x > 6.0 && (ya > 0.1 || (x > 8.0 && ya > 1e-10) || x > 28.0))
}

/// Continued fraction for large `|z|`, with the lower half-plane handled by
/// `w(z) = 2 exp(-z^2) - w(-z)`.
pub(crate) fn w_continued_fraction(z: Complex64) -> Complex64 {
    let x = z.re.abs();
    let y = z.im;
    let ya = y.abs();
    if z.re.is_nan() || y.is_nan() {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    let xs = if y < 0.0 { -z.re } else { z.re };
    let ret = if x + ya > 4000.0 {
        if x + ya > 1e7 {
            // w ~ i / (sqrt(pi) z), scaled against overflow
            if x > ya {
                let yax = ya / xs;
                let denom = ISPI / (xs + yax * ya);
                Complex64::new(denom * yax, denom)
            } else if ya.is_infinite() {
                return if x.is_nan() || y < 0.0 {
                    Complex64::new(f64::NAN, f64::NAN)
                } else {
                    Complex64::new(0.0, 0.0)
                };
            } else {
                let xya = xs / ya;
                let denom = ISPI / (xya * xs + ya);
                Complex64::new(denom, denom * xya)
            }
        } else {
            // two terms: w ~ i z / (sqrt(pi) (z^2 - 1/2))
            let dr = xs * xs - ya * ya - 0.5;
            let di = 2.0 * xs * ya;
            let denom = ISPI / (dr * dr + di * di);
            Complex64::new(denom * (xs * di - ya * dr), denom * (xs * dr + ya * di))
        }
    } else {
        let nu = (3.9 + 11.398 / (0.08254 * x + 0.1421 * ya + 0.2023)).floor();
        let mut wr = xs;
        let mut wi = ya;
        let mut nu = 0.5 * (nu - 1.0);
        while nu > 0.4 {
            let denom = nu / (wr * wr + wi * wi);
            wr = xs - wr * denom;
            wi = ya + wi * denom;
            nu -= 0.5;
        }
        let denom = ISPI / (wr * wr + wi * wi);
        Complex64::new(denom * wi, denom * wr)
    };
    if y < 0.0 {
        // exp(-z^2) written so that (ya - xs)(xs + ya) does not overflow early
        2.0 * Complex64::new((ya - xs) * (xs + ya), 2.0 * xs * y).exp() - ret
    } else {
        ret
    }
}

/// Series branch (Algorithm 916), valid for all `z` but used for small `|z|`.
pub(crate) fn w_series(z: Complex64) -> Complex64 {
    let x = z.re.abs();
    let y = z.im;
    if x.is_nan() || y.is_nan() {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    let mut sum1 = 0.0;
    let mut sum2 = 0.0;
    let mut sum3 = 0.0;
    let mut sum4 = 0.0;
    let mut sum5 = 0.0;

    if x >= 10.0 {
        // Only |y| < 1e-10 lands here; sum3 and sum5 are the only survivors.
        let ret = Complex64::new((-x * x).exp(), 0.0);
        let n0 = (x / A + 0.5).floor();
        let dx = A * n0 - x;
        sum3 = (-dx * dx).exp() / (A2 * n0 * n0 + y * y);
        sum5 = A * n0 * sum3;
        let exp1 = (4.0 * A * dx).exp();
        let mut exp1dn = 1.0;
        let mut dn = 1.0;
        let finish = |sum3: f64, sum5: f64| {
            ret + Complex64::new(0.5 * C * y * sum3, (0.5 * C * sum5).copysign(z.re))
        };
        while dn < n0 {
            let np = n0 + dn;
            let nm = n0 - dn;
            let mut tp = (-(A * dn + dx).powi(2)).exp();
            exp1dn *= exp1;
            let mut tm = tp * exp1dn;
            tp /= A2 * np * np + y * y;
            tm /= A2 * nm * nm + y * y;
            sum3 += tp + tm;
            sum5 += A * (np * tp + nm * tm);
            if A * (np * tp + nm * tm) < RELERR * sum5 {
                return finish(sum3, sum5);
            }
            dn += 1.0;
        }
        loop {
            let np = n0 + dn;
            let tp = (-(A * dn + dx).powi(2)).exp() / (A2 * np * np + y * y);
            sum3 += tp;
            sum5 += A * np * tp;
            if A * np * tp < RELERR * sum5 {
                return finish(sum3, sum5);
            }
            dn += 1.0;
        }
    }

    let mut prod2ax = 1.0;
    let mut prodm2ax = 1.0;
    let expx2;
    if x < 5e-4 {
        // sum5 accumulates sum5 - sum4 directly to avoid cancellation
        let x2 = x * x;
        expx2 = 1.0 - x2 * (1.0 - 0.5 * x2);
        let ax2 = 2.0 * A * x;
        let exp2ax = 1.0 + ax2 * (1.0 + ax2 * (0.5 + ax2 / 6.0));
        let expm2ax = 1.0 - ax2 * (1.0 - ax2 * (0.5 - ax2 / 6.0));
        let mut n = 1usize;
        loop {
            let nf = n as f64;
            let coef = expa2n2(n) * expx2 / (A2 * nf * nf + y * y);
            prod2ax *= exp2ax;
            prodm2ax *= expm2ax;
            sum1 += coef;
            sum2 += coef * prodm2ax;
            sum3 += coef * prod2ax;
            sum5 += coef * (2.0 * A) * nf * sinh_taylor(2.0 * A * nf * x);
            if coef * prod2ax < RELERR * sum3 || n >= 64 {
                break;
            }
            n += 1;
        }
    } else {
        expx2 = (-x * x).exp();
        let exp2ax = (2.0 * A * x).exp();
        let expm2ax = 1.0 / exp2ax;
        let mut n = 1usize;
        loop {
            let nf = n as f64;
            let coef = expa2n2(n) * expx2 / (A2 * nf * nf + y * y);
            prod2ax *= exp2ax;
            prodm2ax *= expm2ax;
            sum1 += coef;
            sum2 += coef * prodm2ax;
            sum4 += coef * prodm2ax * (A * nf);
            sum3 += coef * prod2ax;
            sum5 += coef * prod2ax * (A * nf);
            if coef * prod2ax * A * nf < RELERR * sum5 || n >= 64 {
                break;
            }
            n += 1;
        }
    }

    let expx2erfcxy = if y > -6.0 {
        expx2 * erfcx(y)
    } else {
        2.0 * (y * y - x * x).exp()
    };
    let ret = if y > 5.0 {
        // imaginary parts cancel
        let sinxy = (x * y).sin();
        Complex64::new(
            (expx2erfcxy - C * y * sum1) * (2.0 * x * y).cos()
                + (C * x * expx2) * sinxy * sinc_with(x * y, sinxy),
            0.0,
        )
    } else {
        let xs = z.re;
        let sinxy = (xs * y).sin();
        let sin2xy = (2.0 * xs * y).sin();
        let cos2xy = (2.0 * xs * y).cos();
        let coef1 = expx2erfcxy - C * y * sum1;
        let coef2 = C * xs * expx2;
        Complex64::new(
            coef1 * cos2xy + coef2 * sinxy * sinc_with(xs * y, sinxy),
            coef2 * sinc_with(2.0 * xs * y, sin2xy) - coef1 * sin2xy,
        )
    };
    ret + Complex64::new(0.5 * C * y * (sum2 + sum3), (0.5 * C * (sum5 - sum4)).copysign(z.re))
}

/// Complex error function.
///
/// Odd symmetry is exact: the value is computed for `Re z >= 0` and negated.
/// Fails with [`Error::Range`] when `exp(-z^2)` overflows.
pub fn erf_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Range(format!("non-finite argument {z}")));
    }
    let flip = z.re < 0.0 || (z.re == 0.0 && z.im < 0.0);
    let zc = if flip { -z } else { z };
    let v = erf_right_half(zc)?;
    Ok(if flip { -v } else { v })
}

fn erf_right_half(z: Complex64) -> Result<Complex64> {
    if z.norm_sqr() < 1.0 {
        // 2/sqrt(pi) * sum (-1)^n z^(2n+1) / (n! (2n+1))
        let z2 = z * z;
        let mut term = z;
        let mut sum = z;
        for n in 1..60 {
            term *= -z2 / n as f64;
            let t = term / (2 * n + 1) as f64;
            sum += t;
            if t.norm() < 1e-17 * sum.norm() {
                break;
            }
        }
        return Ok(sum * (2.0 * ISPI));
    }
    let m = -(z * z);
    if m.re > 709.0 {
        return Err(Error::Range(format!("erf({z}) overflows")));
    }
    // iz lies in the upper half-plane, where w is well conditioned
    let w = faddeeva(Complex64::new(-z.im, z.re));
    Ok(Complex64::new(1.0, 0.0) - m.exp() * w)
}

/// Evaluators for the chirp kernel `g1(t) = exp(j pi (a/b) t^2)`, the joint
/// kernel `g(t) = w(s t)` with `s = sqrt(-j pi a / b)` (principal root), and
/// `g2 = g - g1`.
#[derive(Clone, Copy, Debug)]
pub struct ChirpKernels {
    ratio: f64,
    s: Complex64,
}

impl ChirpKernels {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if b.abs() < ZERO_TOL {
            return Err(Error::DegenerateParameter("chirp kernels need b != 0"));
        }
        if a.abs() < ZERO_TOL {
            return Err(Error::DegenerateParameter("chirp kernels need a != 0"));
        }
        let ratio = a / b;
        let s = Complex64::new(0.0, -PI * ratio).sqrt();
        Ok(ChirpKernels { ratio, s })
    }

    /// `a / b`.
    pub fn chirp_rate(&self) -> f64 {
        self.ratio
    }

    #[inline]
    pub fn g1(&self, t: f64) -> Complex64 {
        cis_pi(self.ratio * t * t)
    }

    /// `g1(t) + g2(t)`.
    #[inline]
    pub fn g(&self, t: f64) -> Complex64 {
        let z = self.s * t;
        if z.im >= 0.0 {
            faddeeva(z)
        } else {
            // exp(-z^2) equals g1 exactly; use it instead of re-rounding z^2
            2.0 * self.g1(t) - faddeeva(-z)
        }
    }

    #[inline]
    pub fn g2(&self, t: f64) -> Complex64 {
        self.g(t) - self.g1(t)
    }

    /// `(g1(t), g2(t))` from a single Faddeeva evaluation.
    #[inline]
    pub fn pair(&self, t: f64) -> (Complex64, Complex64) {
        let g1 = self.g1(t);
        let z = self.s * t;
        let g = if z.im >= 0.0 { faddeeva(z) } else { 2.0 * g1 - faddeeva(-z) };
        (g1, g - g1)
    }
}

/// `exp(j pi x)` with the argument reduced modulo 2 before scaling.
#[inline]
pub(crate) fn cis_pi(x: f64) -> Complex64 {
    let r = x - 2.0 * (0.5 * x).round();
    let (s, c) = (PI * r).sin_cos();
    Complex64::new(c, s)
}

/// `exp(j 2 pi x)`.
#[inline]
pub(crate) fn cis_2pi(x: f64) -> Complex64 {
    let r = x - x.round();
    let (s, c) = (2.0 * PI * r).sin_cos();
    Complex64::new(c, s)
}

/// Sampled chirp kernels.
#[derive(Clone, Debug)]
pub struct ChirpKernelPair {
    pub grid: Grid,
    pub g1: Vec<Complex64>,
    pub g2: Vec<Complex64>,
    pub chirp_rate: f64,
}

/// Samples `g1` and `g2` for the matrix entries `a`, `b` on `grid`.
pub fn g_kernels(grid: &Grid, a: f64, b: f64) -> Result<ChirpKernelPair> {
    let k = ChirpKernels::new(a, b)?;
    let (g1, g2) = grid.points().into_iter().map(|t| k.pair(t)).unzip();
    Ok(ChirpKernelPair { grid: *grid, g1, g2, chirp_rate: k.ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn erfcx_matches_definition() {
        for &y in &[0.0f64, 0.3, 1.0, 2.5, 4.0] {
            let direct = (y * y).exp() * libm::erfc(y);
            assert!(((erfcx(y) - direct) / direct).abs() < 1e-14, "y={y}");
        }
        // asymptotic branch continues the direct one
        let lo = exp_sq(24.999) * libm::erfc(24.999);
        assert!(((erfcx(25.0) - lo) / lo).abs() < 1e-4);
        assert!(((erfcx(-1.0) - (2.0 * 1f64.exp() - erfcx(1.0))) / erfcx(-1.0)).abs() < 1e-15);
    }

    #[test]
    fn faddeeva_on_imaginary_axis() {
        // e * erfc(1) from the real-line series of erf(1)
        let w = faddeeva(Complex64::new(0.0, 1.0));
        assert!((w.re - 0.427_583_576_155_807_0).abs() < 1e-15);
        assert_eq!(w.im, 0.0);
    }

    #[test]
    fn branches_agree_on_the_seam() {
        let mut pts = Vec::new();
        for i in 0..=40 {
            let x = 10.0 * i as f64 / 40.0;
            pts.push(Complex64::new(x, 7.0));
            pts.push(Complex64::new(x + 1e-3, 7.0 + 1e-3));
        }
        for i in 0..=30 {
            let y = 0.1 + 6.9 * i as f64 / 30.0;
            pts.push(Complex64::new(6.0, y));
            pts.push(Complex64::new(-6.0, y));
        }
        for z in pts {
            let cf = w_continued_fraction(z);
            let s = w_series(z);
            assert!(rel(cf, s) < 1e-12, "z={z} cf={cf} series={s}");
        }
    }

    #[test]
    fn reflection_in_lower_half_plane() {
        for &(x, y) in &[(0.3, -0.2), (1.5, -0.8), (-2.0, -0.5), (4.0, -3.0)] {
            let z = Complex64::new(x, y);
            let expect = 2.0 * (-(z * z)).exp() - faddeeva(-z);
            assert!(rel(faddeeva(z), expect) < 1e-12, "z={z}");
        }
    }

    #[test]
    fn erf_real_axis_matches_libm() {
        for i in 0..200 {
            let x = -6.0 + 12.0 * i as f64 / 199.0;
            let e = erf_complex(Complex64::new(x, 0.0)).unwrap();
            let r = libm::erf(x);
            assert!((e.re - r).abs() <= 1e-14 * r.abs().max(1e-300), "x={x}: {} vs {r}", e.re);
            assert!(e.im.abs() < 1e-15);
        }
        let one = erf_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!((one.re - 0.842_700_792_949_714_9).abs() < 1e-15);
    }

    #[test]
    fn erf_is_exactly_odd() {
        for &(x, y) in &[(0.3, 0.4), (1.7, -2.2), (3.0, 0.5), (0.0, 2.0)] {
            let z = Complex64::new(x, y);
            assert_eq!(erf_complex(-z).unwrap(), -erf_complex(z).unwrap());
        }
    }

    #[test]
    fn erf_range_errors() {
        assert!(matches!(erf_complex(Complex64::new(0.0, 30.0)), Err(Error::Range(_))));
        assert!(matches!(erf_complex(Complex64::new(f64::NAN, 0.0)), Err(Error::Range(_))));
    }

    #[test]
    fn joint_kernel_limits() {
        let k = ChirpKernels::new(0.8, 1.2).unwrap();
        let t = 10.0 / (0.8f64 / 1.2).sqrt();
        assert!((k.g(t).norm() - 2.0).abs() < 0.1);
        assert!(k.g(-t).norm() < 0.1);
        assert!((k.g(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn kernels_reject_degenerate_matrix() {
        let g = Grid::centered(0.1, 8).unwrap();
        assert!(g_kernels(&g, 1.0, 0.0).is_err());
        assert!(g_kernels(&g, 0.0, 1.0).is_err());
    }
}
