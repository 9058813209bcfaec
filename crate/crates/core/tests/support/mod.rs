//! Reference implementations used only by the tests. None of them share
//! code with the library.
#![allow(dead_code)]

use std::f64::consts::PI;

use lct_joint::signal::{Grid, LctParams, SampledSignal};
use num_complex::Complex64;

// 15-point Kronrod rule with its embedded 7-point Gauss rule.
const XK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Kronrod value, error estimate and Kronrod estimate of `int |f|`.
fn gk15(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WK[7];
    let mut g = fc * WG[3];
    let mut l1 = fc.norm() * WK[7];
    for i in 0..7 {
        let (lo, hi) = (f(c - h * XK[i]), f(c + h * XK[i]));
        k += (lo + hi) * WK[i];
        l1 += (lo.norm() + hi.norm()) * WK[i];
        if i % 2 == 1 {
            g += (lo + hi) * WG[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm(), l1 * h.abs())
}

fn adapt(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64, depth: u32) -> Complex64 {
    let (v, err, l1) = gk15(f, a, b);
    // Below a few ulps of the panel's absolute integral the estimate is
    // rounding noise.
    if err <= tol.max(1e-14 * l1) || depth == 0 {
        return v;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1) + adapt(f, m, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss-Kronrod quadrature of a complex integrand on `[a, b]`,
/// started from `pieces` equal panels.
pub fn integrate(f: impl Fn(f64) -> Complex64, a: f64, b: f64, pieces: usize, tol: f64) -> Complex64 {
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| adapt(&f, a + i as f64 * h, a + (i + 1) as f64 * h, tol / pieces as f64, 20))
        .sum()
}

/// `w(z) = (1/sqrt(pi)) int_0^inf exp(-u^2/4 + i z u) du` for `Im z >= 0`;
/// the lower half plane goes through `w(z) = 2 exp(-z^2) - w(-z)`.
pub fn faddeeva_quad(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return 2.0 * (-z * z).exp() - faddeeva_quad(-z);
    }
    let i = Complex64::new(0.0, 1.0);
    let f = |u: f64| (-(u * u) / 4.0 + i * z * u).exp();
    let scale = 1.0 / (1.0 + z.norm());
    integrate(f, 0.0, 14.0, 56, 1e-16 * scale) / PI.sqrt()
}

/// `2 int_0^inf G1(f) e^{j 2 pi f t} df`, where
/// `G1(f) = sqrt(j b/a) e^{-j pi (b/a) f^2}` is the Fourier transform of
/// `g1(t) = e^{j pi (a/b) t^2}`.
///
/// The half line is rotated onto `f = u e^{-j sgn(b/a) pi/4}`, where the
/// chirp becomes a Gaussian. When the linear phase term grows along that
/// ray, the complementary half line is used instead:
/// `2 int_0^inf = 2 g1(t) - 2 int_-inf^0`.
pub fn g_kernel_contour(a: f64, b: f64, t: f64) -> Complex64 {
    let r = b / a;
    let j = Complex64::new(0.0, 1.0);
    let dir = Complex64::from_polar(1.0, -r.signum() * PI / 4.0);
    let scale = 2.0 * (j * r).sqrt() * dir;
    let ray = |sign: f64| {
        let f = move |u: f64| {
            let fr = sign * dir * u;
            (-j * PI * r * fr * fr + j * 2.0 * PI * fr * t).exp()
        };
        integrate(f, 0.0, 8.0 / r.abs().sqrt() + 1.0, 64, 1e-17)
    };
    if (j * dir).re * t > 0.0 {
        2.0 * (j * PI * t * t / r).exp() - scale * ray(-1.0)
    } else {
        scale * ray(1.0)
    }
}

/// `L(w_k) = sqrt(1/jb) e^{j pi (d/b) w^2} sum_n x_n e^{j pi (a/b) t_n^2} e^{-j 2 pi w t_n / b} dt`
/// by direct summation onto `out`.
pub fn lct_trapezoid(x: &SampledSignal, m: &LctParams, out: &Grid) -> Vec<Complex64> {
    let (a, b, d) = (m.a(), m.b(), m.d());
    let j = Complex64::new(0.0, 1.0);
    let pre = (1.0 / (j * b)).sqrt();
    let g = x.grid();
    out.points()
        .iter()
        .map(|&w| {
            let s: Complex64 = x
                .samples()
                .iter()
                .enumerate()
                .map(|(n, &v)| {
                    let t = g.at(n);
                    v * (j * PI * (a / b * t * t - 2.0 * w * t / b)).exp()
                })
                .sum();
            pre * (j * PI * d / b * w * w).exp() * s * g.dt()
        })
        .collect()
}

/// Closed-form LCT of `e^{-pi t^2}`.
pub fn lct_gaussian(m: &LctParams, w: f64) -> Complex64 {
    let (a, b, d) = (m.a(), m.b(), m.d());
    let j = Complex64::new(0.0, 1.0);
    let q = 1.0 - j * a / b;
    (1.0 / (j * b)).sqrt() * (j * PI * d / b * w * w).exp() * q.sqrt().inv() * (-PI * (w / b).powi(2) / q).exp()
}

/// Sample a real closure.
pub fn real_on(grid: &Grid, f: impl Fn(f64) -> f64) -> lct_joint::signal::RealSignal {
    lct_joint::signal::RealSignal::from_fn(*grid, f).unwrap()
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// Spearman rank correlation.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&i, &j| v[i].partial_cmp(&v[j]).unwrap());
        let mut r = vec![0.0; v.len()];
        for (rank, &i) in idx.iter().enumerate() {
            r[i] = rank as f64;
        }
        r
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}
