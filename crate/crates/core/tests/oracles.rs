//! Special functions and the plain LCT against independent references.

mod support;

use lct_joint::lct::{lct_output_grid, lct_with_form, LctForm};
use lct_joint::signal::{Grid, LctParams, SampledSignal};
use lct_joint::special::{erf_complex, faddeeva, ChirpKernels};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn faddeeva_matches_quadrature_in_disc() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let r = 10.0 * rng.gen::<f64>().sqrt();
        let z = Complex64::from_polar(r, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
        let e = rel_err(faddeeva(z), faddeeva_quad(z));
        assert!(e < 1e-12, "z={z} rel={e:e}");
    }
}

// Reference values computed at 40 digits as exp(-z^2) erfc(-iz).
#[test]
fn faddeeva_frozen_values() {
    let table = [
        (c(1.0, 1.0), c(0.30474420525691259, 0.20821893820283163)),
        (c(5.0, 0.1), c(0.002406911716942712, 0.11519442455072769)),
        (c(-3.0, -2.0), c(-0.08133907992862736, -0.12108616246299845)),
        (c(9.0, 0.0), c(6.6396771995807344e-36, 0.063082090059258286)),
        (c(0.0, 0.0), c(1.0, 0.0)),
        (c(0.5, -7.0), c(2.2397576592017301e21, 1.9518322939026899e21)),
        (c(-6.0, 0.05), c(0.00081870372653886711, -0.095389069954805749)),
        (c(3.0, 7.5), c(0.06462300371302969, 0.025464512494334434)),
    ];
    for (z, w) in table {
        let got = faddeeva(z);
        assert!((got.re - w.re).abs() <= 1e-13 * w.norm(), "z={z} got={got}");
        assert!((got.im - w.im).abs() <= 1e-13 * w.norm(), "z={z} got={got}");
    }
}

#[test]
fn erf_frozen_values() {
    // erf(1 + i) and erf(-2.5 + 0.3 i) at 40 digits.
    let table = [
        (c(1.0, 1.0), c(1.3161512816979476, 0.19045346923783469)),
        (c(-2.5, 0.3), c(-1.0000153774253388, 0.00044277444763268246)),
    ];
    for (z, w) in table {
        let got = erf_complex(z).unwrap();
        assert!((got - w).norm() <= 1e-14 * w.norm(), "z={z} got={got}");
    }
}

#[test]
fn kernel_g_matches_contour_integral() {
    for (a, b) in [(0.8, 1.2), (-0.8, 1.2), (0.8, -1.2), (2.0, 0.5), (-3.0, -0.7)] {
        let k = ChirpKernels::new(a, b).unwrap();
        for i in -96..=96 {
            let t = i as f64 / 16.0;
            let e = (k.g(t) - g_kernel_contour(a, b, t)).norm();
            assert!(e < 1e-10, "a={a} b={b} t={t} err={e:e}");
        }
    }
}

// w(s t) at 40 digits, s = sqrt(-j pi a/b), a = 0.8, b = 1.2.
#[test]
fn kernel_g_frozen_values() {
    let k = ChirpKernels::new(0.8, 1.2).unwrap();
    for (t, w) in [
        (1.0, c(-1.2979772594237673, 1.9381473379885786)),
        (4.0, c(-1.0698953293913712, 1.79989634759338)),
        (-2.5, c(0.11393174692590495, -0.10567813490738396)),
    ] {
        assert!((k.g(t) - w).norm() < 1e-13, "t={t}");
    }
}

fn gauss_signal(grid: &Grid) -> SampledSignal {
    SampledSignal::from_fn(*grid, |t| c((-std::f64::consts::PI * t * t).exp(), 0.0)).unwrap()
}

#[test]
fn form_i_matches_direct_sum() {
    let grid = Grid::new(-4.0, 1.0 / 16.0, 128).unwrap();
    let x = SampledSignal::from_fn(grid, |t| c((-(t - 0.3).powi(2)).exp(), 0.5 * (-(t + 1.0).powi(2) * 2.0).exp())).unwrap();
    for m in [
        LctParams::new(0.8, 1.2, -0.4, 0.65).unwrap(),
        LctParams::rotation(2.2),
        LctParams::from_abc(-1.5, -0.4, 0.7).unwrap(),
    ] {
        let out = lct_output_grid(&grid, &m);
        let fast = lct_with_form(&x, &m, LctForm::I).unwrap();
        let slow = lct_trapezoid(&x, &m, &out);
        for (p, q) in fast.samples().iter().zip(&slow) {
            assert!((p - q).norm() < 1e-12);
        }
    }
}

#[test]
fn every_form_matches_gaussian_closed_form() {
    let grid = Grid::new(-8.0, 1.0 / 32.0, 512).unwrap();
    let x = gauss_signal(&grid);
    let m = LctParams::new(0.8, 1.2, -0.4, 0.65).unwrap();
    for form in [LctForm::I, LctForm::II, LctForm::III, LctForm::IV] {
        let l = lct_with_form(&x, &m, form).unwrap();
        for (i, v) in l.samples().iter().enumerate() {
            let w = l.grid().at(i);
            assert!((v - lct_gaussian(&m, w)).norm() < 1e-10, "{form} w={w}");
        }
    }
}
