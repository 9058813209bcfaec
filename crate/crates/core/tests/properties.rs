//! Algebraic properties of the transforms, checked on random inputs.

use std::f64::consts::PI;

use lct_joint::fourier::{analytic, fourier, hilbert};
use lct_joint::joint::{la, lca, lh};
use lct_joint::lct::{ilct, lct, lct_conjugate_identity_check};
use lct_joint::signal::{max_abs_diff, Grid, LctParams, RealSignal, SampledSignal};
use lct_joint::verify::{default_grid, joint_suite, matrix_aneq0, test_signal_two_gauss, Harness};
use num_complex::Complex64;
use proptest::prelude::*;

fn grid() -> Grid {
    Grid::centered(1.0 / 16.0, 256).unwrap()
}

/// Unit-determinant matrices with `|a|, |b|` bounded away from zero.
fn matrix() -> impl Strategy<Value = LctParams> {
    (0.3f64..2.0, any::<bool>(), 0.3f64..3.0, any::<bool>(), -1.5f64..1.5).prop_map(|(a, sa, b, sb, c)| {
        let a = if sa { a } else { -a };
        let b = if sb { b } else { -b };
        LctParams::from_abc(a, b, c).unwrap()
    })
}

/// Sum of three modulated Gaussians well inside the grid.
fn bump_signal() -> impl Strategy<Value = RealSignal> {
    prop::collection::vec((-2.0f64..2.0, 0.0f64..3.0, 0.5f64..1.5, -1.0f64..1.0), 3).prop_map(|parts| {
        RealSignal::from_fn(grid(), move |t| {
            parts
                .iter()
                .map(|&(t0, f0, w, amp)| amp * (-PI * ((t - t0) / w).powi(2)).exp() * (2.0 * PI * f0 * t).cos())
                .sum()
        })
        .unwrap()
    })
}

/// Random spectrum without DC and folding-frequency content.
fn bandlimited() -> impl Strategy<Value = SampledSignal> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 64).prop_map(|coef| {
        let n = 128;
        let g = Grid::new(0.0, 1.0, n).unwrap();
        SampledSignal::from_fn(g, |t| {
            coef.iter()
                .enumerate()
                .map(|(k, &(re, im))| {
                    let f = (k as f64 + 1.0 - 32.0) / n as f64;
                    if k as f64 + 1.0 - 32.0 == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(re, im) * Complex64::from_polar(1.0, 2.0 * PI * f * t)
                    }
                })
                .sum()
        })
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn la_is_linear(x in bump_signal(), y in bump_signal(), p in -2.0f64..2.0, q in -2.0f64..2.0, m in matrix()) {
        let comb = RealSignal::new(grid(), x.samples().iter().zip(y.samples()).map(|(u, v)| p * u + q * v).collect()).unwrap();
        let lhs = la(&comb, &m).unwrap();
        let lx = la(&x, &m).unwrap();
        let ly = la(&y, &m).unwrap();
        let rhs = lx.zip_with(&ly, |u, v| u * p + v * q).unwrap();
        prop_assert!(max_abs_diff(&lhs, &rhs).unwrap() < 1e-11);
    }

    #[test]
    fn la_splits_into_lct_and_lh(x in bump_signal(), m in matrix()) {
        // la = L[x] + j L[Hx] and lca = L[x] - j L[Hx]
        let l = lct(&x.to_complex(), &m).unwrap();
        let h = lh(&x, &m).unwrap();
        let j = Complex64::new(0.0, 1.0);
        let a = la(&x, &m).unwrap();
        let c = lca(&x, &m).unwrap();
        let sum = a.zip_with(&c, |u, v| (u + v) * 0.5).unwrap();
        let diff = a.zip_with(&c, |u, v| (u - v) * 0.5).unwrap();
        prop_assert!(max_abs_diff(&diff, &h.scaled(j)).unwrap() < 1e-12);
        prop_assert!(max_abs_diff(&sum, &l).unwrap() < 1e-6);
    }

    #[test]
    fn hilbert_twice_is_minus_identity(x in bandlimited()) {
        let hh = hilbert(&hilbert(&x).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&hh, &x.scaled(Complex64::new(-1.0, 0.0))).unwrap() < 1e-10);
    }

    #[test]
    fn analytic_real_part_is_exact(x in bump_signal()) {
        let z = analytic(&x).unwrap();
        prop_assert!(z.re().samples() == x.samples());
    }

    #[test]
    fn lct_is_unitary_and_invertible(x in bump_signal(), m in matrix()) {
        let xc = x.to_complex();
        let l = lct(&xc, &m).unwrap();
        prop_assert!((l.energy() - xc.energy()).abs() <= 1e-12 * xc.energy());
        let back = ilct(&l, &m).unwrap();
        prop_assert!(max_abs_diff(&back, &xc).unwrap() < 1e-12);
    }

    #[test]
    fn conjugation_swaps_matrix(x in bump_signal(), m in matrix()) {
        let z = analytic(&x).unwrap();
        prop_assert!(lct_conjugate_identity_check(&z, &m).unwrap() < 1e-12);
    }
}

#[test]
fn rotations_compose() {
    let g = grid();
    let x = SampledSignal::from_fn(g, |t| {
        Complex64::new((-PI * (t - 0.5).powi(2)).exp(), 0.3 * (-PI * (t + 1.0).powi(2) / 2.0).exp())
    })
    .unwrap();
    let r = LctParams::rotation(PI / 4.0);
    let twice = lct(&lct(&x, &r).unwrap(), &r).unwrap();
    let once = lct(&x, &r.compose(&r)).unwrap();
    assert!(once.grid().approx_eq(twice.grid()));
    assert!(max_abs_diff(&twice, &once).unwrap() < 1e-8);
}

#[test]
fn fourier_matrix_matches_fourier_transform() {
    let g = grid();
    let x = SampledSignal::from_fn(g, |t| Complex64::new((-PI * t * t).exp(), 0.0)).unwrap();
    let l = lct(&x, &LctParams::fourier()).unwrap();
    let f = fourier(&x).scaled(Complex64::from_polar(1.0, -PI / 4.0));
    assert!(max_abs_diff(&l, &f).unwrap() < 1e-13);
}

#[test]
fn doubling_n_does_not_degrade_joint_agreement() {
    let worst = |n: usize| {
        let g = Grid::new(-8.0, 16.0 / n as f64, n).unwrap();
        let r = Harness::with_builtin(&g).run(&joint_suite(matrix_aneq0(), "twogauss", 1e-6));
        r.cases.iter().filter_map(|c| c.max_abs_diff).fold(0.0, f64::max)
    };
    let (w1, w2) = (worst(1024), worst(2048));
    assert!(w2 <= 2.0 * w1, "N=1024: {w1:e}, N=2048: {w2:e}");
}

#[test]
fn joint_la_tracks_cascade_on_default_signal() {
    let x = test_signal_two_gauss(&default_grid());
    let m = matrix_aneq0();
    let joint = la(&x, &m).unwrap();
    let cascade = lct(&analytic(&x).unwrap(), &m).unwrap();
    assert!(max_abs_diff(&joint, &cascade).unwrap() < 1e-6);
}
