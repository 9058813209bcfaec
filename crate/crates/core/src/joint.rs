//! Joint transforms: an LCT fused with an analytic-signal or Hilbert step.
//!
//! Each function evaluates a single kernel integral that equals the
//! corresponding cascade of base transforms (see [`cascade`]).
//! For `a != 0` the kernels are `g1(t) = e^{j pi (a/b) t^2}` and
//! `g2 = w(s t) - g1` from [`crate::special`]; for `a = 0` the transforms
//! reduce to Fourier-domain masks.
//!
//! All of them need `b != 0`. Forward transforms return the grid of
//! [`crate::lct::lct`]; inverse ones the grid of [`crate::lct::ilct`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conv::{kernel_sum, pv_hilbert_fft, Points};
use crate::error::{Error, Result};
use crate::fourier::{analytic, analytic_complex, hilbert, hilbert_real};
use crate::lct::{ilct, lct, lct_output_grid, root_jb};
use crate::signal::{LctParams, RealSignal, SampledSignal};
use crate::special::{cis_pi, ChirpKernels};

/// The seven joint transforms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JointKind {
    /// LCT of the analytic signal.
    La,
    /// LCT of the Hilbert transform.
    Lh,
    /// Analytic signal of the inverse LCT.
    AlInv,
    /// Hilbert transform of the inverse LCT.
    HlInv,
    /// LCT of the Hilbert transform of the inverse LCT.
    LhlInv,
    /// LCT of the conjugated inverse LCT.
    LclInv,
    /// LCT of the conjugated analytic signal.
    Lca,
}

impl JointKind {
    pub const ALL: [JointKind; 7] = [
        JointKind::La,
        JointKind::Lh,
        JointKind::AlInv,
        JointKind::HlInv,
        JointKind::LhlInv,
        JointKind::LclInv,
        JointKind::Lca,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            JointKind::La => "la",
            JointKind::Lh => "lh",
            JointKind::AlInv => "al-inv",
            JointKind::HlInv => "hl-inv",
            JointKind::LhlInv => "lhl-inv",
            JointKind::LclInv => "lcl-inv",
            JointKind::Lca => "lca",
        }
    }

    /// Forward kinds take a real time signal; the others an LCT-domain one.
    pub fn takes_time_signal(&self) -> bool {
        matches!(self, JointKind::La | JointKind::Lh | JointKind::Lca)
    }
}

impl fmt::Display for JointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for JointKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        JointKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown joint transform '{s}'")))
    }
}

fn require_b(m: &LctParams) -> Result<()> {
    if m.b_is_zero() {
        Err(Error::DegenerateParameter("joint transforms need b != 0"))
    } else {
        Ok(())
    }
}

fn sgn(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `sgn(w / b)` for the Fourier-domain masks of the `a = 0` branch. On a
/// centred even grid the first point is the folding frequency of the
/// underlying DFT and gets sign 0, as in [`crate::fourier::hilbert`].
fn masked(l: &SampledSignal, b: f64, factor: impl Fn(f64) -> Complex64) -> SampledSignal {
    let g = *l.grid();
    let fold = g.len() % 2 == 0 && g.is_centered();
    let samples = l
        .samples()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let s = if i == 0 && fold { 0.0 } else { sgn(g.at(i) / b) };
            v * factor(s)
        })
        .collect();
    SampledSignal::from_parts(g, samples)
}

/// Which combination of `g1` and `g2` a forward kernel uses.
#[derive(Clone, Copy)]
enum Forward {
    /// `g1 + g2`
    Analytic,
    /// `g2`, scaled by `-j` afterwards
    Hilbert,
    /// `g1 - g2`
    Conjugate,
}

fn forward(x: &RealSignal, m: &LctParams, which: Forward) -> Result<SampledSignal> {
    require_b(m)?;
    let out = lct_output_grid(x.grid(), m);
    let (a, b, c) = (m.a(), m.b(), m.c());
    if m.a_is_zero() {
        let base = lct(&x.to_complex(), m)?;
        return Ok(masked(&base, b, |s| match which {
            Forward::Analytic => Complex64::new(1.0 + s, 0.0),
            Forward::Hilbert => Complex64::new(0.0, -s),
            Forward::Conjugate => Complex64::new(1.0 - s, 0.0),
        }));
    }
    let k = ChirpKernels::new(a, b)?;
    let g = x.grid();
    let w: Vec<Complex64> = x.samples().iter().map(|&v| Complex64::new(v * g.dt(), 0.0)).collect();
    let taus = Points { p0: out.t0() / a, step: out.dt() / a, len: out.len() };
    let sums = match which {
        Forward::Analytic => kernel_sum(Points::of(g), &w, taus, |s| k.g(s)),
        Forward::Hilbert => kernel_sum(Points::of(g), &w, taus, |s| k.g2(s)),
        Forward::Conjugate => kernel_sum(Points::of(g), &w, taus, |s| {
            let (g1, g2) = k.pair(s);
            g1 - g2
        }),
    };
    let mut pre = root_jb(b);
    if let Forward::Hilbert = which {
        pre *= Complex64::new(0.0, -1.0);
    }
    let samples = sums
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let om = out.at(i);
            v * pre * cis_pi(c / a * om * om)
        })
        .collect();
    SampledSignal::new(out, samples)
}

/// `L_m[x + j H x]`.
pub fn la(x: &RealSignal, m: &LctParams) -> Result<SampledSignal> {
    forward(x, m, Forward::Analytic)
}

/// `L_m[H x]`.
pub fn lh(x: &RealSignal, m: &LctParams) -> Result<SampledSignal> {
    forward(x, m, Forward::Hilbert)
}

/// `L_m[conj(x + j H x)]`.
pub fn lca(x: &RealSignal, m: &LctParams) -> Result<SampledSignal> {
    forward(x, m, Forward::Conjugate)
}

#[derive(Clone, Copy)]
enum Inverse {
    /// `conj(g1) - conj(g2)`
    Analytic,
    /// `conj(g2)`, scaled by `j`
    Hilbert,
}

fn inverse(l: &SampledSignal, m: &LctParams, which: Inverse) -> Result<SampledSignal> {
    require_b(m)?;
    let (a, b, c) = (m.a(), m.b(), m.c());
    if m.a_is_zero() {
        let weighted = masked(l, b, |s| match which {
            Inverse::Analytic => Complex64::new(1.0 + s, 0.0),
            Inverse::Hilbert => Complex64::new(0.0, -s),
        });
        return ilct(&weighted, m);
    }
    let out = lct_output_grid(l.grid(), &m.inverse());
    let k = ChirpKernels::new(a, b)?;
    let lg = l.grid();
    let w: Vec<Complex64> = l
        .samples()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let om = lg.at(i);
            v * cis_pi(-c / a * om * om) * lg.dt()
        })
        .collect();
    let etas = Points { p0: lg.t0() / a, step: lg.dt() / a, len: lg.len() };
    let sums = match which {
        Inverse::Analytic => kernel_sum(etas, &w, Points::of(&out), |s| {
            let (g1, g2) = k.pair(s);
            (g1 - g2).conj()
        }),
        Inverse::Hilbert => kernel_sum(etas, &w, Points::of(&out), |s| k.g2(s).conj()),
    };
    let mut pre = root_jb(-b);
    if let Inverse::Hilbert = which {
        pre *= Complex64::new(0.0, 1.0);
    }
    SampledSignal::new(out, sums.into_iter().map(|v| v * pre).collect())
}

/// `A{L_m^{-1}[l]}`.
pub fn al_inv(l: &SampledSignal, m: &LctParams) -> Result<SampledSignal> {
    inverse(l, m, Inverse::Analytic)
}

/// `H{L_m^{-1}[l]}`.
pub fn hl_inv(l: &SampledSignal, m: &LctParams) -> Result<SampledSignal> {
    inverse(l, m, Inverse::Hilbert)
}

/// `L_m[H{L_m^{-1}[l]}]`, evaluated in the LCT domain.
///
/// For `a != 0` this is a principal-value Hilbert sum of the
/// chirp-demodulated input `l(w) e^{-j pi (c/a) w^2}`, whose local frequency
/// is `f / a`. The result is exact when that stays below the Nyquist rate
/// of the `w` grid, i.e. `|f| < |a| / (2 dw)` over the signal band.
pub fn lhl_inv(l: &SampledSignal, m: &LctParams) -> Result<SampledSignal> {
    require_b(m)?;
    let (a, b, c) = (m.a(), m.b(), m.c());
    if m.a_is_zero() {
        return Ok(masked(l, b, |s| Complex64::new(0.0, -s)));
    }
    let g = l.grid();
    let demod: Vec<Complex64> = l
        .samples()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let om = g.at(i);
            v * cis_pi(-c / a * om * om)
        })
        .collect();
    let h = pv_hilbert_fft(&demod);
    let s = sgn(a);
    let samples = h
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let om = g.at(i);
            v * s * cis_pi(c / a * om * om)
        })
        .collect();
    SampledSignal::new(*g, samples)
}

/// `L_m[conj(L_m^{-1}[l])]`, evaluated in the LCT domain.
///
/// For `a != 0` the single chirp integral is a Riemann sum over the `w`
/// grid, which repeats with period `2 |ab| / dw` in the output variable.
/// Output points with `|w| >= |ab| / dw` are set to zero; the result is
/// exact for inputs whose conjugate image lies inside that band.
///
/// For `a = 0` the input grid must be centred (the natural LCT grid).
pub fn lcl_inv(l: &SampledSignal, m: &LctParams) -> Result<SampledSignal> {
    require_b(m)?;
    let (a, b, d) = (m.a(), m.b(), m.d());
    let g = *l.grid();
    let n = g.len();
    if m.a_is_zero() {
        if !g.is_centered() || n % 2 != 0 {
            return Err(Error::GridMismatch("lcl-inv with a = 0 needs a centred, even-length grid".into()));
        }
        let pre = Complex64::new(0.0, -sgn(b));
        let src = l.samples();
        let samples = (0..n)
            .map(|k| {
                let om = g.at(k);
                let mirror = src[(n - k) % n].conj();
                pre * cis_pi(2.0 * d / b * om * om) * mirror
            })
            .collect();
        return SampledSignal::new(g, samples);
    }
    let kappa = d / b - 1.0 / (2.0 * a * b);
    let limit = (a * b).abs() / g.dt();
    let w: Vec<Complex64> = l
        .samples()
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let eta = g.at(k);
            v.conj() * cis_pi(kappa * eta * eta) * g.dt()
        })
        .collect();
    let pre = Complex64::new(0.0, -1.0 / b) * Complex64::new(0.0, b / (2.0 * a)).sqrt();
    let rate = -1.0 / (a * b);
    let samples = crate::conv::map_range(n, |i| {
        let om = g.at(i);
        if om.abs() >= limit {
            return Complex64::new(0.0, 0.0);
        }
        let acc = w
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, &v)| acc + v * cis_pi(rate * om * g.at(k)));
        acc * pre * cis_pi(kappa * om * om)
    });
    SampledSignal::new(g, samples)
}

fn time_input(kind: JointKind, z: &SampledSignal) -> Result<RealSignal> {
    if z.samples().iter().any(|v| v.im != 0.0) {
        return Err(Error::InvalidArgument(format!("{kind} expects a real input signal")));
    }
    Ok(z.re())
}

/// Dispatches on `kind`. Forward kinds require a real-valued input.
pub fn joint_transform(kind: JointKind, input: &SampledSignal, m: &LctParams) -> Result<SampledSignal> {
    match kind {
        JointKind::La => la(&time_input(kind, input)?, m),
        JointKind::Lh => lh(&time_input(kind, input)?, m),
        JointKind::Lca => lca(&time_input(kind, input)?, m),
        JointKind::AlInv => al_inv(input, m),
        JointKind::HlInv => hl_inv(input, m),
        JointKind::LhlInv => lhl_inv(input, m),
        JointKind::LclInv => lcl_inv(input, m),
    }
}

/// Reference evaluation of `kind` as a cascade of base transforms.
pub fn cascade(kind: JointKind, input: &SampledSignal, m: &LctParams) -> Result<SampledSignal> {
    match kind {
        JointKind::La => lct(&analytic(&time_input(kind, input)?)?, m),
        JointKind::Lh => lct(&hilbert_real(&time_input(kind, input)?)?.to_complex(), m),
        JointKind::Lca => lct(&analytic(&time_input(kind, input)?)?.conj(), m),
        JointKind::AlInv => analytic_complex(&ilct(input, m)?),
        JointKind::HlInv => hilbert(&ilct(input, m)?),
        JointKind::LhlInv => lct(&hilbert(&ilct(input, m)?)?, m),
        JointKind::LclInv => lct(&ilct(input, m)?.conj(), m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_roundtrip() {
        for k in JointKind::ALL {
            assert_eq!(k.name().parse::<JointKind>().unwrap(), k);
        }
        assert_eq!("lhl_inv".parse::<JointKind>().unwrap(), JointKind::LhlInv);
        assert!("lx".parse::<JointKind>().is_err());
    }

    #[test]
    fn forward_kinds_reject_complex_input() {
        let g = crate::signal::Grid::centered(0.25, 16).unwrap();
        let z = SampledSignal::new(g, vec![Complex64::new(0.0, 1.0); 16]).unwrap();
        let m = LctParams::rotation(0.7);
        assert!(joint_transform(JointKind::La, &z, &m).is_err());
        assert!(joint_transform(JointKind::LhlInv, &z, &m).is_ok());
    }

    #[test]
    fn b_zero_is_rejected() {
        let g = crate::signal::Grid::centered(0.25, 16).unwrap();
        let x = RealSignal::new(g, vec![1.0; 16]).unwrap();
        let m = LctParams::new(2.0, 0.0, 0.0, 0.5).unwrap();
        assert!(matches!(la(&x, &m), Err(Error::DegenerateParameter(_))));
    }
}
