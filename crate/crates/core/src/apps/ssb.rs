use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::analytic;
use crate::joint::{la, lhl_inv};
use crate::lct::ilct;
use crate::conv::sinc_interpolate;
use crate::signal::{relative_l2, Grid, LctParams, RealSignal, SampledSignal};
use crate::special::cis_2pi;

/// Modulation key: the LCT matrix and the carrier frequency.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SsbKey {
    pub m: LctParams,
    pub fc: f64,
}

impl SsbKey {
    pub fn new(m: LctParams, fc: f64) -> Result<Self> {
        if m.b_is_zero() {
            return Err(Error::DegenerateParameter("SSB key needs b != 0"));
        }
        if !(fc > 0.0 && fc.is_finite()) {
            return Err(Error::InvalidArgument(format!("carrier {fc} must be positive")));
        }
        Ok(SsbKey { m, fc })
    }
}

fn check_carrier(grid: &Grid, fc: f64) -> Result<()> {
    let nyquist = 0.5 / grid.dt();
    if fc >= nyquist {
        Err(Error::CarrierAboveNyquist { fc, nyquist })
    } else {
        Ok(())
    }
}

fn upconvert(z: &SampledSignal, fc: f64) -> RealSignal {
    z.map_indexed(|w, v| v * cis_2pi(fc * w)).re()
}

/// `Re{la(x, m) e^{j 2 pi fc w}}` on the LCT grid.
///
/// The carrier plus the one-sided bandwidth of `la(x, m)` must stay below
/// the Nyquist rate of that grid; only the carrier itself is checked.
pub fn ssb_modulate(x: &RealSignal, key: &SsbKey) -> Result<RealSignal> {
    let l = la(x, &key.m)?;
    check_carrier(l.grid(), key.fc)?;
    Ok(upconvert(&l, key.fc))
}

/// Same output as [`ssb_modulate`], starting from `L_m[x]` and using
/// `lhl-inv` in place of the time-domain Hilbert step.
pub fn ssb_modulate_from_lct(lx: &SampledSignal, key: &SsbKey) -> Result<RealSignal> {
    check_carrier(lx.grid(), key.fc)?;
    let h = lhl_inv(lx, &key.m)?;
    let z = lx.zip_with(&h, |a, b| a + Complex64::new(-b.im, b.re))?;
    Ok(upconvert(&z, key.fc))
}

/// `Re{ilct(A{s} e^{-j 2 pi fc w}, m)}`.
pub fn ssb_demodulate(s: &RealSignal, key: &SsbKey) -> Result<RealSignal> {
    check_carrier(s.grid(), key.fc)?;
    let z = analytic(s)?.map_indexed(|w, v| v * cis_2pi(-key.fc * w));
    Ok(ilct(&z, &key.m)?.re())
}

/// Relative L2 error of `recovered` against `message`.
///
/// A wrong key with a different `|b|` returns the message on a grid with a
/// different step; it is then sinc-interpolated onto the message grid first.
pub fn ssb_recovery_error(message: &RealSignal, recovered: &RealSignal) -> Result<f64> {
    let target = message.grid();
    let y = if recovered.grid().approx_eq(target) {
        recovered.to_complex()
    } else {
        let r = recovered.to_complex();
        let s = sinc_interpolate(r.grid(), r.samples(), &target.points());
        SampledSignal::new(*target, s)?
    };
    let y = SampledSignal::new(*target, y.into_samples())?;
    relative_l2(&y, &message.to_complex())
}
