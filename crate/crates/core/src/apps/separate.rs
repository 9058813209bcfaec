use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::joint::la;
use crate::lct::ilct;
use crate::signal::{LctParams, RealSignal, SampledSignal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Above,
    Below,
}

/// Vertical cutoff line `w = omega0` in the LCT domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LctCutoff {
    pub omega0: f64,
    pub keep_side: Side,
}

impl LctCutoff {
    pub fn new(omega0: f64, keep_side: Side) -> Result<Self> {
        if !omega0.is_finite() {
            return Err(Error::InvalidArgument("cutoff must be finite".into()));
        }
        Ok(LctCutoff { omega0, keep_side })
    }
}

/// Splits `la(x, m)` at the cutoff and returns `(kept, rest)`.
///
/// Points with `w >= omega0` belong to the upper part, so the two parts
/// always sum to `la(x, m)` exactly.
pub fn separate(x: &RealSignal, m: &LctParams, cut: &LctCutoff) -> Result<(SampledSignal, SampledSignal)> {
    let l = la(x, m)?;
    let zero = Complex64::new(0.0, 0.0);
    let above = l.map_indexed(|w, v| if w >= cut.omega0 { v } else { zero });
    let below = l.map_indexed(|w, v| if w >= cut.omega0 { zero } else { v });
    Ok(match cut.keep_side {
        Side::Above => (above, below),
        Side::Below => (below, above),
    })
}

/// `Re{ilct(part, m)}`.
pub fn recover(part: &SampledSignal, m: &LctParams) -> Result<RealSignal> {
    Ok(ilct(part, m)?.re())
}
