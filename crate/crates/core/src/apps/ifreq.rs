use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{LctParams, SampledSignal};

/// Samples below this fraction of the peak magnitude are marked invalid.
pub const IF_GATE: f64 = 0.05;

/// One instantaneous-frequency sample, in the LCT domain and mapped back.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IfPoint {
    pub omega: f64,
    pub nu: f64,
    pub t: f64,
    pub f: f64,
    pub valid: bool,
}

/// Instantaneous frequency of an LCT-domain analytic signal, mapped back to
/// the time-frequency plane.
///
/// `nu(w) = (1/2pi) d/dw arg L(w)` is taken from central phase differences
/// and `(w, nu)` is mapped through `(d, -b; -c, a)` to `(t, f)`. The result
/// follows the instantaneous frequency of the original signal only when the
/// m-domain signal has a large time-bandwidth product and a monotonic
/// instantaneous frequency; checking that is left to the caller.
pub fn if_estimate(lxa: &SampledSignal, m: &LctParams) -> Result<Vec<IfPoint>> {
    if m.b_is_zero() {
        return Err(Error::DegenerateParameter("IF estimation needs b != 0"));
    }
    let n = lxa.len();
    if n < 3 {
        return Err(Error::InvalidArgument("need at least three samples".into()));
    }
    let g = lxa.grid();
    let s = lxa.samples();
    let peak = lxa.max_abs();
    if peak == 0.0 {
        return Err(Error::ZeroEnergy);
    }
    let points = (0..n)
        .map(|i| {
            let (lo, hi) = (i.saturating_sub(1), (i + 1).min(n - 1));
            let dphi = (s[hi] * s[lo].conj()).arg();
            let nu = dphi / (2.0 * PI * (hi - lo) as f64 * g.dt());
            let omega = g.at(i);
            let valid = s[i].norm() >= IF_GATE * peak
                && s[lo].norm() >= IF_GATE * peak
                && s[hi].norm() >= IF_GATE * peak;
            IfPoint {
                omega,
                nu,
                t: m.d() * omega - m.b() * nu,
                f: -m.c() * omega + m.a() * nu,
                valid,
            }
        })
        .collect();
    Ok(points)
}
