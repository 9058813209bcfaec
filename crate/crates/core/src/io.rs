//! Signal CSV, matrix JSON and TFD CSV files.
//!
//! Signal files have a `t,re,im` header (`im` may be omitted for real
//! signals) and a uniform, increasing `t` column. Numbers are written with
//! 17 significant digits so every finite double survives a round trip.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::apps::TfdMatrix;
use crate::error::{Error, Result};
use crate::signal::{Grid, LctParams, RealSignal, SampledSignal};

/// Relative tolerance on the step of the `t` column.
pub const STEP_TOL: f64 = 1e-9;

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_num(s: &str, line: usize) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("line {line}: cannot parse {s:?} as a number")))
}

/// Recovers a grid whose `at(i)` reproduces `t` exactly when possible.
fn grid_from_times(t: &[f64]) -> Result<Grid> {
    let n = t.len();
    if n == 0 {
        return Err(Error::Parse("no samples".into()));
    }
    if n == 1 {
        return Grid::new(t[0], 1.0, 1);
    }
    let dt = (t[n - 1] - t[0]) / (n - 1) as f64;
    if !(dt > 0.0) {
        return Err(Error::Parse("t must be strictly increasing".into()));
    }
    for (i, w) in t.windows(2).enumerate() {
        let step = w[1] - w[0];
        if step <= 0.0 {
            return Err(Error::Parse(format!("line {}: duplicate or decreasing t", i + 3)));
        }
        if ((step - dt) / dt).abs() > STEP_TOL {
            return Err(Error::Parse(format!("line {}: non-uniform step {step} (expected {dt})", i + 3)));
        }
    }
    // `at(i) = t0 + i dt` rounds twice, so the step behind a written column
    // may sit many ulps away from the average step. Scan that neighbourhood
    // for a step that reproduces every `t` exactly.
    let reproduces = |h: f64| t.iter().enumerate().all(|(i, &ti)| t[0] + i as f64 * h == ti);
    let tmax = t[0].abs().max(t[n - 1].abs());
    let spread = 2.0 * ulp(tmax) / (n - 1) as f64 + 4.0 * ulp(dt);
    let (mut lo, mut hi) = (dt, dt);
    let mut exact = reproduces(dt).then_some(dt);
    for _ in 0..MAX_STEP_CANDIDATES {
        if exact.is_some() || (dt - lo > spread && hi - dt > spread) {
            break;
        }
        lo = lo.next_down();
        hi = hi.next_up();
        exact = [lo, hi].into_iter().find(|&h| reproduces(h));
    }
    Grid::new(t[0], exact.unwrap_or(dt), n)
}

const MAX_STEP_CANDIDATES: usize = 1 << 16;

fn ulp(v: f64) -> f64 {
    let v = v.abs();
    v.next_up() - v
}

/// Parses signal CSV text.
pub fn parse_signal(text: &str) -> Result<SampledSignal> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .iter()
        .map(str::to_ascii_lowercase)
        .collect();
    let has_im = match header.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["t", "re"] => false,
        ["t", "re", "im"] => true,
        _ => return Err(Error::Parse(format!("expected header t,re[,im], found {}", header.join(",")))),
    };
    let (mut t, mut v) = (Vec::new(), Vec::new());
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
        let re = parse_num(&rec[1], line)?;
        let im = if has_im { parse_num(&rec[2], line)? } else { 0.0 };
        t.push(parse_num(&rec[0], line)?);
        v.push(Complex64::new(re, im));
    }
    if let Some(i) = t.iter().zip(&v).position(|(a, b)| !(a.is_finite() && b.re.is_finite() && b.im.is_finite())) {
        return Err(Error::Parse(format!("line {}: non-finite value", i + 2)));
    }
    SampledSignal::new(grid_from_times(&t)?, v)
}

/// Formats a complex signal as `t,re,im` CSV.
pub fn format_signal(x: &SampledSignal) -> String {
    let g = x.grid();
    let mut out = String::from("t,re,im\n");
    for (i, v) in x.samples().iter().enumerate() {
        out += &format!("{},{},{}\n", num(g.at(i)), num(v.re), num(v.im));
    }
    out
}

/// Formats a real signal as `t,re` CSV.
pub fn format_real_signal(x: &RealSignal) -> String {
    let g = x.grid();
    let mut out = String::from("t,re\n");
    for (i, v) in x.samples().iter().enumerate() {
        out += &format!("{},{}\n", num(g.at(i)), num(*v));
    }
    out
}

/// Parses matrix JSON, or the shorthand `rot:<angle>` for a rotation.
pub fn parse_matrix(text: &str) -> Result<LctParams> {
    let text = text.trim();
    if let Some(angle) = text.strip_prefix("rot:") {
        let alpha = angle
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad rotation angle {angle:?}")))?;
        if !alpha.is_finite() {
            return Err(Error::Parse("rotation angle must be finite".into()));
        }
        return Ok(LctParams::rotation(alpha));
    }
    #[derive(serde::Deserialize)]
    struct Raw {
        a: f64,
        b: f64,
        c: f64,
        d: f64,
    }
    let r: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    LctParams::new(r.a, r.b, r.c, r.d)
}

pub fn format_matrix(m: &LctParams) -> String {
    serde_json::to_string_pretty(m).expect("matrix serializes") + "\n"
}

/// TFD as CSV: header `t,<f_0>,...`, then one row per frame.
pub fn format_tfd(tfd: &TfdMatrix) -> String {
    let mut out = String::from("t");
    for f in &tfd.freqs {
        out += ",";
        out += &num(*f);
    }
    out.push('\n');
    for (t, row) in tfd.times.iter().zip(&tfd.magnitudes) {
        out += &num(*t);
        for v in row {
            out += ",";
            out += &num(*v);
        }
        out.push('\n');
    }
    out
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("{} is not a file path", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        Error::Io(e)
    })
}

pub fn read_signal(path: &Path) -> Result<SampledSignal> {
    parse_signal(&fs::read_to_string(path)?)
}

pub fn write_signal(path: &Path, x: &SampledSignal) -> Result<()> {
    write_atomic(path, &format_signal(x))
}

pub fn write_real_signal(path: &Path, x: &RealSignal) -> Result<()> {
    write_atomic(path, &format_real_signal(x))
}

/// Reads a matrix file; `rot:<angle>` is accepted in place of a path.
pub fn read_matrix(spec: &str) -> Result<LctParams> {
    if spec.trim_start().starts_with("rot:") {
        return parse_matrix(spec);
    }
    parse_matrix(&fs::read_to_string(spec)?)
}

pub fn write_matrix(path: &Path, m: &LctParams) -> Result<()> {
    write_atomic(path, &format_matrix(m))
}

pub fn write_tfd(path: &Path, tfd: &TfdMatrix) -> Result<()> {
    write_atomic(path, &format_tfd(tfd))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonuniform_and_duplicate_steps() {
        assert!(parse_signal("t,re\n0,1\n1,2\n2.5,3\n").unwrap_err().is_parse());
        assert!(parse_signal("t,re\n0,1\n0,2\n").unwrap_err().is_parse());
        assert!(parse_signal("t,re,im\n0,1\n").is_err());
        assert!(parse_signal("x,y\n0,1\n").unwrap_err().is_parse());
    }

    #[test]
    fn real_file_has_zero_imaginary_part() {
        let x = parse_signal("t,re\n-1,1\n-0.5,2\n0,3\n").unwrap();
        assert_eq!(x.grid().dt(), 0.5);
        assert!(x.samples().iter().all(|v| v.im == 0.0));
    }

    #[test]
    fn matrix_shorthand_and_det_check() {
        let m = parse_matrix("rot:0.6").unwrap();
        assert!((m.a() - 0.6f64.cos()).abs() < 1e-15);
        assert!(parse_matrix(r#"{"a":1,"b":1,"c":1,"d":1}"#).is_err());
        assert!(parse_matrix("{").unwrap_err().is_parse());
        let m = LctParams::new(0.8, 1.2, -0.4, 0.65).unwrap();
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
    }
}
