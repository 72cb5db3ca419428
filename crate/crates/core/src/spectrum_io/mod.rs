//! Length-spectrum files and the Fuchsian-group spectrum generator.
//!
//! A spectrum file has five header lines `key value` (`version 1`, `rho`,
//! `T`, `l_max`, `growth_const`) followed by records `length mult [trace]`
//! in ascending length order. `#` starts a comment.

pub mod enumerate;
pub mod fuchsian;
pub mod hyperbolic;

use std::fmt::Write as _;

pub use enumerate::{fuchsian_enumerate, EnumerateOptions, Enumeration, Method};
pub use fuchsian::{octagon_generators, FuchsianGroup};
pub use hyperbolic::Mat2;

use crate::error::{Error, Result};
use crate::format::fmt15;
use crate::zeta_eval::{Geodesic, LengthSpectrum};

pub const SPECTRUM_GRAMMAR: &str = "\
spectrum file:
  version 1
  rho <real>
  T <real>
  l_max <real>
  growth_const <real>
  <length> <mult> [<trace>]    one per class length, ascending
  # comment";

pub const GENERATORS_GRAMMAR: &str = "\
generators file:
  <a> <b> <c> <d>    one matrix [[a, b], [c, d]] of determinant 1 per line
  # comment";

/// A spectrum together with the unit system it was written in.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumFile {
    pub rho: f64,
    pub t_norm: f64,
    pub spectrum: LengthSpectrum,
}

fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Parse { line, msg: format!("`{tok}` is not a finite number") })
}

const HEADER_KEYS: [&str; 5] = ["version", "rho", "T", "l_max", "growth_const"];

pub fn parse_spectrum(text: &str) -> Result<SpectrumFile> {
    let mut header = [None; 5];
    let mut records: Vec<(usize, Geodesic)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if let Some(k) = HEADER_KEYS.iter().position(|key| *key == toks[0]) {
            if !records.is_empty() {
                return Err(Error::Parse { line, msg: format!("header key `{}` after records", toks[0]) });
            }
            if toks.len() != 2 {
                return Err(Error::Parse { line, msg: format!("`{}` takes exactly one value", toks[0]) });
            }
            if header[k].is_some() {
                return Err(Error::Parse { line, msg: format!("duplicate key `{}`", toks[0]) });
            }
            header[k] = Some(parse_f64(toks[1], line)?);
            continue;
        }
        if toks.len() < 2 || toks.len() > 3 {
            return Err(Error::Parse { line, msg: "expected `length mult [trace]`".into() });
        }
        let l = parse_f64(toks[0], line)?;
        let mult = toks[1]
            .parse::<u32>()
            .ok()
            .filter(|m| *m > 0)
            .ok_or_else(|| Error::Parse { line, msg: format!("multiplicity `{}` is not a positive integer", toks[1]) })?;
        let trace = toks.get(2).map_or(Ok(1.0), |t| parse_f64(t, line))?;
        if l <= 0.0 {
            return Err(Error::NonPositiveLength(line));
        }
        if records.last().is_some_and(|(_, g)| l < g.l) {
            return Err(Error::UnsortedLengths(line));
        }
        records.push((line, Geodesic { l, mult, trace }));
    }
    let mut vals = [0.0; 5];
    for (k, v) in header.iter().enumerate() {
        vals[k] = v.ok_or_else(|| Error::Parse {
            line: last_line,
            msg: format!("missing header key `{}`", HEADER_KEYS[k]),
        })?;
    }
    if vals[0] != 1.0 {
        return Err(Error::Parse { line: 1, msg: format!("unsupported version {}", vals[0]) });
    }
    let [_, rho, t_norm, l_max, growth_const] = vals;
    if let Some((line, g)) = records.iter().find(|(_, g)| g.l > l_max * (1.0 + 1e-12)) {
        return Err(Error::Parse { line: *line, msg: format!("length {} exceeds l_max = {l_max}", g.l) });
    }
    if !(rho > 0.0 && t_norm > 0.0) {
        return Err(Error::Parse { line: 1, msg: "rho and T must be positive".into() });
    }
    let spectrum = LengthSpectrum::new(records.into_iter().map(|(_, g)| g).collect(), l_max, growth_const)?;
    Ok(SpectrumFile { rho, t_norm, spectrum })
}

/// Canonical text: fixed header order, one record per line, 15 significant
/// digits, trace omitted when it is 1.
pub fn write_spectrum(file: &SpectrumFile) -> String {
    let s = &file.spectrum;
    let mut out = String::new();
    writeln!(out, "version 1").unwrap();
    writeln!(out, "rho {}", fmt15(file.rho)).unwrap();
    writeln!(out, "T {}", fmt15(file.t_norm)).unwrap();
    writeln!(out, "l_max {}", fmt15(s.l_max())).unwrap();
    writeln!(out, "growth_const {}", fmt15(s.growth_const())).unwrap();
    for g in s.entries() {
        let trace = fmt15(g.trace);
        if trace == "1" {
            writeln!(out, "{} {}", fmt15(g.l), g.mult).unwrap();
        } else {
            writeln!(out, "{} {} {trace}", fmt15(g.l), g.mult).unwrap();
        }
    }
    out
}

pub fn parse_generators(text: &str) -> Result<Vec<Mat2>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let vals = body.split_whitespace().map(|t| parse_f64(t, idx + 1)).collect::<Result<Vec<_>>>()?;
        let [a, b, c, d] = vals[..] else {
            return Err(Error::Parse { line: idx + 1, msg: format!("expected 4 numbers, got {}", vals.len()) });
        };
        let m = Mat2::new(a, b, c, d);
        if (m.det() - 1.0).abs() > 1e-9 {
            return Err(Error::Parse { line: idx + 1, msg: format!("determinant {} is not 1", m.det()) });
        }
        out.push(m);
    }
    if out.is_empty() {
        return Err(Error::Parse { line: 0, msg: "no generators".into() });
    }
    Ok(out)
}

pub fn write_generators(gens: &[Mat2]) -> String {
    gens.iter()
        .map(|g| format!("{:.17e} {:.17e} {:.17e} {:.17e}\n", g.a, g.b, g.c, g.d))
        .collect()
}
