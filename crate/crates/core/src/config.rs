//! Flat `key = value` configuration files.
//!
//! ```text
//! # genus-2 surface, trivial σ and χ
//! n = 2
//! T = 2
//! rho = 1
//! vol_Y = 4*pi
//! vol_Xd = 4*pi
//! dim_chi = 1
//! eps_alpha = 0
//! weights = 2:1
//! p_coeffs = 1
//! ```
//!
//! Real values accept a trailing `*pi` (or a bare `pi`) for convenience.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space_params::{
    build_space_params, epsilon_sigma, Epsilon, NbarWeight, SigmaData, SpaceParams,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub n: u32,
    #[serde(rename = "T")]
    pub t_norm: f64,
    pub rho: f64,
    #[serde(rename = "vol_Y")]
    pub vol_y: f64,
    #[serde(rename = "vol_Xd")]
    pub vol_xd: f64,
    pub dim_chi: u32,
    pub eps_alpha: f64,
    /// `(weight, mult)` pairs.
    pub weights: Vec<(f64, u32)>,
    /// `[p_{n-1}, ..., p_1]`.
    pub p_coeffs: Vec<f64>,
}

const KEYS: [&str; 9] = [
    "n", "T", "rho", "vol_Y", "vol_Xd", "dim_chi", "eps_alpha", "weights", "p_coeffs",
];

fn parse_real(key: &str, raw: &str) -> Result<f64> {
    let bad = || Error::InvalidParameter {
        key: key.to_string(),
        reason: format!("cannot parse `{raw}` as a real number"),
    };
    let s = raw.trim();
    if s == "pi" {
        return Ok(PI);
    }
    let (num, scale) = match s.strip_suffix("pi") {
        Some(head) => (head.trim().trim_end_matches('*').trim(), PI),
        None => (s, 1.0),
    };
    let v: f64 = num.parse().map_err(|_| bad())?;
    let v = v * scale;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn parse_uint(key: &str, raw: &str) -> Result<u32> {
    raw.trim().parse().map_err(|_| Error::InvalidParameter {
        key: key.to_string(),
        reason: format!("cannot parse `{}` as a non-negative integer", raw.trim()),
    })
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map: Vec<(String, String)> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: idx + 1,
                msg: format!("expected `key = value`, got `{line}`"),
            })?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(Error::Parse { line: idx + 1, msg: format!("unknown key `{k}`") });
            }
            if map.iter().any(|(seen, _)| seen == k) {
                return Err(Error::Parse { line: idx + 1, msg: format!("duplicate key `{k}`") });
            }
            map.push((k.to_string(), v.trim().to_string()));
        }
        let get = |k: &str| -> Result<&str> {
            map.iter()
                .find(|(key, _)| key == k)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| Error::ConfigMissing(k.to_string()))
        };

        let weights = get("weights")?
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|item| {
                let (w, m) = item.split_once(':').ok_or_else(|| Error::InvalidParameter {
                    key: "weights".into(),
                    reason: format!("expected `weight:mult`, got `{}`", item.trim()),
                })?;
                Ok((parse_real("weights", w)?, parse_uint("weights", m)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let p_coeffs = get("p_coeffs")?
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|c| parse_real("p_coeffs", c))
            .collect::<Result<Vec<_>>>()?;
        let eps_alpha = match map.iter().find(|(k, _)| k == "eps_alpha") {
            Some((_, v)) if v.trim() == "1/2" => 0.5,
            Some((_, v)) => parse_real("eps_alpha", v)?,
            None => 0.0,
        };

        Ok(Config {
            n: parse_uint("n", get("n")?)?,
            t_norm: parse_real("T", get("T")?)?,
            rho: parse_real("rho", get("rho")?)?,
            vol_y: parse_real("vol_Y", get("vol_Y")?)?,
            vol_xd: parse_real("vol_Xd", get("vol_Xd")?)?,
            dim_chi: parse_uint("dim_chi", get("dim_chi")?)?,
            eps_alpha,
            weights,
            p_coeffs,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn space_params(&self) -> Result<SpaceParams> {
        let weights: Vec<NbarWeight> =
            self.weights.iter().map(|&(w, m)| NbarWeight::new(w, m)).collect();
        build_space_params(
            self.n,
            self.t_norm,
            self.rho,
            self.vol_y,
            self.vol_xd,
            self.dim_chi,
            &weights,
        )
    }

    /// `σ` data with `ε_σ` derived from `rho/T + eps_alpha`.
    pub fn sigma(&self) -> Result<SigmaData> {
        let eps_alpha = Epsilon::from_f64(self.eps_alpha).map_err(|_| Error::InvalidParameter {
            key: "eps_alpha".into(),
            reason: format!("must be 0 or 1/2, got {}", self.eps_alpha),
        })?;
        let eps = epsilon_sigma(self.rho, self.t_norm, eps_alpha)?;
        let expected = (self.n / 2) as usize;
        if self.p_coeffs.len() != expected {
            return Err(Error::InvalidParameter {
                key: "p_coeffs".into(),
                reason: format!("expected n/2 = {expected} coefficients, got {}", self.p_coeffs.len()),
            });
        }
        SigmaData::new(eps, self.p_coeffs.clone()).map_err(|e| match e {
            Error::NotMonic(c) => Error::InvalidParameter {
                key: "p_coeffs".into(),
                reason: format!("leading coefficient must be 1, got {c}"),
            },
            other => other,
        })
    }

    /// Validates both parts and returns them together.
    pub fn validated(&self) -> Result<(SpaceParams, SigmaData)> {
        Ok((self.space_params()?, self.sigma()?))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "T = {}", self.t_norm);
        let _ = writeln!(s, "rho = {}", self.rho);
        let _ = writeln!(s, "vol_Y = {}", self.vol_y);
        let _ = writeln!(s, "vol_Xd = {}", self.vol_xd);
        let _ = writeln!(s, "dim_chi = {}", self.dim_chi);
        let _ = writeln!(s, "eps_alpha = {}", self.eps_alpha);
        let w: Vec<String> = self.weights.iter().map(|(w, m)| format!("{w}:{m}")).collect();
        let _ = writeln!(s, "weights = {}", w.join(","));
        let p: Vec<String> = self.p_coeffs.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "p_coeffs = {}", p.join(","));
        s
    }
}
