//! Truncated Euler products for `log Z_S(s, σ)` and `log Z_R(s, σ)` in their
//! convergence half-planes, and the Ruelle-from-Selberg factorization.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::space_params::SpaceParams;

/// Hook name for the trivial `τ`: the class traces are used as they are.
pub const TRIVIAL_HOOK: &str = "triv";

const CHUNK: usize = 512;

/// One primitive conjugacy class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    pub l: f64,
    pub mult: u32,
    pub trace: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LengthSpectrum {
    entries: Vec<Geodesic>,
    l_max: f64,
    growth_const: f64,
    columns: BTreeMap<String, Vec<f64>>,
}

impl LengthSpectrum {
    pub fn new(entries: Vec<Geodesic>, l_max: f64, growth_const: f64) -> Result<Self> {
        if !(l_max > 0.0 && l_max.is_finite()) {
            return Err(Error::InvalidParameter {
                key: "l_max".into(),
                reason: format!("must be positive, got {l_max}"),
            });
        }
        if !(growth_const > 0.0 && growth_const.is_finite()) {
            return Err(Error::InvalidParameter {
                key: "growth_const".into(),
                reason: format!("must be positive, got {growth_const}"),
            });
        }
        for (i, g) in entries.iter().enumerate() {
            if !(g.l > 0.0 && g.l.is_finite()) {
                return Err(Error::NonPositiveLength(i + 1));
            }
            if i > 0 && g.l < entries[i - 1].l {
                return Err(Error::UnsortedLengths(i + 1));
            }
            if g.mult == 0 || !g.trace.is_finite() {
                return Err(Error::InvalidParameter {
                    key: "entries".into(),
                    reason: format!("entry {} needs mult >= 1 and a finite trace", i + 1),
                });
            }
            if g.l > l_max * (1.0 + 1e-12) {
                return Err(Error::InvalidParameter {
                    key: "l_max".into(),
                    reason: format!("entry {} has length {} > l_max = {l_max}", i + 1, g.l),
                });
            }
        }
        Ok(Self { entries, l_max, growth_const, columns: BTreeMap::new() })
    }

    pub fn empty(l_max: f64, growth_const: f64) -> Result<Self> {
        Self::new(Vec::new(), l_max, growth_const)
    }

    /// Registers a per-class trace column for a non-trivial `τ` hook.
    pub fn with_trace_column(mut self, hook: &str, traces: Vec<f64>) -> Result<Self> {
        if traces.len() != self.entries.len() {
            return Err(Error::WrongLength { expected: self.entries.len(), got: traces.len() });
        }
        self.columns.insert(hook.to_string(), traces);
        Ok(self)
    }

    pub fn entries(&self) -> &[Geodesic] {
        &self.entries
    }
    pub fn l_max(&self) -> f64 {
        self.l_max
    }
    pub fn growth_const(&self) -> f64 {
        self.growth_const
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Keeps the classes with `l <= l_max` and lowers the cutoff.
    pub fn truncated(&self, l_max: f64) -> Result<Self> {
        let keep = self.entries.partition_point(|g| g.l <= l_max);
        let mut out = Self::new(self.entries[..keep].to_vec(), l_max.min(self.l_max), self.growth_const)?;
        for (k, v) in &self.columns {
            out.columns.insert(k.clone(), v[..keep].to_vec());
        }
        Ok(out)
    }

    fn traces(&self, hook: &str) -> Result<Vec<f64>> {
        if hook == TRIVIAL_HOOK {
            return Ok(self.entries.iter().map(|g| g.trace).collect());
        }
        self.columns
            .get(hook)
            .cloned()
            .ok_or_else(|| Error::UnknownTauHook(hook.to_string()))
    }

    fn max_abs_trace(&self) -> f64 {
        self.entries.iter().map(|g| g.trace.abs()).fold(1.0, f64::max)
    }
}

/// One scalar line `(τ hook, λ)` of `Λ^p n_ℂ`.
#[derive(Debug, Clone, PartialEq)]
pub struct IpRow {
    pub hook: String,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IpTable {
    rows: Vec<Vec<IpRow>>,
}

impl IpTable {
    /// `rows[p]` lists the lines of degree `p`; there must be `n` degrees and
    /// `2^{n-1}` lines in total, each with `ρ - λ ∈ [-ρ, ρ]`.
    pub fn new(rows: Vec<Vec<IpRow>>, params: &SpaceParams) -> Result<Self> {
        let n = params.n() as usize;
        if rows.len() != n {
            return Err(Error::WrongLength { expected: n, got: rows.len() });
        }
        let expected = 1usize << (n - 1);
        let got: usize = rows.iter().map(Vec::len).sum();
        if got != expected {
            return Err(Error::IpCountMismatch { expected, got });
        }
        let rho = params.rho();
        for row in rows.iter().flatten() {
            let shift = rho - row.lambda;
            if shift.abs() > rho * (1.0 + 1e-12) || !shift.is_finite() {
                return Err(Error::ShiftOutOfRange { shift, rho });
            }
        }
        Ok(Self { rows })
    }

    /// For every `n̄` weight taken with multiplicity, `Λ^p` lines carry the
    /// sums of `p` distinct weights; all `τ` hooks are trivial.
    pub fn scalar_exterior(params: &SpaceParams) -> Result<Self> {
        let lines: Vec<f64> = params
            .weights_nbar()
            .iter()
            .flat_map(|w| std::iter::repeat(w.weight).take(w.mult as usize))
            .collect();
        let mut rows = vec![Vec::new(); params.n() as usize];
        for mask in 0u64..(1u64 << lines.len()) {
            let p = mask.count_ones() as usize;
            let lambda = (0..lines.len()).filter(|i| mask >> i & 1 == 1).map(|i| lines[i]).sum();
            rows[p].push(IpRow { hook: TRIVIAL_HOOK.into(), lambda });
        }
        Self::new(rows, params)
    }

    /// Parses `p hook lambda` lines.
    pub fn parse(text: &str, params: &SpaceParams) -> Result<Self> {
        let mut rows = vec![Vec::new(); params.n() as usize];
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: idx + 1, msg };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(err(format!("expected `p hook lambda`, got `{line}`")));
            }
            let p: usize = parts[0].parse().map_err(|_| err(format!("bad degree `{}`", parts[0])))?;
            let lambda: f64 = parts[2].parse().map_err(|_| err(format!("bad lambda `{}`", parts[2])))?;
            if p >= rows.len() {
                return Err(err(format!("degree {p} exceeds n - 1")));
            }
            rows[p].push(IpRow { hook: parts[1].to_string(), lambda });
        }
        Self::new(rows, params)
    }

    pub fn rows(&self) -> &[Vec<IpRow>] {
        &self.rows
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub k_max: usize,
    /// Fail with `TailTooLarge` when the tail bound exceeds `threshold`.
    pub strict: bool,
    pub threshold: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { k_max: 60, strict: true, threshold: 1e-6 }
    }
}

impl EvalOptions {
    pub fn lenient(k_max: usize) -> Self {
        Self { k_max, strict: false, ..Self::default() }
    }
}

/// `sym[k]` lists `(μ, count)` for the weights of `S^k(n̄)`.
pub fn symmetric_power_weights(params: &SpaceParams, k_max: usize) -> Vec<Vec<(f64, f64)>> {
    // Weights are positive multiples of a common unit; work in integer units.
    let unit = params.min_weight() / 2.0;
    let types: Vec<(usize, u32)> = params
        .weights_nbar()
        .iter()
        .map(|w| ((w.weight / unit).round() as usize, w.mult))
        .collect();
    let max_units = types.iter().map(|t| t.0).max().unwrap_or(1) * k_max;
    // table[k][u] = number of monomials of degree k and total weight u·unit.
    let mut table = vec![vec![0.0_f64; max_units + 1]; k_max + 1];
    table[0][0] = 1.0;
    for &(c, m) in &types {
        for _ in 0..m {
            // One more basis vector of weight c: table'[k][u] = Σ_j table[k-j][u-jc].
            let mut next = table.clone();
            for k in 1..=k_max {
                for u in c..=max_units {
                    next[k][u] += next[k - 1][u - c];
                }
            }
            table = next;
        }
    }
    table
        .into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .filter(|(_, cnt)| *cnt > 0.0)
                .map(|(u, cnt)| (u as f64 * unit, cnt))
                .collect()
        })
        .collect()
}

/// `log(1 - x)` with full relative accuracy for small `|x|`.
fn log_one_minus(x: Complex64) -> Complex64 {
    let re = -x.re;
    let im = -x.im;
    let modulus = 0.5 * (2.0 * re + re * re + im * im).ln_1p();
    Complex64::new(modulus, im.atan2(1.0 + re))
}

fn deterministic_sum<F>(n: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let starts: Vec<usize> = (0..n).step_by(CHUNK).collect();
    let partial: Vec<Complex64> = starts
        .par_iter()
        .map(|&a| (a..(a + CHUNK).min(n)).map(&f).sum())
        .collect();
    partial.into_iter().sum()
}

fn selberg_sum(
    s: Complex64,
    spec: &LengthSpectrum,
    traces: &[f64],
    params: &SpaceParams,
    sym: &[Vec<(f64, f64)>],
) -> Complex64 {
    let base = s + params.rho();
    let w_min = params.min_weight();
    deterministic_sum(spec.len(), |i| {
        let g = spec.entries[i];
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, line) in sym.iter().enumerate() {
            let lead = (-(base.re + k as f64 * w_min) * g.l).exp() * traces[i].abs();
            if lead < 1e-300 {
                break;
            }
            for &(mu, count) in line {
                let x = (-(base + mu) * g.l).exp() * traces[i];
                acc += log_one_minus(x) * count;
            }
        }
        acc * g.mult as f64
    })
}

fn check_half_plane(s: Complex64, bound: f64) -> Result<()> {
    if s.re > bound {
        Ok(())
    } else {
        Err(Error::OutsideHalfPlane { re: s.re, bound })
    }
}

fn check_tail(bound: f64, opts: &EvalOptions) -> Result<()> {
    if opts.strict && bound > opts.threshold {
        Err(Error::TailTooLarge { bound, threshold: opts.threshold })
    } else {
        Ok(())
    }
}

/// `Σ_γ Σ_{k<=k_max} Σ_μ log(1 - tr(γ) e^{-(s+ρ+μ) l(γ)})` for `Re s > ρ`.
pub fn selberg_log_product(
    s: Complex64,
    spec: &LengthSpectrum,
    params: &SpaceParams,
    opts: &EvalOptions,
) -> Result<Complex64> {
    check_half_plane(s, params.rho())?;
    check_tail(selberg_tail(s.re, spec, params, opts.k_max), opts)?;
    let sym = symmetric_power_weights(params, opts.k_max);
    Ok(selberg_sum(s, spec, &spec.traces(TRIVIAL_HOOK)?, params, &sym))
}

/// `(-1)^{n-1} Σ_γ log(1 - tr(γ) e^{-s l(γ)})` for `Re s > 2ρ`.
pub fn ruelle_log_direct(
    s: Complex64,
    spec: &LengthSpectrum,
    params: &SpaceParams,
    opts: &EvalOptions,
) -> Result<Complex64> {
    check_half_plane(s, 2.0 * params.rho())?;
    check_tail(ruelle_tail_bound(s, spec, params), opts)?;
    let sign = if params.n() % 2 == 1 { 1.0 } else { -1.0 };
    let sum = deterministic_sum(spec.len(), |i| {
        let g = spec.entries[i];
        log_one_minus((-s * g.l).exp() * g.trace) * g.mult as f64
    });
    Ok(sum * sign)
}

/// `Σ_p (-1)^p Σ_{(τ,λ) ∈ I_p} log Z_S(s + ρ - λ, τ ⊗ σ)` for `Re s > 2ρ`.
pub fn ruelle_log_factored(
    s: Complex64,
    spec: &LengthSpectrum,
    params: &SpaceParams,
    ip: &IpTable,
    opts: &EvalOptions,
) -> Result<Complex64> {
    check_half_plane(s, 2.0 * params.rho())?;
    check_tail(ruelle_factored_tail_bound(s, spec, params, ip, opts.k_max), opts)?;
    let sym = symmetric_power_weights(params, opts.k_max);
    let mut total = Complex64::new(0.0, 0.0);
    for (p, row) in ip.rows().iter().enumerate() {
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        for line in row {
            let traces = spec.traces(&line.hook)?;
            let shifted = s + params.rho() - line.lambda;
            total += selberg_sum(shifted, spec, &traces, params, &sym) * sign;
        }
    }
    Ok(total)
}

/// Bound on `Σ_{l > l_max} e^{-a l}` from `#{l <= x} <= C e^{2ρx}`.
fn class_tail(a: f64, spec: &LengthSpectrum, rho: f64) -> f64 {
    let excess = a - 2.0 * rho;
    if excess <= 0.0 {
        return f64::INFINITY;
    }
    a * spec.growth_const * (-excess * spec.l_max).exp() / excess
}

/// Largest `|x|` over omitted factors when the shortest length is `l_min`.
fn lead_factor(re: f64, l: f64) -> f64 {
    (-re * l).exp()
}

fn shortest(spec: &LengthSpectrum) -> f64 {
    spec.entries.first().map_or(spec.l_max, |g| g.l.min(spec.l_max))
}

/// `Σ_{k > k_max} C(k+d-1, d-1) q^k`.
fn sym_tail(q: f64, d: u32, k_max: usize) -> f64 {
    if q >= 1.0 {
        return f64::INFINITY;
    }
    let d = d.max(1);
    let mut k = (k_max + 1) as f64;
    let ln_binom: f64 = (1..d).map(|i| ((k + i as f64) / i as f64).ln()).sum();
    let d = d as f64;
    let mut term = (ln_binom + k * q.ln()).exp();
    let mut total = 0.0;
    loop {
        total += term;
        let ratio = (k + d) / (k + 1.0) * q;
        if ratio < 0.5 {
            return total + term * ratio / (1.0 - ratio);
        }
        term *= ratio;
        k += 1.0;
        if term < 1e-30 * total || k > 1e7 {
            return total;
        }
    }
}

/// Upper bound on the omitted mass of [`selberg_log_product`]: classes beyond
/// `l_max` plus symmetric powers beyond `k_max` of the listed classes.
pub fn truncation_tail_bound(s: Complex64, spec: &LengthSpectrum, params: &SpaceParams, k_max: usize) -> f64 {
    selberg_tail(s.re, spec, params, k_max)
}

fn selberg_tail(re: f64, spec: &LengthSpectrum, params: &SpaceParams, k_max: usize) -> f64 {
    let rho = params.rho();
    let a = re + rho;
    let w = params.min_weight();
    let d = params.nbar_dim();
    let tr = spec.max_abs_trace();
    let x0 = tr * lead_factor(a, shortest(spec));
    if x0 >= 1.0 {
        return f64::INFINITY;
    }
    let sym_all = (1.0 - (-w * spec.l_max).exp()).powi(-(d as i32));
    let classes = tr * class_tail(a, spec, rho) * sym_all;
    let listed: f64 = spec
        .entries
        .iter()
        .map(|g| g.mult as f64 * g.trace.abs() * lead_factor(a, g.l) * sym_tail((-w * g.l).exp(), d, k_max))
        .sum();
    (classes + listed) / (1.0 - x0)
}

/// Upper bound on the omitted mass of [`ruelle_log_direct`].
pub fn ruelle_tail_bound(s: Complex64, spec: &LengthSpectrum, params: &SpaceParams) -> f64 {
    let tr = spec.max_abs_trace();
    let x0 = tr * lead_factor(s.re, shortest(spec));
    if x0 >= 1.0 {
        return f64::INFINITY;
    }
    tr * class_tail(s.re, spec, params.rho()) / (1.0 - x0)
}

/// Sum of the Selberg tail bounds over every shifted factor of the
/// factorization.
pub fn ruelle_factored_tail_bound(
    s: Complex64,
    spec: &LengthSpectrum,
    params: &SpaceParams,
    ip: &IpTable,
    k_max: usize,
) -> f64 {
    ip.rows()
        .iter()
        .flatten()
        .map(|line| selberg_tail(s.re + params.rho() - line.lambda, spec, params, k_max))
        .sum()
}
