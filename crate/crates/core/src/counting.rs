//! Argument-principle counting, the counting-law main terms, the argument
//! variation `S(t)` and the Ruelle rectangle count.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model_zeta::{Rect, Singularity, SingularityCatalog};
use crate::quadrature::try_panel;
use crate::space_params::{build_space_params, NbarWeight, SigmaData, SpaceParams};

/// Default bound on the phase increment of a single contour panel.
pub const DEFAULT_MAX_PANEL_PHASE: f64 = PI / 2.0;
/// Offset used for the symmetric limit at singular heights.
pub const SYMMETRIC_EPS: f64 = 1e-6;

const WINDING_TOL: f64 = 1e-6;
const PANEL_ABS_TOL: f64 = 1e-10;
const MAX_DEPTH: u32 = 60;
const TRACK_START_PANELS: usize = 8;

fn wrap(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

fn as_panel_limit(e: Error, at: Complex64) -> Error {
    match e {
        Error::OnSingularity(_) => Error::PanelLimit(format!("{at}")),
        other => other,
    }
}

/// `(1/2πi) ∮_{∂rect} f'/f ds` for the logarithmic derivative `logderiv`.
///
/// Each side is bisected until every panel has a phase increment below
/// `max_panel_phase` and a quadrature error below `1e-10`. Panels shorter
/// than `margin / 100` signal a singularity on the contour.
pub fn winding_count<F>(logderiv: F, rect: &Rect, max_panel_phase: f64, margin: f64) -> Result<i64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let corners = rect.corners();
    let perimeter = 2.0 * ((rect.re_max - rect.re_min) + (rect.im_max - rect.im_min));
    let min_len = (margin / 100.0).max(1e-14 * perimeter);
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        let (a, b) = (corners[i], corners[(i + 1) % 4]);
        let mut stack = vec![(a, b, 0u32)];
        while let Some((p, q, depth)) = stack.pop() {
            let (value, err) = try_panel(&logderiv, p, q).map_err(|e| as_panel_limit(e, p))?;
            let len = (q - p).norm();
            let budget = PANEL_ABS_TOL * (len / perimeter).max(1e-6);
            let finite = value.re.is_finite() && value.im.is_finite() && err.is_finite();
            if finite && err <= budget && value.im.abs() < max_panel_phase {
                total += value;
                continue;
            }
            if depth >= MAX_DEPTH || len < min_len {
                return Err(Error::PanelLimit(format!("{}", 0.5 * (p + q))));
            }
            let mid = 0.5 * (p + q);
            stack.push((mid, q, depth + 1));
            stack.push((p, mid, depth + 1));
        }
    }
    let turns = total.im / (2.0 * PI);
    let nearest = turns.round();
    if (turns - nearest).abs() > WINDING_TOL {
        return Err(Error::NonIntegerWinding(total.im));
    }
    Ok(nearest as i64)
}

/// `(K/2π) Σ_k (-1)^{n/2-k} p_{n-2k-1} t^{n-2k}/(n-2k)`.
pub fn n_main_term(t: f64, sigma: &SigmaData, k_const: f64, n: u32) -> f64 {
    let half = (n / 2) as i32;
    let sum: f64 = sigma
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            let m = n as i32 - 2 * k as i32;
            let sign = if (half - k as i32) % 2 == 0 { 1.0 } else { -1.0 };
            sign * p * t.powi(m) / m as f64
        })
        .sum();
    k_const / (2.0 * PI) * sum
}

/// `dim χ · vol Y / (n T vol X_d) · t^n`.
pub fn weyl_leading_term(t: f64, params: &SpaceParams) -> f64 {
    let n = params.n();
    params.dim_chi() as f64 * params.vol_y() / (n as f64 * params.t_norm() * params.vol_xd()) * t.powi(n as i32)
}

/// Continuous phase change of `Im log_z` along the polyline through `points`.
///
/// Every node carries the phase and its directional slope from a short
/// difference; a panel is accepted once both end slopes predict a small
/// increment that agrees with the wrapped difference, which rules out
/// aliasing by whole turns.
fn track_phase<F>(log_z: &F, points: &[Complex64]) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let phase = |z: Complex64| log_z(z).map(|v| v.im).map_err(|e| as_panel_limit(e, z));
    let mut total = 0.0;
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = (b - a).norm();
        if len == 0.0 {
            continue;
        }
        let dir = (b - a) / len;
        let h = 1e-7 * len.min(1.0);
        let node = |x: f64| -> Result<(f64, f64, f64)> {
            let z = a + dir * x;
            let f = phase(z)?;
            let step = if x + h <= len { h } else { -h };
            let slope = wrap(phase(z + dir * step)? - f) / step;
            Ok((x, f, slope))
        };
        let mut stack = Vec::with_capacity(TRACK_START_PANELS);
        let mut right = node(len)?;
        for k in (0..TRACK_START_PANELS).rev() {
            let left = node(len * k as f64 / TRACK_START_PANELS as f64)?;
            stack.push((left, right, 0u32));
            right = left;
        }
        while let Some((p, q, depth)) = stack.pop() {
            let span = q.0 - p.0;
            let step = wrap(q.1 - p.1);
            let predicted = 0.5 * (p.2 + q.2) * span;
            if (p.2 * span).abs() < PI / 4.0 && (q.2 * span).abs() < PI / 4.0 && (step - predicted).abs() < PI / 16.0 {
                total += step;
                continue;
            }
            if depth >= MAX_DEPTH {
                return Err(Error::PanelLimit(format!("{}", a + dir * p.0)));
            }
            let mid = node(0.5 * (p.0 + q.0))?;
            stack.push((mid, q, depth + 1));
            stack.push((p, mid, depth + 1));
        }
    }
    Ok(total)
}

/// Argument variation of `Z` along `a → a+it → it`.
///
/// `log_z` returns any branch of `log Z`; only its imaginary part modulo
/// `2π` is used. When a singularity lies on the path the symmetric limit
/// `½(S(t+ε) + S(t-ε))` is returned.
pub fn argument_variation_s<F>(log_z: F, t: f64, a: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(a > 0.0) {
        return Err(Error::InvalidParameter { key: "a".into(), reason: format!("must be positive, got {a}") });
    }
    let path = |t: f64| [Complex64::new(a, 0.0), Complex64::new(a, t), Complex64::new(0.0, t)];
    match track_phase(&log_z, &path(t)) {
        Err(Error::PanelLimit(_)) => {
            let up = track_phase(&log_z, &path(t + SYMMETRIC_EPS))?;
            let down = track_phase(&log_z, &path(t - SYMMETRIC_EPS))?;
            Ok(0.5 * (up + down))
        }
        other => other,
    }
}

fn catalog_phase_along(cat: &SingularityCatalog, path: &[Complex64]) -> Option<f64> {
    let mut total = 0.0;
    for it in cat.items() {
        let z = it.location();
        for w in path.windows(2) {
            let ratio = (w[1] - z) / (w[0] - z);
            if !ratio.is_finite() || ratio.norm() == 0.0 || (ratio.re <= 0.0 && ratio.im.abs() <= 1e-12 * ratio.norm()) {
                return None;
            }
            total += it.order as f64 * ratio.arg();
        }
    }
    Some(total)
}

/// [`argument_variation_s`] for a catalog model, summed factor by factor
/// from exact arguments.
pub fn catalog_argument_variation(cat: &SingularityCatalog, t: f64, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter { key: "a".into(), reason: format!("must be positive, got {a}") });
    }
    let path = |t: f64| [Complex64::new(a, 0.0), Complex64::new(a, t), Complex64::new(0.0, t)];
    if let Some(v) = catalog_phase_along(cat, &path(t)) {
        return Ok(v);
    }
    match (catalog_phase_along(cat, &path(t + SYMMETRIC_EPS)), catalog_phase_along(cat, &path(t - SYMMETRIC_EPS))) {
        (Some(up), Some(down)) => Ok(0.5 * (up + down)),
        _ => Err(Error::PanelLimit(format!("{}", Complex64::new(a, t)))),
    }
}

/// A Selberg catalog entering the Ruelle factorization with shift `ρ - λ`
/// and sign `(-1)^p`.
#[derive(Debug, Clone)]
pub struct ShiftedCatalog {
    pub catalog: SingularityCatalog,
    pub shift: f64,
    pub sign: i64,
}

/// Composes the shifted catalogs of the Ruelle factorization.
pub fn ruelle_catalog(parts: &[ShiftedCatalog]) -> SingularityCatalog {
    let items: Vec<Singularity> = parts
        .iter()
        .flat_map(|p| p.catalog.shifted(p.shift, p.sign).items().to_vec())
        .collect();
    SingularityCatalog::new(items)
}

/// Signed singularity count of the composed Ruelle catalog in
/// `a <= Re s <= b, 0 < Im s < t`.
///
/// Real parts are compared with a `1e-9` tolerance in favour of the closed
/// rectangle. Items on the real axis are never counted; items within `1e-9`
/// of the lines `Im s = 0` or `Im s = t` otherwise are `BoundaryHit`.
pub fn ruelle_count_rectangle(parts: &[ShiftedCatalog], a: f64, b: f64, t: f64, rho: f64) -> Result<i64> {
    let tol = 1e-9;
    if !(-rho - tol <= a && a <= b && b <= rho + tol) {
        return Err(Error::InvalidParameter {
            key: "a,b".into(),
            reason: format!("need -rho <= a <= b <= rho, got a = {a}, b = {b}, rho = {rho}"),
        });
    }
    if !(t > 0.0) {
        return Err(Error::InvalidParameter { key: "t".into(), reason: format!("must be positive, got {t}") });
    }
    let mut total = 0;
    for it in ruelle_catalog(parts).items() {
        if it.re < a - tol || it.re > b + tol || it.im == 0.0 {
            continue;
        }
        if it.im.abs() <= tol || (it.im - t).abs() <= tol {
            return Err(Error::BoundaryHit(format!("{}", it.location())));
        }
        if it.im > 0.0 && it.im < t {
            total += it.order;
        }
    }
    Ok(total)
}

/// Retries `f(t)` at `t ± 1e-4·T` when it fails numerically.
/// Returns the value and the height actually used.
pub fn with_nudge<T, F>(t: f64, t_norm: f64, f: F) -> Result<(T, f64)>
where
    F: Fn(f64) -> Result<T>,
{
    let first = match f(t) {
        Ok(v) => return Ok((v, t)),
        Err(e) if e.is_numerical() => e,
        Err(e) => return Err(e),
    };
    for shifted in [t + 1e-4 * t_norm, t - 1e-4 * t_norm] {
        if let Ok(v) = f(shifted) {
            return Ok((v, shifted));
        }
    }
    Err(first)
}

/// `(exponent, constant)` of a least-squares fit `|v| ≈ constant · t^exponent`
/// over the points with `t > 0`, `v ≠ 0`.
pub fn fit_power_law(ts: &[f64], vs: &[f64]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = ts
        .iter()
        .zip(vs)
        .filter(|(t, v)| **t > 0.0 && v.abs() > 0.0 && v.is_finite())
        .map(|(t, v)| (t.ln(), v.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((slope, (my - slope * mx).exp()))
}

/// Smallest `C` with `|v| <= C·g(t)` on the sample.
pub fn envelope_constant<G: Fn(f64) -> f64>(ts: &[f64], vs: &[f64], g: G) -> f64 {
    ts.iter()
        .zip(vs)
        .filter(|(t, _)| g(**t) > 0.0)
        .map(|(t, v)| v.abs() / g(*t))
        .fold(0.0, f64::max)
}

/// Eigenvalues placed at the half-integer quantiles of the main term:
/// `s_j` solves `n_main(s_j) = j - 1/2`, for all `s_j <= t_max`.
pub fn weyl_quantile_eigs(sigma: &SigmaData, k_const: f64, n: u32, t_max: f64) -> Vec<(f64, u32)> {
    let main = |s: f64| n_main_term(s, sigma, k_const, n);
    let mut out = Vec::new();
    let mut lo = 0.0;
    let step = t_max / 4096.0;
    let mut j = 1u32;
    loop {
        let target = j as f64 - 0.5;
        let mut hi = lo;
        while main(hi) < target {
            hi += step;
            if hi > t_max {
                return out;
            }
        }
        let (mut a, mut b) = ((hi - step).max(lo), hi);
        for _ in 0..80 {
            let m = 0.5 * (a + b);
            if main(m) < target {
                a = m;
            } else {
                b = m;
            }
        }
        out.push((b, 1));
        lo = b;
        j += 1;
    }
}

/// A random valid parameter set: `n ∈ {2,4,6,8}`, a long root `T` and
/// possibly a short root `T/2`, `rho` the half-sum.
pub fn random_space_params<R: Rng>(rng: &mut R) -> SpaceParams {
    let n = 2 * rng.gen_range(1..=4u32);
    let t_norm = rng.gen_range(0.25..4.0);
    let mut weights = vec![NbarWeight::new(t_norm, rng.gen_range(1..=8))];
    if rng.gen_bool(0.5) {
        weights.push(NbarWeight::new(0.5 * t_norm, rng.gen_range(1..=8)));
    }
    let rho = 0.5 * weights.iter().map(|w| w.mult as f64 * w.weight).sum::<f64>();
    let vol_y = rng.gen_range(0.1..100.0);
    let vol_xd = rng.gen_range(0.1..100.0);
    let dim_chi = rng.gen_range(1..=6);
    build_space_params(n, t_norm, rho, vol_y, vol_xd, dim_chi, &weights).expect("generated parameters are valid")
}

/// Relative gap between `(K/2π)(-1)^{n/2}/n` and the Weyl leading coefficient.
pub fn leading_coefficient_error(params: &SpaceParams) -> f64 {
    let n = params.n();
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let lhs = params.k_const() / (2.0 * PI) * sign / n as f64;
    let rhs = weyl_leading_term(1.0, params);
    ((lhs - rhs) / rhs).abs()
}

/// Largest [`leading_coefficient_error`] over `trials` random parameter sets.
pub fn leading_coefficient_suite(trials: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| leading_coefficient_error(&random_space_params(&mut rng))).fold(0.0, f64::max)
}
