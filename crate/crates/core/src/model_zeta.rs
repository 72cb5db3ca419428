//! Rational model functions `∏ (s - z)^{order}` carrying the singularity
//! pattern of the Selberg zeta function, built from finite spectral data.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::sigma_poly::eval_p_real;
use crate::space_params::{Epsilon, SigmaData};

const MERGE_TOL: f64 = 1e-12;
const ORDER_TOL: f64 = 1e-9;
const BOUNDARY_TOL: f64 = 1e-9;

/// Rounds to an integer, failing when the value is not within `1e-9` of one.
pub fn integer_order(x: f64) -> Result<i64> {
    let r = x.round();
    if (x - r).abs() <= ORDER_TOL * x.abs().max(1.0) && r.is_finite() {
        Ok(r as i64)
    } else {
        Err(Error::NonIntegerOrder(x))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpectrum {
    /// `(s_j, m_j)` with `s_j > 0`.
    pub ay_eigs: Vec<(f64, u32)>,
    /// Multiplicity of the eigenvalue `0`; zero means it is absent.
    pub zero_mult: u32,
    pub lattice_cutoff: usize,
    pub q: i64,
}

impl ModelSpectrum {
    /// Entries with `s_j = 0` are folded into `zero_mult`; `q` must be integral.
    pub fn new(ay_eigs: Vec<(f64, u32)>, zero_mult: u32, lattice_cutoff: usize, q: f64) -> Result<Self> {
        let q = integer_order(q)?;
        let mut zero_mult = zero_mult;
        let mut eigs = Vec::with_capacity(ay_eigs.len());
        for (s, m) in ay_eigs {
            if !(s >= 0.0 && s.is_finite()) || m == 0 {
                return Err(Error::InvalidParameter {
                    key: "ay_eigs".into(),
                    reason: format!("need s >= 0 and m >= 1, got ({s}, {m})"),
                });
            }
            if s == 0.0 {
                zero_mult += m;
            } else {
                eigs.push((s, m));
            }
        }
        Ok(Self { ay_eigs: eigs, zero_mult, lattice_cutoff, q })
    }

    pub fn include_zero(&self) -> bool {
        self.zero_mult > 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Singularity {
    pub re: f64,
    pub im: f64,
    /// Positive for zeros, negative for poles.
    pub order: i64,
}

impl Singularity {
    pub fn new(z: Complex64, order: i64) -> Self {
        Self { re: z.re, im: z.im, order }
    }
    pub fn location(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SingularityCatalog {
    items: Vec<Singularity>,
}

impl SingularityCatalog {
    /// Merges coinciding locations (orders add) and drops zero orders.
    pub fn new(items: Vec<Singularity>) -> Self {
        let mut items = items;
        items.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let mut merged: Vec<Singularity> = Vec::with_capacity(items.len());
        for it in items {
            let z = it.location();
            match merged
                .iter_mut()
                .rev()
                .take_while(|m| it.re - m.re <= MERGE_TOL * z.norm().max(1.0))
                .find(|m| (m.location() - z).norm() <= MERGE_TOL * z.norm().max(1.0))
            {
                Some(m) => m.order += it.order,
                None => merged.push(it),
            }
        }
        merged.retain(|m| m.order != 0);
        Self { items: merged }
    }

    pub fn items(&self) -> &[Singularity] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Union of two catalogs with merging.
    pub fn merged_with(&self, other: &SingularityCatalog) -> Self {
        Self::new(self.items.iter().chain(other.items.iter()).copied().collect())
    }

    /// Every item moved by `-shift` with its order multiplied by `sign`.
    pub fn shifted(&self, shift: f64, sign: i64) -> Self {
        Self::new(
            self.items
                .iter()
                .map(|it| Singularity { re: it.re - shift, im: it.im, order: it.order * sign })
                .collect(),
        )
    }

    /// One `{"re":..,"im":..,"order":..}` record per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for it in &self.items {
            let _ = writeln!(out, "{}", serde_json::to_string(it).expect("plain struct serializes"));
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut items = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let it: Singularity = serde_json::from_str(line)
                .map_err(|e| Error::Parse { line: idx + 1, msg: e.to_string() })?;
            items.push(it);
        }
        Ok(Self::new(items))
    }
}

/// The `N`-th positive point of `T(ℕ - ε_σ)`, counting from 1.
pub fn lattice_point(sigma: &SigmaData, t_norm: f64, k: usize) -> f64 {
    match sigma.eps_sigma() {
        Epsilon::Half => t_norm * (k as f64 - 0.5),
        Epsilon::Zero => t_norm * k as f64,
    }
}

/// Spectral items at `±i s_j`, the doubled zero at the origin and the
/// trivial singularities at `-s_k` of order `q P_σ(s_k)`.
pub fn catalog_from_spectra(ms: &ModelSpectrum, sigma: &SigmaData, t_norm: f64) -> Result<SingularityCatalog> {
    let mut items = Vec::new();
    for &(s, m) in &ms.ay_eigs {
        items.push(Singularity::new(Complex64::new(0.0, s), m as i64));
        items.push(Singularity::new(Complex64::new(0.0, -s), m as i64));
    }
    if ms.include_zero() {
        items.push(Singularity::new(Complex64::new(0.0, 0.0), 2 * ms.zero_mult as i64));
    }
    for k in 1..=ms.lattice_cutoff {
        let s = lattice_point(sigma, t_norm, k);
        let order = integer_order(ms.q as f64 * eval_p_real(sigma, s))?;
        items.push(Singularity::new(Complex64::new(-s, 0.0), order));
    }
    Ok(SingularityCatalog::new(items))
}

/// Radius of the disc in which the truncated lattice is complete.
pub fn covered_radius(ms: &ModelSpectrum, sigma: &SigmaData, t_norm: f64) -> f64 {
    lattice_point(sigma, t_norm, ms.lattice_cutoff.max(1))
}

fn nearest(cat: &SingularityCatalog, s: Complex64) -> Result<()> {
    if let Some(it) = cat.items.iter().find(|it| (s - it.location()).norm() <= 1e-12) {
        return Err(Error::OnSingularity(format!("{}", it.location())));
    }
    Ok(())
}

/// `log|Z_model(s)|`; the flag reports that [`model_logderiv`] is available.
pub fn model_eval(cat: &SingularityCatalog, s: Complex64) -> Result<(f64, bool)> {
    nearest(cat, s)?;
    let v = cat.items.iter().map(|it| it.order as f64 * (s - it.location()).norm().ln()).sum();
    Ok((v, true))
}

/// `Z'_model/Z_model(s) = Σ order / (s - z)`.
pub fn model_logderiv(cat: &SingularityCatalog, s: Complex64) -> Result<Complex64> {
    nearest(cat, s)?;
    Ok(cat.items.iter().map(|it| it.order as f64 / (s - it.location())).sum())
}

/// `Σ order · Log(s - z)` with principal logarithms; the imaginary part is
/// a phase defined modulo `2π`.
pub fn model_log(cat: &SingularityCatalog, s: Complex64) -> Result<Complex64> {
    nearest(cat, s)?;
    Ok(cat.items.iter().map(|it| (s - it.location()).ln() * it.order as f64).sum())
}

/// Axis-aligned closed rectangle `[re_min, re_max] × [im_min, im_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if !(re_min < re_max && im_min < im_max) || ![re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter {
                key: "rect".into(),
                reason: format!("degenerate rectangle [{re_min}, {re_max}] x [{im_min}, {im_max}]"),
            });
        }
        Ok(Self { re_min, re_max, im_min, im_max })
    }

    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }

    /// Distance from `z` to the boundary, negative outside.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        let inside = (z.re - self.re_min)
            .min(self.re_max - z.re)
            .min(z.im - self.im_min)
            .min(self.im_max - z.im);
        if inside >= 0.0 {
            return inside;
        }
        let dx = (self.re_min - z.re).max(z.re - self.re_max).max(0.0);
        let dy = (self.im_min - z.im).max(z.im - self.im_max).max(0.0);
        -(dx * dx + dy * dy).sqrt()
    }
}

/// Signed order count strictly inside `rect`.
pub fn count_catalog_in_region(cat: &SingularityCatalog, rect: &Rect) -> Result<i64> {
    let mut total = 0;
    for it in &cat.items {
        let d = rect.signed_distance(it.location());
        if d.abs() <= BOUNDARY_TOL {
            return Err(Error::BoundaryHit(format!("{}", it.location())));
        }
        if d > 0.0 {
            total += it.order;
        }
    }
    Ok(total)
}

/// Fails with `RegionNotCovered` unless `rect` lies inside `|s| < s_N`.
pub fn check_region_covered(rect: &Rect, ms: &ModelSpectrum, sigma: &SigmaData, t_norm: f64) -> Result<()> {
    let radius = covered_radius(ms, sigma, t_norm);
    if rect.corners().iter().any(|c| c.norm() >= radius) {
        return Err(Error::RegionNotCovered(radius));
    }
    Ok(())
}

/// On-disk model: the parameter set plus finite spectral data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub config: Config,
    pub ay_eigs: Vec<(f64, u32)>,
    pub zero_mult: u32,
    pub lattice_cutoff: usize,
    pub q: i64,
}

impl ModelFile {
    pub fn new(config: Config, ms: &ModelSpectrum) -> Self {
        Self {
            config,
            ay_eigs: ms.ay_eigs.clone(),
            zero_mult: ms.zero_mult,
            lattice_cutoff: ms.lattice_cutoff,
            q: ms.q,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes") + "\n"
    }

    /// Parses and checks that `q` agrees with the configuration.
    pub fn from_json(text: &str) -> Result<Self> {
        let mf: ModelFile = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let params = mf.config.space_params()?;
        let q = integer_order(params.trivial_order_multiplier())?;
        if q != mf.q {
            return Err(Error::InvalidParameter {
                key: "q".into(),
                reason: format!("file has q = {}, parameters give {q}", mf.q),
            });
        }
        Ok(mf)
    }

    pub fn spectrum(&self) -> Result<ModelSpectrum> {
        ModelSpectrum::new(self.ay_eigs.clone(), self.zero_mult, self.lattice_cutoff, self.q as f64)
    }

    pub fn catalog(&self) -> Result<SingularityCatalog> {
        let sigma = self.config.sigma()?;
        catalog_from_spectra(&self.spectrum()?, &sigma, self.config.t_norm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn h2_sigma() -> SigmaData {
        SigmaData::new(Epsilon::Half, vec![1.0]).unwrap()
    }

    #[test]
    fn genus_two_trivial_singularities() {
        let ms = ModelSpectrum::new(vec![], 0, 3, 2.0).unwrap();
        let cat = catalog_from_spectra(&ms, &h2_sigma(), 2.0).unwrap();
        let got: Vec<(f64, i64)> = cat.items().iter().map(|i| (i.re, i.order)).collect();
        assert_eq!(got, vec![(-5.0, 10), (-3.0, 6), (-1.0, 2)]);
    }

    #[test]
    fn zero_eigenvalue_doubles() {
        let ms = ModelSpectrum::new(vec![(0.0, 1)], 0, 0, 2.0).unwrap();
        let cat = catalog_from_spectra(&ms, &h2_sigma(), 2.0).unwrap();
        assert_eq!(cat.items(), &[Singularity::new(c(0.0, 0.0), 2)]);
    }

    #[test]
    fn coinciding_eigenvalues_merge() {
        let ms = ModelSpectrum::new(vec![(1.0, 1), (1.0, 2)], 0, 0, 2.0).unwrap();
        let cat = catalog_from_spectra(&ms, &h2_sigma(), 2.0).unwrap();
        assert_eq!(cat.items(), &[Singularity::new(c(0.0, -1.0), 3), Singularity::new(c(0.0, 1.0), 3)]);
        let cancel = SingularityCatalog::new(vec![Singularity::new(c(0.5, 0.5), 2), Singularity::new(c(0.5, 0.5), -2)]);
        assert!(cancel.is_empty());
    }

    #[test]
    fn non_integer_orders_are_errors() {
        assert_eq!(ModelSpectrum::new(vec![], 0, 1, 1.5), Err(Error::NonIntegerOrder(1.5)));
        let sigma = SigmaData::new(Epsilon::Half, vec![1.0, 0.3]).unwrap();
        let ms = ModelSpectrum::new(vec![], 0, 2, 2.0).unwrap();
        assert!(matches!(catalog_from_spectra(&ms, &sigma, 1.0), Err(Error::NonIntegerOrder(_))));
    }

    #[test]
    fn evaluation_examples() {
        let cat = SingularityCatalog::new(vec![Singularity::new(c(0.0, 1.0), 1), Singularity::new(c(0.0, -1.0), 1)]);
        let (v, avail) = model_eval(&cat, c(1.0, 0.0)).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-15 && avail);
        let pole = SingularityCatalog::new(vec![Singularity::new(c(-1.0, 0.0), -2)]);
        assert_eq!(model_eval(&pole, c(0.0, 0.0)).unwrap().0, 0.0);
        assert_eq!(model_logderiv(&pole, c(0.0, 0.0)).unwrap(), c(-2.0, 0.0));
        assert!(matches!(model_logderiv(&pole, c(-1.0, 0.0)), Err(Error::OnSingularity(_))));
    }

    #[test]
    fn region_counts() {
        let cat = SingularityCatalog::new(vec![Singularity::new(c(0.0, 1.0), 1), Singularity::new(c(0.0, -1.0), 1)]);
        let r = Rect::new(-2.0, 2.0, 0.5, 2.0).unwrap();
        assert_eq!(count_catalog_in_region(&cat, &r).unwrap(), 1);
        assert_eq!(count_catalog_in_region(&SingularityCatalog::default(), &r).unwrap(), 0);
        let pole = SingularityCatalog::new(vec![Singularity::new(c(0.0, 1.0), -3)]);
        assert_eq!(count_catalog_in_region(&pole, &r).unwrap(), -3);
        let edge = Rect::new(-2.0, 2.0, 1.0, 2.0).unwrap();
        assert!(matches!(count_catalog_in_region(&cat, &edge), Err(Error::BoundaryHit(_))));
    }

    #[test]
    fn coverage_check() {
        let ms = ModelSpectrum::new(vec![], 0, 3, 2.0).unwrap();
        let inside = Rect::new(-3.5, 1.0, 0.1, 3.0).unwrap();
        assert!(check_region_covered(&inside, &ms, &h2_sigma(), 2.0).is_ok());
        let outside = Rect::new(-6.0, 1.0, 0.1, 3.0).unwrap();
        assert_eq!(check_region_covered(&outside, &ms, &h2_sigma(), 2.0), Err(Error::RegionNotCovered(5.0)));
    }

    #[test]
    fn jsonl_round_trip() {
        let ms = ModelSpectrum::new(vec![(1.25, 2), (3.5, 1)], 1, 2, 2.0).unwrap();
        let cat = catalog_from_spectra(&ms, &h2_sigma(), 2.0).unwrap();
        let text = cat.to_jsonl();
        assert!(text.lines().next().unwrap().starts_with("{\"re\":"));
        assert_eq!(SingularityCatalog::from_jsonl(&text).unwrap(), cat);
    }

    #[test]
    fn model_file_round_trip() {
        let cfg = Config::parse(
            "n = 2\nT = 2\nrho = 1\nvol_Y = 4*pi\nvol_Xd = 4*pi\ndim_chi = 1\nweights = 2:1\np_coeffs = 1\n",
        )
        .unwrap();
        let ms = ModelSpectrum::new(vec![(2.5, 1)], 0, 4, 2.0).unwrap();
        let mf = ModelFile::new(cfg, &ms);
        let back = ModelFile::from_json(&mf.to_json()).unwrap();
        assert_eq!(back, mf);
        assert_eq!(back.catalog().unwrap().items().len(), 6);
        let mut wrong = mf.clone();
        wrong.q = 3;
        assert!(ModelFile::from_json(&wrong.to_json()).is_err());
    }
}
