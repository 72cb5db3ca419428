//! The odd monic polynomial `P_σ`: heat-coefficient conversion, evaluation,
//! and expansion of the root-datum product.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::space_params::{SigmaData, PARAM_TOL};

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn half_n(n: u32) -> Result<usize> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::DimensionOdd(n));
    }
    Ok((n / 2) as usize)
}

/// `p_{n-2k-1} = 2T c_{-(n/2-k)} / (n/2-k-1)!` for `c = [c_{-n/2}, ..., c_{-1}]`.
///
/// The leading heat coefficient must equal `(n/2-1)!/(2T)`, which is what
/// makes `P_σ` monic.
pub fn poly_from_heat_coeffs(c: &[f64], n: u32, t_norm: f64) -> Result<Vec<f64>> {
    let h = half_n(n)?;
    if c.len() != h {
        return Err(Error::WrongLength { expected: h, got: c.len() });
    }
    let lead = factorial(h as u32 - 1) / (2.0 * t_norm);
    if (c[0] - lead).abs() > PARAM_TOL * lead.abs() {
        return Err(Error::NotMonic(2.0 * t_norm * c[0] / factorial(h as u32 - 1)));
    }
    let mut p: Vec<f64> = c
        .iter()
        .enumerate()
        .map(|(k, &ck)| 2.0 * t_norm * ck / factorial((h - k - 1) as u32))
        .collect();
    p[0] = 1.0;
    Ok(p)
}

/// Inverse of [`poly_from_heat_coeffs`].
pub fn heat_coeffs_from_poly(coeffs: &[f64], n: u32, t_norm: f64) -> Result<Vec<f64>> {
    let h = half_n(n)?;
    if coeffs.len() != h {
        return Err(Error::WrongLength { expected: h, got: coeffs.len() });
    }
    if (coeffs[0] - 1.0).abs() > PARAM_TOL {
        return Err(Error::NotMonic(coeffs[0]));
    }
    Ok(coeffs
        .iter()
        .enumerate()
        .map(|(k, &pk)| pk * factorial((h - k - 1) as u32) / (2.0 * t_norm))
        .collect())
}

/// `Q(w) = P(w)/w`, an even polynomial in `w`.
pub(crate) fn eval_q(coeffs: &[f64], w: Complex64) -> Complex64 {
    let u = w * w;
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c)
}

/// `P_σ(w) = Σ_k p_{n-2k-1} w^{n-2k-1}` by Horner in `w²`.
pub fn eval_p(sigma: &SigmaData, w: Complex64) -> Complex64 {
    w * eval_q(sigma.coeffs(), w)
}

/// Real-argument convenience for [`eval_p`].
pub fn eval_p_real(sigma: &SigmaData, x: f64) -> f64 {
    let u = x * x;
    x * sigma.coeffs().iter().fold(0.0, |acc, &c| acc * u + c)
}

/// One scalar factor `(a λ + b) / d` of the root-datum product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootTerm {
    pub a: f64,
    pub b: f64,
    pub d: f64,
}

/// The product `∏_β (λ + μ_σ + ρ_m, β) / (δ, β)` flattened to scalar factors.
#[derive(Debug, Clone, PartialEq)]
pub struct RootDatum {
    pub terms: Vec<RootTerm>,
}

impl RootDatum {
    pub fn new(terms: Vec<RootTerm>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.d == 0.0 || !t.d.is_finite()) {
            return Err(Error::InvalidParameter {
                key: "d_beta".into(),
                reason: format!("pairing (δ, β) must be nonzero, got {}", t.d),
            });
        }
        Ok(Self { terms })
    }

    /// Parses whitespace-separated `a_beta b_beta d_beta` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let vals: Vec<f64> = line
                .split_whitespace()
                .map(|t| t.parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse { line: idx + 1, msg: e.to_string() })?;
            if vals.len() != 3 {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected 3 numbers, got {}", vals.len()),
                });
            }
            terms.push(RootTerm { a: vals[0], b: vals[1], d: vals[2] });
        }
        Self::new(terms)
    }

    /// Direct product evaluation.
    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        self.terms
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, t| acc * (lambda * t.a + t.b) / t.d)
    }
}

/// Expands the root-datum product and returns `[p_{n-1}, ..., p_1]`.
pub fn expand_root_datum(rd: &RootDatum, n: u32) -> Result<Vec<f64>> {
    half_n(n)?;
    let degree = (n - 1) as usize;
    let active = rd.terms.iter().filter(|t| t.a != 0.0).count();
    if active != degree {
        return Err(Error::DegreeMismatch { expected: degree, got: active });
    }
    // dense[i] is the coefficient of λ^i.
    let mut dense = vec![1.0_f64];
    for t in &rd.terms {
        let mut next = vec![0.0; dense.len() + 1];
        for (i, &c) in dense.iter().enumerate() {
            next[i] += c * t.b / t.d;
            next[i + 1] += c * t.a / t.d;
        }
        dense = next;
    }
    dense.truncate(degree + 1);
    let scale = dense.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    for i in (0..=degree).step_by(2) {
        if dense[i].abs() > PARAM_TOL * scale {
            return Err(Error::NotOdd(dense[i]));
        }
    }
    if (dense[degree] - 1.0).abs() > PARAM_TOL {
        return Err(Error::NotMonic(dense[degree]));
    }
    Ok((1..=degree).rev().step_by(2).map(|i| dense[i]).collect())
}
