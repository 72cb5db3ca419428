//! Geometric, topological and bundle constants of `Y = Γ\G/K` and its compact dual.
//!
//! Volumes are inputs; the Euler-characteristic ratio, the sign `d_Y` and the
//! functional-equation constant `K` are derived from them.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative tolerance for parameter-validation identities.
pub const PARAM_TOL: f64 = 1e-9;

/// One restricted root on `n̄` together with the dimension of its root space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NbarWeight {
    pub weight: f64,
    pub mult: u32,
}

impl NbarWeight {
    pub fn new(weight: f64, mult: u32) -> Self {
        Self { weight, mult }
    }
}

/// Constants of the space. Immutable after [`build_space_params`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceParams {
    n: u32,
    t_norm: f64,
    rho: f64,
    vol_y: f64,
    vol_xd: f64,
    dim_chi: u32,
    weights_nbar: Vec<NbarWeight>,
    euler_ratio: f64,
    d_y: i32,
    k_const: f64,
}

impl SpaceParams {
    /// Dimension of `Y`.
    pub fn n(&self) -> u32 {
        self.n
    }
    /// Norm `T = |α|` of the long restricted root.
    pub fn t_norm(&self) -> f64 {
        self.t_norm
    }
    pub fn rho(&self) -> f64 {
        self.rho
    }
    pub fn vol_y(&self) -> f64 {
        self.vol_y
    }
    pub fn vol_xd(&self) -> f64 {
        self.vol_xd
    }
    pub fn dim_chi(&self) -> u32 {
        self.dim_chi
    }
    pub fn weights_nbar(&self) -> &[NbarWeight] {
        &self.weights_nbar
    }
    /// `χ(Y)/χ(X_d) = (-1)^{n/2} vol(Y)/vol(X_d)`.
    pub fn euler_ratio(&self) -> f64 {
        self.euler_ratio
    }
    /// `d_Y = -(-1)^{n/2}`.
    pub fn d_y(&self) -> i32 {
        self.d_y
    }
    /// `K = 2π dim(χ) χ(Y) / (χ(X_d) T)`.
    pub fn k_const(&self) -> f64 {
        self.k_const
    }

    /// `2 d_Y dim(χ) vol(Y)/vol(X_d)`, the multiplier of `m_d` in the orders of
    /// the trivial singularities. Not necessarily an integer.
    pub fn trivial_order_multiplier(&self) -> f64 {
        2.0 * self.d_y as f64 * self.dim_chi as f64 * self.vol_y / self.vol_xd
    }

    /// Smallest weight on `n̄`.
    pub fn min_weight(&self) -> f64 {
        self.weights_nbar
            .iter()
            .map(|w| w.weight)
            .fold(f64::INFINITY, f64::min)
    }

    /// `dim n̄ = Σ mult`.
    pub fn nbar_dim(&self) -> u32 {
        self.weights_nbar.iter().map(|w| w.mult).sum()
    }
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn require_positive(key: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            key: key.to_string(),
            reason: format!("must be a positive finite number, got {value}"),
        })
    }
}

/// Validates the inputs and derives `euler_ratio`, `d_Y` and `K`.
#[allow(clippy::too_many_arguments)]
pub fn build_space_params(
    n: u32,
    t_norm: f64,
    rho: f64,
    vol_y: f64,
    vol_xd: f64,
    dim_chi: u32,
    weights_nbar: &[NbarWeight],
) -> Result<SpaceParams> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::DimensionOdd(n));
    }
    require_positive("T", t_norm)?;
    require_positive("rho", rho)?;
    require_positive("vol_Y", vol_y)?;
    require_positive("vol_Xd", vol_xd)?;
    if dim_chi == 0 {
        return Err(Error::InvalidParameter {
            key: "dim_chi".into(),
            reason: "must be a positive integer".into(),
        });
    }
    if weights_nbar.is_empty() {
        return Err(Error::EmptyWeights);
    }
    for w in weights_nbar {
        require_positive("weights", w.weight)?;
        if w.mult == 0 {
            return Err(Error::InvalidParameter {
                key: "weights".into(),
                reason: "root multiplicities must be positive".into(),
            });
        }
        let long = rel_close(w.weight, t_norm, PARAM_TOL);
        let short = rel_close(w.weight, 0.5 * t_norm, PARAM_TOL);
        if !long && !short {
            return Err(Error::InvalidParameter {
                key: "weights".into(),
                reason: format!("weight {} is neither T nor T/2 (T = {t_norm})", w.weight),
            });
        }
    }
    let mut distinct: Vec<f64> = Vec::new();
    for w in weights_nbar {
        if !distinct.iter().any(|&d| rel_close(d, w.weight, PARAM_TOL)) {
            distinct.push(w.weight);
        }
    }
    if distinct.len() != weights_nbar.len() {
        return Err(Error::InvalidParameter {
            key: "weights".into(),
            reason: "each restricted root must appear once".into(),
        });
    }

    let half_sum = 0.5
        * weights_nbar
            .iter()
            .map(|w| w.mult as f64 * w.weight)
            .sum::<f64>();
    if !rel_close(rho, half_sum, PARAM_TOL) {
        return Err(Error::RhoMismatch { rho, half_sum });
    }

    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let euler_ratio = sign * vol_y / vol_xd;
    let d_y = -(sign as i32);
    let k_const = 2.0 * PI * dim_chi as f64 * euler_ratio / t_norm;

    Ok(SpaceParams {
        n,
        t_norm,
        rho,
        vol_y,
        vol_xd,
        dim_chi,
        weights_nbar: weights_nbar.to_vec(),
        euler_ratio,
        d_y,
        k_const,
    })
}

/// The shift `ε_σ ∈ {0, 1/2}` of the lattice `L(σ) = T(ε_σ + ℤ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Epsilon {
    Zero,
    Half,
}

impl Epsilon {
    pub fn value(self) -> f64 {
        match self {
            Epsilon::Zero => 0.0,
            Epsilon::Half => 0.5,
        }
    }

    /// Parses `0` or `1/2` (as `0.5`) within [`PARAM_TOL`].
    pub fn from_f64(x: f64) -> Result<Self> {
        if x.abs() <= PARAM_TOL {
            Ok(Epsilon::Zero)
        } else if (x - 0.5).abs() <= PARAM_TOL {
            Ok(Epsilon::Half)
        } else {
            Err(Error::NotHalfInteger(x))
        }
    }
}

/// `ε_σ ≡ |ρ|/T + ε_α(σ) mod ℤ`.
pub fn epsilon_sigma(rho: f64, t_norm: f64, eps_alpha: Epsilon) -> Result<Epsilon> {
    require_positive("rho", rho)?;
    require_positive("T", t_norm)?;
    let x = rho / t_norm + eps_alpha.value();
    let twice = 2.0 * x;
    let nearest = twice.round();
    if (twice - nearest).abs() > 2.0 * PARAM_TOL {
        return Err(Error::NotHalfInteger(x));
    }
    if (nearest as i64).rem_euclid(2) == 0 {
        Ok(Epsilon::Zero)
    } else {
        Ok(Epsilon::Half)
    }
}

/// `σ`-dependent data: `ε_σ`, the odd monic polynomial `P_σ` and optionally `c(σ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaData {
    eps_sigma: Epsilon,
    /// `[p_{n-1}, p_{n-3}, ..., p_1]`.
    coeffs: Vec<f64>,
    c_sigma: Option<f64>,
}

impl SigmaData {
    /// `coeffs` lists the odd-degree coefficients from the top down; the
    /// leading one must be 1 within [`PARAM_TOL`].
    pub fn new(eps_sigma: Epsilon, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::WrongLength { expected: 1, got: 0 });
        }
        if (coeffs[0] - 1.0).abs() > PARAM_TOL {
            return Err(Error::NotMonic(coeffs[0]));
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter {
                key: "p_coeffs".into(),
                reason: format!("non-finite coefficient {bad}"),
            });
        }
        Ok(Self { eps_sigma, coeffs, c_sigma: None })
    }

    pub fn with_c_sigma(mut self, c: f64) -> Self {
        self.c_sigma = Some(c);
        self
    }

    pub fn eps_sigma(&self) -> Epsilon {
        self.eps_sigma
    }
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
    pub fn c_sigma(&self) -> Option<f64> {
        self.c_sigma
    }
    /// Dimension `n` implied by the polynomial degree `n - 1`.
    pub fn n(&self) -> u32 {
        2 * self.coeffs.len() as u32
    }
    /// Coefficient `p_1` of the linear term.
    pub fn p1(&self) -> f64 {
        *self.coeffs.last().expect("non-empty by construction")
    }
}

/// All `s ∈ T(ε_σ + ℤ)` with `0 < s <= bound`, ascending.
pub fn lattice_points(sigma: &SigmaData, t_norm: f64, bound: f64) -> Vec<f64> {
    let eps = sigma.eps_sigma().value();
    let first = if sigma.eps_sigma() == Epsilon::Zero { 1.0 } else { 0.0 };
    let limit = bound * (1.0 + 1e-12);
    let mut out = Vec::new();
    let mut k = first;
    loop {
        let s = t_norm * (eps + k);
        if s > limit || !s.is_finite() {
            break;
        }
        out.push(s);
        k += 1.0;
    }
    out
}

/// `c(σ) = |ρ|² + |ρ_m|² - |μ_σ + ρ_m|²` from the three norms.
pub fn compute_c_sigma(norm_rho: f64, norm_rho_m: f64, norm_mu_plus_rho_m: f64) -> f64 {
    norm_rho * norm_rho + norm_rho_m * norm_rho_m - norm_mu_plus_rho_m * norm_mu_plus_rho_m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2() -> SpaceParams {
        build_space_params(2, 2.0, 1.0, 4.0 * PI, 4.0 * PI, 1, &[NbarWeight::new(2.0, 1)]).unwrap()
    }

    #[test]
    fn genus_two_constants() {
        // χ(genus 2) = -2, χ(S²) = 2.
        let p = h2();
        assert_eq!(p.euler_ratio(), -1.0);
        assert_eq!(p.d_y(), 1);
        assert!((p.k_const() + PI).abs() < 1e-15);
        assert_eq!(p.trivial_order_multiplier(), 2.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let e = build_space_params(2, 2.0, 1.0, 1.0, 1.0, 1, &[NbarWeight::new(2.0, 2)]);
        assert!(matches!(e, Err(Error::RhoMismatch { .. })));
        let e = build_space_params(3, 2.0, 1.0, 1.0, 1.0, 1, &[NbarWeight::new(2.0, 1)]);
        assert_eq!(e, Err(Error::DimensionOdd(3)));
        let e = build_space_params(2, 2.0, 1.0, 1.0, 1.0, 1, &[]);
        assert_eq!(e, Err(Error::EmptyWeights));
        let e = build_space_params(2, 2.0, 1.5, 1.0, 1.0, 1, &[NbarWeight::new(3.0, 1)]);
        assert!(matches!(e, Err(Error::InvalidParameter { .. })));
        let e = build_space_params(2, 2.0, 1.0, -1.0, 1.0, 1, &[NbarWeight::new(2.0, 1)]);
        assert!(matches!(e, Err(Error::InvalidParameter { ref key, .. }) if key == "vol_Y"));
    }

    #[test]
    fn complex_hyperbolic_weights() {
        // {α/2, α} with multiplicities (2, 1): ρ = (2·T/2 + T)/2 = T.
        let p = build_space_params(
            4,
            1.0,
            1.0,
            1.0,
            2.0,
            1,
            &[NbarWeight::new(0.5, 2), NbarWeight::new(1.0, 1)],
        )
        .unwrap();
        assert_eq!(p.d_y(), -1);
        assert_eq!(p.euler_ratio(), 0.5);
        assert_eq!(p.nbar_dim(), 3);
        assert_eq!(p.min_weight(), 0.5);
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_sigma(1.0, 2.0, Epsilon::Zero).unwrap(), Epsilon::Half);
        assert_eq!(epsilon_sigma(2.0, 1.0, Epsilon::Zero).unwrap(), Epsilon::Zero);
        assert_eq!(epsilon_sigma(1.0, 2.0, Epsilon::Half).unwrap(), Epsilon::Zero);
        assert!(matches!(
            epsilon_sigma(1.0, 3.0, Epsilon::Zero),
            Err(Error::NotHalfInteger(_))
        ));
        // Adding integers to rho/T does not change the residue.
        for k in 0..5 {
            let rho = 1.0 + 2.0 * k as f64;
            assert_eq!(epsilon_sigma(rho, 2.0, Epsilon::Zero).unwrap(), Epsilon::Half);
        }
    }

    #[test]
    fn lattice_examples() {
        let half = SigmaData::new(Epsilon::Half, vec![1.0]).unwrap();
        let zero = SigmaData::new(Epsilon::Zero, vec![1.0]).unwrap();
        assert_eq!(lattice_points(&half, 2.0, 6.0), vec![1.0, 3.0, 5.0]);
        assert_eq!(lattice_points(&zero, 1.0, 3.5), vec![1.0, 2.0, 3.0]);
        assert!(lattice_points(&half, 2.0, 0.5).is_empty());
        let pts = lattice_points(&half, 0.7, 20.0);
        for w in pts.windows(2) {
            assert!((w[1] - w[0] - 0.7).abs() < 1e-12);
        }
    }

    #[test]
    fn c_sigma_examples() {
        assert_eq!(compute_c_sigma(1.0, 0.0, 0.0), 1.0);
        assert_eq!(compute_c_sigma(1.0, 0.5, 0.5), 1.0);
        assert_eq!(compute_c_sigma(2.0, 1.0, 3.0), -4.0);
    }

    #[test]
    fn sigma_data_rejects_non_monic() {
        assert!(matches!(
            SigmaData::new(Epsilon::Half, vec![2.0]),
            Err(Error::NotMonic(_))
        ));
    }
}
