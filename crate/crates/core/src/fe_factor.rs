//! The functional-equation exponent
//! `φ(s) = K ∫_0^s P_σ(w) {tan(πw/T) | -cot(πw/T)} dw`
//! and its closed-form asymptotics on vertical lines.
//!
//! `φ` is only ever returned as an exponent; nothing here exponentiates it.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_path, QuadOptions};
use crate::sigma_poly::{eval_p, eval_q};
use crate::space_params::{Epsilon, SigmaData};

/// Default relative tolerance for [`phi_quadrature`].
pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// Which trigonometric kernel multiplies `P_σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `tan(πw/T)`, used when `ε_σ = 1/2`.
    Tan,
    /// `-cot(πw/T)`, used when `ε_σ = 0`.
    Cot,
}

impl Branch {
    pub fn for_sigma(sigma: &SigmaData) -> Self {
        match sigma.eps_sigma() {
            Epsilon::Half => Branch::Tan,
            Epsilon::Zero => Branch::Cot,
        }
    }
}

/// `q = e^{2iz}` for `Im z >= 0`, so `|q| <= 1`.
fn half_plane_q(z: Complex64) -> Complex64 {
    Complex64::from_polar((-2.0 * z.im).exp(), 2.0 * z.re)
}

/// Complex tangent, stable for large `|Im z|`.
pub fn tan_c(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return tan_c(z.conj()).conj();
    }
    let q = half_plane_q(z);
    Complex64::i() * (1.0 - q) / (1.0 + q)
}

/// Complex cotangent, stable for large `|Im z|`.
pub fn cot_c(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return cot_c(z.conj()).conj();
    }
    let q = half_plane_q(z);
    -Complex64::i() * (1.0 + q) / (1.0 - q)
}

/// `x cot x`, analytic at the origin.
fn x_cot_x(x: Complex64) -> Complex64 {
    if x.norm() < 1e-2 {
        let x2 = x * x;
        1.0 - x2 / 3.0 - x2 * x2 / 45.0 - x2 * x2 * x2 * (2.0 / 945.0)
    } else {
        x * cot_c(x)
    }
}

/// The integrand `K P_σ(w) {tan(πw/T) | -cot(πw/T)}`, i.e. `φ'(w)`.
///
/// On the cot branch the removable singularity at `w = 0` takes its limit
/// `-K (T/π) p_1`.
pub fn phi_integrand(w: Complex64, sigma: &SigmaData, k_const: f64, t_norm: f64) -> Complex64 {
    let x = w * (PI / t_norm);
    match Branch::for_sigma(sigma) {
        Branch::Tan => eval_p(sigma, w) * tan_c(x) * k_const,
        Branch::Cot => eval_q(sigma.coeffs(), w) * x_cot_x(x) * (-k_const * t_norm / PI),
    }
}

/// Leading constant of `tan π(σ₁+it)` or `cot π(σ₁+it)` as `|t| → ∞`.
pub fn trig_asymptotic(branch: Branch, _sigma1: f64, t: f64) -> Result<Complex64> {
    if t.abs() < 1.0 || !t.is_finite() {
        return Err(Error::TooCloseToRealAxis(t));
    }
    let sign = t.signum();
    Ok(match branch {
        Branch::Tan => Complex64::new(0.0, sign),
        Branch::Cot => Complex64::new(0.0, -sign),
    })
}

/// Bound `5 e^{-2π|t|}` on the distance from [`trig_asymptotic`].
pub fn trig_residual_bound(t: f64) -> f64 {
    5.0 * (-2.0 * PI * t.abs()).exp()
}

/// Real poles of the kernel within `|x| <= limit`.
fn poles_within(branch: Branch, t_norm: f64, limit: f64) -> impl Iterator<Item = f64> {
    let offset = match branch {
        Branch::Tan => 0.5,
        Branch::Cot => 0.0,
    };
    let kmax = (limit / t_norm).ceil() as i64 + 1;
    (-kmax..=kmax)
        .map(move |k| t_norm * (k as f64 + offset))
        .filter(move |&p| p != 0.0 && p.abs() <= limit)
}

fn distance_to_segment(p: Complex64, s: Complex64) -> f64 {
    let len2 = s.norm_sqr();
    let u = ((p.re * s.re + p.im * s.im) / len2).clamp(0.0, 1.0);
    (p - s * u).norm()
}

/// `φ(s)` by adaptive quadrature along the segment `[0, s]`.
///
/// Off the real axis the segment is the integration path. When the segment
/// runs close to a real pole (real or nearly real `s`) the integral is taken
/// over the homotopic path `0 → ih → s+ih → s` in the upper half-plane, which
/// realises the continuity-from-above convention; lower half-plane values
/// follow from `φ(s̄) = conj φ(s)`.
pub fn phi_quadrature(
    s: Complex64,
    sigma: &SigmaData,
    k_const: f64,
    t_norm: f64,
    rel_tol: f64,
) -> Result<Complex64> {
    if !(1e-13..=1e-6).contains(&rel_tol) {
        return Err(Error::InvalidParameter {
            key: "rel_tol".into(),
            reason: format!("must lie in [1e-13, 1e-6], got {rel_tol:e}"),
        });
    }
    if s == Complex64::new(0.0, 0.0) {
        return Ok(s);
    }
    if s.im < 0.0 {
        return phi_quadrature(s.conj(), sigma, k_const, t_norm, rel_tol).map(|v| v.conj());
    }
    let branch = Branch::for_sigma(sigma);
    let scale = t_norm.max(s.norm());
    if s.im == 0.0 && poles_within(branch, t_norm, s.norm() + t_norm).any(|p| (p - s.re).abs() <= 1e-12 * scale) {
        return Err(Error::PoleOnPath(s.re));
    }
    let f = |w: Complex64| phi_integrand(w, sigma, k_const, t_norm);
    let opts = QuadOptions { rel_tol, abs_tol: 1e-300, max_panels: 6000 };
    let near = poles_within(branch, t_norm, s.norm() + t_norm)
        .map(|p| distance_to_segment(Complex64::new(p, 0.0), s))
        .fold(f64::INFINITY, f64::min);
    let zero = Complex64::new(0.0, 0.0);
    if near >= 0.25 * t_norm {
        integrate_path(&f, &[zero, s], opts)
    } else {
        let lift = Complex64::new(0.0, 0.5 * t_norm);
        integrate_path(&f, &[zero, lift, s + lift, s], opts)
    }
}

/// Closed-form asymptotic sums on the line `Re s = σ₁ < 0`.
///
/// Returns `(im_part, re_part)` where `im_part` is the coefficient of `i` in
/// the exponent of `f(t)` and `re_part = g(t)`, so that
/// `φ(σ₁+it) = -(i·im_part + re_part) + O(1)`.
pub fn phi_asymptotic(
    sigma1: f64,
    t: f64,
    sigma: &SigmaData,
    k_const: f64,
    n: u32,
) -> Result<(f64, f64)> {
    if sigma1 >= 0.0 || sigma1.is_nan() {
        return Err(Error::NonNegativeSigma1(sigma1));
    }
    if t.abs() < 1.0 {
        return Err(Error::TooCloseToRealAxis(t));
    }
    if n != sigma.n() {
        return Err(Error::WrongLength { expected: (n / 2) as usize, got: sigma.coeffs().len() });
    }
    let sign = t.signum();
    let abs_t = t.abs();
    let mut im_part = 0.0;
    let mut re_part = 0.0;
    for (k, &p) in sigma.coeffs().iter().enumerate() {
        let m = n as i32 - 2 * k as i32;
        let pref = p * k_const / m as f64;
        let mut even = 0.0;
        for l in 0..=m / 2 {
            even += binom(m, 2 * l) * neg_one_pow(l) * sigma1.powi(m - 2 * l) * t.powi(2 * l);
        }
        let mut odd = 0.0;
        for l in 1..=m / 2 {
            odd += binom(m, 2 * l - 1)
                * neg_one_pow(l)
                * sigma1.powi(m - 2 * l + 1)
                * abs_t.powi(2 * l - 1);
        }
        im_part -= pref * sign * even;
        re_part -= pref * odd;
    }
    Ok((im_part, re_part))
}

/// Relative gap between a five-point difference quotient of
/// [`phi_quadrature`] and [`phi_integrand`] at `s`, off the real axis.
pub fn phi_derivative_error(s: Complex64, sigma: &SigmaData, k_const: f64, t_norm: f64) -> Result<f64> {
    let h = 1e-2 * t_norm.min(s.im.abs());
    let phi = |dx: f64| phi_quadrature(s + dx, sigma, k_const, t_norm, 1e-13);
    let num = ((phi(h)? - phi(-h)?) * 8.0 - (phi(2.0 * h)? - phi(-2.0 * h)?)) / (12.0 * h);
    let exact = phi_integrand(s, sigma, k_const, t_norm);
    Ok((num - exact).norm() / exact.norm())
}

fn neg_one_pow(l: i32) -> f64 {
    if l % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn binom(m: i32, j: i32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

fn wrap_phase(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let r = x.rem_euclid(two_pi);
    if r > PI {
        r - two_pi
    } else {
        r
    }
}

/// `|log Z(-s) - φ(s) - log Z(s)|` with the imaginary part reduced modulo `2π`.
pub fn fe_residual<F>(
    log_z: F,
    s: Complex64,
    sigma: &SigmaData,
    k_const: f64,
    t_norm: f64,
) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let phi = phi_quadrature(s, sigma, k_const, t_norm, DEFAULT_REL_TOL)?;
    let d = log_z(-s)? - phi - log_z(s)?;
    Ok(Complex64::new(d.re, wrap_phase(d.im)).norm())
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

    /// Composite 20-point Gauss–Legendre on a uniform grid; independent of
    /// the adaptive scheme.
    fn fixed_grid<F: Fn(Complex64) -> Complex64>(f: F, a: Complex64, b: Complex64, panels: usize) -> Complex64 {
        let (x, w) = gauss_legendre(20);
        let mut total = c(0.0, 0.0);
        let h = (b - a) / panels as f64;
        for j in 0..panels {
            let lo = a + h * j as f64;
            for (xi, wi) in x.iter().zip(&w) {
                total += f(lo + h * (0.5 * (xi + 1.0))) * (0.5 * wi);
            }
        }
        total * h
    }

    fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
        let mut xs = Vec::new();
        let mut ws = Vec::new();
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=m {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let (mut q0, mut q1) = (1.0, x);
                    for k in 2..=m {
                        let q2 = ((2 * k - 1) as f64 * x * q1 - (k - 1) as f64 * q0) / k as f64;
                        q0 = q1;
                        q1 = q2;
                    }
                    let dq = m as f64 * (x * q1 - q0) / (x * x - 1.0);
                    xs.push(x);
                    ws.push(2.0 / ((1.0 - x * x) * dq * dq));
                    break;
                }
            }
        }
        (xs, ws)
    }

    #[test]
    fn tan_and_cot_agree_with_std_formulas() {
        for &z in &[c(0.3, 0.2), c(-1.2, 2.5), c(2.0, -0.7), c(0.1, 40.0)] {
            let t = tan_c(z);
            let expected = z.sin() / z.cos();
            if z.im.abs() < 10.0 {
                assert!((t - expected).norm() < 1e-13 * expected.norm().max(1.0));
            }
            assert!((cot_c(z) * t - 1.0).norm() < 1e-13);
        }
        assert!((tan_c(c(0.0, 300.0)) - Complex64::i()).norm() < 1e-15);
    }

    #[test]
    fn trig_asymptotic_examples() {
        let lead = trig_asymptotic(Branch::Tan, -1.0, 3.0).unwrap();
        assert_eq!(lead, Complex64::i());
        let z = c(-1.0, 3.0) * PI;
        assert!((tan_c(z) - lead).norm() <= trig_residual_bound(3.0));
        assert_eq!(trig_asymptotic(Branch::Cot, 0.3, -2.0).unwrap(), Complex64::i());
        assert_eq!(trig_asymptotic(Branch::Tan, 0.0, 0.5), Err(Error::TooCloseToRealAxis(0.5)));
    }

    #[test]
    fn phi_vanishes_at_origin() {
        let v = phi_quadrature(c(0.0, 0.0), &h2_sigma(), -PI, 2.0, 1e-10).unwrap();
        assert_eq!(v, c(0.0, 0.0));
    }

    #[test]
    fn phi_on_imaginary_axis_matches_fixed_grid() {
        let sigma = h2_sigma();
        let s = c(0.0, 10.0);
        let v = phi_quadrature(s, &sigma, -PI, 2.0, 1e-12).unwrap();
        let oracle = fixed_grid(|w| phi_integrand(w, &sigma, -PI, 2.0), c(0.0, 0.0), s, 200);
        assert!((v - oracle).norm() < 1e-9 * oracle.norm());
        // Leading term π t²/2; correction -π/6 from ∫ 2y/(e^{πy}+1) dy = 1/6.
        let delta = v.im - 50.0 * PI;
        assert!(delta.abs() <= 1.0, "delta = {delta}");
        assert!((delta + PI / 6.0).abs() < 1e-6, "delta = {delta}");
    }

    #[test]
    fn conjugate_symmetry_and_oddness() {
        let sigma = SigmaData::new(Epsilon::Zero, vec![1.0, -0.25]).unwrap();
        for &s in &[c(0.7, 1.3), c(-2.2, 0.4), c(3.1, 5.0)] {
            let a = phi_quadrature(s, &sigma, 2.0 * PI, 1.0, 1e-12).unwrap();
            let b = phi_quadrature(s.conj(), &sigma, 2.0 * PI, 1.0, 1e-12).unwrap();
            assert!((a - b.conj()).norm() < 1e-10 * a.norm());
            let m = phi_quadrature(-s, &sigma, 2.0 * PI, 1.0, 1e-12).unwrap();
            assert!((a + m).norm() < 1e-10 * a.norm());
        }
    }

    #[test]
    fn real_axis_uses_upper_limit() {
        let sigma = h2_sigma();
        // Past the tan pole at T/2 = 1: the value must be the limit from above.
        let on_axis = phi_quadrature(c(1.5, 0.0), &sigma, -PI, 2.0, 1e-12).unwrap();
        let above = phi_quadrature(c(1.5, 1e-9), &sigma, -PI, 2.0, 1e-12).unwrap();
        assert!((on_axis - above).norm() < 1e-6);
        let below = phi_quadrature(c(1.5, -1e-9), &sigma, -PI, 2.0, 1e-12).unwrap();
        assert!((on_axis - below).norm() > 1.0);
        assert_eq!(
            phi_quadrature(c(1.0, 0.0), &sigma, -PI, 2.0, 1e-10),
            Err(Error::PoleOnPath(1.0))
        );
    }

    #[test]
    fn cot_branch_has_smooth_origin() {
        let sigma = SigmaData::new(Epsilon::Zero, vec![1.0]).unwrap();
        let w = phi_integrand(c(0.0, 0.0), &sigma, 1.0, 2.0);
        assert!((w - c(-2.0 / PI, 0.0)).norm() < 1e-15);
        let near = phi_integrand(c(1e-7, 1e-7), &sigma, 1.0, 2.0);
        assert!((near - w).norm() < 1e-12);
    }

    #[test]
    fn asymptotic_parity_and_leading_term() {
        let sigma = SigmaData::new(Epsilon::Half, vec![1.0, -0.25]).unwrap();
        let (a, b) = phi_asymptotic(-0.7, 12.0, &sigma, 2.0 * PI, 4).unwrap();
        let (a2, b2) = phi_asymptotic(-0.7, -12.0, &sigma, 2.0 * PI, 4).unwrap();
        assert!((a + a2).abs() < 1e-9 * a.abs());
        assert!((b - b2).abs() < 1e-12 * b.abs());
        // σ₁ → 0⁻: only σ₁⁰ terms survive.
        let k = -PI;
        let (im0, _) = phi_asymptotic(-1e-12, 10.0, &h2_sigma(), k, 2).unwrap();
        let expected = -(k * (-1.0) * 100.0 / 2.0);
        assert!((im0 - expected).abs() < 1e-9);
        assert_eq!(
            phi_asymptotic(0.5, 10.0, &h2_sigma(), k, 2),
            Err(Error::NonNegativeSigma1(0.5))
        );
    }

    #[test]
    fn asymptotic_tracks_quadrature() {
        let sigma = h2_sigma();
        for i in 0..=45 {
            let t = 5.0 + i as f64;
            let phi = phi_quadrature(c(-1.0, t), &sigma, -PI, 2.0, 1e-10).unwrap();
            let (im, re) = phi_asymptotic(-1.0, t, &sigma, -PI, 2).unwrap();
            let resid = (phi + c(re, im)).norm();
            assert!(resid <= 2.0, "t = {t}: residual {resid}");
        }
    }

    #[test]
    fn fe_residual_examples() {
        let sigma = h2_sigma();
        let zero = |_: Complex64| Ok(c(0.0, 0.0));
        assert_eq!(fe_residual(zero, c(0.0, 0.0), &sigma, -PI, 2.0).unwrap(), 0.0);
        // e^{-φ/2} satisfies the functional equation because φ is odd.
        let completed = |s: Complex64| phi_quadrature(s, &sigma, -PI, 2.0, 1e-12).map(|p| -0.5 * p);
        let r = fe_residual(completed, c(0.4, 3.0), &sigma, -PI, 2.0).unwrap();
        assert!(r < 1e-8, "residual {r}");
        // An even function leaves |φ(s)| reduced modulo 2πi.
        let even = |s: Complex64| Ok(s * s);
        let s = c(0.3, 2.0);
        let phi = phi_quadrature(s, &sigma, -PI, 2.0, 1e-10).unwrap();
        let r = fe_residual(even, s, &sigma, -PI, 2.0).unwrap();
        assert!((r - c(phi.re, wrap_phase(-phi.im)).norm()).abs() < 1e-9);
    }
}
