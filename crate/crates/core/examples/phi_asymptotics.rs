//! `φ(σ₁+it)` by quadrature next to its closed-form asymptotics. The gap
//! stays bounded while `φ` itself grows like `t^n`.

use std::path::Path;

use num_complex::Complex64;
use zeta_sing::config::Config;
use zeta_sing::fe_factor::{phi_asymptotic, phi_derivative_error, phi_quadrature, DEFAULT_REL_TOL};

fn main() -> zeta_sing::Result<()> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/synthetic4.cfg"));
    let (params, sigma) = Config::load(path)?.validated()?;
    let (k, t_norm, n) = (params.k_const(), params.t_norm(), params.n());
    let sigma1 = -1.5;
    println!("{:>6} {:>16} {:>12} {:>12}", "t", "|phi|", "residual", "phi' err");
    for i in 0..10 {
        let t = 5.0 + 5.0 * i as f64;
        let s = Complex64::new(sigma1, t);
        let phi = phi_quadrature(s, &sigma, k, t_norm, DEFAULT_REL_TOL)?;
        let (im_part, re_part) = phi_asymptotic(sigma1, t, &sigma, k, n)?;
        let residual = (phi + Complex64::new(re_part, im_part)).norm();
        let deriv = phi_derivative_error(s, &sigma, k, t_norm)?;
        println!("{t:>6} {:>16.6} {residual:>12.3e} {deriv:>12.3e}", phi.norm());
    }
    Ok(())
}
