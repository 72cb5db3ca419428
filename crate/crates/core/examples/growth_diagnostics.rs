//! Growth of `S(t)` and of `log|Z|` on vertical lines for a model zeta
//! function, with fitted power laws.

use std::path::Path;

use num_complex::Complex64;
use zeta_sing::config::Config;
use zeta_sing::counting::{catalog_argument_variation, envelope_constant, fit_power_law, weyl_quantile_eigs};
use zeta_sing::model_zeta::{catalog_from_spectra, integer_order, model_eval, ModelSpectrum};

fn main() -> zeta_sing::Result<()> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/genus2.cfg"));
    let (params, sigma) = Config::load(path)?.validated()?;
    let eigs = weyl_quantile_eigs(&sigma, params.k_const(), params.n(), 45.0);
    let q = integer_order(params.trivial_order_multiplier())?;
    let cat = catalog_from_spectra(&ModelSpectrum::new(eigs, 1, 40, q as f64)?, &sigma, params.t_norm())?;
    let n = params.n() as i32;

    let ts: Vec<f64> = (0..=76).map(|i| 2.0 + 0.5 * i as f64).collect();
    let a = params.rho() + 0.25 * params.t_norm();
    let s_vals = ts.iter().map(|&t| catalog_argument_variation(&cat, t, a)).collect::<zeta_sing::Result<Vec<_>>>()?;
    if let Some((exponent, c)) = fit_power_law(&ts, &s_vals) {
        println!("S(t) ~ {c:.3} t^{exponent:.3} on [2, 40] (n - 1 = {})", n - 1);
    }

    for sigma1 in [-1.5, 0.5, 2.5] {
        let logs =
            ts.iter().map(|&t| model_eval(&cat, Complex64::new(sigma1, t)).map(|v| v.0)).collect::<zeta_sing::Result<Vec<_>>>()?;
        let c = envelope_constant(&ts, &logs, |t| t.powi(n - 1) * t.ln());
        let fit = fit_power_law(&ts, &logs).map_or("n/a".to_string(), |(e, _)| format!("{e:.3}"));
        println!("Re s = {sigma1:>4}: |log|Z|| <= {c:.3} t^{} log t, fitted exponent {fit}", n - 1);
    }
    Ok(())
}
