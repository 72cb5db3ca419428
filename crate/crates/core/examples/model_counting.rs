//! A model zeta function with Weyl-law eigenvalues: the argument-principle
//! count against the catalog and against the main term.

use std::path::Path;

use zeta_sing::config::Config;
use zeta_sing::counting::{n_main_term, weyl_quantile_eigs, winding_count, DEFAULT_MAX_PANEL_PHASE};
use zeta_sing::model_zeta::{
    catalog_from_spectra, count_catalog_in_region, integer_order, model_logderiv, ModelSpectrum, Rect,
};

fn main() -> zeta_sing::Result<()> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/genus2.cfg"));
    let (params, sigma) = Config::load(path)?.validated()?;
    let eigs = weyl_quantile_eigs(&sigma, params.k_const(), params.n(), 30.0);
    let q = integer_order(params.trivial_order_multiplier())?;
    let ms = ModelSpectrum::new(eigs, 1, 20, q as f64)?;
    let cat = catalog_from_spectra(&ms, &sigma, params.t_norm())?;
    println!("{} catalog items", cat.items().len());

    // A box around the origin holding the double zero and the first trivial zero.
    let rect = Rect::new(-1.5, 0.5, -0.5, 0.5)?;
    let wound = winding_count(|s| model_logderiv(&cat, s), &rect, DEFAULT_MAX_PANEL_PHASE, 1e-3)?;
    println!("box: winding {wound}, catalog {}", count_catalog_in_region(&cat, &rect)?);

    println!("{:>6} {:>8} {:>10}", "t", "N(t)", "main");
    for t in [5.1, 10.1, 20.1, 29.9] {
        let rect = Rect::new(-0.5, 0.5, 1e-3, t)?;
        let n = winding_count(|s| model_logderiv(&cat, s), &rect, DEFAULT_MAX_PANEL_PHASE, 1e-3)?;
        println!("{t:>6} {n:>8} {:>10.3}", n_main_term(t, &sigma, params.k_const(), params.n()));
    }
    Ok(())
}
