//! Signed singularity counts of a Ruelle model in vertical strips, built
//! from one Selberg catalog shifted by the I_p table.

use std::path::Path;

use zeta_sing::config::Config;
use zeta_sing::counting::{ruelle_count_rectangle, weyl_quantile_eigs, ShiftedCatalog};
use zeta_sing::model_zeta::{catalog_from_spectra, integer_order, ModelSpectrum};
use zeta_sing::zeta_eval::IpTable;

fn main() -> zeta_sing::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let (params, sigma) = Config::load(Path::new(&format!("{dir}/genus2_natural.cfg")))?.validated()?;
    let ip = IpTable::parse(&std::fs::read_to_string(format!("{dir}/h2_ip_natural.txt"))?, &params)?;

    let eigs = weyl_quantile_eigs(&sigma, params.k_const(), params.n(), 40.0);
    let q = integer_order(params.trivial_order_multiplier())?;
    let ms = ModelSpectrum::new(eigs, 1, 80, q as f64)?;
    let cat = catalog_from_spectra(&ms, &sigma, params.t_norm())?;

    let rho = params.rho();
    let mut parts = Vec::new();
    for (p, row) in ip.rows().iter().enumerate() {
        for line in row {
            let sign = if p % 2 == 0 { 1 } else { -1 };
            parts.push(ShiftedCatalog { catalog: cat.clone(), shift: rho - line.lambda, sign });
        }
    }
    for (a, b) in [(-rho, -rho), (rho, rho), (-rho, rho), (-rho, 0.0)] {
        let row: Vec<String> = [10.05, 20.05, 30.05]
            .iter()
            .map(|&t| ruelle_count_rectangle(&parts, a, b, t, rho).map(|c| format!("{c:>6}")))
            .collect::<zeta_sing::Result<_>>()?;
        println!("[{a:>4}, {b:>4}]  {}", row.join(" "));
    }
    Ok(())
}
