//! Selberg and Ruelle Euler products on the Bolza surface, with the Ruelle
//! product computed both directly and through its Selberg factorization.

use std::path::Path;

use num_complex::Complex64;
use zeta_sing::config::Config;
use zeta_sing::spectrum_io::{fuchsian_enumerate, octagon_generators};
use zeta_sing::zeta_eval::{
    ruelle_log_direct, ruelle_log_factored, ruelle_tail_bound, selberg_log_product,
    truncation_tail_bound, EvalOptions, IpTable,
};

fn main() -> zeta_sing::Result<()> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/genus2_natural.cfg"));
    let (params, _) = Config::load(path)?.validated()?;
    let spec = fuchsian_enumerate(&octagon_generators(), 8, 1.0)?;
    let ip = IpTable::scalar_exterior(&params)?;
    let opts = EvalOptions::lenient(60);

    println!("{:>12} {:>26} {:>10} {:>10} {:>10}", "s", "log Z_S", "tail", "R gap", "R tail");
    for s in [Complex64::new(1.5, 0.0), Complex64::new(2.0, 3.0), Complex64::new(3.0, -5.0), Complex64::new(4.0, 1.0)] {
        let selberg = selberg_log_product(s, &spec, &params, &opts)?;
        let direct = ruelle_log_direct(s, &spec, &params, &opts)?;
        let factored = ruelle_log_factored(s, &spec, &params, &ip, &opts)?;
        println!(
            "{:>12} {:>26} {:>10.2e} {:>10.2e} {:>10.2e}",
            format!("{s}"),
            format!("{selberg:.9}"),
            truncation_tail_bound(s, &spec, &params, opts.k_max),
            (direct - factored).norm(),
            ruelle_tail_bound(s, &spec, &params),
        );
    }
    Ok(())
}
