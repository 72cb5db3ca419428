//! Derived constants of a parameter set, and the leading-coefficient identity
//! on random parameter sets.

use std::path::Path;

use zeta_sing::config::Config;
use zeta_sing::counting::{leading_coefficient_suite, weyl_leading_term};
use zeta_sing::model_zeta::integer_order;

fn main() -> zeta_sing::Result<()> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/genus2.cfg"));
    let (params, sigma) = Config::load(path)?.validated()?;
    println!("n = {}, T = {}, rho = {}", params.n(), params.t_norm(), params.rho());
    println!("euler ratio = {}", params.euler_ratio());
    println!("d_Y = {}", params.d_y());
    println!("K = {}", params.k_const());
    println!("eps_sigma = {}", sigma.eps_sigma().value());
    println!("q = {}", integer_order(params.trivial_order_multiplier())?);
    println!("N(10) ~ {}", weyl_leading_term(10.0, &params));

    let worst = leading_coefficient_suite(1000, 0);
    println!("leading coefficient identity, 1000 random sets: max rel error {worst:e}");
    Ok(())
}
