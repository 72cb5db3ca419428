//! From a root datum to `P_σ` and its heat coefficients.

use num_complex::Complex64;
use zeta_sing::sigma_poly::{
    eval_p, expand_root_datum, heat_coeffs_from_poly, poly_from_heat_coeffs, RootDatum,
};
use zeta_sing::space_params::{Epsilon, SigmaData};

const DATUM: &str = "\
# λ (λ + 1/2) (λ - 1/2)
1 0 1
1 0.5 1
1 -0.5 1
";

fn main() -> zeta_sing::Result<()> {
    let n = 4;
    let t_norm = 1.0;
    let p = expand_root_datum(&RootDatum::parse(DATUM)?, n)?;
    println!("p = {p:?}");

    let c = heat_coeffs_from_poly(&p, n, t_norm)?;
    println!("heat coefficients c_-2, c_-1 = {c:?}");
    let back = poly_from_heat_coeffs(&c, n, t_norm)?;
    println!("roundtrip = {back:?}");

    let sigma = SigmaData::new(Epsilon::Half, p)?;
    for w in [0.5, 1.5, 2.5] {
        println!("P({w}) = {}", eval_p(&sigma, Complex64::new(w, 0.0)).re);
    }
    Ok(())
}
