//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zeta_sing::counting::{
    catalog_argument_variation, envelope_constant, fit_power_law, n_main_term, random_space_params,
    weyl_quantile_eigs, winding_count, DEFAULT_MAX_PANEL_PHASE,
};
use zeta_sing::error::Error;
use zeta_sing::fe_factor::{
    cot_c, phi_asymptotic, phi_quadrature, tan_c, trig_asymptotic, trig_residual_bound, Branch, DEFAULT_REL_TOL,
};
use zeta_sing::model_zeta::{
    catalog_from_spectra, count_catalog_in_region, integer_order, model_eval, model_logderiv, ModelSpectrum, Rect,
    Singularity, SingularityCatalog,
};
use zeta_sing::sigma_poly::{heat_coeffs_from_poly, poly_from_heat_coeffs};
use zeta_sing::space_params::{build_space_params, Epsilon, NbarWeight, SigmaData, SpaceParams};
use zeta_sing::spectrum_io::{enumerate::enumerate_classes, octagon_generators, EnumerateOptions, FuchsianGroup};
use zeta_sing::zeta_eval::{
    ruelle_factored_tail_bound, ruelle_log_direct, ruelle_log_factored, ruelle_tail_bound, EvalOptions, IpTable,
};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// The n = 2 set: T = 2, K = -π, ε_σ = 1/2.
fn genus2() -> (SpaceParams, SigmaData) {
    let params = build_space_params(2, 2.0, 1.0, 4.0 * PI, 4.0 * PI, 1, &[NbarWeight::new(2.0, 1)]).unwrap();
    (params, SigmaData::new(Epsilon::Half, vec![1.0]).unwrap())
}

/// The n = 4 set: T = 1, ρ = 3/2, K = 2π, P(s) = s³ - s/4.
fn synthetic4() -> (SpaceParams, SigmaData) {
    let params = build_space_params(4, 1.0, 1.5, 1.0, 1.0, 1, &[NbarWeight::new(1.0, 3)]).unwrap();
    (params, SigmaData::new(Epsilon::Half, vec![1.0, -0.25]).unwrap())
}

/// An n = 2 set on the cot branch: T = 1, ρ = 1.
fn cot2() -> (SpaceParams, SigmaData) {
    let params = build_space_params(2, 1.0, 1.0, 4.0 * PI, 4.0 * PI, 1, &[NbarWeight::new(1.0, 2)]).unwrap();
    (params, SigmaData::new(Epsilon::Zero, vec![1.0]).unwrap())
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = 2 * rng.gen_range(1..=4u32);
        let h = (n / 2) as usize;
        let t = rng.gen_range(0.2..5.0);
        let mut p = vec![1.0];
        p.extend((1..h).map(|_| rng.gen_range(-20.0..20.0)));
        let c = heat_coeffs_from_poly(&p, n, t).map_err(|e| e.to_string())?;
        // c_{-(h-k)} = p_{n-2k-1} (h-k-1)! / (2T)
        for (k, ck) in c.iter().enumerate() {
            let direct = p[k] * factorial(h - k - 1) / (2.0 * t);
            worst = worst.max((ck - direct).abs() / direct.abs().max(1e-300));
        }
        let back = poly_from_heat_coeffs(&c, n, t).map_err(|e| e.to_string())?;
        for (a, b) in p.iter().zip(&back) {
            worst = worst.max((a - b).abs() / a.abs());
        }
    }
    let not_monic = matches!(heat_coeffs_from_poly(&[2.0, 1.0], 4, 1.0), Err(Error::NotMonic(_)))
        && matches!(poly_from_heat_coeffs(&[0.3, 1.0], 4, 1.0), Err(Error::NotMonic(_)));
    let not_even = matches!(heat_coeffs_from_poly(&[1.0], 3, 1.0), Err(Error::DimensionOdd(3)));
    check(worst <= 1e-12 && not_monic && not_even, format!("max rel error {worst:.2e}, monic/even enforced {}", not_monic && not_even))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = random_space_params(&mut rng);
        let n = p.n() as f64;
        let sign = if (p.n() / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = p.k_const() / (2.0 * PI) * sign / n;
        let rhs = p.dim_chi() as f64 * p.vol_y() / (n * p.t_norm() * p.vol_xd());
        worst = worst.max(((lhs - rhs) / rhs).abs());
    }
    check(worst <= 1e-12, format!("max rel error {worst:.2e} over 100 parameter sets"))
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..=60 {
        let sigma1 = -3.0 + 0.1 * i as f64;
        for j in 0..=90 {
            let t_abs = 1.0 + 0.1 * j as f64;
            for t in [t_abs, -t_abs] {
                let z = Complex64::new(PI * sigma1, PI * t);
                // Independent residual oracles from tan(x+iy) = (sin 2x + i sinh 2y)/(cos 2x + cosh 2y),
                // rearranged so the cancellation happens in closed form.
                let (x2, y2, sign) = (2.0 * z.re, 2.0 * z.im, t.signum());
                let decay = (-y2.abs()).exp();
                let tan_res = Complex64::new(x2.sin(), -sign * (x2.cos() + decay)) / (x2.cos() + y2.cosh());
                let cot_res = Complex64::new(x2.sin(), sign * (decay - x2.cos())) / (y2.cosh() - x2.cos());
                let bound = trig_residual_bound(t);
                let tan_gap = (tan_c(z) - trig_asymptotic(Branch::Tan, sigma1, t).unwrap()).norm();
                let cot_gap = (cot_c(z) - trig_asymptotic(Branch::Cot, sigma1, t).unwrap()).norm();
                let oracle_gap = tan_res.norm().max(cot_res.norm());
                worst = worst.max(tan_gap / bound).max(cot_gap / bound).max(oracle_gap / bound);
            }
        }
    }
    check(worst <= 1.0, format!("max residual / 5e^(-2π|t|) = {worst:.3}"))
}

fn phi_residuals(params: &SpaceParams, sigma: &SigmaData, sigma1: f64) -> Result<(f64, f64), Error> {
    let (mut worst, mut largest) = (0.0f64, 0.0f64);
    for i in 0..=90 {
        let t = 5.0 + 0.5 * i as f64;
        let phi = phi_quadrature(Complex64::new(sigma1, t), sigma, params.k_const(), params.t_norm(), DEFAULT_REL_TOL)?;
        let (im_part, re_part) = phi_asymptotic(sigma1, t, sigma, params.k_const(), params.n())?;
        worst = worst.max((phi + Complex64::new(re_part, im_part)).norm());
        largest = largest.max(phi.norm());
    }
    Ok((worst, largest))
}

fn criterion_4() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, (params, sigma)) in [("n=2", genus2()), ("n=4", synthetic4())] {
        for sigma1 in [-0.4, -1.5, -2.7] {
            let (worst, largest) = phi_residuals(&params, &sigma, sigma1).map_err(|e| e.to_string())?;
            ok &= worst <= 10.0 && largest > 1e3;
            lines.push(format!("{name} σ₁={sigma1}: residual {worst:.3}, max|φ| {largest:.3e}"));
        }
    }
    check(ok, lines.join("; "))
}

fn p_eval(coeffs: &[f64], w: Complex64) -> Complex64 {
    // [p_{n-1}, p_{n-3}, ..., p_1] → Σ p_j w^j over odd j.
    let n = 2 * coeffs.len();
    coeffs.iter().enumerate().map(|(k, &c)| w.powi((n - 2 * k - 1) as i32) * c).sum()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sets = [genus2(), synthetic4(), cot2()];
    let mut worst = 0.0f64;
    for i in 0..100 {
        let (params, sigma) = &sets[i % 3];
        let t_norm = params.t_norm();
        let im = rng.gen_range(0.5..8.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let s = Complex64::new(rng.gen_range(-4.0..4.0), im);
        let phi = |z: Complex64| phi_quadrature(z, sigma, params.k_const(), t_norm, 1e-13).unwrap();
        let h = 1e-3;
        let d = (phi(s + h) * 8.0 - phi(s - h) * 8.0 - phi(s + 2.0 * h) + phi(s - 2.0 * h)) / (12.0 * h);
        let x = s * (PI / t_norm);
        let trig = match sigma.eps_sigma() {
            Epsilon::Half => x.sin() / x.cos(),
            Epsilon::Zero => -x.cos() / x.sin(),
        };
        let exact = p_eval(sigma.coeffs(), s) * trig * params.k_const();
        worst = worst.max((d - exact).norm() / exact.norm());
    }
    check(worst <= 1e-6, format!("max rel error {worst:.2e} at 100 points, tan and cot branches"))
}

fn random_catalog(rng: &mut ChaCha8Rng) -> SingularityCatalog {
    let count = rng.gen_range(0..=20);
    let items = (0..count)
        .map(|_| {
            let order = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
            Singularity::new(Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)), order)
        })
        .collect();
    SingularityCatalog::new(items)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let margin = 1e-2;
    let mut mismatches = 0;
    let mut total = 0;
    for _ in 0..100 {
        let cat = random_catalog(&mut rng);
        let mut done = 0;
        while done < 50 {
            let (x0, x1) = (rng.gen_range(-3.5..3.5), rng.gen_range(-3.5..3.5));
            let (y0, y1) = (rng.gen_range(-3.5..3.5), rng.gen_range(-3.5..3.5));
            let Ok(rect) = Rect::new(f64::min(x0, x1), f64::max(x0, x1), f64::min(y0, y1), f64::max(y0, y1)) else {
                continue;
            };
            if cat.items().iter().any(|it| rect.signed_distance(it.location()).abs() < margin) {
                continue;
            }
            let wound =
                winding_count(|s| model_logderiv(&cat, s), &rect, DEFAULT_MAX_PANEL_PHASE, margin).map_err(|e| e.to_string())?;
            let truth = count_catalog_in_region(&cat, &rect).map_err(|e| e.to_string())?;
            mismatches += (wound != truth) as usize;
            total += 1;
            done += 1;
        }
    }
    check(mismatches == 0, format!("{mismatches} mismatches in {total} rectangles"))
}

fn criterion_7() -> Outcome {
    let (_, sigma) = genus2();
    let cat = catalog_from_spectra(&ModelSpectrum::new(vec![], 0, 3, 2.0).unwrap(), &sigma, 2.0).unwrap();
    let lattice: Vec<(f64, i64)> = cat.items().iter().map(|it| (it.re, it.order)).collect();
    let lattice_ok = lattice == vec![(-5.0, 10), (-3.0, 6), (-1.0, 2)];

    let zero = catalog_from_spectra(&ModelSpectrum::new(vec![(0.0, 1)], 0, 0, 2.0).unwrap(), &sigma, 2.0).unwrap();
    let zero_ok = zero.items() == [Singularity::new(Complex64::new(0.0, 0.0), 2)];

    let pairs = catalog_from_spectra(&ModelSpectrum::new(vec![(1.0, 1), (1.0, 2), (2.5, 3)], 0, 0, 2.0).unwrap(), &sigma, 2.0)
        .unwrap();
    let pair_ok = pairs.items().len() == 4
        && pairs.items().iter().all(|it| {
            it.re == 0.0 && pairs.items().iter().any(|o| o.im == -it.im && o.order == it.order)
        })
        && pairs.items().iter().any(|it| it.im == 1.0 && it.order == 3);

    let q_rejected = matches!(ModelSpectrum::new(vec![], 0, 3, 2.5), Err(Error::NonIntegerOrder(_)));
    let frac = SigmaData::new(Epsilon::Half, vec![1.0, 0.1]).unwrap();
    let p_rejected = matches!(
        catalog_from_spectra(&ModelSpectrum::new(vec![], 0, 2, 2.0).unwrap(), &frac, 1.0),
        Err(Error::NonIntegerOrder(_))
    );
    let q_genus2 = integer_order(genus2().0.trivial_order_multiplier()) == Ok(2);
    let all = lattice_ok && zero_ok && pair_ok && q_rejected && p_rejected && q_genus2;
    check(
        all,
        format!(
            "lattice {lattice_ok}, zero doubling {zero_ok}, ±is pairing {pair_ok}, non-integer q {q_rejected}, non-integer order {p_rejected}, q = 2 {q_genus2}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, (params, sigma)) in [("n=2", genus2()), ("n=4", synthetic4())] {
        let (mut worst, mut largest) = (0.0f64, 0.0f64);
        for i in 0..=90 {
            let t = 5.0 + 0.5 * i as f64;
            let phi = phi_quadrature(Complex64::new(0.0, t), &sigma, params.k_const(), params.t_norm(), DEFAULT_REL_TOL)
                .map_err(|e| e.to_string())?;
            let main = n_main_term(t, &sigma, params.k_const(), params.n());
            worst = worst.max((main - phi.im / (2.0 * PI)).abs());
            largest = largest.max(main.abs());
        }
        ok &= worst <= 10.0;
        lines.push(format!("{name}: max gap {worst:.3} while main term reaches {largest:.3e}"));
    }
    check(ok, lines.join("; "))
}

fn genus2_natural() -> SpaceParams {
    build_space_params(2, 1.0, 0.5, 4.0 * PI, 4.0 * PI, 1, &[NbarWeight::new(1.0, 1)]).unwrap()
}

fn criterion_9() -> Outcome {
    let params = genus2_natural();
    let group = FuchsianGroup::new(&octagon_generators()).map_err(|e| e.to_string())?;
    let lengths = enumerate_classes(&group, &EnumerateOptions::new(8, 1.0))
        .and_then(|run| run.spectrum())
        .map_err(|e| e.to_string())?;
    let ip = IpTable::scalar_exterior(&params).map_err(|e| e.to_string())?;
    let opts = EvalOptions::lenient(60);
    let rho = params.rho();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut worst_ratio, mut worst_gap) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let s = Complex64::new(rng.gen_range(2.0 * rho + 0.5..=2.0 * rho + 3.0), rng.gen_range(-5.0..=5.0));
        let direct = ruelle_log_direct(s, &lengths, &params, &opts).map_err(|e| e.to_string())?;
        let factored = ruelle_log_factored(s, &lengths, &params, &ip, &opts).map_err(|e| e.to_string())?;
        let tail = ruelle_tail_bound(s, &lengths, &params) + ruelle_factored_tail_bound(s, &lengths, &params, &ip, opts.k_max);
        let gap = (direct - factored).norm();
        worst_gap = worst_gap.max(gap);
        worst_ratio = worst_ratio.max(gap / (1e-8 + 2.0 * tail));
    }
    check(
        lengths.l_max() >= 12.0 && worst_ratio <= 1.0,
        format!("l_max {:.3}, {} lengths, max gap {worst_gap:.2e}, max gap / allowance {worst_ratio:.2e}", lengths.l_max(), lengths.len()),
    )
}

fn criterion_10() -> Outcome {
    let group = FuchsianGroup::new(&octagon_generators()).map_err(|e| e.to_string())?;
    let short = enumerate_classes(&group, &EnumerateOptions::new(8, 1.0)).map_err(|e| e.to_string())?;
    let long = enumerate_classes(&group, &EnumerateOptions::new(10, 1.0)).map_err(|e| e.to_string())?;
    let hyperbolic = short.classes.iter().chain(&long.classes).all(|c| c.rep.trace().abs() > 2.0);
    let (a, b) = (short.spectrum().map_err(|e| e.to_string())?, long.spectrum().map_err(|e| e.to_string())?);
    let below = |s: &zeta_sing::zeta_eval::LengthSpectrum| -> Vec<(f64, u32)> {
        s.entries().iter().filter(|g| g.l <= short.l_max).map(|g| (g.l, g.mult)).collect()
    };
    let (ea, eb) = (below(&a), below(&b));
    let same = ea.len() == eb.len() && ea.iter().zip(&eb).all(|(x, y)| (x.0 - y.0).abs() <= 1e-9 && x.1 == y.1);
    check(
        same && hyperbolic,
        format!(
            "{} lengths below l_max {:.3} agree between word lengths 8 and 10: {same}; all classes hyperbolic: {hyperbolic}",
            ea.len(),
            short.l_max
        ),
    )
}

fn growth_scan(name: &str, params: &SpaceParams, sigma: &SigmaData, t_max: f64, cutoff: usize) -> Result<String, Error> {
    let eigs = weyl_quantile_eigs(sigma, params.k_const(), params.n(), t_max + 5.0);
    let q = integer_order(params.trivial_order_multiplier())?;
    let ms = ModelSpectrum::new(eigs, 1, cutoff, q as f64)?;
    let cat = catalog_from_spectra(&ms, sigma, params.t_norm())?;
    let n = params.n() as i32;
    let steps = ((t_max - 2.0) / 0.5) as usize;
    let ts: Vec<f64> = (0..=steps).map(|i| 2.0 + 0.5 * i as f64 + 1e-3).collect();
    let a = params.rho() + 0.25 * params.t_norm();
    let s_vals = ts.iter().map(|&t| catalog_argument_variation(&cat, t, a)).collect::<Result<Vec<_>, _>>()?;
    let s_fit = fit_power_law(&ts, &s_vals).map_or("no fit".into(), |(e, c)| format!("S(t) ~ {c:.3} t^{e:.3}"));
    let mut parts = vec![format!("{name}: {s_fit} (n-1 = {})", n - 1)];
    for sigma1 in [-1.5, 0.5, 2.5] {
        let logs = ts.iter().map(|&t| model_eval(&cat, Complex64::new(sigma1, t)).map(|v| v.0)).collect::<Result<Vec<_>, _>>()?;
        let c = envelope_constant(&ts, &logs, |t| t.powi(n - 1) * t.ln());
        parts.push(format!("log|Z({sigma1}+it)| <= {c:.3} t^{} log t", n - 1));
    }
    Ok(parts.join(", "))
}

fn criterion_11() -> Outcome {
    let (p2, s2) = genus2();
    let (p4, s4) = synthetic4();
    let a = growth_scan("n=2", &p2, &s2, 40.0, 40).map_err(|e| e.to_string())?;
    let b = growth_scan("n=4", &p4, &s4, 15.0, 40).map_err(|e| e.to_string())?;
    Ok(format!("{a}; {b}"))
}

fn main() {
    let criteria: [(fn() -> Outcome, u64); 11] = [
        (criterion_1, 1),
        (criterion_2, 1),
        (criterion_3, 1),
        (criterion_4, 30),
        (criterion_5, 10),
        (criterion_6, 120),
        (criterion_7, 1),
        (criterion_8, 30),
        (criterion_9, 60),
        (criterion_10, 120),
        (criterion_11, 60),
    ];
    let mut failed = 0;
    for (i, (run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (verdict, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {limit} s budget")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2}: {verdict} [{:.2} s] {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
