//! Command-line front end. [`run`] parses arguments, dispatches to one
//! subcommand and maps errors to exit codes: 1 for invalid input, 2 for a
//! numerical failure.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::Config;
use crate::counting::{
    catalog_argument_variation, leading_coefficient_error, leading_coefficient_suite, n_main_term,
    ruelle_count_rectangle, weyl_quantile_eigs, winding_count, with_nudge, ShiftedCatalog,
    DEFAULT_MAX_PANEL_PHASE,
};
use crate::error::{Error, Result};
use crate::fe_factor::{phi_asymptotic, phi_derivative_error, phi_quadrature, DEFAULT_REL_TOL};
use crate::format::fmt15;
use crate::model_zeta::{check_region_covered, integer_order, model_logderiv, ModelFile, ModelSpectrum, Rect};
use crate::space_params::{SigmaData, SpaceParams};
use crate::spectrum_io::enumerate::enumerate_classes;
use crate::spectrum_io::{
    parse_generators, parse_spectrum, write_spectrum, EnumerateOptions,
    FuchsianGroup, SpectrumFile, GENERATORS_GRAMMAR, SPECTRUM_GRAMMAR,
};
use crate::zeta_eval::{
    ruelle_factored_tail_bound, ruelle_log_direct, ruelle_log_factored, ruelle_tail_bound, selberg_log_product,
    truncation_tail_bound, EvalOptions, IpTable, TRIVIAL_HOOK,
};

const FILE_FORMATS: &str = "\
FILE FORMATS

config file:
  key = value    keys n, T, rho, vol_Y, vol_Xd, dim_chi, eps_alpha, weights, p_coeffs
  weights = w:m[, w:m]         restricted-root weights with multiplicities
  p_coeffs = 1[, p_3, ...]     coefficients p_{n-1}, p_{n-3}, ..., p_1
  reals accept a trailing *pi; # comment

";

const MORE_FORMATS: &str = "

I_p table:
  <p> <hook> <lambda>    one line per summand of degree p; hook `triv` is trivial
  # comment

eigenvalue list:
  <s> <mult>    one Casimir parameter s >= 0 per line
  # comment

root datum:
  <a_beta> <b_beta> <d_beta>    one factor (a lambda + b) / d per line
  # comment

model file (JSON):
  {\"config\": {n, T, rho, vol_Y, vol_Xd, dim_chi, eps_alpha, weights, p_coeffs},
   \"ay_eigs\": [[s, mult], ...], \"zero_mult\": m0, \"lattice_cutoff\": k, \"q\": q}

singularity catalog (JSON lines):
  {\"re\": x, \"im\": y, \"order\": m}

OUTPUT
  tables are CSV with a header row (--format csv) or one JSON object per row
  (--format json); numbers carry 15 significant digits.

EXIT STATUS
  0 success, 1 invalid input, 2 numerical failure";

fn after_help() -> String {
    format!("{FILE_FORMATS}{SPECTRUM_GRAMMAR}\n\n{GENERATORS_GRAMMAR}{MORE_FORMATS}")
}

#[derive(Parser, Debug)]
#[command(name = "zeta-sing", version, about = "Selberg and Ruelle zeta functions: evaluation and singularity counting")]
#[command(after_long_help = after_help(), after_help = after_help())]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Grid {
    #[arg(long, default_value_t = 5.0)]
    t_min: f64,
    #[arg(long, default_value_t = 50.0)]
    t_max: f64,
    #[arg(long, default_value_t = 0.5)]
    step: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate φ(σ₁+it) against its closed-form asymptotics.
    Phi {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = -1.5, allow_negative_numbers = true)]
        sigma1: f64,
        #[command(flatten)]
        grid: Grid,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a truncated Euler product at one point.
    ZetaEval {
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        re: f64,
        #[arg(long, allow_negative_numbers = true)]
        im: f64,
        #[arg(long, value_enum, default_value_t = Product::Selberg)]
        product: Product,
        /// I_p table for `--product ruelle-factored`; defaults to the exterior powers of n̄.
        #[arg(long)]
        ip: Option<PathBuf>,
        #[arg(long, default_value_t = 60)]
        k_max: usize,
        /// Report the tail bound instead of failing when it is large.
        #[arg(long)]
        lenient: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the winding count of a model with the main term and S(t)/π.
    Count {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        /// Real part of the vertical leg of the S(t) path; defaults to rho + T/4.
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Signed Ruelle singularity count in a <= Re s <= b, 0 < Im s < t.
    RuelleCount {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        ip: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Length spectrum of a Fuchsian group given by generators.
    SpectrumGen {
        #[arg(long)]
        generators: PathBuf,
        #[arg(long)]
        word_len: usize,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Take rho and T for the header from this config.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        max_elements: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a model file from a config and an eigenvalue list.
    ModelBuild {
        #[arg(long)]
        config: PathBuf,
        /// Place eigenvalues at the Weyl-law quantiles up to this height.
        #[arg(long, conflicts_with = "eigs", required_unless_present = "eigs")]
        weyl: Option<f64>,
        #[arg(long)]
        eigs: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        zero_mult: u32,
        #[arg(long, default_value_t = 64)]
        cutoff: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        catalog_out: Option<PathBuf>,
    },
    /// Check the φ asymptotics and the derivative identity on a grid.
    CheckFe {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = -1.5, allow_negative_numbers = true)]
        sigma1: f64,
        #[command(flatten)]
        grid: Grid,
        #[arg(long, default_value_t = 10.0)]
        max_residual: f64,
        #[arg(long, default_value_t = 1e-6)]
        max_deriv_err: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Leading-coefficient identity on random parameter sets.
    Identities {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Product {
    Selberg,
    Ruelle,
    RuelleFactored,
}

/// Column-named rows of numbers, rendered as CSV or JSON lines.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|v| fmt15(*v)).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            Format::Json => {
                for row in &self.rows {
                    let cells: Vec<String> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| format!("\"{c}\":{}", if v.is_finite() { fmt15(*v) } else { "null".into() }))
                        .collect();
                    let _ = writeln!(out, "{{{}}}", cells.join(","));
                }
            }
        }
        out
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_config(path: &Path) -> Result<(Config, SpaceParams, SigmaData)> {
    let config = Config::load(path)?;
    let (params, sigma) = config.validated()?;
    Ok((config, params, sigma))
}

fn load_model(path: &Path) -> Result<(ModelFile, SpaceParams, SigmaData)> {
    let model = ModelFile::from_json(&read(path)?)?;
    let (params, sigma) = model.config.validated()?;
    Ok((model, params, sigma))
}

fn heights(t_min: f64, t_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && t_min.is_finite() && t_max >= t_min) {
        return Err(Error::InvalidParameter {
            key: "t_min,t_max,step".into(),
            reason: format!("need step > 0 and t_max >= t_min, got {t_min}, {t_max}, {step}"),
        });
    }
    let count = ((t_max - t_min) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| t_min + i as f64 * step).collect())
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return 0;
                }
                ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand => {
                    let name = e
                        .get(clap::error::ContextKind::InvalidSubcommand)
                        .map(|v| v.to_string())
                        .unwrap_or_default();
                    eprintln!("error: {}", Error::UnknownSubcommand(name));
                    return 1;
                }
                _ => {
                    let _ = e.print();
                    return 1;
                }
            }
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let format = cli.format;
    match cli.command {
        Command::Phi { config, sigma1, grid, out } => phi_cmd(&config, sigma1, &grid, format, out.as_deref()),
        Command::ZetaEval { spectrum, config, re, im, product, ip, k_max, lenient, out } => {
            let opts = if lenient { EvalOptions::lenient(k_max) } else { EvalOptions { k_max, ..EvalOptions::default() } };
            zeta_eval_cmd(&spectrum, &config, Complex64::new(re, im), product, ip.as_deref(), &opts, format, out.as_deref())
        }
        Command::Count { model, t_min, t_max, step, a, out } => {
            count_cmd(&model, t_min, t_max, step, a, format, out.as_deref())
        }
        Command::RuelleCount { model, ip, a, b, t, out } => {
            ruelle_count_cmd(&model, ip.as_deref(), a, b, t, format, out.as_deref())
        }
        Command::SpectrumGen { generators, word_len, scale, config, max_elements, out } => {
            spectrum_gen_cmd(&generators, word_len, scale, config.as_deref(), max_elements, out.as_deref())
        }
        Command::ModelBuild { config, weyl, eigs, zero_mult, cutoff, out, catalog_out } => model_build_cmd(
            &config,
            weyl,
            eigs.as_deref(),
            zero_mult,
            cutoff,
            out.as_deref(),
            catalog_out.as_deref(),
        ),
        Command::CheckFe { config, sigma1, grid, max_residual, max_deriv_err, out } => {
            check_fe_cmd(&config, sigma1, &grid, max_residual, max_deriv_err, format, out.as_deref())
        }
        Command::Identities { config, trials, seed, out } => {
            identities_cmd(config.as_deref(), trials, seed, format, out.as_deref())
        }
    }
}

fn phi_cmd(config: &Path, sigma1: f64, grid: &Grid, format: Format, out: Option<&Path>) -> Result<()> {
    let (_, params, sigma) = load_config(config)?;
    let (k, t_norm, n) = (params.k_const(), params.t_norm(), params.n());
    let mut table = Table::new(&["t", "re_phi", "im_phi", "re_asym", "im_asym"]);
    for t in heights(grid.t_min, grid.t_max, grid.step)? {
        let phi = phi_quadrature(Complex64::new(sigma1, t), &sigma, k, t_norm, DEFAULT_REL_TOL)?;
        let (im_part, re_part) = phi_asymptotic(sigma1, t, &sigma, k, n)?;
        table.push(vec![t, phi.re, phi.im, -re_part, -im_part]);
    }
    emit(&table.render(format), out)
}

fn load_spectrum(path: &Path, params: &SpaceParams) -> Result<SpectrumFile> {
    let file = parse_spectrum(&read(path)?)?;
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * y.abs();
    if !close(file.rho, params.rho()) || !close(file.t_norm, params.t_norm()) {
        return Err(Error::InvalidParameter {
            key: "spectrum".into(),
            reason: format!(
                "file has rho = {}, T = {}; config has rho = {}, T = {}",
                file.rho,
                file.t_norm,
                params.rho(),
                params.t_norm()
            ),
        });
    }
    Ok(file)
}

fn load_ip(path: Option<&Path>, params: &SpaceParams) -> Result<IpTable> {
    match path {
        Some(p) => IpTable::parse(&read(p)?, params),
        None => IpTable::scalar_exterior(params),
    }
}

#[allow(clippy::too_many_arguments)]
fn zeta_eval_cmd(
    spectrum: &Path,
    config: &Path,
    s: Complex64,
    product: Product,
    ip: Option<&Path>,
    opts: &EvalOptions,
    format: Format,
    out: Option<&Path>,
) -> Result<()> {
    let (_, params, _) = load_config(config)?;
    let spec = load_spectrum(spectrum, &params)?.spectrum;
    let (value, tail) = match product {
        Product::Selberg => {
            (selberg_log_product(s, &spec, &params, opts)?, truncation_tail_bound(s, &spec, &params, opts.k_max))
        }
        Product::Ruelle => (ruelle_log_direct(s, &spec, &params, opts)?, ruelle_tail_bound(s, &spec, &params)),
        Product::RuelleFactored => {
            let ip = load_ip(ip, &params)?;
            let tail = ruelle_factored_tail_bound(s, &spec, &params, &ip, opts.k_max);
            (ruelle_log_factored(s, &spec, &params, &ip, opts)?, tail)
        }
    };
    let mut table = Table::new(&["re", "im", "re_log", "im_log", "tail_bound"]);
    table.push(vec![s.re, s.im, value.re, value.im, tail]);
    emit(&table.render(format), out)
}

fn count_cmd(
    model: &Path,
    t_min: f64,
    t_max: f64,
    step: f64,
    a: Option<f64>,
    format: Format,
    out: Option<&Path>,
) -> Result<()> {
    let (mf, params, sigma) = load_model(model)?;
    let t_norm = params.t_norm();
    let a = a.unwrap_or(params.rho() + 0.25 * t_norm);
    let cat = mf.catalog()?;
    let margin = 1e-3 * t_norm;
    let half_width = 0.25 * t_norm;
    let ms = mf.spectrum()?;
    let t_last = *heights(t_min, t_max, step)?.last().expect("grid is non-empty");
    check_region_covered(&Rect::new(-half_width, half_width, margin, t_last + 1e-4 * t_norm)?, &ms, &sigma, t_norm)?;
    let mut tops = Vec::new();
    let mut bottom = margin;
    let mut winding = 0;
    for t in heights(t_min, t_max, step)? {
        if t <= bottom {
            return Err(Error::InvalidParameter { key: "t_min".into(), reason: format!("heights must exceed {margin}") });
        }
        let (strip, used) = with_nudge(t, t_norm, |h| {
            let rect = Rect::new(-half_width, half_width, bottom, h)?;
            winding_count(|z| model_logderiv(&cat, z), &rect, DEFAULT_MAX_PANEL_PHASE, margin)
        })?;
        winding += strip;
        tops.push((used, winding));
        bottom = used;
    }
    let rows = tops
        .into_par_iter()
        .map(|(t, winding)| {
            let main = n_main_term(t, &sigma, params.k_const(), params.n());
            let s_over_pi = catalog_argument_variation(&cat, t, a)? / PI;
            Ok(vec![t, main, winding as f64, s_over_pi, winding as f64 - main - s_over_pi])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&["t", "n_main", "winding", "s_over_pi", "residual"]);
    rows.into_iter().for_each(|r| table.push(r));
    emit(&table.render(format), out)
}

fn ruelle_count_cmd(
    model: &Path,
    ip: Option<&Path>,
    a: f64,
    b: f64,
    t: f64,
    format: Format,
    out: Option<&Path>,
) -> Result<()> {
    let (mf, params, sigma) = load_model(model)?;
    let ip = load_ip(ip, &params)?;
    let reach = Rect::new(a - params.rho(), b + params.rho(), 0.0, t * (1.0 + 1e-4) + 1e-4 * params.t_norm())?;
    check_region_covered(&reach, &mf.spectrum()?, &sigma, params.t_norm())?;
    let cat = mf.catalog()?;
    let mut parts = Vec::new();
    for (p, row) in ip.rows().iter().enumerate() {
        for line in row {
            if line.hook != TRIVIAL_HOOK {
                return Err(Error::UnknownTauHook(line.hook.clone()));
            }
            let sign = if p % 2 == 0 { 1 } else { -1 };
            parts.push(ShiftedCatalog { catalog: cat.clone(), shift: params.rho() - line.lambda, sign });
        }
    }
    let rho = params.rho();
    let t_norm = params.t_norm();
    let mut result = ruelle_count_rectangle(&parts, a, b, t, rho).map(|c| (c, t));
    if matches!(result, Err(Error::BoundaryHit(_))) {
        for shifted in [t + 1e-4 * t_norm, t - 1e-4 * t_norm] {
            if let Ok(c) = ruelle_count_rectangle(&parts, a, b, shifted, rho) {
                result = Ok((c, shifted));
                break;
            }
        }
    }
    let (count, used) = result?;
    let mut table = Table::new(&["a", "b", "t", "count"]);
    table.push(vec![a, b, used, count as f64]);
    emit(&table.render(format), out)
}

fn spectrum_gen_cmd(
    generators: &Path,
    word_len: usize,
    scale: f64,
    config: Option<&Path>,
    max_elements: Option<usize>,
    out: Option<&Path>,
) -> Result<()> {
    let header = match config {
        Some(path) => {
            let (_, params, _) = load_config(path)?;
            (params.rho(), params.t_norm())
        }
        None => (0.5 / scale, 1.0 / scale),
    };
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidParameter { key: "scale".into(), reason: format!("must be positive, got {scale}") });
    }
    let group = FuchsianGroup::new(&parse_generators(&read(generators)?)?)?;
    let mut opts = EnumerateOptions::new(word_len, scale);
    if let Some(m) = max_elements {
        opts.max_elements = m;
    }
    let enumeration = enumerate_classes(&group, &opts)?;
    let spectrum = enumeration.spectrum()?;
    eprintln!(
        "{} classes, {} lengths, l_max {}, growth_const {}, {:?}, {} elements visited",
        enumeration.classes.len(),
        spectrum.len(),
        fmt15(enumeration.l_max),
        fmt15(enumeration.growth_const),
        enumeration.method,
        enumeration.elements_visited
    );
    let file = SpectrumFile { rho: header.0, t_norm: header.1, spectrum };
    emit(&write_spectrum(&file), out)
}

fn parse_eigs(text: &str) -> Result<Vec<(f64, u32)>> {
    let mut eigs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = || Error::Parse { line: idx + 1, msg: format!("expected `s mult`, got `{body}`") };
        let toks: Vec<&str> = body.split_whitespace().collect();
        let [s, m] = toks[..] else { return Err(err()) };
        eigs.push((s.parse().map_err(|_| err())?, m.parse().map_err(|_| err())?));
    }
    Ok(eigs)
}

fn model_build_cmd(
    config: &Path,
    weyl: Option<f64>,
    eigs: Option<&Path>,
    zero_mult: u32,
    cutoff: usize,
    out: Option<&Path>,
    catalog_out: Option<&Path>,
) -> Result<()> {
    let (cfg, params, sigma) = load_config(config)?;
    let eigs = match (weyl, eigs) {
        (Some(t_max), _) => weyl_quantile_eigs(&sigma, params.k_const(), params.n(), t_max),
        (None, Some(path)) => parse_eigs(&read(path)?)?,
        (None, None) => return Err(Error::ConfigMissing("eigs".into())),
    };
    let q = integer_order(params.trivial_order_multiplier())?;
    let ms = ModelSpectrum::new(eigs, zero_mult, cutoff, q as f64)?;
    let mf = ModelFile::new(cfg, &ms);
    if let Some(path) = catalog_out {
        emit(&mf.catalog()?.to_jsonl(), Some(path))?;
    }
    emit(&mf.to_json(), out)
}

#[allow(clippy::too_many_arguments)]
fn check_fe_cmd(
    config: &Path,
    sigma1: f64,
    grid: &Grid,
    max_residual: f64,
    max_deriv_err: f64,
    format: Format,
    out: Option<&Path>,
) -> Result<()> {
    let (_, params, sigma) = load_config(config)?;
    let (k, t_norm, n) = (params.k_const(), params.t_norm(), params.n());
    let mut table = Table::new(&["t", "abs_phi", "asym_residual", "deriv_rel_err"]);
    let (mut worst_res, mut worst_deriv) = (0.0f64, 0.0f64);
    for t in heights(grid.t_min, grid.t_max, grid.step)? {
        let s = Complex64::new(sigma1, t);
        let phi = phi_quadrature(s, &sigma, k, t_norm, DEFAULT_REL_TOL)?;
        let (im_part, re_part) = phi_asymptotic(sigma1, t, &sigma, k, n)?;
        let residual = (phi + Complex64::new(re_part, im_part)).norm();
        let deriv = phi_derivative_error(s, &sigma, k, t_norm)?;
        worst_res = worst_res.max(residual);
        worst_deriv = worst_deriv.max(deriv);
        table.push(vec![t, phi.norm(), residual, deriv]);
    }
    emit(&table.render(format), out)?;
    if worst_res > max_residual {
        return Err(Error::ToleranceNotMet { estimate: worst_res, requested: max_residual });
    }
    if worst_deriv > max_deriv_err {
        return Err(Error::ToleranceNotMet { estimate: worst_deriv, requested: max_deriv_err });
    }
    Ok(())
}

const IDENTITY_TOL: f64 = 1e-12;

fn identities_cmd(config: Option<&Path>, trials: usize, seed: u64, format: Format, out: Option<&Path>) -> Result<()> {
    let mut worst = leading_coefficient_suite(trials, seed);
    if let Some(path) = config {
        let (_, params, _) = load_config(path)?;
        worst = worst.max(leading_coefficient_error(&params));
    }
    let mut table = Table::new(&["trials", "seed", "max_rel_error"]);
    table.push(vec![trials as f64, seed as f64, worst]);
    emit(&table.render(format), out)?;
    if worst > IDENTITY_TOL {
        return Err(Error::ToleranceNotMet { estimate: worst, requested: IDENTITY_TOL });
    }
    Ok(())
}
