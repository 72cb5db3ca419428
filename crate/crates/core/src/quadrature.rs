//! Globally adaptive Gauss–Kronrod (7/15) quadrature of complex-valued
//! functions along straight segments of the complex plane.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-300, max_panels: 4000 }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

/// One 15-point Kronrod panel on parameter interval `[a, b]` of `z(u) = z0 + u·dz`.
fn kronrod<F: Fn(Complex64) -> Complex64>(
    f: &F,
    z0: Complex64,
    dz: Complex64,
    a: f64,
    b: f64,
) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(z0 + dz * center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(z0 + dz * (center - x));
        let f2 = f(z0 + dz * (center + x));
        let sum = f1 + f2;
        kron += sum * WGK[j];
        if j % 2 == 1 {
            gauss += sum * WG[j / 2];
        }
    }
    let scale = dz * half;
    let value = kron * scale;
    let err = ((kron - gauss) * scale).norm();
    (value, err)
}

/// One Kronrod panel on the segment `[a, b]` for a fallible integrand.
/// Returns the 15-point value and the Gauss-Kronrod error estimate.
pub(crate) fn try_panel<F>(f: &F, a: Complex64, b: Complex64) -> Result<(Complex64, f64)>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let failure = std::cell::RefCell::new(None);
    let g = |z: Complex64| match f(z) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            Complex64::new(f64::NAN, 0.0)
        }
    };
    let out = kronrod(&g, a, b - a, 0.0, 1.0);
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `∫_a^b f(z) dz` along the straight segment from `a` to `b`.
pub fn integrate_segment<F: Fn(Complex64) -> Complex64>(
    f: &F,
    a: Complex64,
    b: Complex64,
    opts: QuadOptions,
) -> Result<Complex64> {
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let dz = b - a;
    let (value, error) = kronrod(f, a, dz, 0.0, 1.0);
    let mut panels = vec![Panel { a: 0.0, b: 1.0, value, error }];
    loop {
        let total: Complex64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        if !total.re.is_finite() || !total.im.is_finite() || !err.is_finite() {
            return Err(Error::ToleranceNotMet { estimate: f64::INFINITY, requested: opts.rel_tol });
        }
        let target = opts.abs_tol.max(opts.rel_tol * total.norm());
        if err <= target {
            return Ok(total);
        }
        if panels.len() >= opts.max_panels {
            return Err(Error::ToleranceNotMet {
                estimate: err / total.norm().max(f64::MIN_POSITIVE),
                requested: opts.rel_tol,
            });
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let worst = panels.swap_remove(idx);
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::ToleranceNotMet {
                estimate: err / total.norm().max(f64::MIN_POSITIVE),
                requested: opts.rel_tol,
            });
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = kronrod(f, a, dz, lo, hi);
            panels.push(Panel { a: lo, b: hi, value, error });
        }
    }
}

/// Integral along a polyline through `points`.
pub fn integrate_path<F: Fn(Complex64) -> Complex64>(
    f: &F,
    points: &[Complex64],
    opts: QuadOptions,
) -> Result<Complex64> {
    points
        .windows(2)
        .map(|w| integrate_segment(f, w[0], w[1], opts))
        .sum()
}
