//! `SL(2, ℝ)` matrices and the hyperboloid model of the hyperbolic plane.

use num_complex::Complex64;

/// A real 2×2 matrix of determinant 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Inverse of a determinant-1 matrix.
    pub fn inv(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn mul(&self, o: &Mat2) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// `self · h · self⁻¹`.
    pub fn conj(&self, h: &Mat2) -> Self {
        self.mul(h).mul(&self.inv())
    }

    pub fn neg(&self) -> Self {
        Self { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// `‖h‖_F² = 2 cosh d(i, h·i)`.
    pub fn norm2(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// Representative of `±h` with non-negative trace (first nonzero entry
    /// positive when the trace vanishes).
    pub fn sign_normalized(&self) -> Self {
        let t = self.trace();
        let flip = if t.abs() > 1e-12 {
            t < 0.0
        } else {
            self.entries().iter().find(|v| v.abs() > 1e-12).is_some_and(|v| *v < 0.0)
        };
        if flip {
            self.neg()
        } else {
            *self
        }
    }

    pub fn act(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Equality up to sign with tolerance `tol` relative to the larger norm.
    pub fn approx_eq_pm(&self, o: &Mat2, tol: f64) -> bool {
        let scale = self.norm2().max(o.norm2()).sqrt().max(1.0);
        let close = |x: &Mat2| self.entries().iter().zip(x.entries()).all(|(p, q)| (p - q).abs() <= tol * scale);
        close(o) || close(&o.neg())
    }
}

/// `cosh d(z, w)` in the upper half-plane.
pub fn cosh_dist(z: Complex64, w: Complex64) -> f64 {
    1.0 + (z - w).norm_sqr() / (2.0 * z.im * w.im)
}

/// Translation length `2 arccosh(|tr|/2)` of a hyperbolic element.
pub fn translation_length(h: &Mat2) -> f64 {
    2.0 * (h.trace().abs() / 2.0).acosh()
}

/// A vector of Minkowski space `ℝ^{2,1}`, stored as the symmetric matrix
/// `[[a, b], [b, c]]`; the form is the determinant and `g` acts by `X ↦ g X gᵀ`.
/// Points of the hyperbolic plane are the vectors of form 1 with `a + c > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Sym {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Sym {
    /// The point `i`.
    pub const ORIGIN: Sym = Sym { a: 1.0, b: 0.0, c: 1.0 };

    #[cfg(test)]
    pub fn from_upper(z: Complex64) -> Self {
        Self { a: z.norm_sqr() / z.im, b: z.re / z.im, c: 1.0 / z.im }
    }

    pub fn to_upper(self) -> Complex64 {
        Complex64::new(self.b / self.c, 1.0 / self.c)
    }

    /// Bilinear form; `cosh d(X, Y) = ⟨X, Y⟩` for points.
    pub fn form(&self, o: &Sym) -> f64 {
        0.5 * (self.a * o.c + self.c * o.a) - self.b * o.b
    }

    /// `p·self + q·o`.
    pub fn comb(&self, p: f64, o: &Sym, q: f64) -> Self {
        Self { a: p * self.a + q * o.a, b: p * self.b + q * o.b, c: p * self.c + q * o.c }
    }

    pub fn transform(&self, g: &Mat2) -> Self {
        let (p, q, r, s) = (g.a, g.b, g.c, g.d);
        Self {
            a: p * p * self.a + 2.0 * p * q * self.b + q * q * self.c,
            b: p * r * self.a + (p * s + q * r) * self.b + q * s * self.c,
            c: r * r * self.a + 2.0 * r * s * self.b + s * s * self.c,
        }
    }
}

/// Unit-speed parametrization `X(t) = cosh t·foot + sinh t·dir` of the axis
/// of a hyperbolic element, oriented in its translation direction, with
/// `foot` the point of the axis closest to `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Axis {
    pub foot: Sym,
    pub dir: Sym,
}

impl Axis {
    /// Axis of `h`; `None` unless `|tr h| > 2`.
    pub fn of(h: &Mat2) -> Option<Self> {
        let h = h.sign_normalized();
        let t = h.trace();
        if t <= 2.0 {
            return None;
        }
        let root = (t * t - 4.0).sqrt();
        let lam = 0.5 * (t + root);
        let plus = null_vector(&h, lam);
        let minus = null_vector(&h, 1.0 / lam);
        let k = (2.0 * plus.form(&minus)).sqrt();
        Some(Self { foot: plus.comb(1.0 / k, &minus, 1.0 / k), dir: plus.comb(1.0 / k, &minus, -1.0 / k) })
    }

    #[cfg(test)]
    pub fn at(&self, t: f64) -> Sym {
        self.foot.comb(t.cosh(), &self.dir, t.sinh())
    }
}

/// Translation by `l` along the geodesic through the point `x` with unit
/// tangent `v`, in the direction of `v`.
pub(crate) fn translation(x: &Sym, v: &Sym, l: f64) -> Mat2 {
    let (p, r) = eigenvector(&x.comb(1.0, v, 1.0));
    let (q, s) = eigenvector(&x.comb(1.0, v, -1.0));
    let det = p * s - q * r;
    let lam = (0.5 * l).exp();
    let w = lam - 1.0 / lam;
    Mat2::new(
        (p * s * lam - q * r / lam) / det,
        -p * q * w / det,
        r * s * w / det,
        (p * s / lam - q * r * lam) / det,
    )
}

/// A vector `(u, v)` with `L ∝ [[u², uv], [uv, v²]]` for the null vector `L`.
fn eigenvector(l: &Sym) -> (f64, f64) {
    if l.a >= l.c {
        (l.a, l.b)
    } else {
        (l.b, l.c)
    }
}

/// Boundary fixed point of `h` with eigenvalue `mu`, as a null vector `L`
/// normalized by `⟨L, i⟩ = 1`.
fn null_vector(h: &Mat2, mu: f64) -> Sym {
    let v1 = (h.b, mu - h.a);
    let v2 = (mu - h.d, h.c);
    let n1 = v1.0 * v1.0 + v1.1 * v1.1;
    let n2 = v2.0 * v2.0 + v2.1 * v2.1;
    let ((u, v), n) = if n1 >= n2 { (v1, n1) } else { (v2, n2) };
    Sym { a: 2.0 * u * u / n, b: 2.0 * u * v / n, c: 2.0 * v * v / n }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_gives_distance() {
        let z = Complex64::new(0.3, 2.0);
        let w = Complex64::new(-1.0, 0.5);
        let (x, y) = (Sym::from_upper(z), Sym::from_upper(w));
        assert!((x.form(&x) - 1.0).abs() < 1e-12);
        assert!((x.form(&y) - cosh_dist(z, w)).abs() < 1e-12);
        let g = Mat2::new(2.0, 1.0, 3.0, 2.0);
        assert!((x.transform(&g).to_upper() - g.act(z)).norm() < 1e-12);
    }

    #[test]
    fn axis_is_translated_by_h() {
        for h in [Mat2::new(2.0, 1.0, 3.0, 2.0), Mat2::new(3.0, 0.0, 0.0, 1.0 / 3.0), Mat2::new(-1.0, 2.0, 1.0, -3.0)] {
            let ax = Axis::of(&h).unwrap();
            let l = translation_length(&h);
            for t in [-0.7, 0.0, 1.3] {
                let moved = ax.at(t).transform(&h);
                assert!((moved.form(&ax.at(t + l)) - 1.0).abs() < 1e-9, "{h:?} {t}");
            }
            let near = ax.foot.form(&Sym::ORIGIN);
            assert!(near <= ax.at(0.01).form(&Sym::ORIGIN) && near <= ax.at(-0.01).form(&Sym::ORIGIN));
        }
        assert!(Axis::of(&Mat2::new(1.0, 1.0, 0.0, 1.0)).is_none());
        let h = Mat2::new(2.0, 1.0, 3.0, 2.0);
        let ax = Axis::of(&h).unwrap();
        let rebuilt = translation(&ax.at(0.4), &ax.dir.comb(0.4f64.cosh(), &ax.foot, 0.4f64.sinh()), translation_length(&h));
        assert!(rebuilt.approx_eq_pm(&h, 1e-12), "{rebuilt:?}");
    }
}
