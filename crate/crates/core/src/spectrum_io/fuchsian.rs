//! A Fuchsian group given by the side pairings of its Dirichlet domain
//! centred at `i`, with conjugacy normal forms for hyperbolic elements.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::hyperbolic::{cosh_dist, translation, translation_length, Axis, Mat2, Sym};
use crate::error::{Error, Result};

/// Relative tolerance for treating two displacements or entries as tied.
const TIE_TOL: f64 = 1e-7;
const MATCH_TOL: f64 = 1e-7;
/// Slack on the half-plane tests describing the domain.
const DOMAIN_TOL: f64 = 1e-9;
const WALK_STEPS: usize = 100_000;

/// The group data: side pairings and their inverses, interleaved so that
/// letter `2k` is generator `k` and letter `2k+1` its inverse.
#[derive(Debug, Clone)]
pub struct FuchsianGroup {
    letters: Vec<Mat2>,
    /// `i - s·i` for each letter `s`; the domain is `{X : ⟨X, n⟩ <= 0}`.
    normals: Vec<Sym>,
    centers: Vec<Complex64>,
}

/// Size of the Dirichlet domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainShape {
    /// Largest distance from `i` to a point of the domain; `None` if unbounded.
    pub circumradius: Option<f64>,
    pub area: Option<f64>,
}

impl FuchsianGroup {
    pub fn new(generators: &[Mat2]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidParameter { key: "generators".into(), reason: "no generators".into() });
        }
        let mut letters = Vec::with_capacity(2 * generators.len());
        for (i, g) in generators.iter().enumerate() {
            if !g.entries().iter().all(|v| v.is_finite()) || (g.det() - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParameter {
                    key: "generators".into(),
                    reason: format!("generator {} has determinant {}", i + 1, g.det()),
                });
            }
            letters.push(*g);
            letters.push(g.inv());
        }
        let normals = letters.iter().map(|s| Sym::ORIGIN.comb(1.0, &Sym::ORIGIN.transform(s), -1.0)).collect();
        let centers = letters.iter().map(|s| s.act(Complex64::i())).collect();
        Ok(Self { letters, normals, centers })
    }

    pub fn letters(&self) -> &[Mat2] {
        &self.letters
    }

    pub fn word_matrix(&self, word: &[u8]) -> Mat2 {
        word.iter().fold(Mat2::IDENTITY, |acc, &l| acc.mul(&self.letters[l as usize]))
    }

    /// Letter names: `a, b, ...` for generators and capitals for inverses.
    pub fn word_name(word: &[u8]) -> String {
        word.iter()
            .map(|&l| {
                let base = (b'a' + l / 2) as char;
                if l % 2 == 0 {
                    base
                } else {
                    base.to_ascii_uppercase()
                }
            })
            .collect()
    }

    /// Centres `s·i` of the tiles adjacent to the domain.
    pub(crate) fn neighbour_centers(&self) -> &[Complex64] {
        &self.centers
    }

    pub(crate) fn in_domain(&self, x: &Sym) -> bool {
        let scale = x.form(&Sym::ORIGIN);
        self.normals.iter().all(|n| x.form(n) <= DOMAIN_TOL * scale)
    }

    /// Moves `z` into the Dirichlet domain at `i` by greedy side pairing.
    /// Returns the point and the group element `g` with `g·z` equal to it.
    pub fn reduce_point(&self, z: Complex64) -> (Complex64, Mat2) {
        let i = Complex64::i();
        let mut z = z;
        let mut g = Mat2::IDENTITY;
        let mut cur = cosh_dist(z, i);
        for _ in 0..10_000 {
            let mut best = None;
            for s in &self.letters {
                let w = s.act(z);
                let d = cosh_dist(w, i);
                if d < cur * (1.0 - 1e-13) && best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, w, *s));
                }
            }
            match best {
                Some((d, w, s)) => {
                    cur = d;
                    z = w;
                    g = s.mul(&g);
                }
                None => break,
            }
        }
        (z, g)
    }

    /// Whether `g` (of determinant 1) lies in the group.
    pub fn contains(&self, g: &Mat2) -> bool {
        let (_, k) = self.reduce_point(g.act(Complex64::i()));
        k.mul(g).approx_eq_pm(&Mat2::IDENTITY, 1e-7)
    }

    /// Conjugates of `h` by the tiles its axis crosses during one period,
    /// each expressed in the frame where the crossed tile is the domain.
    /// They are rebuilt from the axis in each frame, and the period is
    /// covered by walking half of it each way, since rounding in the axis
    /// grows exponentially with the distance walked.
    pub(crate) fn axis_conjugates(&self, h: &Mat2) -> Vec<Mat2> {
        let Some(axis) = Axis::of(h) else { return vec![*h] };
        let l = translation_length(h);
        let (_, g) = self.reduce_point(axis.foot.to_upper());
        let h = g.conj(h);
        let Some(Axis { foot: x, dir: v }) = Axis::of(&h) else { return vec![h] };
        let mut out = vec![h];
        self.walk(x, v, 0.5 * l, |x, v| out.push(translation(x, v, l)));
        let back = v.comb(-1.0, &v, 0.0);
        self.walk(x, back, 0.5 * l, |x, v| out.push(translation(x, &v.comb(-1.0, v, 0.0), l)));
        out
    }

    /// Follows the geodesic through `x` with tangent `v` for `length`,
    /// calling `visit` in the frame of each newly entered tile.
    fn walk(&self, mut x: Sym, mut v: Sym, length: f64, mut visit: impl FnMut(&Sym, &Sym)) {
        let mut travelled = 0.0;
        for _ in 0..WALK_STEPS {
            let mut exit: Option<(f64, usize)> = None;
            for (j, n) in self.normals.iter().enumerate() {
                let (p, q) = (x.form(n), v.form(n));
                if q <= 0.0 || -p >= q {
                    continue;
                }
                let tau = (-p / q).atanh().max(0.0);
                if exit.is_none_or(|(best, _)| tau < best) {
                    exit = Some((tau, j));
                }
            }
            let Some((tau, j)) = exit else { return };
            travelled += tau;
            if travelled >= length {
                return;
            }
            let (ch, sh) = (tau.cosh(), tau.sinh());
            let s_inv = self.letters[j ^ 1];
            let nx = x.comb(ch, &v, sh).transform(&s_inv);
            let nv = x.comb(sh, &v, ch).transform(&s_inv);
            // Renormalize: `⟨x, x⟩ = 1`, `⟨x, v⟩ = 0`, `⟨v, v⟩ = -1`.
            x = nx.comb(1.0 / nx.form(&nx).sqrt(), &nx, 0.0);
            let w = nv.comb(1.0, &x, -nv.form(&x));
            v = w.comb(1.0 / (-w.form(&w)).sqrt(), &w, 0.0);
            visit(&x, &v);
        }
    }

    /// Canonical representative of the conjugacy class of the hyperbolic
    /// element `h`: the lexicographically smallest among its conjugates of
    /// minimal displacement at `i`.
    pub fn canonical_conjugate(&self, h: &Mat2) -> Mat2 {
        let mut cands = self.axis_conjugates(h);
        let level = cands.iter().map(Mat2::norm2).fold(f64::INFINITY, f64::min);
        cands.retain(|c| c.norm2() <= level * (1.0 + TIE_TOL));
        self.tie_set(cands)
            .iter()
            .map(Mat2::sign_normalized)
            .reduce(|m, x| if lex_less(&x, &m, TIE_TOL) { x } else { m })
            .expect("tie set is non-empty")
    }

    /// Closes `start` under generator conjugations that stay on its norm level.
    fn tie_set(&self, start: Vec<Mat2>) -> Vec<Mat2> {
        let level = start.iter().map(Mat2::norm2).fold(f64::INFINITY, f64::min);
        let mut seen: Vec<Mat2> = Vec::new();
        for x in start {
            if !seen.iter().any(|z| z.approx_eq_pm(&x, MATCH_TOL)) {
                seen.push(x);
            }
        }
        let mut frontier = seen.clone();
        while let Some(x) = frontier.pop() {
            for s in &self.letters {
                let y = s.conj(&x);
                if (y.norm2() - level).abs() <= TIE_TOL * level && !seen.iter().any(|z| z.approx_eq_pm(&y, MATCH_TOL)) {
                    seen.push(y);
                    frontier.push(y);
                }
            }
        }
        seen
    }

    /// Whether `h` is a proper power `g^m`, `m >= 2`, of a group element,
    /// given that every nontrivial element has translation length at least
    /// `systole`.
    pub fn is_proper_power(&self, h: &Mat2, systole: f64) -> bool {
        let l = translation_length(h);
        let hn = h.sign_normalized();
        let lam = (l / 2.0).exp();
        let mut m = 2;
        while l / m as f64 >= systole * (1.0 - 1e-9) {
            // The root commutes with h, so it is alpha·h + beta·I.
            let mu = (l / (2.0 * m as f64)).exp();
            let alpha = (mu - 1.0 / mu) / (lam - 1.0 / lam);
            let beta = mu - alpha * lam;
            let root = Mat2::new(alpha * hn.a + beta, alpha * hn.b, alpha * hn.c, alpha * hn.d + beta);
            if self.contains(&root) {
                return true;
            }
            m += 1;
        }
        false
    }

    /// Distance from `i` to the domain boundary in direction `theta`.
    fn boundary_distance(&self, theta: f64) -> Option<f64> {
        let v = Sym { a: theta.cos(), b: theta.sin(), c: -theta.cos() };
        self.normals
            .iter()
            .filter_map(|n| {
                let (p, q) = (Sym::ORIGIN.form(n), v.form(n));
                (q > -p).then(|| (-p / q).atanh())
            })
            .reduce(f64::min)
    }

    /// Circumradius and area of the domain, by ray casting from `i`.
    pub fn domain_shape(&self) -> DomainShape {
        const RAYS: usize = 8192;
        let step = 2.0 * PI / RAYS as f64;
        let mut radii = Vec::with_capacity(RAYS);
        for k in 0..RAYS {
            match self.boundary_distance(k as f64 * step) {
                Some(r) if r < 40.0 => radii.push(r),
                _ => return DomainShape { circumradius: None, area: None },
            }
        }
        let area = radii.iter().map(|r| r.cosh() - 1.0).sum::<f64>() * step;
        let mut best: f64 = 0.0;
        for k in 0..RAYS {
            let (prev, next) = (radii[(k + RAYS - 1) % RAYS], radii[(k + 1) % RAYS]);
            if radii[k] >= prev && radii[k] >= next {
                let f = |t: f64| self.boundary_distance(t).unwrap_or(f64::INFINITY);
                best = best.max(golden_max(f, (k as f64 - 1.0) * step, (k as f64 + 1.0) * step));
            }
        }
        DomainShape { circumradius: Some(best * (1.0 + 1e-9) + 1e-12), area: Some(area) }
    }
}

fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (lo, hi);
    let mut best = f(lo).max(f(hi));
    for _ in 0..80 {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        let (f1, f2) = (f(x1), f(x2));
        best = best.max(f1).max(f2);
        if f1 > f2 {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    best
}

/// Lexicographic comparison treating entries within `tol` as equal.
fn lex_less(x: &Mat2, y: &Mat2, tol: f64) -> bool {
    let scale = x.norm2().sqrt().max(1.0);
    for (p, q) in x.entries().iter().zip(y.entries()) {
        if (p - q).abs() > tol * scale {
            return *p < q;
        }
    }
    false
}

/// Side pairings of the regular hyperbolic octagon with angles `π/4`
/// (genus-2 surface), as elements of `SL(2, ℝ)` acting on the upper
/// half-plane with the octagon centred at `i`.
pub fn octagon_generators() -> Vec<Mat2> {
    let ch = 1.0 + 2f64.sqrt();
    let sh = (ch * ch - 1.0).sqrt();
    (0..4)
        .map(|k| {
            // [[ch, sh e^{iθ}], [sh e^{-iθ}, ch]] in SU(1,1), moved to the half-plane.
            let beta = Complex64::from_polar(sh, k as f64 * PI / 4.0);
            Mat2::new(ch + beta.re, -beta.im, -beta.im, ch - beta.re)
        })
        .collect()
}

/// All group elements `g` with `d(i, g·i) <= radius`, by breadth-first
/// search over the side-pairing graph.
pub fn orbit_ball(group: &FuchsianGroup, radius: f64, budget: usize) -> Result<Vec<Mat2>> {
    let i = Complex64::i();
    let limit = radius.cosh() * (1.0 + 1e-12);
    let mut seen: Vec<Mat2> = vec![Mat2::IDENTITY];
    let mut frontier = vec![Mat2::IDENTITY];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for s in &group.letters {
                let h = g.mul(s);
                let key = h.act(i);
                if cosh_dist(i, key) > limit || seen.iter().any(|x| (x.act(i) - key).norm() < 1e-9 * key.norm().max(1.0)) {
                    continue;
                }
                seen.push(h);
                next.push(h);
                if seen.len() > budget {
                    return Err(Error::Overflow(budget));
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}

/// Brute-force conjugacy test: some `g` in `ball` has `g x g^{-1} = ±y`.
pub fn conjugate_by_search(ball: &[Mat2], x: &Mat2, y: &Mat2) -> bool {
    if (x.trace().abs() - y.trace().abs()).abs() > MATCH_TOL * x.trace().abs() {
        return false;
    }
    ball.iter().any(|g| g.conj(x).approx_eq_pm(y, 1e-8))
}
