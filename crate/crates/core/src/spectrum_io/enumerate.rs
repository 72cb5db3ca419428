//! Primitive length spectra of Fuchsian groups.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::fuchsian::FuchsianGroup;
use super::hyperbolic::{cosh_dist, translation_length, Axis, Mat2};
use crate::error::{Error, Result};
use crate::zeta_eval::{Geodesic, LengthSpectrum};

const TRACE_TOL: f64 = 1e-9;
const MATCH_TOL: f64 = 1e-7;
/// Relative tolerance for merging equal lengths into one multiplicity.
const LENGTH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerateOptions {
    pub word_len_max: usize,
    pub length_scale: f64,
    /// Budget on visited group elements.
    pub max_elements: usize,
}

impl EnumerateOptions {
    pub fn new(word_len_max: usize, length_scale: f64) -> Self {
        Self { word_len_max, length_scale, max_elements: 400_000_000 }
    }
}

/// How the group elements were generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Every element of displacement at most the radius that reaches all
    /// classes up to the cutoff, via the spanning tree of the tiling.
    DisplacementBall,
    /// Reduced words up to `word_len_max` (unbounded domains).
    Words,
}

/// One primitive conjugacy class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassRecord {
    /// Scaled length.
    pub length: f64,
    /// Canonical minimal-displacement representative.
    pub rep: Mat2,
    /// Word length of the first representative found.
    pub word_len: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    /// Sorted by length.
    pub classes: Vec<ClassRecord>,
    pub l_max: f64,
    pub growth_const: f64,
    pub method: Method,
    pub elements_visited: usize,
}

impl Enumeration {
    /// Classes grouped by equal length.
    pub fn spectrum(&self) -> Result<LengthSpectrum> {
        let mut entries: Vec<Geodesic> = Vec::new();
        for c in &self.classes {
            match entries.last_mut() {
                Some(g) if (c.length - g.l).abs() <= LENGTH_TOL * g.l => g.mult += 1,
                _ => entries.push(Geodesic { l: c.length, mult: 1, trace: 1.0 }),
            }
        }
        LengthSpectrum::new(entries, self.l_max, self.growth_const)
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    m: Mat2,
    word_len: usize,
}

fn elliptic(word: &[u8], m: &Mat2) -> Error {
    Error::EllipticElementFound { word: FuchsianGroup::word_name(word), trace: m.trace() }
}

/// Cutoff `scale·W·ℓ/2` with `ℓ` the shortest generator translation length:
/// the length of a word of `W/2` copies of that generator after doubling.
pub fn certified_length(group: &FuchsianGroup, opts: &EnumerateOptions) -> Result<f64> {
    if opts.word_len_max == 0 || !(opts.length_scale > 0.0 && opts.length_scale.is_finite()) {
        return Err(Error::InvalidParameter {
            key: "word_len_max/scale".into(),
            reason: "word length and scale must be positive".into(),
        });
    }
    let mut shortest = f64::INFINITY;
    for (k, s) in group.letters().iter().enumerate().step_by(2) {
        if s.trace().abs() <= 2.0 + TRACE_TOL {
            return Err(elliptic(&[k as u8], s));
        }
        shortest = shortest.min(translation_length(s));
    }
    Ok(opts.length_scale * opts.word_len_max as f64 * shortest / 2.0)
}

/// All primitive classes of scaled length at most the certified cutoff.
pub fn enumerate_classes(group: &FuchsianGroup, opts: &EnumerateOptions) -> Result<Enumeration> {
    let l_max = certified_length(group, opts)?;
    let natural = l_max / opts.length_scale;
    let trace_cut = 2.0 * (natural / 2.0).cosh() * (1.0 + 1e-12);
    let shape = group.domain_shape();
    let (cands, visited, method) = match shape.circumradius {
        Some(r) => {
            // A class of length L has a conjugate whose axis meets the domain,
            // displacing i by at most this much.
            let radius = 2.0 * (r.cosh() * (natural / 2.0).sinh()).asinh();
            let (c, v) = ball_candidates(group, radius, trace_cut, opts.max_elements)?;
            (c, v, Method::DisplacementBall)
        }
        None => {
            let c = word_candidates(group, opts.word_len_max, trace_cut, opts.max_elements)?;
            let v = c.len();
            (dedup_elements(c), v, Method::Words)
        }
    };
    let classes = classes_from_candidates(group, cands, opts.length_scale);
    let growth_const = match (shape.circumradius, shape.area) {
        (Some(r), Some(a)) => PI * r.exp() * (r.cosh() + 1.0).powi(2) / a,
        _ => classes
            .iter()
            .enumerate()
            .map(|(k, c)| (k + 1) as f64 * (-c.length / opts.length_scale).exp())
            .fold(1.0, f64::max),
    };
    Ok(Enumeration { classes, l_max, growth_const, method, elements_visited: visited })
}

/// Spectrum of the group generated by `generators` up to the certified cutoff.
pub fn fuchsian_enumerate(generators: &[Mat2], word_len_max: usize, length_scale: f64) -> Result<LengthSpectrum> {
    let group = FuchsianGroup::new(generators)?;
    enumerate_classes(&group, &EnumerateOptions::new(word_len_max, length_scale))?.spectrum()
}

struct Ball<'a> {
    group: &'a FuchsianGroup,
    limit: f64,
    trace_cut: f64,
    budget: usize,
}

impl Ball<'_> {
    /// Depth-first walk of the subtree below `g`. A tile's parent is its
    /// neighbour closest to `i`, the lowest letter winning ties.
    fn visit(&self, g: &Mat2, path: &mut Vec<u8>, out: &mut Vec<Candidate>, count: &mut usize) -> Result<()> {
        let i = Complex64::i();
        for (s, letter) in self.group.letters().iter().enumerate() {
            if path.last() == Some(&(s as u8 ^ 1)) {
                continue;
            }
            let n = g.mul(letter);
            if 0.5 * n.norm2() > self.limit {
                continue;
            }
            let z = n.inv().act(i);
            let mut best = (f64::INFINITY, 0);
            for (k, w) in self.group.neighbour_centers().iter().enumerate() {
                let d = cosh_dist(z, *w);
                if d < best.0 * (1.0 - 1e-10) {
                    best = (d, k);
                }
            }
            if best.1 != s ^ 1 {
                continue;
            }
            *count += 1;
            if *count > self.budget {
                return Err(Error::Overflow(self.budget));
            }
            path.push(s as u8);
            let t = n.trace().abs();
            if t <= 2.0 + TRACE_TOL {
                return Err(elliptic(path, &n));
            }
            if t <= self.trace_cut && Axis::of(&n).is_some_and(|ax| self.group.in_domain(&ax.foot)) {
                out.push(Candidate { m: n, word_len: path.len() });
            }
            let r = self.visit(&n, path, out, count);
            path.pop();
            r?;
        }
        Ok(())
    }
}

/// Elements within `radius` of the identity whose axis foot lies in the
/// domain and whose trace is at most `trace_cut`.
fn ball_candidates(group: &FuchsianGroup, radius: f64, trace_cut: f64, budget: usize) -> Result<(Vec<Candidate>, usize)> {
    let ball = Ball { group, limit: radius.cosh() * (1.0 + 1e-9), trace_cut, budget };
    let roots: Vec<u8> = (0..group.letters().len() as u8).collect();
    let parts: Vec<Result<(Vec<Candidate>, usize)>> = roots
        .par_iter()
        .map(|&s| {
            // Only the subtree through letter s: seed the walk one level down.
            let n = group.letters()[s as usize];
            let mut out = Vec::new();
            let mut count = 1;
            let mut path = vec![s];
            let t = n.trace().abs();
            if t <= 2.0 + TRACE_TOL {
                return Err(elliptic(&path, &n));
            }
            if 0.5 * n.norm2() > ball.limit {
                return Ok((out, 0));
            }
            if t <= trace_cut && Axis::of(&n).is_some_and(|ax| group.in_domain(&ax.foot)) {
                out.push(Candidate { m: n, word_len: 1 });
            }
            ball.visit(&n, &mut path, &mut out, &mut count)?;
            Ok((out, count))
        })
        .collect();
    let mut cands = Vec::new();
    let mut visited = 1;
    for p in parts {
        let (c, v) = p?;
        cands.extend(c);
        visited += v;
        if visited > budget {
            return Err(Error::Overflow(budget));
        }
    }
    Ok((cands, visited))
}

fn rotation_minimal(word: &[u8]) -> bool {
    let n = word.len();
    (1..n).all(|r| {
        for k in 0..n {
            let (x, y) = (word[(r + k) % n], word[k]);
            if x != y {
                return x > y;
            }
        }
        true
    })
}

fn word_dfs(
    group: &FuchsianGroup,
    word: &mut Vec<u8>,
    prod: Mat2,
    max_len: usize,
    trace_cut: f64,
    out: &mut Vec<Candidate>,
) -> Result<()> {
    let n = word.len();
    let (first, last) = (word[0], word[n - 1]);
    if (n == 1 || last != first ^ 1) && rotation_minimal(word) {
        let t = prod.trace().abs();
        if t <= 2.0 + TRACE_TOL {
            if !prod.approx_eq_pm(&Mat2::IDENTITY, 1e-8) {
                return Err(elliptic(word, &prod));
            }
        } else if t <= trace_cut {
            out.push(Candidate { m: prod, word_len: n });
        }
    }
    if n == max_len {
        return Ok(());
    }
    for next in first..group.letters().len() as u8 {
        if next == last ^ 1 {
            continue;
        }
        word.push(next);
        let r = word_dfs(group, word, prod.mul(&group.letters()[next as usize]), max_len, trace_cut, out);
        word.pop();
        r?;
    }
    Ok(())
}

/// Cyclically reduced, rotation-minimal words up to `max_len` with trace at
/// most `trace_cut`.
fn word_candidates(group: &FuchsianGroup, max_len: usize, trace_cut: f64, budget: usize) -> Result<Vec<Candidate>> {
    let firsts: Vec<u8> = (0..group.letters().len() as u8).collect();
    let parts: Vec<Result<Vec<Candidate>>> = firsts
        .par_iter()
        .map(|&a| {
            let mut out = Vec::new();
            word_dfs(group, &mut vec![a], group.letters()[a as usize], max_len, trace_cut, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut cands = Vec::new();
    for p in parts {
        cands.extend(p?);
        if cands.len() > budget {
            return Err(Error::Overflow(budget));
        }
    }
    Ok(cands)
}

/// Drops repeated group elements, keeping the shortest word.
fn dedup_elements(mut cands: Vec<Candidate>) -> Vec<Candidate> {
    cands.sort_by(|x, y| x.m.trace().abs().total_cmp(&y.m.trace().abs()).then(x.word_len.cmp(&y.word_len)));
    let mut unique: Vec<Candidate> = Vec::with_capacity(cands.len());
    let mut start = 0;
    for c in cands {
        let t = c.m.trace().abs();
        while start < unique.len() && unique[start].m.trace().abs() < t * (1.0 - MATCH_TOL) {
            start += 1;
        }
        if !unique[start..].iter().any(|u| u.m.approx_eq_pm(&c.m, MATCH_TOL)) {
            unique.push(c);
        }
    }
    unique
}

fn classes_from_candidates(group: &FuchsianGroup, cands: Vec<Candidate>, scale: f64) -> Vec<ClassRecord> {
    let canon: Vec<Candidate> = cands
        .par_iter()
        .map(|c| Candidate { m: group.canonical_conjugate(&c.m), word_len: c.word_len })
        .collect();
    let merged = dedup_elements(canon);
    let systole = merged.iter().map(|c| translation_length(&c.m)).fold(f64::INFINITY, f64::min);
    let prim: Vec<bool> = merged.par_iter().map(|c| !group.is_proper_power(&c.m, systole)).collect();
    let mut out: Vec<ClassRecord> = merged
        .into_iter()
        .zip(prim)
        .filter(|(_, p)| *p)
        .map(|(c, _)| ClassRecord { length: scale * translation_length(&c.m), rep: c.m, word_len: c.word_len })
        .collect();
    out.sort_by(|x, y| x.length.total_cmp(&y.length).then_with(|| lex_cmp(&x.rep, &y.rep)));
    out
}

fn lex_cmp(x: &Mat2, y: &Mat2) -> std::cmp::Ordering {
    x.entries()
        .iter()
        .zip(y.entries())
        .map(|(p, q)| p.total_cmp(&q))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}
