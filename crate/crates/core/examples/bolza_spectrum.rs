//! Primitive length spectrum of the Bolza surface from its octagon
//! generators, compared with the prime geodesic theorem.

use zeta_sing::spectrum_io::{enumerate::enumerate_classes, octagon_generators, EnumerateOptions, FuchsianGroup};

fn li(x: f64) -> f64 {
    // Ramanujan's series for the logarithmic integral.
    let ln = x.ln();
    let mut sum = 0.0;
    let mut term = 1.0;
    let mut inner = 0.0;
    for n in 1..200 {
        term *= ln / n as f64;
        if (n - 1) % 2 == 0 {
            inner += 1.0 / (2 * ((n - 1) / 2) + 1) as f64;
        }
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * term / 2f64.powi(n - 1) * inner;
    }
    0.5772156649015329 + ln.ln() + x.sqrt() * sum
}

fn main() -> zeta_sing::Result<()> {
    let word_len: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let group = FuchsianGroup::new(&octagon_generators())?;
    let run = enumerate_classes(&group, &EnumerateOptions::new(word_len, 1.0))?;
    let spec = run.spectrum()?;
    println!("word length {word_len}: l_max {:.4}, {} oriented primitive classes", run.l_max, run.classes.len());
    println!("growth constant {:.3}, {} group elements visited", run.growth_const, run.elements_visited);
    for g in spec.entries().iter().take(8) {
        println!("  {:.6}  x{}", g.l, g.mult);
    }
    for x in [8.0, 10.0, run.l_max.floor()] {
        let count: u32 = spec.entries().iter().filter(|g| g.l <= x).map(|g| g.mult).sum();
        println!("pi({x}) = {count}, Li(e^{x}) = {:.0}", li(x.exp()));
    }
    Ok(())
}
