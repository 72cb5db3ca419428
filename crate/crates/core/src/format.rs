//! Locale-independent float formatting with 15 significant digits.

/// Shortest decimal text of `x` rounded to 15 significant digits.
///
/// Magnitudes in `[1e-5, 1e15)` print positionally, others in exponent form.
pub fn fmt15(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".into();
    }
    let mag = rounded.abs();
    if (1e-5..1e15).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::fmt15;

    #[test]
    fn examples() {
        assert_eq!(fmt15(25.0), "25");
        assert_eq!(fmt15(0.1 + 0.2), "0.3");
        assert_eq!(fmt15(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(fmt15(-1.5e-20), "-1.5e-20");
        assert_eq!(fmt15(-0.0), "0");
        assert_eq!(fmt15(1e300), "1e300");
        assert_eq!(fmt15(f64::NAN), "nan");
    }
}
