//! Timing helpers for the CLI `bench` command and the scaling checks.

/// Least-squares slope of `ln(time)` against `ln(n)`. Returns `None` with
/// fewer than two usable points; non-positive values are clamped to a
/// microsecond so cold tiny runs cannot blow up the fit.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(n, _)| *n > 0.0)
        .map(|&(n, t)| (n.ln(), t.max(1e-6).ln()))
        .collect();
    if usable.len() < 2 {
        return None;
    }
    let len = usable.len() as f64;
    let mean_x = usable.iter().map(|(x, _)| x).sum::<f64>() / len;
    let mean_y = usable.iter().map(|(_, y)| y).sum::<f64>() / len;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in &usable {
        num += (x - mean_x) * (y - mean_y);
        den += (x - mean_x) * (x - mean_x);
    }
    if den == 0.0 {
        return None;
    }
    Some(num / den)
}

#[cfg(test)]
mod tests {
    use super::loglog_slope;

    #[test]
    fn recovers_polynomial_exponents() {
        let cubic: Vec<(f64, f64)> = (1..=6).map(|n| (n as f64, (n as f64).powi(3))).collect();
        let slope = loglog_slope(&cubic).unwrap();
        assert!((slope - 3.0).abs() < 1e-9);
    }

    #[test]
    fn needs_two_points() {
        assert_eq!(loglog_slope(&[]), None);
        assert_eq!(loglog_slope(&[(4.0, 1.0)]), None);
        assert_eq!(loglog_slope(&[(4.0, 1.0), (4.0, 2.0)]), None);
    }
}
