//! Small dense-vector helpers shared across the crate.

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// `x - eta * g`, elementwise.
pub(crate) fn sub_scaled(x: &[f64], eta: f64, g: &[f64]) -> Vec<f64> {
    debug_assert_eq!(x.len(), g.len());
    x.iter().zip(g).map(|(xi, gi)| xi - eta * gi).collect()
}
