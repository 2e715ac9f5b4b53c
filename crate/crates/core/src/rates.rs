//! Rate sequences.
//!
//! The central object is the recursion
//! `delta_0 = D`, `delta_n = sqrt(delta_{n-1}^2 - h(delta_{n-1})^2 / L^2)`,
//! which is simultaneously the guarantee of the Polyak-stepsize method and
//! the floor enforced by the worst-case instance. This module computes the
//! sequence, its Hölder asymptotics, the iteration threshold for a target
//! accuracy, and the power-decay comparison sequence.

use std::io::Write;

use crate::bounds::{BoundKind, ErrorBound};
use crate::error::{Error, Result};

/// Default cap on lazily extended schedules in [`n_epsilon`].
pub const N_EPSILON_CAP: usize = 10_000_000;

/// The sequence `delta_0 .. delta_N` for a bound and class constant `L`.
#[derive(Clone, Debug)]
pub struct RateSchedule {
    bound: ErrorBound,
    l: f64,
    deltas: Vec<f64>,
    h_deltas: Vec<f64>,
}

impl RateSchedule {
    pub fn bound(&self) -> &ErrorBound {
        &self.bound
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn d(&self) -> f64 {
        self.bound.d()
    }

    /// `delta_0 .. delta_N` (length `N + 1`).
    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    /// `h(delta_0) .. h(delta_N)`.
    pub fn h_deltas(&self) -> &[f64] {
        &self.h_deltas
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    /// CSV emitter with columns `n,delta,h_delta,asymptote`. The asymptote
    /// column is populated only for Hölder bounds with `theta < 1` and `n >= 1`
    /// (the weakly sharp case is already closed form).
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,delta,h_delta,asymptote")?;
        for (n, (d, hd)) in self.deltas.iter().zip(&self.h_deltas).enumerate() {
            let asym = match self.bound.kind() {
                BoundKind::Holder { c, theta } if *theta < 1.0 && n >= 1 => {
                    delta_asymptote(*c, *theta, self.l, n)
                        .map(|v| v.to_string())
                        .unwrap_or_default()
                }
                _ => String::new(),
            };
            writeln!(w, "{n},{d},{hd},{asym}")?;
        }
        Ok(())
    }
}

/// Run the rate recursion for `steps` steps.
///
/// Tiny negative radicands (at most `1e-15 * D^2` in magnitude, roundoff
/// when `h(delta) = L * delta` exactly) clamp to zero; anything more negative
/// means `h` is not `L`-Lipschitz on `[0, D]` and is an error.
pub fn delta_schedule(bound: &ErrorBound, l: f64, steps: usize) -> Result<RateSchedule> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::Domain(format!("class Lipschitz constant must be positive, got {l}")));
    }
    let d = bound.d();
    let mut deltas = Vec::with_capacity(steps + 1);
    let mut h_deltas = Vec::with_capacity(steps + 1);
    let mut delta = d;
    deltas.push(delta);
    h_deltas.push(bound.eval_raw(delta));
    for _ in 0..steps {
        let ratio = h_deltas.last().unwrap() / l;
        let rad = delta * delta - ratio * ratio;
        if rad < -1e-15 * d * d {
            return Err(Error::InvalidBound(format!(
                "rate recursion radicand {rad:.3e} at delta = {delta}; \
                 the growth function is not {l}-Lipschitz on [0, {d}]"
            )));
        }
        delta = rad.max(0.0).sqrt();
        deltas.push(delta);
        h_deltas.push(bound.eval_raw(delta));
    }
    Ok(RateSchedule { bound: bound.clone(), l, deltas, h_deltas })
}

/// Asymptotic value of `delta_n` for the Hölder bound `c * t^(1/theta)` with
/// `theta` strictly inside `(0, 1)`:
/// `((c^2/L^2) * ((1-theta)/theta) * n)^(-theta / (2 (1-theta)))`.
///
/// The weakly sharp case `theta = 1` has the exact closed form
/// [`geometric_delta`] instead and is rejected here.
pub fn delta_asymptote(c: f64, theta: f64, l: f64, n: usize) -> Result<f64> {
    if !(c > 0.0 && l > 0.0) {
        return Err(Error::Domain("coefficients must be positive".into()));
    }
    if theta == 1.0 {
        return Err(Error::Domain(
            "theta = 1 decays geometrically; use geometric_delta".into(),
        ));
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!("theta must lie in (0, 1], got {theta}")));
    }
    if n == 0 {
        return Err(Error::Domain("asymptote needs n >= 1".into()));
    }
    let base = (c * c) / (l * l) * ((1.0 - theta) / theta) * n as f64;
    Ok(base.powf(-theta / (2.0 * (1.0 - theta))))
}

/// Exact rate for the weakly sharp bound `h(t) = c * t`:
/// `(1 - c^2/L^2)^(n/2) * D`.
pub fn geometric_delta(c: f64, l: f64, d: f64, n: usize) -> f64 {
    let base = 1.0 - (c / l) * (c / l);
    base.powf(0.5 * n as f64) * d
}

/// Result of the lazy search for `min { n : h(delta_n) <= eps }`.
#[derive(Clone, Debug)]
pub struct NEpsilonReport {
    /// The exact minimum, or `None` when the search hit `cap` first.
    pub exact: Option<usize>,
    pub cap: usize,
    /// Closed-form estimate, Hölder bounds only.
    pub estimate: Option<f64>,
}

/// Smallest `n` with `h(delta_n) <= eps`, extending the recursion lazily up
/// to `cap` steps. Returns 0 whenever `eps >= h(D)`.
pub fn n_epsilon(bound: &ErrorBound, l: f64, eps: f64, cap: usize) -> Result<NEpsilonReport> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("target accuracy must be positive, got {eps}")));
    }
    if !(l > 0.0) {
        return Err(Error::Domain(format!("class Lipschitz constant must be positive, got {l}")));
    }
    let d = bound.d();
    let estimate = match bound.kind() {
        BoundKind::Holder { c, theta } => {
            if *theta < 1.0 {
                Some(theta / (1.0 - theta) * l * l / c.powf(2.0 * theta) * eps.powf(-2.0 * (1.0 - theta)))
            } else if *c < l {
                let denom = (1.0 / (1.0 - (c / l) * (c / l))).ln();
                Some((2.0 * (c * d / eps).ln() / denom).max(0.0))
            } else {
                None
            }
        }
        BoundKind::Custom { .. } => None,
    };

    let mut delta = d;
    let mut n = 0usize;
    loop {
        if bound.eval_raw(delta) <= eps {
            return Ok(NEpsilonReport { exact: Some(n), cap, estimate });
        }
        if n >= cap {
            return Ok(NEpsilonReport { exact: None, cap, estimate });
        }
        let ratio = bound.eval_raw(delta) / l;
        let rad = delta * delta - ratio * ratio;
        if rad < -1e-15 * d * d {
            return Err(Error::InvalidBound(
                "rate recursion turned negative; bound is not L-Lipschitz".into(),
            ));
        }
        delta = rad.max(0.0).sqrt();
        n += 1;
    }
}

/// The recursion `x_{n+1} = x_n - alpha * x_n^a`.
#[derive(Clone, Debug)]
pub struct PowerSequence {
    pub x0: f64,
    pub alpha: f64,
    pub a: f64,
    values: Vec<f64>,
}

impl PowerSequence {
    /// `x_0 .. x_N`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Companion asymptote `(alpha * (a - 1) * n)^(-1/(a-1))`.
    pub fn asymptote(&self, n: usize) -> f64 {
        (self.alpha * (self.a - 1.0) * n as f64).powf(-1.0 / (self.a - 1.0))
    }
}

/// Iterate `x_{n+1} = x_n - alpha * x_n^a` for `steps` steps.
///
/// Requires `x0 > 0`, `alpha > 0`, `a > 1`, and `x0 - alpha * x0^a > 0`
/// (otherwise the sequence is not guaranteed to stay positive).
pub fn power_sequence(x0: f64, alpha: f64, a: f64, steps: usize) -> Result<PowerSequence> {
    if !(x0 > 0.0 && alpha > 0.0 && a > 1.0) {
        return Err(Error::Domain(format!(
            "need x0 > 0, alpha > 0, a > 1; got x0 = {x0}, alpha = {alpha}, a = {a}"
        )));
    }
    if !(x0 - alpha * x0.powf(a) > 0.0) {
        return Err(Error::Domain(format!(
            "first step already nonpositive: x0 - alpha * x0^a = {}",
            x0 - alpha * x0.powf(a)
        )));
    }
    let mut values = Vec::with_capacity(steps + 1);
    let mut x = x0;
    values.push(x);
    for _ in 0..steps {
        x -= alpha * x.powf(a);
        values.push(x);
    }
    Ok(PowerSequence { x0, alpha, a, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::ErrorBound;

    fn holder(c: f64, theta: f64, d: f64) -> ErrorBound {
        ErrorBound::holder(c, theta, d).unwrap()
    }

    #[test]
    fn weakly_sharp_schedule_matches_closed_form() {
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let s = delta_schedule(&holder(c, 1.0, 1.0), 1.0, 20).unwrap();
        assert_eq!(s.deltas()[0], 1.0);
        assert!((s.deltas()[1] - 0.7071067811865476).abs() < 1e-15);
        for n in 0..=20 {
            let closed = geometric_delta(c, 1.0, 1.0, n);
            assert!(
                (s.deltas()[n] - closed).abs() <= 1e-12 * closed.max(1e-300),
                "n = {n}"
            );
        }
    }

    #[test]
    fn quadratic_schedule_first_step() {
        // h(1) = 0.5, delta_1 = sqrt(1 - 0.25)
        let s = delta_schedule(&holder(0.5, 0.5, 1.0), 1.0, 1).unwrap();
        assert!((s.deltas()[1] - 0.8660254037844386).abs() < 1e-15);
    }

    #[test]
    fn schedule_rejects_non_lipschitz_bound() {
        let err = delta_schedule(&holder(2.0, 1.0, 1.0), 1.0, 3);
        assert!(matches!(err, Err(Error::InvalidBound(_))));
    }

    #[test]
    fn exactly_lipschitz_bound_reaches_zero_and_stays() {
        // h(t) = t with L = 1 sends delta_1 to 0 exactly.
        let s = delta_schedule(&holder(1.0, 1.0, 1.0), 1.0, 4).unwrap();
        assert_eq!(s.deltas()[1], 0.0);
        assert_eq!(s.deltas()[4], 0.0);
        assert_eq!(s.h_deltas()[1], 0.0);
    }

    #[test]
    fn asymptote_values() {
        assert!((delta_asymptote(0.5, 0.5, 1.0, 100).unwrap() - 0.2).abs() < 1e-15);
        assert!((delta_asymptote(0.5, 0.5, 1.0, 10_000).unwrap() - 0.02).abs() < 1e-15);
        assert!(matches!(delta_asymptote(0.5, 1.0, 1.0, 10), Err(Error::Domain(_))));
        assert!(matches!(delta_asymptote(0.5, 1.5, 1.0, 10), Err(Error::Domain(_))));
    }

    #[test]
    fn schedule_approaches_asymptote() {
        let s = delta_schedule(&holder(0.5, 0.5, 1.0), 1.0, 10_000).unwrap();
        for n in [1_000usize, 3_000, 10_000] {
            let ratio = s.deltas()[n] / delta_asymptote(0.5, 0.5, 1.0, n).unwrap();
            assert!((ratio - 1.0).abs() <= 0.05, "n = {n}, ratio = {ratio}");
        }
    }

    #[test]
    fn telescoping_identity() {
        for b in [holder(0.5, 0.5, 1.0), holder(0.6, 1.0, 2.0)] {
            let s = delta_schedule(&b, 1.0, 40).unwrap();
            let n_last = s.len() - 1;
            for n in 0..n_last {
                let mut acc = s.deltas()[n_last] * s.deltas()[n_last];
                for i in (n..n_last).rev() {
                    let hd = s.h_deltas()[i] / s.l();
                    acc += hd * hd;
                }
                let expect = s.deltas()[n] * s.deltas()[n];
                assert!(
                    (acc - expect).abs() <= 1e-12 * expect.max(1e-300),
                    "n = {n}: {acc} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn n_epsilon_trivial_and_exact() {
        let b = holder(std::f64::consts::FRAC_1_SQRT_2, 1.0, 1.0);
        // eps >= h(D) means zero iterations.
        let r = n_epsilon(&b, 1.0, 1.0, N_EPSILON_CAP).unwrap();
        assert_eq!(r.exact, Some(0));
        // eps barely above h(delta_5) lands exactly at 5.
        let s = delta_schedule(&b, 1.0, 5).unwrap();
        let eps = s.h_deltas()[5] * (1.0 + 1e-12);
        let r = n_epsilon(&b, 1.0, eps, N_EPSILON_CAP).unwrap();
        assert_eq!(r.exact, Some(5));
    }

    #[test]
    fn n_epsilon_cap_is_reported() {
        let b = holder(0.5, 0.5, 1.0);
        let r = n_epsilon(&b, 1.0, 1e-6, 100).unwrap();
        assert_eq!(r.exact, None);
        assert_eq!(r.cap, 100);
    }

    #[test]
    fn n_epsilon_closed_form_tracks_exact() {
        let b = holder(std::f64::consts::FRAC_1_SQRT_2, 1.0, 1.0);
        for eps in [1e-2, 1e-4, 1e-6] {
            let r = n_epsilon(&b, 1.0, eps, N_EPSILON_CAP).unwrap();
            let exact = r.exact.unwrap() as f64;
            let est = r.estimate.unwrap();
            assert!((exact - est).abs() <= 1.0, "eps = {eps}: exact {exact}, estimate {est}");
        }
    }

    #[test]
    fn power_sequence_hand_values() {
        let p = power_sequence(0.5, 1.0, 2.0, 3).unwrap();
        assert_eq!(p.values(), &[0.5, 0.25, 0.1875, 0.15234375]);
        assert!(matches!(power_sequence(0.9, 2.0, 2.0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn power_sequence_asymptote_ratio() {
        let p = power_sequence(0.5, 1.0, 2.0, 10_000).unwrap();
        for n in [1_000usize, 5_000, 10_000] {
            let ratio = p.values()[n] / p.asymptote(n);
            assert!((ratio - 1.0).abs() <= 0.05, "n = {n}, ratio = {ratio}");
        }
    }

    #[test]
    fn schedule_csv_shape() {
        let s = delta_schedule(&holder(0.5, 0.5, 1.0), 1.0, 2).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n,delta,h_delta,asymptote"));
        assert!(lines.next().unwrap().starts_with("0,1,0.5,"));
        // theta = 1 leaves the asymptote column empty
        let s1 = delta_schedule(&holder(0.5, 1.0, 1.0), 1.0, 1).unwrap();
        let mut buf = Vec::new();
        s1.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().nth(2).unwrap().ends_with(','));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // delta_n^2 matches the power recursion under x = delta^2,
            // alpha = c^2/L^2, a = 1/theta.
            #[test]
            fn substitution_equivalence(c in 0.1..0.6f64, theta in 0.2..0.9f64) {
                let d = 1.0;
                let b = ErrorBound::holder(c, theta, d).unwrap();
                prop_assume!(b.lipschitz() <= 1.0);
                let s = delta_schedule(&b, 1.0, 50).unwrap();
                let p = power_sequence(d * d, c * c, 1.0 / theta, 50).unwrap();
                for (ds, xs) in s.deltas().iter().zip(p.values()) {
                    let lhs = ds * ds;
                    prop_assert!((lhs - xs).abs() <= 1e-12 * xs.max(1e-300));
                }
            }

            #[test]
            fn schedule_strictly_decreases_while_positive(c in 0.1..0.9f64, theta in 0.2..=1.0f64) {
                let b = ErrorBound::holder(c, theta, 1.0).unwrap();
                prop_assume!(b.lipschitz() <= 1.0);
                let s = delta_schedule(&b, 1.0, 30).unwrap();
                for w in s.deltas().windows(2) {
                    if w[0] > 0.0 && b.eval_raw(w[0]) > 0.0 {
                        prop_assert!(w[1] < w[0]);
                    } else {
                        prop_assert_eq!(w[1], w[0]);
                    }
                }
            }
        }
    }
}
