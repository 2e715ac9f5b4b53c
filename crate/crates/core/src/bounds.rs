//! Growth functions.
//!
//! A growth function `h : [0, D] -> R+` is convex, increasing, vanishes at
//! zero, and is Lipschitz on its domain. It calibrates how fast an objective
//! must grow with the distance to its minimizers. Two kinds are supported:
//!
//! * `holder(c, theta)`: `h(t) = c * t^(1/theta)` with `theta` in `(0, 1]`
//!   (`theta = 1` is the weakly sharp case `h(t) = c * t`),
//! * `custom`: a tabulated piecewise-linear convex increasing function.
//!
//! Beyond `D` every bound is extended linearly with the left one-sided slope
//! of `h` at `D`, which is the smallest convex increasing extension and keeps
//! the Lipschitz constant unchanged.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used by every structural validation check.
pub const VALIDATION_RTOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub enum BoundKind {
    Holder { c: f64, theta: f64 },
    Custom { knots: Vec<(f64, f64)> },
}

/// A growth function together with its domain endpoint, Lipschitz constant
/// on the domain, and the slope of its linear extension.
///
/// Values are immutable after construction and safe to share across threads.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "BoundSpec", into = "BoundSpec")]
pub struct ErrorBound {
    kind: BoundKind,
    d: f64,
    lipschitz: f64,
    extension_slope: f64,
}

impl ErrorBound {
    /// `h(t) = c * t^(1/theta)` on `[0, d]`.
    pub fn holder(c: f64, theta: f64, d: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!("holder coefficient must be positive, got {c}")));
        }
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::Domain(format!("holder exponent must lie in (0, 1], got {theta}")));
        }
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::Domain(format!("domain endpoint must be positive, got {d}")));
        }
        // Max slope of a convex function on [0, d] is the left slope at d.
        let slope_at_d = if theta == 1.0 {
            c
        } else {
            c / theta * d.powf((1.0 - theta) / theta)
        };
        Ok(Self {
            kind: BoundKind::Holder { c, theta },
            d,
            lipschitz: slope_at_d,
            extension_slope: slope_at_d,
        })
    }

    /// Piecewise-linear bound through `knots` `[(t_0, h_0), ...]`. The first
    /// knot must be `(0, 0)`, abscissae must increase strictly, and segment
    /// slopes must be nonnegative and nondecreasing. The domain endpoint is
    /// the last abscissa.
    pub fn custom(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidBound("need at least two knots".into()));
        }
        if knots[0] != (0.0, 0.0) {
            return Err(Error::InvalidBound(format!(
                "first knot must be (0, 0), got ({}, {})",
                knots[0].0, knots[0].1
            )));
        }
        let d = knots.last().unwrap().0;
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidBound(format!("last abscissa must be positive, got {d}")));
        }
        let scale = knots.last().unwrap().1.abs().max(1.0);
        let mut prev_slope = -f64::INFINITY;
        let mut max_slope: f64 = 0.0;
        for w in knots.windows(2) {
            let (t0, v0) = w[0];
            let (t1, v1) = w[1];
            if !(t1 > t0) {
                return Err(Error::InvalidBound(format!(
                    "knot abscissae must increase strictly ({t0} then {t1})"
                )));
            }
            let slope = (v1 - v0) / (t1 - t0);
            if slope < 0.0 {
                return Err(Error::InvalidBound(format!(
                    "segment over [{t0}, {t1}] decreases (slope {slope})"
                )));
            }
            if slope < prev_slope - VALIDATION_RTOL * scale / (t1 - t0) {
                return Err(Error::InvalidBound(format!(
                    "segment slopes must be nondecreasing; {prev_slope} then {slope} at t = {t0}"
                )));
            }
            prev_slope = slope;
            max_slope = max_slope.max(slope);
        }
        // Exact left slope at d: the final segment slope.
        let (ta, va) = knots[knots.len() - 2];
        let (tb, vb) = knots[knots.len() - 1];
        let last_slope = (vb - va) / (tb - ta);
        Ok(Self {
            kind: BoundKind::Custom { knots },
            d,
            lipschitz: max_slope,
            extension_slope: last_slope,
        })
    }

    pub fn kind(&self) -> &BoundKind {
        &self.kind
    }

    /// Domain endpoint `D`.
    pub fn d(&self) -> f64 {
        self.d
    }

    /// Lipschitz constant of `h` on `[0, D]`.
    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// Slope of the linear extension beyond `D`.
    pub fn extension_slope(&self) -> f64 {
        self.extension_slope
    }

    /// Evaluate `h(t)`; `t > D` uses the linear extension.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Domain(format!("growth functions take nonnegative arguments, got {t}")));
        }
        Ok(self.eval_raw(t))
    }

    /// Evaluation without the domain check; callers guarantee `t >= 0`.
    pub(crate) fn eval_raw(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        match &self.kind {
            BoundKind::Holder { c, theta } => {
                if *theta == 1.0 {
                    // h and its extension are both exactly c * t.
                    return c * t;
                }
                if t <= self.d {
                    c * t.powf(1.0 / theta)
                } else {
                    c * self.d.powf(1.0 / theta) + self.extension_slope * (t - self.d)
                }
            }
            BoundKind::Custom { knots } => {
                if t >= self.d {
                    return knots.last().unwrap().1 + self.extension_slope * (t - self.d);
                }
                // First knot with abscissa >= t; t < d so idx < len.
                let idx = knots.partition_point(|k| k.0 < t);
                if knots[idx].0 == t {
                    return knots[idx].1;
                }
                let (t0, v0) = knots[idx - 1];
                let (t1, v1) = knots[idx];
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }

    /// Left one-sided slope of the (extended) function at `t > 0`.
    pub fn left_slope(&self, t: f64) -> f64 {
        if t > self.d {
            return self.extension_slope;
        }
        match &self.kind {
            BoundKind::Holder { c, theta } => {
                if *theta == 1.0 {
                    *c
                } else {
                    c / theta * t.max(0.0).powf((1.0 - theta) / theta)
                }
            }
            BoundKind::Custom { knots } => {
                if t <= 0.0 {
                    let (t1, v1) = knots[1];
                    return v1 / t1;
                }
                // Segment with t0 < t <= t1 carries the left slope at t.
                let idx = knots.partition_point(|k| k.0 < t).max(1);
                let (t0, v0) = knots[idx - 1];
                let (t1, v1) = knots[idx];
                (v1 - v0) / (t1 - t0)
            }
        }
    }

    /// The same function in class-normal units: distances divided by `D`,
    /// values divided by `l * D`. An `l`-Lipschitz bound becomes 1-Lipschitz
    /// on `[0, 1]`.
    pub fn normalized(&self, l: f64) -> Result<Self> {
        if !(l > 0.0) {
            return Err(Error::Domain(format!("class Lipschitz constant must be positive, got {l}")));
        }
        match &self.kind {
            BoundKind::Holder { c, theta } => {
                let c_norm = c / l * self.d.powf((1.0 - theta) / theta);
                Self::holder(c_norm, *theta, 1.0)
            }
            BoundKind::Custom { knots } => {
                let scaled = knots
                    .iter()
                    .map(|&(t, v)| (t / self.d, v / (l * self.d)))
                    .collect();
                Self::custom(scaled)
            }
        }
    }

    /// Structural validation against a class Lipschitz constant `l` on a
    /// uniform grid of `samples` points (endpoints included).
    pub fn validate(&self, l: f64, samples: usize) -> Result<ValidationReport> {
        if samples < 3 {
            return Err(Error::Domain(format!("need at least 3 samples, got {samples}")));
        }
        if !(l > 0.0) {
            return Err(Error::Domain(format!("class Lipschitz constant must be positive, got {l}")));
        }
        let scale = self.eval_raw(self.d).max(f64::MIN_POSITIVE);
        let grid: Vec<f64> = (0..samples)
            .map(|i| self.d * i as f64 / (samples - 1) as f64)
            .collect();
        let values: Vec<f64> = grid.iter().map(|&t| self.eval_raw(t)).collect();

        let vanishes_at_zero = values[0].abs() <= VALIDATION_RTOL * scale;

        let mut nondecreasing = true;
        let mut max_slope: f64 = 0.0;
        for i in 1..samples {
            let dv = values[i] - values[i - 1];
            if dv < -VALIDATION_RTOL * scale {
                nondecreasing = false;
            }
            max_slope = max_slope.max(dv / (grid[i] - grid[i - 1]));
        }
        // Midpoint test on the uniform grid: interior value below the chord
        // of its neighbors.
        let mut convex = true;
        for i in 1..samples - 1 {
            if values[i] > 0.5 * (values[i - 1] + values[i + 1]) + VALIDATION_RTOL * scale {
                convex = false;
            }
        }
        // Endpoint secant plus the analytic constant.
        max_slope = max_slope.max((values[samples - 1] - values[0]) / self.d);
        let lipschitz_ok = max_slope <= l * (1.0 + VALIDATION_RTOL)
            && self.lipschitz <= l * (1.0 + VALIDATION_RTOL);

        let holder_admissible = match &self.kind {
            BoundKind::Holder { c, theta } => {
                // Closed form: D^((1-theta)/theta) <= l * theta / c.
                Some(self.d.powf((1.0 - theta) / theta) <= l * theta / c * (1.0 + VALIDATION_RTOL))
            }
            BoundKind::Custom { .. } => None,
        };

        Ok(ValidationReport {
            vanishes_at_zero,
            nondecreasing,
            convex,
            lipschitz: lipschitz_ok,
            max_slope,
            holder_admissible,
            decay_admissible: self.lipschitz <= l / std::f64::consts::SQRT_2 * (1.0 + VALIDATION_RTOL),
        })
    }
}

/// Outcome of [`ErrorBound::validate`]; failures are reported, not thrown.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub vanishes_at_zero: bool,
    pub nondecreasing: bool,
    pub convex: bool,
    pub lipschitz: bool,
    /// Largest sampled secant slope on `[0, D]`.
    pub max_slope: f64,
    /// Closed-form admissibility inequality, Hölder kind only.
    pub holder_admissible: Option<bool>,
    /// Whether the bound is `l / sqrt(2)`-Lipschitz, the hypothesis for the
    /// decaying-stepsize guarantee.
    pub decay_admissible: bool,
}

impl ValidationReport {
    /// All class requirements hold (the `decay_admissible` flag is advisory).
    pub fn all_pass(&self) -> bool {
        self.vanishes_at_zero
            && self.nondecreasing
            && self.convex
            && self.lipschitz
            && self.holder_admissible.unwrap_or(true)
    }
}

/// Serialized shape: `{"kind":"holder","c":..,"theta":..,"D":..}` or
/// `{"kind":"custom","D":..,"knots":[[t,h],..]}`.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum BoundSpec {
    Holder {
        c: f64,
        theta: f64,
        #[serde(rename = "D")]
        d: f64,
    },
    Custom {
        #[serde(rename = "D")]
        d: f64,
        knots: Vec<(f64, f64)>,
    },
}

impl TryFrom<BoundSpec> for ErrorBound {
    type Error = Error;

    fn try_from(spec: BoundSpec) -> Result<Self> {
        match spec {
            BoundSpec::Holder { c, theta, d } => ErrorBound::holder(c, theta, d),
            BoundSpec::Custom { d, knots } => {
                let b = ErrorBound::custom(knots)?;
                if (b.d - d).abs() > 1e-12 * d.abs().max(1.0) {
                    return Err(Error::InvalidBound(format!(
                        "declared domain endpoint {d} does not match last knot {}",
                        b.d
                    )));
                }
                Ok(b)
            }
        }
    }
}

impl From<ErrorBound> for BoundSpec {
    fn from(b: ErrorBound) -> Self {
        let d = b.d;
        match b.kind {
            BoundKind::Holder { c, theta } => BoundSpec::Holder { c, theta, d },
            BoundKind::Custom { knots } => BoundSpec::Custom { d, knots },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn holder(c: f64, theta: f64, d: f64) -> ErrorBound {
        ErrorBound::holder(c, theta, d).unwrap()
    }

    #[test]
    fn holder_eval_weakly_sharp() {
        let b = holder(std::f64::consts::FRAC_1_SQRT_2, 1.0, 1.0);
        assert_eq!(b.eval(1.0).unwrap(), 0.7071067811865476);
        assert_eq!(b.eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn holder_eval_quadratic() {
        // c * t^2 = 0.5 * 0.25
        let b = holder(0.5, 0.5, 1.0);
        assert!((b.eval(0.5).unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(b.eval(0.0).unwrap(), 0.0);
    }

    #[test]
    fn negative_argument_rejected() {
        let b = holder(1.0, 1.0, 1.0);
        assert!(matches!(b.eval(-0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn weakly_sharp_is_exactly_linear() {
        let c = 0.37;
        let b = holder(c, 1.0, 2.0);
        for i in 0..=1000 {
            let t = 4.0 * i as f64 / 1000.0; // includes the extension region
            assert_eq!(b.eval_raw(t), c * t);
        }
    }

    #[test]
    fn extension_is_linear_with_left_slope() {
        let b = holder(0.5, 0.5, 1.0); // slope at D: c/theta = 1
        assert!((b.extension_slope() - 1.0).abs() < 1e-15);
        assert!((b.eval_raw(2.0) - (0.5 + 1.0)).abs() < 1e-15);
        assert_eq!(b.left_slope(1.5), b.extension_slope());
    }

    #[test]
    fn validate_quadratic_passes() {
        let r = holder(0.5, 0.5, 1.0).validate(1.0, 101).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.holder_admissible, Some(true));
    }

    #[test]
    fn validate_steep_linear_fails_lipschitz() {
        let r = holder(2.0, 1.0, 1.0).validate(1.0, 101).unwrap();
        assert!(!r.lipschitz);
        assert!(!r.all_pass());
    }

    #[test]
    fn decay_admissibility_threshold() {
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let r = holder(c, 1.0, 1.0).validate(c, 101).unwrap();
        assert!(r.all_pass());
        assert!(!r.decay_admissible); // needs lipschitz <= c / sqrt(2)
        let r2 = holder(c, 1.0, 1.0).validate(1.0, 101).unwrap();
        assert!(r2.decay_admissible); // 1/sqrt(2) <= 1/sqrt(2)
    }

    #[test]
    fn custom_round_trip_and_eval() {
        let b = ErrorBound::custom(vec![(0.0, 0.0), (0.5, 0.25), (1.0, 1.0)]).unwrap();
        assert!((b.eval_raw(0.25) - 0.125).abs() < 1e-15);
        assert!((b.eval_raw(0.75) - 0.625).abs() < 1e-15);
        assert!((b.lipschitz() - 1.5).abs() < 1e-15);
        assert!((b.extension_slope() - 1.5).abs() < 1e-15);
        let json = serde_json::to_string(&b).unwrap();
        let back: ErrorBound = serde_json::from_str(&json).unwrap();
        assert_eq!(back.eval_raw(0.6), b.eval_raw(0.6));
    }

    #[test]
    fn custom_rejects_concavity_and_bad_origin() {
        assert!(ErrorBound::custom(vec![(0.0, 0.0), (0.5, 0.6), (1.0, 1.0)]).is_err());
        assert!(ErrorBound::custom(vec![(0.1, 0.0), (1.0, 1.0)]).is_err());
        assert!(ErrorBound::custom(vec![(0.0, 0.0), (1.0, -0.5)]).is_err());
    }

    #[test]
    fn holder_json_matches_schema() {
        let b = holder(0.5, 0.5, 2.0);
        let v: serde_json::Value = serde_json::to_value(&b).unwrap();
        assert_eq!(v["kind"], "holder");
        assert_eq!(v["D"], 2.0);
        let parsed: ErrorBound =
            serde_json::from_str(r#"{"kind":"holder","c":0.5,"theta":0.5,"D":2.0}"#).unwrap();
        assert_eq!(parsed.eval_raw(1.3), b.eval_raw(1.3));
    }

    #[test]
    fn normalization_rescales_to_unit_class() {
        let b = holder(0.6, 0.5, 2.0);
        let n = b.normalized(1.2).unwrap();
        assert_eq!(n.d(), 1.0);
        // h_norm(t) = h(D t) / (L D)
        for i in 1..=10 {
            let t = i as f64 / 10.0;
            let expect = b.eval_raw(2.0 * t) / (1.2 * 2.0);
            assert!((n.eval_raw(t) - expect).abs() < 1e-14);
        }
        assert!(n.lipschitz() <= 1.0 + 1e-12);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_bound() -> impl Strategy<Value = ErrorBound> {
            let holder = (0.05..1.5f64, 0.1..=1.0f64, 0.2..2.5f64)
                .prop_map(|(c, theta, d)| ErrorBound::holder(c, theta, d).unwrap());
            let custom = proptest::collection::vec(0.01..1.0f64, 2..8).prop_map(|incr| {
                // Nondecreasing slopes yield a convex increasing table.
                let mut slopes: Vec<f64> = incr.clone();
                slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let mut knots = vec![(0.0, 0.0)];
                let (mut t, mut v) = (0.0, 0.0);
                for (i, s) in slopes.iter().enumerate() {
                    t += 0.2 + 0.1 * i as f64;
                    v += s * (0.2 + 0.1 * i as f64);
                    knots.push((t, v));
                }
                ErrorBound::custom(knots).unwrap()
            });
            prop_oneof![holder, custom]
        }

        proptest! {
            #[test]
            fn secants_are_monotone_and_lipschitz(b in arb_bound(), s in 0.0..1.0f64, t in 0.0..1.0f64) {
                let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
                let (lo, hi) = (lo * b.d(), hi * b.d());
                let dv = b.eval_raw(hi) - b.eval_raw(lo);
                prop_assert!(dv >= -1e-12 * b.eval_raw(b.d()));
                prop_assert!(dv <= b.lipschitz() * (hi - lo) + 1e-9 * b.eval_raw(b.d()));
            }

            #[test]
            fn midpoint_convexity_through_the_seam(b in arb_bound(), s in 0.0..2.0f64, t in 0.0..2.0f64) {
                let (s, t) = (s * b.d(), t * b.d());
                let mid = b.eval_raw(0.5 * (s + t));
                let chord = 0.5 * (b.eval_raw(s) + b.eval_raw(t));
                prop_assert!(mid <= chord + 1e-9 * (1.0 + chord.abs()));
            }
        }
    }
}
