//! First-order oracles and benign test instances.
//!
//! An [`Oracle`] answers a query point with a function value and one
//! subgradient. [`RadialInstance`] realizes `f(x) = h(||x - x_star||)`, the
//! canonical member of the class that meets its error bound with equality.
//! [`adversarial_pair`] builds the two univariate instances that any method
//! ignorant of the optimal value cannot tell apart after one query.

use crate::bounds::ErrorBound;
use crate::error::{Error, Result};
use crate::vecmath::{dist, norm};

/// One oracle answer.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: f64,
    pub subgradient: Vec<f64>,
}

/// Optional class metadata carried by an oracle.
#[derive(Clone, Debug, Default)]
pub struct OracleMetadata {
    /// Lipschitz constant of the function itself.
    pub lipschitz: Option<f64>,
    /// Class radius `D`.
    pub radius: Option<f64>,
    pub bound: Option<ErrorBound>,
    /// Finite candidate list of minimizers (all shipped instances have
    /// closed-form minimizer sets).
    pub minimizers: Vec<Vec<f64>>,
    pub f_star: Option<f64>,
}

impl OracleMetadata {
    /// Distance from `x` to the candidate minimizer set, if one is known.
    pub fn distance_to_minimizers(&self, x: &[f64]) -> Option<f64> {
        self.minimizers
            .iter()
            .map(|m| dist(x, m))
            .min_by(|a, b| a.partial_cmp(b).unwrap())
    }
}

/// A deterministic first-order oracle. Implementations must be pure
/// functions of the query point, so concurrent queries are always safe.
pub trait Oracle: Sync {
    fn dimension(&self) -> usize;
    fn query(&self, x: &[f64]) -> Evaluation;
    fn metadata(&self) -> &OracleMetadata;
}

/// `f(x) = h(||x - center||)` with unique minimizer `center` and value 0.
#[derive(Clone, Debug)]
pub struct RadialInstance {
    center: Vec<f64>,
    bound: ErrorBound,
    meta: OracleMetadata,
}

impl RadialInstance {
    pub fn new(center: Vec<f64>, bound: ErrorBound) -> Self {
        let meta = OracleMetadata {
            lipschitz: Some(bound.lipschitz()),
            radius: Some(bound.d()),
            bound: Some(bound.clone()),
            minimizers: vec![center.clone()],
            f_star: Some(0.0),
        };
        Self { center, bound, meta }
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn bound(&self) -> &ErrorBound {
        &self.bound
    }
}

impl Oracle for RadialInstance {
    fn dimension(&self) -> usize {
        self.center.len()
    }

    /// Value `h(r)` and subgradient `s * (x - center) / r` where `s` is the
    /// left slope of `h` at `r`; the zero vector at the minimizer.
    fn query(&self, x: &[f64]) -> Evaluation {
        let r = dist(x, &self.center);
        if r == 0.0 {
            return Evaluation { value: 0.0, subgradient: vec![0.0; x.len()] };
        }
        let s = self.bound.left_slope(r);
        let g = x
            .iter()
            .zip(&self.center)
            .map(|(xi, ci)| s * (xi - ci) / r)
            .collect();
        Evaluation { value: self.bound.eval_raw(r), subgradient: g }
    }

    fn metadata(&self) -> &OracleMetadata {
        &self.meta
    }
}

/// Univariate `f(x) = slope * |x - center| + offset`. At the kink the oracle
/// reports the left subgradient `-slope`.
#[derive(Clone, Debug)]
pub struct AbsInstance {
    slope: f64,
    center: f64,
    offset: f64,
    meta: OracleMetadata,
}

impl AbsInstance {
    fn new(slope: f64, center: f64, offset: f64, bound: ErrorBound) -> Self {
        let meta = OracleMetadata {
            lipschitz: Some(slope),
            radius: Some(bound.d()),
            bound: Some(bound),
            minimizers: vec![vec![center]],
            f_star: Some(offset),
        };
        Self { slope, center, offset, meta }
    }
}

impl Oracle for AbsInstance {
    fn dimension(&self) -> usize {
        1
    }

    fn query(&self, x: &[f64]) -> Evaluation {
        let dx = x[0] - self.center;
        let sign = if dx > 0.0 { 1.0 } else { -1.0 };
        Evaluation {
            value: self.slope * dx.abs() + self.offset,
            subgradient: vec![self.slope * sign],
        }
    }

    fn metadata(&self) -> &OracleMetadata {
        &self.meta
    }
}

/// The two indistinguishable instances with `mu = (1 + eps) / sqrt(2)`:
/// `f(x) = mu |x|` from `x_0 = 0`, and `f(x) = mu |x - 1| - mu` from
/// `x_0 = 0`. Both answer `(0, -mu)` at the origin, yet their minimizers are
/// unit distance apart. Requires `0 < eps < sqrt(2) - 1` so that `mu < 1`.
pub fn adversarial_pair(eps: f64) -> Result<(AbsInstance, AbsInstance)> {
    if !(eps > 0.0 && eps < std::f64::consts::SQRT_2 - 1.0) {
        return Err(Error::Domain(format!(
            "need 0 < eps < sqrt(2) - 1 so the slope stays below the class constant, got {eps}"
        )));
    }
    let mu = (1.0 + eps) / std::f64::consts::SQRT_2;
    let bound = ErrorBound::holder(mu, 1.0, 1.0)?;
    let a = AbsInstance::new(mu, 0.0, 0.0, bound.clone());
    let b = AbsInstance::new(mu, 1.0, -mu, bound);
    Ok((a, b))
}

/// Convenience check of the subgradient inequality
/// `f(z) >= f(x) + <g_x, z - x> - tol` for one pair of points.
pub fn subgradient_inequality_slack(oracle: &dyn Oracle, x: &[f64], z: &[f64]) -> f64 {
    let ex = oracle.query(x);
    let ez = oracle.query(z);
    let lin: f64 = ex
        .subgradient
        .iter()
        .zip(x.iter().zip(z))
        .map(|(g, (xi, zi))| g * (zi - xi))
        .sum();
    ex.value + lin - ez.value
}

pub(crate) fn subgradient_norm(e: &Evaluation) -> f64 {
    norm(&e.subgradient)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_at_minimizer() {
        let b = ErrorBound::holder(0.5, 0.5, 1.0).unwrap();
        let inst = RadialInstance::new(vec![0.3, -0.2], b);
        let e = inst.query(&[0.3, -0.2]);
        assert_eq!(e.value, 0.0);
        assert_eq!(e.subgradient, vec![0.0, 0.0]);
    }

    #[test]
    fn radial_hand_values_in_extension_region() {
        // slope 1/sqrt(2) everywhere; r = 2 beyond D = 1.
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let b = ErrorBound::holder(c, 1.0, 1.0).unwrap();
        let inst = RadialInstance::new(vec![0.0, 0.0], b);
        let e = inst.query(&[1.2, 1.6]);
        assert!((e.value - 2.0 * c).abs() < 1e-15);
        assert!((e.subgradient[0] - 0.6 * c).abs() < 1e-15);
        assert!((e.subgradient[1] - 0.8 * c).abs() < 1e-15);
    }

    #[test]
    fn radial_meets_error_bound_with_equality() {
        let b = ErrorBound::holder(0.5, 0.5, 1.0).unwrap();
        let inst = RadialInstance::new(vec![0.1, 0.9, -0.4], b.clone());
        for i in 0..20 {
            let t = i as f64 * 0.1;
            let x = [0.1 + t, 0.9 - 0.5 * t, -0.4 + 0.2 * t];
            let r = dist(&x, inst.center());
            let e = inst.query(&x);
            assert!((e.value - b.eval_raw(r)).abs() <= 1e-14 * (1.0 + e.value));
        }
    }

    #[test]
    fn adversarial_pair_is_indistinguishable_at_origin() {
        let (a, b) = adversarial_pair(0.01).unwrap();
        let mu = 1.01 / std::f64::consts::SQRT_2;
        let ea = a.query(&[0.0]);
        let eb = b.query(&[0.0]);
        assert_eq!(ea.value, 0.0);
        assert_eq!(eb.value, 0.0);
        assert_eq!(ea.subgradient[0], -mu);
        assert_eq!(eb.subgradient[0], -mu);
        assert_eq!(a.metadata().minimizers[0][0], 0.0);
        assert_eq!(b.metadata().minimizers[0][0], 1.0);
    }

    #[test]
    fn adversarial_pair_range_checks() {
        assert!(adversarial_pair(0.0).is_err());
        assert!(adversarial_pair(std::f64::consts::SQRT_2 - 1.0).is_err());
        assert!(adversarial_pair(0.4).is_ok());
    }

    #[test]
    fn any_single_point_misses_one_minimizer() {
        // max(|x|, |x - 1|) >= 1/2 for every x.
        for i in -20..=40 {
            let x = i as f64 * 0.05;
            assert!(x.abs().max((x - 1.0).abs()) >= 0.5 - 1e-15);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn radial_subgradient_inequality_and_norm(
                cx in -1.0..1.0f64, cy in -1.0..1.0f64,
                px in -2.0..2.0f64, py in -2.0..2.0f64,
                qx in -2.0..2.0f64, qy in -2.0..2.0f64,
                c in 0.1..0.6f64, theta in 0.25..=1.0f64,
            ) {
                let b = ErrorBound::holder(c, theta, 1.0).unwrap();
                let l = b.lipschitz();
                let inst = RadialInstance::new(vec![cx, cy], b);
                let x = [px, py];
                let z = [qx, qy];
                let slack = subgradient_inequality_slack(&inst, &x, &z);
                prop_assert!(slack <= 1e-9);
                let e = inst.query(&x);
                prop_assert!(subgradient_norm(&e) <= l * (1.0 + 1e-12));
            }
        }
    }
}
