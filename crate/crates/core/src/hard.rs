//! The worst-case instance.
//!
//! For a growth function `h` and class constants `L`, `D`, this module
//! builds a function on `R^(N+1)` whose unique minimizer is
//!
//! ```text
//! x_star_i = -h(delta_{i-1})  (i = 1..N),   x_star_{N+1} = -delta_N,
//! ```
//!
//! so that the squared distance from any point supported on the first `n`
//! coordinates telescopes to exactly `delta_n^2`. The radial function
//! `f(x) = h(||x - x_star||)` is then obfuscated as
//!
//! ```text
//! f_hard = max(phi_1, ..., phi_{N+1}, f),
//! ```
//!
//! where `phi_{n+1}` extends the restriction of `f` to the first `n`
//! coordinates by one coordinate while pushing every subgradient norm to
//! exactly 1. Concretely, with `z_n` the prefix of the minimizer,
//! `r = ||P_n x - z_n||` and `y = x_{n+1}`,
//!
//! ```text
//! phi_{n+1}(x) = max_{beta in [0, beta_cap]}  beta r + y sqrt(1 - beta^2) - psi_n(beta),
//! psi_n(beta)  = sup_{alpha >= 0}  alpha beta - h(sqrt(alpha^2 + delta_n^2)).
//! ```
//!
//! The resisting oracle answers a query supported on the first `k`
//! coordinates with a subgradient supported on the first `k + 1`: it
//! evaluates only `phi_1 .. phi_{k+1}` (which suffices, because all later
//! layers coincide with `f` there) and picks the smallest active layer.
//! Any method whose iterates stay in the span of past subgradients is
//! therefore forced to uncover one coordinate per step and its distance to
//! the minimizer can never drop below `delta_n`.
//!
//! Everything is built internally at `L = D = 1`; inputs and outputs are
//! rescaled at the public boundary (`x -> x / D`, values scaled by `L * D`,
//! subgradients by `L`).

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundKind, ErrorBound};
use crate::error::{Error, Result};
use crate::instances::{Evaluation, Oracle, OracleMetadata};
use crate::rates::{delta_schedule, RateSchedule};
use crate::vecmath::dist;

/// Inner-solver knobs. The defaults back every advertised tolerance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HardOptions {
    /// Value tolerance of the nested 1-D maximizations; also the tie window
    /// of the active-layer selection.
    pub inner_tol: f64,
    /// Nodes of the outer beta grid (plus one endpoint node).
    pub grid: usize,
}

impl Default for HardOptions {
    fn default() -> Self {
        Self { inner_tol: 1e-10, grid: 4096 }
    }
}

/// Answer of the resisting oracle: the active layer index comes along so
/// audits can track which piece produced the subgradient. `active == N + 1`
/// means the radial envelope itself was strictly maximal (only reachable
/// for queries with full support).
#[derive(Clone, Debug)]
pub struct ResistingEval {
    pub value: f64,
    pub subgradient: Vec<f64>,
    pub active: usize,
}

/// Construction identities evaluated on the finished instance.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionCheck {
    /// Worst relative error of the suffix-sum identity
    /// `sum_{i > n} x_star_i^2 = delta_n^2`.
    pub telescoping_rel: f64,
    /// `max_n phi_{n+1}(x_star)` (must not be meaningfully positive).
    pub phi_at_xstar_max: f64,
    /// `|f_hard(x_star)|`.
    pub f_hard_at_xstar: f64,
    /// Worst error of `f_hard(prefix_n) = h(delta_n)` over all prefixes.
    pub prefix_identity_max: f64,
    /// Disagreement of the closed-form psi route against the golden-section
    /// reference at build time (0 when no fast path exists).
    pub psi_selftest_err: f64,
}

impl ConstructionCheck {
    pub fn passes(&self) -> bool {
        self.telescoping_rel <= 1e-12
            && self.phi_at_xstar_max <= 1e-8
            && self.f_hard_at_xstar <= 1e-8
            && self.prefix_identity_max <= 1e-8
    }
}

#[derive(Clone, Debug)]
pub struct HardInstance {
    bound: ErrorBound,
    norm: ErrorBound,
    l: f64,
    d: f64,
    requested_steps: usize,
    steps: usize,
    schedule: RateSchedule,
    deltas: Vec<f64>,
    h_deltas: Vec<f64>,
    x_star: Vec<f64>,
    x_star_orig: Vec<f64>,
    f0: f64,
    s_inf: f64,
    beta_cap: f64,
    inner_tol: f64,
    beta_nodes: Vec<f64>,
    beta_roots: Vec<f64>,
    psi_tab: Vec<Vec<f64>>,
    psi_fast: bool,
    psi_selftest_err: f64,
    meta: OracleMetadata,
}

struct PhiSolution {
    value: f64,
    beta: f64,
}

/// Build the instance for `steps` resisted iterations (ambient dimension
/// `steps + 1`) with default inner-solver options.
pub fn build_hard(bound: &ErrorBound, l: f64, steps: usize) -> Result<HardInstance> {
    build_hard_with(bound, l, steps, &HardOptions::default())
}

pub fn build_hard_with(
    bound: &ErrorBound,
    l: f64,
    steps: usize,
    opts: &HardOptions,
) -> Result<HardInstance> {
    if steps < 1 {
        return Err(Error::Domain("need at least one step".into()));
    }
    if !(opts.inner_tol > 0.0) || opts.grid < 16 {
        return Err(Error::Config("inner_tol must be positive and grid at least 16".into()));
    }
    let report = bound.validate(l, 257)?;
    if !report.all_pass() {
        return Err(Error::InvalidBound(format!(
            "growth function fails class validation: {report:?}"
        )));
    }
    let d = bound.d();
    let norm = bound.normalized(l)?;

    let schedule = delta_schedule(bound, l, steps)?;
    let norm_schedule = delta_schedule(&norm, 1.0, steps)?;

    // Degenerate tail: once delta vanishes the construction has no
    // coordinate left to assign, so stop at the last meaningful index.
    let eff = (0..=steps)
        .rev()
        .find(|&n| schedule.deltas()[n] > 1e-12 * d)
        .unwrap_or(0);

    let deltas: Vec<f64> = norm_schedule.deltas()[..=eff].to_vec();
    let h_deltas: Vec<f64> = norm_schedule.h_deltas()[..=eff].to_vec();

    let mut x_star = Vec::with_capacity(eff + 1);
    for h in h_deltas.iter().take(eff) {
        x_star.push(-h);
    }
    x_star.push(-deltas[eff]);
    let x_star_orig: Vec<f64> = x_star.iter().map(|v| v * d).collect();

    let f0 = norm.eval_raw(1.0);
    let s_inf = norm.extension_slope();
    let beta_cap = s_inf.min(1.0);

    let nodes = opts.grid;
    let beta_nodes: Vec<f64> = (0..=nodes)
        .map(|j| beta_cap * (j as f64 / nodes as f64))
        .collect();
    let beta_roots: Vec<f64> = beta_nodes
        .iter()
        .map(|&b| ((1.0 - b) * (1.0 + b)).sqrt())
        .collect();

    // Enable the closed-form psi route only when it reproduces the
    // golden-section reference on a probe set.
    let (psi_fast, psi_selftest_err) = if matches!(norm.kind(), BoundKind::Holder { .. }) && eff >= 1
    {
        let mut worst: f64 = 0.0;
        let probes = [1, (eff + 1) / 2, eff];
        for &comp in probes.iter() {
            let delta = deltas[comp.max(1)];
            for frac in [0.03, 0.2, 0.45, 0.7, 0.9, 0.995] {
                let beta = frac * beta_cap;
                if beta <= 0.0 || beta >= s_inf {
                    continue;
                }
                let fast = psi_holder_route(&norm, s_inf, delta, beta);
                let slow = psi_golden_route(&norm, delta, beta);
                worst = worst.max((fast - slow).abs());
            }
        }
        (worst <= 1e-9, worst)
    } else {
        (false, 0.0)
    };

    let psi_route = |delta: f64, h_delta: f64, beta: f64| -> f64 {
        psi_dispatch(&norm, s_inf, f0, delta, h_delta, beta, psi_fast)
    };
    let psi_tab: Vec<Vec<f64>> = (1..=eff)
        .map(|comp| {
            beta_nodes
                .iter()
                .map(|&b| psi_route(deltas[comp], h_deltas[comp], b))
                .collect()
        })
        .collect();

    let meta = OracleMetadata {
        lipschitz: Some(l),
        radius: Some(d),
        bound: Some(bound.clone()),
        minimizers: vec![x_star_orig.clone()],
        f_star: Some(0.0),
    };

    Ok(HardInstance {
        bound: bound.clone(),
        norm,
        l,
        d,
        requested_steps: steps,
        steps: eff,
        schedule,
        deltas,
        h_deltas,
        x_star,
        x_star_orig,
        f0,
        s_inf,
        beta_cap,
        inner_tol: opts.inner_tol,
        beta_nodes,
        beta_roots,
        psi_tab,
        psi_fast,
        psi_selftest_err,
        meta,
    })
}

impl HardInstance {
    /// Effective number of resisted steps (may be smaller than requested
    /// when the rate sequence hits zero).
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn requested_steps(&self) -> usize {
        self.requested_steps
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn bound(&self) -> &ErrorBound {
        &self.bound
    }

    /// The rate schedule in original units, full requested length.
    pub fn schedule(&self) -> &RateSchedule {
        &self.schedule
    }

    /// The unique minimizer, original units.
    pub fn x_star(&self) -> &[f64] {
        &self.x_star_orig
    }

    pub fn inner_tol(&self) -> f64 {
        self.inner_tol
    }

    pub fn psi_fast_enabled(&self) -> bool {
        self.psi_fast
    }

    /// `P_n^* z_n`: the minimizer prefix padded with zeros, original units.
    pub fn prefix_point(&self, n: usize) -> Vec<f64> {
        assert!(n <= self.steps, "prefix index out of range");
        let mut p = vec![0.0; self.steps + 1];
        p[..n].copy_from_slice(&self.x_star_orig[..n]);
        p
    }

    fn to_norm(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.steps + 1, "query dimension mismatch");
        x.iter().map(|v| v / self.d).collect()
    }

    /// `psi_n(beta)` for `n` in `0..=steps`, in normalized units. Returns
    /// positive infinity when `beta` exceeds the asymptotic slope of the
    /// extended growth function (the conjugate is unbounded there).
    pub fn psi(&self, n: usize, beta: f64) -> Result<f64> {
        if n > self.steps {
            return Err(Error::Domain(format!(
                "layer index {n} out of range 0..={}",
                self.steps
            )));
        }
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::Domain(format!("beta must lie in [0, 1], got {beta}")));
        }
        Ok(psi_dispatch(
            &self.norm,
            self.s_inf,
            self.f0,
            self.deltas[n],
            self.h_deltas[n],
            beta,
            self.psi_fast,
        ))
    }

    fn psi_exact(&self, comp: usize, beta: f64) -> f64 {
        psi_dispatch(
            &self.norm,
            self.s_inf,
            self.f0,
            self.deltas[comp],
            self.h_deltas[comp],
            beta,
            self.psi_fast,
        )
    }

    /// Grid-plus-refinement maximization of
    /// `beta r + y sqrt(1 - beta^2) - psi_comp(beta)` over the beta range.
    fn phi_solve(&self, comp: usize, xn: &[f64]) -> PhiSolution {
        debug_assert!(comp >= 1 && comp <= self.steps);
        let r = dist(&xn[..comp], &self.x_star[..comp]);
        let y = xn[comp];
        let tab = &self.psi_tab[comp - 1];

        let mut best_j = 0usize;
        let mut best_v = f64::NEG_INFINITY;
        let mut second_j = usize::MAX;
        let mut second_v = f64::NEG_INFINITY;
        for j in 0..self.beta_nodes.len() {
            let v = self.beta_nodes[j] * r + y * self.beta_roots[j] - tab[j];
            if v > best_v {
                if best_j + 1 < j || j + 1 < best_j {
                    second_j = best_j;
                    second_v = best_v;
                }
                best_j = j;
                best_v = v;
            } else if v > second_v && (j > best_j + 1 || j + 1 < best_j) {
                second_j = j;
                second_v = v;
            }
        }

        let objective = |beta: f64| {
            beta * r + y * ((1.0 - beta) * (1.0 + beta)).sqrt() - self.psi_exact(comp, beta)
        };
        let refine = |j: usize| {
            let a = self.beta_nodes[j.saturating_sub(1)];
            let b = self.beta_nodes[(j + 1).min(self.beta_nodes.len() - 1)];
            golden_max(&objective, a, b, 70)
        };

        let (mut beta, mut value) = (self.beta_nodes[best_j], best_v);
        let (rb, rv) = refine(best_j);
        if rv > value {
            beta = rb;
            value = rv;
        }
        // A second, separated grid peak close to the best one gets its own
        // refinement; the outer objective need not be unimodal when y < 0.
        if second_j != usize::MAX && second_v >= best_v - 1e-3 * (1.0 + best_v.abs()) {
            let (rb, rv) = refine(second_j);
            if rv > value {
                beta = rb;
                value = rv;
            }
        }
        PhiSolution { value, beta }
    }

    fn phi_grad(&self, comp: usize, xn: &[f64], sol: &PhiSolution) -> Vec<f64> {
        let mut g = vec![0.0; self.steps + 1];
        if comp == 0 {
            g[0] = 1.0;
            return g;
        }
        let r = dist(&xn[..comp], &self.x_star[..comp]);
        if r > 0.0 {
            for i in 0..comp {
                g[i] = sol.beta * (xn[i] - self.x_star[i]) / r;
            }
        } else {
            // Direction tie: the objective is direction-independent, pick
            // the first coordinate of the block.
            g[0] = sol.beta;
        }
        g[comp] = ((1.0 - sol.beta) * (1.0 + sol.beta)).sqrt();
        g
    }

    fn radial_value_norm(&self, xn: &[f64]) -> f64 {
        self.norm.eval_raw(dist(xn, &self.x_star))
    }

    fn radial_grad_norm(&self, xn: &[f64]) -> Vec<f64> {
        let r = dist(xn, &self.x_star);
        if r == 0.0 {
            return vec![0.0; self.steps + 1];
        }
        let s = self.norm.left_slope(r);
        xn.iter()
            .zip(&self.x_star)
            .map(|(xi, si)| s * (xi - si) / r)
            .collect()
    }

    /// `phi_{n+1}` value and one subgradient at `x`, original units.
    /// `n = 0` is the closed form `x_1 + f(0)` with gradient `e_1`.
    pub fn phi(&self, n: usize, x: &[f64]) -> (f64, Vec<f64>) {
        assert!(n <= self.steps, "layer index out of range");
        let xn = self.to_norm(x);
        let (value, g) = if n == 0 {
            let mut g = vec![0.0; self.steps + 1];
            g[0] = 1.0;
            (xn[0] + self.f0, g)
        } else {
            let sol = self.phi_solve(n, &xn);
            let g = self.phi_grad(n, &xn, &sol);
            (sol.value, g)
        };
        (
            value * self.l * self.d,
            g.into_iter().map(|gi| gi * self.l).collect(),
        )
    }

    /// Pointwise maximum of every layer and the radial envelope, original
    /// units.
    pub fn f_hard_eval(&self, x: &[f64]) -> f64 {
        let xn = self.to_norm(x);
        let mut m = self.radial_value_norm(&xn).max(xn[0] + self.f0);
        for comp in 1..=self.steps {
            m = m.max(self.phi_solve(comp, &xn).value);
        }
        m * self.l * self.d
    }

    /// The resisting oracle. Support is detected by exact floating-point
    /// zero: span methods started at the origin keep untouched coordinates
    /// exactly zero, and the returned subgradient is supported on at most
    /// one coordinate past the query's support.
    pub fn resisting_subgradient(&self, x: &[f64]) -> ResistingEval {
        let xn = self.to_norm(x);
        let dim = self.steps + 1;
        let k = xn.iter().rposition(|&v| v != 0.0).map_or(0, |i| i + 1);
        let m = k.min(self.steps);

        let mut vals = Vec::with_capacity(m + 1);
        let mut sols: Vec<Option<PhiSolution>> = Vec::with_capacity(m + 1);
        vals.push(xn[0] + self.f0);
        sols.push(None);
        for comp in 1..=m {
            let sol = self.phi_solve(comp, &xn);
            vals.push(sol.value);
            sols.push(Some(sol));
        }
        let phi_max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

        let mut overall = phi_max;
        if k > self.steps {
            // Full support: the coincidence argument no longer covers the
            // radial envelope, so it must be consulted explicitly.
            let rv = self.radial_value_norm(&xn);
            overall = overall.max(rv);
            if rv > phi_max + self.inner_tol {
                return self.finish(overall, self.radial_grad_norm(&xn), self.steps + 1);
            }
        }

        let active = (0..=m)
            .find(|&c| vals[c] >= overall - self.inner_tol)
            .expect("an active layer always exists within the tie window");
        let g = match &sols[active] {
            None => {
                let mut g = vec![0.0; dim];
                g[0] = 1.0;
                g
            }
            Some(sol) => self.phi_grad(active, &xn, sol),
        };
        self.finish(overall, g, active)
    }

    fn finish(&self, value_norm: f64, g_norm: Vec<f64>, active: usize) -> ResistingEval {
        ResistingEval {
            value: value_norm * self.l * self.d,
            subgradient: g_norm.into_iter().map(|gi| gi * self.l).collect(),
            active,
        }
    }

    /// Evaluate the construction identities.
    pub fn self_check(&self) -> ConstructionCheck {
        let n_last = self.steps;
        let mut telescoping_rel: f64 = 0.0;
        for n in 0..=n_last {
            let mut suffix = 0.0;
            for i in n..=n_last {
                suffix += self.x_star_orig[i] * self.x_star_orig[i];
            }
            let dn = self.schedule.deltas()[n];
            let expect = dn * dn;
            telescoping_rel = telescoping_rel.max((suffix - expect).abs() / expect.max(1e-300));
        }

        let mut phi_at_xstar_max = f64::NEG_INFINITY;
        for n in 0..=n_last {
            phi_at_xstar_max = phi_at_xstar_max.max(self.phi(n, &self.x_star_orig).0);
        }

        let f_hard_at_xstar = self.f_hard_eval(&self.x_star_orig).abs();

        let mut prefix_identity_max: f64 = 0.0;
        for n in 0..=n_last {
            let value = self.f_hard_eval(&self.prefix_point(n));
            let expect = self.bound.eval_raw(self.schedule.deltas()[n]);
            prefix_identity_max = prefix_identity_max.max((value - expect).abs());
        }

        ConstructionCheck {
            telescoping_rel,
            phi_at_xstar_max,
            f_hard_at_xstar,
            prefix_identity_max,
            psi_selftest_err: self.psi_selftest_err,
        }
    }

    /// Instance descriptor in the JSON wire shape.
    pub fn descriptor(&self) -> serde_json::Value {
        serde_json::json!({
            "bound": self.bound,
            "L": self.l,
            "D": self.d,
            "N": self.requested_steps,
            "effective_N": self.steps,
        })
    }

    /// The minimizer as CSV (`i,value`), original units.
    pub fn write_x_star_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "i,value")?;
        for (i, v) in self.x_star_orig.iter().enumerate() {
            writeln!(w, "{},{v}", i + 1)?;
        }
        Ok(())
    }
}

impl Oracle for HardInstance {
    fn dimension(&self) -> usize {
        self.steps + 1
    }

    fn query(&self, x: &[f64]) -> Evaluation {
        let r = self.resisting_subgradient(x);
        Evaluation { value: r.value, subgradient: r.subgradient }
    }

    fn metadata(&self) -> &OracleMetadata {
        &self.meta
    }
}

/// Dispatch between the closed-form and golden-section psi routes, with the
/// two analytic endpoints handled exactly:
/// `psi(0) = -h(delta)` and `psi(s_inf) = s_inf - h(1)` (the supremum is
/// attained only in the limit there; the linear extension makes the limit
/// value exact and independent of delta).
fn psi_dispatch(
    norm: &ErrorBound,
    s_inf: f64,
    f0: f64,
    delta: f64,
    h_delta: f64,
    beta: f64,
    fast: bool,
) -> f64 {
    if beta > s_inf {
        return f64::INFINITY;
    }
    if beta == 0.0 {
        return -h_delta;
    }
    if beta == s_inf {
        return s_inf - f0;
    }
    if fast {
        psi_holder_route(norm, s_inf, delta, beta)
    } else {
        psi_golden_route(norm, delta, beta)
    }
}

/// Reference route: golden-section maximization of
/// `alpha beta - h(sqrt(alpha^2 + delta^2))` under the reparameterization
/// `alpha = scale * t / (1 - t)`. The objective is concave in alpha, hence
/// unimodal in `t`. The scale floor covers optima of order one even when
/// `delta` is tiny.
fn psi_golden_route(norm: &ErrorBound, delta: f64, beta: f64) -> f64 {
    let scale = delta.max(1.0);
    let omega =
        |alpha: f64| alpha * beta - norm.eval_raw((alpha * alpha + delta * delta).sqrt());
    let (_, best) = golden_max(&|t: f64| omega(scale * t / (1.0 - t)), 0.0, 1.0 - 1e-9, 100);
    best.max(omega(0.0))
}

/// Closed-form / Newton route for Hölder bounds in normalized units.
fn psi_holder_route(norm: &ErrorBound, s_inf: f64, delta: f64, beta: f64) -> f64 {
    let BoundKind::Holder { c, theta } = *norm.kind() else {
        unreachable!("fast psi route requires a Hölder bound");
    };
    if theta == 1.0 {
        // h(t) = c t globally: sup_alpha alpha beta - c sqrt(alpha^2 + d^2).
        return -delta * ((c - beta) * (c + beta)).max(0.0).sqrt();
    }
    let q = 1.0 / theta;
    // alpha at which sqrt(alpha^2 + delta^2) crosses the domain edge 1.
    let alpha_edge = (1.0 - delta * delta).max(0.0).sqrt();
    if beta >= s_inf * alpha_edge {
        // Optimum in the linear-extension region: alpha / r = beta / s_inf.
        let bt = beta / s_inf;
        let alpha = delta * bt / ((1.0 - bt) * (1.0 + bt)).sqrt();
        let r = (alpha * alpha + delta * delta).sqrt();
        return alpha * beta - (c + s_inf * (r - 1.0));
    }
    // Curved region: solve c q alpha (alpha^2 + delta^2)^((q-2)/2) = beta,
    // strictly increasing in alpha, by safeguarded Newton on (0, alpha_edge).
    let mut lo = 0.0;
    let mut hi = alpha_edge;
    let mut alpha = 0.5 * alpha_edge;
    for _ in 0..80 {
        let r2 = alpha * alpha + delta * delta;
        let g = c * q * alpha * r2.powf(0.5 * (q - 2.0));
        if g > beta {
            hi = alpha;
        } else {
            lo = alpha;
        }
        let dg = c * q * r2.powf(0.5 * (q - 4.0)) * (delta * delta + (q - 1.0) * alpha * alpha);
        let step = (beta - g) / dg;
        let next = alpha + step;
        alpha = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        if hi - lo < 1e-15 * alpha_edge || step.abs() < 1e-15 * alpha.abs() {
            break;
        }
    }
    let r = (alpha * alpha + delta * delta).sqrt();
    alpha * beta - c * r.powf(q)
}

/// Golden-section maximization on `[a, b]` that keeps the best sampled
/// point, endpoints included. Returns `(argmax, max)`.
fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut best_x = a;
    let mut best_v = f(a);
    let vb = f(b);
    if vb > best_v {
        best_x = b;
        best_v = vb;
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if b - a < 1e-16 {
            break;
        }
        if f1 >= f2 {
            if f1 > best_v {
                best_v = f1;
                best_x = x1;
            }
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            if f2 > best_v {
                best_v = f2;
                best_x = x2;
            }
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 > best_v {
        best_v = f1;
        best_x = x1;
    }
    if f2 > best_v {
        best_v = f2;
        best_x = x2;
    }
    (best_x, best_v)
}
