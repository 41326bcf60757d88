//! Weighted integration against the measure `|x|^(2a+1) dx / (2^(a+1) Gamma(a+1))`,
//! L^p norms, and the adaptive Gauss-Legendre engine behind them, including
//! the substitution-based treatment of integrable endpoint singularities.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::special::Alpha;

/// A real-valued function of one real variable that quadrature and the
/// operator pipeline can consume. `support_radius` reports a radius beyond
/// which the function is negligible at the given threshold; unbounded
/// callers may return `f64::INFINITY`.
pub trait RealFn: Sync {
    fn eval(&self, x: f64) -> f64;

    fn support_radius(&self, _eps: f64) -> f64 {
        f64::INFINITY
    }

    /// Characteristic length on which the function varies, used to pick
    /// sampling grids. Defaults to 1.
    fn feature_scale(&self) -> f64 {
        1.0
    }
}

impl<F: Fn(f64) -> f64 + Sync> RealFn for F {
    fn eval(&self, x: f64) -> f64 {
        self(x)
    }
}

/// How endpoint singularities are mapped away before panel integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SingularRule {
    /// Power substitution `x = edge + w u^m` on each half, the grading
    /// `m` picked from the declared endpoint exponent so the transformed
    /// integrand is smooth at the edge.
    GradedSubstitution,
    /// No substitution; rely on adaptive refinement only.
    PlainPanels,
}

/// Node counts, truncation radii, and tolerances for all numeric integrals.
#[derive(Debug, Clone, serde::Serialize)]
pub struct QuadratureSpec {
    /// Gauss-Legendre points of the low rule on each panel (the error
    /// estimate pairs it with the doubled rule).
    pub node_count: usize,
    /// Where unbounded domains are cut off.
    pub truncation_radius: f64,
    /// Endpoint-singularity treatment.
    pub singular_rule: SingularRule,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Panel budget of the adaptive subdivision.
    pub max_panels: usize,
    /// Base spacing of cached sample grids (translation profiles and the
    /// like), in units of the sampled function's feature scale.
    pub cache_spacing: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            node_count: 16,
            truncation_radius: 12.0,
            singular_rule: SingularRule::GradedSubstitution,
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_panels: 4000,
            cache_spacing: 0.2,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 8 {
            return Err(Error::InvalidParameter(format!(
                "node_count must be >= 8, got {}",
                self.node_count
            )));
        }
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "rel_tol and abs_tol must be positive".into(),
            ));
        }
        if !(self.truncation_radius > 0.0) {
            return Err(Error::InvalidParameter(
                "truncation_radius must be positive".into(),
            ));
        }
        if !(self.cache_spacing > 0.0) {
            return Err(Error::InvalidParameter(
                "cache_spacing must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Spec with tolerances loosened by the given factor, for inner stages
    /// of nested quadratures.
    pub fn scaled_tol(&self, factor: f64) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            ..self.clone()
        }
    }
}

// ---------------------------------------------------------------------------
// Gauss-Legendre rules

struct GlRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GlRule {
    /// Nodes and weights on [-1, 1] by Newton iteration on the Legendre
    /// recurrence.
    fn build(n: usize) -> GlRule {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi-style initial guess
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Legendre P_n(x) and derivative via the three-term recurrence
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GlRule { nodes, weights }
    }

    fn apply(&self, f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn gl_rule(n: usize) -> Arc<GlRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GlRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(GlRule::build(n)))
        .clone()
}

// ---------------------------------------------------------------------------
// Adaptive engine

/// An integral estimate with its error bound and the panel count used.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Globally adaptive integration over the intervals delimited by
/// `breakpoints` (sorted, deduplicated internally). Each panel is scored
/// by the difference between the `n` and `2n` point Gauss-Legendre rules;
/// the worst panel is bisected until the summed error meets the tolerance
/// or the panel budget runs out.
pub fn integrate_adaptive(
    f: &dyn Fn(f64) -> f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let low = gl_rule(spec.node_count);
    let high = gl_rule(2 * spec.node_count);
    let mut pts: Vec<f64> = breakpoints.iter().copied().filter(|x| x.is_finite()).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() < 2 {
        return Ok(Estimate {
            value: 0.0,
            abs_error: 0.0,
            panels: 0,
        });
    }

    let eval_panel = |a: f64, b: f64| -> Result<Panel> {
        let v_low = low.apply(f, a, b);
        let v_high = high.apply(f, a, b);
        if !v_high.is_finite() {
            return Err(Error::NonFinite(format!(
                "integrand not finite on panel [{a}, {b}]"
            )));
        }
        Ok(Panel {
            a,
            b,
            value: v_high,
            error: (v_high - v_low).abs(),
        })
    };

    let mut panels: Vec<Panel> = Vec::new();
    for w in pts.windows(2) {
        if w[1] > w[0] {
            panels.push(eval_panel(w[0], w[1])?);
        }
    }

    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        let tol = spec.abs_tol.max(spec.rel_tol * total.abs());
        if err <= tol {
            return Ok(Estimate {
                value: total,
                abs_error: err,
                panels: panels.len(),
            });
        }
        if panels.len() >= spec.max_panels {
            return Err(Error::QuadratureFailure {
                estimate: total,
                error_bound: err,
                context: format!("panel budget {} exhausted", spec.max_panels),
            });
        }
        // split the worst panel
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.partial_cmp(&b.1.error).unwrap())
            .unwrap();
        let Panel { a, b, .. } = panels[idx];
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // cannot subdivide further in f64
            let total: f64 = panels.iter().map(|p| p.value).sum();
            let err: f64 = panels.iter().map(|p| p.error).sum();
            return Ok(Estimate {
                value: total,
                abs_error: err,
                panels: panels.len(),
            });
        }
        panels[idx] = eval_panel(a, mid)?;
        panels.push(eval_panel(mid, b)?);
    }
}

// ---------------------------------------------------------------------------
// Measure integrals and norms

/// Integral of `f` against the weighted measure over `(lo, hi)`; infinite
/// ends are truncated at the spec's radius. The weight's kink at the origin
/// gets its own breakpoint.
///
/// ```
/// # use dunkl_core::{Alpha, QuadratureSpec, quad::integrate_mu};
/// // the weighted Gaussian mass is 2^-(alpha+1)
/// let alpha = Alpha::new(0.5).unwrap();
/// let spec = QuadratureSpec::default();
/// let mass = integrate_mu(
///     &|x: f64| (-x * x).exp(),
///     f64::NEG_INFINITY,
///     f64::INFINITY,
///     alpha,
///     &spec,
/// )
/// .unwrap();
/// assert!((mass - 2f64.powf(-1.5)).abs() < 1e-10);
/// ```
pub fn integrate_mu(
    f: &dyn RealFn,
    lo: f64,
    hi: f64,
    alpha: Alpha,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let r = spec.truncation_radius.min(f.support_radius(spec.abs_tol * 0.1));
    let a = if lo.is_finite() { lo } else { -r };
    let b = if hi.is_finite() { hi } else { r };
    if a >= b {
        return Ok(0.0);
    }
    let norm = alpha.measure_norm();
    let exponent = alpha.weight_exponent();
    let g = move |x: f64| f.eval(x) * x.abs().powf(exponent) / norm;
    let mut pts = vec![a, b];
    if a < 0.0 && b > 0.0 {
        pts.push(0.0);
    }
    Ok(integrate_adaptive(&g, &pts, spec)?.value)
}

// One half of a singular integral: int from `edge` to `inner` of f, under
// the power substitution x = edge + (inner - edge) u^m with the grading
// exponent m chosen from the declared endpoint exponent so the
// transformed integrand becomes u^2 times a smooth factor at the edge.
//
// Offsets below one ulp of the edge cannot be represented through x, so
// there the integrand is continued by the declared power law anchored at
// the nearest representable point; the declared exponent is exact on that
// strip up to one ulp of relative drift in the smooth factor.
fn graded_side(
    f: &dyn RealFn,
    edge: f64,
    inner: f64,
    lam: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let w = inner - edge;
    let m = (3.0 / (1.0 + lam)).clamp(1.0, 80.0);
    // Offsets below ~1e8 ulps of the edge carry relative quantization
    // noise above 1e-8, which both biases and stalls the refinement; the
    // declared power law takes over on that strip, anchored where real
    // evaluations are still clean. The smooth factor drifts by at most
    // the strip width, so the continuation is accurate to the same 1e-8.
    // A zero edge needs no continuation: offsets stay exactly
    // representable down to the subnormals.
    let t_model = if edge == 0.0 {
        0.0
    } else {
        (1e8 * f64::EPSILON * edge.abs()).min(1e-3 * w.abs())
    };
    let u_model = (t_model / w.abs()).powf(1.0 / m);
    let anchor = if t_model == 0.0 {
        0.0
    } else {
        let f_val = f.eval(edge + t_model.copysign(w));
        if f_val == 0.0 {
            0.0
        } else {
            f_val * (t_model / w.abs()).powf(-lam)
        }
    };
    let g = move |u: f64| {
        if u > u_model {
            let pw = u.powf(m);
            let x = edge + w * pw;
            return f.eval(x) * w * m * pw / u;
        }
        // f ~ anchor * (|t|/|w|)^lam on the strip, and |t|^lam u^(m-1)
        // collapses to u^(m(1+lam)-1) without underflow
        anchor * w * m * u.powf(m * (1.0 + lam) - 1.0)
    };
    // the strip boundary only earns a breakpoint once it is macroscopic
    let pts = if u_model > 0.05 {
        vec![0.0, u_model, 1.0]
    } else {
        vec![0.0, 1.0]
    };
    Ok(integrate_adaptive(&g, &pts, spec)?.value)
}

/// Integral of `f` over `[a, b]` where `f` may blow up like
/// `(x-a)^left_exp` and `(b-x)^right_exp` at the ends (both exponents
/// above -1). Each half is integrated under a power substitution graded by
/// its declared exponent, which regularizes the edge and clusters the
/// effective nodes there.
///
/// Close to exponent -1 an irreducible error remains: the mass sitting
/// within one floating-point ulp of the edge is of the order
/// `(eps * edge)^(exponent + 1)` and cannot be reached through an `f(x)`
/// interface. At the default tolerances this is negligible for exponents
/// above roughly -0.6.
pub fn integrate_singular(
    f: &dyn RealFn,
    a: f64,
    b: f64,
    left_exp: f64,
    right_exp: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if left_exp <= -1.0 || right_exp <= -1.0 {
        return Err(Error::InvalidParameter(format!(
            "endpoint exponents must be > -1, got {left_exp}, {right_exp}"
        )));
    }
    if !(b > a) {
        return Ok(0.0);
    }
    match spec.singular_rule {
        SingularRule::GradedSubstitution => {
            let mid = 0.5 * (a + b);
            let left = graded_side(f, a, mid, left_exp, spec)?;
            let right = graded_side(f, b, mid, right_exp, spec)?;
            Ok(left - right)
        }
        SingularRule::PlainPanels => {
            let g = move |x: f64| f.eval(x);
            Ok(integrate_adaptive(&g, &[a, b], spec)?.value)
        }
    }
}

/// `(integral of |f|^p against the weighted measure)^(1/p)` over the line.
pub fn lp_norm(f: &dyn RealFn, p: f64, alpha: Alpha, spec: &QuadratureSpec) -> Result<f64> {
    if !(1.0..f64::INFINITY).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "p must lie in [1, infinity), got {p}"
        )));
    }
    let r = spec.truncation_radius.min(f.support_radius(spec.abs_tol * 0.1));
    lp_norm_windows(f, p, alpha, &[(-r, r)], spec)
}

/// L^p norm restricted to a union of disjoint windows; used when the
/// integrand's support is known to split into separated regions.
pub fn lp_norm_windows(
    f: &dyn RealFn,
    p: f64,
    alpha: Alpha,
    windows: &[(f64, f64)],
    spec: &QuadratureSpec,
) -> Result<f64> {
    let norm = alpha.measure_norm();
    let exponent = alpha.weight_exponent();
    let g = move |x: f64| f.eval(x).abs().powf(p) * x.abs().powf(exponent) / norm;
    let mut total = 0.0;
    for &(a, b) in windows {
        if !(b > a) {
            continue;
        }
        let mut pts = vec![a, b];
        if a < 0.0 && b > 0.0 {
            pts.push(0.0);
        }
        total += integrate_adaptive(&g, &pts, spec)?.value;
    }
    Ok(total.max(0.0).powf(1.0 / p))
}

/// Geometrically clustered breakpoints accumulating at `edge` inside the
/// interval toward `far`, for integrands with mild (log-type) edge
/// singularities.
pub fn geometric_breakpoints(edge: f64, far: f64, levels: usize) -> Vec<f64> {
    let mut pts = vec![edge, far];
    let mut d = (far - edge) * 0.5;
    for _ in 0..levels {
        pts.push(edge + d);
        d *= 0.5;
    }
    pts
}

// ---------------------------------------------------------------------------
// Sampled functions

/// How a [`GridFn`] interpolates between its samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpRule {
    /// Four-point local Lagrange cubic.
    Cubic,
    Linear,
}

/// A function known by its samples on a strictly increasing grid,
/// evaluated elsewhere by local interpolation. Houses numeric-only
/// objects like translated functions and convolution outputs.
#[derive(Debug, Clone)]
pub struct GridFn {
    points: Vec<f64>,
    values: Vec<f64>,
    rule: InterpRule,
}

impl GridFn {
    pub fn new(points: Vec<f64>, values: Vec<f64>, rule: InterpRule) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::InvalidParameter(
                "grid points and values must have the same length".into(),
            ));
        }
        if points.len() < 2 {
            return Err(Error::InvalidParameter(
                "a grid needs at least two points".into(),
            ));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "grid points must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("grid values must be finite".into()));
        }
        Ok(GridFn {
            points,
            values,
            rule,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn lo(&self) -> f64 {
        self.points[0]
    }

    pub fn hi(&self) -> f64 {
        *self.points.last().unwrap()
    }

    pub fn value_at(&self, x: f64) -> f64 {
        if x < self.lo() || x > self.hi() {
            return 0.0;
        }
        let i = match self
            .points
            .binary_search_by(|p| p.partial_cmp(&x).unwrap())
        {
            Ok(i) => return self.values[i],
            Err(i) => i.saturating_sub(1).min(self.points.len() - 2),
        };
        match self.rule {
            InterpRule::Linear => {
                let t = (x - self.points[i]) / (self.points[i + 1] - self.points[i]);
                self.values[i] * (1.0 - t) + self.values[i + 1] * t
            }
            InterpRule::Cubic => {
                // window of four points around the bracketing pair
                let lo = i.saturating_sub(1).min(self.points.len().saturating_sub(4));
                let n = (self.points.len() - lo).min(4);
                let xs = &self.points[lo..lo + n];
                let ys = &self.values[lo..lo + n];
                // Lagrange interpolation on up to four points
                let mut acc = 0.0;
                for (j, (&xj, &yj)) in xs.iter().zip(ys).enumerate() {
                    let mut l = 1.0;
                    for (m, &xm) in xs.iter().enumerate() {
                        if m != j {
                            l *= (x - xm) / (xj - xm);
                        }
                    }
                    acc += yj * l;
                }
                acc
            }
        }
    }
}

impl RealFn for GridFn {
    fn eval(&self, x: f64) -> f64 {
        self.value_at(x)
    }

    fn support_radius(&self, _eps: f64) -> f64 {
        self.lo().abs().max(self.hi().abs())
    }

    fn feature_scale(&self) -> f64 {
        let n = self.points.len() as f64;
        ((self.hi() - self.lo()) / (n - 1.0) * 8.0).min(1.0)
    }
}

/// A function sampled over a union of disjoint windows, zero outside them.
#[derive(Debug, Clone, Default)]
pub struct PiecewiseGridFn {
    segments: Vec<GridFn>,
}

impl PiecewiseGridFn {
    pub fn new(mut segments: Vec<GridFn>) -> Self {
        segments.sort_by(|a, b| a.lo().partial_cmp(&b.lo()).unwrap());
        PiecewiseGridFn { segments }
    }

    pub fn segments(&self) -> &[GridFn] {
        &self.segments
    }

    /// The windows covered by the segments.
    pub fn windows(&self) -> Vec<(f64, f64)> {
        self.segments.iter().map(|s| (s.lo(), s.hi())).collect()
    }

    pub fn value_at(&self, x: f64) -> f64 {
        for seg in &self.segments {
            if x >= seg.lo() && x <= seg.hi() {
                return seg.value_at(x);
            }
        }
        0.0
    }
}

impl RealFn for PiecewiseGridFn {
    fn eval(&self, x: f64) -> f64 {
        self.value_at(x)
    }

    fn support_radius(&self, _eps: f64) -> f64 {
        self.segments
            .iter()
            .map(|s| s.lo().abs().max(s.hi().abs()))
            .fold(0.0, f64::max)
    }

    fn feature_scale(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.feature_scale())
            .fold(1.0, f64::min)
    }
}

/// Merge overlapping or touching intervals into a disjoint sorted list.
pub fn merge_windows(mut windows: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    windows.retain(|w| w.1 > w.0);
    windows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut out: Vec<(f64, f64)> = Vec::new();
    for w in windows {
        match out.last_mut() {
            Some(last) if w.0 <= last.1 => last.1 = last.1.max(w.1),
            _ => out.push(w),
        }
    }
    out
}

/// Uniform sample grid (inclusive of both ends).
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && hi > lo);
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Logarithmically spaced grid on `[lo, hi]`, both positive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && hi > lo && lo > 0.0);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
