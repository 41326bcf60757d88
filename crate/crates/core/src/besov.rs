//! Smoothness seminorms built on the generalized Taylor remainder.
//!
//! The order-`k` modulus measures the L^p size of the symmetrized
//! remainder; integrating `(modulus / x^(beta+k-1))^q dx/x` gives the
//! difference-based seminorm, while the convolution-based seminorm runs
//! the same scale integral over `||f * phi_t||_p / t^(beta+k-1)` with a
//! dilated window `phi` whose low even moments vanish. The two scales
//! agree up to constants; the checkers here compute both sides of each
//! inequality so callers can fit and validate those constants.

use std::collections::HashMap;
use std::sync::RwLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polygauss::PolyGauss;
use crate::quad::{
    log_grid, lp_norm_windows, merge_windows, uniform_grid, GridFn, InterpRule, PiecewiseGridFn,
    QuadratureSpec, RealFn,
};
use crate::special::{gen_hermite, Alpha, Parity};
use crate::taylor::{b_coeff, even_taylor_correction, remainder_pair_shared, remainder_sym};
use crate::translation::{convolve, dilate, translate};

/// Exponent of the scale integral: a finite `q >= 1` or the supremum form.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub enum QIndex {
    Finite(f64),
    Infinity,
}

impl QIndex {
    pub fn validate(self) -> Result<()> {
        match self {
            QIndex::Finite(q) if (1.0..f64::INFINITY).contains(&q) => Ok(()),
            QIndex::Infinity => Ok(()),
            QIndex::Finite(q) => Err(Error::InvalidParameter(format!(
                "q must lie in [1, infinity], got {q}"
            ))),
        }
    }
}

/// Parameter bundle of a smoothness space: order `k >= 1`, integrability
/// `1 <= p < infinity`, scale exponent `q`, and smoothness `0 < beta < 1`.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BesovParams {
    pub alpha: Alpha,
    pub k: u32,
    pub p: f64,
    pub q: QIndex,
    pub beta: f64,
}

impl BesovParams {
    pub fn new(alpha: Alpha, k: u32, p: f64, q: QIndex, beta: f64) -> Result<Self> {
        let bp = BesovParams { alpha, k, p, q, beta };
        bp.validate()?;
        Ok(bp)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidParameter("order k must be >= 1".into()));
        }
        if !(1.0..f64::INFINITY).contains(&self.p) {
            return Err(Error::InvalidParameter(format!(
                "p must lie in [1, infinity), got {}",
                self.p
            )));
        }
        self.q.validate()?;
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "beta must lie in (0, 1), got {}",
                self.beta
            )));
        }
        Ok(())
    }

    /// The scale weight exponent `beta + k - 1`.
    pub fn scale_exponent(&self) -> f64 {
        self.beta + self.k as f64 - 1.0
    }
}

/// Logarithmically spaced evaluation grid for the scale integrals
/// `int_0^inf ... dx/x` and the supremum variant.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SeminormGrid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl SeminormGrid {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo > 0.0 && hi > lo) {
            return Err(Error::InvalidParameter(format!(
                "grid needs 0 < lo < hi, got [{lo}, {hi}]"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidParameter("grid needs at least 2 points".into()));
        }
        Ok(SeminormGrid { lo, hi, count })
    }

    pub fn points(&self) -> Vec<f64> {
        log_grid(self.lo, self.hi, self.count)
    }
}

impl Default for SeminormGrid {
    fn default() -> Self {
        SeminormGrid {
            lo: 1e-2,
            hi: 1e2,
            count: 33,
        }
    }
}

// Trapezoid rule in log space for int g(x) dx/x over the grid, then the
// q-th root; the supremum form takes the grid maximum instead.
fn scale_integral(points: &[f64], values: &[f64], weight_exp: f64, q: QIndex) -> f64 {
    match q {
        QIndex::Infinity => points
            .iter()
            .zip(values)
            .map(|(&x, &v)| v / x.powf(weight_exp))
            .fold(0.0, f64::max),
        QIndex::Finite(qv) => {
            let g: Vec<f64> = points
                .iter()
                .zip(values)
                .map(|(&x, &v)| (v / x.powf(weight_exp)).powf(qv))
                .collect();
            let mut acc = 0.0;
            for i in 1..points.len() {
                let du = (points[i] / points[i - 1]).ln();
                acc += 0.5 * (g[i] + g[i - 1]) * du;
            }
            acc.powf(1.0 / qv)
        }
    }
}

/// How the modulus evaluates the symmetrized remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusRoute {
    /// `tau_x f + tau_{-x} f` minus the exact even-order correction; the
    /// cheap route, algebraically identical to the others.
    SymmetricTranslation,
    /// The defining expression through order `k-1` remainder integrals.
    RemainderDefinition,
    /// The order-`k` form `|| R_k(x, f) + R_k(-x, f) ||_p`.
    RemainderOrderK,
}

// Sample a symmetric-difference style integrand on windows that cover the
// translated copies and the central correction, then take the L^p norm.
fn windowed_lp_norm(
    sample: &(dyn Fn(f64) -> Result<f64> + Sync),
    windows: &[(f64, f64)],
    spacing: f64,
    p: f64,
    alpha: Alpha,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let mut segments = Vec::new();
    for &(a, b) in windows {
        let mut pts = Vec::new();
        if a < 0.0 && b > 0.0 {
            // keep the origin an exact sample point
            let nl = (((-a) / spacing).ceil() as usize + 1).clamp(5, 4001);
            let nr = ((b / spacing).ceil() as usize + 1).clamp(5, 4001);
            pts.extend(uniform_grid(a, 0.0, nl));
            pts.extend(uniform_grid(0.0, b, nr).into_iter().skip(1));
        } else {
            let n = (((b - a) / spacing).ceil() as usize + 1).clamp(5, 4001);
            pts = uniform_grid(a, b, n);
        }
        let values: Vec<f64> = pts
            .par_iter()
            .map(|&arg| sample(arg))
            .collect::<Result<_>>()?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("modulus sample not finite".into()));
        }
        segments.push(GridFn::new(pts, values, InterpRule::Cubic)?);
    }
    let profile = PiecewiseGridFn::new(segments);
    lp_norm_windows(&profile, p, alpha, &profile.windows(), spec)
}

fn support_eps(spec: &QuadratureSpec) -> f64 {
    (spec.abs_tol * 1e-8).max(1e-300)
}

/// Order-`k` modulus of smoothness
/// `omega^k(x, f) = || R_{k-1}(x,f) + R_{k-1}(-x,f) - (b_{k-1}(x) + b_{k-1}(-x)) L^{k-1} f ||_p`,
/// evaluated through the symmetric-translation form by default.
pub fn modulus(f: &PolyGauss, bp: &BesovParams, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    modulus_with_route(f, bp, x, ModulusRoute::SymmetricTranslation, spec)
}

/// Modulus through an explicitly chosen evaluation route; the three routes
/// are algebraically identical, so their numerical agreement is a check on
/// the remainder machinery.
pub fn modulus_with_route(
    f: &PolyGauss,
    bp: &BesovParams,
    x: f64,
    route: ModulusRoute,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "modulus wants x > 0, got {x}"
        )));
    }
    bp.validate()?;
    if f.is_zero() {
        return Ok(0.0);
    }
    let alpha = bp.alpha;
    let k = bp.k;
    let eps = support_eps(spec);
    let rf = f.support_radius(eps);
    let spacing = 0.5 * spec.cache_spacing * RealFn::feature_scale(f);
    let inner = spec.scaled_tol(0.1);

    match route {
        ModulusRoute::SymmetricTranslation => {
            let corr = even_taylor_correction(f, k, x, alpha)?;
            let rc = corr.support_radius(eps).max(rf);
            let windows = merge_windows(vec![
                (-x - rf, -x + rf),
                (-rc, rc),
                (x - rf, x + rf),
            ]);
            let sample = move |a: f64| -> Result<f64> {
                Ok(translate(f, x, a, alpha, &inner)?
                    + translate(f, -x, a, alpha, &inner)?
                    - corr.eval(a))
            };
            windowed_lp_norm(&sample, &windows, spacing, bp.p, alpha, spec)
        }
        ModulusRoute::RemainderDefinition => {
            let order = k - 1;
            let window = x + rf + f.dunkl_iterate(alpha, order).support_radius(eps);
            let lam = f.dunkl_iterate(alpha, order);
            let b_sym = b_coeff(alpha, order, x) + b_coeff(alpha, order, -x);
            let sample = move |a: f64| -> Result<f64> {
                let rem_sym = if order == 0 {
                    translate(f, x, a, alpha, &inner)? + translate(f, -x, a, alpha, &inner)?
                } else {
                    let (plus, minus) = remainder_pair_shared(f, order, x, a, alpha, &inner)?;
                    plus + minus
                };
                Ok(rem_sym - b_sym * lam.eval(a))
            };
            windowed_lp_norm(
                &sample,
                &[(-window, window)],
                spacing,
                bp.p,
                alpha,
                spec,
            )
        }
        ModulusRoute::RemainderOrderK => {
            let window = x + rf + f.dunkl_iterate(alpha, k).support_radius(eps);
            let sample = move |a: f64| -> Result<f64> { remainder_sym(f, k, x, a, alpha, &inner) };
            windowed_lp_norm(
                &sample,
                &[(-window, window)],
                spacing,
                bp.p,
                alpha,
                spec,
            )
        }
    }
}

/// Least-squares slope of `log modulus` against `log x` over a small
/// log-spaced grid; the small-`x` order of the modulus.
pub fn modulus_loglog_slope(
    f: &PolyGauss,
    bp: &BesovParams,
    lo: f64,
    hi: f64,
    n: usize,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let xs = log_grid(lo, hi, n.max(3));
    let oms: Vec<f64> = xs
        .iter()
        .map(|&x| modulus(f, bp, x, spec))
        .collect::<Result<_>>()?;
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(&oms)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&x, &w)| (x.ln(), w.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::NonFinite("modulus vanished on the slope grid".into()));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    Ok((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

/// Difference-based seminorm: the scale integral of
/// `(omega^k(x, f) / x^(beta+k-1))^q dx/x` over the grid window (or its
/// supremum for the infinite index). Non-finite modulus values flag the
/// seminorm as infinite.
pub fn bkd_seminorm(
    f: &PolyGauss,
    bp: &BesovParams,
    grid: &SeminormGrid,
    spec: &QuadratureSpec,
) -> Result<f64> {
    bp.validate()?;
    let points = grid.points();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&x| modulus(f, bp, x, spec))
        .collect::<Result<_>>()?;
    if values.iter().any(|v| !v.is_finite()) {
        return Ok(f64::INFINITY);
    }
    Ok(scale_integral(&points, &values, bp.scale_exponent(), bp.q))
}

/// Window construction for the moment-vanishing class: the generalized
/// Hermite polynomial of degree `2 n0` times the Gaussian. Requires
/// `n0 > floor((k-1)/2)` so every required half-line moment vanishes.
pub fn phi_construct(alpha: Alpha, k: u32, n0: u32) -> Result<PolyGauss> {
    if k == 0 {
        return Err(Error::InvalidParameter("order k must be >= 1".into()));
    }
    if n0 <= (k - 1) / 2 {
        return Err(Error::InvalidParameter(format!(
            "n0 must exceed floor((k-1)/2) = {}, got {n0}",
            (k - 1) / 2
        )));
    }
    PolyGauss::new(gen_hermite(2 * n0, alpha)?, 1.0)
}

/// Check that `phi` qualifies as an order-`k` window: even, with the
/// half-line moments of `x^(2i)` vanishing for all `i <= floor((k-1)/2)`.
pub fn check_phi_moments(phi: &PolyGauss, alpha: Alpha, k: u32) -> Result<()> {
    if phi.parity() != Some(Parity::Even) {
        return Err(Error::InvalidPhi("window must be even".into()));
    }
    let scale = phi.poly().max_coeff().max(1.0);
    for i in 0..=((k - 1) / 2) {
        let m = phi.moment_mu(alpha, 2 * i, true);
        if m.abs() > 1e-10 * scale {
            return Err(Error::InvalidPhi(format!(
                "half-line moment of order {} is {m}, not zero",
                2 * i
            )));
        }
    }
    Ok(())
}

/// `|| f * phi_t ||_p` for a dilated window: the convolution is sampled on
/// a grid matched to the dilation scale and normed through the interpolant.
pub fn conv_norm(
    f: &dyn RealFn,
    phi: &PolyGauss,
    t: f64,
    p: f64,
    alpha: Alpha,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let phi_t = dilate(phi, alpha, t)?;
    let eps = support_eps(spec);
    let rf = f.support_radius(eps);
    if rf == 0.0 {
        return Ok(0.0);
    }
    let radius = rf + phi_t.decay_radius(eps);
    let spacing = 0.5
        * spec.cache_spacing
        * RealFn::feature_scale(f).max(RealFn::feature_scale(&phi_t));
    let inner = spec.scaled_tol(0.1);
    let sample =
        move |s: f64| -> Result<f64> { convolve(f, &phi_t, s, alpha, &inner) };
    windowed_lp_norm(&sample, &[(-radius, radius)], spacing, p, alpha, spec)
}

/// Convolution-based seminorm: the scale integral of
/// `(|| f * phi_t ||_p / t^(beta+k-1))^q dt/t` over the grid window.
/// The window must pass the moment check for the given order.
pub fn conv_seminorm(
    f: &PolyGauss,
    phi: &PolyGauss,
    bp: &BesovParams,
    grid: &SeminormGrid,
    spec: &QuadratureSpec,
) -> Result<f64> {
    bp.validate()?;
    check_phi_moments(phi, bp.alpha, bp.k)?;
    let points = grid.points();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&t| conv_norm(f, phi, t, bp.p, bp.alpha, spec))
        .collect::<Result<_>>()?;
    if values.iter().any(|v| !v.is_finite()) {
        return Ok(f64::INFINITY);
    }
    Ok(scale_integral(&points, &values, bp.scale_exponent(), bp.q))
}

/// Both sides of the window-norm bound: `|| phi_t * f ||_p` on the left,
/// and the scale integral of
/// `min((x/t)^(2(alpha+1)), (t/x)^r) omega^k(x, f) dx/x` on the right.
/// The left stays below a fixed multiple of the right uniformly in `t`.
pub fn lemma41_check(
    f: &PolyGauss,
    phi: &PolyGauss,
    bp: &BesovParams,
    r: f64,
    t: f64,
    xgrid: &SeminormGrid,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    bp.validate()?;
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!("r must be > 0, got {r}")));
    }
    check_phi_moments(phi, bp.alpha, bp.k)?;
    let lhs = conv_norm(f, phi, t, bp.p, bp.alpha, spec)?;
    let points = xgrid.points();
    let omegas: Vec<f64> = points
        .par_iter()
        .map(|&x| modulus(f, bp, x, spec))
        .collect::<Result<_>>()?;
    let a2 = 2.0 * (bp.alpha.get() + 1.0);
    let g: Vec<f64> = points
        .iter()
        .zip(&omegas)
        .map(|(&x, &w)| (x / t).powf(a2).min((t / x).powf(r)) * w)
        .collect();
    let mut rhs = 0.0;
    for i in 1..points.len() {
        let du = (points[i] / points[i - 1]).ln();
        rhs += 0.5 * (g[i] + g[i - 1]) * du;
    }
    Ok((lhs, rhs))
}

/// Both sides of the reverse bound in its truncated form: the modulus of
/// the band-limited regularization
/// `f_{eps,delta} = int_eps^delta (phi_t * phi_t * f) dt/t` on the left,
/// and `int_eps^delta min((x/t)^(k-1), (x/t)^k) || phi_t * f ||_p dt/t` on
/// the right. Triple-nested quadrature; a cost guard rejects requests whose
/// estimated evaluation count exceeds `budget`.
#[allow(clippy::too_many_arguments)]
pub fn lemma42_check(
    f: &PolyGauss,
    phi: &PolyGauss,
    bp: &BesovParams,
    x: f64,
    eps: f64,
    delta: f64,
    budget: u64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    Ok(lemma42_check_multi(f, phi, bp, &[x], eps, delta, budget, spec)?[0])
}

/// [`lemma42_check`] over several base points sharing the regularization
/// caches, which dominate the cost.
#[allow(clippy::too_many_arguments)]
pub fn lemma42_check_multi(
    f: &PolyGauss,
    phi: &PolyGauss,
    bp: &BesovParams,
    xs: &[f64],
    eps: f64,
    delta: f64,
    budget: u64,
    spec: &QuadratureSpec,
) -> Result<Vec<(f64, f64)>> {
    bp.validate()?;
    if bp.p <= 1.0 {
        return Err(Error::InvalidParameter(
            "the reverse bound needs p > 1".into(),
        ));
    }
    if !(eps > 0.0 && delta > eps) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < eps < delta, got ({eps}, {delta})"
        )));
    }
    if xs.is_empty() || xs.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::InvalidParameter(
            "base points must be positive".into(),
        ));
    }
    check_phi_moments(phi, bp.alpha, bp.k)?;
    let alpha = bp.alpha;
    let seps = support_eps(spec);
    let x_max = xs.iter().cloned().fold(0.0, f64::max);

    // quadrature-count estimate for the guard
    let n_t = 9usize;
    let rf = f.support_radius(seps);
    let r_delta = dilate(phi, alpha, delta)?.decay_radius(seps);
    let z_span = x_max + rf + 2.0 * r_delta + 1.0;
    let z_points = ((2.0 * z_span / (0.5 * spec.cache_spacing)).ceil() as u64).max(64);
    let estimated = n_t as u64 * z_points * 64 * 96;
    if estimated > budget {
        return Err(Error::BudgetExceeded { estimated, budget });
    }

    let tgrid = log_grid(eps, delta, n_t);
    let inner = spec.scaled_tol(0.1);

    // per-dilation convolution caches h_t = phi_t * f, with their norms
    let h_caches: Vec<(f64, PolyGauss, GridFn, f64)> = tgrid
        .par_iter()
        .map(|&t| -> Result<(f64, PolyGauss, GridFn, f64)> {
            let phi_t = dilate(phi, alpha, t)?;
            let radius = rf + phi_t.decay_radius(seps);
            let spacing = 0.5
                * spec.cache_spacing
                * RealFn::feature_scale(f).max(RealFn::feature_scale(&phi_t));
            let n = ((2.0 * radius / spacing).ceil() as usize + 1).clamp(17, 2001);
            let pts = uniform_grid(-radius, radius, n);
            let vals: Vec<f64> = pts
                .iter()
                .map(|&s| convolve(f, &phi_t, s, alpha, &inner))
                .collect::<Result<_>>()?;
            let h = GridFn::new(pts, vals, InterpRule::Cubic)?;
            let hn = lp_norm_windows(&h, bp.p, alpha, &[(h.lo(), h.hi())], spec)?;
            Ok((t, phi_t, h, hn))
        })
        .collect::<Result<_>>()?;

    // the regularization and its even Dunkl derivatives on a shared grid
    let i_max = (bp.k - 1) / 2;
    let spacing = 0.5 * spec.cache_spacing * RealFn::feature_scale(f);
    let n = ((2.0 * z_span / spacing).ceil() as usize + 1).clamp(33, 4001);
    let zpts = uniform_grid(-z_span, z_span, n);
    let mut derivative_grids: Vec<GridFn> = Vec::new();
    for i in 0..=i_max {
        let vals: Vec<f64> = zpts
            .par_iter()
            .map(|&z| -> Result<f64> {
                // log-trapezoid over t of (L^{2i} phi_t * h_t)(z)
                let mut acc = 0.0;
                let mut prev: Option<(f64, f64)> = None;
                for (t, phi_t, h, _) in &h_caches {
                    let dphi = phi_t.dunkl_iterate(alpha, 2 * i);
                    let v = convolve(&dphi, h, z, alpha, &inner)?;
                    if let Some((tp, vp)) = prev {
                        acc += 0.5 * (v + vp) * (t / tp).ln();
                    }
                    prev = Some((*t, v));
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        derivative_grids.push(GridFn::new(zpts.clone(), vals, InterpRule::Cubic)?);
    }
    let f_reg = &derivative_grids[0];

    xs.iter()
        .map(|&x| {
            // rhs: scale integral of the min-kernel against the cached norms
            let mut rhs = 0.0;
            let mut prev: Option<(f64, f64)> = None;
            for (t, _, _, hn) in &h_caches {
                let kernel = (x / t)
                    .powf(bp.k as f64 - 1.0)
                    .min((x / t).powf(bp.k as f64));
                let gval = kernel * hn;
                if let Some((tp, gp)) = prev {
                    rhs += 0.5 * (gval + gp) * (t / tp).ln();
                }
                prev = Some((*t, gval));
            }

            // lhs: omega^k(x, f_reg) through the symmetric-translation form
            // with the correction assembled from the derivative grids
            let b_evens: Vec<f64> = (0..=i_max).map(|i| b_coeff(alpha, 2 * i, x)).collect();
            let sample = |a: f64| -> Result<f64> {
                let mut v = translate(f_reg, x, a, alpha, &inner)?
                    + translate(f_reg, -x, a, alpha, &inner)?;
                for (i, grid) in derivative_grids.iter().enumerate() {
                    v -= 2.0 * b_evens[i] * grid.value_at(a);
                }
                Ok(v)
            };
            let a_span = x + z_span;
            let lhs = windowed_lp_norm(
                &sample,
                &[(-a_span, a_span)],
                spacing,
                bp.p,
                alpha,
                spec,
            )?;
            Ok((lhs, rhs))
        })
        .collect()
}

/// Both sides of the dilation identity for the symmetrized remainder in
/// L^1: `|| R_k(x, phi_t) + R_k(-x, phi_t) ||_1` equals the same quantity
/// for the undilated window at `x/t`.
pub fn dilation_identity_check(
    phi: &PolyGauss,
    alpha: Alpha,
    k: u32,
    x: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    if !(x > 0.0 && t > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "dilation identity wants x, t > 0, got ({x}, {t})"
        )));
    }
    let bp = BesovParams::new(alpha, k, 1.0, QIndex::Finite(1.0), 0.5)?;
    let phi_t = dilate(phi, alpha, t)?;
    let lhs = modulus(&phi_t, &bp, x, spec)?;
    let rhs = modulus(phi, &bp, x / t, spec)?;
    Ok((lhs, rhs))
}

/// Shared evaluations for one `(f, phi, alpha, p)` quadruple: modulus
/// values keyed by `(x, correction order)` and window norms keyed by the
/// dilation, reused across parameter bundles that only differ in `k`, `q`,
/// or `beta`. Concurrent readers, single-writer insertion.
#[derive(Default)]
pub struct BesovCache {
    omega: RwLock<HashMap<(u64, u32), f64>>,
    conv: RwLock<HashMap<u64, f64>>,
}

impl BesovCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn omega_get_or(&self, x: f64, imax: u32, compute: impl FnOnce() -> Result<f64>) -> Result<f64> {
        let key = (x.to_bits(), imax);
        if let Some(&v) = self.omega.read().unwrap().get(&key) {
            return Ok(v);
        }
        let v = compute()?;
        self.omega.write().unwrap().entry(key).or_insert(v);
        Ok(v)
    }

    fn conv_get_or(&self, t: f64, compute: impl FnOnce() -> Result<f64>) -> Result<f64> {
        let key = t.to_bits();
        if let Some(&v) = self.conv.read().unwrap().get(&key) {
            return Ok(v);
        }
        let v = compute()?;
        self.conv.write().unwrap().entry(key).or_insert(v);
        Ok(v)
    }
}

/// Verdict bundle for one function against one parameter set: both
/// seminorm values over declared grid windows, finiteness flags, and the
/// ratio of the two scales.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SeminormReport {
    pub f_id: String,
    pub phi_id: String,
    pub params: BesovParams,
    pub x_grid: SeminormGrid,
    pub t_grid: SeminormGrid,
    pub bkd_value: f64,
    pub c_value: f64,
    pub bkd_finite: bool,
    pub c_finite: bool,
    /// `bkd_value / c_value`; the equivalence constant realized on this
    /// configuration.
    pub fitted_ratio: f64,
    /// For `p = 1` only the difference-to-convolution direction holds.
    pub two_sided: bool,
    /// Modulus values at the x-grid points.
    pub omega_values: Vec<f64>,
    /// Window norms at the t-grid points.
    pub conv_values: Vec<f64>,
}

/// Compute both seminorms and the fitted equivalence ratio for one
/// function. For `p = 1` the report is marked one-directional.
#[allow(clippy::too_many_arguments)]
pub fn membership_report(
    f: &PolyGauss,
    phi: &PolyGauss,
    bp: &BesovParams,
    x_grid: &SeminormGrid,
    t_grid: &SeminormGrid,
    spec: &QuadratureSpec,
    f_id: &str,
    phi_id: &str,
) -> Result<SeminormReport> {
    membership_report_cached(f, phi, bp, x_grid, t_grid, spec, f_id, phi_id, &BesovCache::new())
}

/// [`membership_report`] with a caller-held cache; the cache must be used
/// for a single `(f, phi, alpha, p)` combination.
#[allow(clippy::too_many_arguments)]
pub fn membership_report_cached(
    f: &PolyGauss,
    phi: &PolyGauss,
    bp: &BesovParams,
    x_grid: &SeminormGrid,
    t_grid: &SeminormGrid,
    spec: &QuadratureSpec,
    f_id: &str,
    phi_id: &str,
    cache: &BesovCache,
) -> Result<SeminormReport> {
    bp.validate()?;
    check_phi_moments(phi, bp.alpha, bp.k)?;
    let imax = (bp.k - 1) / 2;

    let xs = x_grid.points();
    let omegas: Vec<f64> = xs
        .par_iter()
        .map(|&x| cache.omega_get_or(x, imax, || modulus(f, bp, x, spec)))
        .collect::<Result<_>>()?;
    let bkd = if omegas.iter().all(|v| v.is_finite()) {
        scale_integral(&xs, &omegas, bp.scale_exponent(), bp.q)
    } else {
        f64::INFINITY
    };

    let ts = t_grid.points();
    let convs: Vec<f64> = ts
        .par_iter()
        .map(|&t| cache.conv_get_or(t, || conv_norm(f, phi, t, bp.p, bp.alpha, spec)))
        .collect::<Result<_>>()?;
    let cval = if convs.iter().all(|v| v.is_finite()) {
        scale_integral(&ts, &convs, bp.scale_exponent(), bp.q)
    } else {
        f64::INFINITY
    };

    Ok(SeminormReport {
        f_id: f_id.to_string(),
        phi_id: phi_id.to_string(),
        params: *bp,
        x_grid: x_grid.clone(),
        t_grid: t_grid.clone(),
        bkd_value: bkd,
        c_value: cval,
        bkd_finite: bkd.is_finite(),
        c_finite: cval.is_finite(),
        fitted_ratio: if cval > 0.0 { bkd / cval } else { f64::NAN },
        two_sided: bp.p > 1.0,
        omega_values: omegas,
        conv_values: convs,
    })
}
