//! The generalized Taylor formula: expansion coefficients, the kernel
//! recursion behind the integral remainder, and the remainder itself.
//!
//! Translating a function decomposes as
//! `tau_x f(a) = sum_{p<k} b_p(x) L^p f(a) + R_k(x, f)(a)` where `L` is the
//! Dunkl operator and the remainder integrates the order-`k` derivative
//! against an explicitly constructed kernel:
//! `R_k(x,f)(a) = int_{-|x|}^{|x|} Theta_{k-1}(x,y) tau_y(L^k f)(a) A(y) dy`
//! with `A(y) = |y|^(2 alpha + 1)`. The kernel is built by alternately
//! integrating power-log term lists in closed form, so it stays exact for
//! every order; only the translation factor is numeric.

use crate::error::{Error, Result};
use crate::polygauss::PolyGauss;
use crate::quad::{
    geometric_breakpoints, integrate_adaptive, uniform_grid, GridFn, PiecewiseGridFn,
    QuadratureSpec, RealFn,
};
use crate::special::{pochhammer, Alpha, PolySeries};
use crate::translation::{translate, translate_profile};

/// Expansion coefficient `b_p(x)`:
/// `b_{2m}(x) = (x/2)^{2m} / ((alpha+1)_m m!)` and
/// `b_{2m+1}(x) = (x/2)^{2m+1} / ((alpha+1)_{m+1} m!)`.
///
/// ```
/// # use dunkl_core::{Alpha, taylor::b_coeff};
/// let alpha = Alpha::new(0.5).unwrap();
/// assert_eq!(b_coeff(alpha, 0, 1.7), 1.0);
/// assert_eq!(b_coeff(alpha, 1, 0.9), 0.9 / 3.0); // x / (2 (alpha+1))
/// ```
pub fn b_coeff(alpha: Alpha, p: u32, x: f64) -> f64 {
    let m = p / 2;
    let mfact: f64 = (1..=m).map(|i| i as f64).product();
    let poch = if p.is_multiple_of(2) {
        pochhammer(alpha.get() + 1.0, m)
    } else {
        pochhammer(alpha.get() + 1.0, m + 1)
    };
    (0.5 * x).powi(p as i32) / (poch * mfact)
}

/// The coefficients `b_0 .. b_{count-1}` for a fixed parameter, evaluated
/// on demand; `b_0` is identically one and `b_p(-x) = (-1)^p b_p(x)`.
#[derive(Debug, Clone, Copy)]
pub struct BCoeffs {
    pub alpha: Alpha,
    pub count: u32,
}

impl BCoeffs {
    pub fn new(alpha: Alpha, count: u32) -> Self {
        BCoeffs { alpha, count }
    }

    pub fn eval(&self, p: u32, x: f64) -> f64 {
        b_coeff(self.alpha, p, x)
    }

    pub fn eval_all(&self, x: f64) -> Vec<f64> {
        (0..self.count).map(|p| self.eval(p, x)).collect()
    }
}

/// One term `coeff * |y|^exponent * log^log_power |y| * sgn(y)^odd` of a
/// remainder kernel.
#[derive(Debug, Clone, Copy)]
pub struct PowerLogTerm {
    pub coeff: f64,
    pub exponent: f64,
    pub log_power: u32,
    pub odd: bool,
}

impl PowerLogTerm {
    fn eval_abs(&self, ay: f64) -> f64 {
        let mut v = self.coeff * ay.powf(self.exponent);
        if self.log_power > 0 {
            v *= ay.ln().powi(self.log_power as i32);
        }
        v
    }
}

// Exponents within this distance of -1 integrate through the log branch.
const LOG_BRANCH_TOL: f64 = 1e-12;
// Exponents this close to -1 (but outside the log branch) make the power
// branch ill-conditioned; the whole construction is retried with a nudged
// parameter.
const COLLISION_WARN_TOL: f64 = 1e-9;
const COLLISION_NUDGE: f64 = 1e-9;

/// The remainder kernel `Theta_{k-1}(x, .)` for a fixed base point,
/// stored as an exact power-log term list valid on `0 < |y| <= |x|`.
#[derive(Debug, Clone)]
pub struct ThetaKernel {
    pub x: f64,
    pub alpha: Alpha,
    /// Kernel order `k - 1`.
    pub order: u32,
    pub terms: Vec<PowerLogTerm>,
    /// Set when the parameter had to be nudged off an exponent collision.
    pub perturbed: bool,
}

impl ThetaKernel {
    pub fn eval(&self, y: f64) -> f64 {
        let ay = y.abs();
        let sy = if y >= 0.0 { 1.0 } else { -1.0 };
        let mut acc = 0.0;
        for t in &self.terms {
            let v = t.eval_abs(ay);
            acc += if t.odd { sy * v } else { v };
        }
        acc
    }
}

// Closed-form antiderivative of c z^a log^m z as a term list (terms in z,
// no sign flags; the integration variable is positive). Near a = -1 the
// log branch applies exactly; otherwise repeated integration by parts
// lowers the log power.
fn antiderivative(c: f64, a: f64, m: u32, collision: &mut bool) -> Vec<(f64, f64, u32)> {
    let a1 = a + 1.0;
    if a1.abs() < LOG_BRANCH_TOL {
        return vec![(c / (m as f64 + 1.0), 0.0, m + 1)];
    }
    if a1.abs() < COLLISION_WARN_TOL {
        *collision = true;
    }
    let mut out = Vec::with_capacity(m as usize + 1);
    let mut falling = 1.0; // m! / (m-j)!
    let mut sign = 1.0;
    let mut denom = a1;
    for j in 0..=m {
        out.push((c * sign * falling / denom, a1, m - j));
        falling *= (m - j) as f64;
        sign = -sign;
        denom *= a1;
    }
    out
}

// Evaluate an antiderivative term list at a fixed positive point.
fn eval_terms_at(terms: &[(f64, f64, u32)], z: f64) -> f64 {
    terms
        .iter()
        .map(|&(c, a, m)| {
            let mut v = c * z.powf(a);
            if m > 0 {
                v *= z.ln().powi(m as i32);
            }
            v
        })
        .sum()
}

fn push_merged(list: &mut Vec<PowerLogTerm>, term: PowerLogTerm) {
    if term.coeff == 0.0 {
        return;
    }
    for t in list.iter_mut() {
        if t.odd == term.odd
            && t.log_power == term.log_power
            && (t.exponent - term.exponent).abs() < 1e-12
        {
            t.coeff += term.coeff;
            return;
        }
    }
    list.push(term);
}

fn theta_build_once(alpha: Alpha, order: u32, x: f64) -> (Vec<PowerLogTerm>, bool) {
    let ax = x.abs();
    let sx = if x >= 0.0 { 1.0 } else { -1.0 };
    let wexp = alpha.weight_exponent();
    let mut collision = false;

    // u_0 is constant in y, v_0 = sgn(y) / (2 |y|^(2 alpha + 1))
    let mut u = vec![PowerLogTerm {
        coeff: sx / (2.0 * ax.powf(wexp)),
        exponent: 0.0,
        log_power: 0,
        odd: false,
    }];
    let mut v = vec![PowerLogTerm {
        coeff: 0.5,
        exponent: -wexp,
        log_power: 0,
        odd: true,
    }];

    for _ in 0..order {
        // u_next(x, y) = int_{|y|}^{|x|} v(x, z) dz : even terms in |y|
        let mut u_next: Vec<PowerLogTerm> = Vec::new();
        for t in &v {
            let anti = antiderivative(t.coeff, t.exponent, t.log_power, &mut collision);
            push_merged(
                &mut u_next,
                PowerLogTerm {
                    coeff: eval_terms_at(&anti, ax),
                    exponent: 0.0,
                    log_power: 0,
                    odd: false,
                },
            );
            for (c, a, m) in anti {
                push_merged(
                    &mut u_next,
                    PowerLogTerm {
                        coeff: -c,
                        exponent: a,
                        log_power: m,
                        odd: false,
                    },
                );
            }
        }
        // v_next(x, y) = sgn(y) |y|^-(2a+1) int_{|y|}^{|x|} u(x, z) z^(2a+1) dz
        let mut v_next: Vec<PowerLogTerm> = Vec::new();
        for t in &u {
            let anti = antiderivative(t.coeff, t.exponent + wexp, t.log_power, &mut collision);
            push_merged(
                &mut v_next,
                PowerLogTerm {
                    coeff: eval_terms_at(&anti, ax),
                    exponent: -wexp,
                    log_power: 0,
                    odd: true,
                },
            );
            for (c, a, m) in anti {
                push_merged(
                    &mut v_next,
                    PowerLogTerm {
                        coeff: -c,
                        exponent: a - wexp,
                        log_power: m,
                        odd: true,
                    },
                );
            }
        }
        u = u_next;
        v = v_next;
    }

    let mut terms = u;
    for t in v {
        push_merged(&mut terms, t);
    }
    (terms, collision)
}

/// Maximum supported kernel order; the recursion is exact at any order but
/// desk-scale verification stops here.
pub const MAX_THETA_ORDER: u32 = 6;

/// Build `Theta_{k-1}(x, .)` (`order` = `k - 1`) at a fixed nonzero base
/// point. Exponent collisions land in the exact log branch; parameters
/// sitting just off a collision are nudged by 1e-9 and the kernel is
/// flagged as perturbed.
pub fn theta_build(alpha: Alpha, order: u32, x: f64) -> Result<ThetaKernel> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "kernel base point must be finite and nonzero, got {x}"
        )));
    }
    if order > MAX_THETA_ORDER {
        return Err(Error::InvalidParameter(format!(
            "kernel order {order} exceeds the supported maximum {MAX_THETA_ORDER}"
        )));
    }
    let (terms, collision) = theta_build_once(alpha, order, x);
    if !collision {
        return Ok(ThetaKernel {
            x,
            alpha,
            order,
            terms,
            perturbed: false,
        });
    }
    let nudged = Alpha::new(alpha.get() + COLLISION_NUDGE)?;
    let (terms, _) = theta_build_once(nudged, order, x);
    Ok(ThetaKernel {
        x,
        alpha: nudged,
        order,
        terms,
        perturbed: true,
    })
}

/// Both sides of the kernel size bound: the weighted absolute integral
/// `int_{-|x|}^{|x|} |Theta_{k-1}(x,y)| A(y) dy` on the left and
/// `b_k(|x|) + |x| b_{k-1}(|x|)` on the right; the left never exceeds the
/// right (up to quadrature tolerance).
pub fn theta_l1_bound_check(tk: &ThetaKernel, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let ax = tk.x.abs();
    let wexp = tk.alpha.weight_exponent();
    let f = |y: f64| tk.eval(y).abs() * y.abs().powf(wexp);
    // log-type behavior can accumulate at the origin: cluster breakpoints
    let mut pts = geometric_breakpoints(0.0, ax, 30);
    pts.extend(geometric_breakpoints(0.0, -ax, 30));
    let lhs = integrate_adaptive(&f, &pts, spec)?.value;
    let k = tk.order + 1;
    let rhs = b_coeff(tk.alpha, k, ax) + ax * b_coeff(tk.alpha, k - 1, ax);
    Ok((lhs, rhs))
}

/// Integral remainder `R_k(x, f)(a)` of the generalized Taylor formula.
pub fn remainder(
    f: &PolyGauss,
    k: u32,
    x: f64,
    a: f64,
    alpha: Alpha,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let (value, _) = remainder_pair(f, k, x, a, alpha, spec, false)?;
    Ok(value)
}

/// The symmetrized remainder `R_k(x, f)(a) + R_k(-x, f)(a)`; the two
/// orientations share the sampled translation factor.
pub fn remainder_sym(
    f: &PolyGauss,
    k: u32,
    x: f64,
    a: f64,
    alpha: Alpha,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "symmetrized remainder wants x > 0, got {x}"
        )));
    }
    let (plus, minus) = remainder_pair(f, k, x, a, alpha, spec, true)?;
    Ok(plus + minus)
}

/// `(R_k(x, f)(a), R_k(-x, f)(a))` computed with one shared sampling of
/// the translated derivative.
pub fn remainder_pair_shared(
    f: &PolyGauss,
    k: u32,
    x: f64,
    a: f64,
    alpha: Alpha,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    remainder_pair(f, k, x, a, alpha, spec, true)
}

fn remainder_pair(
    f: &PolyGauss,
    k: u32,
    x: f64,
    a: f64,
    alpha: Alpha,
    spec: &QuadratureSpec,
    both: bool,
) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "remainder order k must be >= 1".into(),
        ));
    }
    if x == 0.0 {
        return Err(Error::InvalidParameter(
            "remainder base point x must be nonzero".into(),
        ));
    }
    let ax = x.abs();
    let g = f.dunkl_iterate(alpha, k);

    // Sampled h(y) = tau_y(L^k f)(a) = tau_a(L^k f)(y), with segment
    // boundaries at 0 and +/-|a| where the translation's support
    // degenerates, so the interpolant never bridges those points.
    let mut cuts = vec![-ax, 0.0, ax];
    if a.abs() > 0.0 && a.abs() < ax {
        cuts.push(a.abs());
        cuts.push(-a.abs());
    }
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.dedup();
    let spacing = (ax / 24.0).min(spec.cache_spacing * RealFn::feature_scale(&g));
    let inner = spec.scaled_tol(0.1);
    let mut segments: Vec<GridFn> = Vec::new();
    for w in cuts.windows(2) {
        let n = (((w[1] - w[0]) / spacing).ceil() as usize + 1).clamp(9, 2001);
        segments.push(translate_profile(
            &g,
            a,
            alpha,
            &uniform_grid(w[0], w[1], n),
            &inner,
        )?);
    }
    let h = PiecewiseGridFn::new(segments);

    let wexp = alpha.weight_exponent();
    let integrate_with = |theta: &ThetaKernel| -> Result<f64> {
        let integrand = |y: f64| theta.eval(y) * h.value_at(y) * y.abs().powf(wexp);
        let mut pts = geometric_breakpoints(0.0, ax, 24);
        pts.extend(geometric_breakpoints(0.0, -ax, 24));
        pts.extend_from_slice(&cuts);
        Ok(integrate_adaptive(&integrand, &pts, spec)?.value)
    };

    let theta_plus = theta_build(alpha, k - 1, x)?;
    let plus = integrate_with(&theta_plus)?;
    if !both {
        return Ok((plus, 0.0));
    }
    let theta_minus = theta_build(alpha, k - 1, -x)?;
    let minus = integrate_with(&theta_minus)?;
    Ok((plus, minus))
}

/// Residual of the generalized Taylor formula at one point:
/// `tau_x f(a) - sum_{p<k} b_p(x) L^p f(a) - R_k(x, f)(a)`.
pub fn taylor_residual(
    f: &PolyGauss,
    k: u32,
    x: f64,
    a: f64,
    alpha: Alpha,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let lhs = translate(f, x, a, alpha, spec)?;
    let mut sum = 0.0;
    for p in 0..k {
        sum += b_coeff(alpha, p, x) * f.dunkl_iterate(alpha, p).eval(a);
    }
    let rem = remainder(f, k, x, a, alpha, spec)?;
    Ok(lhs - sum - rem)
}

/// The even-order correction `2 sum_{i <= (k-1)/2} b_{2i}(x) L^{2i} f`,
/// exact on the polynomial-Gaussian family. Subtracting it from
/// `tau_x f + tau_{-x} f` gives the symmetrized remainder of order `k`.
pub fn even_taylor_correction(f: &PolyGauss, k: u32, x: f64, alpha: Alpha) -> Result<PolyGauss> {
    let mut acc = PolyGauss::new(PolySeries::zero(), f.scale())?;
    for i in 0..=((k.max(1) - 1) / 2) {
        let b = b_coeff(alpha, 2 * i, x);
        acc = acc.add(&f.dunkl_iterate(alpha, 2 * i).scale_coeffs(2.0 * b))?;
    }
    Ok(acc)
}
