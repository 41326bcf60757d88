//! The verification suites behind `dunkl verify`: each check computes an
//! identity residual, an inequality pair, or a fitted-constant ratio, and
//! reports pass/fail against its pinned tolerance.

use dunkl_core::besov::{
    bkd_seminorm, check_phi_moments, conv_norm, conv_seminorm, dilation_identity_check,
    lemma41_check, lemma42_check_multi, modulus_loglog_slope, modulus_with_route,
    BesovParams, ModulusRoute, QIndex, SeminormGrid,
};
use dunkl_core::polygauss::from_registry;
use dunkl_core::quad::{integrate_mu, lp_norm};
use dunkl_core::special::{bessel_norm_j, gen_hermite, pochhammer};
use dunkl_core::taylor::{b_coeff, remainder, taylor_residual, theta_build, theta_l1_bound_check};
use dunkl_core::transform::{dunkl_kernel, dunkl_transform, product_formula_residual};
use dunkl_core::translation::{
    convolve, dilate, kernel_w, translate, translate_lp_norm, GammaMeasure,
};
use dunkl_core::{Alpha, PolyGauss, PolySeries, QuadratureSpec};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub id: &'static str,
    pub detail: String,
    pub tolerance: f64,
    pub pass: bool,
}

pub struct SuiteParams {
    pub alpha: Alpha,
    pub spec: QuadratureSpec,
    pub k: Option<u32>,
    pub p: Option<f64>,
    pub lemma42: bool,
}

fn residual_check(
    suite: &'static str,
    id: &'static str,
    residual: f64,
    tol: f64,
    context: &str,
) -> CheckResult {
    CheckResult {
        suite,
        id,
        detail: format!("max residual {residual:.3e} ({context})"),
        tolerance: tol,
        pass: residual.is_finite() && residual <= tol,
    }
}

fn bound_check(
    suite: &'static str,
    id: &'static str,
    lhs: f64,
    rhs: f64,
    tol: f64,
    context: &str,
) -> CheckResult {
    CheckResult {
        suite,
        id,
        detail: format!("lhs {lhs:.6e} vs rhs {rhs:.6e} ({context})"),
        tolerance: tol,
        pass: lhs.is_finite() && rhs.is_finite() && lhs <= rhs + tol,
    }
}

type R<T> = Result<T, String>;

fn err_str<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn suite_core(prm: &SuiteParams) -> R<Vec<CheckResult>> {
    const SUITE: &str = "core";
    let a = prm.alpha;
    let s = &prm.spec;
    let mut out = Vec::new();

    // rising factorial recurrence
    let mut worst: f64 = 0.0;
    for &base in &[-2.5, -0.3, 0.0, 1.5, 4.0] {
        for m in 0..12u32 {
            let lhs = pochhammer(base, m + 1);
            let rhs = pochhammer(base, m) * (base + m as f64);
            worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
        }
    }
    out.push(residual_check(
        SUITE,
        "pochhammer-recurrence",
        worst,
        1e-12,
        "step recurrence over sampled bases",
    ));

    // half-integer Bessel against the sine closed form
    let mut worst: f64 = 0.0;
    for &z in &[0.5f64, 1.0, std::f64::consts::PI, 7.5, 15.0] {
        let expected = z.sin() / z;
        worst = worst.max((bessel_norm_j(0.5, z).map_err(err_str)? - expected).abs());
    }
    out.push(residual_check(
        SUITE,
        "bessel-sine-oracle",
        worst,
        1e-10,
        "normalized Bessel of order 1/2 vs sin(z)/z",
    ));

    // two-term series for tiny arguments
    let mut worst: f64 = 0.0;
    for &z in &[1e-5f64, 1e-4] {
        let expected = 1.0 - z * z / (4.0 * (a.get() + 1.0));
        let got = bessel_norm_j(a.get(), z).map_err(err_str)?;
        worst = worst.max((got - expected).abs() / expected.abs());
    }
    out.push(residual_check(
        SUITE,
        "bessel-small-argument",
        worst,
        1e-8,
        "two-term series at |z| <= 1e-4",
    ));

    // closed-form weighted Gaussian mass vs quadrature
    let f = PolyGauss::gauss();
    let quad = lp_norm(&f, 1.0, a, s).map_err(err_str)?;
    let exact = 2f64.powf(-(a.get() + 1.0));
    out.push(residual_check(
        SUITE,
        "gaussian-mass-anchor",
        (quad - exact).abs(),
        1e-10,
        "L1 norm of the Gaussian vs 2^-(alpha+1)",
    ));

    // the wide Gaussian is a transform fixed point
    let fw = PolyGauss::new(PolySeries::constant(1.0), 0.5).map_err(err_str)?;
    let ys = [0.0, 0.5, 1.0, 2.0];
    let tv = dunkl_transform(&fw, a, &ys, s).map_err(err_str)?;
    let mut worst: f64 = 0.0;
    for (&y, v) in ys.iter().zip(&tv) {
        worst = worst.max((v.re - (-0.5 * y * y).exp()).abs().max(v.im.abs()));
    }
    out.push(residual_check(
        SUITE,
        "gaussian-transform-fixed-point",
        worst,
        1e-6,
        "transform of exp(-x^2/2) at y in {0, 0.5, 1, 2}",
    ));

    // kernel solves the eigenvalue problem
    let x = 1.3;
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for &y in &[0.4, 1.0, 2.2] {
        let at = |yy: f64| dunkl_kernel(a, x, yy).unwrap();
        let k = at(y);
        let d_re = (at(y + h).re - at(y - h).re) / (2.0 * h)
            + a.weight_exponent() * (k.re - at(-y).re) / (2.0 * y);
        let d_im = (at(y + h).im - at(y - h).im) / (2.0 * h)
            + a.weight_exponent() * (k.im - at(-y).im) / (2.0 * y);
        worst = worst.max((d_re - x * k.im).hypot(d_im + x * k.re));
    }
    out.push(residual_check(
        SUITE,
        "kernel-eigen-relation",
        worst,
        1e-6,
        "reflection-difference operator applied to the kernel",
    ));

    // generalized Hermite orthogonality under the Gaussian-weighted measure
    let mut worst: f64 = 0.0;
    for &(m, n) in &[(0u32, 2u32), (1, 3), (2, 4), (0, 4), (3, 5)] {
        let hm = gen_hermite(m, a).map_err(err_str)?;
        let hn = gen_hermite(n, a).map_err(err_str)?;
        let prod = PolyGauss::new(hm.mul(&hn), 1.0).map_err(err_str)?;
        let quad = integrate_mu(&prod, f64::NEG_INFINITY, f64::INFINITY, a, s).map_err(err_str)?;
        let scale = hm.max_coeff() * hn.max_coeff();
        worst = worst.max(quad.abs() / scale.max(1.0));
    }
    out.push(residual_check(
        SUITE,
        "hermite-orthogonality",
        worst,
        1e-10,
        "cross moments of distinct-degree pairs",
    ));

    // exact moments vs quadrature on registry functions
    let mut worst: f64 = 0.0;
    for id in ["gauss", "xgauss", "x2gauss", "hermite:4"] {
        let f = from_registry(id, a).map_err(err_str)?;
        for m in [0u32, 2, 5] {
            let exact = f.moment_mu(a, m, false);
            let fm = |x: f64| x.powi(m as i32) * f.eval(x);
            let quad =
                integrate_mu(&fm, f64::NEG_INFINITY, f64::INFINITY, a, s).map_err(err_str)?;
            worst = worst.max((exact - quad).abs() / (1.0 + exact.abs()));
        }
    }
    out.push(residual_check(
        SUITE,
        "moment-quadrature-agreement",
        worst,
        1e-9,
        "closed-form weighted moments vs adaptive quadrature",
    ));

    // endpoint-singular quadrature oracles
    let pow = dunkl_core::quad::integrate_singular(
        &|x: f64| (x - 2.0f64).powf(-0.4),
        2.0,
        3.0,
        -0.4,
        0.0,
        s,
    )
    .map_err(err_str)?;
    let arcsine = dunkl_core::quad::integrate_singular(
        &|x: f64| ((1.0 - x) * (1.0 + x)).powf(-0.5),
        -1.0,
        1.0,
        -0.5,
        -0.5,
        s,
    )
    .map_err(err_str)?;
    let worst = (pow - 1.0 / 0.6)
        .abs()
        .max((arcsine - std::f64::consts::PI).abs());
    out.push(residual_check(
        SUITE,
        "singular-quadrature-oracles",
        worst,
        1e-8,
        "power endpoint and arcsine-weight integrals",
    ));

    // node doubling moves converged integrals by less than 10x rel_tol
    let mut doubled = s.clone();
    doubled.node_count *= 2;
    let f = from_registry("x2gauss", a).map_err(err_str)?;
    let v1 = integrate_mu(&f, f64::NEG_INFINITY, f64::INFINITY, a, s).map_err(err_str)?;
    let v2 = integrate_mu(&f, f64::NEG_INFINITY, f64::INFINITY, a, &doubled).map_err(err_str)?;
    out.push(residual_check(
        SUITE,
        "node-doubling-stability",
        (v1 - v2).abs() / v1.abs().max(1.0),
        10.0 * s.rel_tol,
        "node count doubled on a weighted moment",
    ));

    Ok(out)
}

pub fn suite_translation(prm: &SuiteParams) -> R<Vec<CheckResult>> {
    const SUITE: &str = "translation";
    let a = prm.alpha;
    let s = &prm.spec;
    let mut out = Vec::new();

    // kernel argument symmetries
    let mut worst: f64 = 0.0;
    for &(x, y, z) in &[(1.0, 2.0, 1.5), (0.7, 1.1, -1.6), (2.0, 0.5, 2.3)] {
        let w = kernel_w(a, x, y, z).map_err(err_str)?;
        let w1 = kernel_w(a, y, x, z).map_err(err_str)?;
        let w2 = kernel_w(a, -x, z, y).map_err(err_str)?;
        let w3 = kernel_w(a, -z, y, -x).map_err(err_str)?;
        let scale = w.abs().max(1.0);
        worst = worst
            .max((w - w1).abs() / scale)
            .max((w - w2).abs() / scale)
            .max((w - w3).abs() / scale);
    }
    out.push(residual_check(
        SUITE,
        "kernel-symmetry",
        worst,
        1e-11,
        "argument permutations of the translation kernel",
    ));

    // signed mass one, absolute mass at most sqrt(2)
    let mut worst_signed: f64 = 0.0;
    let mut worst_abs: f64 = f64::NEG_INFINITY;
    for &(x, y) in &[(1.0, 2.0), (1.0, 1.0), (0.3, 2.5)] {
        let gm = GammaMeasure::new(x, y, a).map_err(err_str)?;
        let mass = dunkl_core::translation::integrate_gamma(&|_: f64| 1.0, &gm, s)
            .map_err(err_str)?;
        worst_signed = worst_signed.max((mass - 1.0).abs());
        let kernel = dunkl_core::translation::WKernel::new(a, x, y).map_err(err_str)?;
        let norm = a.measure_norm();
        let wexp = a.weight_exponent();
        let absint = move |z: f64| kernel.eval(z).abs() * z.abs().powf(wexp) / norm;
        let sup = dunkl_core::translation::SupportInterval::new(x, y);
        let edge = a.get() - 0.5;
        let inner = if sup.lo == 0.0 { 2.0 * a.get() } else { edge };
        let abs_mass =
            dunkl_core::quad::integrate_singular(&absint, sup.lo, sup.hi, inner, edge, s)
                .map_err(err_str)?
                + dunkl_core::quad::integrate_singular(&absint, -sup.hi, -sup.lo, edge, inner, s)
                    .map_err(err_str)?;
        worst_abs = worst_abs.max(abs_mass);
    }
    out.push(residual_check(
        SUITE,
        "kernel-signed-mass",
        worst_signed,
        1e-6,
        "total signed mass vs one",
    ));
    out.push(bound_check(
        SUITE,
        "kernel-absolute-mass",
        worst_abs,
        2f64.sqrt(),
        1e-6,
        "largest absolute mass across the pair grid",
    ));

    // kernel product formula on a small grid
    let mut worst: f64 = 0.0;
    for &x in &[0.5, 1.0, 2.0] {
        for &y in &[0.5, 1.0, 2.0] {
            for &t in &[0.0, 0.7, 1.5] {
                worst = worst.max(product_formula_residual(a, x, y, t, s).map_err(err_str)?);
            }
        }
    }
    out.push(residual_check(
        SUITE,
        "product-formula",
        worst,
        1e-6,
        "3x3x3 grid in (x, y, t)",
    ));

    // translation identities
    let f = from_registry("gauss", a).map_err(err_str)?;
    let mut worst: f64 = 0.0;
    for &y in &[-1.2, 0.0, 0.4, 2.0] {
        worst = worst.max((translate(&f, 0.0, y, a, s).map_err(err_str)? - f.eval(y)).abs());
    }
    out.push(residual_check(
        SUITE,
        "translation-identity",
        worst,
        0.0,
        "zero translation is the identity (exact Dirac route)",
    ));

    let lhs = translate(&f, 0.8, 1.3, a, s).map_err(err_str)?;
    let rhs = translate(&f, 1.3, 0.8, a, s).map_err(err_str)?;
    out.push(residual_check(
        SUITE,
        "translation-symmetry",
        (lhs - rhs).abs(),
        1e-6,
        "arguments exchanged at (0.8, 1.3)",
    ));

    let mut worst_gap: f64 = f64::NEG_INFINITY;
    for id in ["gauss", "x2gauss"] {
        let f = from_registry(id, a).map_err(err_str)?;
        for &p in &[1.0, 2.0] {
            let base = lp_norm(&f, p, a, s).map_err(err_str)?;
            for &x in &[0.5, 1.0, 3.0] {
                let tn = translate_lp_norm(&f, x, p, a, s).map_err(err_str)?;
                worst_gap = worst_gap.max(tn - 2f64.sqrt() * base);
            }
        }
    }
    out.push(residual_check(
        SUITE,
        "translation-contraction",
        worst_gap.max(0.0),
        1e-6,
        "norm growth beyond sqrt(2) across f, p, x",
    ));

    // convolution properties
    let g = from_registry("x2gauss", a).map_err(err_str)?;
    let mut worst: f64 = 0.0;
    for &x in &[0.0, 0.6, 1.5] {
        let fg = convolve(&f, &g, x, a, s).map_err(err_str)?;
        let gf = convolve(&g, &f, x, a, s).map_err(err_str)?;
        worst = worst.max((fg - gf).abs());
    }
    out.push(residual_check(
        SUITE,
        "convolution-commutativity",
        worst,
        1e-5,
        "factors exchanged at sampled points",
    ));

    let nf = lp_norm(&f, 1.0, a, s).map_err(err_str)?;
    let ng = lp_norm(&g, 2.0, a, s).map_err(err_str)?;
    let conv = |x: f64| convolve(&f, &g, x, a, &s.scaled_tol(10.0)).unwrap_or(f64::NAN);
    let nconv = lp_norm(&conv, 2.0, a, &s.scaled_tol(100.0)).map_err(err_str)?;
    out.push(bound_check(
        SUITE,
        "young-inequality",
        nconv,
        2f64.sqrt() * nf * ng,
        1e-6,
        "(p, q, r) = (1, 2, 2)",
    ));

    let ys = [0.0, 0.5, 1.0, 2.0];
    let t_conv = dunkl_transform(&conv, a, &ys, &s.scaled_tol(100.0)).map_err(err_str)?;
    let tf = dunkl_transform(&f, a, &ys, s).map_err(err_str)?;
    let tg = dunkl_transform(&g, a, &ys, s).map_err(err_str)?;
    let mut worst: f64 = 0.0;
    for ((c, u), v) in t_conv.iter().zip(&tf).zip(&tg) {
        worst = worst.max((*c - *u * *v).modulus());
    }
    out.push(residual_check(
        SUITE,
        "convolution-transform-product",
        worst,
        1e-5,
        "transform of a convolution vs product of transforms",
    ));

    let h = from_registry("xgauss", a).map_err(err_str)?;
    let inner = s.scaled_tol(0.1);
    let mut worst: f64 = 0.0;
    for &(t, x) in &[(0.5, 0.8), (1.0, 0.3)] {
        let conv_fh = |z: f64| convolve(&f, &h, z, a, &inner).unwrap_or(f64::NAN);
        let lhs = translate(&conv_fh, t, x, a, s).map_err(err_str)?;
        let tf = |z: f64| translate(&f, t, z, a, &inner).unwrap_or(f64::NAN);
        let rhs = convolve(&tf, &h, x, a, s).map_err(err_str)?;
        worst = worst.max((lhs - rhs).abs());
    }
    out.push(residual_check(
        SUITE,
        "translation-convolution-interchange",
        worst,
        1e-5,
        "translating a convolution vs convolving a translation",
    ));

    // dilation preserves weighted mass and L1 norm
    let phi = from_registry("hermite:2", a).map_err(err_str)?;
    let phit = dilate(&phi, a, 2.0).map_err(err_str)?;
    let mass_drift = (phi.moment_mu(a, 0, false) - phit.moment_mu(a, 0, false)).abs();
    let n1 = lp_norm(&phi, 1.0, a, s).map_err(err_str)?;
    let n1t = lp_norm(&phit, 1.0, a, s).map_err(err_str)?;
    out.push(residual_check(
        SUITE,
        "dilation-mass-preservation",
        mass_drift.max((n1 - n1t).abs() / n1),
        1e-8,
        "weighted mass and L1 norm under dilation by 2",
    ));

    Ok(out)
}

pub fn suite_taylor(prm: &SuiteParams) -> R<Vec<CheckResult>> {
    const SUITE: &str = "taylor";
    let a = prm.alpha;
    let s = &prm.spec;
    let ks: Vec<u32> = match prm.k {
        Some(k) => vec![k],
        None => vec![1, 2, 3],
    };
    let mut out = Vec::new();

    // coefficient parity
    let mut worst: f64 = 0.0;
    for p in 0..8u32 {
        for &x in &[0.4, 1.0, 2.9] {
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            let lhs = b_coeff(a, p, -x);
            let rhs = sign * b_coeff(a, p, x);
            worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1e-300));
        }
    }
    out.push(residual_check(
        SUITE,
        "expansion-coefficient-parity",
        worst,
        1e-14,
        "b_p(-x) = (-1)^p b_p(x)",
    ));

    // order-zero kernel closed form
    let tk = theta_build(a, 0, 1.3).map_err(err_str)?;
    let mut worst: f64 = 0.0;
    for &y in &[-1.0f64, -0.3, 0.2, 1.2] {
        let expected = 1.0 / (2.0 * 1.3f64.powf(a.weight_exponent()))
            + y.signum() / (2.0 * y.abs().powf(a.weight_exponent()));
        worst = worst.max((tk.eval(y) - expected).abs() / expected.abs().max(1.0));
    }
    out.push(residual_check(
        SUITE,
        "remainder-kernel-closed-form",
        worst,
        1e-12,
        "order-zero kernel vs its explicit expression",
    ));

    // kernel size bound over the grid
    let mut worst_gap: f64 = f64::NEG_INFINITY;
    for &k in &ks {
        for &x in &[0.25, 1.0, 4.0] {
            let tk = theta_build(a, k - 1, x).map_err(err_str)?;
            let (lhs, rhs) = theta_l1_bound_check(&tk, s).map_err(err_str)?;
            worst_gap = worst_gap.max(lhs - rhs);
        }
    }
    out.push(residual_check(
        SUITE,
        "remainder-kernel-size-bound",
        worst_gap.max(0.0),
        1e-8,
        "weighted absolute kernel integral vs coefficient bound",
    ));

    // the Taylor identity across the grid
    let mut worst: f64 = 0.0;
    for &k in &ks {
        for id in ["gauss", "x2gauss"] {
            let f = from_registry(id, a).map_err(err_str)?;
            for &x in &[0.3, 0.8] {
                for &at in &[0.0, 0.4, 1.1] {
                    let res = taylor_residual(&f, k, x, at, a, s).map_err(err_str)?;
                    let tau = translate(&f, x, at, a, s).map_err(err_str)?;
                    worst = worst.max(res.abs() / (1.0 + tau.abs()));
                }
            }
        }
    }
    out.push(residual_check(
        SUITE,
        "taylor-identity",
        worst,
        1e-5,
        "translation vs expansion plus remainder",
    ));

    // remainder recursion step
    let f = from_registry("gauss", a).map_err(err_str)?;
    let mut worst: f64 = 0.0;
    for k in 2..=3u32 {
        let rk = remainder(&f, k, 0.7, 0.3, a, s).map_err(err_str)?;
        let rk1 = remainder(&f, k - 1, 0.7, 0.3, a, s).map_err(err_str)?;
        let corr = b_coeff(a, k - 1, 0.7) * f.dunkl_iterate(a, k - 1).eval(0.3);
        worst = worst.max((rk - (rk1 - corr)).abs());
    }
    out.push(residual_check(
        SUITE,
        "remainder-recursion",
        worst,
        2e-5,
        "one order down plus the coefficient term",
    ));

    // symmetrized remainder identity
    let mut worst: f64 = 0.0;
    for &k in &ks {
        let lhs = dunkl_core::taylor::remainder_sym(&f, k, 0.7, 0.2, a, s).map_err(err_str)?;
        let corr = dunkl_core::taylor::even_taylor_correction(&f, k, 0.7, a).map_err(err_str)?;
        let rhs = translate(&f, 0.7, 0.2, a, s).map_err(err_str)?
            + translate(&f, -0.7, 0.2, a, s).map_err(err_str)?
            - corr.eval(0.2);
        worst = worst.max((lhs - rhs).abs());
    }
    out.push(residual_check(
        SUITE,
        "symmetrized-remainder-identity",
        worst,
        1e-5,
        "symmetrized remainder vs translations minus even correction",
    ));

    // remainder norms stay a bounded multiple of the derivative norm
    let p = prm.p.unwrap_or(2.0);
    let mut fit: f64 = 0.0;
    let mut validate: f64 = 0.0;
    for (slot, id) in ["gauss", "x2gauss"].iter().enumerate() {
        let f = from_registry(id, a).map_err(err_str)?;
        for &k in &ks {
            let dnorm = lp_norm(&f.dunkl_iterate(a, k - 1), p, a, s).map_err(err_str)?;
            for &x in &[0.25, 0.5, 1.0, 2.0, 4.0] {
                let rnorm = if k == 1 {
                    translate_lp_norm(&f, x, p, a, s).map_err(err_str)?
                } else {
                    remainder_lp_norm(&f, k - 1, x, p, a, s)?
                };
                let ratio = rnorm / (x.powi(k as i32 - 1) * dnorm);
                if slot == 0 {
                    fit = fit.max(ratio);
                } else {
                    validate = validate.max(ratio);
                }
            }
        }
    }
    out.push(bound_check(
        SUITE,
        "remainder-norm-ratio",
        validate,
        2.0 * fit,
        0.0,
        "constant fitted on the first function, validated on the second",
    ));

    Ok(out)
}

// L^p norm of a -> R_k(x, f)(a), sampling the remainder on a window grid.
fn remainder_lp_norm(
    f: &PolyGauss,
    k: u32,
    x: f64,
    p: f64,
    alpha: Alpha,
    spec: &QuadratureSpec,
) -> R<f64> {
    use dunkl_core::quad::{lp_norm_windows, uniform_grid, GridFn, InterpRule};
    let r = 14.0f64;
    let span = x + r;
    let n = ((2.0 * span / 0.15).ceil() as usize + 1).clamp(33, 1001);
    let pts = uniform_grid(-span, span, n);
    let inner = spec.scaled_tol(10.0);
    let vals: Vec<f64> = pts
        .iter()
        .map(|&at| remainder(f, k, x, at, alpha, &inner).map_err(err_str))
        .collect::<R<_>>()?;
    let grid = GridFn::new(pts, vals, InterpRule::Cubic).map_err(err_str)?;
    lp_norm_windows(&grid, p, alpha, &[(-span, span)], spec).map_err(err_str)
}

pub fn suite_besov(prm: &SuiteParams) -> R<Vec<CheckResult>> {
    const SUITE: &str = "besov";
    let a = prm.alpha;
    let s = &prm.spec;
    let p = prm.p.unwrap_or(2.0);
    let k = prm.k.unwrap_or(1);
    let mut out = Vec::new();

    let bp = BesovParams::new(a, k, p, QIndex::Finite(1.0), 0.5).map_err(err_str)?;
    let f = from_registry("gauss", a).map_err(err_str)?;

    // the three modulus routes agree
    let mut worst: f64 = 0.0;
    for &x in &[0.6, 1.2] {
        let w1 =
            modulus_with_route(&f, &bp, x, ModulusRoute::SymmetricTranslation, s).map_err(err_str)?;
        let w2 =
            modulus_with_route(&f, &bp, x, ModulusRoute::RemainderDefinition, s).map_err(err_str)?;
        let w3 = modulus_with_route(&f, &bp, x, ModulusRoute::RemainderOrderK, s).map_err(err_str)?;
        worst = worst
            .max((w1 - w2).abs() / w1.max(1e-12))
            .max((w1 - w3).abs() / w1.max(1e-12));
    }
    out.push(residual_check(
        SUITE,
        "modulus-route-consistency",
        worst,
        2e-4,
        "symmetric-translation vs remainder forms",
    ));

    // small-scale order of the modulus
    let slope = modulus_loglog_slope(&f, &bp, 1e-2, 1e-1, 5, s).map_err(err_str)?;
    out.push(CheckResult {
        suite: SUITE,
        id: "modulus-small-scale-order",
        detail: format!("log-log slope {slope:.4} (needs >= 1.9)"),
        tolerance: 1.9,
        pass: slope >= 1.9,
    });

    // window moments vanish across orders
    let mut ok = true;
    for kk in 1..=5u32 {
        for n0 in 1..=4u32 {
            if n0 <= (kk - 1) / 2 {
                continue;
            }
            let phi = dunkl_core::besov::phi_construct(a, kk, n0).map_err(err_str)?;
            if check_phi_moments(&phi, a, kk).is_err() {
                ok = false;
            }
        }
    }
    out.push(CheckResult {
        suite: SUITE,
        id: "window-moments",
        detail: "half-line moments across orders and degrees".into(),
        tolerance: 1e-10,
        pass: ok,
    });

    // difference seminorm: finite and grid-stable
    let grid = SeminormGrid::new(0.05, 20.0, 13).map_err(err_str)?;
    let v1 = bkd_seminorm(&f, &bp, &grid, s).map_err(err_str)?;
    let grid2 = SeminormGrid::new(0.05, 20.0, 25).map_err(err_str)?;
    let v2 = bkd_seminorm(&f, &bp, &grid2, s).map_err(err_str)?;
    out.push(CheckResult {
        suite: SUITE,
        id: "difference-seminorm-finite",
        detail: format!("value {v1:.6e}"),
        tolerance: f64::INFINITY,
        pass: v1.is_finite() && v1 > 0.0,
    });
    out.push(residual_check(
        SUITE,
        "difference-seminorm-grid-stability",
        (v1 - v2).abs() / v2,
        0.05,
        "grid count doubled",
    ));

    // convolution seminorm: finite, with large-dilation decay
    let phi = dunkl_core::besov::phi_construct(a, k, 1.max((k - 1) / 2 + 1)).map_err(err_str)?;
    let cs = s.scaled_tol(100.0);
    let cgrid = SeminormGrid::new(0.1, 10.0, 9).map_err(err_str)?;
    let cv = conv_seminorm(&f, &phi, &bp, &cgrid, &cs).map_err(err_str)?;
    out.push(CheckResult {
        suite: SUITE,
        id: "convolution-seminorm-finite",
        detail: format!("value {cv:.6e}"),
        tolerance: f64::INFINITY,
        pass: cv.is_finite() && cv > 0.0,
    });

    let w1 = conv_norm(&f, &phi, 1.0, p, a, &cs).map_err(err_str)? / 1f64.powf(bp.scale_exponent());
    let w30 =
        conv_norm(&f, &phi, 30.0, p, a, &cs).map_err(err_str)? / 30f64.powf(bp.scale_exponent());
    out.push(bound_check(
        SUITE,
        "weighted-norm-large-dilation-decay",
        w30,
        0.05 * w1,
        0.0,
        "weighted window norm at dilation 30 vs 1",
    ));

    // dilation identity for the symmetrized remainder
    let mut worst: f64 = 0.0;
    for &kk in &[1u32, 2] {
        for &x in &[0.5, 1.0, 2.0] {
            for &t in &[0.5, 1.0, 2.0] {
                let (lhs, rhs) = dilation_identity_check(&phi, a, kk, x, t, s).map_err(err_str)?;
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    out.push(residual_check(
        SUITE,
        "dilation-identity",
        worst,
        1e-4,
        "dilated window remainder norms vs rescaled base point",
    ));

    // window-norm bound: constant fitted at t=1, held at t in {0.5, 2}
    let xgrid = SeminormGrid::new(0.02, 50.0, 25).map_err(err_str)?;
    let (l1, r1) = lemma41_check(&f, &phi, &bp, 1.5, 1.0, &xgrid, &cs).map_err(err_str)?;
    let fitted = l1 / r1;
    let mut worst_ratio: f64 = 0.0;
    for &t in &[0.5, 2.0] {
        let (lt, rt) = lemma41_check(&f, &phi, &bp, 1.5, t, &xgrid, &cs).map_err(err_str)?;
        worst_ratio = worst_ratio.max(lt / rt);
    }
    out.push(bound_check(
        SUITE,
        "window-norm-bound",
        worst_ratio,
        2.0 * fitted,
        0.0,
        "fitted at unit dilation, validated at the others",
    ));

    // reverse bound through the band-limited regularization (opt-in)
    if prm.lemma42 {
        let bp2 = BesovParams::new(a, k, p.max(2.0), QIndex::Finite(1.0), 0.5).map_err(err_str)?;
        let coarse = s.scaled_tol(1e6);
        let pairs = lemma42_check_multi(
            &f,
            &phi,
            &bp2,
            &[1.0, 0.5, 2.0],
            0.25,
            4.0,
            u64::MAX,
            &coarse,
        )
        .map_err(err_str)?;
        let fitted = pairs[0].0 / pairs[0].1;
        let worst = pairs[1..]
            .iter()
            .map(|(l, r)| l / r)
            .fold(0.0, f64::max);
        out.push(bound_check(
            SUITE,
            "regularized-reverse-bound",
            worst,
            2.0 * fitted,
            0.0,
            "fitted at x = 1, validated at x in {0.5, 2}",
        ));
    }

    Ok(out)
}

pub fn run_suites(which: &str, prm: &SuiteParams) -> R<Vec<CheckResult>> {
    let mut out = Vec::new();
    if which == "core" || which == "all" {
        out.extend(suite_core(prm)?);
    }
    if which == "translation" || which == "all" {
        out.extend(suite_translation(prm)?);
    }
    if which == "taylor" || which == "all" {
        out.extend(suite_taylor(prm)?);
    }
    if which == "besov" || which == "all" {
        out.extend(suite_besov(prm)?);
    }
    Ok(out)
}
