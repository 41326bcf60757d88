//! Exact algebra of test functions `P(x) e^{-c x^2}`.
//!
//! This family is closed under the Dunkl operator, so iterated derivatives
//! and weighted moments come out in closed form; every numeric routine in
//! the crate is checked against these exact values.

use crate::error::{Error, Result};
use crate::quad::RealFn;
use crate::special::{gamma, gen_hermite, Alpha, Parity, PolySeries};

/// A polynomial times a Gaussian, `f(x) = P(x) e^{-c x^2}` with `c > 0`.
///
/// The strictly positive Gaussian exponent keeps every member rapidly
/// decreasing, hence inside every weighted L^p space the crate works with.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyGauss {
    poly: PolySeries,
    scale: f64,
}

impl PolyGauss {
    pub fn new(poly: PolySeries, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Gaussian scale must be positive and finite, got {scale}"
            )));
        }
        Ok(PolyGauss { poly, scale })
    }

    /// The plain Gaussian `e^{-x^2}`.
    pub fn gauss() -> Self {
        PolyGauss {
            poly: PolySeries::constant(1.0),
            scale: 1.0,
        }
    }

    pub fn zero() -> Self {
        PolyGauss {
            poly: PolySeries::zero(),
            scale: 1.0,
        }
    }

    pub fn poly(&self) -> &PolySeries {
        &self.poly
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn parity(&self) -> Option<Parity> {
        self.poly.parity()
    }

    /// Horner evaluation of `P(x) e^{-c x^2}`.
    pub fn eval(&self, x: f64) -> f64 {
        self.poly.eval(x) * (-self.scale * x * x).exp()
    }

    /// Pointwise sum; requires matching Gaussian scales. Mixed-scale sums
    /// live in [`FunctionSum`].
    pub fn add(&self, other: &PolyGauss) -> Result<PolyGauss> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.scale != other.scale {
            return Err(Error::InvalidParameter(format!(
                "cannot add Gaussian scales {} and {} exactly; use FunctionSum",
                self.scale, other.scale
            )));
        }
        PolyGauss::new(self.poly.add(&other.poly), self.scale)
    }

    pub fn scale_coeffs(&self, s: f64) -> PolyGauss {
        PolyGauss {
            poly: self.poly.scale(s),
            scale: self.scale,
        }
    }

    /// One application of the Dunkl operator, exactly on coefficients:
    ///
    /// ```
    /// # use dunkl_core::{Alpha, PolyGauss, PolySeries};
    /// // x e^{-x^2} maps to (2(alpha+1) - 2x^2) e^{-x^2}
    /// let alpha = Alpha::new(0.5).unwrap();
    /// let f = PolyGauss::new(PolySeries::new(vec![0.0, 1.0]), 1.0).unwrap();
    /// let g = f.dunkl_apply(alpha);
    /// assert_eq!(g.poly().coeffs(), &[3.0, 0.0, -2.0]);
    /// assert_eq!(g.scale(), 1.0);
    /// ```
    ///
    /// the derivative contributes `(P'(x) - 2 c x P(x)) e^{-c x^2}` and the
    /// reflection contributes `(2 alpha + 1) (P(x) - P(-x)) / (2x)` times the
    /// Gaussian, the division by `x` performed on coefficients so the origin
    /// never sees a 0/0. The Gaussian scale is unchanged.
    pub fn dunkl_apply(&self, alpha: Alpha) -> PolyGauss {
        let derivative = self
            .poly
            .derivative()
            .add(&self.poly.shift_up(1).scale(-2.0 * self.scale));
        let reflection = self.poly.odd_part_div_x().scale(alpha.weight_exponent());
        PolyGauss {
            poly: derivative.add(&reflection),
            scale: self.scale,
        }
    }

    /// `k`-fold composition of [`Self::dunkl_apply`]; `k = 0` returns the
    /// function unchanged.
    pub fn dunkl_iterate(&self, alpha: Alpha, k: u32) -> PolyGauss {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.dunkl_apply(alpha);
        }
        out
    }

    /// Exact weighted moment: the integral of `x^m f(x)` against the
    /// weighted measure over `(0, inf)` (`half_line`) or the whole line,
    /// via `int_0^inf x^s e^{-c x^2} dx = Gamma((s+1)/2) / (2 c^((s+1)/2))`
    /// applied termwise.
    pub fn moment_mu(&self, alpha: Alpha, m: u32, half_line: bool) -> f64 {
        let norm = alpha.measure_norm();
        let mut acc = 0.0;
        for (j, &coeff) in self.poly.coeffs().iter().enumerate() {
            if coeff == 0.0 {
                continue;
            }
            let power = m as usize + j;
            // x^power |x|^(2 alpha + 1): odd total power integrates to zero
            // over the full line.
            let s = power as f64 + alpha.weight_exponent();
            let half = gamma((s + 1.0) / 2.0) / (2.0 * self.scale.powf((s + 1.0) / 2.0));
            if half_line {
                acc += coeff * half;
            } else if power.is_multiple_of(2) {
                acc += 2.0 * coeff * half;
            }
        }
        acc / norm
    }

    /// Radius beyond which `|f|` drops below `eps` times its coefficient
    /// scale.
    pub fn decay_radius(&self, eps: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let amp = (self.poly.max_coeff() * (self.poly.degree() as f64 + 1.0)).max(1.0);
        let target = (amp / eps.max(1e-300)).ln().max(1.0);
        let deg = self.poly.degree() as f64;
        let mut r = (target / self.scale).sqrt();
        // account for polynomial growth
        for _ in 0..4 {
            r = ((target + deg * r.max(1.0).ln()) / self.scale).sqrt();
        }
        r
    }

    /// Split into even and odd parts sharing the Gaussian factor.
    pub fn even_odd_split(&self) -> EvenOddSplit {
        EvenOddSplit {
            even: PolyGauss {
                poly: self.poly.even_part(),
                scale: self.scale,
            },
            odd: PolyGauss {
                poly: self.poly.odd_part(),
                scale: self.scale,
            },
        }
    }
}

impl RealFn for PolyGauss {
    fn eval(&self, x: f64) -> f64 {
        PolyGauss::eval(self, x)
    }

    fn support_radius(&self, eps: f64) -> f64 {
        self.decay_radius(eps)
    }

    fn feature_scale(&self) -> f64 {
        // the Gaussian width 1/sqrt(c); dilated windows scale accordingly
        (1.0 / self.scale).sqrt().min(100.0)
    }
}

/// Even/odd decomposition of a [`PolyGauss`]; the parts reconstruct the
/// original by addition.
#[derive(Debug, Clone)]
pub struct EvenOddSplit {
    pub even: PolyGauss,
    pub odd: PolyGauss,
}

/// A finite sum of [`PolyGauss`] terms with possibly different Gaussian
/// scales, evaluated termwise.
#[derive(Debug, Clone, Default)]
pub struct FunctionSum {
    terms: Vec<PolyGauss>,
}

impl FunctionSum {
    pub fn new(terms: Vec<PolyGauss>) -> Self {
        FunctionSum {
            terms: terms.into_iter().filter(|t| !t.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[PolyGauss] {
        &self.terms
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    pub fn moment_mu(&self, alpha: Alpha, m: u32, half_line: bool) -> f64 {
        self.terms
            .iter()
            .map(|t| t.moment_mu(alpha, m, half_line))
            .sum()
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut parity = Some(Parity::Even);
        for (i, t) in self.terms.iter().enumerate() {
            let tp = t.parity()?;
            if i == 0 {
                parity = Some(tp);
            } else if parity != Some(tp) {
                return None;
            }
        }
        parity
    }
}

impl RealFn for FunctionSum {
    fn eval(&self, x: f64) -> f64 {
        FunctionSum::eval(self, x)
    }

    fn support_radius(&self, eps: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.decay_radius(eps))
            .fold(0.0, f64::max)
    }

    fn feature_scale(&self) -> f64 {
        self.terms
            .iter()
            .map(RealFn::feature_scale)
            .fold(1.0, f64::min)
    }
}

/// Resolve a test-function name from the registry used by the command
/// line: `gauss`, `xgauss`, `x2gauss`, `hermite:<n>` (the generalized
/// Hermite polynomial of that degree times the Gaussian), or `zero`.
pub fn from_registry(id: &str, alpha: Alpha) -> Result<PolyGauss> {
    match id {
        "gauss" => Ok(PolyGauss::gauss()),
        "xgauss" => PolyGauss::new(PolySeries::new(vec![0.0, 1.0]), 1.0),
        "x2gauss" => PolyGauss::new(PolySeries::new(vec![0.0, 0.0, 1.0]), 1.0),
        "zero" => Ok(PolyGauss::zero()),
        _ => {
            if let Some(rest) = id.strip_prefix("hermite:") {
                let n: u32 = rest.parse().map_err(|_| {
                    Error::InvalidParameter(format!("bad hermite degree in registry id {id:?}"))
                })?;
                PolyGauss::new(gen_hermite(n, alpha)?, 1.0)
            } else {
                Err(Error::InvalidParameter(format!(
                    "unknown test function {id:?}; expected gauss, xgauss, x2gauss, hermite:<n>, or zero"
                )))
            }
        }
    }
}
