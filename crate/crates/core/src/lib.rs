//! One-dimensional Dunkl harmonic analysis.
//!
//! The crate builds the full operator chain for a real deformation
//! parameter `alpha > -1/2`: the Dunkl operator (a reflection-perturbed
//! derivative), its kernel and integral transform, the explicit
//! translation kernel with its signed measure, the convolution built from
//! translations, the generalized Taylor formula with integral remainder of
//! arbitrary order, and the two smoothness seminorms (difference-based and
//! convolution-based) that the Taylor remainder controls.
//!
//! Everything numeric is anchored to the exact `polynomial x Gaussian`
//! algebra in [`polygauss`], which is closed under the Dunkl operator and
//! has closed-form weighted moments.

// Comparisons written as `!(x > 0.0)` are deliberate: they reject NaN
// along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod besov;
pub mod error;
pub mod polygauss;
pub mod quad;
pub mod taylor;
pub mod transform;
pub mod translation;

pub mod special;

pub use error::{Error, Result};
pub use polygauss::{from_registry, FunctionSum, PolyGauss};
pub use quad::{GridFn, QuadratureSpec, RealFn};
pub use special::{Alpha, PolySeries};
