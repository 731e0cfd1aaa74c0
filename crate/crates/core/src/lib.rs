//! Skew BCH convolutional codes over rational function fields.
//!
//! The coefficient domain is F = F_q(t) with an order-n automorphism sigma;
//! codes live in the quotient of the skew polynomial ring F[x; sigma] by the
//! central ideal (x^n - 1). The crate builds the codes, encodes, decodes
//! through a syndrome key equation with failure recovery, and simulates
//! random error channels.

mod expr;
mod linalg;

pub mod code;
pub mod decode;
pub mod error;
pub mod funcfield;
pub mod galois;
pub mod replay;
pub mod sigma;
pub mod sim;
pub mod skew;

pub use error::Error;
pub use funcfield::{Automorphism, FunctionField, Poly, RationalFunction};
pub use galois::{FieldElement, GaloisField};
pub use sigma::SigmaField;
pub use skew::SkewPoly;
