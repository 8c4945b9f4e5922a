//! Exact symbolic kernel for the Lie algebra gsp4 and the finite computations
//! built on it: root data, k-types, invariant differential forms on b0, and the
//! enveloping algebra with its Casimir element.
//!
//! No floating point is used anywhere; every identity is checked exactly over
//! the Gaussian rationals or over rational functions in formal symbols.

pub mod error;
pub mod exactnum;
pub mod forms;
pub mod gsp4;
pub mod invcalc;
pub mod ktypes;
pub mod linalg;
pub mod uea;

pub use error::{KernelError, Result};
pub use exactnum::{poly_substitute, ratfun_eq, Field, Poly, RatFun, Rational, Ring, Scalar};
pub use forms::{Frame, Multivector};
pub use gsp4::{bracket, LieElt, Subspace, Weight};
pub use ktypes::{Character, KModule};
pub use uea::{PbwMonomial, UeaElt};
