//! Exact coefficient arithmetic and truncated formal-series primitives.

pub mod gauss;
pub mod matrix;
pub mod momentum;
pub mod poly;
pub mod rational;
pub mod series;

pub use gauss::GaussRat;
pub use matrix::PolyMatrix;
pub use momentum::MomentumMap;
pub use poly::{eta, Block, Ctx, Mono, Poly, MAX_DIM};
pub use rational::Rat;
pub use series::ScalarSeries2;

/// Parameter polynomials (in `a` and auxiliary scalars) share the general
/// polynomial representation.
pub type ParamPoly = Poly;
