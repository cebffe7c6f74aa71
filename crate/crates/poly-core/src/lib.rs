//! Bivariate polynomials over exact fields, with weighted jets, saturation
//! and substitution.

mod mono;
mod params;
mod poly;

pub use mono::{w_deg, Grading, Mono, PiecewiseWeight, Weight};
pub use params::{ParamMono, ParamPoly};
pub use poly::{check_automorphism, Poly, PolyError};

pub use field_tower::{rat, Field, Rational, Ring};

/// Polynomial with rational coefficients.
pub type QPoly = Poly<Rational>;
