//! Exact coefficient arithmetic: rationals, univariate polynomials over a
//! field, towers of simple algebraic extensions and factorization over them.

mod factor;
mod ring;
mod tower;
mod upoly;

pub use factor::{factor_integer_squarefree, factor_over, factor_rational, roots_in_field};
pub use ring::{rat, Field, Rational, Ring};
pub use tower::{extend, AlgebraicNumber, ArithOp, FieldError, Level, Tower, field_arith};
pub use upoly::UPoly;
