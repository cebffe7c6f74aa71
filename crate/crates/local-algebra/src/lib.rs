//! Computations in the local ring of the plane at the origin: standard
//! bases under a local ordering, Milnor numbers, determinacy and corank.

mod basis;
mod milnor;

pub use basis::{mora_reduce, standard_basis, Reduction, StandardBasis};
pub use milnor::{corank, determinacy_bound, jacobian_basis, milnor_number, LocalError, MilnorData, Mu};

use poly_core::{Field, Poly};

/// Normal form of `f` modulo the standard basis `g`.
pub fn mora_normal_form<C: Field>(f: &Poly<C>, g: &StandardBasis<C>) -> Poly<C> {
    g.normal_form(f)
}
