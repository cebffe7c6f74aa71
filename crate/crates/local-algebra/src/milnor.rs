use std::fmt;

use poly_core::{Field, Mono, Poly};
use thiserror::Error;

use crate::basis::{standard_basis, StandardBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("the zero germ has no isolated singularity")]
    ZeroGerm,
    #[error("germ does not vanish at the origin")]
    NonzeroConstant,
    #[error("germ is smooth: nonzero linear part")]
    Smooth,
    #[error("Milnor number is infinite: singularity is not isolated")]
    InfiniteMilnor,
}

/// Milnor number, possibly infinite.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mu {
    Finite(usize),
    Infinite,
}

impl Mu {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Mu::Finite(n) => Some(*n),
            Mu::Infinite => None,
        }
    }
}

impl fmt::Display for Mu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mu::Finite(n) => write!(f, "{n}"),
            Mu::Infinite => write!(f, "infinity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorData {
    pub mu: Mu,
    /// Monomial basis of the Milnor algebra; empty when `mu` is infinite.
    pub basis: Vec<Mono>,
}

pub fn jacobian_basis<C: Field>(f: &Poly<C>) -> StandardBasis<C> {
    standard_basis(&[f.dx(), f.dy()])
}

pub fn milnor_number<C: Field>(f: &Poly<C>) -> Result<MilnorData, LocalError> {
    if f.is_zero() {
        return Err(LocalError::ZeroGerm);
    }
    if !f.constant_term().is_zero() {
        return Err(LocalError::NonzeroConstant);
    }
    let sb = jacobian_basis(f);
    Ok(match sb.complement() {
        Some(basis) => MilnorData { mu: Mu::Finite(basis.len()), basis },
        None => MilnorData { mu: Mu::Infinite, basis: Vec::new() },
    })
}

/// Least `k <= mu+1` with `m^(k+1)` inside `m^2 * Jac(f)`.
pub fn determinacy_bound<C: Field>(f: &Poly<C>) -> Result<u32, LocalError> {
    if f.is_zero() {
        return Err(LocalError::ZeroGerm);
    }
    if !f.constant_term().is_zero() {
        return Err(LocalError::NonzeroConstant);
    }
    let jac = jacobian_basis(f);
    let d = jac.power_of_maximal_ideal().ok_or(LocalError::InfiniteMilnor)?;
    let mu = jac.complement().map_or(0, |c| c.len());
    let (fx, fy) = (f.dx(), f.dy());
    let mut gens = Vec::new();
    for m in Mono::of_degree(2) {
        let c = C::one();
        gens.push(fx.mul_term(&c, &m));
        gens.push(fy.mul_term(&c, &m));
    }
    // m^d lies in Jac(f), so m^(d+2) lies in m^2 Jac(f); adding it keeps
    // the computation truncated from the start
    gens.extend(Mono::of_degree(d + 2).map(|m| Poly::term(C::one(), m)));
    let sb = standard_basis(&gens);
    let cap = mu as u32 + 1;
    for k in 1..cap {
        if Mono::of_degree(k + 1).all(|m| sb.contains(&Poly::term(C::one(), m))) {
            return Ok(k);
        }
    }
    Ok(cap)
}

/// `2 - rank` of the Hessian at the origin.
pub fn corank<C: Field>(f: &Poly<C>) -> Result<u32, LocalError> {
    if !f.constant_term().is_zero() {
        return Err(LocalError::NonzeroConstant);
    }
    let (a, b) = f.linear_part();
    if !a.is_zero() || !b.is_zero() {
        return Err(LocalError::Smooth);
    }
    let two = C::from_int(2);
    let hxx = f.coeff(&Mono::new(2, 0)) * two.clone();
    let hxy = f.coeff(&Mono::new(1, 1));
    let hyy = f.coeff(&Mono::new(0, 2)) * two;
    let det = hxx.clone() * hyy.clone() - hxy.clone() * hxy.clone();
    Ok(if !det.is_zero() {
        0
    } else if hxx.is_zero() && hxy.is_zero() && hyy.is_zero() {
        2
    } else {
        1
    })
}
