//! Newton-Puiseux expansions of plane germs, characteristic exponents of
//! branches and intersection numbers.
//!
//! Branches are developed as parametrizations `x = c * t^n`,
//! `y = sum d_k t^k` with coefficients in a tower over the field of the
//! input. A ramified step `y ~ a x^(q/p)` substitutes
//! `x = c^alpha u^p`, `y = c^beta u^q (1 + v)` with `beta*p - alpha*q = 1`,
//! where `c = a^p` is a root of the facet polynomial, so no p-th roots are
//! adjoined and conjugates in the ramification collapse into one branch.

mod expansion;
mod invariants;
mod series;

use std::fmt;
use std::sync::Arc;

use field_tower::{rat, AlgebraicNumber, FieldError, Rational, Ring, Tower};
use local_algebra::{milnor_number, LocalError};
use newton_geometry::GeometryError;
use num_integer::Integer;
use num_traits::ToPrimitive;
use poly_core::{PolyError, QPoly};
use thiserror::Error;
use wh_factor::{KPoly, WhError};

pub use expansion::Branch;
pub use invariants::{orbit_polynomial, topological_data, BranchClass, TopologicalData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PuiseuxError {
    #[error("the zero polynomial has no branches")]
    ZeroPolynomial,
    #[error("germ does not vanish at the origin")]
    NonzeroConstant,
    #[error("germ is not y-general: it is divisible by x")]
    NotYGeneral,
    #[error("expansion is not developed far enough")]
    InsufficientDevelopment,
    #[error("the germs share a component")]
    CommonComponent,
    #[error("the curve has more than one branch")]
    Reducible,
    #[error("singularity is not isolated")]
    NotIsolated,
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Factor(#[from] WhError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Local(#[from] LocalError),
}

/// `y = sum c_e x^e` with rational exponents `e` of denominator dividing
/// `ramification`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxExpansion {
    /// Least common denominator of the exponents present.
    pub ramification: u32,
    pub terms: Vec<(Rational, AlgebraicNumber)>,
    /// Terms up to this x-order are exact.
    pub developed_order: Rational,
    /// The expansion is an exact root; no terms were cut off.
    pub exact: bool,
}

impl fmt::Display for PuiseuxExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let simple = !s[1..].contains(['+', '-', '*']);
            let (neg, body) = match s.strip_prefix('-') {
                Some(abs) if simple => (true, abs.to_string()),
                _ if simple => (false, s),
                _ => (false, format!("({s})")),
            };
            let sign = match (k == 0, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coeff = if body == "1" { String::new() } else { format!("{body}·") };
            write!(f, "{sign}{coeff}x^({e})")?;
        }
        Ok(())
    }
}

/// Characteristic exponents `k_0 < k_1 < ...` of a branch.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharExponents {
    pub exponents: Vec<u32>,
    /// The rows for `n > m` of the defining table were used; those rows
    /// stop after `k_1`.
    pub transposed: bool,
}

/// The defining table applied to ramification `n` and the integer
/// exponents `js` (numerators over `n`, increasing) of the nonzero terms.
pub(crate) fn char_exponents_of(n: u32, js: &[u32]) -> Result<CharExponents, PuiseuxError> {
    if js.is_empty() && n == 1 {
        // the branch y = 0
        return Ok(CharExponents { exponents: vec![1], transposed: false });
    }
    let m = *js.first().ok_or(PuiseuxError::InsufficientDevelopment)?;
    if n <= m {
        let mut k = vec![n];
        let mut g = n;
        while g > 1 {
            let j = *js.iter().find(|j| j.gcd(&g) < g).ok_or(PuiseuxError::InsufficientDevelopment)?;
            k.push(j);
            g = g.gcd(&j);
        }
        return Ok(CharExponents { exponents: k, transposed: false });
    }
    let k1 = if n % m == 0 {
        js.iter().find(|j| j.gcd(&m) < m).ok_or(PuiseuxError::InsufficientDevelopment)? + n - m
    } else {
        n
    };
    Ok(CharExponents { exponents: vec![m, k1], transposed: true })
}

pub fn characteristic_exponents(e: &PuiseuxExpansion) -> Result<CharExponents, PuiseuxError> {
    let n = e.ramification;
    let js: Vec<u32> = e
        .terms
        .iter()
        .map(|(x, _)| (x.clone() * rat(n as i64, 1)).to_integer().to_u32().ok_or(PuiseuxError::InsufficientDevelopment))
        .collect::<Result<_, _>>()?;
    char_exponents_of(n, &js)
}

/// The rational germ with coefficients viewed in the field of rationals
/// of the tower library.
pub fn lift(f: &QPoly) -> KPoly {
    f.map(|c| AlgebraicNumber::rational(c.clone()))
}

/// Longest tower among the coefficients of `f`.
pub fn base_tower(f: &KPoly) -> Arc<Tower> {
    f.terms().map(|(_, c)| c.tower().clone()).max_by_key(|t| t.depth()).unwrap_or_else(Tower::rationals)
}

/// Development bound `mu + 2`.
pub fn default_bound(f: &KPoly) -> Result<Rational, PuiseuxError> {
    let mu = milnor_number(f)?.mu.finite().ok_or(PuiseuxError::NotIsolated)?;
    Ok(rat(mu as i64 + 2, 1))
}

fn check_input(f: &KPoly) -> Result<(), PuiseuxError> {
    if f.is_zero() {
        return Err(PuiseuxError::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(PuiseuxError::NonzeroConstant);
    }
    if !f.terms().any(|(m, _)| m.x == 0) {
        return Err(PuiseuxError::NotYGeneral);
    }
    Ok(())
}

/// All branch classes of a y-general germ, developed to x-order `l`.
pub fn branches(f: &KPoly, l: &Rational) -> Result<Vec<Branch>, PuiseuxError> {
    check_input(f)?;
    expansion::develop(f, &base_tower(f), l)
}

/// One expansion per branch class.
pub fn expansions(f: &QPoly, l: &Rational) -> Result<Vec<PuiseuxExpansion>, PuiseuxError> {
    branches(&lift(f), l)?.iter().map(Branch::expansion).collect()
}

/// The first Puiseux expansion of `f`, developed to x-order `l`: the
/// leftmost facet and the first root at every stage.
pub fn newton_puiseux(f: &QPoly, l: &Rational) -> Result<PuiseuxExpansion, PuiseuxError> {
    let f = lift(f);
    check_input(&f)?;
    let bs = expansion::develop(&f, &base_tower(&f), l)?;
    bs.first().ok_or(PuiseuxError::InsufficientDevelopment)?.expansion()
}

/// Lowest x-exponent of `f(x, e(x))` not exceeding `bound`, or `None` when
/// all terms up to `bound` cancel.
pub fn residual_order(f: &KPoly, e: &PuiseuxExpansion, bound: &Rational) -> Option<Rational> {
    let n = e.ramification;
    let k = (bound.clone() * rat(n as i64, 1)).floor().to_integer().to_usize().unwrap_or(0);
    let mut c = vec![AlgebraicNumber::zero(); k + 1];
    for (x, a) in &e.terms {
        let j = (x.clone() * rat(n as i64, 1)).to_integer().to_usize().unwrap();
        if j <= k {
            c[j] = a.clone();
        }
    }
    let y = field_tower::UPoly::new(c);
    let r = series::evaluate(f, &AlgebraicNumber::one(), n, &y, k);
    series::order(&r).map(|o| rat(o as i64, n as i64))
}

/// The residual of `e` in `f` has no term of x-order up to the developed
/// order.
pub fn residual_vanishes(f: &KPoly, e: &PuiseuxExpansion) -> bool {
    residual_order(f, e, &e.developed_order).is_none()
}

/// Intersection number at the origin of `f` with the branch `g`, as the
/// t-order of `f` along a parametrization of `g`.
pub fn intersection_number(f: &QPoly, g: &QPoly) -> Result<u64, PuiseuxError> {
    let (f, g) = (lift(f), lift(g));
    for h in [&f, &g] {
        if h.is_zero() {
            return Err(PuiseuxError::ZeroPolynomial);
        }
        if !h.constant_term().is_zero() {
            return Err(PuiseuxError::NonzeroConstant);
        }
    }
    let (f, g) = invariants::make_y_general(&f, &g);
    let df = f.degree().unwrap_or(0) as i64;
    let dg = g.degree().unwrap_or(0) as i64;
    // the local intersection number is bounded by the product of degrees
    let cap = rat(df * dg + 1, 1);
    let mut l = rat(4, 1);
    loop {
        let l_now = if l > cap { cap.clone() } else { l.clone() };
        let bs = branches(&g, &l_now)?;
        if bs.len() != 1 || bs[0].conjugates(&Tower::rationals()) != 1 || bs[0].multiplicity > 1 {
            if bs.len() == 1 && bs[0].multiplicity > 1 && l_now < cap {
                l = l * rat(2, 1);
                continue;
            }
            return Err(PuiseuxError::Reducible);
        }
        let b = &bs[0];
        let k = if b.exact {
            // f along an exact parametrization is a polynomial in t
            let top = b.terms.last().map_or(0, |(e, _)| *e);
            f.terms().map(|(m, _)| (m.x * b.ramification + m.y * top) as usize).max().unwrap_or(0)
        } else {
            b.reliable_degree()
        };
        let v = series::evaluate(&f, &b.scale, b.ramification, &b.y_series(k), k);
        match series::order(&v) {
            Some(o) => return Ok(o as u64),
            None if b.exact || l_now >= cap => return Err(PuiseuxError::CommonComponent),
            None => l = l * rat(2, 1),
        }
    }
}
