//! Weighted homogeneous factorization of facet jets.
//!
//! A saturated weighted homogeneous polynomial in x, y is a polynomial in
//! `x^wy` and `y^wx`, so it factors through a univariate polynomial in
//! `t = y^wx / x^wy`.

use std::sync::Arc;

use field_tower::{extend, factor_over, AlgebraicNumber, FieldError, Tower, UPoly};
use newton_geometry::{facet_jet, newton_polygon, Facet, GeometryError};
use poly_core::{Field, Mono, Poly, PolyError, Ring, Weight};
use thiserror::Error;

pub type KPoly = Poly<AlgebraicNumber>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WhError {
    #[error("polynomial is not weighted homogeneous for {0}")]
    NotHomogeneous(Weight),
    #[error("polynomial is not saturated")]
    NotSaturated,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Image of a saturated weighted homogeneous `g` under `x^wy -> 1`,
/// `y^wx -> t`.
pub fn dehomogenize<C: Ring>(g: &Poly<C>, w: Weight) -> Result<UPoly<C>, WhError> {
    let Some(deg) = g.w_ord(&w) else { return Ok(UPoly::zero()) };
    if !g.is_w_homogeneous(&w) {
        return Err(WhError::NotHomogeneous(w));
    }
    if g.monomial_content() != (0, 0) {
        return Err(WhError::NotSaturated);
    }
    let k = deg / (w.wx as u64 * w.wy as u64);
    let mut coeffs = vec![C::zero(); k as usize + 1];
    for (m, c) in g.terms() {
        if m.x % w.wy != 0 || m.y % w.wx != 0 {
            return Err(WhError::NotHomogeneous(w));
        }
        coeffs[(m.y / w.wx) as usize] = c.clone();
    }
    Ok(UPoly::new(coeffs))
}

/// Inverse of [`dehomogenize`] for a polynomial of degree at most `k`.
pub fn homogenize<C: Ring>(u: &UPoly<C>, w: Weight, k: u32) -> Poly<C> {
    Poly::from_terms(
        u.coeffs().iter().enumerate().map(|(s, c)| (Mono::new(w.wy * (k - s as u32), w.wx * s as u32), c.clone())),
    )
}

/// Saturation of the facet jet, dehomogenized.
pub fn facet_polynomial<C: Ring>(f: &Poly<C>, facet: &Facet) -> Result<UPoly<C>, WhError> {
    let (g, _, _) = facet_jet(f, facet)?.saturate()?;
    dehomogenize(&g, facet.weight)
}

/// Irreducible factors over the tower with multiplicities, sorted by
/// descending multiplicity, then degree, then coefficients.
pub fn multiplicity_structure(tower: &Arc<Tower>, u: &UPoly<AlgebraicNumber>) -> Vec<(UPoly<AlgebraicNumber>, u32)> {
    let mut fs = factor_over(tower, u);
    fs.sort_by(|a, b| {
        b.1.cmp(&a.1).then_with(|| a.0.degree().cmp(&b.0.degree())).then_with(|| a.0.to_string().cmp(&b.0.to_string()))
    });
    fs
}

/// Multiplicities over the algebraic closure: an irreducible factor of
/// degree `e` stands for `e` conjugate roots.
pub fn closure_multiplicities(structure: &[(UPoly<AlgebraicNumber>, u32)]) -> Vec<u32> {
    let mut out: Vec<u32> =
        structure.iter().flat_map(|(g, m)| std::iter::repeat_n(*m, g.degree().unwrap_or(0))).collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// A root of an irreducible factor: in the tower itself for a linear
/// factor, otherwise the generator of a new level named `name`.
pub fn root_of(
    tower: &Arc<Tower>,
    factor: &UPoly<AlgebraicNumber>,
    name: &str,
) -> Result<(Arc<Tower>, AlgebraicNumber), WhError> {
    let g = factor.monic();
    if g.degree() == Some(1) {
        return Ok((tower.clone(), -g.coeff(0)));
    }
    let t = extend(tower, &g.map(|c| c.lift(tower)), name)?;
    let r = t.generator();
    Ok((t, r))
}

/// Factorization `x^a * y^b * unit * prod g_i^l_i * residual` of a weighted
/// homogeneous polynomial over a tower.
#[derive(Clone, Debug)]
pub struct WhFactorization {
    pub weight: Weight,
    pub x_exp: u32,
    pub y_exp: u32,
    pub unit: AlgebraicNumber,
    /// Irreducible factors over the tower of the dehomogenized saturation.
    pub structure: Vec<(UPoly<AlgebraicNumber>, u32)>,
    /// Factors over the tower that are linear in one variable, not
    /// associated to x or y, by descending multiplicity.
    pub linear_factors: Vec<(KPoly, u32)>,
    /// Product of the remaining factors with their multiplicities.
    pub nonlinear_residual: KPoly,
}

impl WhFactorization {
    /// Roots `c` of multiplicity `l` such that `y^wx - c*x^wy` is a factor
    /// over the tower.
    pub fn rational_roots(&self) -> Vec<(AlgebraicNumber, u32)> {
        self.structure.iter().filter(|(g, _)| g.degree() == Some(1)).map(|(g, m)| (-g.coeff(0), *m)).collect()
    }

    /// The dehomogenized saturation is squarefree.
    pub fn is_nondegenerate(&self) -> bool {
        self.structure.iter().all(|(_, m)| *m == 1)
    }

    /// The saturation is smooth: it contains x or y linearly.
    pub fn saturation_is_smooth(&self) -> bool {
        let k: u32 = self.structure.iter().map(|(g, m)| g.degree().unwrap_or(0) as u32 * m).sum();
        k == 1 && (self.weight.wx == 1 || self.weight.wy == 1)
    }

    pub fn linear_count(&self) -> usize {
        self.linear_factors.len()
    }

    pub fn reassemble(&self) -> KPoly {
        let mut p = KPoly::mono(self.x_exp, self.y_exp).scale(&self.unit);
        for (g, l) in &self.linear_factors {
            p = p.mul(&g.pow(*l));
        }
        p.mul(&self.nonlinear_residual)
    }
}

/// Factors a weighted homogeneous polynomial over `tower`.
pub fn wh_factorize(tower: &Arc<Tower>, g: &KPoly, w: Weight) -> Result<WhFactorization, WhError> {
    let (sat, a, b) = g.saturate()?;
    let u = dehomogenize(&sat, w)?;
    let structure = multiplicity_structure(tower, &u);
    let linear_shape = w.wx == 1 || w.wy == 1;
    let mut linear_factors = Vec::new();
    let mut residual = KPoly::constant(AlgebraicNumber::one());
    for (h, m) in &structure {
        let e = h.degree().unwrap_or(0) as u32;
        let p = homogenize(h, w, e);
        if e == 1 && linear_shape {
            linear_factors.push((p, *m));
        } else {
            residual = residual.mul(&p.pow(*m));
        }
    }
    let out = WhFactorization {
        weight: w,
        x_exp: a,
        y_exp: b,
        unit: u.leading(),
        structure,
        linear_factors,
        nonlinear_residual: residual,
    };
    assert_eq!(out.reassemble(), *g, "weighted homogeneous factorization does not reassemble");
    Ok(out)
}

/// The saturation of the facet jet has finite Milnor number.
pub fn is_facet_nondegenerate<C: Field>(f: &Poly<C>, facet: &Facet) -> Result<bool, WhError> {
    Ok(facet_polynomial(f, facet)?.is_squarefree())
}

/// Every facet of the Newton polygon is non-degenerate.
pub fn has_nondegenerate_boundary<C: Field>(f: &Poly<C>) -> Result<bool, WhError> {
    let p = newton_polygon(f)?;
    for facet in &p.facets {
        if !is_facet_nondegenerate(f, facet)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The normalization table for one facet; weighted-linear factors are
/// counted over the coefficient field `tower`.
pub fn normalization_holds(fac: &WhFactorization) -> bool {
    let (a, b, n) = (fac.x_exp, fac.y_exp, fac.linear_count());
    let w = fac.weight;
    match w.wx.cmp(&w.wy) {
        std::cmp::Ordering::Equal => (a != 0 && b != 0) || n == 0,
        std::cmp::Ordering::Greater => a != 0 || n == 0,
        std::cmp::Ordering::Less => b != 0 || n == 0,
    }
}

/// Normalization of `f` with respect to one of its facets.
pub fn check_normalization(tower: &Arc<Tower>, f: &KPoly, facet: &Facet) -> Result<bool, WhError> {
    let fac = wh_factorize(tower, &facet_jet(f, facet)?, facet.weight)?;
    Ok(normalization_holds(&fac))
}
