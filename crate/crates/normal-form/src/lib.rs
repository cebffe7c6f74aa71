//! Monomial regular bases of Milnor algebras and normal-form families
//! covering the mu-constant stratum of a germ with non-degenerate Newton
//! boundary.

mod discriminant;

use std::fmt;

use classify::{classify, Classification, ClassifyError, ClassifyOutcome};
use field_tower::{Field, Rational, Ring};
use local_algebra::{determinacy_bound, standard_basis, LocalError};
use newton_geometry::{newton_polygon, GeometryError, NewtonPolygon};
use poly_core::{Mono, ParamPoly, Poly, QPoly};
use thiserror::Error;
use wh_factor::{dehomogenize, has_nondegenerate_boundary, WhError};

pub use discriminant::{bareiss_determinant, parametric_discriminant, resultant, sylvester_matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalFormError {
    #[error("germ is not convenient")]
    NotConvenient,
    #[error("degenerate Newton boundary")]
    Degenerate,
    #[error("polynomial is constant in t")]
    ConstantInT,
    #[error("germ is not equivalent to one with non-degenerate Newton boundary")]
    NotNonDegenerate,
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Factor(#[from] WhError),
}

/// Basis monomials by descending piecewise degree, with that degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularBasis {
    pub monomials: Vec<Mono>,
    pub degrees: Vec<u64>,
    pub bound: u64,
}

impl RegularBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Scans monomials from the top piecewise degree down to `bound`, keeping
/// each one that is not yet in `Jac(f)` plus the monomials kept so far.
/// Within one degree the scan runs by increasing x-exponent.
pub fn regular_basis<C: Field>(f: &Poly<C>, bound: u64) -> Result<RegularBasis, NormalFormError> {
    let polygon = newton_polygon(f)?;
    if !polygon.is_convenient() {
        return Err(NormalFormError::NotConvenient);
    }
    if !has_nondegenerate_boundary(f)? {
        return Err(NormalFormError::Degenerate);
    }
    let pw = polygon.piecewise_weight()?;
    let k = determinacy_bound(f)?;
    let top = Mono::of_degree(k).map(|m| pw.degree(&m)).max().unwrap_or(0);
    // monomials of standard degree above k lie in Jac(f)
    let mut candidates: Vec<(u64, Mono)> = (0..=k)
        .flat_map(Mono::of_degree)
        .map(|m| (pw.degree(&m), m))
        .filter(|(d, _)| *d >= bound && *d <= top)
        .collect();
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.x.cmp(&b.1.x)));
    let mut sb = standard_basis(&[f.dx(), f.dy()]);
    let mut out = RegularBasis { monomials: Vec::new(), degrees: Vec::new(), bound };
    for (d, m) in candidates {
        let mono = Poly::term(C::one(), m);
        if !sb.contains(&mono) {
            sb = sb.extend(&[mono]);
            out.monomials.push(m);
            out.degrees.push(d);
        }
    }
    Ok(out)
}

/// Terms of `f` on the compact part of its Newton boundary.
pub fn principal_part<C: Ring>(f: &Poly<C>) -> Result<Poly<C>, NormalFormError> {
    let p = newton_polygon(f)?;
    Ok(f.filter(|m| p.facets.iter().any(|fa| fa.contains(m))))
}

/// Sum of the vertex monomials of the polygon, each with coefficient 1.
pub fn vertex_polynomial(p: &NewtonPolygon) -> QPoly {
    p.vertices.iter().fold(QPoly::zero(), |acc, v| acc.add(&QPoly::mono(v.x, v.y)))
}

/// The family `f0 + sum a(i,j) x^i y^j` over the parameter ring.
pub fn family(f0: &QPoly, parameters: &[Mono]) -> Poly<ParamPoly> {
    let mut out = f0.map(ParamPoly::from_rational);
    for m in parameters {
        out.add_term(*m, ParamPoly::param(*m));
    }
    out
}

/// Factors of the exceptional hypersurface: the literal family
/// coefficients of vertices carrying a parameter, then each facet
/// discriminant with those factors divided out. Constants are dropped.
pub fn exceptional_factors(
    family: &Poly<ParamPoly>,
    polygon: &NewtonPolygon,
    parameters: &[Mono],
) -> Result<Vec<ParamPoly>, NormalFormError> {
    let mut factors: Vec<ParamPoly> = Vec::new();
    for v in &polygon.vertices {
        if parameters.contains(v) {
            push_factor(&mut factors, family.coeff(v));
        }
    }
    for facet in &polygon.facets {
        let (sat, _, _) = family.w_part(&facet.weight, facet.degree).saturate().map_err(WhError::from)?;
        let u = dehomogenize(&sat, facet.weight)?;
        let mut disc = parametric_discriminant(&u)?;
        for g in &factors {
            while let Some(q) = disc.exact_div(g) {
                if q.is_zero() {
                    break;
                }
                disc = q;
            }
        }
        push_factor(&mut factors, disc);
    }
    Ok(factors)
}

fn push_factor(factors: &mut Vec<ParamPoly>, p: ParamPoly) {
    if p.is_constant() {
        return;
    }
    let p = p.monic();
    if !factors.contains(&p) {
        factors.push(p);
    }
}

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub corank: u32,
    pub mu: usize,
    pub modality: usize,
    pub polygon: NewtonPolygon,
    pub vertex_polynomial: QPoly,
    pub parameter_monomials: Vec<Mono>,
    pub family: Poly<ParamPoly>,
    pub exceptional: Vec<ParamPoly>,
    /// The classified germ the family was read off.
    pub classification: Classification,
}

impl NormalForm {
    /// Single generator of the exceptional ideal.
    pub fn exceptional_generator(&self) -> ParamPoly {
        self.exceptional.iter().fold(ParamPoly::one(), |acc, g| acc * g.clone())
    }

    pub fn render_exceptional(&self) -> String {
        if self.exceptional.is_empty() {
            return "1".into();
        }
        self.exceptional.iter().map(|g| format!("({g})")).collect::<Vec<_>>().join("*")
    }

    /// `f0` followed by the parameter terms in basis order.
    pub fn render_family(&self) -> String {
        let mut s = self.vertex_polynomial.to_string();
        for m in &self.parameter_monomials {
            s.push_str(&format!("+a({},{})*{m}", m.x, m.y));
        }
        s
    }

    pub fn render_parameter_monomials(&self) -> String {
        let v: Vec<String> = self.parameter_monomials.iter().map(|m| m.to_string()).collect();
        format!("[{}]", v.join(", "))
    }

    /// The family at a rational parameter point.
    pub fn specialize(&self, point: &std::collections::BTreeMap<(u32, u32), Rational>) -> QPoly {
        let mut out = QPoly::zero();
        for (m, c) in self.family.terms() {
            out.add_term(*m, c.evaluate(point));
        }
        out
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "corank = {}", self.corank)?;
        writeln!(f, "Milnor number = {}", self.mu)?;
        writeln!(f, "modality = {}", self.modality)?;
        writeln!(f, "Newton polygon:")?;
        writeln!(f, "{}", self.polygon.render_multiline())?;
        writeln!(f, "parameter monomials = {}", self.render_parameter_monomials())?;
        writeln!(f, "normal form = {}", self.render_family())?;
        write!(f, "exceptional hypersurface = {}", self.render_exceptional())
    }
}

/// Normal form of the classified germ, exchanging x and y first when
/// `canonical` asks for the canonical polygon orientation.
pub fn normal_form_of(classification: Classification, canonical: bool) -> Result<NormalForm, NormalFormError> {
    let classification = if canonical { canonically_oriented(classification) } else { classification };
    let polygon = classification.polygon.clone();
    let f0 = vertex_polynomial(&polygon);
    let d = polygon.piecewise_weight()?.d;
    let basis = regular_basis(&f0, d)?;
    let parameters = basis.monomials.clone();
    let fam = family(&f0, &parameters);
    let exceptional = exceptional_factors(&fam, &polygon, &parameters)?;
    Ok(NormalForm {
        corank: 2,
        mu: classification.mu,
        modality: parameters.len(),
        polygon,
        vertex_polynomial: f0,
        parameter_monomials: parameters,
        family: fam,
        exceptional,
        classification,
    })
}

/// Exchanges x and y when that gives the canonical polygon orientation,
/// recording the exchange in the log.
pub fn canonically_oriented(mut classification: Classification) -> Classification {
    if classification.polygon.canonical().1 {
        classification.germ = classification.germ.swap_xy();
        classification.polygon = classification.polygon.mirror();
        classification.log.steps.push(classify::Step::Elementary {
            image_x: wh_factor::KPoly::y(),
            image_y: wh_factor::KPoly::x(),
        });
    }
    classification
}

pub fn normal_form(f: &QPoly) -> Result<NormalForm, NormalFormError> {
    normal_form_with(f, false)
}

pub fn normal_form_with(f: &QPoly, canonical: bool) -> Result<NormalForm, NormalFormError> {
    match classify(f)? {
        ClassifyOutcome::Classified(c) => normal_form_of(c, canonical),
        ClassifyOutcome::NotNonDegenerate { .. } => Err(NormalFormError::NotNonDegenerate),
    }
}
