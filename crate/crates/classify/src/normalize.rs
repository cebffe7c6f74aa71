use std::collections::BTreeSet;
use std::sync::Arc;

use field_tower::{AlgebraicNumber, Field, Rational, Ring, Tower, UPoly};
use local_algebra::{corank, milnor_number, LocalError};
use newton_geometry::{newton_polygon, Facet, NewtonPolygon};
use poly_core::{Mono, Poly, Weight};
use wh_factor::{normalization_holds, root_of, wh_factorize, KPoly, WhFactorization};

use crate::log::{Step, TransformationLog};
use crate::{Classification, ClassifyError, ClassifyOutcome};

const STANDARD: Weight = Weight { wx: 1, wy: 1 };

/// Composition with `(image_x, image_y)` followed by truncation above
/// degree `bound`.
pub fn apply_and_truncate(f: &KPoly, image_x: &KPoly, image_y: &KPoly, bound: u32) -> Result<KPoly, ClassifyError> {
    Ok(f.substitute_truncated(image_x, image_y, bound)?)
}

/// What the normalization criteria say about one facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacetStatus {
    pub nondegenerate: bool,
    pub normalized: bool,
    /// Smooth saturation on a facet touching an axis; such facets are
    /// exempt from normalization.
    pub smooth_on_axis: bool,
    /// Every multiplicity of the saturation is 1.
    pub simple: bool,
}

impl FacetStatus {
    pub fn ok(&self) -> bool {
        self.nondegenerate && (self.normalized || self.smooth_on_axis)
    }
}

pub fn facet_is_normalized(tower: &Arc<Tower>, f: &KPoly, facet: &Facet) -> Result<FacetStatus, ClassifyError> {
    let fac = wh_factorize(tower, &f.w_part(&facet.weight, facet.degree), facet.weight)?;
    Ok(status_of(&fac, facet))
}

fn status_of(fac: &WhFactorization, facet: &Facet) -> FacetStatus {
    FacetStatus {
        nondegenerate: fac.is_nondegenerate(),
        normalized: normalization_holds(fac),
        smooth_on_axis: fac.saturation_is_smooth() && (facet.meets_x_axis() || facet.meets_y_axis()),
        simple: fac.is_nondegenerate() && fac.x_exp <= 1 && fac.y_exp <= 1,
    }
}

/// A linear form `a*x + b*y`.
#[derive(Clone, Debug, PartialEq)]
struct Linear {
    a: AlgebraicNumber,
    b: AlgebraicNumber,
}

impl Linear {
    fn x() -> Linear {
        Linear { a: AlgebraicNumber::one(), b: AlgebraicNumber::zero() }
    }

    fn y() -> Linear {
        Linear { a: AlgebraicNumber::zero(), b: AlgebraicNumber::one() }
    }

    /// The factor `y - c*x`.
    fn root(c: AlgebraicNumber) -> Linear {
        Linear { a: -c, b: AlgebraicNumber::one() }
    }
}

enum Progress {
    Impossible,
    Changed,
    Unchanged,
}

/// State of one classification run.
pub struct Classifier {
    f: KPoly,
    tower: Arc<Tower>,
    mu: usize,
    steps: Vec<Step>,
    extensions: usize,
    cap: usize,
}

fn rational_copy(f: &KPoly) -> Option<Poly<Rational>> {
    let mut out = Poly::zero();
    for (m, c) in f.terms() {
        out.add_term(*m, c.as_rational()?);
    }
    Some(out)
}

impl Classifier {
    /// Checks that `f` vanishes to order 3 at the origin and has finite
    /// Milnor number.
    pub fn new(tower: Arc<Tower>, f: KPoly) -> Result<Classifier, ClassifyError> {
        if f.is_zero() {
            return Err(ClassifyError::ZeroGerm);
        }
        let mu = match rational_copy(&f) {
            Some(q) => precheck(&q)?,
            None => precheck(&f)?,
        };
        let cap = 8 * (mu + 2) * (mu + 2);
        Ok(Classifier { f, tower, mu, steps: Vec::new(), extensions: 0, cap })
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn germ(&self) -> &KPoly {
        &self.f
    }

    pub fn bound(&self) -> u32 {
        self.mu as u32 + 1
    }

    fn pad_exponent(&self) -> u32 {
        self.mu as u32 + 2
    }

    fn log(&self) -> TransformationLog {
        TransformationLog { steps: self.steps.clone(), tower: self.tower.clone() }
    }

    fn elementary(&mut self, image_x: KPoly, image_y: KPoly) -> Result<(), ClassifyError> {
        let k = self.bound();
        self.f = apply_and_truncate(&self.f, &image_x, &image_y, k)?;
        self.steps.push(Step::Elementary { image_x, image_y });
        self.steps.push(Step::Truncate { bound: k });
        Ok(())
    }

    /// Adds `x^(mu+2)` or `y^(mu+2)` where the boundary misses an axis.
    fn pad(&mut self) {
        let e = self.pad_exponent();
        let sup: Vec<Mono> = self.f.support().collect();
        if !sup.iter().any(|m| m.y == 0) {
            self.add_pad(Mono::new(e, 0));
        }
        if !sup.iter().any(|m| m.x == 0) {
            self.add_pad(Mono::new(0, e));
        }
    }

    fn add_pad(&mut self, m: Mono) {
        self.f = self.f.add(&KPoly::mono(m.x, m.y));
        self.steps.push(Step::Pad { monomial: m });
    }

    fn polygon(&self) -> Result<NewtonPolygon, ClassifyError> {
        Ok(newton_polygon(&self.f)?)
    }

    fn status(&self, facet: &Facet) -> Result<FacetStatus, ClassifyError> {
        facet_is_normalized(&self.tower, &self.f, facet)
    }

    fn fresh_name(&mut self) -> String {
        self.extensions += 1;
        format!("r{}", self.extensions)
    }

    /// Sends the tangent cone factors to the coordinate axes.
    fn normalize_tangent_cone(&mut self) -> Result<Progress, ClassifyError> {
        let d = self.f.ord().expect("nonzero germ") as u64;
        let jet = self.f.w_part(&STANDARD, d);
        let fac = wh_factorize(&self.tower, &jet, STANDARD)?;
        let mut multiple: Vec<(Linear, u32)> = Vec::new();
        let mut simple: Vec<Linear> = Vec::new();
        let mut sort_in = |l: Linear, m: u32| {
            if m > 1 {
                multiple.push((l, m));
            } else if m == 1 {
                simple.push(l);
            }
        };
        sort_in(Linear::x(), fac.x_exp);
        sort_in(Linear::y(), fac.y_exp);
        let mut conjugate: Vec<UPoly<AlgebraicNumber>> = Vec::new();
        let mut conjugate_count = 0;
        for (g, m) in &fac.structure {
            let g = g.monic();
            if g.degree() == Some(1) {
                sort_in(Linear::root(-g.coeff(0)), *m);
            } else if *m > 1 {
                conjugate_count += g.degree().unwrap_or(0);
                conjugate.push(g);
            }
        }
        multiple.sort_by(|a, b| b.1.cmp(&a.1));
        let n_multiple = multiple.len() + conjugate_count;
        if n_multiple >= 3 {
            return Ok(Progress::Impossible);
        }
        let preferred_simple = |first: &Linear| -> Option<Linear> {
            simple.iter().find(|l| *l == first).or_else(|| simple.first()).cloned()
        };
        let (g1, g2) = if n_multiple == 2 {
            if let Some(q) = conjugate.first() {
                let name = self.fresh_name();
                let (tower, r1) = root_of(&self.tower, q, &name)?;
                self.tower = tower;
                let r2 = -q.coeff(1) - r1.clone();
                (Linear::root(r1), Linear::root(r2))
            } else {
                (multiple[0].0.clone(), multiple[1].0.clone())
            }
        } else if n_multiple == 1 {
            let g1 = multiple[0].0.clone();
            let g2 = preferred_simple(&Linear::y()).unwrap_or_else(|| transversal(&g1));
            (g1, g2)
        } else {
            if normalization_holds(&fac) {
                return Ok(Progress::Unchanged);
            }
            let Some(g1) = simple.first().cloned() else { return Ok(Progress::Unchanged) };
            let g2 = simple.get(1).cloned().unwrap_or_else(|| transversal(&g1));
            (g1, g2)
        };
        if g1 == Linear::x() && g2 == Linear::y() {
            return Ok(Progress::Unchanged);
        }
        let (image_x, image_y) = inverse_images(&g1, &g2);
        self.elementary(image_x, image_y)?;
        Ok(Progress::Changed)
    }

    /// Removes a multiple (or, for normalization, a simple) weighted-linear
    /// factor from the jet of weight `w` by a weighted shear.
    fn normalize_facet(&mut self, w: Weight) -> Result<Progress, ClassifyError> {
        let deg = self.f.w_ord(&w).expect("nonzero germ");
        let fac = wh_factorize(&self.tower, &self.f.w_part(&w, deg), w)?;
        let (axis_mult, shape) = if w.wx < w.wy { (fac.y_exp, w.wx == 1) } else { (fac.x_exp, w.wy == 1) };
        let mut mults: Vec<u32> = Vec::new();
        if axis_mult > 0 {
            mults.push(axis_mult);
        }
        let mut residual_degenerate = false;
        for (g, m) in &fac.structure {
            if shape {
                mults.extend(std::iter::repeat_n(*m, g.degree().unwrap_or(0)));
            } else if *m > 1 {
                residual_degenerate = true;
            }
        }
        mults.sort_by(|a, b| b.cmp(a));
        if mults.get(1).is_some_and(|&l| l > 1) || residual_degenerate {
            return Ok(Progress::Impossible);
        }
        let top = mults.first().copied().unwrap_or(0);
        let roots = if shape { fac.rational_roots() } else { Vec::new() };
        let c = if top > 1 {
            // the multiple factor is the axis variable itself
            roots.iter().find(|(_, m)| *m == top).map(|(c, _)| c.clone())
        } else {
            roots.first().map(|(c, _)| c.clone())
        };
        let Some(c) = c else { return Ok(Progress::Unchanged) };
        let (image_x, image_y) = if w.wx < w.wy {
            (KPoly::x(), KPoly::y().add(&KPoly::mono(w.wy, 0).scale(&c)))
        } else {
            (KPoly::x().add(&KPoly::mono(0, w.wx).scale(&c.inv().expect("nonzero root"))), KPoly::y())
        };
        self.elementary(image_x, image_y)?;
        Ok(Progress::Changed)
    }

    fn repair(&mut self, w: Weight) -> Result<Progress, ClassifyError> {
        if w == STANDARD {
            self.normalize_tangent_cone()
        } else {
            self.normalize_facet(w)
        }
    }

    fn tick(&self, counter: &mut usize) -> Result<(), ClassifyError> {
        *counter += 1;
        if *counter > self.cap {
            return Err(ClassifyError::IterationLimit(self.cap));
        }
        Ok(())
    }

    fn fail(&self) -> ClassifyOutcome {
        ClassifyOutcome::NotNonDegenerate { germ: self.f.clone(), log: self.log() }
    }

    /// Facets through `m`, those with a multiple factor first, then by
    /// increasing slope.
    fn facets_at(&self, m: &Mono) -> Result<Vec<Facet>, ClassifyError> {
        let mut out = Vec::new();
        for facet in self.polygon()?.facets {
            if facet.left == *m || facet.right == *m {
                let s = self.status(&facet)?;
                out.push((s.simple, facet));
            }
        }
        out.sort_by_key(|(simple, f)| (*simple, f.left.x));
        Ok(out.into_iter().map(|(_, f)| f).collect())
    }

    pub fn run(mut self) -> Result<ClassifyOutcome, ClassifyError> {
        let mut counter = 0usize;
        let d = self.f.ord().expect("nonzero germ") as u64;
        let tangent = wh_factorize(&self.tower, &self.f.w_part(&STANDARD, d), STANDARD)?;
        if !tangent.is_nondegenerate() || !normalization_holds(&tangent) {
            if let Progress::Impossible = self.normalize_tangent_cone()? {
                return Ok(self.fail());
            }
            let d = self.f.ord().expect("nonzero germ") as u64;
            if !wh_factorize(&self.tower, &self.f.w_part(&STANDARD, d), STANDARD)?.is_nondegenerate() {
                return Ok(self.fail());
            }
        }
        let lex = |m: &Mono| (m.x, m.y);
        let vertices_of = |c: &Classifier| -> Result<BTreeSet<(u32, u32)>, ClassifyError> {
            Ok(c.polygon()?.vertices.iter().map(lex).collect())
        };
        let d = self.f.ord().expect("nonzero germ") as u64;
        let verts = vertices_of(&self)?;
        let mut pending: BTreeSet<(u32, u32)> =
            self.f.w_part(&STANDARD, d).support().map(|m| lex(&m)).filter(|p| verts.contains(p)).collect();
        let mut done: BTreeSet<(u32, u32)> = BTreeSet::new();
        loop {
            self.tick(&mut counter)?;
            self.pad();
            let polygon = self.polygon()?;
            let mut bad = Vec::new();
            for facet in &polygon.facets {
                if !self.status(facet)?.ok() {
                    bad.push(*facet);
                }
            }
            if bad.is_empty() {
                break;
            }
            let m = match pending.iter().next() {
                Some(&(i, j)) => Mono::new(i, j),
                None => {
                    let f = bad[0];
                    if done.contains(&lex(&f.left)) && !done.contains(&lex(&f.right)) {
                        f.right
                    } else {
                        f.left
                    }
                }
            };
            let mut i = 0;
            loop {
                let adjacent = self.facets_at(&m)?;
                let Some(facet) = adjacent.get(i).copied() else { break };
                if self.status(&facet)?.ok() {
                    i += 1;
                    continue;
                }
                self.tick(&mut counter)?;
                match self.repair(facet.weight)? {
                    Progress::Impossible => return Ok(self.fail()),
                    Progress::Unchanged => return Err(ClassifyError::Stuck(facet.to_string())),
                    Progress::Changed => self.pad(),
                }
            }
            done.insert(lex(&m));
            let through_m: Vec<Facet> =
                self.polygon()?.facets.into_iter().filter(|f| f.left == m || f.right == m).collect();
            let span = self.f.support().filter(|p| through_m.iter().any(|f| f.contains(p))).map(|p| lex(&p));
            pending.extend(span);
            let verts = vertices_of(&self)?;
            pending.retain(|p| verts.contains(p) && !done.contains(p));
        }
        self.sweep_axes(&mut counter)?;
        self.pad();
        let polygon = self.polygon()?;
        let germ = self.f.clone();
        Ok(ClassifyOutcome::Classified(Classification { germ, polygon, mu: self.mu, log: self.log() }))
    }

    /// Pushes smooth facets touching an axis out to the padding exponent.
    fn sweep_axes(&mut self, counter: &mut usize) -> Result<(), ClassifyError> {
        let e = self.pad_exponent();
        loop {
            self.tick(counter)?;
            self.pad();
            let polygon = self.polygon()?;
            let Some(facet) = polygon.facets.last().copied().filter(|f| f.meets_x_axis()) else { break };
            let (s, l) = (facet.left.x, facet.right.x);
            if l >= e || facet.left.y != 1 || !self.status(&facet)?.smooth_on_axis {
                break;
            }
            let c1 = self.f.coeff(&facet.right);
            let c2 = self.f.coeff(&facet.left);
            let shift = KPoly::mono(l - s, 0).scale(&(c1 * c2.inv().expect("nonzero coefficient")));
            self.elementary(KPoly::x(), KPoly::y().sub(&shift))?;
        }
        loop {
            self.tick(counter)?;
            self.pad();
            let polygon = self.polygon()?;
            let Some(facet) = polygon.facets.first().copied().filter(|f| f.meets_y_axis()) else { break };
            let (s, l) = (facet.right.y, facet.left.y);
            if l >= e || facet.right.x != 1 || !self.status(&facet)?.smooth_on_axis {
                break;
            }
            let c1 = self.f.coeff(&facet.left);
            let c2 = self.f.coeff(&facet.right);
            let shift = KPoly::mono(0, l - s).scale(&(c1 * c2.inv().expect("nonzero coefficient")));
            self.elementary(KPoly::x().sub(&shift), KPoly::y())?;
        }
        Ok(())
    }
}

/// A linear form independent of `g`: y, or x when `g` is a multiple of y.
fn transversal(g: &Linear) -> Linear {
    if g.a.is_zero() {
        Linear::x()
    } else {
        Linear::y()
    }
}

/// Images of x and y under the map sending `g1` to x and `g2` to y.
fn inverse_images(g1: &Linear, g2: &Linear) -> (KPoly, KPoly) {
    let det = g1.a.clone() * g2.b.clone() - g1.b.clone() * g2.a.clone();
    let inv = det.inv().expect("independent linear forms");
    let form = |p: AlgebraicNumber, q: AlgebraicNumber| KPoly::x().scale(&(p * inv.clone())).add(&KPoly::y().scale(&(q * inv.clone())));
    (form(g2.b.clone(), -g1.b.clone()), form(-g2.a.clone(), g1.a.clone()))
}

fn precheck<C: Field>(f: &Poly<C>) -> Result<usize, ClassifyError> {
    let k = corank(f).map_err(|e| match e {
        LocalError::Smooth => ClassifyError::Smooth,
        LocalError::NonzeroConstant => ClassifyError::NonzeroConstant,
        e => ClassifyError::Local(e),
    })?;
    if k != 2 {
        return Err(ClassifyError::Corank(k));
    }
    milnor_number(f)?.mu.finite().ok_or(ClassifyError::InfiniteMilnor)
}
