use std::sync::Arc;

use field_tower::{factor_over, rat, roots_in_field, AlgebraicNumber, Field, Rational, Ring, Tower, UPoly};
use newton_geometry::newton_polygon;
use num_integer::Integer;
use num_traits::ToPrimitive;
use poly_core::Mono;
use wh_factor::{dehomogenize, multiplicity_structure, root_of, KPoly};

use crate::series::Series;
use crate::{char_exponents_of, CharExponents, PuiseuxError, PuiseuxExpansion};

/// One branch class found by the Newton-Puiseux recursion: the
/// parametrization `x = scale * t^ramification`, `y = sum d_k t^k`.
///
/// The coefficients live in `tower`, which is generated over the field of
/// the input by the facet roots chosen along the way; the embeddings of
/// `tower` give the conjugate branches.
#[derive(Clone, Debug)]
pub struct Branch {
    pub tower: Arc<Tower>,
    pub ramification: u32,
    pub scale: AlgebraicNumber,
    /// `(k, d_k)` with `d_k != 0`, increasing in `k`.
    pub terms: Vec<(u32, AlgebraicNumber)>,
    pub developed_order: Rational,
    pub exact: bool,
    /// Number of roots still sharing this expansion when development
    /// stopped; 1 once the branch is separated from all others.
    pub multiplicity: u32,
    /// y-order of the transformed germ at each stage, starting with the
    /// input.
    pub heights: Vec<u32>,
}

impl Branch {
    /// Number of conjugate branches over the field `base`.
    pub fn conjugates(&self, base: &Tower) -> usize {
        self.tower.degree() / base.degree()
    }

    /// `y(t)` up to and including `t^k`.
    pub fn y_series(&self, k: usize) -> Series {
        let mut c = vec![AlgebraicNumber::zero(); k + 1];
        for (e, d) in &self.terms {
            if (*e as usize) <= k {
                c[*e as usize] = d.clone();
            }
        }
        UPoly::new(c)
    }

    /// Largest t-exponent that is reliable.
    pub fn reliable_degree(&self) -> usize {
        floor(&(self.developed_order.clone() * rat(self.ramification as i64, 1)))
    }

    /// The expansion in powers of `x^(1/n)`. A root of `z^n = scale` is
    /// adjoined when the scale is not an n-th power.
    pub fn expansion(&self) -> Result<PuiseuxExpansion, PuiseuxError> {
        let n = self.ramification;
        let zinv = if self.scale.is_one() {
            AlgebraicNumber::one()
        } else {
            let mut c = vec![AlgebraicNumber::zero(); n as usize + 1];
            c[0] = -self.scale.clone();
            c[n as usize] = AlgebraicNumber::one();
            let u = UPoly::new(c);
            let z = match roots_in_field(&self.tower, &u).into_iter().next() {
                Some((z, _)) => z,
                None => {
                    let mut fs = factor_over(&self.tower, &u);
                    fs.sort_by_key(|(g, _)| g.degree());
                    root_of(&self.tower, &fs[0].0, "z")?.1
                }
            };
            z.inv().ok_or(PuiseuxError::DivisionByZero)?
        };
        let terms: Vec<(Rational, AlgebraicNumber)> =
            self.terms.iter().map(|(k, d)| (rat(*k as i64, n as i64), d.clone() * zinv.pow(*k))).collect();
        let ramification = terms.iter().fold(1u32, |acc, (e, _)| acc.lcm(&e.denom().to_u32().unwrap()));
        Ok(PuiseuxExpansion { ramification, terms, developed_order: self.developed_order.clone(), exact: self.exact })
    }

    /// Characteristic exponents read off the parametrization; fails while
    /// the branch is not separated or its ramification is not visible in
    /// the developed terms.
    pub fn characteristic_exponents(&self) -> Result<CharExponents, PuiseuxError> {
        if self.multiplicity != 1 {
            return Err(PuiseuxError::InsufficientDevelopment);
        }
        let ks: Vec<u32> = self.terms.iter().map(|(k, _)| *k).collect();
        let g = ks.iter().fold(self.ramification, |acc, k| acc.gcd(k));
        if g != 1 {
            return Err(PuiseuxError::InsufficientDevelopment);
        }
        char_exponents_of(self.ramification, &ks)
    }
}

fn floor(q: &Rational) -> usize {
    q.floor().to_integer().to_usize().unwrap_or(0)
}

/// State of the recursion: `x = scale * u^n`,
/// `y = sum terms + coeff * u^q * v`, and `h(u, v)` is the germ in the new
/// coordinates divided by the common power of `u`.
struct Node {
    h: KPoly,
    tower: Arc<Tower>,
    n: u32,
    q: u32,
    scale: AlgebraicNumber,
    coeff: AlgebraicNumber,
    terms: Vec<(u32, AlgebraicNumber)>,
    truncated: bool,
    heights: Vec<u32>,
}

impl Node {
    fn leaf(&self, l: &Rational, multiplicity: u32, exact: bool) -> Branch {
        let bound = l.clone() * rat(self.n as i64, 1);
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| exact || rat(*k as i64, 1) <= bound)
            .cloned()
            .collect();
        Branch {
            tower: self.tower.clone(),
            ramification: self.n,
            scale: self.scale.clone(),
            terms,
            developed_order: l.clone(),
            exact,
            multiplicity,
            heights: self.heights.clone(),
        }
    }
}

/// Inverse of `a` modulo `m`, for coprime arguments.
fn mod_inverse(a: u32, m: u32) -> u32 {
    let e = (a as i64).extended_gcd(&(m as i64));
    e.x.rem_euclid(m as i64) as u32
}

/// `h(c^alpha * u^p, c^beta * u^q * (1 + v)) / u^d`.
fn rescale(h: &KPoly, p: u32, q: u32, d: u64, c: &AlgebraicNumber, alpha: u32, beta: u32) -> KPoly {
    let mut by_row: std::collections::BTreeMap<u32, Vec<(u32, AlgebraicNumber)>> = Default::default();
    for (m, a) in h.terms() {
        let e = (p * m.x + q * m.y) as u64 - d;
        let coeff = a.clone() * c.pow(alpha * m.x + beta * m.y);
        by_row.entry(m.y).or_default().push((e as u32, coeff));
    }
    let mut out = KPoly::zero();
    for (j, row) in by_row {
        // (1 + v)^j
        let mut binom = Rational::from_integer(1.into());
        for k in 0..=j {
            let b = AlgebraicNumber::rational(binom.clone());
            for (e, a) in &row {
                out.add_term(Mono::new(*e, k), a.clone() * b.clone());
            }
            binom = binom * rat((j - k) as i64, (k + 1) as i64);
        }
    }
    out
}

/// Runs the recursion below `root` and collects one branch per class.
pub(crate) fn develop(f: &KPoly, tower: &Arc<Tower>, l: &Rational) -> Result<Vec<Branch>, PuiseuxError> {
    let r0 = f.terms().filter(|(m, _)| m.x == 0).map(|(m, _)| m.y).min().ok_or(PuiseuxError::NotYGeneral)?;
    let root = Node {
        h: f.clone(),
        tower: tower.clone(),
        n: 1,
        q: 0,
        scale: AlgebraicNumber::one(),
        coeff: AlgebraicNumber::one(),
        terms: Vec::new(),
        truncated: false,
        heights: vec![r0],
    };
    let mut out = Vec::new();
    let mut stack = vec![root];
    while let Some(mut node) = stack.pop() {
        let r = node.h.terms().filter(|(m, _)| m.x == 0).map(|(m, _)| m.y).min().ok_or(PuiseuxError::NotYGeneral)?;
        let reached = rat(node.q as i64, node.n as i64);
        if reached >= *l {
            out.push(node.leaf(l, r, false));
            continue;
        }
        // roots near 0 only matter up to u-order (l*n - q); a change of h in
        // u-degree >= M moves them by u-order at least M/r
        let remaining = l.clone() * rat(node.n as i64, 1) - rat(node.q as i64, 1);
        let cutoff = floor(&(remaining * rat(r as i64, 1))) as u32 + 1;
        let kept = node.h.filter(|m| m.x < cutoff);
        if kept.len() != node.h.len() {
            node.truncated = true;
            node.h = kept;
        }
        let s = node.h.terms().map(|(m, _)| m.y).min().unwrap_or(0);
        if s > 0 {
            out.push(node.leaf(l, s, !node.truncated));
            node.h = node.h.div_monomial(0, s);
        }
        let polygon = newton_polygon(&node.h)?;
        let mut children = Vec::new();
        for facet in &polygon.facets {
            let (p, qw) = (facet.weight.wx, facet.weight.wy);
            let (sat, _, _) = node.h.w_part(&facet.weight, facet.degree).saturate()?;
            let u = dehomogenize(&sat, facet.weight)?;
            for (g, mult) in multiplicity_structure(&node.tower, &u) {
                let name = format!("r{}", node.tower.depth() + 1);
                let (tower, c) = root_of(&node.tower, &g, &name)?;
                let alpha = if p == 1 { 0 } else { (p - mod_inverse(qw % p, p)) % p };
                let beta = (1 + alpha * qw) / p;
                debug_assert_eq!(beta * p, alpha * qw + 1);
                let lift = |a: &AlgebraicNumber| a.lift(&tower);
                let h = rescale(&node.h.map(lift), p, qw, facet.degree, &c, alpha, beta);
                let step = node.coeff.lift(&tower) * c.pow(alpha * node.q + beta);
                let mut terms: Vec<(u32, AlgebraicNumber)> =
                    node.terms.iter().map(|(k, d)| (k * p, lift(d) * c.pow(alpha * k))).collect();
                let q = p * node.q + qw;
                terms.push((q, step.clone()));
                let mut heights = node.heights.clone();
                heights.push(mult);
                children.push(Node {
                    h,
                    tower: tower.clone(),
                    n: node.n * p,
                    q,
                    scale: node.scale.lift(&tower) * c.pow(alpha * node.n),
                    coeff: step,
                    terms,
                    truncated: node.truncated,
                    heights,
                });
            }
        }
        // left to right on the stack order
        stack.extend(children.into_iter().rev());
    }
    Ok(out)
}
