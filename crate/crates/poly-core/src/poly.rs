use std::collections::BTreeMap;
use std::fmt;

use field_tower::{Field, Rational, Ring};
use thiserror::Error;

use crate::mono::{Grading, Mono, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial has no saturation")]
    ZeroSaturation,
    #[error("substitution images do not define a local automorphism: {0}")]
    NotAutomorphism(String),
}

/// Sparse polynomial in x and y with coefficients in `C`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Ring> Default for Poly<C> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<C: Ring> Poly<C> {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: C) -> Self {
        Poly::term(c, Mono::ONE)
    }

    pub fn term(c: C, m: Mono) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// The monomial `x^i y^j` with coefficient 1.
    pub fn mono(i: u32, j: u32) -> Self {
        Poly::term(C::one(), Mono::new(i, j))
    }

    pub fn x() -> Self {
        Poly::mono(1, 0)
    }

    pub fn y() -> Self {
        Poly::mono(0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let v = slot.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = v;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in display order (ascending degree); the first is the local
    /// leading term.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Mono> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn contains(&self, m: &Mono) -> bool {
        self.terms.contains_key(m)
    }

    /// Leading term for the local degree ordering: lowest degree, then
    /// highest x-exponent.
    pub fn lead(&self) -> Option<(Mono, C)> {
        self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
    }

    /// Lowest total degree of a term (the order of the germ).
    pub fn ord(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Highest total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, -c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_terms(self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())))
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &C, m: &Mono) -> Self {
        Poly::from_terms(self.terms.iter().map(|(n, a)| (n.mul(m), a.clone() * c.clone())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        p
    }

    /// Product with every term of degree above `k` discarded.
    pub fn mul_truncated(&self, other: &Self, k: u32) -> Self {
        let mut p = Poly::zero();
        for (m1, c1) in &self.terms {
            if m1.degree() > k {
                break;
            }
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                if m.degree() > k {
                    break;
                }
                p.add_term(m, c1.clone() * c2.clone());
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(C::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Self {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Standard `k`-jet: terms of total degree at most `k`.
    pub fn jet(&self, k: i64) -> Self {
        self.filter(|m| (m.degree() as i64) <= k)
    }

    /// Weighted `j`-jet: terms of weighted degree at most `j`.
    pub fn w_jet(&self, w: &impl Grading, j: i64) -> Self {
        self.filter(|m| (w.grade(m) as i64) <= j)
    }

    /// Terms of weighted degree exactly `j`.
    pub fn w_part(&self, w: &impl Grading, j: u64) -> Self {
        self.filter(|m| w.grade(m) == j)
    }

    /// Lowest weighted degree of a term.
    pub fn w_ord(&self, w: &impl Grading) -> Option<u64> {
        self.terms.keys().map(|m| w.grade(m)).min()
    }

    pub fn is_w_homogeneous(&self, w: &Weight) -> bool {
        let mut degs = self.terms.keys().map(|m| w.degree(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Largest `(n, m)` with `x^n y^m` dividing the polynomial.
    pub fn monomial_content(&self) -> (u32, u32) {
        let n = self.terms.keys().map(|m| m.x).min().unwrap_or(0);
        let m = self.terms.keys().map(|m| m.y).min().unwrap_or(0);
        (n, m)
    }

    /// Divides by `x^n y^m`; every term must be divisible.
    pub fn div_monomial(&self, n: u32, m: u32) -> Self {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (Mono::new(k.x - n, k.y - m), c.clone())).collect(),
        }
    }

    /// Splits off the maximal monomial factor: `self = g * x^n * y^m`.
    pub fn saturate(&self) -> Result<(Self, u32, u32), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroSaturation);
        }
        let (n, m) = self.monomial_content();
        Ok((self.div_monomial(n, m), n, m))
    }

    /// Removes only the maximal power of x.
    pub fn saturate_x(&self) -> (Self, u32) {
        let (n, _) = self.monomial_content();
        (self.div_monomial(n, 0), n)
    }

    /// Removes only the maximal power of y.
    pub fn saturate_y(&self) -> (Self, u32) {
        let (_, m) = self.monomial_content();
        (self.div_monomial(0, m), m)
    }

    pub fn dx(&self) -> Self {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.x > 0)
                .map(|(m, c)| (Mono::new(m.x - 1, m.y), c.clone() * C::from_int(m.x as i64))),
        )
    }

    pub fn dy(&self) -> Self {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.y > 0)
                .map(|(m, c)| (Mono::new(m.x, m.y - 1), c.clone() * C::from_int(m.y as i64))),
        )
    }

    /// Exchanges the roles of x and y.
    pub fn swap_xy(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.swap(), c.clone())).collect() }
    }

    /// Composition `self(image_x, image_y)` after checking that the images
    /// define a local automorphism.
    pub fn substitute(&self, image_x: &Self, image_y: &Self) -> Result<Self, PolyError> {
        check_automorphism(image_x, image_y)?;
        Ok(self.compose(image_x, image_y, None))
    }

    /// Composition with every term of degree above `k` discarded. Because
    /// the images lie in the maximal ideal this equals
    /// `substitute(...).jet(k)`.
    pub fn substitute_truncated(&self, image_x: &Self, image_y: &Self, k: u32) -> Result<Self, PolyError> {
        check_automorphism(image_x, image_y)?;
        Ok(self.compose(image_x, image_y, Some(k)))
    }

    /// Unchecked composition, optionally truncated at degree `k`.
    pub fn compose(&self, image_x: &Self, image_y: &Self, k: Option<u32>) -> Self {
        let mul = |a: &Self, b: &Self| match k {
            Some(k) => a.mul_truncated(b, k),
            None => a.mul(b),
        };
        let max_x = self.terms.keys().map(|m| m.x).max().unwrap_or(0);
        let max_y = self.terms.keys().map(|m| m.y).max().unwrap_or(0);
        let mut px = vec![Poly::constant(C::one())];
        for i in 1..=max_x as usize {
            let next = mul(&px[i - 1], image_x);
            px.push(next);
        }
        let mut py = vec![Poly::constant(C::one())];
        for j in 1..=max_y as usize {
            let next = mul(&py[j - 1], image_y);
            py.push(next);
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let t = mul(&px[m.x as usize], &py[m.y as usize]);
            for (n, a) in t.terms {
                out.add_term(n, a * c.clone());
            }
        }
        match k {
            Some(k) => out.jet(k as i64),
            None => out,
        }
    }

    /// The coefficients of the linear part, `(d/dx, d/dy)` at the origin.
    pub fn linear_part(&self) -> (C, C) {
        (self.coeff(&Mono::new(1, 0)), self.coeff(&Mono::new(0, 1)))
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Mono::ONE)
    }
}

impl<C: Field> Poly<C> {
    /// Divides every coefficient by the leading (local) coefficient.
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }
}

/// Checks zero constant terms and linearly independent linear parts.
pub fn check_automorphism<C: Ring>(image_x: &Poly<C>, image_y: &Poly<C>) -> Result<(), PolyError> {
    if !image_x.constant_term().is_zero() || !image_y.constant_term().is_zero() {
        return Err(PolyError::NotAutomorphism("an image has a nonzero constant term".into()));
    }
    let (a, b) = image_x.linear_part();
    let (c, d) = image_y.linear_part();
    if (a * d - b * c).is_zero() {
        return Err(PolyError::NotAutomorphism("linear parts are dependent".into()));
    }
    Ok(())
}

/// Renders a rational coefficient in front of a monomial, sign separate.
fn split_sign<C: Ring>(c: &C) -> (bool, Option<String>) {
    match c.as_rational() {
        Some(q) => {
            let neg = q < Rational::zero();
            let a = if neg { -q } else { q };
            (neg, if a.is_one() { None } else { Some(format!("{a}")) })
        }
        None => (false, if c.is_one() { None } else { Some(c.render_factor()) }),
    }
}

impl<C: Ring> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, coeff) = split_sign(c);
            let body = match (coeff, *m == Mono::ONE) {
                (None, true) => "1".to_string(),
                (None, false) => format!("{m}"),
                (Some(a), true) => a,
                (Some(a), false) => format!("{a}*{m}"),
            };
            match (k == 0, neg) {
                (_, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, false) => write!(f, "+{body}")?,
            }
        }
        Ok(())
    }
}
