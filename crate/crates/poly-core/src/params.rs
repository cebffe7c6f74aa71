use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use field_tower::{Field, Rational, Ring};

use crate::mono::Mono;

/// A product of parameters `a(i,j)^e`, variables sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamMono(Vec<(Mono, u32)>);

impl ParamMono {
    pub fn var(p: Mono) -> ParamMono {
        ParamMono(vec![(p, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Mono, u32)] {
        &self.0
    }

    fn mul(&self, other: &ParamMono) -> ParamMono {
        let mut m: BTreeMap<(u32, u32), (Mono, u32)> = BTreeMap::new();
        for (p, e) in self.0.iter().chain(&other.0) {
            m.entry(key(p)).or_insert((*p, 0)).1 += e;
        }
        ParamMono(m.into_values().collect())
    }

    fn div(&self, other: &ParamMono) -> Option<ParamMono> {
        let mut m: BTreeMap<(u32, u32), (Mono, u32)> = self.0.iter().map(|(p, e)| (key(p), (*p, *e))).collect();
        for (p, e) in &other.0 {
            let slot = m.get_mut(&key(p))?;
            if slot.1 < *e {
                return None;
            }
            slot.1 -= e;
        }
        Some(ParamMono(m.into_values().filter(|(_, e)| *e > 0).collect()))
    }

    fn exponent(&self, p: &Mono) -> u32 {
        self.0.iter().find(|(q, _)| q == p).map(|(_, e)| *e).unwrap_or(0)
    }
}

/// Parameters are ordered by their monomial, x-exponent first.
fn key(p: &Mono) -> (u32, u32) {
    (p.x, p.y)
}

impl Ord for ParamMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut vars: Vec<(u32, u32)> = self.0.iter().chain(&other.0).map(|(p, _)| key(p)).collect();
            vars.sort();
            vars.dedup();
            for v in vars {
                let p = Mono::new(v.0, v.1);
                match self.exponent(&p).cmp(&other.exponent(&p)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for ParamMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ParamMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, e)| if *e == 1 { format!("a({},{})", p.x, p.y) } else { format!("a({},{})^{e}", p.x, p.y) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Polynomial over Q in the moduli parameters `a(i,j)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamPoly {
    terms: BTreeMap<ParamMono, Rational>,
}

impl ParamPoly {
    /// The parameter `a(i,j)` attached to the monomial `x^i y^j`.
    pub fn param(p: Mono) -> ParamPoly {
        let mut terms = BTreeMap::new();
        terms.insert(ParamMono::var(p), Rational::one());
        ParamPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMono, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// All parameters occurring in the polynomial.
    pub fn variables(&self) -> Vec<Mono> {
        let mut v: Vec<Mono> = self.terms.keys().flat_map(|m| m.0.iter().map(|(p, _)| *p)).collect();
        v.sort_by_key(key);
        v.dedup();
        v
    }

    fn insert(&mut self, m: ParamMono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn leading(&self) -> Option<(&ParamMono, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Value at a rational point; missing parameters are taken as zero.
    pub fn evaluate(&self, point: &BTreeMap<(u32, u32), Rational>) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (p, e) in &m.0 {
                let x = point.get(&key(p)).cloned().unwrap_or_else(Rational::zero);
                v = v * Ring::pow(&x, *e);
            }
            acc = acc + v;
        }
        acc
    }

    /// Divides by the content so the leading coefficient is 1.
    pub fn monic(&self) -> ParamPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let i = c.inv().unwrap();
                ParamPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * i.clone())).collect() }
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.is_empty())
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(mut self, o: ParamPoly) -> ParamPoly {
        for (m, c) in o.terms {
            self.insert(m, c);
        }
        self
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(self, o: ParamPoly) -> ParamPoly {
        self + (-o)
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, o: ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.insert(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl Ring for ParamPoly {
    fn zero() -> Self {
        ParamPoly::default()
    }
    fn one() -> Self {
        ParamPoly::from_rational(&Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(q: &Rational) -> Self {
        let mut p = ParamPoly::default();
        p.insert(ParamMono::default(), q.clone());
        p
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&ParamMono::default()).cloned(),
            _ => None,
        }
    }
    /// Exact multivariate division by leading terms.
    fn exact_div(&self, other: &Self) -> Option<Self> {
        let (lm, lc) = other.leading()?;
        let (lm, lci) = (lm.clone(), lc.inv()?);
        let mut rem = self.clone();
        let mut quot = ParamPoly::default();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lm)?;
            let qc = c.clone() * lci.clone();
            let mut t = ParamPoly::default();
            t.insert(qm, qc);
            rem = rem - t.clone() * other.clone();
            quot = quot + t;
        }
        Some(quot)
    }
    fn render_factor(&self) -> String {
        let single = self.terms.len() == 1 && self.terms.values().next().is_some_and(|c| c.is_one());
        if single && !self.is_constant() {
            format!("{self}")
        } else {
            format!("({self})")
        }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            let body = if m.0.is_empty() {
                format!("{a}")
            } else if a.is_one() {
                format!("{m}")
            } else {
                format!("{a}*{m}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, "+{body}")?,
            }
            first = false;
        }
        Ok(())
    }
}
