use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::factor::factor_over;
use crate::ring::{Field, Rational, Ring};
use crate::upoly::UPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements live over incompatible extension towers")]
    IncompatibleTowers,
    #[error("minimal polynomial must be monic")]
    NotMonic,
    #[error("minimal polynomial must have degree at least 2")]
    DegreeTooSmall,
    #[error("minimal polynomial is reducible; nontrivial factor {factor}")]
    Reducible { factor: String },
}

/// Recursive representative of a tower element.
///
/// `Ext { level, coeffs }` is a polynomial in the generator of `level`
/// (1-based) whose coefficients have strictly smaller depth. It always has
/// at least two coefficients and a nonzero last one, so every element has a
/// single representative regardless of how long the ambient tower is.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Rat(Rational),
    Ext { level: usize, coeffs: Vec<Repr> },
}

impl Repr {
    fn zero() -> Repr {
        Repr::Rat(<Rational as Zero>::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Repr::Rat(q) if Zero::is_zero(q))
    }

    fn depth(&self) -> usize {
        match self {
            Repr::Rat(_) => 0,
            Repr::Ext { level, .. } => *level,
        }
    }

    fn coeffs_at(&self, level: usize) -> Vec<Repr> {
        match self {
            Repr::Ext { level: l, coeffs } if *l == level => coeffs.clone(),
            other => vec![other.clone()],
        }
    }

    fn normalize(level: usize, mut coeffs: Vec<Repr>) -> Repr {
        while coeffs.last().is_some_and(Repr::is_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => Repr::zero(),
            1 => coeffs.pop().unwrap(),
            _ => Repr::Ext { level, coeffs },
        }
    }
}

/// One simple extension: a named generator and its monic minimal polynomial
/// over the previous levels, coefficients from degree 0 upward.
#[derive(Debug)]
pub struct Level {
    name: String,
    minpoly: Vec<Repr>,
}

impl Level {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// A tower `Q ⊂ K1 ⊂ ... ⊂ Kr` of simple algebraic extensions. The empty
/// tower is Q itself.
#[derive(Clone, Debug, Default)]
pub struct Tower {
    levels: Vec<Arc<Level>>,
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.levels.len() == other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| Arc::ptr_eq(a, b))
    }
}

impl Eq for Tower {}

impl Tower {
    pub fn rationals() -> Arc<Tower> {
        Arc::new(Tower::default())
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn is_rational(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[Arc<Level>] {
        &self.levels
    }

    /// Total degree `[K:Q]`.
    pub fn degree(&self) -> usize {
        self.levels.iter().map(|l| l.degree()).product()
    }

    /// True when `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        self.levels.len() <= other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| Arc::ptr_eq(a, b))
    }

    /// The tower truncated to its first `depth` levels.
    pub fn prefix(&self, depth: usize) -> Arc<Tower> {
        Arc::new(Tower { levels: self.levels[..depth].to_vec() })
    }

    /// Generator of the top level.
    pub fn generator(self: &Arc<Self>) -> AlgebraicNumber {
        let level = self.depth();
        assert!(level > 0, "Q has no generator");
        AlgebraicNumber {
            tower: self.clone(),
            repr: Repr::Ext { level, coeffs: vec![Repr::zero(), Repr::Rat(<Rational as One>::one())] },
        }
    }

    /// Minimal polynomial of the top generator over the previous level.
    pub fn top_minpoly(self: &Arc<Self>) -> UPoly<AlgebraicNumber> {
        let level = self.levels.last().expect("nonempty tower");
        let below = self.prefix(self.depth() - 1);
        UPoly::new(
            level
                .minpoly
                .iter()
                .map(|r| AlgebraicNumber { tower: below.clone(), repr: r.clone() })
                .collect(),
        )
    }

    /// Minimal polynomial of level `i` (1-based) over level `i-1`, rendered.
    pub fn describe_level(self: &Arc<Self>, i: usize) -> String {
        let t = self.prefix(i);
        format!("{}: {}", self.levels[i - 1].name, render_minpoly(&t.top_minpoly(), &self.levels[i - 1].name))
    }

    fn add(&self, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x + y),
            _ => {
                let l = a.depth().max(b.depth());
                let (ca, cb) = (a.coeffs_at(l), b.coeffs_at(l));
                let n = ca.len().max(cb.len());
                let zero = Repr::zero();
                let v = (0..n)
                    .map(|k| self.add(ca.get(k).unwrap_or(&zero), cb.get(k).unwrap_or(&zero)))
                    .collect();
                Repr::normalize(l, v)
            }
        }
    }

    fn neg(&self, a: &Repr) -> Repr {
        match a {
            Repr::Rat(x) => Repr::Rat(-x),
            Repr::Ext { level, coeffs } => {
                Repr::Ext { level: *level, coeffs: coeffs.iter().map(|c| self.neg(c)).collect() }
            }
        }
    }

    fn mul(&self, a: &Repr, b: &Repr) -> Repr {
        match (a, b) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x * y),
            _ if a.is_zero() || b.is_zero() => Repr::zero(),
            _ => {
                let l = a.depth().max(b.depth());
                let (ca, cb) = (a.coeffs_at(l), b.coeffs_at(l));
                let mut v = vec![Repr::zero(); ca.len() + cb.len() - 1];
                for (i, x) in ca.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in cb.iter().enumerate() {
                        let p = self.mul(x, y);
                        v[i + j] = self.add(&v[i + j], &p);
                    }
                }
                self.reduce(l, v)
            }
        }
    }

    /// Reduces a coefficient vector at `level` modulo that level's minimal
    /// polynomial.
    fn reduce(&self, level: usize, mut v: Vec<Repr>) -> Repr {
        let m = &self.levels[level - 1].minpoly;
        let d = m.len() - 1;
        while v.len() > d {
            let c = v.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let base = v.len() - d;
            for (j, mj) in m.iter().take(d).enumerate() {
                let p = self.mul(&c, mj);
                v[base + j] = self.add(&v[base + j], &self.neg(&p));
            }
        }
        Repr::normalize(level, v)
    }

    fn inv(&self, a: &Repr) -> Option<Repr> {
        match a {
            Repr::Rat(x) => (!Zero::is_zero(x)).then(|| Repr::Rat(x.recip())),
            Repr::Ext { level, coeffs } => {
                let below = self.prefix(level - 1);
                let lift = |r: &Repr| AlgebraicNumber { tower: below.clone(), repr: r.clone() };
                let p = UPoly::new(coeffs.iter().map(lift).collect());
                let m = UPoly::new(self.levels[level - 1].minpoly.iter().map(lift).collect());
                let (g, s, _) = p.ext_gcd(&m);
                debug_assert_eq!(g.degree(), Some(0));
                let v = s.into_coeffs().into_iter().map(|c| c.repr).collect();
                Some(Repr::normalize(*level, v))
            }
        }
    }
}

/// Creates a new tower with one more level adjoining a root of `minpoly`.
///
/// The polynomial must be monic of degree at least 2 and irreducible over
/// `tower`; irreducibility is checked by factoring.
pub fn extend(
    tower: &Arc<Tower>,
    minpoly: &UPoly<AlgebraicNumber>,
    name: &str,
) -> Result<Arc<Tower>, FieldError> {
    let deg = minpoly.degree().unwrap_or(0);
    if deg < 2 {
        return Err(FieldError::DegreeTooSmall);
    }
    if !minpoly.leading().is_one() {
        return Err(FieldError::NotMonic);
    }
    for c in minpoly.coeffs() {
        if !c.tower.is_prefix_of(tower) {
            return Err(FieldError::IncompatibleTowers);
        }
    }
    let factors = factor_over(tower, minpoly);
    if factors.len() > 1 || factors.first().is_some_and(|(_, m)| *m > 1) {
        let f = &factors[0].0;
        return Err(FieldError::Reducible { factor: render_minpoly(f, "t") });
    }
    let level = Level { name: name.to_string(), minpoly: minpoly.coeffs().iter().map(|c| c.repr.clone()).collect() };
    let mut levels = tower.levels.clone();
    levels.push(Arc::new(level));
    Ok(Arc::new(Tower { levels }))
}

fn render_minpoly(p: &UPoly<AlgebraicNumber>, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let s = c.to_string();
        let simple = !s[1..].contains(['+', '-', '*']);
        let (neg, body) = match s.strip_prefix('-') {
            Some(abs) if simple => (true, abs.to_string()),
            _ if simple => (false, s),
            _ => (false, format!("({s})")),
        };
        let term = match (mono.is_empty(), body == "1") {
            (true, _) => body,
            (false, true) => mono,
            (false, false) => format!("{body}*{mono}"),
        };
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// An element of a tower, stored through its reduced representative.
///
/// Zero and one use the empty tower and combine with elements of any tower.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    tower: Arc<Tower>,
    repr: Repr,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state)
    }
}

/// The four field operations of `field_arith`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic on tower elements.
pub fn field_arith(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    op: ArithOp,
) -> Result<AlgebraicNumber, FieldError> {
    let tower = AlgebraicNumber::common_tower(a, b).ok_or(FieldError::IncompatibleTowers)?;
    let repr = match op {
        ArithOp::Add => tower.add(&a.repr, &b.repr),
        ArithOp::Sub => tower.add(&a.repr, &tower.neg(&b.repr)),
        ArithOp::Mul => tower.mul(&a.repr, &b.repr),
        ArithOp::Div => {
            let i = tower.inv(&b.repr).ok_or(FieldError::DivisionByZero)?;
            tower.mul(&a.repr, &i)
        }
    };
    Ok(AlgebraicNumber { tower, repr })
}

impl AlgebraicNumber {
    pub fn rational(q: Rational) -> Self {
        AlgebraicNumber { tower: Tower::rationals(), repr: Repr::Rat(q) }
    }

    /// Embeds a rational in the given tower.
    pub fn in_tower(tower: &Arc<Tower>, q: Rational) -> Self {
        AlgebraicNumber { tower: tower.clone(), repr: Repr::Rat(q) }
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    /// Depth of the smallest level containing the element.
    pub fn depth(&self) -> usize {
        self.repr.depth()
    }

    /// The same element viewed in a longer tower.
    pub fn lift(&self, tower: &Arc<Tower>) -> Self {
        assert!(self.tower.is_prefix_of(tower) || self.repr.depth() == 0, "lift into an unrelated tower");
        AlgebraicNumber { tower: tower.clone(), repr: self.repr.clone() }
    }

    /// Coefficients in the top generator of `tower`, each living in the
    /// tower one level down.
    pub fn top_coefficients(&self, tower: &Arc<Tower>) -> Vec<AlgebraicNumber> {
        assert!(self.tower.is_prefix_of(tower) || self.repr.depth() == 0, "unrelated tower");
        let l = tower.depth();
        assert!(l > 0);
        let below = tower.prefix(l - 1);
        let v = if self.repr.depth() == l { self.repr.coeffs_at(l) } else { vec![self.repr.clone()] };
        v.into_iter().map(|r| AlgebraicNumber { tower: below.clone(), repr: r }).collect()
    }

    /// Builds `sum c_k * g^k` for the top generator `g` of `tower`.
    pub fn from_top_coefficients(tower: &Arc<Tower>, coeffs: &[AlgebraicNumber]) -> Self {
        let l = tower.depth();
        let repr = Repr::normalize(l, coeffs.iter().map(|c| c.repr.clone()).collect());
        let v = repr.coeffs_at(l);
        AlgebraicNumber { tower: tower.clone(), repr: tower.reduce(l, v) }
    }

    fn common_tower(a: &Self, b: &Self) -> Option<Arc<Tower>> {
        if a.tower.is_prefix_of(&b.tower) {
            Some(b.tower.clone())
        } else if b.tower.is_prefix_of(&a.tower) {
            Some(a.tower.clone())
        } else if a.repr.depth() == 0 {
            Some(b.tower.clone())
        } else if b.repr.depth() == 0 {
            Some(a.tower.clone())
        } else {
            None
        }
    }

    fn binary(&self, other: &Self, op: ArithOp) -> Self {
        match field_arith(self, other, op) {
            Ok(r) => r,
            Err(e) => panic!("{e}"),
        }
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, r: &Repr) -> fmt::Result {
        match r {
            Repr::Rat(q) => write!(f, "{q}"),
            Repr::Ext { level, coeffs } => {
                let name = self.tower.levels[level - 1].name();
                let mut first = true;
                for (k, c) in coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    let mono = match k {
                        0 => None,
                        1 => Some(name.to_string()),
                        _ => Some(format!("{name}^{k}")),
                    };
                    match (mono, c) {
                        (None, c) => self.render(f, c)?,
                        (Some(m), Repr::Rat(q)) if One::is_one(q) => write!(f, "{m}")?,
                        (Some(m), c) => {
                            write!(f, "(")?;
                            self.render(f, c)?;
                            write!(f, ")*{m}")?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.repr.clone();
        self.render(f, &r)
    }
}

impl Add for AlgebraicNumber {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.binary(&o, ArithOp::Add)
    }
}

impl Sub for AlgebraicNumber {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.binary(&o, ArithOp::Sub)
    }
}

impl Mul for AlgebraicNumber {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.binary(&o, ArithOp::Mul)
    }
}

impl Neg for AlgebraicNumber {
    type Output = Self;
    fn neg(self) -> Self {
        let repr = self.tower.neg(&self.repr);
        AlgebraicNumber { tower: self.tower, repr }
    }
}

impl Ring for AlgebraicNumber {
    fn zero() -> Self {
        AlgebraicNumber::rational(<Rational as Zero>::zero())
    }
    fn one() -> Self {
        AlgebraicNumber::rational(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }
    fn from_rational(q: &Rational) -> Self {
        AlgebraicNumber::rational(q.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        match &self.repr {
            Repr::Rat(q) => Some(q.clone()),
            _ => None,
        }
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.div(other)
    }
}

impl Field for AlgebraicNumber {
    fn inv(&self) -> Option<Self> {
        self.tower.inv(&self.repr).map(|repr| AlgebraicNumber { tower: self.tower.clone(), repr })
    }
}
