use std::cmp::Ordering;
use std::fmt;

/// The monomial `x^i y^j`.
///
/// Monomials are ordered by ascending total degree, ties broken by
/// descending x-exponent. This is the display order, and it is also the
/// local ordering read backwards: the first monomial in this order is the
/// largest one locally (`1` first, then `x`, then `y`, ...).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    pub x: u32,
    pub y: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Mono {
        Mono { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono::new(self.x + other.x, self.y + other.y)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient(&self, other: &Mono) -> Option<Mono> {
        self.divides(other).then(|| Mono::new(other.x - self.x, other.y - self.y))
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono::new(self.x.max(other.x), self.y.max(other.y))
    }

    pub fn swap(&self) -> Mono {
        Mono::new(self.y, self.x)
    }

    /// All monomials of total degree `d`, by increasing x-exponent.
    pub fn of_degree(d: u32) -> impl Iterator<Item = Mono> {
        (0..=d).map(move |i| Mono::new(i, d - i))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.x.cmp(&self.x))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |v: &str, e: u32| match e {
            0 => None,
            1 => Some(v.to_string()),
            _ => Some(format!("{v}^{e}")),
        };
        let parts: Vec<String> = [part("x", self.x), part("y", self.y)].into_iter().flatten().collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Positive integer weights `(w(x), w(y))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Weight {
    pub wx: u32,
    pub wy: u32,
}

impl Weight {
    pub const STANDARD: Weight = Weight { wx: 1, wy: 1 };

    pub fn new(wx: u32, wy: u32) -> Weight {
        assert!(wx > 0 && wy > 0, "weights are positive");
        Weight { wx, wy }
    }

    pub fn degree(&self, m: &Mono) -> u64 {
        self.wx as u64 * m.x as u64 + self.wy as u64 * m.y as u64
    }

    pub fn swap(&self) -> Weight {
        Weight::new(self.wy, self.wx)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.wx, self.wy)
    }
}

/// Facet weights scaled by minimal multipliers so every facet sits at the
/// common degree `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiecewiseWeight {
    pub weights: Vec<(Weight, u64)>,
    pub d: u64,
}

impl PiecewiseWeight {
    /// Minimum over the pieces of the scaled weighted degree.
    pub fn degree(&self, m: &Mono) -> u64 {
        self.weights.iter().map(|(w, l)| l * w.degree(m)).min().expect("at least one piece")
    }
}

/// Anything that assigns a degree to monomials.
pub trait Grading {
    fn grade(&self, m: &Mono) -> u64;
}

impl Grading for Weight {
    fn grade(&self, m: &Mono) -> u64 {
        self.degree(m)
    }
}

impl Grading for PiecewiseWeight {
    fn grade(&self, m: &Mono) -> u64 {
        self.degree(m)
    }
}

/// Weighted degree of a monomial under a single or piecewise weight.
pub fn w_deg(m: &Mono, w: &impl Grading) -> u64 {
    w.grade(m)
}
