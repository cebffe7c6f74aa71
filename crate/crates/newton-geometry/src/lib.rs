//! Newton polygons of bivariate germs.

use std::fmt;

use num_integer::Integer;
use poly_core::{Mono, PiecewiseWeight, Poly, Ring, Weight};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("the zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("germ is not convenient")]
    NotConvenient,
    #[error("segment {0} is not a facet of the Newton polygon")]
    NotAFacet(String),
    #[error("Newton polygon has no facets")]
    NoFacets,
}

/// A compact edge of the Newton boundary, from `left` (smaller x) to
/// `right`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Facet {
    pub left: Mono,
    pub right: Mono,
    /// Primitive inner normal.
    pub weight: Weight,
    /// Weighted degree of the facet's points.
    pub degree: u64,
}

impl Facet {
    pub fn new(left: Mono, right: Mono) -> Facet {
        let dy = left.y - right.y;
        let dx = right.x - left.x;
        let g = dy.gcd(&dx);
        let weight = Weight::new(dy / g, dx / g);
        Facet { left, right, weight, degree: weight.degree(&left) }
    }

    /// Number of lattice segments on the facet.
    pub fn lattice_length(&self) -> u32 {
        (self.left.y - self.right.y) / self.weight.wx
    }

    pub fn meets_y_axis(&self) -> bool {
        self.left.x == 0
    }

    pub fn meets_x_axis(&self) -> bool {
        self.right.y == 0
    }

    pub fn contains(&self, m: &Mono) -> bool {
        self.weight.degree(m) == self.degree && self.left.x <= m.x && m.x <= self.right.x
    }

    /// Lattice points of the facet, left to right.
    pub fn points(&self) -> Vec<Mono> {
        let n = self.lattice_length();
        (0..=n).map(|k| Mono::new(self.left.x + k * self.weight.wy, self.left.y - k * self.weight.wx)).collect()
    }

    fn mirror(&self) -> Facet {
        Facet::new(self.right.swap(), self.left.swap())
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", point(&self.left), point(&self.right))
    }
}

fn point(m: &Mono) -> String {
    format!("[{},{}]", m.x, m.y)
}

/// Position of a monomial relative to the Newton boundary.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Position {
    Below,
    On,
    Above,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonPolygon {
    /// Vertices by increasing x-exponent.
    pub vertices: Vec<Mono>,
    pub facets: Vec<Facet>,
}

impl NewtonPolygon {
    /// Intercept with the x-axis, when the boundary reaches it.
    pub fn x_intercept(&self) -> Option<u32> {
        self.vertices.last().filter(|v| v.y == 0).map(|v| v.x)
    }

    /// Intercept with the y-axis, when the boundary reaches it.
    pub fn y_intercept(&self) -> Option<u32> {
        self.vertices.first().filter(|v| v.x == 0).map(|v| v.y)
    }

    pub fn is_convenient(&self) -> bool {
        self.x_intercept().is_some() && self.y_intercept().is_some()
    }

    pub fn normals(&self) -> Vec<Weight> {
        self.facets.iter().map(|f| f.weight).collect()
    }

    /// The polygon of the germ with x and y exchanged.
    pub fn mirror(&self) -> NewtonPolygon {
        NewtonPolygon {
            vertices: self.vertices.iter().rev().map(|v| v.swap()).collect(),
            facets: self.facets.iter().rev().map(|f| f.mirror()).collect(),
        }
    }

    /// The orientation with the lexicographically smaller vertex list, and
    /// whether the variables had to be exchanged to get it.
    pub fn canonical(&self) -> (NewtonPolygon, bool) {
        let m = self.mirror();
        let key = |p: &NewtonPolygon| p.vertices.iter().map(|v| (v.x, v.y)).collect::<Vec<_>>();
        if key(&m) < key(self) {
            (m, true)
        } else {
            (self.clone(), false)
        }
    }

    pub fn has_facet(&self, facet: &Facet) -> bool {
        self.facets.contains(facet)
    }

    /// Twice the lattice area between the axes and the boundary.
    pub fn twice_area(&self) -> Result<u64, GeometryError> {
        if !self.is_convenient() {
            return Err(GeometryError::NotConvenient);
        }
        Ok(self
            .vertices
            .windows(2)
            .map(|w| (w[1].x - w[0].x) as u64 * (w[0].y + w[1].y) as u64)
            .sum())
    }

    pub fn piecewise_weight(&self) -> Result<PiecewiseWeight, GeometryError> {
        if self.facets.is_empty() {
            return Err(GeometryError::NoFacets);
        }
        let d = self.facets.iter().fold(1u64, |acc, f| acc.lcm(&f.degree));
        let weights = self.facets.iter().map(|f| (f.weight, d / f.degree)).collect();
        Ok(PiecewiseWeight { weights, d })
    }

    pub fn classify_monomial(&self, m: &Mono) -> Result<Position, GeometryError> {
        let pw = self.piecewise_weight()?;
        let deg = pw.degree(m);
        Ok(match deg.cmp(&pw.d) {
            std::cmp::Ordering::Less => Position::Below,
            std::cmp::Ordering::Equal => Position::On,
            std::cmp::Ordering::Greater => Position::Above,
        })
    }

    /// Lattice points `(i,j)` with `i, j >= 2` on or under the boundary.
    pub fn modality_lattice(&self) -> Result<ModalityCount, GeometryError> {
        let pw = self.piecewise_weight()?;
        let a = self.x_intercept().ok_or(GeometryError::NotConvenient)?;
        let b = self.y_intercept().ok_or(GeometryError::NotConvenient)?;
        let mut witnesses = Vec::new();
        for i in 2..=a {
            for j in 2..=b {
                let m = Mono::new(i, j);
                if pw.degree(&m) <= pw.d {
                    witnesses.push(m);
                }
            }
        }
        Ok(ModalityCount { count: witnesses.len(), witnesses })
    }

    /// Multi-line rendering, one field per line.
    pub fn render_multiline(&self) -> String {
        let (v, f, n) = self.parts();
        format!("vertices: {v}\nfacets:   {f}\nnormals:  {n}")
    }

    fn parts(&self) -> (String, String, String) {
        let v: Vec<String> = self.vertices.iter().map(point).collect();
        let f: Vec<String> = self.facets.iter().map(|f| f.to_string()).collect();
        let n: Vec<String> = self.facets.iter().map(|f| f.weight.to_string()).collect();
        (v.join(", "), f.join(", "), n.join(", "))
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v, fa, n) = self.parts();
        write!(f, "vertices: {v}; facets: {fa}; normals: {n}")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModalityCount {
    pub count: usize,
    pub witnesses: Vec<Mono>,
}

fn cross(o: &Mono, a: &Mono, b: &Mono) -> i64 {
    let (ox, oy) = (o.x as i64, o.y as i64);
    (a.x as i64 - ox) * (b.y as i64 - oy) - (a.y as i64 - oy) * (b.x as i64 - ox)
}

/// Newton polygon of the support of `f`.
pub fn newton_polygon<C: Ring>(f: &Poly<C>) -> Result<NewtonPolygon, GeometryError> {
    polygon_of_support(f.support())
}

/// Lower-left convex hull of a finite set of exponents.
pub fn polygon_of_support(support: impl IntoIterator<Item = Mono>) -> Result<NewtonPolygon, GeometryError> {
    let mut pts: Vec<Mono> = support.into_iter().collect();
    if pts.is_empty() {
        return Err(GeometryError::ZeroPolynomial);
    }
    pts.sort_by_key(|m| (m.x, m.y));
    pts.dedup();
    let min_y = pts.iter().map(|m| m.y).min().unwrap();
    // leftmost point of the lowest row terminates the boundary
    let end_x = pts.iter().filter(|m| m.y == min_y).map(|m| m.x).min().unwrap();
    let mut hull: Vec<Mono> = Vec::new();
    for p in pts.into_iter().filter(|m| m.x <= end_x) {
        if let Some(last) = hull.last() {
            if last.x == p.x {
                continue;
            }
        }
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    // keep the part with strictly descending height
    let mut vertices: Vec<Mono> = Vec::new();
    for p in hull {
        match vertices.last() {
            Some(last) if p.y >= last.y => {}
            _ => vertices.push(p),
        }
    }
    let facets = vertices.windows(2).map(|w| Facet::new(w[0], w[1])).collect();
    Ok(NewtonPolygon { vertices, facets })
}

pub fn is_convenient<C: Ring>(f: &Poly<C>) -> bool {
    let sup: Vec<Mono> = f.support().collect();
    sup.iter().any(|m| m.y == 0 && m.x > 0) && sup.iter().any(|m| m.x == 0 && m.y > 0)
}

pub fn piecewise_weight(p: &NewtonPolygon) -> Result<PiecewiseWeight, GeometryError> {
    p.piecewise_weight()
}

/// Sum of the terms of `f` lying on the facet.
pub fn facet_jet<C: Ring>(f: &Poly<C>, facet: &Facet) -> Result<Poly<C>, GeometryError> {
    let p = newton_polygon(f)?;
    if !p.has_facet(facet) {
        return Err(GeometryError::NotAFacet(facet.to_string()));
    }
    Ok(f.w_part(&facet.weight, facet.degree))
}

/// Kouchnirenko's Newton number `2S - a - b + 1`.
pub fn newton_number<C: Ring>(f: &Poly<C>) -> Result<i64, GeometryError> {
    if !is_convenient(f) {
        return Err(GeometryError::NotConvenient);
    }
    let p = newton_polygon(f)?;
    let s2 = p.twice_area()? as i64;
    let a = p.x_intercept().unwrap() as i64;
    let b = p.y_intercept().unwrap() as i64;
    Ok(s2 - a - b + 1)
}

pub fn modality_lattice(p: &NewtonPolygon) -> Result<ModalityCount, GeometryError> {
    p.modality_lattice()
}

pub fn classify_monomial(m: &Mono, p: &NewtonPolygon) -> Result<Position, GeometryError> {
    p.classify_monomial(m)
}
