use std::fmt::{self, Write as _};

use newton_geometry::NewtonPolygon;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Infinite {
    #[serde(rename = "infinite")]
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Milnor {
    Finite(u64),
    Infinite(Infinite),
}

impl fmt::Display for Milnor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Milnor::Finite(n) => write!(f, "{n}"),
            Milnor::Infinite(_) => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonReport {
    pub vertices: Vec<[u32; 2]>,
    pub facets: Vec<[[u32; 2]; 2]>,
    pub normals: Vec<[u32; 2]>,
}

impl From<&NewtonPolygon> for PolygonReport {
    fn from(p: &NewtonPolygon) -> Self {
        PolygonReport {
            vertices: p.vertices.iter().map(|v| [v.x, v.y]).collect(),
            facets: p.facets.iter().map(|f| [[f.left.x, f.left.y], [f.right.x, f.right.y]]).collect(),
            normals: p.facets.iter().map(|f| [f.weight.wx, f.weight.wy]).collect(),
        }
    }
}

impl PolygonReport {
    fn render(&self) -> String {
        let pt = |p: &[u32; 2]| format!("[{},{}]", p[0], p[1]);
        let v: Vec<String> = self.vertices.iter().map(pt).collect();
        let f: Vec<String> = self.facets.iter().map(|[a, b]| format!("[{}, {}]", pt(a), pt(b))).collect();
        let n: Vec<String> = self.normals.iter().map(pt).collect();
        format!("vertices: {}\nfacets:   {}\nnormals:  {}", v.join(", "), f.join(", "), n.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub expansion: String,
    pub ramification: u32,
    pub developed_order: String,
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characteristic_exponents: Option<Vec<u32>>,
    #[serde(default)]
    pub transposed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub field: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchReport {
    pub characteristic_exponents: Vec<u32>,
    pub conjugates: usize,
}

/// Everything one request produced. Fields a command does not compute
/// are left out of the JSON form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corank: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub milnor: Option<Milnor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modality: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<PolygonReport>,
    /// The classified germ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub germ: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular_basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter_monomials: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional_hypersurface: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expansions: Option<Vec<ExpansionReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<Vec<BranchReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersections: Option<Vec<Vec<u64>>>,
    /// Minimal polynomials of the generators named in the report, one per
    /// extension level.
    #[serde(default)]
    pub field: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transformations: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: u64,
}

fn list(items: &[String]) -> String {
    format!("[{}]", items.join(", "))
}

impl Report {
    /// Human-readable form. Timing is left out so the text is stable
    /// across runs.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        if !self.field.is_empty() {
            let _ = writeln!(s, "field:");
            for l in &self.field {
                let _ = writeln!(s, "  {l}");
            }
        }
        if let Some(c) = self.corank {
            let _ = writeln!(s, "corank = {c}");
        }
        if let Some(m) = self.milnor {
            let _ = writeln!(s, "Milnor number = {m}");
        }
        if let Some(m) = self.modality {
            let _ = writeln!(s, "modality = {m}");
        }
        if let Some(g) = &self.germ {
            let _ = writeln!(s, "germ = {g}");
        }
        if let Some(p) = &self.polygon {
            let _ = writeln!(s, "Newton polygon:\n{}", p.render());
        }
        if let Some(b) = &self.regular_basis {
            let _ = writeln!(s, "regular basis (degree >= {}) = {}", self.bound.unwrap_or(0), list(b));
        }
        if let Some(p) = &self.parameter_monomials {
            let _ = writeln!(s, "parameter monomials = {}", list(p));
        }
        if let Some(n) = &self.normal_form {
            let _ = writeln!(s, "normal form = {n}");
        }
        if let Some(e) = &self.exceptional_hypersurface {
            let _ = writeln!(s, "exceptional hypersurface = {e}");
        }
        if let Some(es) = &self.expansions {
            for (k, e) in es.iter().enumerate() {
                let _ = writeln!(s, "branch {}: y = {}{}", k + 1, e.expansion, if e.exact { "" } else { " + ..." });
                let _ = writeln!(s, "  ramification = {}, developed to x^({})", e.ramification, e.developed_order);
                if let Some(c) = &e.characteristic_exponents {
                    let c: Vec<String> = c.iter().map(|k| k.to_string()).collect();
                    let tag = if e.transposed { " (n > m rows)" } else { "" };
                    let _ = writeln!(s, "  characteristic exponents = ({}){tag}", c.join(", "));
                }
                for l in &e.field {
                    let _ = writeln!(s, "  field {l}");
                }
            }
        }
        if let Some(bs) = &self.branches {
            for (k, b) in bs.iter().enumerate() {
                let c: Vec<String> = b.characteristic_exponents.iter().map(|k| k.to_string()).collect();
                let _ = writeln!(s, "class {}: characteristic exponents ({}), {} conjugate(s)", k + 1, c.join(", "), b.conjugates);
            }
        }
        if let Some(m) = &self.intersections {
            let _ = writeln!(s, "intersection numbers:");
            for row in m {
                let r: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(s, "  {}", r.join(" "));
            }
        }
        if let Some(t) = &self.transformations {
            let _ = writeln!(s, "transformations:");
            for (k, step) in t.iter().enumerate() {
                let _ = writeln!(s, "  {}. {step}", k + 1);
            }
        }
        s
    }
}
