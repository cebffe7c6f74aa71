use std::fmt;
use std::sync::Arc;

use field_tower::Tower;
use poly_core::{Mono, PolyError};
use wh_factor::KPoly;

/// One recorded operation on the germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Coordinate change `x -> image_x`, `y -> image_y`.
    Elementary { image_x: KPoly, image_y: KPoly },
    /// Drops every term of degree above `bound`; harmless once `bound` is
    /// at least the determinacy bound.
    Truncate { bound: u32 },
    /// Adds a pure power above the determinacy bound.
    Pad { monomial: Mono },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Elementary { image_x, image_y } => write!(f, "x -> {image_x}, y -> {image_y}"),
            Step::Truncate { bound } => write!(f, "truncate above degree {bound}"),
            Step::Pad { monomial } => write!(f, "add {monomial}"),
        }
    }
}

/// The ordered steps taking an input germ to its classified form, and the
/// field their coefficients live in.
#[derive(Clone, Debug)]
pub struct TransformationLog {
    pub steps: Vec<Step>,
    pub tower: Arc<Tower>,
}

impl TransformationLog {
    pub fn new(tower: Arc<Tower>) -> Self {
        TransformationLog { steps: Vec::new(), tower }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies the steps to `f` in order.
    pub fn replay(&self, f: &KPoly) -> Result<KPoly, PolyError> {
        let mut g = f.clone();
        let mut k = 0;
        while k < self.steps.len() {
            match &self.steps[k] {
                Step::Elementary { image_x, image_y } => {
                    // a following truncation may be folded into the composition
                    if let Some(Step::Truncate { bound }) = self.steps.get(k + 1) {
                        g = g.substitute_truncated(image_x, image_y, *bound)?;
                        k += 1;
                    } else {
                        g = g.substitute(image_x, image_y)?;
                    }
                }
                Step::Truncate { bound } => g = g.jet(*bound as i64),
                Step::Pad { monomial } => g = g.add(&KPoly::mono(monomial.x, monomial.y)),
            }
            k += 1;
        }
        Ok(g)
    }
}

impl fmt::Display for TransformationLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(f, "{}. {s}", k + 1)?;
        }
        Ok(())
    }
}
