//! Right-equivalence transformations taking a corank-2 germ with finite
//! Milnor number to one with a non-degenerate, normalized, convenient
//! Newton boundary, when such a form exists.

mod log;
mod normalize;

use std::sync::Arc;

use field_tower::{AlgebraicNumber, Tower};
use local_algebra::LocalError;
use newton_geometry::{GeometryError, NewtonPolygon};
use poly_core::{PolyError, QPoly};
use thiserror::Error;
use wh_factor::{KPoly, WhError};

pub use log::{Step, TransformationLog};
pub use normalize::{apply_and_truncate, facet_is_normalized, Classifier, FacetStatus};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("the zero germ cannot be classified")]
    ZeroGerm,
    #[error("germ does not vanish at the origin")]
    NonzeroConstant,
    #[error("germ is smooth: nonzero linear part")]
    Smooth,
    #[error("germ has corank {0}; corank 2 is required")]
    Corank(u32),
    #[error("Milnor number is infinite: singularity is not isolated")]
    InfiniteMilnor,
    #[error("no progress on facet {0}")]
    Stuck(String),
    #[error("iteration limit {0} exceeded")]
    IterationLimit(usize),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Factor(#[from] WhError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A germ in classified form together with the record of how it was
/// reached.
#[derive(Clone, Debug)]
pub struct Classification {
    pub germ: KPoly,
    pub polygon: NewtonPolygon,
    pub mu: usize,
    pub log: TransformationLog,
}

impl Classification {
    pub fn tower(&self) -> &Arc<Tower> {
        &self.log.tower
    }
}

#[derive(Clone, Debug)]
pub enum ClassifyOutcome {
    Classified(Classification),
    /// No right-equivalent germ with non-degenerate Newton boundary exists.
    /// `germ` is the state reached when this became certain.
    NotNonDegenerate { germ: KPoly, log: TransformationLog },
}

impl ClassifyOutcome {
    pub fn classified(&self) -> Option<&Classification> {
        match self {
            ClassifyOutcome::Classified(c) => Some(c),
            ClassifyOutcome::NotNonDegenerate { .. } => None,
        }
    }

    pub fn log(&self) -> &TransformationLog {
        match self {
            ClassifyOutcome::Classified(c) => &c.log,
            ClassifyOutcome::NotNonDegenerate { log, .. } => log,
        }
    }
}

pub fn lift_rational(f: &QPoly) -> KPoly {
    f.map(|c| AlgebraicNumber::rational(c.clone()))
}

/// Classifies a germ with rational coefficients.
pub fn classify(f: &QPoly) -> Result<ClassifyOutcome, ClassifyError> {
    Classifier::new(Tower::rationals(), lift_rational(f))?.run()
}

/// Classifies a germ with coefficients in `tower`.
pub fn classify_over(tower: &Arc<Tower>, f: &KPoly) -> Result<ClassifyOutcome, ClassifyError> {
    Classifier::new(tower.clone(), f.clone())?.run()
}
