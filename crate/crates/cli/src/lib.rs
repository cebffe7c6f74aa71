//! Command dispatch and reports for the `germ` tool.

mod parse;
mod report;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use classify::{classify, lift_rational, Classification, ClassifyOutcome, TransformationLog};
use field_tower::{Rational, Ring, Tower};
use local_algebra::{corank, milnor_number, Mu};
use newton_geometry::{modality_lattice, newton_polygon};
use normal_form::{canonically_oriented, normal_form_of, regular_basis, NormalFormError};
use poly_core::QPoly;
use puiseux::{characteristic_exponents, default_bound, expansions, topological_data};
use rayon::prelude::*;

pub use parse::{parse_poly, parse_rational, ParseError};
pub use report::{BranchReport, ExpansionReport, Infinite, Milnor, PolygonReport, Report};

/// Message and exit status when no right-equivalent germ has a
/// non-degenerate Newton boundary.
pub const DEGENERATE: &str = "degenerate Newton boundary";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DEGENERATE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Polygon,
    Milnor,
    Modality,
    Classify,
    RegularBasis,
    NormalForm,
    Puiseux,
    Invariants,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Polygon,
        Command::Milnor,
        Command::Modality,
        Command::Classify,
        Command::RegularBasis,
        Command::NormalForm,
        Command::Puiseux,
        Command::Invariants,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Polygon => "polygon",
            Command::Milnor => "milnor",
            Command::Modality => "modality",
            Command::Classify => "classify",
            Command::RegularBasis => "regular-basis",
            Command::NormalForm => "normal-form",
            Command::Puiseux => "puiseux",
            Command::Invariants => "invariants",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command '{s}'"))
    }
}

/// Lower end of the regular basis scan.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Bound {
    #[default]
    Zero,
    Value(u64),
    /// The piecewise degree `d` of the boundary itself.
    Boundary,
}

impl FromStr for Bound {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "boundary" => Ok(Bound::Boundary),
            _ => s.parse().map(Bound::Value).map_err(|_| format!("invalid bound '{s}'")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Development order for `puiseux`; `mu + 2` when absent.
    pub order: Option<Rational>,
    pub bound: Bound,
    pub log_transformations: bool,
    pub canonical_orientation: bool,
}

#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    pub input: String,
    pub options: Options,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

enum Failure {
    Degenerate(Option<TransformationLog>),
    Input(String),
}

impl<E: fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn field_of(tower: &Arc<Tower>) -> Vec<String> {
    (1..=tower.depth()).map(|i| tower.describe_level(i)).collect()
}

fn classified(f: &QPoly, opts: &Options) -> Result<Classification, Failure> {
    match classify(f)? {
        ClassifyOutcome::Classified(c) => {
            Ok(if opts.canonical_orientation { canonically_oriented(c) } else { c })
        }
        ClassifyOutcome::NotNonDegenerate { log, .. } => Err(Failure::Degenerate(Some(log))),
    }
}

fn note_classification(r: &mut Report, c: &Classification, opts: &Options) {
    r.field = field_of(c.tower());
    if opts.log_transformations {
        r.transformations = Some(c.log.steps.iter().map(|s| s.to_string()).collect());
    }
}

fn fill(r: &mut Report, f: &QPoly, command: Command, opts: &Options) -> Result<(), Failure> {
    match command {
        Command::Polygon => {
            r.polygon = Some((&newton_polygon(f)?).into());
        }
        Command::Milnor => {
            r.milnor = Some(match milnor_number(f)?.mu {
                Mu::Finite(n) => Milnor::Finite(n as u64),
                _ => Milnor::Infinite(Infinite::Infinite),
            });
        }
        Command::Modality | Command::Classify => {
            let c = classified(f, opts)?;
            r.corank = Some(corank(f)?);
            r.milnor = Some(Milnor::Finite(c.mu as u64));
            if command == Command::Modality {
                r.modality = Some(modality_lattice(&c.polygon)?.count);
            } else {
                r.germ = Some(c.germ.to_string());
            }
            r.polygon = Some((&c.polygon).into());
            note_classification(r, &c, opts);
        }
        Command::RegularBasis => {
            let c = classified(f, opts)?;
            let bound = match opts.bound {
                Bound::Zero => 0,
                Bound::Value(b) => b,
                Bound::Boundary => c.polygon.piecewise_weight()?.d,
            };
            let basis = regular_basis(&c.germ, bound)?;
            r.milnor = Some(Milnor::Finite(c.mu as u64));
            r.polygon = Some((&c.polygon).into());
            r.bound = Some(bound);
            r.regular_basis = Some(basis.monomials.iter().map(|m| m.to_string()).collect());
            note_classification(r, &c, opts);
        }
        Command::NormalForm => {
            let c = classified(f, opts)?;
            let nf = normal_form_of(c, false).map_err(|e| match e {
                NormalFormError::NotNonDegenerate => Failure::Degenerate(None),
                e => Failure::Input(e.to_string()),
            })?;
            r.corank = Some(corank(f)?);
            r.milnor = Some(Milnor::Finite(nf.mu as u64));
            r.modality = Some(nf.modality);
            r.polygon = Some((&nf.polygon).into());
            r.parameter_monomials = Some(nf.parameter_monomials.iter().map(|m| m.to_string()).collect());
            r.normal_form = Some(nf.render_family());
            r.exceptional_hypersurface = Some(nf.render_exceptional());
            note_classification(r, &nf.classification, opts);
        }
        Command::Puiseux => {
            let l = match &opts.order {
                Some(l) => l.clone(),
                None => default_bound(&lift_rational(f))?,
            };
            let mut out = Vec::new();
            for e in expansions(f, &l)? {
                let ce = characteristic_exponents(&e).ok();
                let tower = e
                    .terms
                    .iter()
                    .map(|(_, c)| c.tower().clone())
                    .max_by_key(|t| t.depth())
                    .unwrap_or_else(Tower::rationals);
                out.push(ExpansionReport {
                    expansion: e.to_string(),
                    ramification: e.ramification,
                    developed_order: e.developed_order.to_string(),
                    exact: e.exact,
                    transposed: ce.as_ref().is_some_and(|c| c.transposed),
                    characteristic_exponents: ce.map(|c| c.exponents),
                    field: field_of(&tower),
                });
            }
            r.expansions = Some(out);
        }
        Command::Invariants => {
            let data = topological_data(&lift_rational(f))?;
            r.branches = Some(
                data.branches
                    .iter()
                    .map(|b| BranchReport { characteristic_exponents: b.characteristic_exponents.clone(), conjugates: b.conjugates })
                    .collect(),
            );
            r.intersections = Some(data.intersections);
        }
    }
    Ok(())
}

/// Runs one request. Pipeline errors end up in `report.error`.
pub fn run(req: &Request) -> Outcome {
    let start = Instant::now();
    let mut report = Report { command: req.command.to_string(), input: req.input.trim().to_string(), ..Report::default() };
    let result = parse_poly(&req.input)
        .map_err(Failure::from)
        .and_then(|f| {
            report.input = f.to_string();
            check_germ(&f)?;
            fill(&mut report, &f, req.command, &req.options)
        });
    let exit_code = match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Degenerate(log)) => {
            report.error = Some(DEGENERATE.into());
            if let (Some(log), true) = (log, req.options.log_transformations) {
                report.field = field_of(&log.tower);
                report.transformations = Some(log.steps.iter().map(|s| s.to_string()).collect());
            }
            EXIT_DEGENERATE
        }
        Err(Failure::Input(e)) => {
            report.error = Some(e);
            EXIT_INPUT
        }
    };
    report.timing_ms = start.elapsed().as_millis() as u64;
    Outcome { report, exit_code }
}

fn check_germ(f: &QPoly) -> Result<(), Failure> {
    if f.is_zero() {
        return Err(Failure::Input("the zero polynomial is not a germ of a curve".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Failure::Input("germ does not vanish at the origin".into()));
    }
    Ok(())
}

/// Expressions of a batch file: one per line, `#` starts a comment.
pub fn batch_entries(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

/// Runs every entry, in parallel; results keep the input order.
pub fn run_batch(command: Command, entries: &[String], options: &Options) -> Vec<Outcome> {
    entries
        .par_iter()
        .map(|input| run(&Request { command, input: input.clone(), options: options.clone() }))
        .collect()
}

/// Largest exit code among the outcomes.
pub fn batch_exit_code(outcomes: &[Outcome]) -> i32 {
    outcomes.iter().map(|o| o.exit_code).max().unwrap_or(EXIT_OK)
}
