use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use germ_cli::{batch_entries, batch_exit_code, parse_rational, run, run_batch, Bound, Command, Options, Outcome, Request, EXIT_INPUT};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Classification, invariants and normal forms of plane curve germs over
/// the rationals.
#[derive(Parser, Debug)]
#[command(name = "germ", version)]
struct Cli {
    /// polygon, milnor, modality, classify, regular-basis, normal-form,
    /// puiseux or invariants
    command: Command,
    /// Polynomial in x and y, e.g. "x^4 + 1/3*x^3*y + y^4"
    #[arg(required_unless_present = "batch", conflicts_with = "batch", allow_hyphen_values = true)]
    expr: Option<String>,
    /// File with one expression per line; '#' starts a comment
    #[arg(long)]
    batch: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Development order of Puiseux expansions (default mu + 2)
    #[arg(long, value_parser = order)]
    order: Option<field_tower::Rational>,
    /// Least piecewise degree of the regular basis: an integer or "boundary"
    #[arg(long, default_value = "0")]
    bound: Bound,
    /// Include the replayable list of coordinate changes
    #[arg(long)]
    log_transformations: bool,
    /// Exchange x and y when that gives the lexicographically smaller polygon
    #[arg(long)]
    canonical_orientation: bool,
}

fn order(s: &str) -> Result<field_tower::Rational, String> {
    parse_rational(s).ok_or_else(|| format!("invalid order '{s}'"))
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn print_text(outcomes: &[Outcome], headers: bool) {
    for (k, o) in outcomes.iter().enumerate() {
        if headers {
            if k > 0 {
                println!();
            }
            println!("# {}", o.report.input);
        }
        print!("{}", o.report.render_text());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let options = Options {
        order: cli.order,
        bound: cli.bound,
        log_transformations: cli.log_transformations,
        canonical_orientation: cli.canonical_orientation,
    };
    let (outcomes, batch) = match (&cli.batch, cli.expr) {
        (Some(path), _) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return code(EXIT_INPUT);
                }
            };
            (run_batch(cli.command, &batch_entries(&text), &options), true)
        }
        (None, Some(input)) => (vec![run(&Request { command: cli.command, input, options })], false),
        (None, None) => unreachable!("clap requires an input"),
    };
    match cli.format {
        Format::Text => print_text(&outcomes, batch),
        Format::Json => {
            let json = if batch {
                let all: Vec<_> = outcomes.iter().map(|o| &o.report).collect();
                serde_json::to_string_pretty(&all)
            } else {
                serde_json::to_string_pretty(&outcomes[0].report)
            };
            println!("{}", json.expect("reports serialize"));
        }
    }
    // the text report already carries the error line
    for o in outcomes.iter().filter(|_| matches!(cli.format, Format::Json)) {
        if let Some(e) = &o.report.error {
            eprintln!("error: {}: {e}", o.report.input);
        }
    }
    code(batch_exit_code(&outcomes))
}
