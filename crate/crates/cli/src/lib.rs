//! The `toricalc` command line.
//!
//! [`execute`] does all the work and returns the exit code and both output
//! streams, so the binary is a thin shell around it and tests can drive it
//! in-process.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use toricalc_core::cones::{graded_generators, hilbert_function, relation_space};
use toricalc_core::git::{
    betti, delta, evaluate_invariants, group_from_delta, is_semistable, minimal_unstable_supports,
    orbit_census, LinearizedAction, Support,
};
use toricalc_core::polyhedra::{f_vector, Polyhedron};
use toricalc_core::serial::{format_rational, parse_rational};
use toricalc_core::Error;

/// Exact GIT quotients of affine space by subtori.
#[derive(Debug, Parser)]
#[command(name = "toricalc", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Args)]
struct PolytopeArg {
    /// Polyhedron JSON file, or `-` for stdin.
    #[arg(long, value_name = "FILE")]
    polytope: String,
}

#[derive(Debug, Args)]
struct ActionArg {
    /// Linearized action JSON file, or `-` for stdin.
    #[arg(long, value_name = "FILE")]
    action: String,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// The polyhedron of an action.
    Delta(ActionArg),
    /// The action recovered from a polyhedron.
    Group(PolytopeArg),
    /// Generators of the graded semigroup.
    Generators(PolytopeArg),
    /// Number of lattice points of the r-th dilate.
    Hilbert {
        #[command(flatten)]
        input: PolytopeArg,
        #[arg(long, value_name = "R")]
        degree: u64,
    },
    /// Binomial relations among generators up to a degree bound.
    Relations {
        #[command(flatten)]
        input: PolytopeArg,
        #[arg(long, value_name = "D")]
        bound: u64,
    },
    /// Whether points vanishing exactly on a support are semistable.
    Semistable {
        #[command(flatten)]
        input: ActionArg,
        /// Comma-separated 1-based coordinates; empty means the open torus.
        #[arg(long, value_name = "CSV", default_value = "")]
        support: String,
    },
    /// Minimal unstable supports.
    Unstable(ActionArg),
    /// Face counts by dimension.
    Fvector(PolytopeArg),
    /// Even Betti numbers of a simple polyhedron.
    Betti(PolytopeArg),
    /// Torus orbits by dimension.
    Census(PolytopeArg),
    /// Invariant generators evaluated at a rational point.
    Evaluate {
        #[command(flatten)]
        input: ActionArg,
        /// Comma-separated coordinates, fractions allowed.
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_name = "D", default_value_t = 1)]
        bound: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Domain(Error),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e)
        } else {
            Failure::Malformed(e.to_string())
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read_input(path: &str, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Run<String> {
    if path == "-" {
        stdin().map_err(|e| Failure::Malformed(format!("reading stdin: {e}")))
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{path}: {e}")))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Run<T> {
    serde_json::from_str(text).map_err(|e| Failure::Malformed(format!("invalid {what}: {e}")))
}

fn parse_support(csv: &str) -> Run<Support> {
    let indices = csv
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Failure::Malformed(format!("bad support index {s:?}")))
        })
        .collect::<Run<Vec<usize>>>()?;
    Ok(Support::from_one_based(&indices)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn run(verb: Verb, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Run<Value> {
    let mut polytope = |arg: &PolytopeArg| -> Run<Polyhedron> {
        parse_json(&read_input(&arg.polytope, stdin)?, "polyhedron")
    };
    let out = match verb {
        Verb::Delta(a) => to_value(&delta(&load_action(&a, stdin)?)?),
        Verb::Group(p) => to_value(&group_from_delta(&polytope(&p)?)?),
        Verb::Generators(p) => json!({ "generators": to_value(&graded_generators(&polytope(&p)?)?) }),
        Verb::Hilbert { input, degree } => {
            json!({ "degree": degree, "value": hilbert_function(&polytope(&input)?, degree)? })
        }
        Verb::Relations { input, bound } => to_value(&relation_space(&polytope(&input)?, bound)?),
        Verb::Semistable { input, support } => {
            let support = parse_support(&support)?;
            json!({ "semistable": is_semistable(&load_action(&input, stdin)?, &support)? })
        }
        Verb::Unstable(a) => {
            json!({ "minimal_unstable_supports": to_value(&minimal_unstable_supports(&load_action(&a, stdin)?)?) })
        }
        Verb::Fvector(p) => to_value(&f_vector(&polytope(&p)?)?),
        Verb::Betti(p) => {
            let b = betti(&polytope(&p)?)?;
            json!({ "betti": b.numbers, "bounded": b.bounded })
        }
        Verb::Census(p) => {
            let census: serde_json::Map<String, Value> = orbit_census(&polytope(&p)?)?
                .into_iter()
                .map(|(dim, count)| (dim.to_string(), json!(count)))
                .collect();
            json!({ "orbits": census })
        }
        Verb::Evaluate { input, point, bound } => {
            let x = point
                .split(',')
                .map(|s| parse_rational(s.trim()))
                .collect::<toricalc_core::Result<Vec<_>>>()?;
            let values = evaluate_invariants(&load_action(&input, stdin)?, &x, bound)?;
            json!({ "values": to_value(&values), "point": x.iter().map(format_rational).collect::<Vec<_>>() })
        }
    };
    Ok(out)
}

fn load_action(arg: &ActionArg, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Run<LinearizedAction> {
    parse_json(&read_input(&arg.action, stdin)?, "action")
}

/// Runs one command. `stdin` is only consulted when an input path is `-`.
pub fn execute<I, T>(argv: I, mut stdin: impl FnMut() -> std::io::Result<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match run(cli.verb, &mut stdin) {
        Ok(v) => Outcome {
            code: 0,
            stdout: format!("{}\n", serde_json::to_string(&v).expect("json values serialize")),
            stderr: String::new(),
        },
        Err(Failure::Domain(e)) => Outcome { code: 1, stdout: String::new(), stderr: format!("{e}\n") },
        Err(Failure::Malformed(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("InvalidInput: {msg}\n"),
        },
    }
}
