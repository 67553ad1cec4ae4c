//! Command-line front end for `roth-core`.
//!
//! [`run`] does all the work and returns the exit code and both output
//! streams, so the binary is a thin wrapper and tests can drive it in
//! process.

use std::fmt::Display;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use roth_core::bundle::{surjection_exists, verify_full_rank, witness_matrix, BundleMapSpec};
use roth_core::chow::ChowContext;
use roth_core::cohomology::{harris_counterexample_search, line_bundle_cohomology, BundleContext};
use roth_core::expr::evaluate_str;
use roth_core::roth::{castelnuovo_params, report, verify_identities, RothData};
use roth_core::scroll::{
    degenerates_to, generic_hyperplane_section, parse_tuple, subscroll_normal_bundle, ScrollSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "roth",
    version,
    about = "Rational normal scrolls, Roth varieties and their intersection theory"
)]
struct Cli {
    /// Print results as JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rational normal scrolls
    #[command(subcommand)]
    Scroll(ScrollCmd),
    /// Maps between split bundles on P^1
    #[command(subcommand)]
    Bundle(BundleCmd),
    /// Roth varieties
    #[command(subcommand)]
    Roth(RothCmd),
    /// Chow ring of the desingularised scroll
    #[command(subcommand)]
    Chow(ChowCmd),
    /// Cohomology of O(aH + bF) on P(E) for E split over P^1
    Cohom(CohomArgs),
    /// Genus bounds
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Plane-curve degrees violating the claimed regularity threshold
    HarrisSearch(HarrisArgs),
}

#[derive(Subcommand, Debug)]
enum ScrollCmd {
    /// Dimension, degree and ambient space of a scroll
    Info {
        #[arg(value_name = "TUPLE", value_parser = tuple)]
        scroll: Tuple,
    },
    /// Whether the first scroll degenerates to the second
    Degenerates {
        #[arg(value_name = "GENERAL", value_parser = tuple)]
        general: Tuple,
        #[arg(value_name = "SPECIAL", value_parser = tuple)]
        special: Tuple,
    },
    /// Generic hyperplane section
    Section {
        #[arg(value_name = "TUPLE", value_parser = tuple)]
        scroll: Tuple,
    },
    /// Normal bundle of the curve S_{a_i} (index into the sorted twists)
    NormalBundle {
        #[arg(value_name = "TUPLE", value_parser = tuple)]
        scroll: Tuple,
        #[arg(long)]
        select: usize,
    },
}

#[derive(Subcommand, Debug)]
enum BundleCmd {
    /// Whether O(a_1)+...+O(a_n) maps onto O(b_1)+...+O(b_m)
    Surjects {
        #[arg(value_name = "A", value_parser = tuple, allow_hyphen_values = true)]
        source: Tuple,
        #[arg(value_name = "B", value_parser = tuple, allow_hyphen_values = true)]
        target: Tuple,
        /// Print the monomial witness matrix
        #[arg(long)]
        witness: bool,
        /// Check the witness has full rank at every point of P^1
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand, Debug)]
enum RothCmd {
    /// Invariants of a Roth variety in S_{0,0,a_1,...,a_(n-1)}
    Report {
        #[command(flatten)]
        roth: RothArgs,
        /// Recompute the invariants in the Chow ring
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Args, Debug)]
struct RothArgs {
    /// Positive twists a_1,...,a_(n-1)
    #[arg(long, value_parser = tuple)]
    a: Tuple,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
}

#[derive(Subcommand, Debug)]
enum ChowCmd {
    /// Evaluate a ring expression in H, F, K, X, PL, B, C, CX
    Eval {
        /// Positive twists a_1,...,a_(n-1)
        #[arg(long, value_parser = tuple)]
        a: Tuple,
        /// Needed for X and CX
        #[arg(long, allow_negative_numbers = true)]
        b: Option<i64>,
        #[arg(value_name = "EXPR", allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Args, Debug)]
struct CohomArgs {
    #[arg(long, value_parser = tuple)]
    twists: Tuple,
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, allow_negative_numbers = true)]
    b: i64,
}

#[derive(Subcommand, Debug)]
enum BoundCmd {
    /// M, epsilon and the Castelnuovo-Harris bound for degree d, dimension n in P^N
    Castelnuovo {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long = "N", allow_negative_numbers = true)]
        ambient: i64,
    },
}

#[derive(Args, Debug)]
struct HarrisArgs {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    max: i64,
}

/// A comma-separated integer tuple such as `0,0,2,3`.
#[derive(Debug, Clone)]
struct Tuple(Vec<i64>);

impl std::ops::Deref for Tuple {
    type Target = Vec<i64>;
    fn deref(&self) -> &Vec<i64> {
        &self.0
    }
}

fn tuple(s: &str) -> Result<Tuple, String> {
    parse_tuple(s)
        .map(Tuple)
        .ok_or_else(|| "expected comma-separated integers without spaces, e.g. 0,0,2,3".into())
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    text: String,
    json: Value,
    /// Set when the command ran but found a failed check.
    failed: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Self {
            text: text.into(),
            json,
            failed: false,
        }
    }
}

struct DomainError(String);

impl<E: Display> From<E> for DomainError {
    fn from(e: E) -> Self {
        DomainError(e.to_string())
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let json = args.iter().skip(1).any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                };
            }
            return failure(EXIT_USAGE, "usage", rendered.trim_end(), json);
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => Outcome {
            code: if out.failed { EXIT_DOMAIN } else { EXIT_OK },
            stdout: if cli.json {
                format!("{}\n", out.json)
            } else {
                format!("{}\n", out.text)
            },
            stderr: String::new(),
        },
        Err(DomainError(msg)) => failure(EXIT_DOMAIN, "domain", &format!("error: {msg}"), cli.json),
    }
}

fn failure(code: i32, kind: &str, message: &str, json: bool) -> Outcome {
    Outcome {
        code,
        stdout: if json {
            format!("{}\n", json!({ "error": { "kind": kind, "message": message } }))
        } else {
            String::new()
        },
        stderr: format!("{message}\n"),
    }
}

fn big(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn dispatch(cmd: &Command) -> Result<Output, DomainError> {
    match cmd {
        Command::Scroll(c) => scroll(c),
        Command::Bundle(c) => bundle(c),
        Command::Roth(c) => roth(c),
        Command::Chow(c) => chow(c),
        Command::Cohom(c) => cohom(c),
        Command::Bound(c) => bound(c),
        Command::HarrisSearch(c) => harris(c),
    }
}

fn scroll(cmd: &ScrollCmd) -> Result<Output, DomainError> {
    Ok(match cmd {
        ScrollCmd::Info { scroll } => {
            let s = ScrollSpec::new(scroll)?;
            let vertex = s.vertex_dim();
            let text = [
                s.to_string(),
                format!("dim={}", s.dim()),
                format!("degree={}", s.degree()),
                format!("ambient_dim={}", s.ambient_dim()),
                format!("vertex_dim={}", vertex.map_or("none".into(), |v| v.to_string())),
            ]
            .join("\n");
            let json = json!({
                "scroll": s.twists(),
                "name": s.to_string(),
                "dim": s.dim(),
                "degree": s.degree(),
                "ambient_dim": s.ambient_dim(),
                "vertex_dim": vertex,
            });
            Output::new(text, json)
        }
        ScrollCmd::Degenerates { general, special } => {
            let (g, s) = (ScrollSpec::new(general)?, ScrollSpec::new(special)?);
            let verdict = degenerates_to(&g, &s);
            let json = json!({ "general": g.twists(), "special": s.twists(), "degenerates": verdict });
            Output::new(verdict.to_string(), json)
        }
        ScrollCmd::Section { scroll } => {
            let s = ScrollSpec::new(scroll)?;
            let section = generic_hyperplane_section(&s)?;
            let json = json!({ "scroll": s.twists(), "section": section.twists() });
            Output::new(section.to_string(), json)
        }
        ScrollCmd::NormalBundle { scroll, select } => {
            let s = ScrollSpec::new(scroll)?;
            let normal = subscroll_normal_bundle(&s, *select)?;
            let text = normal
                .iter()
                .map(|t| format!("O({t})"))
                .collect::<Vec<_>>()
                .join(" + ");
            let json = json!({ "scroll": s.twists(), "selected": select, "normal_bundle": normal });
            Output::new(text, json)
        }
    })
}

fn bundle(cmd: &BundleCmd) -> Result<Output, DomainError> {
    let BundleCmd::Surjects {
        source,
        target,
        witness,
        verify,
    } = cmd;
    let spec = BundleMapSpec::new(source, target)?;
    let onto = surjection_exists(&spec);
    let mut lines = vec![onto.to_string()];
    let mut matrix = Value::Null;
    let mut full_rank = Value::Null;
    let mut failed = false;
    if onto && (*witness || *verify) {
        let t = witness_matrix(&spec)?;
        if *witness {
            lines.push(t.to_string());
            matrix = json!(t.to_strings());
        }
        if *verify {
            let ok = verify_full_rank(&t)?;
            failed = !ok;
            lines.push(format!("full_rank={ok}"));
            full_rank = json!(ok);
        }
    }
    let mut sorted_source = source.to_vec();
    let mut sorted_target = target.to_vec();
    sorted_source.sort_unstable();
    sorted_target.sort_unstable();
    let json = json!({
        "source": sorted_source,
        "target": sorted_target,
        "surjects": onto,
        "witness": matrix,
        "full_rank": full_rank,
    });
    Ok(Output {
        text: lines.join("\n"),
        json,
        failed,
    })
}

fn roth(cmd: &RothCmd) -> Result<Output, DomainError> {
    let RothCmd::Report { roth, verify } = cmd;
    let data = RothData::new(&roth.a, roth.b)?;
    let rep = report(&data)?;
    let mut text = rep.to_text();
    let mut verification = Value::Null;
    let mut failed = false;
    if *verify {
        let v = verify_identities(&data);
        for c in &v.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            text.push_str(&format!(
                "\ncheck {}: {status} (expected {}, got {})",
                c.name, c.expected, c.actual
            ));
        }
        failed = !v.all_passed();
        verification = json!({ "all_passed": v.all_passed(), "checks": v.checks });
    }
    let json = json!({ "report": rep, "verification": verification });
    Ok(Output { text, json, failed })
}

fn chow(cmd: &ChowCmd) -> Result<Output, DomainError> {
    let ChowCmd::Eval { a, b, expr } = cmd;
    let ctx = ChowContext::roth(a)?;
    let eval = evaluate_str(expr, &ctx, *b)?;
    let mut text = eval.class.to_string();
    if let Some(d) = &eval.degree {
        text.push_str(&format!("\ndegree={d}"));
    }
    let terms: Vec<Value> = eval
        .class
        .terms()
        .map(|(h, f, c)| json!({ "h": h, "f": f, "coeff": big(c) }))
        .collect();
    let json = json!({
        "expression": expr,
        "a": a.as_slice(),
        "b": b,
        "rank": ctx.rank(),
        "twist_sum": ctx.twist_sum(),
        "class": eval.class.to_string(),
        "terms": terms,
        "degree": eval.degree.as_ref().map(big),
    });
    Ok(Output::new(text, json))
}

fn cohom(args: &CohomArgs) -> Result<Output, DomainError> {
    let ctx = BundleContext::new(&args.twists)?;
    let table = line_bundle_cohomology(&ctx, args.a, args.b);
    let json = json!({
        "twists": ctx.twists(),
        "a": args.a,
        "b": args.b,
        "h": table,
        "euler_characteristic": big(&table.euler_characteristic()),
    });
    Ok(Output::new(table.to_string(), json))
}

fn bound(cmd: &BoundCmd) -> Result<Output, DomainError> {
    let BoundCmd::Castelnuovo { d, n, ambient } = cmd;
    let p = castelnuovo_params(*d, *n, *ambient)?;
    let text = format!("M={} ε={} bound={}", p.m, p.epsilon, p.bound);
    let json = json!({
        "d": d,
        "n": n,
        "N": ambient,
        "m": p.m,
        "epsilon": p.epsilon,
        "bound": big(&p.bound),
    });
    Ok(Output::new(text, json))
}

fn harris(args: &HarrisArgs) -> Result<Output, DomainError> {
    let degrees = harris_counterexample_search(args.n, args.max)?;
    let text = if degrees.is_empty() {
        "none".to_string()
    } else {
        degrees.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    };
    let json = json!({ "n": args.n, "max": args.max, "degrees": degrees });
    Ok(Output::new(text, json))
}
