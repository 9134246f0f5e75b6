//! Command-line front end for the ordinal workbench.
//!
//! Exit status: 0 on success and on passing suites, 1 when a suite or a
//! hull check finds a witness or `fmap` is given a term outside `dom(F)`,
//! 2 on malformed terms and bad flags.

use std::cmp::Ordering;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ordiag::collapse_map::{self, apply_f, k_section_hi, k_section_lo};
use ordiag::diagram::{self, Diagram};
use ordiag::harness::{
    self, check_facts, check_injectivity, check_ll_equivalence, check_total_order, check_veblen_laws,
    enumerate, Oo, Pi, TermSpace, TermSystem, TripleMode, Vb,
};
use ordiag::hull::{consistency_report, consistency_split, saturate_in};
use ordiag::report::PropertyReport;
use ordiag::syntax::ParseError;
use ordiag::Error;

#[derive(Debug, Parser)]
#[command(name = "ordiag", version, about = "Ordinal diagrams, Veblen terms and collapsing hulls")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Term system the command works in.
    #[arg(long, global = true, value_enum, default_value_t = System::Oo)]
    pub system: System,

    /// Emit a JSON envelope `{command, inputs, result|report}`.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum System {
    Oo,
    Vb,
    Pi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Order,
    Facts,
    Hull,
    Embedding,
    Veblen,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a term and show it unnormalized.
    Parse { term: String },
    /// Print the normal form.
    Nf { term: String },
    /// Compare two terms, printing `<`, `=` or `>`.
    Cmp { a: String, b: String },
    /// K-section of a term (outermost collapse subterms).
    Ksec { term: String },
    /// Natural (Hessenberg) sum of two diagrams.
    Add { a: String, b: String },
    /// Whether `a ≪ b` (collapsibly less).
    Ll { a: String, b: String },
    /// Saturate the hull D(alpha) and cross-check it against the order.
    Dsim {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 6)]
        budget: usize,
        /// Node bound of the terms checked against the hull.
        #[arg(long)]
        space_size: Option<usize>,
    },
    /// Apply the substitution F = [π := σ] to a pi-system term.
    Fmap { term: String },
    /// List every normal form up to a node bound, ascending.
    Enum {
        #[arg(long)]
        max_nodes: usize,
    },
    /// Run an order-law suite.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        max_nodes: usize,
        /// Hull budget for `--suite hull`; defaults to max-nodes + 4, at most 9.
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.exit_code() == 0 {
                Outcome::ok(text)
            } else {
                Outcome::usage(text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => Outcome::usage(render_error(&e)),
    }
}

fn render_error(e: &Error) -> String {
    match e {
        Error::Parse(p) => format!("error: {p}\n{}\n", p.caret()),
        other => format!("error: {other}\n"),
    }
}

fn ordering_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

struct Rendered {
    text: String,
    json: Value,
    failed: bool,
}

impl Rendered {
    fn plain(text: impl Into<String>, json: Value) -> Self {
        Rendered {
            text: text.into(),
            json,
            failed: false,
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let (name, inputs, key, rendered) = match &cli.command {
        Command::Parse { term } => ("parse", json!({ "term": term }), "result", in_system(cli.system, |s| s.parse(term))?),
        Command::Nf { term } => ("nf", json!({ "term": term }), "result", in_system(cli.system, |s| s.nf(term))?),
        Command::Cmp { a, b } => ("cmp", json!({ "a": a, "b": b }), "result", in_system(cli.system, |s| s.cmp(a, b))?),
        Command::Ksec { term } => ("ksec", json!({ "term": term }), "result", ksec(cli.system, term)?),
        Command::Add { a, b } => {
            require(cli.system, System::Oo, "add")?;
            let (x, y) = (diagram_arg(a)?, diagram_arg(b)?);
            let sum = diagram::natural_sum(&x, &y);
            ("add", json!({ "a": a, "b": b }), "result", Rendered::plain(sum.to_string(), json!(sum.to_string())))
        }
        Command::Ll { a, b } => {
            require(cli.system, System::Oo, "ll")?;
            let (x, y) = (diagram_arg(a)?, diagram_arg(b)?);
            let ll = diagram::collapsibly_less(&x, &y);
            ("ll", json!({ "a": a, "b": b }), "result", Rendered::plain(ll.to_string(), json!(ll)))
        }
        Command::Dsim {
            alpha,
            budget,
            space_size,
        } => {
            require(cli.system, System::Oo, "dsim")?;
            let inputs = json!({ "alpha": alpha, "budget": budget, "space_size": space_size });
            ("dsim", inputs, "report", dsim(alpha, *budget, *space_size)?)
        }
        Command::Fmap { term } => {
            let t = collapse_map::parse(term)?.normalize();
            let rendered = match apply_f(&t) {
                Ok(image) => Rendered::plain(image.to_string(), json!({ "image": image.to_string() })),
                Err(Error::Domain { subterm, reason }) => Rendered {
                    text: format!("not in dom(F): {subterm} ({reason})"),
                    json: json!({ "domain_error": { "subterm": subterm, "reason": reason } }),
                    failed: true,
                },
                Err(other) => return Err(other),
            };
            ("fmap", json!({ "term": term }), "result", rendered)
        }
        Command::Enum { max_nodes } => {
            let inputs = json!({ "system": system_name(cli.system), "max_nodes": max_nodes });
            ("enum", inputs, "result", in_system(cli.system, |s| s.list(*max_nodes))?)
        }
        Command::Check {
            suite,
            max_nodes,
            budget,
        } => {
            let inputs = json!({
                "suite": format!("{suite:?}").to_lowercase(),
                "system": system_name(cli.system),
                "max_nodes": max_nodes,
                "budget": budget,
                "seed": cli.seed,
            });
            let report = check(cli.system, *suite, *max_nodes, *budget, cli.seed)?;
            let failed = !report.passed();
            let rendered = Rendered {
                text: report.to_string(),
                json: serde_json::to_value(&report).expect("reports serialize"),
                failed,
            };
            ("check", inputs, "report", rendered)
        }
    };

    let mut stdout = if cli.json {
        let mut envelope = serde_json::Map::new();
        envelope.insert("command".into(), json!(name));
        envelope.insert("inputs".into(), inputs);
        envelope.insert(key.into(), rendered.json);
        serde_json::to_string_pretty(&Value::Object(envelope)).expect("json")
    } else if name == "dsim" {
        serde_json::to_string_pretty(&rendered.json).expect("json")
    } else {
        rendered.text
    };
    stdout.push('\n');
    Ok(Outcome {
        code: if rendered.failed { 1 } else { 0 },
        stdout,
        stderr: String::new(),
    })
}

fn system_name(s: System) -> &'static str {
    match s {
        System::Oo => "oo",
        System::Vb => "vb",
        System::Pi => "pi",
    }
}

fn require(actual: System, wanted: System, command: &str) -> Result<(), Error> {
    if actual == wanted {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "`{command}` works in --system {}, not {}",
            system_name(wanted),
            system_name(actual)
        )))
    }
}

fn diagram_arg(src: &str) -> Result<Diagram, ParseError> {
    Ok(diagram::parse(src)?.normalize())
}

/// Per-system operations shared by `parse`, `nf`, `cmp` and `enum`.
struct Ops<S>(std::marker::PhantomData<S>);

impl<S: TermSystem> Ops<S> {
    fn parse(&self, src: &str) -> Result<Rendered, Error> {
        let raw = S::parse(src)?;
        let normal = S::normalize(&raw);
        Ok(Rendered::plain(
            raw.to_string(),
            json!({
                "raw": raw.to_string(),
                "normal_form": normal.to_string(),
                "nodes": S::node_count(&raw),
                "is_normal": raw == normal,
            }),
        ))
    }

    fn nf(&self, src: &str) -> Result<Rendered, Error> {
        let t = S::normalize(&S::parse(src)?);
        Ok(Rendered::plain(t.to_string(), json!(t.to_string())))
    }

    fn cmp(&self, a: &str, b: &str) -> Result<Rendered, Error> {
        let x = S::normalize(&S::parse(a)?);
        let y = S::normalize(&S::parse(b)?);
        let sym = ordering_symbol(S::compare(&x, &y));
        Ok(Rendered::plain(sym, json!(sym)))
    }

    fn list(&self, max_nodes: usize) -> Result<Rendered, Error> {
        let space: TermSpace<S::Term> = enumerate::<S>(max_nodes)?;
        let terms: Vec<String> = space.iter().map(|t| t.to_string()).collect();
        Ok(Rendered::plain(terms.join("\n"), json!(terms)))
    }
}

fn in_system<F>(system: System, f: F) -> Result<Rendered, Error>
where
    F: Fn(&dyn OpsDyn) -> Result<Rendered, Error>,
{
    match system {
        System::Oo => f(&Ops::<Oo>(Default::default())),
        System::Vb => f(&Ops::<Vb>(Default::default())),
        System::Pi => f(&Ops::<Pi>(Default::default())),
    }
}

trait OpsDyn {
    fn parse(&self, src: &str) -> Result<Rendered, Error>;
    fn nf(&self, src: &str) -> Result<Rendered, Error>;
    fn cmp(&self, a: &str, b: &str) -> Result<Rendered, Error>;
    fn list(&self, max_nodes: usize) -> Result<Rendered, Error>;
}

impl<S: TermSystem> OpsDyn for Ops<S> {
    fn parse(&self, src: &str) -> Result<Rendered, Error> {
        Ops::<S>::parse(self, src)
    }
    fn nf(&self, src: &str) -> Result<Rendered, Error> {
        Ops::<S>::nf(self, src)
    }
    fn cmp(&self, a: &str, b: &str) -> Result<Rendered, Error> {
        Ops::<S>::cmp(self, a, b)
    }
    fn list(&self, max_nodes: usize) -> Result<Rendered, Error> {
        Ops::<S>::list(self, max_nodes)
    }
}

fn set_text(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn ksec(system: System, src: &str) -> Result<Rendered, Error> {
    match system {
        System::Oo => {
            let t = diagram_arg(src)?;
            let members: Vec<String> = diagram::k_section(&t).iter().map(|m| m.to_string()).collect();
            let kmax = diagram::k_max(&t).to_string();
            Ok(Rendered::plain(
                set_text(&members),
                json!({ "members": members, "k_max": kmax }),
            ))
        }
        System::Pi => {
            let t = collapse_map::parse(src)?.normalize();
            let hi: Vec<String> = k_section_hi(&t).iter().map(|m| m.to_string()).collect();
            let lo: Vec<String> = k_section_lo(&t).iter().map(|m| m.to_string()).collect();
            Ok(Rendered::plain(
                format!("hi: {}\nlo: {}", set_text(&hi), set_text(&lo)),
                json!({ "hi": hi, "lo": lo }),
            ))
        }
        System::Vb => Err(Error::InvalidArgument(
            "Veblen terms have no collapse subterms; use --system oo or pi".into(),
        )),
    }
}

fn dsim(alpha: &str, budget: usize, space_size: Option<usize>) -> Result<Rendered, Error> {
    let alpha = diagram_arg(alpha)?;
    let space_size = space_size.unwrap_or(budget.min(4));
    if space_size > budget {
        return Err(Error::InvalidArgument(format!(
            "--space-size {space_size} exceeds --budget {budget}"
        )));
    }
    if budget < 2 {
        return Err(Error::InvalidArgument(format!(
            "hull budget must be at least 2, got {budget}"
        )));
    }
    let universe = enumerate::<Oo>(budget)?;
    let hull = saturate_in(&alpha, budget, &universe.terms)?;
    let space = universe.filtered(|t| t.node_count() <= space_size);
    let (sound, complete) = consistency_split(&hull, &space.terms, diagram::compare);
    let mut report = sound.clone().merge(complete.clone());
    report.suite = "hull".into();
    let members: Vec<Value> = hull
        .members
        .iter()
        .zip(&hull.trace)
        .map(|(m, how)| json!({ "term": m.to_string(), "derivation": how }))
        .collect();
    let json = json!({
        "members": members,
        "checks": {
            "sound": sound.passed(),
            "complete": complete.passed(),
            "checked": report.checked,
            "witnesses": report.witnesses,
        }
    });
    let mut text = String::new();
    let _ = write!(text, "{report}");
    Ok(Rendered {
        text,
        json,
        failed: !report.passed(),
    })
}

fn check(system: System, suite: Suite, max_nodes: usize, budget: Option<usize>, seed: u64) -> Result<PropertyReport, Error> {
    let triples = |n: usize| {
        if n.pow(3) <= 10_000_000 {
            TripleMode::Exhaustive
        } else {
            TripleMode::Sampled { count: 100_000, seed }
        }
    };
    Ok(match (suite, system) {
        (Suite::Order, System::Oo) => {
            let s = enumerate::<Oo>(max_nodes)?;
            check_total_order::<Oo>(&s, triples(s.len()))
        }
        (Suite::Order, System::Vb) => {
            let s = enumerate::<Vb>(max_nodes)?;
            check_total_order::<Vb>(&s, triples(s.len()))
        }
        (Suite::Order, System::Pi) => {
            let s = enumerate::<Pi>(max_nodes)?;
            check_total_order::<Pi>(&s, triples(s.len()))
        }
        (Suite::Facts, System::Oo) => {
            let s = enumerate::<Oo>(max_nodes)?;
            let alphas = s.filtered(|t| t.node_count() < max_nodes.max(2));
            check_facts(&s.terms, &alphas.terms)
                .merge(check_injectivity(&s.terms))
                .merge(check_ll_equivalence(&s.terms))
        }
        (Suite::Hull, System::Oo) => {
            let budget = budget.unwrap_or((max_nodes + 4).min(harness::DEFAULT_NODE_CAP));
            if budget < max_nodes {
                return Err(Error::InvalidArgument(format!(
                    "--budget {budget} is below --max-nodes {max_nodes}"
                )));
            }
            let universe = enumerate::<Oo>(budget)?;
            let xis = universe.filtered(|t| t.node_count() <= max_nodes);
            let alphas = universe.filtered(|t| t.node_count() < max_nodes.max(2));
            let mut report = PropertyReport::new("hull");
            for alpha in alphas.iter() {
                let hull = saturate_in(alpha, budget, &universe.terms)?;
                report = report.merge(consistency_report(&hull, &xis.terms, diagram::compare));
            }
            report
        }
        (Suite::Embedding, System::Pi) => {
            let s = enumerate::<Pi>(max_nodes)?;
            collapse_map::check_embedding(&s.terms)
        }
        (Suite::Veblen, System::Vb) => {
            let s = enumerate::<Vb>(max_nodes)?;
            check_veblen_laws(&s.terms)
        }
        (suite, system) => {
            let wanted = match suite {
                Suite::Facts | Suite::Hull => "oo",
                Suite::Embedding => "pi",
                Suite::Veblen => "vb",
                Suite::Order => unreachable!(),
            };
            return Err(Error::InvalidArgument(format!(
                "suite {} runs in --system {wanted}, not {}",
                format!("{suite:?}").to_lowercase(),
                system_name(system)
            )));
        }
    })
}
