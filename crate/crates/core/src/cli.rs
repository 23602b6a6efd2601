//! Command-line front end.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns a
//! [`CommandResult`] that knows how to print itself and which exit code to use.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::arith::{parse_rational, Place, Rational};
use crate::characters::{legendre, DyadicCharacter, Sign};
use crate::error::Result;
use crate::hilbert::{local_report, product_check, rousseau_check, LocalSymbolReport};
use crate::padic::{hensel_sqrt, isotropy_oracle, norm_test, Isotropy};
use crate::residue::{parse_quad, reciprocity_check, residue_symbol, Ring};
use crate::verify::{run_suite, Suite};

#[derive(Debug, Parser)]
#[command(name = "reciprocity", version, about = "Reciprocity-law symbols over Q, Q(i) and Q(w)")]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Legendre symbol of a rational a modulo an odd prime p.
    Legendre {
        #[arg(allow_hyphen_values = true)]
        a: String,
        p: u64,
    },
    /// One of the 2-adic characters λ_4, λ_8, λ_4λ_8 on a 2-adic unit.
    Character {
        #[arg(long)]
        which: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Hilbert symbol (a, b) at one place.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        place: String,
    },
    /// Local symbols over the support of (a, b) and their product.
    Product {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Rousseau's two-way product for distinct odd primes p, q.
    Rousseau { p: u64, q: u64 },
    /// A p-adic square root of x to relative precision N.
    PadicSqrt {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'N', default_value_t = crate::padic::DEFAULT_PRECISION)]
        n: u32,
    },
    /// Search for a solution of a x² + b y² = 1 in Q_p.
    Oracle {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(short = 'p')]
        p: u64,
    },
    /// Whether a is a norm from Q_p(√b).
    NormTest {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(short = 'p')]
        p: u64,
    },
    /// The m-th power residue symbol (arg / mod).
    Residue {
        #[arg(long)]
        m: u8,
        #[arg(long = "mod", allow_hyphen_values = true)]
        modulus: String,
        #[arg(long, allow_hyphen_values = true)]
        arg: String,
    },
    /// Both sides of the cubic or quartic reciprocity law for two primary primes.
    Reciprocity {
        #[arg(long)]
        m: u8,
        #[arg(long, allow_hyphen_values = true)]
        pi: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// Run one of the exhaustive verification suites.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        bound: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
    UsageError,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::UsageError => 2,
        }
    }
}

/// The outcome of one invocation: a status plus what to print.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    /// Structured payload; `None` for usage errors.
    pub payload: Option<Value>,
    /// Text for standard output.
    pub stdout: String,
    /// Text for the error stream.
    pub stderr: String,
}

impl CommandResult {
    fn usage(message: String) -> Self {
        CommandResult { status: Status::UsageError, payload: None, stdout: String::new(), stderr: message }
    }

    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }

    pub fn emit(&self) {
        if !self.stdout.is_empty() {
            print!("{}", self.stdout);
        }
        if !self.stderr.is_empty() {
            eprint!("{}", self.stderr);
        }
    }
}

struct Report {
    command: &'static str,
    inputs: Value,
    result: Value,
    entries: Option<Value>,
    text: String,
    passed: bool,
}

impl Report {
    fn new(command: &'static str, inputs: Value, result: Value, text: String) -> Self {
        Report { command, inputs, result, entries: None, text, passed: true }
    }

    fn into_result(self, as_json: bool) -> CommandResult {
        let mut doc = json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
        });
        if let Some(entries) = self.entries {
            doc["entries"] = entries;
        }
        let stdout = if as_json {
            format!("{doc}\n")
        } else {
            let mut text = self.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            text
        };
        let status = if self.passed { Status::Ok } else { Status::VerificationFailed };
        CommandResult { status, payload: Some(doc), stdout, stderr: String::new() }
    }
}

/// Parse `argv` (including the program name) and execute it.
pub fn run(argv: &[String]) -> CommandResult {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    status: Status::Ok,
                    payload: None,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => CommandResult::usage(rendered),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(report) => report.into_result(cli.json),
        Err(e) => CommandResult::usage(format!("error: {e}\n")),
    }
}

fn rational_json(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn entry_json(e: &LocalSymbolReport) -> Value {
    json!({
        "place": e.place.to_string(),
        "symbol": e.symbol,
        "t": e.t_value.as_ref().map(rational_json),
    })
}

fn dispatch(command: Command) -> Result<Report> {
    match command {
        Command::Legendre { a, p } => {
            let x = parse_rational(&a)?;
            let s = legendre(&x, p)?;
            Ok(Report::new("legendre", json!({"a": rational_json(&x), "p": p}), json!(s), s.to_string()))
        }
        Command::Character { which, a } => {
            let chi: DyadicCharacter = which.parse()?;
            let x = parse_rational(&a)?;
            let s = chi.by_formula(&x)?;
            Ok(Report::new("character", json!({"which": which, "a": rational_json(&x)}), json!(s), s.to_string()))
        }
        Command::Hilbert { a, b, place } => {
            let (x, y) = (parse_rational(&a)?, parse_rational(&b)?);
            let v: Place = place.parse()?;
            let e = local_report(&x, &y, v)?;
            let mut report = Report::new(
                "hilbert",
                json!({"a": rational_json(&x), "b": rational_json(&y), "place": v.to_string()}),
                json!(e.symbol),
                e.symbol.to_string(),
            );
            report.entries = Some(json!([entry_json(&e)]));
            Ok(report)
        }
        Command::Product { a, b } => {
            let (x, y) = (parse_rational(&a)?, parse_rational(&b)?);
            let r = product_check(&x, &y)?;
            let mut text = String::new();
            for e in &r.entries {
                text.push_str(&format!("{}: {}\n", e.place, e.symbol));
            }
            text.push_str(&format!("product: {}\n", r.product));
            let mut report = Report::new(
                "product",
                json!({"a": rational_json(&x), "b": rational_json(&y)}),
                json!(r.product),
                text,
            );
            report.entries = Some(Value::Array(r.entries.iter().map(entry_json).collect()));
            report.passed = r.product == Sign::Plus;
            Ok(report)
        }
        Command::Rousseau { p, q } => {
            let r = rousseau_check(p, q)?;
            let text = format!(
                "lambda_p(q): {}\nlambda_q(p): {}\nepsilon: {}\nlhs: {}\nrhs: {}\n",
                r.legendre_qp, r.legendre_pq, r.epsilon, r.lhs, r.rhs
            );
            let mut report = Report::new(
                "rousseau",
                json!({"p": p, "q": q}),
                json!({
                    "lhs": r.lhs,
                    "rhs": r.rhs,
                    "legendre_qp": r.legendre_qp,
                    "legendre_pq": r.legendre_pq,
                    "epsilon": r.epsilon,
                }),
                text,
            );
            report.passed = r.lhs == r.rhs;
            Ok(report)
        }
        Command::PadicSqrt { x, p, n } => {
            let v = parse_rational(&x)?;
            let root = hensel_sqrt(&v, p, n)?;
            let result = json!({
                "valuation": root.valuation(),
                "mantissa": root.mantissa().map(|m| m.to_string()),
                "precision": root.precision(),
                "display": root.to_string(),
            });
            Ok(Report::new("padic-sqrt", json!({"x": rational_json(&v), "p": p, "N": n}), result, root.to_string()))
        }
        Command::Oracle { a, b, p } => {
            let (x, y) = (parse_rational(&a)?, parse_rational(&b)?);
            let inputs = json!({"a": rational_json(&x), "b": rational_json(&y), "p": p});
            let (result, text) = match isotropy_oracle(&x, &y, p)? {
                Isotropy::Solvable(w) => (
                    json!({
                        "solvable": true,
                        "x": w.x.to_string(),
                        "y": w.y.to_string(),
                        "certified": w.certified,
                    }),
                    format!("solvable\nx = {}\ny = {}\n", w.x, w.y),
                ),
                Isotropy::NotSolvable { depth } => (
                    json!({"solvable": false, "depth": depth}),
                    format!("not solvable (no primitive zero modulo {p}^{depth})\n"),
                ),
            };
            Ok(Report::new("oracle", inputs, result, text))
        }
        Command::NormTest { a, b, p } => {
            let (x, y) = (parse_rational(&a)?, parse_rational(&b)?);
            let is_norm = norm_test(&x, &y, p)?;
            Ok(Report::new(
                "norm-test",
                json!({"a": rational_json(&x), "b": rational_json(&y), "p": p}),
                json!(is_norm),
                is_norm.to_string(),
            ))
        }
        Command::Residue { m, modulus, arg } => {
            let ring = Ring::for_order(m)?;
            let (pi, alpha) = (parse_quad(&modulus, ring)?, parse_quad(&arg, ring)?);
            let chi = residue_symbol(alpha, pi, m)?;
            Ok(Report::new(
                "residue",
                json!({"m": m, "mod": pi.to_string(), "arg": alpha.to_string()}),
                json!(chi),
                chi.to_string(),
            ))
        }
        Command::Reciprocity { m, pi, theta } => {
            let ring = Ring::for_order(m)?;
            let (pi, theta) = (parse_quad(&pi, ring)?, parse_quad(&theta, ring)?);
            let (lhs, rhs) = reciprocity_check(pi, theta, m)?;
            let mut report = Report::new(
                "reciprocity",
                json!({"m": m, "pi": pi.to_string(), "theta": theta.to_string()}),
                json!({"lhs": lhs, "rhs": rhs}),
                format!("lhs: {lhs}\nrhs: {rhs}\n"),
            );
            report.passed = lhs == rhs;
            Ok(report)
        }
        Command::Verify { suite, bound } => {
            let suite: Suite = suite.parse()?;
            let bound = bound.unwrap_or_else(|| suite.default_bound());
            let r = run_suite(suite, bound)?;
            let mut text = format!("suite {} (bound {}): {} cases, {} failed\n", r.suite, r.bound, r.cases, r.failures.len());
            for f in &r.failures {
                text.push_str(&format!("FAIL {}: {}\n", f.inputs, f.detail));
            }
            let failures: Vec<Value> =
                r.failures.iter().map(|f| json!({"inputs": f.inputs, "detail": f.detail})).collect();
            let mut report = Report::new(
                "verify",
                json!({"suite": r.suite.name(), "bound": r.bound}),
                json!({"cases": r.cases, "passed": r.passed(), "failures": failures}),
                text,
            );
            report.passed = r.passed();
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> CommandResult {
        let argv: Vec<String> = std::iter::once("reciprocity").chain(args.iter().copied()).map(String::from).collect();
        run(&argv)
    }

    #[test]
    fn legendre_example() {
        let r = call(&["legendre", "2", "7"]);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.stdout, "+1\n");
    }

    #[test]
    fn product_table() {
        let r = call(&["product", "3", "5"]);
        assert_eq!(r.exit_code(), 0);
        assert_eq!(r.stdout, "inf: +1\n2: +1\n3: -1\n5: -1\nproduct: +1\n");
    }

    #[test]
    fn zero_argument_is_usage_error() {
        let r = call(&["hilbert", "0", "5", "--place", "3"]);
        assert_eq!(r.exit_code(), 2);
        assert!(r.stdout.is_empty());
        assert!(!r.stderr.is_empty());
    }

    #[test]
    fn negative_and_fractional_arguments() {
        assert_eq!(call(&["hilbert", "-1", "-1", "--place", "inf"]).stdout, "-1\n");
        assert_eq!(call(&["character", "--which", "8", "-3/5"]).status, Status::Ok);
    }

    #[test]
    fn unknown_command() {
        assert_eq!(call(&["frobnicate"]).exit_code(), 2);
        assert_eq!(call(&[]).exit_code(), 2);
    }
}
