//! Command-line surface: every expansion in the library plus the named
//! verification suites, with byte-deterministic text or JSON output.
//!
//! Data goes to stdout, diagnostics to stderr.  Exit codes: `0` success,
//! `1` verification failure, `2` usage error (unknown subcommand or suite,
//! malformed rational, order out of range).

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::poly::Poly;
use crate::rational::Rational;
use crate::series::Series;
use crate::symfun;
use crate::univalent::{self, GrunskyTable};
use crate::verify::{self, Suite};
use crate::virasoro::{self, LMinusForm};

#[derive(Parser)]
#[command(
    name = "schlicht",
    version,
    about = "Exact expansions around normalized univalent functions: \
             Waring/Faber polynomials, coefficient kernels, Grunsky tables, \
             and Virasoro generators",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Expansion order: series order, polynomial index, or table weight.
    #[arg(long, global = true, default_value_t = 8)]
    order: i64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Rational parameter p, written as "num" or "num/den".
    #[arg(long, global = true, default_value = "0", allow_hyphen_values = true)]
    p: String,

    /// Seed for the randomized verification draws.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest accepted --order (bounds runtime).
    #[arg(long, global = true, default_value_t = 16)]
    max_weight: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormArg {
    /// Expansion in powers of f.
    Series,
    /// Finite derivative-form expression.
    Derivative,
}

impl From<FormArg> for LMinusForm {
    fn from(f: FormArg) -> LMinusForm {
        match f {
            FormArg::Series => LMinusForm::Series,
            FormArg::Derivative => LMinusForm::Derivative,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the Waring polynomial P_n in a1..an (n = --order).
    Waring,
    /// Print the Faber polynomial Q_n in a1..an (n = --order, n >= 1).
    Faber,
    /// Print the one-variable Faber polynomial Phi_n over b1..bn as a
    /// polynomial in z (n = --order, n >= 1).
    Phi,
    /// Expand z^(p+2) f'^2 / f^(p+2) through z^--order.
    ExpandA,
    /// Expand z^(p+1) f'' / f^p through z^--order.
    ExpandB,
    /// Expand z^2 S_f (the Schwarzian kernel) through z^--order.
    Schwarzian,
    /// Expand the anomaly series Q(z) through z^--order.
    Qseries,
    /// Print the Grunsky table for all n + k <= --order (needs --order >= 2).
    Grunsky,
    /// Print a centrally extended Virasoro generator as a differential
    /// operator with component horizon --order.
    Op {
        /// Generator index n (n < 0 raises weight by |n|).
        #[arg(long, allow_hyphen_values = true)]
        index: i64,
        /// Construction used for the raising generators.
        #[arg(long, value_enum, default_value_t = FormArg::Derivative)]
        form: FormArg,
    },
    /// Run a verification suite: symfun | lemmas | prop31 | grunsky |
    /// virasoro | all.
    Verify { suite: String },
}

/// Everything `main` needs: exit code, stdout payload, stderr diagnostics.
pub fn run(argv: &[String]) -> (i32, String, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, rendered, String::new()),
                _ => (2, String::new(), rendered),
            };
        }
    };
    match execute(&cli) {
        Ok((code, out)) => (code, out, String::new()),
        Err(message) => (2, String::new(), format!("error: {message}\n")),
    }
}

fn execute(cli: &Cli) -> Result<(i32, String), String> {
    if cli.order < 0 {
        return Err(format!("--order must be nonnegative, got {}", cli.order));
    }
    if cli.order > cli.max_weight {
        return Err(format!(
            "--order {} exceeds --max-weight {}; raise --max-weight to allow it",
            cli.order, cli.max_weight
        ));
    }
    let n = cli.order;
    let out = match &cli.command {
        Command::Waring => {
            let vars = index_vars(n as usize);
            let poly = symfun::waring_p(n as usize, &vars).map_err(|e| e.to_string())?;
            render_poly(&poly, 'a', cli.format)
        }
        Command::Faber => {
            let vars = index_vars(n as usize);
            let poly = symfun::faber_q(n as usize, &vars).map_err(|e| e.to_string())?;
            render_poly(&poly, 'a', cli.format)
        }
        Command::Phi => {
            let vars = index_vars(n as usize);
            let coeffs = symfun::faber_phi(n as usize, &vars).map_err(|e| e.to_string())?;
            render_series(&Series::from_coeffs(0, coeffs), 'b', cli.format)
        }
        Command::ExpandA => {
            let p = parse_rational(&cli.p)?;
            render_series(&univalent::expand_a(&p, n), 'c', cli.format)
        }
        Command::ExpandB => {
            let p = parse_rational(&cli.p)?;
            render_series(&univalent::expand_b(&p, n), 'c', cli.format)
        }
        Command::Schwarzian => render_series(&univalent::schwarzian(n), 'c', cli.format),
        Command::Qseries => render_series(&univalent::q_series(n), 'c', cli.format),
        Command::Grunsky => {
            if n < 2 {
                return Err(format!("the grunsky table needs --order >= 2, got {n}"));
            }
            let table = GrunskyTable::closed_form(n);
            match cli.format {
                Format::Text => table.to_text(),
                Format::Json => table.to_json().to_string(),
            }
        }
        Command::Op { index, form } => {
            let op = virasoro::build_hat_with_form(*index, n, (*form).into());
            match cli.format {
                Format::Text => op.to_text(),
                Format::Json => op.to_json().to_string(),
            }
        }
        Command::Verify { suite } => return run_verify(cli, suite),
    };
    Ok((0, out + "\n"))
}

fn run_verify(cli: &Cli, suite: &str) -> Result<(i32, String), String> {
    let suite = Suite::parse(suite).ok_or_else(|| {
        format!("unknown suite {suite:?}; expected symfun, lemmas, prop31, grunsky, virasoro, or all")
    })?;
    let results = verify::run(suite, cli.order, cli.seed).map_err(|e| e.to_string())?;
    let failed = results.iter().filter(|r| !r.passed).count();
    let code = if failed == 0 { 0 } else { 1 };
    let out = match cli.format {
        Format::Text => {
            let mut lines: Vec<String> = results.iter().map(|r| r.describe()).collect();
            lines.push(format!(
                "suite {}: {}/{} checks passed",
                suite.name(),
                results.len() - failed,
                results.len()
            ));
            lines.join("\n") + "\n"
        }
        Format::Json => {
            json!({
                "suite": suite.name(),
                "order": cli.order,
                "seed": cli.seed,
                "passed": failed == 0,
                "results": results
                    .iter()
                    .map(|r| {
                        json!({
                            "name": r.name,
                            "passed": r.passed,
                            "detail": r.detail,
                        })
                    })
                    .collect::<Vec<_>>(),
            })
            .to_string()
                + "\n"
        }
    };
    Ok((code, out))
}

fn index_vars(n: usize) -> Vec<Poly> {
    (1..=n).map(|j| Poly::var(j as u16)).collect()
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    text.parse::<Rational>().map_err(|e| e.to_string())
}

fn render_poly(poly: &Poly, letter: char, format: Format) -> String {
    match format {
        Format::Text => poly.to_text(letter),
        Format::Json => poly.to_json().to_string(),
    }
}

fn render_series(series: &Series, letter: char, format: Format) -> String {
    match format {
        Format::Text => series.to_text("z", letter),
        Format::Json => series.to_json("z").to_string(),
    }
}
