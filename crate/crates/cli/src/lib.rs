//! Library behind the `disc-deriv` binary: evaluate derivations `D_h` of the disc algebra, build and
//! check control-measure certificates, and emit plot-ready series.
//!
//! Exit codes: 0 success, 1 refuted check, 2 input error, 3 precondition
//! error.

pub mod spec;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use std::ffi::OsString;

use clap::{Parser, Subcommand};
use disc_deriv::bmoa::{default_estimates, SeminormEstimate, DEFAULT_DEPTH};
use disc_deriv::circle::{sup_norm, sup_norm_refined, u_of};
use disc_deriv::derivation::extract_symbol;
use disc_deriv::measure::{lambda_inner_closed, lambda_inner_quad};
use disc_deriv::pietsch::{build_certificate, verify_certificate};
use disc_deriv::{AnalyticPoly, DerivationForm, SymbolH1};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "disc-deriv",
    version,
    about = "Derivations of the disc algebra with H¹ symbols"
)]
struct Cli {
    /// Boundary grid size for sup norms; angular size for lp-check.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Tolerance for extract, gram and lp-check.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate D_h(f)(g).
    Eval {
        /// Symbol spec: a file or inline JSON.
        symbol: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Recover the symbol coefficients from the bilinear form.
    Extract {
        symbol: String,
        /// Number of coefficients (default: degree of the symbol).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Gram matrix D(z^j)(z^k), its singular values and numerical rank.
    Gram {
        symbol: String,
        #[arg(long, default_value_t = 12)]
        n: usize,
    },
    /// Build and sample-check a control measure for D_h.
    Pietsch {
        symbol: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        deg: usize,
        #[arg(long, default_value = "cert.json")]
        out: PathBuf,
    },
    /// Write fejer.csv, svd.csv and bmoa.csv.
    Report {
        symbol: String,
        /// Largest truncation degree (default: degree of the symbol).
        #[arg(long)]
        fejer_max: Option<usize>,
        #[arg(long, default_value_t = 12)]
        gram: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// BMOA seminorm estimates of a polynomial.
    Bmoa {
        /// Polynomial spec (coefficients from degree 0).
        f: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Compare ⟨u', v'⟩ over the disc with its boundary closed form.
    LpCheck {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Radial nodes (default: smallest admissible).
        #[arg(long)]
        nr: Option<usize>,
    },
}

enum Failure {
    Refuted(String),
    Input(String),
    Precondition(String),
}

impl From<disc_deriv::Error> for Failure {
    fn from(e: disc_deriv::Error) -> Self {
        Failure::Precondition(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn symbol_arg(arg: &str) -> Result<SymbolH1, Failure> {
    spec::load(arg)
        .and_then(|s| s.to_symbol())
        .map_err(Failure::Input)
}

fn poly_arg(arg: &str) -> Result<AnalyticPoly, Failure> {
    spec::load(arg)
        .and_then(|s| s.to_poly())
        .map_err(Failure::Input)
}

fn print_json(out: &mut dyn Write, v: &serde_json::Value) {
    print_lines(
        out,
        &[serde_json::to_string_pretty(v).expect("serializable")],
    );
}

/// Writes lines, ignoring a closed pipe.
fn print_lines(out: &mut dyn Write, lines: &[String]) {
    for line in lines {
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}

/// 17 significant digits.
fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv(path: &Path, header: &[&str], rows: Vec<Vec<String>>) -> Outcome {
    let input = |e: csv::Error| Failure::Input(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(input)?;
    w.write_record(header).map_err(input)?;
    for row in rows {
        w.write_record(&row).map_err(input)?;
    }
    w.flush()
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Eval { symbol, f, g } => {
            let form = DerivationForm::new(symbol_arg(&symbol)?);
            let (f, g) = (poly_arg(&f)?, poly_arg(&g)?);
            let sup = |p: &AnalyticPoly| match cli.grid {
                Some(m) => sup_norm(p, m),
                None => Ok(sup_norm_refined(p)),
            };
            let (f_sup, g_sup) = (sup(&f)?, sup(&g)?);
            let value = form.bilinear_eval(&f, &g);
            print_json(
                out,
                &json!({
                    "value": value,
                    "abs": value.norm(),
                    "u_coeffs": u_of(&f, &g),
                    "f_sup": f_sup,
                    "g_sup": g_sup,
                }),
            );
            Ok(())
        }
        Command::Extract { symbol, n } => {
            let h = symbol_arg(&symbol)?;
            let n = n.unwrap_or(h.degree()).max(1);
            let form = DerivationForm::new(h.clone());
            let recovered = extract_symbol(|f, g| form.bilinear_eval(f, g), n);
            let scale = h
                .positive_coeffs()
                .iter()
                .map(|c| c.norm())
                .fold(1.0, f64::max);
            let max_error = (1..=n.max(h.degree()))
                .map(|k| (recovered.coeff(k) - h.coeff(k)).norm())
                .fold(0.0, f64::max);
            let tol = cli.tol.unwrap_or(1e-12) * scale;
            print_json(
                out,
                &json!({
                    "coeffs": recovered.positive_coeffs(),
                    "max_error": max_error,
                }),
            );
            if max_error > tol {
                return Err(Failure::Refuted(format!(
                    "round-trip error {max_error:e} exceeds {tol:e}"
                )));
            }
            Ok(())
        }
        Command::Gram { symbol, n } => {
            let form = DerivationForm::new(symbol_arg(&symbol)?);
            let (rank, sv) = form
                .gram_matrix(n)?
                .rank_and_singular_values(cli.tol.unwrap_or(1e-10))?;
            print_json(out, &json!({ "n": n, "rank": rank, "singular_values": sv }));
            Ok(())
        }
        Command::Pietsch {
            symbol,
            samples,
            deg,
            out: cert_path,
        } => {
            let h = symbol_arg(&symbol)?;
            let mut cert = build_certificate(&h)?;
            let report = verify_certificate(&cert, samples, deg, cli.seed);
            cert.verification = Some(report.clone());
            let text = serde_json::to_string_pretty(&cert).expect("serializable");
            fs::write(&cert_path, text + "\n").map_err(|e| {
                Failure::Input(format!("cannot write {}: {e}", cert_path.display()))
            })?;
            print_lines(
                out,
                &[
                    format!("total_mass {}", cert.total_mass),
                    format!("max_ratio {}", report.max_ratio),
                    format!("violations {}", report.violations),
                ],
            );
            if let Some(v) = report.first_violation {
                return Err(Failure::Refuted(format!(
                    "|D(f)(g)| = {} > {} for f = {}, g = {}",
                    v.lhs,
                    v.rhs,
                    serde_json::to_string(&v.f_coeffs).expect("serializable"),
                    serde_json::to_string(&v.g_coeffs).expect("serializable"),
                )));
            }
            Ok(())
        }
        Command::Report {
            symbol,
            fejer_max,
            gram,
            out: dir,
        } => {
            let h = symbol_arg(&symbol)?;
            fs::create_dir_all(&dir)
                .map_err(|e| Failure::Input(format!("cannot create {}: {e}", dir.display())))?;
            let form = DerivationForm::new(h.clone());
            let n_max = fejer_max.unwrap_or(h.degree());
            let tails = form.fejer_tail_bounds(n_max)?;
            let mut rows = Vec::with_capacity(n_max + 1);
            for (n, tail) in tails.iter().enumerate() {
                rows.push(vec![
                    n.to_string(),
                    sci(*tail),
                    sci(form.fejer_distance_bound(n)?),
                ]);
            }
            write_csv(
                &dir.join("fejer.csv"),
                &["N", "tail_bound", "fejer_distance"],
                rows,
            )?;

            let (_, sv) = form
                .gram_matrix(gram)?
                .rank_and_singular_values(cli.tol.unwrap_or(1e-10))?;
            let rows = sv
                .iter()
                .enumerate()
                .map(|(i, s)| vec![i.to_string(), sci(*s)])
                .collect();
            write_csv(&dir.join("svd.csv"), &["index", "singular_value"], rows)?;

            let estimates = default_estimates(h.poly())?;
            let rows = estimates
                .iter()
                .map(|e: &SeminormEstimate| vec![e.kind.as_str().to_owned(), sci(e.value)])
                .collect();
            write_csv(&dir.join("bmoa.csv"), &["kind", "estimate"], rows)
        }
        Command::Bmoa { f, depth } => {
            let f = poly_arg(&f)?;
            let mut estimates = default_estimates(&f)?;
            estimates[0] = disc_deriv::bmoa::osc_seminorm(&f, depth)?;
            print_json(out, &serde_json::to_value(estimates).expect("serializable"));
            Ok(())
        }
        Command::LpCheck { u, v, nr } => {
            let (u, v) = (poly_arg(&u)?, poly_arg(&v)?);
            let required = 4 * (u.degree() + v.degree() + 1);
            let quad =
                lambda_inner_quad(&u, &v, nr.unwrap_or(required), cli.grid.unwrap_or(required))?;
            let closed = lambda_inner_closed(&u, &v);
            let rel = (quad - closed).norm() / closed.norm().max(f64::MIN_POSITIVE);
            let rel = if quad == closed { 0.0 } else { rel };
            let tol = cli.tol.unwrap_or(1e-8);
            print_json(
                out,
                &json!({ "closed": closed, "quadrature": quad, "relative_difference": rel }),
            );
            if rel > tol {
                return Err(Failure::Refuted(format!(
                    "relative difference {rel:e} exceeds {tol:e}"
                )));
            }
            Ok(())
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (code, msg) = match run(cli, out) {
        Ok(()) => (0, None),
        Err(Failure::Refuted(msg)) => (1, Some(format!("refuted: {msg}"))),
        Err(Failure::Input(msg)) => (2, Some(format!("input error: {msg}"))),
        Err(Failure::Precondition(msg)) => (3, Some(format!("precondition failed: {msg}"))),
    };
    if let Some(msg) = msg {
        let _ = writeln!(err, "{msg}");
    }
    let _ = out.flush();
    code
}
