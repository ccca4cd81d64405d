//! matjac: Jacobian groups of regular matroids, configuration
//! polynomials, F_p point counts, and p-torsion densities.
//!
//! Inputs are JSON files auto-detected by their top-level keys (graph,
//! matroid, or polynomial), or `corpus:<id>` for a built-in example.
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 budget refusal.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use matjac::count::CountMethod;
use matjac::io::{self, Input};
use matjac::{corpus, count, density, expansion, graph, jacobian, psi, verify};
use matjac::{Error, Result};

#[derive(Parser)]
#[command(name = "matjac", version, about, max_term_width = 100)]
struct RunConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Configuration polynomial of a matroid or graph
    Psi {
        /// Input file (graph or matroid JSON) or corpus:ID
        #[arg(long)]
        input: String,
        /// Computation route; both must agree termwise
        #[arg(long, value_enum, default_value_t = PsiRoute::Bases)]
        route: PsiRoute,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Jacobian group, optionally of a metric expansion
    Jac {
        /// Input file (graph or matroid JSON) or corpus:ID
        #[arg(long)]
        input: String,
        /// Length map as inline JSON ({"e":2,...}) or a file path;
        /// the group of the expanded matroid is reported
        #[arg(long)]
        expand: Option<String>,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Metric expansion of a matroid by a length map
    Expand {
        /// Input file (graph or matroid JSON) or corpus:ID
        #[arg(long)]
        input: String,
        /// Length map as inline JSON or a file path
        #[arg(long)]
        lengths: String,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Zero counts of a configuration polynomial over F_p
    Count {
        /// Input file (polynomial, matroid, or graph JSON) or corpus:ID
        #[arg(long)]
        input: String,
        /// Prime modulus
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Method::Elim)]
        method: Method,
        /// Pivot variable for the eliminative kernel (default: lowest used)
        #[arg(long)]
        pivot: Option<String>,
        /// Also count zeros with all coordinates invertible
        #[arg(long)]
        torus: bool,
        /// Cap on parallel workers (default: auto)
        #[arg(long)]
        workers: Option<usize>,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Density of length maps with p-divisible Jacobian order
    Density {
        /// Input file (graph or matroid JSON) or corpus:ID
        #[arg(long)]
        input: String,
        /// Prime modulus
        #[arg(long)]
        p: u64,
        /// Density over all-invertible residues instead
        #[arg(long, conflicts_with_all = ["empirical", "check"])]
        torus: bool,
        /// Exhaustive density over the box {1..m}^E
        #[arg(long, value_name = "M", conflicts_with = "check")]
        empirical: Option<u64>,
        /// Run a named consistency check instead of a plain density
        #[arg(long, value_enum)]
        check: Option<CheckKind>,
        /// Box height for --check sandwich (default 2p+1)
        #[arg(long, value_name = "M")]
        m_max: Option<u64>,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suites over the built-in corpus
    Verify {
        /// Suite name (matroid-core, arith-jacobian, config-poly,
        /// fp-count, density-stats) or "all"
        #[arg(long, default_value = "all")]
        suite: String,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PsiRoute {
    /// Sum over enumerated bases
    Bases,
    /// Deletion-contraction recursion
    Dc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Exhaustive loop over F_p^n (the oracle)
    Naive,
    /// O(p^(n-1)) pivot elimination (the kernel)
    Elim,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    /// Box density between the proof's two-sided bounds
    Sandwich,
    /// Torus densities of the matroid and its dual agree
    Dual,
    /// |density - 1/p| within the explicit O(1/p^2) constant
    Asymptotic,
}

fn main() {
    let config = RunConfig::parse();
    match run(config) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

/// Reads an input source: `corpus:<id>` or a file path.
fn read_input(spec: &str) -> Result<(Input, String)> {
    if let Some(id) = spec.strip_prefix("corpus:") {
        return Ok((Input::Matroid(corpus::corpus_matroid(id)?), id.to_string()));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::Parse(format!("cannot read '{spec}': {e}")))?;
    let name = PathBuf::from(spec)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    Ok((io::parse_input(&text)?, name))
}

fn as_matroid(input: Input) -> Result<matjac::matroid::RegularMatroid> {
    match input {
        Input::Matroid(m) => Ok(m),
        Input::Graph(g) => graph::incidence_matroid(&g),
        Input::Poly(_) => Err(Error::Parse(
            "this command needs a matroid or graph, not a polynomial".into(),
        )),
    }
}

fn as_poly(input: Input) -> Result<matjac::poly::MultilinearPoly> {
    match input {
        Input::Poly(p) => Ok(p),
        other => Ok(psi::psi_from_bases(&as_matroid(other)?)),
    }
}

/// Length maps come inline (`{"e":2}`) or as a file path.
fn read_lengths(spec: &str) -> Result<expansion::LengthMap> {
    if spec.trim_start().starts_with('{') {
        return io::parse_length_map(spec);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::Parse(format!("cannot read '{spec}': {e}")))?;
    io::parse_length_map(&text)
}

fn emit(value: &Value, output: Option<&PathBuf>) -> Result<()> {
    let text = io::render(value);
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write '{}': {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(config: RunConfig) -> Result<i32> {
    match config.command {
        Command::Psi {
            input,
            route,
            output,
        } => {
            let (input, _) = read_input(&input)?;
            let m = as_matroid(input)?;
            let poly = match route {
                PsiRoute::Bases => psi::psi_from_bases(&m),
                PsiRoute::Dc => psi::psi_deletion_contraction(&m),
            };
            emit(&io::poly_to_json(&poly), output.as_ref())?;
            Ok(0)
        }
        Command::Jac {
            input,
            expand,
            output,
        } => {
            let (input, _) = read_input(&input)?;
            let mut m = as_matroid(input)?;
            if let Some(spec) = expand {
                let lam = read_lengths(&spec)?;
                m = expansion::expand(&m, &lam)?.0;
            }
            let group = jacobian::jacobian_group(&m);
            emit(&io::group_to_json(&group), output.as_ref())?;
            Ok(0)
        }
        Command::Expand {
            input,
            lengths,
            output,
        } => {
            let (input, _) = read_input(&input)?;
            let m = as_matroid(input)?;
            let lam = read_lengths(&lengths)?;
            let (mx, eg) = expansion::expand(&m, &lam)?;
            emit(&io::expansion_to_json(&mx, &eg), output.as_ref())?;
            Ok(0)
        }
        Command::Count {
            input,
            p,
            method,
            pivot,
            torus,
            workers,
            output,
        } => {
            let (input, _) = read_input(&input)?;
            let poly = as_poly(input)?;
            let method = match method {
                Method::Naive => CountMethod::Naive,
                Method::Elim => CountMethod::Eliminative,
            };
            let report = count::count_report(&poly, p, method, pivot.as_deref(), torus, workers)?;
            emit(&io::count_report_to_json(&report), output.as_ref())?;
            Ok(0)
        }
        Command::Density {
            input,
            p,
            torus,
            empirical,
            check,
            m_max,
            output,
        } => {
            let (input, name) = read_input(&input)?;
            let m = as_matroid(input)?;
            match check {
                Some(CheckKind::Sandwich) => {
                    let m_max = m_max.unwrap_or(2 * p + 1);
                    let report = density::sandwich_check(&m, p, m_max)?;
                    emit(&io::sandwich_report_to_json(&report), output.as_ref())?;
                    Ok(if report.holds { 0 } else { 1 })
                }
                Some(CheckKind::Dual) => {
                    let holds = density::dual_density_check(&m, p)?;
                    let mine = with_subject(density::torus_density(&m, p)?, &name);
                    let doc = serde_json::json!({
                        "p": p,
                        "holds": holds,
                        "torus_density": io::density_report_to_json(&mine),
                    });
                    emit(&doc, output.as_ref())?;
                    Ok(if holds { 0 } else { 1 })
                }
                Some(CheckKind::Asymptotic) => {
                    let report = density::asymptotic_check(&m, p)?;
                    emit(&io::asymptotic_report_to_json(&report), output.as_ref())?;
                    Ok(if report.holds { 0 } else { 1 })
                }
                None => {
                    let report = if torus {
                        density::torus_density(&m, p)?
                    } else if let Some(m_max) = empirical {
                        density::density_empirical(&m, p, m_max)?
                    } else {
                        density::density_formula(&m, p)?
                    };
                    let report = with_subject(report, &name);
                    emit(&io::density_report_to_json(&report), output.as_ref())?;
                    Ok(0)
                }
            }
        }
        Command::Verify { suite, output } => {
            let outcomes = if suite == "all" {
                verify::run_all()
            } else {
                verify::run_suite(&suite)?
            };
            let failed = outcomes.iter().any(|o| !o.passed);
            emit(&verify::outcomes_to_json(&outcomes), output.as_ref())?;
            Ok(if failed { 1 } else { 0 })
        }
    }
}

fn with_subject(mut report: density::DensityReport, name: &str) -> density::DensityReport {
    report.subject = Some(name.to_string());
    report
}
