//! Command-line front end: exact torus-cover counts, graph decompositions,
//! triple Hurwitz numbers, constant terms, Siegel-Veech series, and the
//! acceptance selftest, with machine-readable JSON output.
//!
//! Exit codes: 0 success, 2 usage error, 3 fit failure, 4 cross-check
//! mismatch, 5 oracle budget exceeded.

mod output;

use clap::{Args, Parser, Subcommand};
use output::{json_qmpoly, json_series, Report};
use quasimod::elliptic::{fourier_z_power_zeta0, zeta0_z_power};
use quasimod::error::Error;
use quasimod::graphs::{assemble_total, graph_series_nprime, GlobalGraph};
use quasimod::hurwitz::{count_series, Variant};
use quasimod::partition::{Partition, Profile};
use quasimod::polyfit::{ssz_poly_fit, ssz_var_names, SszOutcome};
use quasimod::quasimodular::{fit_quasimodular, monomials_up_to_weight, QmPoly};
use quasimod::rational::{format_rat, rat_big};
use quasimod::series::QSeries;
use quasimod::sv::sv_count_series;
use quasimod::triple::{a_prime, VertexFunction};

const EXIT_USAGE: i32 = 2;
const EXIT_FIT: i32 = 3;
const EXIT_CROSS_CHECK: i32 = 4;
const EXIT_BUDGET: i32 = 5;

#[derive(Parser)]
#[command(
    name = "quasimod",
    about = "Exact counting of torus covers with quasimodularity certification",
    version
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Config {
    /// Output format: text or json
    #[arg(long, global = true, default_value = "text")]
    output: String,
    /// Cap on worker threads (default: all available)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Loop-iteration budget for the brute-force oracle
    #[arg(long, global = true, default_value_t = 100_000_000u128)]
    oracle_budget: u128,
    /// Extra q-coefficients required beyond the fit dimension
    #[arg(long, global = true, default_value_t = 10usize)]
    fit_margin: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Counting series N, N', N° for a ramification profile
    Count {
        /// Profile, e.g. "(3)" or "(2),(2)"; empty string for no branching
        #[arg(long, default_value = "")]
        profile: String,
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// all | prime | connected
        #[arg(long, default_value = "connected")]
        variant: String,
        /// Also fit the series as a polynomial in G2, G4, G6 of this max weight
        #[arg(long)]
        fit: Option<u32>,
        /// Cross-check coefficients up to this degree against the brute-force
        /// monodromy oracle (subject to --oracle-budget)
        #[arg(long)]
        oracle: Option<usize>,
    },
    /// Per-graph decomposition of N'(Pi) with the Burnside cross-check
    Graphs {
        #[arg(long)]
        profile: String,
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Emit each labeled graph's contribution
        #[arg(long)]
        per_graph: bool,
        #[arg(long)]
        fit: Option<u32>,
    },
    /// One triple Hurwitz number A'(w-, w+, mu)
    Triple {
        /// Input widths, e.g. "2,3"
        #[arg(long)]
        win: String,
        /// Output widths, e.g. "5"
        #[arg(long)]
        wout: String,
        /// Partition over z = 1, e.g. "(3)"
        #[arg(long)]
        mu: String,
        /// Use the completed cycles P_mu / prod(mu_i) instead of f_mu
        #[arg(long)]
        completed: bool,
    },
    /// Polynomiality check for completed triple Hurwitz numbers
    SszCheck {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: u32,
        #[arg(long, default_value_t = 6)]
        radius: u32,
    },
    /// Constant term of Z^e, symbolically and by Fourier extraction
    Zconst {
        #[arg(long)]
        power: u32,
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Print the fitted polynomial (default prints the series too)
        #[arg(long)]
        fit: bool,
    },
    /// Constant term of a product of propagators over a reduced graph
    Cterm {
        /// Edge list, e.g. "1-2,1-2,1-2"
        #[arg(long)]
        graph: String,
        /// Comma-separated even derivative orders, one per edge
        #[arg(long)]
        m: String,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long)]
        fit: Option<u32>,
    },
    /// Siegel-Veech weighted counting series c_p
    Sv {
        #[arg(long, default_value = "")]
        profile: String,
        #[arg(long, allow_hyphen_values = true)]
        p: i32,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, default_value = "connected")]
        variant: String,
        #[arg(long)]
        fit: Option<u32>,
        /// Also emit the per-graph Siegel-Veech contributions
        #[arg(long)]
        per_graph: bool,
        /// Cross-check coefficients up to this degree against the brute-force
        /// Siegel-Veech oracle (subject to --oracle-budget)
        #[arg(long)]
        oracle: Option<usize>,
    },
    /// Run the full acceptance suite; nonzero exit on any mismatch
    Selftest,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version on stdout with code 0 by convention
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Some(t) = cli.config.threads {
        if rayon::ThreadPoolBuilder::new().num_threads(t).build_global().is_err() {
            // pool already set; thread cap ignored
        }
    }
    match dispatch(&cli.config, &cli.command) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnderDetermined { .. }
        | Error::OrderTooSmallForFit { .. }
        | Error::FitMismatch { .. } => EXIT_FIT,
        Error::CrossCheckMismatch { .. } => EXIT_CROSS_CHECK,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn parse_variant(s: &str) -> Result<Variant, Error> {
    Variant::parse(s)
        .ok_or_else(|| Error::Invalid(format!("variant must be all|prime|connected, got {s:?}")))
}

fn parse_widths(s: &str) -> Result<Vec<u32>, Error> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Invalid(format!("bad width {t:?}")))
                .and_then(|w| {
                    if w == 0 {
                        Err(Error::Invalid("widths must be positive".into()))
                    } else {
                        Ok(w)
                    }
                })
        })
        .collect()
}

/// Fit with the CLI margin policy: the order must leave `margin` spare
/// coefficients beyond the monomial count.
fn fit_with_margin(s: &QSeries, max_weight: u32, margin: usize) -> Result<QmPoly, Error> {
    let dim = monomials_up_to_weight(max_weight).len();
    if s.order() < dim + margin {
        return Err(Error::OrderTooSmallForFit { needed: dim + margin, got: s.order() });
    }
    fit_quasimodular(s, max_weight)
}

fn dispatch(config: &Config, command: &Command) -> Result<(), Error> {
    match command {
        Command::Count { profile, order, variant, fit, oracle } => {
            let pr = Profile::parse(profile)?;
            let variant = parse_variant(variant)?;
            let series = count_series(&pr, *order, variant);
            let mut report = Report::new("count", config);
            report.profile = Some(pr.to_string());
            report.variant = Some(format!("{variant:?}").to_lowercase());
            report.series = Some(json_series(&series));
            if let Some(d_max) = oracle {
                let d_max = (*d_max).min(*order);
                for d in 0..=d_max {
                    let brute =
                        quasimod::oracle::brute_force_n(&pr, d, variant, config.oracle_budget)?;
                    if brute != series.coeff(d) {
                        return Err(Error::CrossCheckMismatch {
                            context: format!("count oracle ({pr}, {variant:?})"),
                            first_diff: d,
                        });
                    }
                }
                report.checks.push((format!("oracle agreement up to q^{d_max}"), true));
            }
            if let Some(w) = fit {
                let poly = fit_with_margin(&series, *w, config.fit_margin)?;
                report.qmpoly = Some(json_qmpoly(&poly));
                report.qmpoly_text = Some(poly.to_string());
            }
            report.emit(&config.output);
            Ok(())
        }
        Command::Graphs { profile, order, per_graph, fit } => {
            let pr = Profile::parse(profile)?;
            let mut report = Report::new("graphs", config);
            report.profile = Some(pr.to_string());
            let total = assemble_total(&pr, *order)?; // hard cross-check inside
            report.checks.push(("assembly matches Burnside N'".into(), true));
            if *per_graph {
                let mut items = Vec::new();
                for g in quasimod::graphs::enumerate_graphs_for_profile(&pr) {
                    let series = graph_series_nprime(&g, &pr, *order);
                    let aut = g.automorphism_order();
                    let weighted = series.scale(&rat_big(aut.clone()).recip());
                    let fit_json = match fit {
                        Some(w) if !weighted.is_zero() => {
                            match fit_with_margin(&weighted, *w, config.fit_margin) {
                                Ok(p) => Some((json_qmpoly(&p), p.to_string())),
                                // individual graph contributions need not be
                                // quasimodular; only a too-small order is an error
                                Err(Error::FitMismatch { .. }) => None,
                                Err(e) => return Err(e),
                            }
                        }
                        _ => None,
                    };
                    items.push(output::GraphItem {
                        graph: g.to_string(),
                        aut: aut.to_string(),
                        series: json_series(&series),
                        fit: fit_json,
                    });
                }
                report.graphs = Some(items);
            }
            report.series = Some(json_series(&total));
            if let Some(w) = fit {
                let poly = fit_with_margin(&total, *w, config.fit_margin)?;
                report.qmpoly = Some(json_qmpoly(&poly));
                report.qmpoly_text = Some(poly.to_string());
            }
            report.emit(&config.output);
            Ok(())
        }
        Command::Triple { win, wout, mu, completed } => {
            let w_minus = parse_widths(win)?;
            let w_plus = parse_widths(wout)?;
            let mu_profile = Profile::parse(mu)?;
            let mu_part: Partition = match mu_profile.partitions() {
                [] => Partition::empty(),
                [one] => one.clone(),
                _ => {
                    return Err(Error::Invalid("--mu takes a single partition".into()));
                }
            };
            let f = if *completed {
                if mu_part.is_empty() {
                    return Err(Error::Invalid("--completed needs a nonempty mu".into()));
                }
                VertexFunction::Completed(mu_part)
            } else if mu_part.is_empty() {
                VertexFunction::One
            } else {
                VertexFunction::FMu(mu_part)
            };
            let value = a_prime(&w_minus, &w_plus, &f);
            let mut report = Report::new("triple", config);
            report.value = Some(format_rat(&value));
            report.emit(&config.output);
            Ok(())
        }
        Command::SszCheck { m, n, ell, radius } => {
            if *m == 0 || *n == 0 || *ell == 0 {
                return Err(Error::Invalid("m, n, ell must be positive".into()));
            }
            let mut report = Report::new("ssz-check", config);
            match ssz_poly_fit(*m, *n, *ell, *radius) {
                SszOutcome::Polynomial(p) => {
                    let names = ssz_var_names(*m, *n);
                    report.value = Some(p.display_with(&names));
                    report.checks.push(("global polynomial of the claimed parity".into(), true));
                    report.emit(&config.output);
                    Ok(())
                }
                SszOutcome::IdenticallyZero => {
                    report.value = Some("0".into());
                    report.checks.push(("odd parity: identically zero".into(), true));
                    report.emit(&config.output);
                    Ok(())
                }
                SszOutcome::Failure { point, expected, actual } => Err(Error::CrossCheckMismatch {
                    context: format!(
                        "ssz at {:?}/{:?}: predicted {}, actual {}",
                        point.0,
                        point.1,
                        format_rat(&expected),
                        format_rat(&actual)
                    ),
                    first_diff: 0,
                }),
                SszOutcome::ParityViolation { .. } => Err(Error::CrossCheckMismatch {
                    context: "ssz parity violation".into(),
                    first_diff: 0,
                }),
            }
        }
        Command::Zconst { power, order, fit } => {
            let poly = zeta0_z_power(*power, *order)?; // built-in Fourier check
            let mut report = Report::new("zconst", config);
            report.qmpoly = Some(json_qmpoly(&poly));
            report.qmpoly_text = Some(poly.to_string());
            if !fit {
                report.series = Some(json_series(&fourier_z_power_zeta0(*power, *order)));
            }
            report.checks.push(("symbolic and Fourier routes agree".into(), true));
            report.emit(&config.output);
            Ok(())
        }
        Command::Cterm { graph, m, order, fit } => {
            let g = GlobalGraph::parse(graph)?;
            let ms: Vec<u32> = m
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Invalid(format!("bad exponent {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if ms.len() != g.n_edges() {
                return Err(Error::Invalid(format!(
                    "{} exponents for {} edges",
                    ms.len(),
                    g.n_edges()
                )));
            }
            let series = quasimod::elliptic::constant_term_graph(&g, &ms, *order)?;
            let mut report = Report::new("cterm", config);
            report.checks.push(("constant term matches the lattice sum".into(), true));
            report.series = Some(json_series(&series));
            if let Some(w) = fit {
                let poly = fit_with_margin(&series, *w, config.fit_margin)?;
                report.qmpoly = Some(json_qmpoly(&poly));
                report.qmpoly_text = Some(poly.to_string());
            }
            report.emit(&config.output);
            Ok(())
        }
        Command::Sv { profile, p, order, variant, fit, per_graph, oracle } => {
            if *p < -1 {
                return Err(Error::Invalid("p must be at least -1".into()));
            }
            let pr = Profile::parse(profile)?;
            let variant = parse_variant(variant)?;
            let series = sv_count_series(&pr, *p, *order, variant);
            let mut report = Report::new("sv", config);
            report.profile = Some(pr.to_string());
            report.variant = Some(format!("{variant:?}").to_lowercase());
            report.series = Some(json_series(&series));
            if let Some(d_max) = oracle {
                let d_max = (*d_max).min(*order);
                for d in 0..=d_max {
                    let brute = quasimod::oracle::brute_force_sv(
                        &pr,
                        d,
                        *p,
                        variant,
                        config.oracle_budget,
                    )?;
                    if brute != series.coeff(d) {
                        return Err(Error::CrossCheckMismatch {
                            context: format!("sv oracle ({pr}, p={p}, {variant:?})"),
                            first_diff: d,
                        });
                    }
                }
                report.checks.push((format!("oracle agreement up to q^{d_max}"), true));
            }
            if *per_graph {
                let assembled = quasimod::sv::assemble_sv_prime(&pr, *p, *order)?;
                report.checks.push(("graph assembly matches the q-bracket c'".into(), true));
                let mut items = Vec::new();
                for g in quasimod::graphs::enumerate_graphs_for_profile(&pr) {
                    let series = quasimod::sv::sv_per_graph(&g, &pr, *order, *p);
                    items.push(output::GraphItem {
                        graph: g.to_string(),
                        aut: g.automorphism_order().to_string(),
                        series: json_series(&series),
                        fit: None,
                    });
                }
                report.graphs = Some(items);
                let _ = assembled;
            }
            if let Some(w) = fit {
                if *p >= 0 && p % 2 == 0 {
                    eprintln!(
                        "warning: quasimodularity is only claimed for odd p; skipping the fit"
                    );
                } else {
                    let poly = fit_with_margin(&series, *w, config.fit_margin)?;
                    report.qmpoly = Some(json_qmpoly(&poly));
                    report.qmpoly_text = Some(poly.to_string());
                }
            }
            report.emit(&config.output);
            Ok(())
        }
        Command::Selftest => {
            let results = quasimod::acceptance::run_all();
            let mut report = Report::new("selftest", config);
            let mut all_pass = true;
            for r in &results {
                all_pass &= r.pass;
                if config.output == "text" {
                    let status = if r.pass { "PASS" } else { "FAIL" };
                    println!("[{status}] criterion {} ({:.2}s): {}", r.name, r.seconds, r.detail);
                }
                report.checks.push((r.name.clone(), r.pass));
            }
            if config.output != "text" {
                report.emit(&config.output);
            }
            if all_pass {
                Ok(())
            } else {
                Err(Error::CrossCheckMismatch { context: "selftest".into(), first_diff: 0 })
            }
        }
    }
}
