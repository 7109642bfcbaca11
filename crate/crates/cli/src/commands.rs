use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use dualdeg_core::andor::{check_facts, compose, find_component_witnesses, verify_composition};
use dualdeg_core::boolfn::{BoolFn, Family, SymmetricProfile, TABLE_CAP_LOG2};
use dualdeg_core::dualcore::{approx_degree, best_eps, optimal_dual_witness, verify_witness};
use dualdeg_core::markov::{certificate_at_one, certificate_at_zero, higher_certificate, trig_identity_suite};
use dualdeg_core::numeric::{format_rational, parse_rational, rat};
use dualdeg_core::symdual::{general_sym_dual, maj_dual, spalek_or_dual, support_phd, verify_sym_witness};
use dualdeg_core::{ApCertificate, BigRational, Error};

use crate::report::{Check, Format, Report, RunConfig};
use crate::suite::{run_suite, Scale, KNOWN_SHORTFALLS, THRESHOLDS_VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "dualdeg", version, about = "Approximate degree, dual polynomials and Markov certificates")]
pub struct Cli {
    /// Working precision in bits for floating-point checks
    #[arg(long, global = true, default_value_t = 256)]
    pub prec: u32,

    /// Tolerance exponent: floating checks pass within 2^tol-exp
    #[arg(long = "tol-exp", global = true, default_value_t = -200, allow_hyphen_values = true)]
    pub tol_exp: i32,

    /// Write the machine-readable report here
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FnKind {
    Or,
    And,
    Maj,
    Thr,
    Parity,
    Andor,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SymKind {
    Auto,
    Or,
    Maj,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum At {
    Zero,
    One,
}

#[derive(clap::Args, Debug, Clone)]
pub struct FnArgs {
    /// Function family
    #[arg(long = "fn", value_enum)]
    pub family: FnKind,
    #[arg(long)]
    pub n: Option<usize>,
    /// Threshold for THR
    #[arg(long)]
    pub t: Option<usize>,
    /// Outer block count for ANDOR
    #[arg(long = "M")]
    pub big_m: Option<usize>,
    /// Inner block size for ANDOR
    #[arg(long = "N")]
    pub big_n: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a truth table with its symmetry and block sensitivity
    Fn(FnArgs),
    /// Smallest degree reaching error eps
    Degree {
        #[command(flatten)]
        f: FnArgs,
        /// Error as p/q
        #[arg(long)]
        eps: String,
    },
    /// Optimal dual witness at degree d
    Dual {
        #[command(flatten)]
        f: FnArgs,
        #[arg(long)]
        d: usize,
        /// Print the witness file to stdout
        #[arg(long)]
        emit: bool,
    },
    /// Compose AND_M and OR_N witnesses and verify the result
    Andor {
        #[arg(long = "M")]
        big_m: usize,
        #[arg(long = "N")]
        big_n: usize,
    },
    /// Explicit symmetric witness for a threshold jump
    Symdual {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, value_enum, default_value_t = SymKind::Auto)]
        kind: SymKind,
    },
    /// Markov dual certificate at 0, at 1, or for the k-th derivative at 1
    Markov {
        #[arg(long, value_enum, default_value_t = At::One)]
        at: At,
        #[arg(long)]
        n: usize,
        /// Certify the k-th derivative at 1
        #[arg(long)]
        higher: bool,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Trigonometric sum identities up to nmax
    Trig {
        #[arg(long, default_value_t = 50)]
        nmax: usize,
    },
    /// Acceptance suite
    Suite {
        #[arg(long)]
        quick: bool,
    },
}

/// Failure before any check ran.
#[derive(Debug)]
enum Abort {
    Usage(String),
    Failed(String),
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_)
            | Error::ArityMismatch { .. }
            | Error::Parse(_)
            | Error::GuardExceeded { .. }
            | Error::InsufficientPrecision { .. } => Abort::Usage(e.to_string()),
            _ => Abort::Failed(e.to_string()),
        }
    }
}

fn build_fn(a: &FnArgs) -> Result<BoolFn, Abort> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Abort::Usage(format!("--{flag} is required for this family")));
    let family = match a.family {
        FnKind::Or => Family::Or { n: need(a.n, "n")? },
        FnKind::And => Family::And { n: need(a.n, "n")? },
        FnKind::Maj => Family::Maj { n: need(a.n, "n")? },
        FnKind::Parity => Family::Parity { n: need(a.n, "n")? },
        FnKind::Thr => Family::Threshold {
            n: need(a.n, "n")?,
            t: need(a.t, "t")?,
        },
        FnKind::Andor => Family::AndOr {
            m: need(a.big_m, "M")?,
            n: need(a.big_n, "N")?,
        },
    };
    Ok(BoolFn::named(family)?)
}

fn parse_eps(s: &str) -> Result<BigRational, Abort> {
    parse_rational(s).map_err(|e| Abort::Usage(e.to_string()))
}

struct Outcome {
    checks: Vec<Check>,
    /// Printed before the summary.
    stdout: String,
}

fn fn_cmd(a: &FnArgs) -> Result<Outcome, Abort> {
    let f = build_fn(a)?;
    let mut checks = vec![Check::new("fn.symmetric", "invariance under permutations", true).measured(f.is_symmetric())];
    if f.arity() <= dualdeg_core::boolfn::BS_MAX_ARITY {
        let bs = f.block_sensitivity()?;
        checks.push(Check::new("fn.block_sensitivity", "max disjoint sensitive blocks", true).measured(bs));
    }
    Ok(Outcome {
        checks,
        stdout: f.to_file_string(),
    })
}

fn degree_cmd(a: &FnArgs, eps: &str) -> Result<Outcome, Abort> {
    let f = build_fn(a)?;
    let eps = parse_eps(eps)?;
    let d = approx_degree(&f, &eps)?;
    let mut checks = vec![Check::new("degree.value", "smallest degree within error", true)
        .measured(d)
        .expected(format!("best error at degree {d} <= {}", format_rational(&eps)))];
    let at = best_eps(&f, d)?;
    checks.push(
        Check::new("degree.reaches", "best error at this degree is within eps", at <= eps)
            .measured(format_rational(&at))
            .expected(format!("<= {}", format_rational(&eps))),
    );
    if d > 0 {
        let w = optimal_dual_witness(&f, d - 1)?;
        let r = verify_witness(&w, &f, d - 1, &eps)?;
        checks.push(
            Check::new("degree.lower_bound", "dual witness rules out degree d−1", r.passed())
                .measured(format_rational(&r.correlation))
                .expected(format!("> {}", format_rational(&eps))),
        );
    }
    Ok(Outcome {
        checks,
        stdout: format!("{d}\n"),
    })
}

fn dual_cmd(a: &FnArgs, d: usize, emit: bool) -> Result<Outcome, Abort> {
    let f = build_fn(a)?;
    let eps = best_eps(&f, d)?;
    let w = optimal_dual_witness(&f, d)?;
    let probe = &eps / BigRational::from_integer(2.into());
    let r = verify_witness(&w, &f, d, &probe)?;
    let checks = vec![
        Check::new("dual.optimal", "witness correlation equals best error", w.phi.correlation(&f)? == eps)
            .measured(format_rational(&w.claimed_correlation))
            .expected(format_rational(&eps)),
        Check::new("dual.mass", "unit ℓ1 mass", r.l1_ok).measured(format_rational(&r.l1)).expected(1),
        Check::new("dual.phd", "pure high degree at least d", r.phd_ok)
            .measured(r.phd.map_or("none".into(), |p| p.to_string()))
            .expected(format!(">= {d}")),
    ];
    Ok(Outcome {
        checks,
        stdout: if emit { w.to_file_string() } else { String::new() },
    })
}

fn andor_cmd(m: usize, n: usize) -> Result<Outcome, Abort> {
    let choice = find_component_witnesses(m, n)?;
    let zeta = compose(&choice.outer, &choice.inner)?;
    let and = BoolFn::named(Family::And { n: m })?;
    let or = BoolFn::named(Family::Or { n })?;
    let r = verify_composition(&zeta, &and, &or)?;
    let facts = check_facts(&choice.outer, &choice.inner)?;
    let checks = vec![
        Check::new("andor.l1", "unit mass", r.l1_ok).measured(format_rational(&r.l1)).expected(1),
        Check::new("andor.phd", "pure high degree at least d·d'", r.phd_ok)
            .measured(r.phd)
            .expected(format!(">= {}", r.d * r.d_prime)),
        Check::new("andor.generic", "correlation at least ε − 4δ·bs", r.generic_bound_ok)
            .measured(format_rational(&r.correlation))
            .expected(format!(">= {}", format_rational(&r.generic_bound))),
        Check::new("andor.refined", "correlation above 1/3 under the promise", r.refined_ok.unwrap_or(true))
            .measured(format_rational(&r.correlation))
            .expected(if r.refined_promise { "> 1/3" } else { "not applicable" }),
        Check::new("andor.facts", "endpoint values of the component witnesses", facts.passed()),
        Check::new("andor.disagreement_mass", "inner mass off the sign pattern is δ/2", r.disagreement_mass_ok)
            .measured(format_rational(&(&r.mass_a_plus + &r.mass_a_minus))),
    ];
    Ok(Outcome {
        checks,
        stdout: format!(
            "d={} d'={} eps={} delta={} correlation={}\n",
            r.d,
            r.d_prime,
            format_rational(&r.eps),
            format_rational(&r.delta),
            format_rational(&r.correlation)
        ),
    })
}

fn symdual_cmd(n: usize, t: usize, kind: SymKind) -> Result<Outcome, Abort> {
    let kind = match kind {
        SymKind::Auto if t == 1 && n >= 4 => SymKind::Or,
        SymKind::Auto if t >= 2 && 4 * t <= n => SymKind::General,
        SymKind::Auto => SymKind::Maj,
        k => k,
    };
    let mut checks = Vec::new();
    let (w, floor, strict) = match kind {
        SymKind::Or => {
            let (w, rep) = spalek_or_dual(n)?;
            checks.push(Check::new("symdual.mass_identity", "mass of R at the squares", rep.mass_identity_ok));
            (w, rat(1, 14), false)
        }
        SymKind::Maj => {
            let (w, rep) = maj_dual(n, t)?;
            checks.push(
                Check::new("symdual.construction", "unit central mass, small neighbours, ‖P‖₁ ≤ 13/4", rep.passed())
                    .measured(format_rational(&rep.p_l1)),
            );
            (w, rat(3, 13), true)
        }
        SymKind::General | SymKind::Auto => {
            let (w, rep) = general_sym_dual(n, t)?;
            checks.push(
                Check::new("symdual.construction", "window, term bounds and tail at most 2/5", rep.passed())
                    .measured(format!("case {} tail {}", rep.case, format_rational(&rep.tail))),
            );
            (w, rat(1, 14), false)
        }
    };
    let f = SymmetricProfile::threshold(n, w.provenance.t)?;
    let r = verify_sym_witness(&w, &f, support_phd(&w), &BigRational::from_integer(0.into()))?;
    let ok = if strict { r.ratio > floor } else { r.ratio >= floor };
    checks.push(
        Check::new("symdual.ratio", "correlation over mass", ok)
            .measured(format_rational(&r.ratio))
            .expected(format!("{} {}", if strict { ">" } else { ">=" }, format_rational(&floor))),
    );
    checks.push(
        Check::new("symdual.phd", "pure high degree from the support size", r.phd_ok && r.phd_agree != Some(false))
            .measured(format!(
                "structural {:?} lifted {:?}",
                r.structural_phd, r.lifted_phd
            ))
            .expected(format!(">= {}", support_phd(&w))),
    );
    let values: Vec<String> = w.values.iter().map(format_rational).collect();
    Ok(Outcome {
        checks,
        stdout: format!("{}\n", values.join(" ")),
    })
}

fn markov_cmd(at: At, n: usize, higher: bool, k: usize, cfg: &RunConfig) -> Result<Outcome, Abort> {
    let p = cfg.precision;
    let c: ApCertificate = if higher {
        higher_certificate(n, k, p)?
    } else if at == At::Zero {
        certificate_at_zero(n, p)?
    } else {
        certificate_at_one(n, p)?
    };
    let mut checks = vec![
        Check::new("markov.residual", "y solves the node system", c.residual_ok)
            .measured(c.residual.to_hex_string())
            .tolerance(format!("2^{} * n^2 * row scale", 8 - p as i32)),
        Check::new("markov.dual_value", "Σy against the extremal derivative", c.dual_ok)
            .measured(c.dual_value.to_hex_string())
            .expected(format_rational(&c.expected_dual))
            .tolerance(format!("2^-{} relative", p / 2)),
        Check::new("markov.positive", "dual entries positive with margin", c.positive_ok)
            .measured(c.min_entry.to_hex_string())
            .tolerance(format!("> 2^-{}", p / 2)),
    ];
    if let Some(cr) = &c.cramer {
        checks.push(Check::new(
            "markov.cramer",
            "last coordinate by Cramer's rule is positive and matches",
            cr.ratio_positive && cr.matches_solution,
        ));
    }
    let ys: Vec<String> = c.y.iter().map(|v| format!("{:.12e}", v.to_f64())).collect();
    Ok(Outcome {
        checks,
        stdout: format!("sum={:.15e}\ny={}\n", c.dual_value.to_f64(), ys.join(" ")),
    })
}

fn trig_cmd(nmax: usize, cfg: &RunConfig) -> Result<Outcome, Abort> {
    let r = trig_identity_suite::<dualdeg_core::ApFloat>(nmax, cfg.precision, cfg.tol_exp);
    let checks = r
        .identities
        .iter()
        .map(|id| {
            Check::new(format!("trig.{}", id.name), "trigonometric sum identity", id.passed())
                .measured(format!("{} cases, worst 2^{:.2}", id.cases, id.worst_log2_error))
                .tolerance(format!("2^{} relative", cfg.tol_exp))
        })
        .collect();
    Ok(Outcome {
        checks,
        stdout: String::new(),
    })
}

fn suite_cmd(quick: bool) -> Result<Outcome, Abort> {
    let scale = if quick { Scale::Quick } else { Scale::Full };
    let outcomes = run_suite(scale)?;
    let mut stdout = format!("thresholds v{THRESHOLDS_VERSION}\n");
    let mut checks = Vec::new();
    for o in outcomes {
        stdout.push_str(&format!("{} {}\n", if o.passed() { "PASS" } else { "FAIL" }, o.name));
        for name in o.failing() {
            if let Some((_, why)) = KNOWN_SHORTFALLS.iter().find(|(n, _)| *n == name) {
                stdout.push_str(&format!("  known shortfall {name}: {why}\n"));
            }
        }
        checks.extend(o.checks);
    }
    Ok(Outcome { checks, stdout })
}

/// Parses `argv`, runs the command, prints a summary and writes the report.
/// Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let config = RunConfig {
        command: format!("{:?}", cli.command),
        precision: cli.prec,
        tol_exp: cli.tol_exp,
        table_guard_log2: TABLE_CAP_LOG2,
        format: cli.format,
        quick: matches!(cli.command, Command::Suite { quick: true }),
        output: cli.report.clone(),
    };
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let result = match &cli.command {
        Command::Fn(a) => fn_cmd(a),
        Command::Degree { f, eps } => degree_cmd(f, eps),
        Command::Dual { f, d, emit } => dual_cmd(f, *d, *emit),
        Command::Andor { big_m, big_n } => andor_cmd(*big_m, *big_n),
        Command::Symdual { n, t, kind } => symdual_cmd(*n, *t, *kind),
        Command::Markov { at, n, higher, k } => markov_cmd(*at, *n, *higher, *k, &config),
        Command::Trig { nmax } => trig_cmd(*nmax, &config),
        Command::Suite { quick } => suite_cmd(*quick),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(Abort::Usage(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
        Err(Abort::Failed(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_FAIL;
        }
    };
    print!("{}", outcome.stdout);
    let report = Report::new(config, outcome.checks);
    eprint!("{}", report.summary());
    if let Err(e) = report.write() {
        eprintln!("error: {e}");
        return EXIT_FAIL;
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
