//! The `dp-alpha` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{bound_report, r_lower_bound};
use crate::catalog::{blowup_compare, declared_links, verify_case, verify_catalog, BlowupLink, Ordering, SurfaceConfig};
use crate::exactmath::{min_envelope, Rational};
use crate::germ::{lct_constraints, lct_in_t, lct_in_t_at, parse_germ_json, GermError};
use crate::lattice::{enumerate_quadric_classes, enumerate_rational_classes};
use crate::localineq::{asserted, blowup_ledger_check, four_blowup_conditions, ClauseStatus, MultiplicityLedger};
use crate::output::{beta_grid, to_csv, OutputRecord, Provenance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BAD_FILE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "dp-alpha", version, about = "Alpha-invariants of del Pezzo pairs (S, (1-b)C)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List case identifiers.
    Cases,
    /// Show the alpha-invariant of one case.
    Alpha {
        #[arg(long = "case", value_parser = parse_case)]
        case: SurfaceConfig,
        #[arg(long, value_parser = parse_beta)]
        beta: Option<Rational>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Source::Formula)]
        source: Source,
    },
    /// Log canonical threshold of a germ described in a JSON file.
    Lct {
        file: std::path::PathBuf,
        #[arg(long, value_parser = parse_beta)]
        beta: Option<Rational>,
    },
    /// Enumerate rational curve classes of anticanonical degree m.
    Lines {
        #[arg(long)]
        degree: i64,
        #[arg(long, default_value_t = 1)]
        m: i64,
        /// Use P^1 x P^1 instead of the blow-up of P^2 (degree 8 only).
        #[arg(long)]
        quadric: bool,
    },
    /// Lower bound for the largest angle with an edge metric.
    Rbound {
        #[arg(long = "case", value_parser = parse_case)]
        case: SurfaceConfig,
    },
    /// All bounds for one case.
    Bounds {
        #[arg(long = "case", value_parser = parse_case)]
        case: SurfaceConfig,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Multiplicity inequality checks.
    Ineq {
        #[command(subcommand)]
        which: Ineq,
    },
    /// Check every closed formula against the engine.
    Verify {
        #[arg(long = "case", value_parser = parse_case)]
        case: Option<SurfaceConfig>,
    },
    /// Sample every case on the grid k/steps as CSV.
    Table {
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=10_000))]
        steps: u32,
        #[arg(long, value_enum, default_value_t = Source::Formula)]
        source: Source,
    },
    /// Compare alpha before and after blowing up points of C.
    Compare {
        #[arg(long, value_parser = parse_case, requires = "to")]
        from: Option<SurfaceConfig>,
        #[arg(long, value_parser = parse_case, requires = "from")]
        to: Option<SurfaceConfig>,
        #[arg(long, default_value_t = 1)]
        points: u8,
    },
}

#[derive(Subcommand, Debug)]
enum Ineq {
    /// The four conditions along four blow-ups of points of C.
    FourBlowup(Box<FourBlowupArgs>),
    /// Clauses of the blow-up ledger for coefficient a and multiplicities m.
    Ledger {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
        m: Vec<Rational>,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Debug)]
struct FourBlowupArgs {
    #[arg(long, value_parser = parse_rational)]
    a: Rational,
    #[arg(long, value_parser = parse_rational)]
    x: Rational,
    #[arg(long, value_parser = parse_rational)]
    x1: Rational,
    #[arg(long, value_parser = parse_rational)]
    x2: Rational,
    #[arg(long, value_parser = parse_rational)]
    x3: Rational,
    #[arg(long = "lambda-beta", value_parser = parse_rational)]
    lambda_beta: Rational,
    #[arg(long, value_parser = parse_beta)]
    beta: Rational,
    #[arg(long)]
    k2: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Source {
    Formula,
    Engine,
}

impl From<Source> for Provenance {
    fn from(s: Source) -> Self {
        match s {
            Source::Formula => Provenance::Formula,
            Source::Engine => Provenance::Engine,
        }
    }
}

fn parse_case(s: &str) -> Result<SurfaceConfig, String> {
    s.parse().map_err(|e| format!("{e}; run `dp-alpha cases` for the list"))
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|_| format!("{s:?} is not an exact rational p/q"))
}

fn parse_beta(s: &str) -> Result<Rational, String> {
    let b = parse_rational(s)?;
    if b.is_positive() && b <= Rational::one() {
        Ok(b)
    } else {
        Err(format!("beta = {b} is outside (0,1]"))
    }
}

/// A failed command: exit code and message for stderr.
struct Failure(i32, String);

type Outcome = Result<i32, Failure>;

fn usage(msg: impl ToString) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

fn internal(msg: impl ToString) -> Failure {
    Failure(EXIT_VERIFY_FAILED, msg.to_string())
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    let mut buf = String::new();
    let code = match command {
        Command::Cases => {
            for c in SurfaceConfig::all() {
                buf.push_str(&format!("{:<22}{}\n", c.id(), c.summary()));
            }
            EXIT_OK
        }
        Command::Alpha { case, beta, format, source } => alpha(&mut buf, case, beta, format, source)?,
        Command::Lct { file, beta } => lct(&mut buf, &file, beta)?,
        Command::Lines { degree, m, quadric } => {
            let classes = if quadric {
                if degree != 8 {
                    return Err(usage("--quadric needs --degree 8"));
                }
                enumerate_quadric_classes(m)
            } else {
                enumerate_rational_classes(degree, m).map_err(usage)?
            };
            for c in &classes {
                buf.push_str(&format!("{c}\n"));
            }
            buf.push_str(&format!("count: {}\n", classes.len()));
            EXIT_OK
        }
        Command::Rbound { case } => {
            buf.push_str(&format!("{}\n", r_lower_bound(case).map_err(internal)?));
            EXIT_OK
        }
        Command::Bounds { case, format } => {
            let r = bound_report(case).map_err(internal)?;
            match format {
                Format::Json => {
                    buf.push_str(&serde_json::to_string_pretty(&r).expect("serializable"));
                    buf.push('\n');
                }
                Format::Text => {
                    buf.push_str(&format!("case          {}\n", case.id()));
                    buf.push_str(&format!("tian range    {}\n", r.tian_interval));
                    buf.push_str(&format!("R lower       {}\n", r.r_lower));
                    buf.push_str(&format!("universal     {}\n", r.berman_lower));
                    match &r.upper_bound {
                        Some(u) => buf.push_str(&format!("R upper       {} ({})\n", u.value, u.source)),
                        None => buf.push_str("R upper       none known\n"),
                    }
                }
                Format::Csv => return Err(usage("bounds supports --format text or json")),
            }
            EXIT_OK
        }
        Command::Ineq { which } => ineq(&mut buf, which)?,
        Command::Verify { case } => {
            let results = match case {
                Some(c) => vec![verify_case(c).map_err(internal)?],
                None => verify_catalog().map_err(internal)?,
            };
            let passed = results.iter().filter(|r| r.pass).count();
            for r in &results {
                buf.push_str(&format!("{r}\n"));
            }
            buf.push_str(&format!("{passed}/{} cases pass\n", results.len()));
            if passed == results.len() { EXIT_OK } else { EXIT_VERIFY_FAILED }
        }
        Command::Table { steps, source } => {
            let grid = beta_grid(steps);
            let records = std::thread::scope(|s| {
                let handles: Vec<_> = SurfaceConfig::all()
                    .iter()
                    .map(|&c| {
                        let grid = &grid;
                        s.spawn(move || OutputRecord::new(c, source.into(), grid))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("table thread")).collect::<Result<Vec<_>, _>>()
            })
            .map_err(internal)?;
            buf.push_str(&to_csv(&records));
            EXIT_OK
        }
        Command::Compare { from, to, points } => {
            let links = match (from, to) {
                (Some(f), Some(t)) => vec![(f, t, BlowupLink { points })],
                _ => declared_links(),
            };
            for (c1, c2, link) in links {
                let r = blowup_compare(c1, c2, link).map_err(usage)?;
                let verdict = match (r.ordering, r.exceptional) {
                    (Ordering::Holds, _) => "holds".to_string(),
                    (Ordering::Violated, true) => "violated (exceptional)".to_string(),
                    (Ordering::Violated, false) => "violated".to_string(),
                };
                let where_ = r
                    .violations
                    .iter()
                    .map(|(lo, hi)| format!("({lo}, {hi})"))
                    .collect::<Vec<_>>()
                    .join(" ");
                let line = format!("{} -> {}  {verdict} {where_}", c1.id(), c2.id());
                buf.push_str(line.trim_end());
                buf.push('\n');
            }
            EXIT_OK
        }
    };
    out.write_all(buf.as_bytes()).map_err(internal)?;
    Ok(code)
}

fn alpha(buf: &mut String, case: SurfaceConfig, beta: Option<Rational>, format: Format, source: Source) -> Outcome {
    let f = match source {
        Source::Formula => case.alpha_hat(),
        Source::Engine => case.alpha_engine().map_err(internal)?,
    };
    let betas: Vec<Rational> = match &beta {
        Some(b) => vec![b.clone()],
        None if format == Format::Csv => f.pieces().iter().map(|p| p.hi.clone()).collect(),
        None => vec![],
    };
    match format {
        Format::Text => {
            let terms: Vec<String> = std::iter::once("1".to_string())
                .chain(case.alpha_hat_terms().iter().map(|t| t.pretty()))
                .collect();
            buf.push_str(&format!("{}  min{{{}}}\n", case.id(), terms.join(", ")));
            for (i, p) in f.pieces().iter().enumerate() {
                let open = if i == 0 { '(' } else { '[' };
                buf.push_str(&format!("  {:<16}{}\n", format!("{open}{}, {}]", p.lo, p.hi), p.f.pretty()));
            }
            if let Some(b) = beta {
                let piece = f.piece_at(&b).map_err(usage)?;
                let v = piece.f.eval(&b);
                buf.push_str(&format!(
                    "beta = {b}: {} = {v} ≈ {}\n",
                    piece.f.pretty_at(&b),
                    v.to_decimal_string(crate::output::DECIMAL_DIGITS)
                ));
            }
        }
        Format::Json | Format::Csv => {
            let r = OutputRecord::new(case, source.into(), &betas).map_err(internal)?;
            if format == Format::Json {
                buf.push_str(&r.to_json());
                buf.push('\n');
            } else {
                buf.push_str(&to_csv(&[r]));
            }
        }
    }
    Ok(EXIT_OK)
}

fn lct(buf: &mut String, file: &std::path::Path, beta: Option<Rational>) -> Outcome {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure(EXIT_BAD_FILE, format!("{}: {e}", file.display())))?;
    let config = parse_germ_json(&text).map_err(|e| Failure(EXIT_BAD_FILE, format!("{}: {e}", file.display())))?;
    let bad = |e: GermError| Failure(EXIT_BAD_FILE, format!("{}: {e}", file.display()));
    let constraints = lct_constraints(&config).map_err(bad)?;
    let f = lct_in_t(&config).map_err(bad)?;
    buf.push_str("constraints on t:\n");
    for c in &constraints {
        buf.push_str(&format!("  t <= {}\n", c.pretty()));
    }
    let envelope = min_envelope(&constraints).map_err(internal)?;
    debug_assert_eq!(envelope, f);
    buf.push_str(&format!("lct: {}\n", f.pretty()));
    if let Some(b) = beta {
        let v = lct_in_t_at(&config, &b).map_err(bad)?;
        buf.push_str(&format!("at beta = {b}: {v}\n"));
    }
    Ok(EXIT_OK)
}

fn ineq(buf: &mut String, which: Ineq) -> Outcome {
    match which {
        Ineq::FourBlowup(a) => {
            let l = MultiplicityLedger::new(a.a, a.x, a.x1, a.x2, a.x3, a.lambda_beta, a.beta, a.k2)
                .map_err(usage)?;
            buf.push_str(&format!("{}\n", four_blowup_conditions(&l)));
        }
        Ineq::Ledger { a, m, n } => {
            let checks = blowup_ledger_check(&a, &m, n).map_err(usage)?;
            for c in &checks {
                let status = match c.status {
                    ClauseStatus::NotApplicable => "n/a",
                    ClauseStatus::Conditional => "conditional",
                    ClauseStatus::Asserted => "asserted",
                };
                buf.push_str(&format!("{:<6}{:<13}{}\n", c.clause, status, c.conclusion));
            }
            buf.push_str(&format!("{} conclusions asserted\n", asserted(&checks).len()));
        }
    }
    Ok(EXIT_OK)
}
