//! Command dispatch for the `cayspec` binary.
//!
//! [`run`] never prints or exits; it returns the rendered output and the exit
//! code so the binary and the tests share one path.

use std::fmt::Write as _;
use std::path::PathBuf;

use cayspec::cayley::{Factor, GroupElement, DEFAULT_DENSE_CAP};
use cayspec::characters::{l_index_census, CharacterTable};
use cayspec::grammar::{parse_connection, parse_group};
use cayspec::nullity::{self, BoundReport, ProductFactorData};
use cayspec::oracle::{self, OracleOptions, VerificationReport, DEFAULT_VALUE_TOL};
use cayspec::spectrum::{self, DEFAULT_GAP_TOL};
use cayspec::{numtheory, ConnectionSet, Error, GroupSpec, Spectrum};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_NUMERICAL: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "cayspec", version, about = "Cayley graph spectra and maximum-nullity bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form spectrum of a Cayley graph.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Only accept integer-valued closed forms.
        #[arg(long)]
        exact: bool,
        /// Also check the result against the dense eigensolver.
        #[arg(long)]
        verify: bool,
    },
    /// Maximum-nullity lower bound and minimum-rank upper bound.
    Nullity {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Audit the claimed bound against the dense eigensolver.
        #[arg(long)]
        verify: bool,
        /// Include the per-divisor table.
        #[arg(long)]
        per_divisor: bool,
    },
    /// Compare a closed-form spectrum with the dense eigensolver (exit 3 on mismatch).
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Spectrum JSON to check instead of the computed closed form.
        #[arg(long)]
        spectrum: Option<PathBuf>,
    },
    /// Ramanujan sums C(r, n) for r = 0..n-1.
    Ramanujan {
        n: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Irreducible character table.
    Chartable {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Group, e.g. `cyclic:6` or `cyclic:3 x dihedral:5`.
    #[arg(long)]
    pub group: String,
    /// Connection set, one `;`-separated part per factor: `unitary`,
    /// `gcdclass:D`, `explicit:1,5` or `explicit:r1,s0`.
    #[arg(long)]
    pub connection: String,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Value tolerance for oracle comparisons.
    #[arg(long, default_value_t = DEFAULT_VALUE_TOL)]
    pub tol: f64,
    /// Tolerance for merging eigenvalues into multiplicities.
    #[arg(long = "group-tol", default_value_t = DEFAULT_GAP_TOL)]
    pub group_tol: f64,
    /// Largest group order handed to the dense eigensolver.
    #[arg(long = "max-order", default_value_t = DEFAULT_DENSE_CAP)]
    pub max_order: usize,
}

impl CommonArgs {
    fn oracle(&self) -> OracleOptions {
        OracleOptions {
            gap_tol: self.group_tol,
            dense_cap: self.max_order,
            ..OracleOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn from_error(e: &Error) -> Self {
        Self {
            code: exit_code(e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_INPUT
    } else if e.is_unsupported() {
        EXIT_UNSUPPORTED
    } else {
        EXIT_NUMERICAL
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn execute(command: &Command) -> Outcome {
    let result = match command {
        Command::Spectrum {
            graph,
            common,
            exact,
            verify,
        } => cmd_spectrum(graph, common, *exact, *verify),
        Command::Nullity {
            graph,
            common,
            verify,
            per_divisor,
        } => cmd_nullity(graph, common, *verify, *per_divisor),
        Command::Verify {
            graph,
            common,
            spectrum,
        } => cmd_verify(graph, common, spectrum.as_ref()),
        Command::Ramanujan { n, common } => cmd_ramanujan(*n, common),
        Command::Chartable { group, common } => cmd_chartable(group, common),
    };
    result.unwrap_or_else(|e| Outcome::from_error(&e))
}

fn is_unitary_cyclic(group: &GroupSpec, connection: &str) -> Option<u64> {
    match (group.factors(), connection.trim()) {
        ([Factor::Cyclic(n)], "unitary") => Some(*n),
        _ => None,
    }
}

/// Best available closed form for `(group, S)`.
fn closed_form(
    group: &GroupSpec,
    connection: &str,
    s: Option<&ConnectionSet>,
    gap_tol: f64,
) -> cayspec::Result<Spectrum> {
    if let Some(n) = is_unitary_cyclic(group, connection) {
        return spectrum::unitary_cyclic_spectrum(n);
    }
    let owned;
    let s = match s {
        Some(s) => s,
        None => {
            owned = parse_connection(group, connection)?;
            &owned
        }
    };
    match group.factors() {
        [Factor::Cyclic(n)] => {
            let exps: Vec<u64> = s.factor_sets()[0]
                .iter()
                .map(|x| match x {
                    cayspec::FactorElement::Cyclic(k) => *k,
                    _ => unreachable!("cyclic factor holds cyclic elements"),
                })
                .collect();
            spectrum::circulant_spectrum(*n, &exps, gap_tol)
        }
        _ => spectrum::group_spectrum(group, s, gap_tol),
    }
}

fn cmd_spectrum(
    graph: &GraphArgs,
    common: &CommonArgs,
    exact: bool,
    verify: bool,
) -> cayspec::Result<Outcome> {
    let group = parse_group(&graph.group)?;
    let s = if verify || is_unitary_cyclic(&group, &graph.connection).is_none() {
        Some(parse_connection(&group, &graph.connection)?)
    } else {
        None
    };
    let spec = closed_form(&group, &graph.connection, s.as_ref(), common.group_tol)?;
    if exact && !spec.is_exact() {
        return Err(Error::UnsupportedShape(format!(
            "no integer closed form for {group} with `{}`",
            graph.connection.trim()
        )));
    }
    let mut out = render_spectrum(&spec, common.format);
    let mut code = EXIT_OK;
    if verify {
        let s = s.expect("parsed above");
        let report = oracle::verify_spectrum(&spec, &group, &s, common.tol, &common.oracle())?;
        if !report.matched {
            code = EXIT_MISMATCH;
        }
        if common.format == Format::Table {
            out.push_str(&render_verification(&report, Format::Table));
        }
    }
    Ok(Outcome {
        code,
        stdout: out,
        stderr: String::new(),
    })
}

fn product_factor_data(
    group: &GroupSpec,
    s: &ConnectionSet,
) -> cayspec::Result<Vec<ProductFactorData>> {
    group.factors()[1..]
        .iter()
        .zip(&s.factor_sets()[1..])
        .map(|(f, set)| {
            let fg = GroupSpec::new(vec![*f])?;
            let table = CharacterTable::for_group(&fg)?;
            let elements: Vec<GroupElement> =
                set.iter().map(|x| GroupElement(vec![*x])).collect();
            let census = l_index_census(&table, &elements)?;
            let (_, count) = census.largest().unwrap_or((
                cayspec::characters::RootOfUnity::ONE,
                0,
            ));
            Ok(ProductFactorData {
                index_count: count as u64,
                set_size: set.len() as u64,
                group_order: f.order(),
            })
        })
        .collect()
}

fn cmd_nullity(
    graph: &GraphArgs,
    common: &CommonArgs,
    verify: bool,
    per_divisor: bool,
) -> cayspec::Result<Outcome> {
    let group = parse_group(&graph.group)?;
    let first_unitary = graph
        .connection
        .split(';')
        .next()
        .map(|p| p.trim() == "unitary")
        .unwrap_or(false);
    let mut report = match (group.factors(), first_unitary) {
        ([Factor::Cyclic(n)], true) if !verify => nullity::unitary_cyclic_bound(*n)?,
        ([Factor::Cyclic(n), ..], true) => {
            let s = parse_connection(&group, &graph.connection)?;
            let data = product_factor_data(&group, &s)?;
            nullity::product_unitary_bound(*n, &data)?
        }
        _ => {
            let s = parse_connection(&group, &graph.connection)?;
            nullity::spectrum_bound(&spectrum::group_spectrum(&group, &s, common.group_tol)?)?
        }
    };
    if verify {
        let s = parse_connection(&group, &graph.connection)?;
        report = nullity::audit(report, &group, &s, &common.oracle())?;
    }
    if !per_divisor {
        report.per_divisor.clear();
    }
    Ok(Outcome::ok(render_bound(&report, common.format, per_divisor)))
}

fn cmd_verify(
    graph: &GraphArgs,
    common: &CommonArgs,
    spectrum_file: Option<&PathBuf>,
) -> cayspec::Result<Outcome> {
    let group = parse_group(&graph.group)?;
    let s = parse_connection(&group, &graph.connection)?;
    let closed = match spectrum_file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
                token: path.display().to_string(),
                reason: e.to_string(),
            })?;
            Spectrum::from_json(&text)?
        }
        None => closed_form(&group, &graph.connection, Some(&s), common.group_tol)?,
    };
    let report = oracle::verify_spectrum(&closed, &group, &s, common.tol, &common.oracle())?;
    Ok(Outcome {
        code: if report.matched { EXIT_OK } else { EXIT_MISMATCH },
        stdout: render_verification(&report, common.format),
        stderr: String::new(),
    })
}

#[derive(Serialize)]
struct RamanujanTable {
    n: u64,
    values: Vec<i64>,
    direct: Vec<f64>,
}

fn cmd_ramanujan(n: u64, common: &CommonArgs) -> cayspec::Result<Outcome> {
    let row = numtheory::ramanujan_row(n, numtheory::DEFAULT_DIRECT_TOL)?;
    let out = match common.format {
        Format::Json => {
            let table = RamanujanTable {
                n,
                values: row.iter().map(|v| v.value).collect(),
                direct: row.iter().map(|v| v.direct).collect(),
            };
            json_line(&table)
        }
        Format::Csv => {
            let mut s = String::from("r,value,direct\n");
            for v in &row {
                let _ = writeln!(s, "{},{},{}", v.r, v.value, v.direct);
            }
            s
        }
        Format::Table => {
            let mut s = format!("C(r, {n})\n{:>8}  {:>10}  {:>22}\n", "r", "value", "direct sum");
            for v in &row {
                let _ = writeln!(s, "{:>8}  {:>10}  {:>22.15}", v.r, v.value, v.direct);
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_chartable(group: &str, common: &CommonArgs) -> cayspec::Result<Outcome> {
    let group = parse_group(group)?;
    if group.order() > common.max_order as u64 {
        return Err(Error::TooLargeForDenseOracle {
            order: group.order() as usize,
            cap: common.max_order,
        });
    }
    let report = CharacterTable::for_group(&group)?.report();
    let out = match common.format {
        Format::Json => json_line(&report),
        Format::Csv => {
            let mut s = String::from("label,degree");
            for e in &report.elements {
                let _ = write!(s, ",{e}");
            }
            s.push('\n');
            for row in &report.characters {
                let _ = write!(s, "{},{}", row.label, row.degree);
                for v in &row.values {
                    let _ = write!(s, ",{}", complex_text(v.re, v.im));
                }
                s.push('\n');
            }
            s
        }
        Format::Table => {
            let mut s = format!(
                "character table of {} (order {}, {} characters)\n",
                report.group,
                report.order,
                report.characters.len()
            );
            let _ = write!(s, "{:<24} {:>3}", "character", "deg");
            for e in &report.elements {
                let _ = write!(s, " {e:>14}");
            }
            s.push('\n');
            for row in &report.characters {
                let _ = write!(s, "{:<24} {:>3}", row.label, row.degree);
                for v in &row.values {
                    let _ = write!(s, " {:>14}", complex_text(v.re, v.im));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serializes");
    s.push('\n');
    s
}

fn number_text(x: f64) -> String {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        format!("{}", r as i64)
    } else {
        format!("{x:.10}")
    }
}

fn complex_text(re: f64, im: f64) -> String {
    if im.abs() < 1e-12 {
        number_text(re)
    } else if re.abs() < 1e-12 {
        format!("{}i", number_text(im))
    } else {
        format!("{}{:+.6}i", number_text(re), im)
    }
}

pub fn render_spectrum(spec: &Spectrum, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = spec.to_json();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("value,multiplicity,exact\n");
            for p in spec.pairs() {
                let _ = writeln!(s, "{},{},{}", p.value, p.multiplicity, p.exact);
            }
            s
        }
        Format::Table => {
            let compact: Vec<String> = spec
                .pairs()
                .iter()
                .map(|p| format!("{}^{}", number_text(p.value), p.multiplicity))
                .collect();
            let mut s = format!("spec = [{}]\n", compact.join(", "));
            let _ = writeln!(
                s,
                "order {}, degree {}, {} distinct eigenvalues",
                spec.order(),
                spec.degree().map_or("?".to_string(), |d| d.to_string()),
                spec.pairs().len()
            );
            let _ = writeln!(s, "{:>20}  {:>12}  {:>5}", "eigenvalue", "multiplicity", "exact");
            for p in spec.pairs() {
                let _ = writeln!(
                    s,
                    "{:>20}  {:>12}  {:>5}",
                    number_text(p.value),
                    p.multiplicity,
                    p.exact
                );
            }
            s
        }
    }
}

pub fn render_bound(report: &BoundReport, format: Format, per_divisor: bool) -> String {
    let opt = |x: Option<String>| x.unwrap_or_default();
    match format {
        Format::Json => json_line(report),
        Format::Csv => {
            let mut s =
                String::from("order,claimed,oracle_max_multiplicity,consistent,effective_bound,mr_upper\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                report.order,
                report.claimed,
                opt(report.oracle_max_multiplicity.map(|m| m.to_string())),
                opt(report.consistent.map(|c| c.to_string())),
                report.effective_bound,
                report.mr_upper
            );
            if per_divisor {
                s.push_str("\nd,phi,moebius,eigenvalue,multiplicity\n");
                for r in &report.per_divisor {
                    let _ = writeln!(s, "{},{},{},{},{}", r.d, r.phi, r.moebius, r.eigenvalue, r.multiplicity);
                }
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "order                    {}", report.order);
            let _ = writeln!(s, "claimed bound M >=       {}", report.claimed);
            let _ = writeln!(s, "source                   {:?}", report.source);
            if let Some(m) = report.oracle_max_multiplicity {
                let _ = writeln!(s, "oracle max multiplicity  {m}");
            }
            if let Some(c) = report.consistent {
                let _ = writeln!(s, "consistent               {c}");
            }
            let _ = writeln!(s, "effective bound          {}", report.effective_bound);
            let _ = writeln!(s, "mr upper bound           {}", report.mr_upper);
            if per_divisor {
                let _ = writeln!(
                    s,
                    "\n{:>10} {:>10} {:>4} {:>12} {:>12}",
                    "d", "phi(d)", "mu", "eigenvalue", "multiplicity"
                );
                for r in &report.per_divisor {
                    let _ = writeln!(
                        s,
                        "{:>10} {:>10} {:>4} {:>12} {:>12}",
                        r.d, r.phi, r.moebius, r.eigenvalue, r.multiplicity
                    );
                }
            }
            s
        }
    }
}

pub fn render_verification(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => json_line(report),
        Format::Csv => {
            let mut s = String::from("matched,max_value_error,tolerance,order,mismatches\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                report.matched,
                report.max_value_error,
                report.tolerance,
                report.order,
                report.multiplicity_mismatches.len()
            );
            s
        }
        Format::Table => {
            let mut s = format!(
                "verification: {} (max value error {:.3e}, tolerance {:.1e}, {} vertices)\n",
                if report.matched { "MATCHED" } else { "MISMATCH" },
                report.max_value_error,
                report.tolerance,
                report.order
            );
            for m in &report.multiplicity_mismatches {
                let _ = writeln!(
                    s,
                    "  eigenvalue {}: closed multiplicity {}, oracle multiplicity {}",
                    number_text(m.value),
                    m.closed,
                    m.oracle
                );
            }
            s
        }
    }
}
