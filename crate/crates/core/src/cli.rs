//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error, 4 search budget
//! exhausted before an exact answer, 5 verification failure or table
//! mismatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{self, BoundKind, BoundReport, Registry};
use crate::constructions::{self, ConstructionResult, GeneratorParams};
use crate::error::Error;
use crate::group::GroupSpec;
use crate::num::{ceil_div, is_prime};
use crate::set::ElementSet;
use crate::solver::{brute_force_oracle, max_zero_sum_free, ExactResult, SearchBudget, Symmetry};
use crate::subsum::{dsh_check, is_k_zero_sum_free, k_subsums, subsums_up_to};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "harborth",
    version,
    about = "Exact values and bounds for the k-Harborth constant"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Leave the timestamp out of the report.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute g^k(G) exactly by branch-and-bound search.
    Exact(SearchArgs),
    /// Compute g^k(G) by enumerating every subset (order ≤ 20).
    Oracle(GroupK),
    /// Best known lower and upper bounds for g^k(G).
    Bounds(GroupK),
    /// Generate a lower-bound construction.
    Construct(ConstructArgs),
    /// Check whether a set file is k-zero-sum free.
    Verify(SetK),
    /// Print the k-subsums of a set file.
    Sumset(SumsetArgs),
    /// Reproduce a table of known values.
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct GroupK {
    /// Group as comma-separated moduli, e.g. "2,2,2" or "6,4".
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    #[arg(long)]
    pub k: usize,
    /// Write the witness set to this file.
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 100_000_000)]
    pub budget_nodes: u64,
    #[arg(long, default_value_t = 300.0)]
    pub budget_seconds: f64,
    /// none, scalar, scalar_and_translation or linear_over_f2.
    #[arg(long)]
    pub symmetry: Option<Symmetry>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget, Failure> {
        if self.budget_nodes == 0 {
            return Err(Failure::usage("--budget-nodes must be positive"));
        }
        if self.budget_seconds.is_nan() || self.budget_seconds <= 0.0 {
            return Err(Failure::usage("--budget-seconds must be positive"));
        }
        if self.workers == 0 {
            return Err(Failure::usage("--workers must be positive"));
        }
        Ok(SearchBudget {
            max_nodes: self.budget_nodes,
            max_seconds: self.budget_seconds,
            symmetry: self.symmetry,
            workers: self.workers,
        })
    }
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(flatten)]
    pub target: GroupK,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Generator name, or `fixture` for the explicit example sets.
    #[arg(long)]
    pub name: String,
    #[arg(long, value_parser = parse_group)]
    pub group: Option<GroupSpec>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Input set file (for `double_lift`).
    #[arg(long)]
    pub set: Option<PathBuf>,
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SetK {
    /// Set file: a `group: n_1,…,n_r` line, then one element per line.
    #[arg(long)]
    pub set: PathBuf,
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct SumsetArgs {
    #[command(flatten)]
    pub input: SetK,
    /// Print all subsums of size 1..=k instead of exactly k.
    #[arg(long)]
    pub up_to: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    /// g^4(C_2^r) for r = 2..6.
    #[value(name = "thm39", alias = "elementary_two_k4")]
    ElementaryTwoK4,
    /// g^3(C_n) for n = 4..12.
    #[value(name = "prop315", alias = "small_cyclic_k3")]
    SmallCyclicK3,
    /// Closed forms for g^k(C_p), k = 3..6.
    #[value(name = "remark312", alias = "prime_cyclic")]
    PrimeCyclic,
    /// g^6(C_7), g^8(C_11), g^8(C_13).
    #[value(name = "remark313", alias = "prime_cyclic_exceptions")]
    PrimeCyclicExceptions,
    /// Classical Harborth constants, k = exp(G).
    #[value(name = "harborth_classical", alias = "classical")]
    Classical,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub which: TableName,
    /// Include rows whose solver run takes minutes.
    #[arg(long)]
    pub extended: bool,
    /// Skip the solver column.
    #[arg(long)]
    pub no_solver: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    GroupSpec::parse(s).map_err(|e| e.to_string())
}

/// Error carrying the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn flag(flag: &str, err: Error) -> Self {
        Failure::usage(format!("{flag}: {err}"))
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::InvalidGroup(_) | Error::Parse { .. } | Error::Io(_) => EXIT_USAGE,
            Error::Domain(_) | Error::Range { .. } | Error::Refused(_) => EXIT_DOMAIN,
            Error::Verification(_) | Error::Inconsistent { .. } => EXIT_VERIFICATION,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn check_k(group: &GroupSpec, k: usize) -> Result<(), Failure> {
    if k < 1 || k as u64 > group.order() {
        return Err(Failure::usage(format!(
            "--k: {k} is outside 1..={} for group {}",
            group.order(),
            group.literal()
        )));
    }
    Ok(())
}

fn read_set(path: &Path) -> Result<ElementSet, Failure> {
    ElementSet::read_set_file(path).map_err(|e| Failure::flag("--set", e))
}

fn write_witness(path: &Option<PathBuf>, set: &ElementSet) -> Result<(), Failure> {
    if let Some(p) = path {
        set.write_set_file(p)
            .map_err(|e| Failure::flag("--witness-out", e))?;
    }
    Ok(())
}

/// A rendered report plus the exit code it implies.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

struct Ctx {
    format: Format,
    timestamp: Option<u64>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    #[serde(flatten)]
    body: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

impl Ctx {
    fn json<T: Serialize>(&self, command: &str, body: T) -> String {
        let env = Envelope {
            command,
            body,
            timestamp: self.timestamp,
        };
        let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
        s.push('\n');
        s
    }

    fn csv(&self, header: &[&str], rows: &[Vec<String>]) -> String {
        let mut out = header.join(",");
        out.push_str(",timestamp\n");
        let ts = self.timestamp.map(|t| t.to_string()).unwrap_or_default();
        for row in rows {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            let _ = writeln!(out, "{},{ts}", cells.join(","));
        }
        out
    }

    fn text(&self, mut body: String) -> String {
        if let Some(t) = self.timestamp {
            let _ = writeln!(body, "timestamp: {t}");
        }
        body
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Elements joined by `;`, coordinates by `:`.
fn compact_set(set: &ElementSet) -> String {
    set.sorted()
        .elements()
        .map(|e| {
            e.coords()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(":")
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn exact_report(ctx: &Ctx, command: &str, r: &ExactResult) -> String {
    match ctx.format {
        Format::Json => ctx.json(command, r.summary()),
        Format::Csv => ctx.csv(
            &[
                "group",
                "k",
                "max_free_size",
                "harborth",
                "exhausted",
                "nodes_explored",
                "symmetry",
                "witness",
            ],
            &[vec![
                r.group.literal(),
                r.k.to_string(),
                r.max_free_size.to_string(),
                r.harborth.to_string(),
                r.exhausted.to_string(),
                r.nodes_explored.to_string(),
                r.symmetry.to_string(),
                compact_set(&r.witness),
            ]],
        ),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "group: {}", r.group.literal());
            let _ = writeln!(s, "k: {}", r.k);
            let _ = writeln!(s, "max_free_size: {}", r.max_free_size);
            if r.exhausted {
                let _ = writeln!(s, "harborth: {}", r.harborth);
            } else {
                let _ = writeln!(s, "harborth: ≥ {} (search budget exhausted)", r.harborth);
            }
            let _ = writeln!(s, "exhausted: {}", r.exhausted);
            let _ = writeln!(s, "nodes_explored: {}", r.nodes_explored);
            let _ = writeln!(s, "symmetry: {}", r.symmetry);
            let _ = writeln!(s, "witness: {}", r.witness.sorted());
            ctx.text(s)
        }
    }
}

#[derive(Serialize)]
struct BoundsJson<'a> {
    group: String,
    k: usize,
    lower: u64,
    upper: u64,
    exact: Option<u64>,
    provenance: &'a [bounds::Provenance],
    witness: Option<Vec<Vec<u64>>>,
}

fn kind_name(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::Lower => "lower",
        BoundKind::Upper => "upper",
        BoundKind::Exact => "exact",
    }
}

fn bounds_report(ctx: &Ctx, r: &BoundReport) -> String {
    match ctx.format {
        Format::Json => ctx.json(
            "bounds",
            BoundsJson {
                group: r.group.literal(),
                k: r.k,
                lower: r.lower,
                upper: r.upper,
                exact: r.exact,
                provenance: &r.provenance,
                witness: r
                    .witness
                    .as_ref()
                    .map(|w| w.sorted().elements().map(|e| e.coords().to_vec()).collect()),
            },
        ),
        Format::Csv => {
            let sources = r
                .provenance
                .iter()
                .map(|p| format!("{}={}:{}", p.source, p.value, kind_name(p.kind)))
                .collect::<Vec<_>>()
                .join("|");
            ctx.csv(
                &["group", "k", "lower", "upper", "exact", "sources"],
                &[vec![
                    r.group.literal(),
                    r.k.to_string(),
                    r.lower.to_string(),
                    r.upper.to_string(),
                    r.exact.map(|v| v.to_string()).unwrap_or_default(),
                    sources,
                ]],
            )
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "group: {}", r.group.literal());
            let _ = writeln!(s, "k: {}", r.k);
            let _ = writeln!(s, "lower: {}", r.lower);
            let _ = writeln!(s, "upper: {}", r.upper);
            match r.exact {
                Some(v) => {
                    let _ = writeln!(s, "exact: {v}");
                }
                None => {
                    let _ = writeln!(s, "exact: unknown");
                }
            }
            let _ = writeln!(s, "{:<36} {:>6}  kind", "source", "value");
            for p in &r.provenance {
                let _ = writeln!(s, "{:<36} {:>6}  {}", p.source, p.value, kind_name(p.kind));
            }
            if let Some(w) = &r.witness {
                let _ = writeln!(s, "witness: {}", w.sorted());
            }
            ctx.text(s)
        }
    }
}

fn construction_report(ctx: &Ctx, results: &[ConstructionResult]) -> String {
    match ctx.format {
        Format::Json => ctx.json("construct", serde_json::json!({ "results": results })),
        Format::Csv => ctx.csv(
            &[
                "name",
                "group",
                "k",
                "claimed_size",
                "implied_lower_bound",
                "verified",
                "set",
            ],
            &results
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.group.literal(),
                        c.k.to_string(),
                        c.claimed_size.to_string(),
                        c.implied_lower_bound.to_string(),
                        c.verified.to_string(),
                        compact_set(&c.set),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut s = String::new();
            for c in results {
                let _ = writeln!(s, "name: {}", c.name);
                let _ = writeln!(s, "group: {}", c.group.literal());
                let _ = writeln!(s, "k: {}", c.k);
                let _ = writeln!(s, "claimed_size: {}", c.claimed_size);
                let _ = writeln!(s, "implied_lower_bound: {}", c.implied_lower_bound);
                let _ = writeln!(s, "verified: {}", c.verified);
                let _ = writeln!(s, "set: {}", c.set.sorted());
                s.push('\n');
            }
            ctx.text(s)
        }
    }
}

#[derive(Serialize)]
struct VerifyJson {
    group: String,
    k: usize,
    size: usize,
    k_zero_sum_free: bool,
}

#[derive(Serialize)]
struct SumsetJson {
    group: String,
    k: usize,
    up_to: bool,
    size: usize,
    sums: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dsh: Option<crate::subsum::DshCheck>,
}

/// One row of a reproduced table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub group: String,
    pub k: usize,
    pub paper: u64,
    pub registry_lower: u64,
    pub registry_upper: u64,
    pub solver: Option<u64>,
    pub matches: bool,
}

/// `(group, k, published value, needs --extended)` for each table.
pub fn table_spec(which: TableName) -> Vec<(GroupSpec, usize, u64, bool)> {
    let cyc = |n: u64| GroupSpec::cyclic(n).expect("n ≥ 2");
    match which {
        TableName::ElementaryTwoK4 => [(2, 4), (3, 5), (4, 7), (5, 8), (6, 10)]
            .into_iter()
            .map(|(r, v)| (GroupSpec::elementary_two(r).expect("r ≥ 1"), 4, v, r == 6))
            .collect(),
        TableName::SmallCyclicK3 => [4u64, 5, 5, 5, 6, 7, 7, 7, 7]
            .into_iter()
            .zip(4u64..)
            .map(|(v, n)| (cyc(n), 3, v, false))
            .collect(),
        TableName::PrimeCyclic => {
            let mut rows = Vec::new();
            for p in [7u64, 13, 19, 31] {
                rows.push((cyc(p), 3, ceil_div(p + 8, 3), false));
            }
            for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
                rows.push((cyc(p), 4, ceil_div(p + 15, 4), false));
            }
            for p in [11u64, 31] {
                rows.push((cyc(p), 5, ceil_div(p + 24, 5), false));
            }
            for p in [11u64, 13, 17, 19, 23] {
                rows.push((cyc(p), 6, ceil_div(p + 35, 6), false));
            }
            rows
        }
        TableName::PrimeCyclicExceptions => {
            vec![
                (cyc(7), 6, 7, false),
                (cyc(11), 8, 10, false),
                (cyc(13), 8, 10, false),
            ]
        }
        TableName::Classical => {
            let g = |lit: &str| GroupSpec::parse(lit).expect("valid literal");
            vec![
                (g("2,2,2"), 2, 9, false),
                (cyc(6), 6, 7, false),
                (cyc(9), 9, 9, false),
                (g("3,3"), 3, 5, false),
                (g("5,5"), 5, 9, false),
                (g("2,4"), 4, 6, false),
                (g("2,6"), 6, 9, false),
                (g("2,8"), 8, 10, false),
                (g("3,6"), 6, 9, false),
                (g("3,9"), 9, 13, false),
                (g("3,3,3"), 3, 10, true),
            ]
        }
    }
}

fn table_rows(args: &TableArgs) -> Result<Vec<TableRow>, Failure> {
    let budget = args.budget.budget()?;
    let mut rows = Vec::new();
    for (group, k, paper, extended_only) in table_spec(args.which) {
        let report = bounds::best_bounds(&group, k)?;
        let solver = if args.no_solver || (extended_only && !args.extended) {
            None
        } else {
            let r = max_zero_sum_free(&group, k, &budget)?;
            r.exhausted.then_some(r.harborth)
        };
        let matches =
            report.lower <= paper && paper <= report.upper && solver.is_none_or(|v| v == paper);
        rows.push(TableRow {
            group: group.literal(),
            k,
            paper,
            registry_lower: report.lower,
            registry_upper: report.upper,
            solver,
            matches,
        });
    }
    Ok(rows)
}

fn table_report(ctx: &Ctx, name: &str, rows: &[TableRow]) -> String {
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
    let registry = |r: &TableRow| {
        if r.registry_lower == r.registry_upper {
            r.registry_lower.to_string()
        } else {
            format!("{}..{}", r.registry_lower, r.registry_upper)
        }
    };
    match ctx.format {
        Format::Json => ctx.json("table", serde_json::json!({ "table": name, "rows": rows })),
        Format::Csv => ctx.csv(
            &[
                "table",
                "group",
                "k",
                "paper",
                "registry_lower",
                "registry_upper",
                "solver",
                "match",
            ],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        name.to_string(),
                        r.group.clone(),
                        r.k.to_string(),
                        r.paper.to_string(),
                        r.registry_lower.to_string(),
                        r.registry_upper.to_string(),
                        r.solver.map(|v| v.to_string()).unwrap_or_default(),
                        r.matches.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "table: {name}");
            let _ = writeln!(
                s,
                "{:<14} {:>3} {:>6} {:>10} {:>7}  match",
                "group", "k", "paper", "registry", "solver"
            );
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:<14} {:>3} {:>6} {:>10} {:>7}  {}",
                    r.group,
                    r.k,
                    r.paper,
                    registry(r),
                    opt(r.solver),
                    if r.matches { "yes" } else { "NO" }
                );
            }
            ctx.text(s)
        }
    }
}

fn table_name(which: TableName) -> &'static str {
    match which {
        TableName::ElementaryTwoK4 => "thm39",
        TableName::SmallCyclicK3 => "prop315",
        TableName::PrimeCyclic => "remark312",
        TableName::PrimeCyclicExceptions => "remark313",
        TableName::Classical => "harborth_classical",
    }
}

/// Runs a parsed command and renders its report.
pub fn execute(cli: &Cli, timestamp: Option<u64>) -> Result<Outcome, Failure> {
    let ctx = Ctx {
        format: cli.format,
        timestamp,
    };
    let ok = |text: String| {
        Ok(Outcome {
            text,
            code: EXIT_OK,
        })
    };
    match &cli.command {
        Command::Exact(args) => {
            let t = &args.target;
            check_k(&t.group, t.k)?;
            let budget = args.budget.budget()?;
            let r = max_zero_sum_free(&t.group, t.k, &budget)?;
            write_witness(&t.witness_out, &r.witness)?;
            Ok(Outcome {
                text: exact_report(&ctx, "exact", &r),
                code: if r.exhausted { EXIT_OK } else { EXIT_BUDGET },
            })
        }
        Command::Oracle(t) => {
            check_k(&t.group, t.k)?;
            let r = brute_force_oracle(&t.group, t.k)?;
            write_witness(&t.witness_out, &r.witness)?;
            ok(exact_report(&ctx, "oracle", &r))
        }
        Command::Bounds(t) => {
            check_k(&t.group, t.k)?;
            let r = Registry::new().best_bounds(&t.group, t.k)?;
            if let Some(w) = &r.witness {
                write_witness(&t.witness_out, w)?;
            }
            ok(bounds_report(&ctx, &r))
        }
        Command::Construct(args) => {
            let set = args.set.as_deref().map(read_set).transpose()?;
            let params = GeneratorParams {
                group: args.group.clone(),
                k: args.k,
                n: args.n,
                r: args.r,
                p: args.p,
                set,
            };
            let results = constructions::by_name(&args.name, &params)?;
            if let Some(first) = results.first() {
                write_witness(&args.witness_out, &first.set)?;
            }
            let all_verified = results.iter().all(|c| c.verified);
            Ok(Outcome {
                text: construction_report(&ctx, &results),
                code: if all_verified {
                    EXIT_OK
                } else {
                    EXIT_VERIFICATION
                },
            })
        }
        Command::Verify(args) => {
            let set = read_set(&args.set)?;
            check_k(set.group(), args.k)?;
            let free = is_k_zero_sum_free(&set, args.k)?;
            let body = VerifyJson {
                group: set.group().literal(),
                k: args.k,
                size: set.len(),
                k_zero_sum_free: free,
            };
            let text = match ctx.format {
                Format::Json => ctx.json("verify", &body),
                Format::Csv => ctx.csv(
                    &["group", "k", "size", "k_zero_sum_free"],
                    &[vec![
                        body.group.clone(),
                        body.k.to_string(),
                        body.size.to_string(),
                        free.to_string(),
                    ]],
                ),
                Format::Text => ctx.text(format!(
                    "group: {}\nk: {}\nsize: {}\nk-zero-sum-free: {free}\n",
                    body.group, body.k, body.size
                )),
            };
            Ok(Outcome {
                text,
                code: if free { EXIT_OK } else { EXIT_VERIFICATION },
            })
        }
        Command::Sumset(args) => {
            let set = read_set(&args.input.set)?;
            let k = args.input.k;
            check_k(set.group(), k)?;
            let sums = if args.up_to {
                subsums_up_to(&set, k)?
            } else {
                k_subsums(&set, k)?
            };
            let dsh = if !args.up_to
                && k <= set.len()
                && set.group().prime_cyclic().is_some_and(is_prime)
            {
                Some(dsh_check(&set, k)?)
            } else {
                None
            };
            let body = SumsetJson {
                group: set.group().literal(),
                k,
                up_to: args.up_to,
                size: sums.len(),
                sums: sums
                    .sorted()
                    .elements()
                    .map(|e| e.coords().to_vec())
                    .collect(),
                dsh,
            };
            let text = match ctx.format {
                Format::Json => ctx.json("sumset", &body),
                Format::Csv => ctx.csv(
                    &[
                        "group",
                        "k",
                        "up_to",
                        "size",
                        "sums",
                        "dsh_bound",
                        "dsh_holds",
                    ],
                    &[vec![
                        body.group.clone(),
                        k.to_string(),
                        args.up_to.to_string(),
                        body.size.to_string(),
                        compact_set(&sums),
                        dsh.map(|d| d.bound.to_string()).unwrap_or_default(),
                        dsh.map(|d| d.holds.to_string()).unwrap_or_default(),
                    ]],
                ),
                Format::Text => {
                    let mut s = format!(
                        "group: {}\nk: {k}\nsize: {}\nsums: {}\n",
                        body.group,
                        body.size,
                        sums.sorted()
                    );
                    if let Some(d) = dsh {
                        let _ = writeln!(s, "dsh_bound: {}\ndsh_holds: {}", d.bound, d.holds);
                    }
                    ctx.text(s)
                }
            };
            ok(text)
        }
        Command::Table(args) => {
            let rows = table_rows(args)?;
            let all = rows.iter().all(|r| r.matches);
            Ok(Outcome {
                text: table_report(&ctx, table_name(args.which), &rows),
                code: if all { EXIT_OK } else { EXIT_VERIFICATION },
            })
        }
    }
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Parses `args`, runs the command and writes the report. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    let timestamp = (!cli.no_timestamp).then(now);
    match execute(&cli, timestamp) {
        Ok(outcome) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &outcome.text),
                None => stdout.write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: --output: {e}");
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
