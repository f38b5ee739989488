//! Command-line frontend: argument parsing, database handling and report
//! rendering for the `sharpknot` binary.

pub mod db;
pub mod error;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sharpknot::concordance::SumExpr;
use sharpknot::dimension::SlopeBound;
use sharpknot::graded::{
    section9_contradiction, solve_section9, Section9Config, Section9Query, Z4,
};
use sharpknot::inference::{apply_rules, InferenceOptions, DEFAULT_NU_BOUND};
use sharpknot::parity::{run_identity_suite, sweep, sweep_with_jobs, IdentityLimits};
use sharpknot::{classify_small, compare, dim_surgery, slope_bound, Bundle, KnotRecord, Slope};

pub use db::{canonical_json, Database, DB_ENV};
pub use error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BundleArg {
    Trivial,
    Meridional,
}

impl From<BundleArg> for Bundle {
    fn from(b: BundleArg) -> Bundle {
        match b {
            BundleArg::Trivial => Bundle::Trivial,
            BundleArg::Meridional => Bundle::Meridional,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sharpknot",
    version,
    about = "Exact calculus of instanton knot invariants"
)]
pub struct Cli {
    /// Database file; overrides the SHARPKNOT_DB environment variable.
    #[arg(long, global = true)]
    pub db: Option<PathBuf>,
    /// Accept inconsistent records when loading or importing.
    #[arg(long, global = true)]
    pub force: bool,
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of framed instanton homology of a surgery.
    Dim {
        knot: String,
        #[arg(allow_hyphen_values = true)]
        slope: String,
        #[arg(long, value_enum, default_value = "trivial")]
        bundle: BundleArg,
    },
    /// Dimensions over a range of integer slopes or an explicit list.
    Table {
        knot: String,
        #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 5, allow_hyphen_values = true)]
        to: i64,
        /// Comma-separated slopes; overrides --from/--to.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        slopes: Vec<String>,
        #[arg(long, value_enum, default_value = "trivial")]
        bundle: BundleArg,
    },
    /// Denominator bound for surgeries of a given dimension.
    #[command(group(ArgGroup::new("d").required(true).args(["dim", "khovanov"])))]
    Bound {
        dim: Option<u64>,
        /// Read D as the rank of reduced odd Khovanov homology of a link L.
        #[arg(long, value_name = "D")]
        khovanov: Option<u64>,
        /// Admit the unknot, trefoils and figure eight.
        #[arg(long)]
        include_exceptional: bool,
    },
    /// What (nu#, r0) determines about a knot.
    Classify {
        #[arg(allow_hyphen_values = true)]
        nu: i64,
        r0: u64,
    },
    /// Invariants of a connected sum; prefix names with `mirror:` to mirror.
    Sum {
        #[arg(required = true)]
        knots: Vec<String>,
    },
    /// Order two knots through epsilon# of K # mirror(K').
    Compare { a: String, b: String },
    /// Run the rule engine on a database knot or a JSON record file.
    Infer {
        target: String,
        #[arg(long, default_value_t = DEFAULT_NU_BOUND)]
        nu_bound: i64,
    },
    /// Exhaustive rank and kernel verification of the parity matrices.
    VerifyParity {
        #[arg(long, default_value_t = 8)]
        h_max: i64,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// The binomial identity suite.
    VerifyIdentities {
        #[arg(long, default_value_t = 30)]
        hockey_max: i64,
        #[arg(long, default_value_t = 12)]
        h_max: i64,
        #[arg(long, default_value_t = 10)]
        poly_h_max: i64,
        #[arg(long, default_value_t = 8)]
        pathcount_h_max: usize,
    },
    /// Graded solutions of the two surgery triangles for (nu#, r0) = (0, 2).
    GradedSolve {
        #[arg(long, default_value_t = 2)]
        dim_zero: u64,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        m: Option<i64>,
    },
    /// The full (0, 2) case analysis ending in the Alexander bound.
    Section9 {
        #[arg(long, default_value_t = 2)]
        dim_zero: u64,
        #[arg(long, allow_hyphen_values = true)]
        alexander_a: Option<i64>,
    },
    /// Import or export the database.
    Db {
        #[command(subcommand)]
        action: DbAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum DbAction {
    /// Merge records from a JSON file into the database file.
    Import { file: PathBuf },
    /// Write the database as canonical JSON.
    Export {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// How a command ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    DomainError,
    VerificationFailed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::DomainError => 1,
            Status::VerificationFailed => 2,
        }
    }
}

/// A rendered command result in all three formats.
#[derive(Debug, Clone)]
pub struct Output {
    pub human: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
    pub status: Status,
}

impl Output {
    fn new(human: String, header: &[&str], rows: Vec<Vec<String>>, json: Value) -> Output {
        Output {
            human,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            json,
            status: Status::Ok,
        }
    }

    fn with_status(mut self, status: Status) -> Output {
        self.status = status;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => {
                let mut s = self.human.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Tsv => {
                let mut s = self.header.join("\t");
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&r.join("\t"));
                    s.push('\n');
                }
                s
            }
            Format::Json => canonical_json(&self.json),
        }
    }
}

fn set_str(set: &BTreeSet<u64>) -> String {
    match set.len() {
        1 => set.first().expect("one").to_string(),
        _ => format!(
            "{{{}}}",
            set.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

fn parse_slope(s: &str) -> Result<Slope, CliError> {
    Ok(s.parse::<Slope>()?)
}

/// `{±1, ±3}`-style rendering of a slope set.
pub fn slope_set_string(slopes: &BTreeSet<(i64, i64)>) -> String {
    let mut mags: Vec<(i64, i64)> = slopes.iter().map(|&(p, q)| (p.abs(), q)).collect();
    mags.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)).then(a.1.cmp(&b.1)));
    mags.dedup();
    let items: Vec<String> = mags
        .into_iter()
        .map(|(p, q)| {
            let frac = if q == 1 {
                p.to_string()
            } else {
                format!("{p}/{q}")
            };
            match (slopes.contains(&(p, q)), slopes.contains(&(-p, q))) {
                (true, true) => format!("±{frac}"),
                (false, true) => format!("-{frac}"),
                _ => frac,
            }
        })
        .collect();
    format!("{{{}}}", items.join(", "))
}

fn bound_output(b: &SlopeBound, khovanov: bool) -> Output {
    let eq: BTreeSet<(i64, i64)> = b.equality_cases.iter().map(|c| (c.p, c.q)).collect();
    let equality = if eq.is_empty() {
        "none".to_string()
    } else {
        format!("p/q ∈ {}", slope_set_string(&eq))
    };
    let mut human = format!("q ≤ {}; equality: {equality}", b.q_max);
    if khovanov {
        let _ = write!(
            human,
            "\nbranched double cover of L with dim Khodd(L) = {}; equality forces dim = 3 and L a knot, as det(L) = |p| is odd",
            b.dim
        );
    }
    let rows = b
        .feasible
        .iter()
        .map(|c| {
            vec![
                c.p.to_string(),
                c.q.to_string(),
                c.nu.to_string(),
                c.r0.to_string(),
                (3 * c.q == b.dim as i64).to_string(),
            ]
        })
        .collect();
    let json = json!({
        "dim": b.dim,
        "exclude_exceptional": b.exclude_exceptional,
        "interpretation": if khovanov { "khovanov" } else { "surgery" },
        "q_max": b.q_max,
        "q_attained": b.q_attained(),
        "equality_slopes": eq.iter().map(|&(p, q)| format!("{p}/{q}")).collect::<Vec<_>>(),
        "feasible": b.feasible,
    });
    Output::new(human, &["p", "q", "nu_sharp", "r0", "equality"], rows, json)
}

fn infer_target(db: &Database, target: &str) -> Result<KnotRecord, CliError> {
    let path = std::path::Path::new(target);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.into(),
            message: e.to_string(),
        })?;
        return serde_json::from_str(&text).map_err(|e| CliError::Parse {
            origin: target.into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        });
    }
    db.lookup(target)
}

fn record_summary(r: &KnotRecord) -> Vec<String> {
    let mut out = Vec::new();
    let mut push = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            out.push(format!("{k} = {v}"));
        }
    };
    push("nu_sharp", r.nu_sharp.map(|v| v.to_string()));
    push("r0", r.r0.map(|v| v.to_string()));
    push("tau_sharp", r.tau_sharp.map(|v| v.to_string()));
    push("genus", r.genus.map(|v| v.to_string()));
    push("slice_genus", r.slice_genus.map(|v| v.to_string()));
    push("signature", r.signature.map(|v| v.to_string()));
    push("shape", r.shape.map(|v| v.to_string()));
    push("froyshov_plus1", r.froyshov_plus1.map(|v| v.to_string()));
    push("froyshov_minus1", r.froyshov_minus1.map(|v| v.to_string()));
    out
}

/// Runs a parsed command.
pub fn execute(cli: Cli) -> Result<Output, CliError> {
    let path = db::resolve_path(cli.db.clone());
    let format_db = || db::open(path.as_deref(), cli.force);
    Ok(match cli.command {
        Command::Dim {
            knot,
            slope,
            bundle,
        } => {
            let rec = format_db()?.lookup(&knot)?;
            let s = parse_slope(&slope)?;
            let dims = dim_surgery(&rec, s, bundle.into())?;
            let bundle = Bundle::from(bundle).to_string();
            Output::new(
                set_str(&dims),
                &["knot", "slope", "bundle", "dim"],
                vec![vec![
                    rec.name.clone(),
                    s.to_string(),
                    bundle.clone(),
                    set_str(&dims),
                ]],
                json!({"knot": rec.name, "slope": s, "bundle": bundle, "dim": dims}),
            )
        }
        Command::Table {
            knot,
            from,
            to,
            slopes,
            bundle,
        } => {
            let rec = format_db()?.lookup(&knot)?;
            let list: Vec<Slope> = if slopes.is_empty() {
                (from..=to).map(Slope::integer).collect()
            } else {
                slopes
                    .iter()
                    .map(|s| parse_slope(s))
                    .collect::<Result<_, _>>()?
            };
            let table = sharpknot::dim_table(&rec, &list, bundle.into())?;
            let human = table
                .iter()
                .map(|(s, d)| format!("{s}\t{}", set_str(d)))
                .collect::<Vec<_>>()
                .join("\n");
            let rows = table
                .iter()
                .map(|(s, d)| vec![s.to_string(), set_str(d)])
                .collect();
            let json = json!({
                "knot": rec.name,
                "bundle": Bundle::from(bundle).to_string(),
                "rows": table.iter().map(|(s, d)| json!({"slope": s, "dim": d})).collect::<Vec<_>>(),
            });
            Output::new(human, &["slope", "dim"], rows, json)
        }
        Command::Bound {
            dim,
            khovanov,
            include_exceptional,
        } => {
            let d = khovanov.or(dim).expect("clap enforces one");
            bound_output(&slope_bound(d, !include_exceptional)?, khovanov.is_some())
        }
        Command::Classify { nu, r0 } => {
            let c = classify_small(nu, r0)?;
            Output::new(
                c.to_string(),
                &["nu_sharp", "r0", "classification"],
                vec![vec![nu.to_string(), r0.to_string(), c.to_string()]],
                json!({"nu_sharp": nu, "r0": r0, "classification": c}),
            )
        }
        Command::Sum { knots } => {
            let db = format_db()?;
            let recs = knots
                .iter()
                .map(|k| db.lookup(k).map(|r| (r, false)))
                .collect::<Result<Vec<_>, _>>()?;
            let report = SumExpr::new(recs)?.evaluate()?;
            let nus = report
                .nu_candidates
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            let opt = |v: Option<String>| v.unwrap_or_else(|| "unknown".into());
            let fields = [
                ("nu_sharp", format!("{{{nus}}}")),
                ("tau_sharp", opt(report.tau_sharp.map(|t| t.to_string()))),
                ("epsilon_sharp", report.epsilon.to_string()),
                ("shape", opt(report.shape.map(|s| s.to_string()))),
            ];
            let human = fields
                .iter()
                .map(|(k, v)| format!("{k}: {v}"))
                .collect::<Vec<_>>()
                .join("\n");
            let rows = fields
                .iter()
                .map(|(k, v)| vec![k.to_string(), v.clone()])
                .collect();
            Output::new(
                human,
                &["field", "value"],
                rows,
                json!({"summands": knots, "report": report}),
            )
        }
        Command::Compare { a, b } => {
            let db = format_db()?;
            let o = compare(&db.lookup(&a)?, &db.lookup(&b)?)?;
            Output::new(
                o.to_string(),
                &["a", "b", "ordering"],
                vec![vec![a.clone(), b.clone(), o.to_string()]],
                json!({"a": a, "b": b, "ordering": o}),
            )
        }
        Command::Infer { target, nu_bound } => {
            let rec = infer_target(&format_db()?, &target)?;
            let report = apply_rules(
                &rec,
                &InferenceOptions {
                    nu_bound,
                    order: None,
                },
            );
            let mut human = String::new();
            for d in &report.derivations {
                let _ = writeln!(human, "{d}");
            }
            for s in &report.statements {
                let _ = writeln!(human, "statement {s}");
            }
            for c in &report.contradictions {
                let _ = writeln!(human, "contradiction {c}");
            }
            for (k, v) in &report.candidates {
                let vals = v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
                let _ = writeln!(human, "candidates {k} = {{{vals}}}");
            }
            if report.is_consistent() {
                let _ = writeln!(
                    human,
                    "{}: {}",
                    report.record.name,
                    record_summary(&report.record).join(", ")
                );
                let _ = writeln!(human, "epsilon_sharp = {}", report.epsilon);
            }
            let rows = report
                .derivations
                .iter()
                .map(|d| {
                    vec![
                        d.rule_id.clone(),
                        d.field.clone(),
                        d.before.clone(),
                        d.after.clone(),
                        d.anchor.clone(),
                    ]
                })
                .collect();
            let status = if report.is_consistent() {
                Status::Ok
            } else {
                Status::DomainError
            };
            Output::new(
                human,
                &["rule", "field", "before", "after", "anchor"],
                rows,
                json!(report),
            )
            .with_status(status)
        }
        Command::VerifyParity { h_max, k_max, jobs } => {
            let report = match jobs {
                Some(j) => sweep_with_jobs(h_max, k_max, j)?,
                None => sweep(h_max, k_max)?,
            };
            let human = format!(
                "{} index sets with h <= {h_max}, k <= {k_max}: {} failures",
                report.checked,
                report.failures.len()
            );
            let rows = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.h.to_string(),
                        r.k.to_string(),
                        r.checked.to_string(),
                        r.failed.to_string(),
                    ]
                })
                .collect();
            let status = if report.passed() {
                Status::Ok
            } else {
                Status::VerificationFailed
            };
            Output::new(human, &["h", "k", "checked", "failed"], rows, json!(report))
                .with_status(status)
        }
        Command::VerifyIdentities {
            hockey_max,
            h_max,
            poly_h_max,
            pathcount_h_max,
        } => {
            let limits = IdentityLimits {
                hockey_max,
                h_max,
                poly_h_max,
                pathcount_h_max,
            };
            let checks = run_identity_suite(&limits)?;
            let human = checks
                .iter()
                .map(|c| format!("{}: {} checked, {} failed", c.name, c.checked, c.failed))
                .collect::<Vec<_>>()
                .join("\n");
            let rows = checks
                .iter()
                .map(|c| vec![c.name.clone(), c.checked.to_string(), c.failed.to_string()])
                .collect();
            let status = if checks.iter().all(|c| c.passed()) {
                Status::Ok
            } else {
                Status::VerificationFailed
            };
            Output::new(
                human,
                &["identity", "checked", "failed"],
                rows,
                json!({"limits": limits, "checks": checks}),
            )
            .with_status(status)
        }
        Command::GradedSolve { dim_zero, k, m } => {
            let query = Section9Query {
                dim_zero_total: dim_zero,
                forced_k: k.map(Z4::new),
                forced_m: m.map(Z4::new),
            };
            let sols = solve_section9(&query);
            let rows: Vec<Vec<String>> = sols
                .iter()
                .map(|s| {
                    vec![
                        s.k.to_string(),
                        s.m.to_string(),
                        s.minus1.to_string(),
                        s.plus1.to_string(),
                        s.zero.to_string(),
                    ]
                })
                .collect();
            let human = if sols.is_empty() {
                "no solutions".to_string()
            } else {
                rows.iter()
                    .map(|r| {
                        format!(
                            "k = {}, m = {}: I#(S^3_-1) = {}, I#(S^3_1) = {}, I#(S^3_0) = {}",
                            r[0], r[1], r[2], r[3], r[4]
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Output::new(
                human,
                &["k", "m", "minus1", "plus1", "zero"],
                rows,
                json!({"query": query, "solutions": sols}),
            )
        }
        Command::Section9 {
            dim_zero,
            alexander_a,
        } => {
            let r = section9_contradiction(&Section9Config {
                dim_zero_total: dim_zero,
                forced_a: alexander_a,
            })?;
            let mut human = r.trace.join("\n");
            let _ = write!(
                human,
                "\nbranch: {}",
                serde_json::to_value(r.branch)
                    .expect("enum")
                    .as_str()
                    .unwrap_or("?")
            );
            let rows = r
                .trace
                .iter()
                .enumerate()
                .map(|(i, t)| vec![(i + 1).to_string(), t.clone()])
                .collect();
            Output::new(human, &["step", "detail"], rows, json!(r))
        }
        Command::Db { action } => match action {
            DbAction::Import { file } => {
                let target = path.clone().ok_or_else(|| {
                    CliError::Usage(format!(
                        "db import needs --db or {DB_ENV} to name the database file"
                    ))
                })?;
                let mut base = format_db()?;
                let incoming = Database::load(&file, cli.force)?;
                let n = base.merge(incoming, cli.force)?;
                base.save(&target)?;
                let human = format!(
                    "imported {n} records into {} ({} total)",
                    target.display(),
                    base.len()
                );
                Output::new(
                    human,
                    &["imported", "total", "path"],
                    vec![vec![
                        n.to_string(),
                        base.len().to_string(),
                        target.display().to_string(),
                    ]],
                    json!({"imported": n, "total": base.len(), "path": target.display().to_string()}),
                )
            }
            DbAction::Export { output } => {
                let base = format_db()?;
                let text = base.to_json();
                let json: Value = serde_json::from_str(&text).expect("own output parses");
                match output {
                    Some(p) => {
                        std::fs::write(&p, &text).map_err(|e| CliError::Io {
                            path: p.clone(),
                            message: e.to_string(),
                        })?;
                        let human = format!("exported {} records to {}", base.len(), p.display());
                        Output::new(
                            human,
                            &["exported", "path"],
                            vec![vec![base.len().to_string(), p.display().to_string()]],
                            json,
                        )
                    }
                    None => {
                        let rows = base
                            .records()
                            .map(|r| vec![r.name.clone(), record_summary(r).join(", ")])
                            .collect();
                        Output::new(
                            text.trim_end().to_string(),
                            &["name", "invariants"],
                            rows,
                            json,
                        )
                    }
                }
            }
        },
    })
}

/// Parses `args` (without the program name), runs the command and returns
/// the exit code with the text for stdout and stderr.
pub fn run<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("sharpknot"))
        .chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (1, String::new(), text)
            };
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(out) => (out.status.code(), out.render(format), String::new()),
        Err(e) => (1, String::new(), format!("error: {e}\n")),
    }
}
