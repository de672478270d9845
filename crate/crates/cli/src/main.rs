//! `singularhorn`: generate, check, minimize and sample singular Horn systems.

mod cache;
mod numbers;
mod rows;

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use singularhorn::cone::{
    evaluate, minimize_system, Elimination, Evaluation, InequalitySystem, Row,
};
use singularhorn::horn::{
    generate_horn_inequalities, horn_chamber, horn_label, horn_membership, horn_system, HornMode,
    RealTriple,
};
use singularhorn::singular::{
    classify_family, embedded_horn_membership, generate_singular_inequalities,
    membership_singular_with, minimal_singular_system, singular_chamber, singular_system, Family,
    SingularMode,
};
use singularhorn::Error;
use singularhorn_oracle::verify_necessity;

use crate::numbers::{format_rational, parse_rational};
use crate::rows::{
    horn_text, orbit, orbit_representatives, permutations_note, singular_text, CertValue, HornRow,
    SingularRow,
};

#[derive(Parser)]
#[command(
    name = "singularhorn",
    version,
    about = "Inequalities for singular values of sums of p x q matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an inequality system.
    #[command(subcommand)]
    Generate(Target),
    /// Decide exact membership of a triple given after `--` as x, y, z.
    Check(CheckArgs),
    /// Remove redundant rows and report which chamber rows are essential.
    Minimize(MinimizeArgs),
    /// Decide whether Singular(p, q) has stabilized in p.
    Stabilize(Shape),
    /// Sample singular spectra of A + B and test them against a system.
    Sample(SampleArgs),
    /// Tally generated rows by classical family.
    Families(FamilyArgs),
}

#[derive(Subcommand)]
enum Target {
    /// Horn(n) on triples of decreasing vectors with zero total trace.
    Horn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "lr-one", value_parser = parse_horn_mode)]
        mode: HornMode,
    },
    /// Singular(p, q) on triples of decreasing nonnegative vectors.
    Singular {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value = "grassmann-pair-one", value_parser = parse_singular_mode)]
        mode: SingularMode,
    },
}

#[derive(Args, Clone, Copy)]
struct Shape {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, required_unless_present = "n", requires = "q")]
    p: Option<usize>,
    #[arg(long, requires = "p")]
    q: Option<usize>,
    /// Check Horn(n) membership instead.
    #[arg(long, conflicts_with_all = ["p", "q", "cross_check_horn"])]
    n: Option<usize>,
    /// Generator mode (singular or Horn, by command shape).
    #[arg(long)]
    mode: Option<String>,
    /// Also decide Horn(p+q) membership of the embedded triple.
    #[arg(long)]
    cross_check_horn: bool,
    /// The 3q (or 3n) coordinates: x, then y, then z.
    #[arg(last = true, required = true, allow_hyphen_values = true)]
    values: Vec<String>,
}

#[derive(Args)]
struct MinimizeArgs {
    #[arg(long, requires = "q", conflicts_with_all = ["n", "input"])]
    p: Option<usize>,
    #[arg(long, requires = "p")]
    q: Option<usize>,
    #[arg(long, conflicts_with = "input")]
    n: Option<usize>,
    /// Generator mode (default horn-pair for singular, lr-positive for Horn).
    #[arg(long)]
    mode: Option<String>,
    /// Minimize the rows of a JSON document written by `generate`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, default_value = "bk-flag-one", value_parser = parse_singular_mode)]
    mode: SingularMode,
    /// Test against the rows of a JSON document written by `generate`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "1e-9")]
    tol: String,
    /// The 2q singular values: x, then y.
    #[arg(last = true, required = true, allow_hyphen_values = true)]
    values: Vec<String>,
}

#[derive(Args)]
struct FamilyArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, default_value = "grassmann-pair-one", value_parser = parse_singular_mode)]
    mode: SingularMode,
}

fn parse_horn_mode(s: &str) -> Result<HornMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_singular_mode(s: &str) -> Result<SingularMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// A rendered command result. `failed` turns a written report into exit 1.
struct Report {
    json: String,
    csv_header: Vec<String>,
    csv_rows: Vec<Vec<String>>,
    text: String,
    failed: Option<String>,
}

impl Report {
    fn new<T: Serialize>(doc: &T, header: &[&str], rows: Vec<Vec<String>>, text: String) -> Self {
        Self {
            json: serde_json::to_string_pretty(doc).expect("documents serialize") + "\n",
            csv_header: header.iter().map(|s| s.to_string()).collect(),
            csv_rows: rows,
            text,
            failed: None,
        }
    }

    fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Json => self.json.clone().into_bytes(),
            Format::Text => self.text.clone().into_bytes(),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header).expect("in-memory write");
                for row in &self.csv_rows {
                    w.write_record(row).expect("in-memory write");
                }
                w.into_inner().expect("in-memory write")
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("the global pool is configured once");
    }
    let cache = cache::Cache::open_from_env();
    let result = run(&cli.command);
    if let Some(cache) = &cache {
        if let Err(e) = cache.save() {
            eprintln!("warning: could not write the cache: {e}");
        }
    }
    let report = match result {
        Ok(report) => report,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(1);
        }
    };
    let bytes = report.render(cli.format);
    let written = match &cli.out {
        Some(path) => fs::write(path, &bytes),
        None => std::io::stdout().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    match report.failed {
        Some(msg) => {
            eprintln!("inconsistency: {msg}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}

fn run(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Generate(Target::Horn { n, mode }) => generate_horn(*n, *mode),
        Command::Generate(Target::Singular { shape, mode }) => generate_singular(*shape, *mode),
        Command::Check(args) => check(args),
        Command::Minimize(args) => minimize(args),
        Command::Stabilize(shape) => stabilize(*shape),
        Command::Sample(args) => sample(args),
        Command::Families(args) => families(args),
    }
}

fn check_shape(shape: Shape) -> Result<(), Failure> {
    if shape.q == 0 || shape.p < shape.q {
        return Err(usage(format!(
            "need p >= q >= 1, got p = {}, q = {}",
            shape.p, shape.q
        )));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(usage("need n >= 1"));
    }
    Ok(())
}

fn singular_rows(shape: Shape, mode: SingularMode) -> Result<Vec<SingularRow>, Failure> {
    check_shape(shape)?;
    let list = generate_singular_inequalities(shape.p, shape.q, mode)?;
    let mut rows: Vec<SingularRow> = list.iter().map(SingularRow::new).collect();
    rows.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    Ok(rows)
}

fn horn_rows(n: usize, mode: HornMode) -> Vec<HornRow> {
    let mut rows: Vec<HornRow> = generate_horn_inequalities(n, mode)
        .iter()
        .map(|i| HornRow::new(i, mode.as_str()))
        .collect();
    rows.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    rows
}

#[derive(Serialize)]
struct ChamberRow {
    label: String,
    essential: bool,
}

fn chamber_rows(flags: &[(String, bool)]) -> Vec<ChamberRow> {
    flags
        .iter()
        .map(|(label, essential)| ChamberRow {
            label: label.clone(),
            essential: *essential,
        })
        .collect()
}

/// Orbit-grouped text listing of sorted rows.
fn orbit_listing(coeffs: &[Vec<i64>], describe: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (index, size) in orbit_representatives(coeffs) {
        out.push_str(&format!(
            "  {}{}\n",
            describe(index),
            permutations_note(size)
        ));
    }
    out
}

#[derive(Serialize)]
struct HornDocument {
    kind: &'static str,
    n: usize,
    mode: String,
    horn_count: usize,
    essential_chamber_count: usize,
    total: usize,
    chamber: Vec<ChamberRow>,
    inequalities: Vec<HornRow>,
}

fn generate_horn(n: usize, mode: HornMode) -> Result<Report, Failure> {
    check_n(n)?;
    let rows = horn_rows(n, mode);
    let list = generate_horn_inequalities(n, mode);
    let min = minimize_system(&horn_system(n, &list)?, &horn_chamber(n))?;
    let essential = min.chamber_essential.iter().filter(|(_, e)| *e).count();
    let doc = HornDocument {
        kind: "horn",
        n,
        mode: mode.as_str().into(),
        horn_count: rows.len(),
        essential_chamber_count: essential,
        total: rows.len() + essential,
        chamber: chamber_rows(&min.chamber_essential),
        inequalities: rows,
    };
    let coeffs: Vec<Vec<i64>> = doc.inequalities.iter().map(|r| r.coeffs.clone()).collect();
    let mut text = format!(
        "Horn({n}), mode {}: {} inequalities + {} essential chamber inequalities = {}\n",
        doc.mode, doc.horn_count, essential, doc.total
    );
    text.push_str(&orbit_listing(&coeffs, |k| {
        let r = &doc.inequalities[k];
        format!(
            "{}   [r={}, l={}]",
            horn_text(&r.coeffs),
            r.r,
            r.certificate.value
        )
    }));
    let csv = doc.inequalities.iter().map(HornRow::csv_record).collect();
    Ok(Report::new(&doc, &HornRow::CSV_HEADER, csv, text))
}

#[derive(Serialize)]
struct SingularDocument {
    kind: &'static str,
    p: usize,
    q: usize,
    mode: String,
    count: usize,
    orbits: usize,
    chamber: Vec<String>,
    inequalities: Vec<SingularRow>,
}

fn singular_text_listing(rows: &[SingularRow]) -> String {
    let coeffs: Vec<Vec<i64>> = rows.iter().map(|r| r.coeffs.clone()).collect();
    orbit_listing(&coeffs, |k| {
        let r = &rows[k];
        format!(
            "{}   [{}, r={}, {}{}]",
            singular_text(&r.coeffs),
            r.family,
            r.r,
            match r.certificate.value {
                CertValue::Pair([a, b]) => format!("l'={a} l''={b}"),
                CertValue::Single(l) => format!("l={l}"),
            },
            if r.regular { "" } else { ", not regular" }
        )
    })
}

fn generate_singular(shape: Shape, mode: SingularMode) -> Result<Report, Failure> {
    let rows = singular_rows(shape, mode)?;
    let coeffs: Vec<Vec<i64>> = rows.iter().map(|r| r.coeffs.clone()).collect();
    let doc = SingularDocument {
        kind: "singular",
        p: shape.p,
        q: shape.q,
        mode: mode.as_str().into(),
        count: rows.len(),
        orbits: orbit_representatives(&coeffs).len(),
        chamber: singular_chamber(shape.q)
            .inequalities()
            .iter()
            .map(|r| r.label.clone())
            .collect(),
        inequalities: rows,
    };
    let mut text = format!(
        "Singular({},{}), mode {}: {} inequalities in {} orbits, plus {} chamber inequalities\n",
        shape.p,
        shape.q,
        doc.mode,
        doc.count,
        doc.orbits,
        doc.chamber.len()
    );
    text.push_str(&singular_text_listing(&doc.inequalities));
    let csv = doc
        .inequalities
        .iter()
        .map(SingularRow::csv_record)
        .collect();
    Ok(Report::new(&doc, &SingularRow::CSV_HEADER, csv, text))
}

#[derive(Serialize)]
struct ViolatedRow {
    label: String,
    inequality: String,
    margin: String,
}

#[derive(Serialize)]
struct CheckDocument {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    mode: String,
    x: Vec<String>,
    y: Vec<String>,
    z: Vec<String>,
    member: bool,
    violated: Vec<ViolatedRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    horn_cross_check: Option<bool>,
}

fn parse_triple(values: &[String], m: usize) -> Result<[Vec<BigRational>; 3], Failure> {
    if values.len() != 3 * m {
        return Err(usage(format!(
            "expected {} coordinates, got {}",
            3 * m,
            values.len()
        )));
    }
    let v: Vec<BigRational> = values
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_, _>>()
        .map_err(usage)?;
    Ok([v[..m].to_vec(), v[m..2 * m].to_vec(), v[2 * m..].to_vec()])
}

fn violations(
    sys: &InequalitySystem,
    point: &[BigRational],
    text: impl Fn(&Row) -> String,
) -> Result<Vec<ViolatedRow>, Failure> {
    Ok(match evaluate(sys, point)? {
        Evaluation::Member => Vec::new(),
        Evaluation::Violated(list) => {
            let rows: HashMap<&str, &Row> = sys
                .inequalities()
                .iter()
                .chain(sys.equalities())
                .map(|r| (r.label.as_str(), r))
                .collect();
            list.into_iter()
                .map(|v| ViolatedRow {
                    inequality: text(rows[v.label.as_str()]),
                    margin: format_rational(&v.margin),
                    label: v.label,
                })
                .collect()
        }
    })
}

fn integer_coeffs(row: &Row) -> Vec<i64> {
    row.coeffs
        .iter()
        .map(|c| i64::try_from(c.to_integer()).expect("generated coefficients are small integers"))
        .collect()
}

fn check(args: &CheckArgs) -> Result<Report, Failure> {
    let (doc, failed) = match (args.n, args.p, args.q) {
        (Some(n), _, _) => {
            check_n(n)?;
            let mode = parse_horn_mode(args.mode.as_deref().unwrap_or("lr-one")).map_err(usage)?;
            let [x, y, z] = parse_triple(&args.values, n)?;
            let t = RealTriple::new(x.clone(), y.clone(), z.clone())?;
            let member = horn_membership(&t, mode)?;
            let sys = horn_system(n, &generate_horn_inequalities(n, mode))?;
            let violated = violations(&sys, &t.concat(), |r| {
                if r.label == "trace" {
                    "sum(x) + sum(y) + sum(z) = 0".into()
                } else {
                    horn_text(&integer_coeffs(r))
                }
            })?;
            let failed = (member != violated.is_empty())
                .then(|| "membership disagrees with the evaluated system".to_string());
            let doc = CheckDocument {
                kind: "check",
                p: None,
                q: None,
                n: Some(n),
                mode: mode.as_str().into(),
                x: x.iter().map(format_rational).collect(),
                y: y.iter().map(format_rational).collect(),
                z: z.iter().map(format_rational).collect(),
                member,
                violated,
                horn_cross_check: None,
            };
            (doc, failed)
        }
        (None, Some(p), Some(q)) => {
            let shape = Shape { p, q };
            check_shape(shape)?;
            let mode = parse_singular_mode(args.mode.as_deref().unwrap_or("grassmann-pair-one"))
                .map_err(usage)?;
            let [x, y, z] = parse_triple(&args.values, q)?;
            let member = membership_singular_with(&x, &y, &z, p, q, mode)?;
            let sys = singular_system(q, &generate_singular_inequalities(p, q, mode)?)?;
            let point: Vec<BigRational> = [x.clone(), y.clone(), z.clone()].concat();
            let violated = violations(&sys, &point, |r| singular_text(&integer_coeffs(r)))?;
            let cross = if args.cross_check_horn {
                Some(embedded_horn_membership(&x, &y, &z, p, q, HornMode::LrOne)?)
            } else {
                None
            };
            let failed = if member != violated.is_empty() {
                Some("membership disagrees with the evaluated system".to_string())
            } else if cross.is_some_and(|c| c != member) {
                Some("the Horn embedding disagrees with the singular system".to_string())
            } else {
                None
            };
            let doc = CheckDocument {
                kind: "check",
                p: Some(p),
                q: Some(q),
                n: None,
                mode: mode.as_str().into(),
                x: x.iter().map(format_rational).collect(),
                y: y.iter().map(format_rational).collect(),
                z: z.iter().map(format_rational).collect(),
                member,
                violated,
                horn_cross_check: cross,
            };
            (doc, failed)
        }
        _ => return Err(usage("give either --n or both --p and --q")),
    };
    let mut text = format!("{}\n", if doc.member { "member" } else { "non-member" });
    for v in &doc.violated {
        text.push_str(&format!(
            "  violated: {}   (margin {})\n",
            v.inequality, v.margin
        ));
    }
    if let Some(c) = doc.horn_cross_check {
        text.push_str(&format!(
            "horn embedding: {}\n",
            if c { "member" } else { "non-member" }
        ));
    }
    let csv = doc
        .violated
        .iter()
        .map(|v| vec![v.label.clone(), v.inequality.clone(), v.margin.clone()])
        .collect();
    let mut report = Report::new(&doc, &["label", "inequality", "margin"], csv, text);
    report.failed = failed;
    Ok(report)
}

type Renderer = fn(&[i64]) -> String;

/// A system to minimize or sample against, with a renderer per row label.
struct LabelledSystem {
    system: InequalitySystem,
    chamber: InequalitySystem,
    rows: BTreeMap<String, serde_json::Value>,
    text: Renderer,
    kind: &'static str,
    description: String,
}

fn read_document(path: &PathBuf) -> Result<LabelledSystem, Failure> {
    let bytes = fs::read(path)?;
    let doc: serde_json::Value =
        serde_json::from_slice(&bytes).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let field = |name: &str| doc.get(name).and_then(|v| v.as_u64()).map(|v| v as usize);
    let (kind, dim, text, chamber): (&'static str, usize, Renderer, InequalitySystem) =
        match doc.get("kind").and_then(|k| k.as_str()) {
            Some("singular") => {
                let q = field("q")
                    .filter(|&q| q > 0)
                    .ok_or_else(|| usage("document lacks q"))?;
                ("singular", 3 * q, singular_text, singular_chamber(q))
            }
            Some("horn") => {
                let n = field("n")
                    .filter(|&n| n > 0)
                    .ok_or_else(|| usage("document lacks n"))?;
                ("horn", 3 * n, horn_text, horn_chamber(n))
            }
            _ => return Err(usage("document kind must be `singular` or `horn`")),
        };
    let list = doc
        .get("inequalities")
        .and_then(|v| v.as_array())
        .ok_or_else(|| usage("document lacks inequalities"))?;
    let mut system = InequalitySystem::new(dim);
    let mut rows = BTreeMap::new();
    for (k, row) in list.iter().enumerate() {
        let coeffs: Vec<i64> = row
            .get("coeffs")
            .and_then(|c| c.as_array())
            .and_then(|c| c.iter().map(|v| v.as_i64()).collect::<Option<_>>())
            .ok_or_else(|| usage(format!("row {k} lacks integer coeffs")))?;
        if coeffs.len() != dim {
            return Err(usage(format!(
                "row {k} has {} coefficients, expected {dim}",
                coeffs.len()
            )));
        }
        let label = format!("row{k:05}");
        system.push_inequality(Row::from_integers(label.clone(), &coeffs, 0))?;
        rows.insert(label, row.clone());
    }
    if kind == "horn" {
        system.push_equality(Row::from_integers("trace", &vec![1; dim], 0))?;
    }
    Ok(LabelledSystem {
        system,
        chamber,
        rows,
        text,
        kind,
        description: path.display().to_string(),
    })
}

fn generated_singular(shape: Shape, mode: SingularMode) -> Result<LabelledSystem, Failure> {
    check_shape(shape)?;
    let list = generate_singular_inequalities(shape.p, shape.q, mode)?;
    let rows = list
        .iter()
        .map(|i| {
            (
                i.label(),
                serde_json::to_value(SingularRow::new(i)).expect("rows serialize"),
            )
        })
        .collect();
    Ok(LabelledSystem {
        system: singular_system(shape.q, &list)?,
        chamber: singular_chamber(shape.q),
        rows,
        text: singular_text,
        kind: "singular",
        description: format!("Singular({},{}) {mode}", shape.p, shape.q),
    })
}

fn generated_horn(n: usize, mode: HornMode) -> Result<LabelledSystem, Failure> {
    check_n(n)?;
    let list = generate_horn_inequalities(n, mode);
    let rows = list
        .iter()
        .map(|i| {
            (
                horn_label(i),
                serde_json::to_value(HornRow::new(i, mode.as_str())).expect("rows serialize"),
            )
        })
        .collect();
    Ok(LabelledSystem {
        system: horn_system(n, &list)?,
        chamber: horn_chamber(n),
        rows,
        text: horn_text,
        kind: "horn",
        description: format!("Horn({n}) {mode}"),
    })
}

#[derive(Serialize)]
struct EliminatedRow {
    label: String,
    reason: &'static str,
    row: serde_json::Value,
}

#[derive(Serialize)]
struct MinimizeDocument {
    kind: &'static str,
    system: &'static str,
    source: String,
    input_count: usize,
    surviving_count: usize,
    essential_chamber_count: usize,
    total: usize,
    chamber: Vec<ChamberRow>,
    eliminated: Vec<EliminatedRow>,
    surviving: Vec<serde_json::Value>,
}

fn row_coeffs(row: &serde_json::Value) -> Vec<i64> {
    row["coeffs"]
        .as_array()
        .map_or_else(Vec::new, |c| c.iter().filter_map(|v| v.as_i64()).collect())
}

fn minimize(args: &MinimizeArgs) -> Result<Report, Failure> {
    let source = match (&args.input, args.n, args.p, args.q) {
        (Some(path), ..) => read_document(path)?,
        (None, Some(n), ..) => {
            let mode =
                parse_horn_mode(args.mode.as_deref().unwrap_or("lr-positive")).map_err(usage)?;
            generated_horn(n, mode)?
        }
        (None, None, Some(p), Some(q)) => {
            let mode =
                parse_singular_mode(args.mode.as_deref().unwrap_or("horn-pair")).map_err(usage)?;
            generated_singular(Shape { p, q }, mode)?
        }
        _ => return Err(usage("give --input, --n, or both --p and --q")),
    };
    let min = minimize_system(&source.system, &source.chamber)?;
    let mut surviving: Vec<serde_json::Value> = min
        .system
        .inequalities()
        .iter()
        .map(|r| source.rows[&r.label].clone())
        .collect();
    surviving.sort_by_key(row_coeffs);
    let mut eliminated: Vec<EliminatedRow> = min
        .eliminated
        .iter()
        .map(|(label, why)| EliminatedRow {
            label: label.clone(),
            reason: match why {
                Elimination::Trivial => "trivial",
                Elimination::Duplicate => "duplicate",
                Elimination::Redundant => "redundant",
            },
            row: source.rows[label].clone(),
        })
        .collect();
    eliminated.sort_by(|a, b| {
        row_coeffs(&a.row)
            .cmp(&row_coeffs(&b.row))
            .then(a.label.cmp(&b.label))
    });
    let essential = min.chamber_essential.iter().filter(|(_, e)| *e).count();
    let doc = MinimizeDocument {
        kind: "minimize",
        system: source.kind,
        source: source.description.clone(),
        input_count: source.rows.len(),
        surviving_count: surviving.len(),
        essential_chamber_count: essential,
        total: surviving.len() + essential,
        chamber: chamber_rows(&min.chamber_essential),
        eliminated,
        surviving,
    };
    let mut text = format!(
        "{}: {} rows, {} survive, {} of {} chamber rows essential, {} in total\n",
        doc.source,
        doc.input_count,
        doc.surviving_count,
        essential,
        doc.chamber.len(),
        doc.total
    );
    for e in &doc.eliminated {
        text.push_str(&format!(
            "  eliminated ({}): {}   [{}]\n",
            e.reason,
            (source.text)(&row_coeffs(&e.row)),
            e.label
        ));
    }
    for c in doc.chamber.iter().filter(|c| !c.essential) {
        text.push_str(&format!("  inessential chamber row: {}\n", c.label));
    }
    let coeffs: Vec<Vec<i64>> = doc.surviving.iter().map(row_coeffs).collect();
    text.push_str("surviving:\n");
    text.push_str(&orbit_listing(&coeffs, |k| (source.text)(&coeffs[k])));
    let csv = doc
        .surviving
        .iter()
        .map(|r| vec![(source.text)(&row_coeffs(r)), rows_join(&row_coeffs(r))])
        .collect();
    Ok(Report::new(&doc, &["inequality", "coeffs"], csv, text))
}

fn rows_join(v: &[i64]) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct StabilizeDocument {
    kind: &'static str,
    p: usize,
    q: usize,
    stable: bool,
    minimal_count: usize,
    eliminated: Vec<String>,
    non_regular: Vec<SingularRow>,
}

fn stabilize(shape: Shape) -> Result<Report, Failure> {
    check_shape(shape)?;
    let stab = minimal_singular_system(shape.p, shape.q)?;
    let mut non_regular: Vec<SingularRow> = stab
        .non_regular()
        .into_iter()
        .map(SingularRow::new)
        .collect();
    non_regular.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    let mut eliminated = stab.eliminated.clone();
    eliminated.sort();
    let doc = StabilizeDocument {
        kind: "stabilize",
        p: shape.p,
        q: shape.q,
        stable: stab.is_stable(),
        minimal_count: stab.minimal.len(),
        eliminated,
        non_regular,
    };
    let mut text = format!(
        "Singular({},{}): {} ({} minimal rows)\n",
        shape.p,
        shape.q,
        if doc.stable { "stable" } else { "not stable" },
        doc.minimal_count
    );
    text.push_str(&singular_text_listing(&doc.non_regular));
    let csv = vec![vec![
        shape.p.to_string(),
        shape.q.to_string(),
        doc.stable.to_string(),
        doc.minimal_count.to_string(),
        doc.non_regular.len().to_string(),
    ]];
    Ok(Report::new(
        &doc,
        &["p", "q", "stable", "minimal_count", "non_regular_count"],
        csv,
        text,
    ))
}

#[derive(Serialize)]
struct SampleDocument {
    kind: &'static str,
    p: usize,
    q: usize,
    source: String,
    rows: usize,
    x: Vec<f64>,
    y: Vec<f64>,
    trials: u64,
    seed: u64,
    tol: f64,
    violations: u64,
    violating_trials: u64,
    worst_margin: f64,
    worst_label: Option<String>,
    z_min: Vec<f64>,
    z_max: Vec<f64>,
}

fn sample(args: &SampleArgs) -> Result<Report, Failure> {
    let shape = args.shape;
    check_shape(shape)?;
    let tol: f64 = args
        .tol
        .parse()
        .map_err(|_| usage(format!("bad --tol `{}`", args.tol)))?;
    if tol.is_nan() || tol < 0.0 {
        return Err(usage("--tol must be nonnegative"));
    }
    if args.values.len() != 2 * shape.q {
        return Err(usage(format!(
            "expected {} singular values, got {}",
            2 * shape.q,
            args.values.len()
        )));
    }
    let v: Vec<f64> = args
        .values
        .iter()
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| usage(format!("`{s}` is not a number")))
        })
        .collect::<Result<_, _>>()?;
    let (x, y) = v.split_at(shape.q);
    let source = match &args.input {
        Some(path) => read_document(path)?,
        None => generated_singular(shape, args.mode)?,
    };
    if source.kind != "singular" || source.system.dimension() != 3 * shape.q {
        return Err(usage(format!(
            "{} is not a singular system for q = {}",
            source.description, shape.q
        )));
    }
    let report = verify_necessity(
        &source.system,
        x,
        y,
        shape.p,
        shape.q,
        args.trials,
        tol,
        args.seed,
    )?;
    let doc = SampleDocument {
        kind: "sample",
        p: shape.p,
        q: shape.q,
        source: source.description.clone(),
        rows: source.system.inequalities().len(),
        x: x.to_vec(),
        y: y.to_vec(),
        trials: report.trials,
        seed: args.seed,
        tol,
        violations: report.violations,
        violating_trials: report.violating_trials,
        worst_margin: report.worst_margin,
        worst_label: report.worst_label.map(|l| {
            source
                .rows
                .get(&l)
                .map_or(l, |row| (source.text)(&row_coeffs(row)))
        }),
        z_min: report.z_min,
        z_max: report.z_max,
    };
    let mut text = format!(
        "{} against {} rows: {} trials (seed {}), {} violations in {} trials, worst margin {:.3e}{}\n",
        doc.source,
        doc.rows,
        doc.trials,
        doc.seed,
        doc.violations,
        doc.violating_trials,
        doc.worst_margin,
        doc.worst_label.as_ref().map_or(String::new(), |l| format!(" at {l}")),
    );
    for (a, (lo, hi)) in doc.z_min.iter().zip(&doc.z_max).enumerate() {
        text.push_str(&format!("  z{}: [{lo:.6}, {hi:.6}]\n", a + 1));
    }
    let csv = vec![vec![
        doc.trials.to_string(),
        doc.seed.to_string(),
        doc.violations.to_string(),
        doc.violating_trials.to_string(),
        doc.worst_margin.to_string(),
        rows_join_f(&doc.z_min),
        rows_join_f(&doc.z_max),
    ]];
    let mut out = Report::new(
        &doc,
        &[
            "trials",
            "seed",
            "violations",
            "violating_trials",
            "worst_margin",
            "z_min",
            "z_max",
        ],
        csv,
        text,
    );
    if args.input.is_none() && doc.violations > 0 {
        out.failed = Some(format!(
            "{} samples violate a generated system",
            doc.violating_trials
        ));
    }
    Ok(out)
}

fn rows_join_f(v: &[f64]) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct FamilyCount {
    family: &'static str,
    rows: usize,
    orbits: usize,
}

#[derive(Serialize)]
struct FamiliesDocument {
    kind: &'static str,
    p: usize,
    q: usize,
    mode: String,
    total: usize,
    orbits: usize,
    families: Vec<FamilyCount>,
}

fn families(args: &FamilyArgs) -> Result<Report, Failure> {
    check_shape(args.shape)?;
    let list = generate_singular_inequalities(args.shape.p, args.shape.q, args.mode)?;
    let mut all: Vec<Vec<i64>> = list.iter().map(|i| i.coeffs()).collect();
    all.sort();
    let counts: Vec<FamilyCount> = Family::ALL
        .iter()
        .map(|f| {
            let mut members: Vec<Vec<i64>> = list
                .iter()
                .filter(|i| classify_family(i) == *f)
                .map(|i| i.coeffs())
                .collect();
            members.sort();
            FamilyCount {
                family: f.as_str(),
                rows: members.len(),
                orbits: orbit_representatives(&members).len(),
            }
        })
        .collect();
    let doc = FamiliesDocument {
        kind: "families",
        p: args.shape.p,
        q: args.shape.q,
        mode: args.mode.as_str().into(),
        total: list.len(),
        orbits: orbit_representatives(&all).len(),
        families: counts,
    };
    debug_assert!(all
        .iter()
        .all(|c| orbit(c).iter().all(|o| all.binary_search(o).is_ok())));
    let mut text = format!(
        "Singular({},{}), mode {}: {} rows in {} orbits\n",
        doc.p, doc.q, doc.mode, doc.total, doc.orbits
    );
    for f in &doc.families {
        text.push_str(&format!(
            "  {:<15} {:>4} rows {:>4} orbits\n",
            f.family, f.rows, f.orbits
        ));
    }
    let csv = doc
        .families
        .iter()
        .map(|f| {
            vec![
                f.family.to_string(),
                f.rows.to_string(),
                f.orbits.to_string(),
            ]
        })
        .collect();
    Ok(Report::new(&doc, &["family", "rows", "orbits"], csv, text))
}
