//! Command-line front end over `symmpow-v1` problem documents.
//!
//! Exit codes: 0 success, 1 a supplied module is reducible, 2 invalid input
//! or usage, 3 group or dimension cap exceeded, 4 module images do not
//! define a representation, 5 irreducibility test inconclusive, 6 a
//! verification failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::{make_field, FieldElem, FieldSpec};
use crate::groups::{GroupData, DEFAULT_GROUP_CAP};
use crate::homs::hom_space;
use crate::linalg::Mat;
use crate::meataxe::{
    distinct_irreducibles, is_irreducible_with_budget, CertifiedIrreducible, Verdict, DEFAULT_BUDGET,
};
use crate::reps::{paired_rep, Rep};
use crate::scan::{attach_molien, occurrence_scan, verify_theorem, OccurrenceTable, TheoremOptions, DEFAULT_DIM_CAP};

pub const SCHEMA: &str = "symmpow-v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_REDUCIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_NOT_A_REP: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;
pub const EXIT_VIOLATION: i32 = 6;

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::GroupCapExceeded(_) | Error::DimCapExceeded { .. } => EXIT_CAP,
        Error::NotARepresentation(_) => EXIT_NOT_A_REP,
        Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
        Error::TheoremViolation(_) => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

#[derive(Parser, Debug)]
#[command(name = "symmpow", version, about = "Locate irreducible modules inside symmetric powers of a matrix group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the group and certify each module irreducible.
    Check(CommonArgs),
    /// Tabulate hom dimensions against Sym^m(V) for m = 1..m_max.
    Scan(CommonArgs),
    /// Build and verify explicit witnesses for each module.
    Construct(CommonArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MolienMode {
    Auto,
    On,
    Off,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Problem document (JSON, schema symmpow-v1).
    #[arg(long)]
    input: PathBuf,
    /// Write the JSON report here; `-` prints it on stdout instead of the table.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cap_group: Option<usize>,
    #[arg(long)]
    cap_dim: Option<usize>,
    #[arg(long, value_enum)]
    molien: Option<MolienMode>,
    /// Random algebra elements drawn per irreducibility test.
    #[arg(long)]
    meataxe_budget: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct FieldInput {
    pub p: u32,
    #[serde(default = "one")]
    pub f: u32,
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ModuleInput {
    pub label: String,
    pub images: Vec<Value>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct OptionsInput {
    pub m_max: Option<usize>,
    pub k_max: Option<usize>,
    pub seed: Option<u64>,
    pub cap_group: Option<usize>,
    pub cap_dim: Option<usize>,
    pub molien: Option<MolienMode>,
    pub meataxe_budget: Option<usize>,
}

/// Parsed input document.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub schema: String,
    #[serde(default)]
    pub name: Option<String>,
    pub field: FieldInput,
    pub generators: Vec<Value>,
    #[serde(default)]
    pub modules: Option<Vec<ModuleInput>>,
    /// Also analyse every irreducible over the field; defaults to true when
    /// `modules` is absent.
    #[serde(default)]
    pub include_irreducibles: Option<bool>,
    #[serde(default)]
    pub options: OptionsInput,
}

impl ProblemDoc {
    pub fn parse(text: &str) -> Result<ProblemDoc> {
        let doc: ProblemDoc =
            serde_json::from_str(text).map_err(|e| Error::Contract(format!("invalid document: {e}")))?;
        if doc.schema != SCHEMA {
            return Err(Error::Contract(format!("unsupported schema {:?}, expected {SCHEMA:?}", doc.schema)));
        }
        Ok(doc)
    }
}

/// Resolved run settings: command-line flags override document options.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Settings {
    pub m_max: Option<usize>,
    pub k_max: usize,
    pub seed: u64,
    pub cap_group: usize,
    pub cap_dim: usize,
    pub molien: MolienMode,
    pub meataxe_budget: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            m_max: None,
            k_max: 1,
            seed: 1,
            cap_group: DEFAULT_GROUP_CAP,
            cap_dim: DEFAULT_DIM_CAP,
            molien: MolienMode::Auto,
            meataxe_budget: DEFAULT_BUDGET,
        }
    }
}

impl Settings {
    fn resolve(doc: &OptionsInput, args: &CommonArgs) -> Settings {
        Settings {
            m_max: args.m_max.or(doc.m_max),
            k_max: args.k_max.or(doc.k_max).unwrap_or(1),
            seed: args.seed.or(doc.seed).unwrap_or(1),
            cap_group: args.cap_group.or(doc.cap_group).unwrap_or(DEFAULT_GROUP_CAP),
            cap_dim: args.cap_dim.or(doc.cap_dim).unwrap_or(DEFAULT_DIM_CAP),
            molien: args.molien.or(doc.molien).unwrap_or(MolienMode::Auto),
            meataxe_budget: args.meataxe_budget.or(doc.meataxe_budget).unwrap_or(DEFAULT_BUDGET),
        }
    }
}

fn parse_entry(field: &FieldSpec, v: &Value) -> Result<FieldElem> {
    match v {
        Value::Number(n) => {
            n.as_i64().map(|x| field.from_int(x)).ok_or_else(|| Error::Contract(format!("entry {n} is not an integer")))
        }
        Value::Array(cs) => {
            if cs.len() > field.degree() as usize {
                return Err(Error::Contract(format!("entry {v} has more than {} coefficients", field.degree())));
            }
            let coeffs = cs
                .iter()
                .map(|c| c.as_i64().ok_or_else(|| Error::Contract(format!("coefficient {c} is not an integer"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(field.from_coeffs(&coeffs))
        }
        _ => Err(Error::Contract(format!("entry {v} is neither an integer nor a coefficient list"))),
    }
}

fn parse_matrix(field: &FieldSpec, v: &Value) -> Result<Mat> {
    let rows = v.as_array().ok_or_else(|| Error::Contract("matrix must be a list of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Contract("matrix row must be a list".into()))?
                .iter()
                .map(|x| parse_entry(field, x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.len() != width || rows.iter().any(|r| r.len() != width) {
        return Err(Error::ShapeMismatch("matrices must be square and nonempty".into()));
    }
    Mat::from_rows(field, &rows)
}

/// A module under study and where it came from.
#[derive(Clone, Debug)]
pub struct ModuleEntry {
    pub label: String,
    pub rep: Rep,
    pub supplied: bool,
}

/// A loaded problem: field, group, defining module and modules to analyse.
pub struct Problem {
    pub name: Option<String>,
    pub field: FieldSpec,
    pub group: Arc<GroupData>,
    pub v: Rep,
    pub modules: Vec<ModuleEntry>,
    pub settings: Settings,
    /// Certificates of the irreducibles found from the regular module.
    auto: Vec<CertifiedIrreducible>,
}

impl Problem {
    pub fn load(doc: &ProblemDoc, settings: Settings) -> Result<Problem> {
        let field = make_field(doc.field.p, doc.field.f, doc.field.modulus.as_deref())?;
        if doc.generators.is_empty() {
            return Err(Error::Contract("at least one generator is required".into()));
        }
        let gens = doc.generators.iter().map(|g| parse_matrix(&field, g)).collect::<Result<Vec<_>>>()?;
        let group = Arc::new(GroupData::enumerate(&gens, settings.cap_group)?);
        let v = Rep::natural(&group);
        let mut modules = Vec::new();
        for m in doc.modules.iter().flatten() {
            let images = m.images.iter().map(|x| parse_matrix(&field, x)).collect::<Result<Vec<_>>>()?;
            let rep = paired_rep(&group, &images).map_err(|e| match e {
                Error::NotARepresentation(msg) => Error::NotARepresentation(format!("module {:?}: {msg}", m.label)),
                other => other,
            })?;
            modules.push(ModuleEntry { label: m.label.clone(), rep, supplied: true });
        }
        let mut auto = Vec::new();
        if doc.include_irreducibles.unwrap_or(doc.modules.is_none()) {
            auto = distinct_irreducibles(&group, settings.seed)?;
            for (k, c) in auto.iter().enumerate() {
                modules.push(ModuleEntry {
                    label: format!("irr{k}_dim{}", c.rep().dim()),
                    rep: c.rep().clone(),
                    supplied: false,
                });
            }
        }
        Ok(Problem { name: doc.name.clone(), field, group, v, modules, settings, auto })
    }
}

/// Result of certifying one module.
pub struct CheckedModule {
    pub entry: ModuleEntry,
    pub certified: Option<CertifiedIrreducible>,
    pub endomorphism_dim: usize,
    pub submodule_dim: Option<usize>,
}

fn check_modules(problem: &Problem) -> Result<Vec<CheckedModule>> {
    let mut auto = problem.auto.iter();
    problem
        .modules
        .iter()
        .map(|entry| {
            let (certified, submodule_dim) = if entry.supplied {
                match is_irreducible_with_budget(&entry.rep, problem.settings.seed, problem.settings.meataxe_budget)? {
                    Verdict::Irreducible(c) => (Some(c), None),
                    Verdict::Split(s) => (None, Some(s.submodule.dim())),
                }
            } else {
                (auto.next().cloned(), None)
            };
            let endomorphism_dim = hom_space(&entry.rep, &entry.rep)?.dim();
            Ok(CheckedModule { entry: entry.clone(), certified, endomorphism_dim, submodule_dim })
        })
        .collect()
}

fn header(problem: &Problem, command: &str) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("command".into(), json!(command));
    map.insert("name".into(), json!(problem.name));
    map.insert("field".into(), json!(problem.field.descriptor()));
    map.insert("group".into(), json!(problem.group.summary()));
    map.insert("settings".into(), json!(problem.settings));
    map
}

fn module_json(m: &CheckedModule) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("label".into(), json!(m.entry.label));
    map.insert("supplied".into(), json!(m.entry.supplied));
    map.insert("dim".into(), json!(m.entry.rep.dim()));
    map.insert(
        "generator_images".into(),
        Value::Array(m.entry.rep.generator_images().iter().map(|x| x.to_json()).collect()),
    );
    map.insert("irreducible".into(), json!(m.certified.is_some()));
    map.insert("endomorphism_dim".into(), json!(m.endomorphism_dim));
    map.insert("meataxe".into(), json!(m.certified.as_ref().map(|c| c.certificate())));
    map.insert("submodule_dim".into(), json!(m.submodule_dim));
    map
}

/// A finished command: JSON report, text table and exit status.
pub struct Outcome {
    pub report: Value,
    pub table: String,
    pub exit_code: i32,
}

fn group_line(problem: &Problem) -> String {
    let s = problem.group.summary();
    format!("{}  |G| = {}  |Z| = {}  N = {}\n", problem.field, s.order, s.center_order, s.cosets)
}

pub fn cmd_check(problem: &Problem) -> Result<Outcome> {
    let checked = check_modules(problem)?;
    let mut table = group_line(problem);
    let _ = writeln!(table, "{:<16} {:>4} {:>12} {:>6}", "module", "dim", "irreducible", "End");
    for m in &checked {
        let _ = writeln!(
            table,
            "{:<16} {:>4} {:>12} {:>6}",
            m.entry.label,
            m.entry.rep.dim(),
            if m.certified.is_some() { "yes" } else { "no" },
            m.endomorphism_dim
        );
    }
    let all = checked.iter().all(|m| m.certified.is_some());
    let exit_code = if all { EXIT_OK } else { EXIT_REDUCIBLE };
    let mut report = header(problem, "check");
    report.insert("modules".into(), Value::Array(checked.iter().map(|m| Value::Object(module_json(m))).collect()));
    report.insert("exit_code".into(), json!(exit_code));
    Ok(Outcome { report: Value::Object(report), table, exit_code })
}

fn coprime(problem: &Problem) -> bool {
    !problem.group.order().is_multiple_of(problem.field.p() as usize)
}

/// Scan one certified module; returns the table and any violations.
fn scan_module(problem: &Problem, w: &CertifiedIrreducible, m_max: usize) -> Result<(OccurrenceTable, Vec<String>)> {
    let mut violations = Vec::new();
    let mut table = occurrence_scan(&problem.v, w, m_max, problem.settings.cap_dim)?;
    let molien = match problem.settings.molien {
        MolienMode::Off => false,
        MolienMode::Auto => coprime(problem),
        MolienMode::On => {
            if !coprime(problem) {
                return Err(Error::Contract("the character oracle needs characteristic coprime to |G|".into()));
            }
            true
        }
    };
    if molien {
        attach_molien(&mut table, &problem.v, w.rep())?;
        let bad = table.molien_mismatches();
        if !bad.is_empty() {
            violations.push(format!("character oracle disagrees at m = {bad:?}"));
        }
    }
    if coprime(problem) {
        let bad: Vec<usize> = table.rows.iter().filter(|r| r.sub_dim != r.quot_dim).map(|r| r.m).collect();
        if !bad.is_empty() {
            violations.push(format!("submodule and quotient dimensions differ at m = {bad:?}"));
        }
    }
    if m_max >= table.bound && !table.within_bound() {
        violations.push(format!(
            "minimal degrees {:?}/{:?} not within 1..={}",
            table.minimal_sub_m, table.minimal_quot_m, table.bound
        ));
    }
    Ok((table, violations))
}

fn reducible_outcome(problem: &Problem, command: &str, checked: &[CheckedModule]) -> Outcome {
    let mut report = header(problem, command);
    report.insert("modules".into(), Value::Array(checked.iter().map(|m| Value::Object(module_json(m))).collect()));
    report.insert("exit_code".into(), json!(EXIT_REDUCIBLE));
    let bad: Vec<&str> = checked.iter().filter(|m| m.certified.is_none()).map(|m| m.entry.label.as_str()).collect();
    Outcome {
        report: Value::Object(report),
        table: format!("{}reducible modules: {}\n", group_line(problem), bad.join(", ")),
        exit_code: EXIT_REDUCIBLE,
    }
}

fn fmt_opt(x: Option<usize>) -> String {
    x.map_or_else(|| "-".to_string(), |m| m.to_string())
}

pub fn cmd_scan(problem: &Problem) -> Result<Outcome> {
    let checked = check_modules(problem)?;
    if checked.iter().any(|m| m.certified.is_none()) {
        return Ok(reducible_outcome(problem, "scan", &checked));
    }
    let m_max = problem.settings.m_max.unwrap_or(problem.group.order());
    let mut table_text = group_line(problem);
    let _ = writeln!(table_text, "{:<16} {:>4} {:>8} {:>8} {:>8}", "module", "dim", "min sub", "min quot", "bound");
    let mut modules = Vec::new();
    let mut all_violations = false;
    for m in &checked {
        let w = m.certified.as_ref().expect("checked above");
        let (table, violations) = scan_module(problem, w, m_max)?;
        all_violations |= !violations.is_empty();
        let _ = writeln!(
            table_text,
            "{:<16} {:>4} {:>8} {:>8} {:>8}",
            m.entry.label,
            m.entry.rep.dim(),
            fmt_opt(table.minimal_sub_m),
            fmt_opt(table.minimal_quot_m),
            table.bound
        );
        let mut map = module_json(m);
        map.insert("table".into(), json!(table));
        map.insert("violations".into(), json!(violations));
        modules.push(Value::Object(map));
    }
    let exit_code = if all_violations { EXIT_VIOLATION } else { EXIT_OK };
    let mut report = header(problem, "scan");
    report.insert("m_max".into(), json!(m_max));
    report.insert("modules".into(), Value::Array(modules));
    report.insert("exit_code".into(), json!(exit_code));
    Ok(Outcome { report: Value::Object(report), table: table_text, exit_code })
}

pub fn cmd_construct(problem: &Problem) -> Result<Outcome> {
    let checked = check_modules(problem)?;
    if checked.iter().any(|m| m.certified.is_none()) {
        return Ok(reducible_outcome(problem, "construct", &checked));
    }
    let order = problem.group.order();
    let options = TheoremOptions { seed: problem.settings.seed, k_max: problem.settings.k_max };
    let mut text = group_line(problem);
    let _ = writeln!(
        text,
        "{:<16} {:>4} {:>3} {:>6} {:>7} {:>8} {:>9}",
        "module", "dim", "e", "m sub", "m quot", "min sub", "verified"
    );
    let mut modules = Vec::new();
    let mut failed = false;
    for m in &checked {
        let w = m.certified.as_ref().expect("checked above");
        let (table, _) = scan_module(problem, w, order)?;
        let theorem = verify_theorem(&problem.v, w, options, Some(&table))?;
        failed |= !theorem.verified();
        let _ = writeln!(
            text,
            "{:<16} {:>4} {:>3} {:>6} {:>7} {:>8} {:>9}",
            m.entry.label,
            m.entry.rep.dim(),
            theorem.splitting_degree,
            theorem.m_sub(),
            theorem.m_quot(),
            fmt_opt(table.minimal_sub_m),
            if theorem.verified() { "yes" } else { "NO" }
        );
        let mut map = module_json(m);
        map.insert("minimal_sub_m".into(), json!(table.minimal_sub_m));
        map.insert("minimal_quot_m".into(), json!(table.minimal_quot_m));
        map.insert("theorem".into(), theorem.to_json());
        modules.push(Value::Object(map));
    }
    let exit_code = if failed { EXIT_VIOLATION } else { EXIT_OK };
    let mut report = header(problem, "construct");
    report.insert("modules".into(), Value::Array(modules));
    report.insert("exit_code".into(), json!(exit_code));
    Ok(Outcome { report: Value::Object(report), table: text, exit_code })
}

fn execute(command: &str, args: &CommonArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Error::Contract(format!("cannot read {}: {e}", args.input.display())))?;
    let doc = ProblemDoc::parse(&text)?;
    let settings = Settings::resolve(&doc.options, args);
    let problem = Problem::load(&doc, settings)?;
    match command {
        "check" => cmd_check(&problem),
        "scan" => cmd_scan(&problem),
        _ => cmd_construct(&problem),
    }
}

fn emit(args: &CommonArgs, report: &Value, table: &str) -> std::io::Result<()> {
    let json = serde_json::to_string_pretty(report).expect("values serialise") + "\n";
    match &args.out {
        Some(p) if p.as_os_str() == "-" => print!("{json}"),
        Some(p) => {
            std::fs::write(p, json)?;
            print!("{table}");
        }
        None => print!("{table}"),
    }
    Ok(())
}

/// Parse arguments, run the command and return the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let (name, args) = match &cli.command {
        Command::Check(a) => ("check", a),
        Command::Scan(a) => ("scan", a),
        Command::Construct(a) => ("construct", a),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| execute(name, args)),
        Err(e) => Err(Error::Contract(format!("cannot start worker pool: {e}"))),
    };
    match result {
        Ok(outcome) => {
            if let Err(e) = emit(args, &outcome.report, &outcome.table) {
                eprintln!("symmpow: cannot write report: {e}");
                return EXIT_INPUT;
            }
            outcome.exit_code
        }
        Err(err) => {
            let code = exit_code(&err);
            eprintln!("symmpow: {err}");
            let report = json!({ "schema": SCHEMA, "command": name, "error": err.to_string(), "exit_code": code });
            if let Some(p) = &args.out {
                let text = serde_json::to_string_pretty(&report).expect("values serialise") + "\n";
                if p.as_os_str() == "-" {
                    print!("{text}");
                } else if let Err(e) = std::fs::write(p, text) {
                    eprintln!("symmpow: cannot write report: {e}");
                }
            }
            code
        }
    }
}
