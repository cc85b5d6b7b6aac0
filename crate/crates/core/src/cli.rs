//! The `hopfdouble` command line: argument definitions, commands, and report
//! rendering. The binary only parses arguments and writes the output.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::SystemTime;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{paper_double_presentation, AlgebraId, Family, HnParams};
use crate::cyclotomic::CycloNum;
use crate::double::{build_double, matches_paper_presentation, DoubleBuildResult};
use crate::hopf::{AxiomCheck, HopfError};
use crate::io::{export_json, import_json};
use crate::modalg::{classify_actions, extend_to_double, ActionFamily, ClassificationReport, ModuleAlgebraAction};
use crate::pairing::DualityPairing;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hopfdouble", version, about = "Exact checks for presented Hopf algebras, their doubles and actions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Seed for sampled checks and sampled parameters.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Hopf algebra axioms.
    Verify {
        #[arg(value_name = "ID")]
        id: Option<String>,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Check a dual pairing `K × H → k`.
    Pairing {
        /// The dual side; defaults to the dual of `--right`.
        #[arg(long)]
        left: Option<String>,
        #[arg(long, alias = "algebra")]
        right: String,
        #[arg(long)]
        check_axioms: bool,
        #[arg(long)]
        check_perfect: bool,
    },
    /// Build the Drinfeld double.
    Double {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        emit_presentation: Option<PathBuf>,
        #[arg(long)]
        check_paper: bool,
        #[arg(long)]
        check_axioms: bool,
    },
    /// Classify inner-faithful actions on `k[u]/(u^n − 1)`.
    Classify {
        #[arg(long)]
        algebra: String,
    },
    /// Extend a classified action to the double.
    Extend {
        #[arg(long)]
        algebra: String,
        /// Value of the family parameters, e.g. `1 + z`; sampled if absent.
        #[arg(long)]
        gamma: Option<String>,
    },
    /// The full pipeline for the summary table of extension counts.
    Table1 {
        #[arg(long)]
        check_paper: bool,
    },
    /// Print a presentation as JSON.
    Export {
        #[arg(long)]
        algebra: String,
        /// Export the double of the algebra instead.
        #[arg(long)]
        double: bool,
    },
    /// Read a presentation from JSON and check its axioms.
    Import {
        #[arg(value_name = "FILE")]
        file: PathBuf,
    },
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    /// The report, for standard output or `--out`.
    pub text: String,
    /// Diagnostics for standard error.
    pub error: Option<String>,
}

/// The report envelope. Everything except `timestamp` depends only on the
/// arguments.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub timestamp: String,
    pub command: Vec<String>,
    pub algebras: Vec<String>,
    pub passed: bool,
    pub payload: Value,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<HopfError> for Failure {
    fn from(e: HopfError) -> Self {
        Failure::Compute(e.to_string())
    }
}

struct Done {
    algebras: Vec<String>,
    passed: bool,
    payload: Value,
    pretty: String,
}

/// Caps rayon's pool at `HOPFDOUBLE_THREADS` when set.
pub fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("HOPFDOUBLE_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("HOPFDOUBLE_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("HOPFDOUBLE_THREADS must be positive".into());
    }
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn parse_id(s: &str) -> Result<AlgebraId, Failure> {
    s.parse::<AlgebraId>().map_err(|e| Failure::Usage(format!("{s}: {e}")))
}

fn family_of(s: &str) -> Result<Family, Failure> {
    let id = parse_id(s)?;
    if id.dual {
        return Err(Failure::Usage(format!("{s}: expected an algebra, not a dual")));
    }
    Ok(id.family)
}

fn id_string(family: impl std::borrow::Borrow<Family>) -> String {
    AlgebraId { family: *family.borrow(), dual: false }.to_string()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn render_checks(out: &mut String, title: &str, checks: &[AxiomCheck]) {
    let _ = writeln!(out, "{title}");
    for c in checks {
        let _ = writeln!(out, "  {} {} ({} checked)", if c.passed { "PASS" } else { "FAIL" }, c.name, c.checked);
        for f in &c.failures {
            let _ = writeln!(out, "       {f}");
        }
    }
}

/// Runs a parsed command line. `argv` is echoed in the report.
pub fn run(cli: &Cli, argv: &[String]) -> Outcome {
    let result = match &cli.command {
        Command::Verify { id, algebra } => match id.as_ref().or(algebra.as_ref()) {
            Some(s) => cmd_verify(s, cli.global.seed),
            None => Err(Failure::Usage("verify needs an algebra id".into())),
        },
        Command::Pairing { left, right, check_axioms, check_perfect } => {
            cmd_pairing(left.as_deref(), right, *check_axioms, *check_perfect, cli.global.seed)
        }
        Command::Double { algebra, emit_presentation, check_paper, check_axioms } => {
            cmd_double(algebra, emit_presentation.as_ref(), *check_paper, *check_axioms, cli.global.seed)
        }
        Command::Classify { algebra } => cmd_classify(algebra),
        Command::Extend { algebra, gamma } => cmd_extend(algebra, gamma.as_deref(), cli.global.seed),
        Command::Table1 { check_paper } => cmd_table1(*check_paper, cli.global.seed),
        Command::Export { algebra, double } => {
            return match cmd_export(algebra, *double, cli.global.pretty) {
                Ok(text) => Outcome { code: EXIT_PASS, text, error: None },
                Err(f) => failure_outcome(f),
            }
        }
        Command::Import { file } => cmd_import(file, cli.global.seed),
    };
    match result {
        Ok(done) => {
            let code = if done.passed { EXIT_PASS } else { EXIT_FAIL };
            let text = if cli.global.pretty {
                done.pretty
            } else {
                let report = RunReport {
                    timestamp: humantime::format_rfc3339_seconds(SystemTime::now()).to_string(),
                    command: argv.to_vec(),
                    algebras: done.algebras,
                    passed: done.passed,
                    payload: done.payload,
                };
                let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
                s.push('\n');
                s
            };
            Outcome { code, text, error: None }
        }
        Err(f) => failure_outcome(f),
    }
}

fn failure_outcome(f: Failure) -> Outcome {
    match f {
        Failure::Usage(m) => Outcome { code: EXIT_USAGE, text: String::new(), error: Some(m) },
        Failure::Compute(m) => Outcome { code: EXIT_FAIL, text: String::new(), error: Some(m) },
    }
}

fn cmd_verify(id: &str, seed: u64) -> Result<Done, Failure> {
    let id = parse_id(id)?;
    let alg = id.build()?;
    let report = alg.verify_axioms(seed);
    let mut pretty = String::new();
    render_checks(&mut pretty, &format!("{} (dimension {})", report.algebra, report.dimension), &report.checks);
    Ok(Done { algebras: vec![id.to_string()], passed: report.passed(), payload: to_value(&report), pretty })
}

fn cmd_pairing(left: Option<&str>, right: &str, axioms: bool, perfect: bool, seed: u64) -> Result<Done, Failure> {
    let family = family_of(right)?;
    if let Some(l) = left {
        let lid = parse_id(l)?;
        if lid != (AlgebraId { family, dual: true }) {
            return Err(Failure::Usage(format!("no pairing is known between {l} and {right}; use {right}:dual")));
        }
    }
    let (axioms, perfect) = if axioms || perfect { (axioms, perfect) } else { (true, true) };
    let pairing = DualityPairing::for_family(&family)?;
    let mut payload = serde_json::Map::new();
    let mut passed = true;
    let mut pretty = format!("⟨{}, {}⟩\n", pairing.left().name(), pairing.right().name());
    if axioms {
        let report = pairing.verify_duality_axioms(seed)?;
        passed &= report.passed();
        render_checks(&mut pretty, "duality axioms", &report.checks);
        payload.insert("axioms".into(), to_value(&report));
    }
    if perfect {
        let p = pairing.perfectness()?;
        passed &= p.perfect;
        let det = p.determinant.as_ref().map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(pretty, "Gram matrix {}×{}, rank {}, determinant {det}", p.size.0, p.size.1, p.rank);
        payload.insert("perfectness".into(), to_value(&p));
    }
    Ok(Done {
        algebras: vec![AlgebraId { family, dual: true }.to_string(), id_string(family)],
        passed,
        payload: Value::Object(payload),
        pretty,
    })
}

fn double_of(family: &Family) -> Result<DoubleBuildResult, Failure> {
    let pairing = DualityPairing::for_family(family)?;
    Ok(build_double(&pairing)?)
}

fn cmd_double(algebra: &str, emit: Option<&PathBuf>, check_paper: bool, check_axioms: bool, seed: u64) -> Result<Done, Failure> {
    let family = family_of(algebra)?;
    let d = double_of(&family)?;
    if let Some(path) = emit {
        std::fs::write(path, export_json(&d.double, true))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let cross: Vec<Value> = d
        .cross_relations
        .iter()
        .map(|c| json!({ "h": c.h_generator, "dual": c.dual_generator, "value": c.value.to_string() }))
        .collect();
    let mut pretty = format!("{} (dimension {})\n", d.double.name(), d.double.dimension());
    for c in &d.cross_relations {
        let _ = writeln!(pretty, "  {}*{} = {}", c.h_generator, c.dual_generator, c.value);
    }
    let mut payload = serde_json::Map::new();
    payload.insert("name".into(), json!(d.double.name()));
    payload.insert("dimension".into(), json!(d.double.dimension()));
    payload.insert("cross_relations".into(), Value::Array(cross));
    let mut passed = true;
    if check_paper {
        let fixture = paper_double_presentation(&family)?;
        let report = matches_paper_presentation(&d, &fixture);
        passed &= report.passed();
        render_checks(&mut pretty, "printed presentation", &report.checks);
        payload.insert("paper".into(), to_value(&report));
    }
    if check_axioms {
        let report = d.double.verify_axioms(seed);
        passed &= report.passed();
        render_checks(&mut pretty, "Hopf axioms", &report.checks);
        payload.insert("axioms".into(), to_value(&report));
    }
    Ok(Done { algebras: vec![id_string(family)], passed, payload: Value::Object(payload), pretty })
}

fn render_report(out: &mut String, r: &ClassificationReport) {
    let paren = |c: &CycloNum| {
        let s = c.to_string();
        if s.contains(' ') { format!("({s})") } else { s }
    };
    let _ = writeln!(
        out,
        "{} on k[u]/(u^{} - {}), {}·u = {}·u",
        r.algebra,
        r.n,
        paren(&r.beta),
        r.grading.generator,
        paren(&r.grading.eigenvalue)
    );
    let _ = writeln!(out, "{} famil{}", r.families.len(), if r.families.len() == 1 { "y" } else { "ies" });
    for (i, f) in r.families.iter().enumerate() {
        let _ = writeln!(out, "  [{}] {} (parameters: {})", i + 1, f.case, f.parameter_dimension);
        for g in &f.action {
            let _ = writeln!(out, "      {}·u = {}", g.generator, g.image);
        }
        for c in &f.constraints {
            let _ = writeln!(out, "      where {}", c.text);
        }
        for c in &f.side_conditions {
            let _ = writeln!(out, "      with {c}");
        }
        for c in &f.unsolved {
            let _ = writeln!(out, "      unsolved {c}");
        }
    }
    for c in &r.certificates {
        let _ = writeln!(out, "  no solution for {}: {}", c.case, c.reason);
        for e in &c.equations {
            let _ = writeln!(out, "      {e}");
        }
    }
}

fn cmd_classify(algebra: &str) -> Result<Done, Failure> {
    let family = family_of(algebra)?;
    let r = classify_actions(&family)?;
    let mut pretty = String::new();
    render_report(&mut pretty, &r);
    let passed = r.families.iter().all(|f| f.unsolved.is_empty());
    Ok(Done { algebras: vec![id_string(family)], passed, payload: to_value(&r), pretty })
}

/// The hint used for constrained parameters: `1 + ζ`, which is `1 + i` in
/// conductor 4.
fn default_hints(conductor: u32) -> Vec<CycloNum> {
    vec![&CycloNum::one(conductor) + &CycloNum::root_of_unity(conductor, 1)]
}

/// An instance of the first family: every parameter set to `gamma` if given,
/// otherwise sampled.
fn base_action(family: &ActionFamily, gamma: Option<&CycloNum>, seed: u64) -> Result<(ModuleAlgebraAction, Vec<(String, CycloNum)>), Failure> {
    let conductor = family.algebra().conductor();
    let values: Vec<(String, CycloNum)> = match gamma {
        Some(g) => family.parameters.iter().map(|p| (p.clone(), g.clone())).collect(),
        None => family
            .sample(seed, &default_hints(conductor))
            .ok_or_else(|| Failure::Compute("no instance of the family found in the working field".into()))?,
    };
    let refs: Vec<(&str, CycloNum)> = values.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
    let act = family.instantiate(&refs).map_err(|e| match gamma {
        Some(_) => Failure::Usage(format!("--gamma does not give an action: {e}")),
        None => Failure::from(e),
    })?;
    Ok((act, values))
}

fn cmd_extend(algebra: &str, gamma: Option<&str>, seed: u64) -> Result<Done, Failure> {
    let family = family_of(algebra)?;
    let conductor = family.build()?.conductor();
    let gamma = gamma
        .map(|s| CycloNum::parse(conductor, s).map_err(|e| Failure::Usage(format!("--gamma {s:?}: {e}"))))
        .transpose()?;
    let classified = classify_actions(&family)?;
    let Some(first) = classified.families.first() else {
        return Err(Failure::Compute(format!("{} has no inner-faithful action to extend", classified.algebra)));
    };
    let (act, values) = base_action(first, gamma.as_ref(), seed)?;
    let d = double_of(&family)?;
    let r = extend_to_double(&act, &d)?;
    let mut pretty = String::from("base action\n");
    for line in act.describe() {
        let _ = writeln!(pretty, "  {line}");
    }
    render_report(&mut pretty, &r);
    let payload = json!({
        "base": { "parameters": values.iter().map(|(n, v)| json!({ "name": n, "value": v })).collect::<Vec<_>>(), "action": act.describe() },
        "extensions": to_value(&r),
    });
    let passed = r.families.iter().all(|f| f.unsolved.is_empty());
    Ok(Done { algebras: vec![id_string(family)], passed, payload, pretty })
}

/// Rows of the summary table with their expected extension counts.
pub fn table1_rows() -> Vec<(&'static str, Family, usize)> {
    vec![
        ("T_3", Family::Taft { n: 3, k: 1 }, 1),
        ("T_5", Family::Taft { n: 5, k: 1 }, 1),
        ("T_2(-1)", Family::Taft { n: 2, k: 1 }, 1),
        ("H_12(ζ,4,2)", Family::Hnzmt(HnParams::new(12, 1, 4, 2).expect("valid")), 2),
        ("H_4(i,2,1)", Family::Hnzmt(HnParams::new(4, 1, 2, 1).expect("valid")), 1),
        ("T(4,2,1)", Family::T421 { k: 1 }, 0),
        ("u_q(sl2), n=3", Family::Uq { n: 3, k: 1 }, 2),
    ]
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub label: String,
    pub algebra: String,
    pub dimension: usize,
    pub double_dimension: usize,
    pub pairing_passed: bool,
    pub paper_match: Option<bool>,
    pub actions: usize,
    pub extensions: usize,
    pub extension_parameters: Vec<usize>,
    pub certificates: usize,
    pub expected: usize,
    pub matches: bool,
}

fn table_row(label: &str, family: &Family, expected: usize, check_paper: bool, seed: u64) -> Result<TableRow, Failure> {
    let pairing = DualityPairing::for_family(family)?;
    let pairing_passed = pairing.verify_duality_axioms(seed)?.passed();
    let d = build_double(&pairing)?;
    let paper_match = if check_paper {
        Some(matches_paper_presentation(&d, &paper_double_presentation(family)?).passed())
    } else {
        None
    };
    let classified = classify_actions(family)?;
    let first = classified
        .families
        .first()
        .ok_or_else(|| Failure::Compute(format!("{label}: no inner-faithful action")))?;
    let (act, _) = base_action(first, None, seed)?;
    let r = extend_to_double(&act, &d)?;
    let extensions = r.families.len();
    let solved = r.families.iter().all(|f| f.unsolved.is_empty());
    Ok(TableRow {
        label: label.to_string(),
        algebra: id_string(family),
        dimension: pairing.right().dimension(),
        double_dimension: d.double.dimension(),
        pairing_passed,
        paper_match,
        actions: classified.families.len(),
        extensions,
        extension_parameters: r.families.iter().map(|f| f.parameter_dimension).collect(),
        certificates: r.certificates.len(),
        expected,
        matches: solved && extensions == expected && pairing_passed && paper_match != Some(false),
    })
}

fn cmd_table1(check_paper: bool, seed: u64) -> Result<Done, Failure> {
    let mut rows = Vec::new();
    for (label, family, expected) in table1_rows() {
        rows.push(table_row(label, &family, expected, check_paper, seed)?);
    }
    let mut pretty = format!(
        "{:<16} {:>5} {:>7} {:>8} {:>6} {:>8} {:>10} {:>8} {:>6}\n",
        "algebra", "dim", "D dim", "pairing", "paper", "actions", "extensions", "expected", "match"
    );
    for r in &rows {
        let paper = match r.paper_match {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "-",
        };
        let _ = writeln!(
            pretty,
            "{:<16} {:>5} {:>7} {:>8} {:>6} {:>8} {:>10} {:>8} {:>6}",
            r.label,
            r.dimension,
            r.double_dimension,
            if r.pairing_passed { "ok" } else { "FAIL" },
            paper,
            r.actions,
            r.extensions,
            r.expected,
            if r.matches { "yes" } else { "NO" }
        );
    }
    Ok(Done {
        algebras: rows.iter().map(|r| r.algebra.clone()).collect(),
        passed: rows.iter().all(|r| r.matches),
        payload: json!({ "rows": rows }),
        pretty,
    })
}

fn cmd_export(algebra: &str, double: bool, pretty: bool) -> Result<String, Failure> {
    let mut text = if double {
        let family = family_of(algebra)?;
        export_json(&double_of(&family)?.double, pretty)
    } else {
        export_json(&parse_id(algebra)?.build()?, pretty)
    };
    text.push('\n');
    Ok(text)
}

fn cmd_import(file: &PathBuf, seed: u64) -> Result<Done, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let alg = import_json(&text).map_err(|e| {
        let at = if e.line > 0 { format!(" at line {}, column {}", e.line, e.column) } else { String::new() };
        Failure::Usage(format!("{}: field {}{at}: {}", file.display(), e.path, e.message))
    })?;
    let alg = Arc::new(alg);
    let report = alg.verify_axioms(seed);
    let mut pretty = String::new();
    render_checks(&mut pretty, &format!("{} (dimension {})", report.algebra, report.dimension), &report.checks);
    Ok(Done { algebras: vec![alg.name().to_string()], passed: report.passed(), payload: to_value(&report), pretty })
}
