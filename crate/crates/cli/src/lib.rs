//! Command-line front end. [`run`] does all the work so it can be tested
//! without spawning a process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use fourfold::abelianfield::AbelianFieldModel;
use fourfold::amitsur::{self, AmitsurError, Condition};
use fourfold::catalog::{self, StageStatus, VerificationReport};
use fourfold::endalg::{self, EndAlgError};
use fourfold::finitegroup::{self, GroupError};
use fourfold::polyring::{IntPoly, PolyError};
use fourfold::weil::{self, WeilCandidate, WeilError};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_OUT_OF_SCOPE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fourfold", version, about = "Weil numbers, endomorphism algebras and automorphism groups of abelian fourfolds")]
struct Cli {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weil polynomial checks.
    #[command(subcommand)]
    Weil(WeilCmd),
    /// Endomorphism algebra shapes.
    #[command(subcommand)]
    Endalg(EndalgCmd),
    /// Abelian number fields.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Metacyclic groups G(m, r).
    #[command(subcommand)]
    Amitsur(AmitsurCmd),
    /// Finite group tables.
    #[command(subcommand)]
    Group(GroupCmd),
    /// The witness catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Debug, Args)]
struct PolyArgs {
    #[arg(long)]
    q: u64,
    /// Coefficients in ascending degree, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Debug, Subcommand)]
enum WeilCmd {
    Check(PolyArgs),
}

#[derive(Debug, Subcommand)]
enum EndalgCmd {
    Shape {
        #[command(flatten)]
        poly: PolyArgs,
        /// Abelian model `N:g1,g2` of `Q(π)`, used when the residual
        /// polynomials are inseparable.
        #[arg(long)]
        model: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum FieldCmd {
    Split {
        #[arg(long)]
        model: String,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CondArg {
    C1,
    C2,
}

#[derive(Debug, Args)]
struct GmrArgs {
    #[arg(long)]
    m: u64,
    #[arg(long, allow_hyphen_values = true)]
    r: i64,
}

#[derive(Debug, Subcommand)]
enum AmitsurCmd {
    Check(GmrArgs),
    Enumerate {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        cond: CondArg,
    },
}

#[derive(Debug, Subcommand)]
enum GroupCmd {
    Jordan(GmrArgs),
}

#[derive(Debug, Subcommand)]
enum CatalogCmd {
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        id: Option<usize>,
        #[arg(long)]
        all: bool,
    },
    Lemma {
        #[arg(long)]
        tag: String,
    },
    JordanRange,
}

/// Exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Malformed(String),
    OutOfScope(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Malformed(_) => EXIT_MALFORMED,
            Failure::OutOfScope(_) => EXIT_OUT_OF_SCOPE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Malformed(m) | Failure::OutOfScope(m) => m,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Malformed(_) => "malformed",
            Failure::OutOfScope(_) => "out_of_scope",
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::OreIrregular { .. } => Failure::OutOfScope(e.to_string()),
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

impl From<WeilError> for Failure {
    fn from(e: WeilError) -> Self {
        match e {
            WeilError::Poly(p) => p.into(),
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

impl From<EndAlgError> for Failure {
    fn from(e: EndAlgError) -> Self {
        match e {
            EndAlgError::Poly(p) => p.into(),
            EndAlgError::Weil(w) => w.into(),
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderBound(_) => Failure::OutOfScope(e.to_string()),
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

impl From<AmitsurError> for Failure {
    fn from(e: AmitsurError) -> Self {
        match e {
            AmitsurError::Group(g) => g.into(),
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

/// A verdict: JSON document, text rendering, and exit code.
struct Report {
    json: Value,
    text: String,
    code: i32,
}

fn verdict(ok: bool) -> (&'static str, i32) {
    if ok {
        ("PASS", EXIT_PASS)
    } else {
        ("FAILED", EXIT_FAILED)
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Canonical rendering: keys sorted, two-space indent, trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_PASS
                }
                _ => EXIT_MALFORMED,
            };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(r) => Outcome {
            code: r.code,
            stdout: if json { render_json(&r.json) } else { r.text },
            stderr: String::new(),
        },
        Err(f) => {
            if json {
                let doc = json!({ "error": f.kind(), "message": f.message() });
                Outcome { code: f.code(), stdout: render_json(&doc), stderr: String::new() }
            } else {
                Outcome {
                    code: f.code(),
                    stdout: String::new(),
                    stderr: format!("error: {}\n", f.message()),
                }
            }
        }
    }
}

fn dispatch(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Weil(WeilCmd::Check(a)) => weil_check(&a),
        Command::Endalg(EndalgCmd::Shape { poly, model }) => endalg_shape(&poly, model.as_deref()),
        Command::Field(FieldCmd::Split { model, p }) => field_split(&model, p),
        Command::Amitsur(AmitsurCmd::Check(a)) => amitsur_check(&a),
        Command::Amitsur(AmitsurCmd::Enumerate { n, cond }) => amitsur_enumerate(n, cond),
        Command::Group(GroupCmd::Jordan(a)) => group_jordan(&a),
        Command::Catalog(CatalogCmd::Verify { id, all }) => catalog_verify(id, all),
        Command::Catalog(CatalogCmd::Lemma { tag }) => catalog_lemma(&tag),
        Command::Catalog(CatalogCmd::JordanRange) => Ok(catalog_jordan_range()),
    }
}

fn parse_poly(s: &str) -> Result<IntPoly, Failure> {
    Ok(s.parse::<IntPoly>()?)
}

fn parse_model(s: &str) -> Result<AbelianFieldModel, Failure> {
    s.parse::<AbelianFieldModel>()
        .map_err(|e| Failure::Malformed(e.to_string()))
}

fn weil_check(a: &PolyArgs) -> Result<Report, Failure> {
    let h = parse_poly(&a.poly)?;
    let v = weil::check_weil(&h, a.q)?;
    let (word, code) = verdict(v.is_weil);
    let json = json!({
        "command": "weil check",
        "q": a.q,
        "poly": h.to_csv(),
        "is_weil": v.is_weil,
        "kind": to_value(&v.kind),
        "reason": v.reason,
        "verdict": word,
    });
    let kind = v.kind.map(|k| format!(" ({k:?})")).unwrap_or_default();
    let text = format!("{word}: {h} is{} a {}-Weil polynomial{kind}\n  {}\n",
        if v.is_weil { "" } else { " not" }, a.q, v.reason);
    Ok(Report { json, text, code })
}

fn endalg_shape(a: &PolyArgs, model: Option<&str>) -> Result<Report, Failure> {
    let h = parse_poly(&a.poly)?;
    let model = model.map(parse_model).transpose()?;
    let cand = WeilCandidate::new(a.q, h.clone(), model)?;
    match endalg::shape(&cand) {
        Ok(s) => {
            let mut text = String::new();
            let _ = writeln!(text, "PASS: End⁰ for {h} over F_{}", a.q);
            let _ = writeln!(text, "  e = {}, d = {}, g = {}, kind {}", s.e, s.d, s.g, s.kind);
            let _ = writeln!(text, "  local data: {:?}", s.source);
            for i in &s.invariants {
                let _ = writeln!(text, "  inv[{}] = {}", i.place, i.invariant);
            }
            let mut json = to_value(&s);
            json["command"] = json!("endalg shape");
            json["poly"] = json!(h.to_csv());
            json["verdict"] = json!("PASS");
            Ok(Report { json, text, code: EXIT_PASS })
        }
        Err(EndAlgError::NotWeil { poly, q, reason }) => Ok(Report {
            json: json!({
                "command": "endalg shape",
                "q": q,
                "poly": h.to_csv(),
                "reason": reason,
                "verdict": "FAILED",
            }),
            text: format!("FAILED: {poly} is not a {q}-Weil polynomial: {reason}\n"),
            code: EXIT_FAILED,
        }),
        Err(e) => Err(e.into()),
    }
}

fn field_split(model: &str, p: u64) -> Result<Report, Failure> {
    let k = parse_model(model)?;
    let s = k
        .splitting_efg(p)
        .map_err(|e| Failure::Malformed(e.to_string()))?;
    let json = json!({
        "command": "field split",
        "model": k.to_string(),
        "conductor": k.conductor(),
        "degree": k.degree(),
        "p": p,
        "e": s.e,
        "f": s.f,
        "g": s.g,
        "verdict": "PASS",
    });
    let text = format!(
        "{p} in K = {k} (degree {}, conductor {}): e = {}, f = {}, g = {}\n",
        k.degree(),
        k.conductor(),
        s.e,
        s.f,
        s.g
    );
    Ok(Report { json, text, code: EXIT_PASS })
}

fn amitsur_check(a: &GmrArgs) -> Result<Report, Failure> {
    let v = amitsur::gmr_embeddable(a.m, a.r)?;
    let (word, code) = verdict(v.embeddable);
    let data = v.params.prime_data();
    let name = finitegroup::build_from_params(&v.params)
        .ok()
        .map(|g| finitegroup::identify(&g));
    let mut json = to_value(&v);
    json["command"] = json!("amitsur check");
    json["prime_data"] = to_value(&data);
    json["group"] = to_value(&name);
    json["verdict"] = json!(word);
    let mut text = String::new();
    let _ = writeln!(text, "{word}: {} condition {} branch {}", v.params, v.condition, v.branch);
    if let Some(n) = &name {
        let _ = writeln!(text, "  group {n}");
    }
    for d in &data {
        let _ = writeln!(text, "  p = {}: α = {}, n_p = {}, δ_p = {}", d.p, d.alpha, d.n_p, d.delta_p);
    }
    for (q, p) in &v.witnesses {
        let _ = writeln!(text, "  q = {q} served by p = {p}");
    }
    let _ = writeln!(text, "  {}", v.reason);
    Ok(Report { json, text, code })
}

fn amitsur_enumerate(n: u64, cond: CondArg) -> Result<Report, Failure> {
    let c = match cond {
        CondArg::C1 => Condition::C1,
        CondArg::C2 => Condition::C2,
    };
    let groups = amitsur::enumerate_gmr(n, 8, c)?;
    let json = json!({
        "command": "amitsur enumerate",
        "n": n,
        "condition": c.to_string(),
        "phi_divisor": 8,
        "groups": to_value(&groups),
        "verdict": "PASS",
    });
    let mut text = format!("embeddable G(m, r) with n = {n}, condition {c}, φ(m) | 8:\n");
    for g in &groups {
        let rs: Vec<String> = g.residues.iter().map(u64::to_string).collect();
        let _ = writeln!(text, "  {:<8} m = {:<3} r ∈ {{{}}}", g.name, g.m, rs.join(", "));
    }
    Ok(Report { json, text, code: EXIT_PASS })
}

fn group_jordan(a: &GmrArgs) -> Result<Report, Failure> {
    let g = finitegroup::build_gmr(a.m, a.r)?;
    let rep = finitegroup::jordan_constant(&g)?;
    let name = finitegroup::identify(&g);
    let z = finitegroup::is_z_group(&g)?;
    let mut json = to_value(&rep);
    json["command"] = json!("group jordan");
    json["m"] = json!(a.m);
    json["r"] = json!(a.r);
    json["group"] = json!(name);
    json["z_group"] = json!(z);
    json["verdict"] = json!("PASS");
    let text = format!(
        "G({},{}) ≅ {name}, order {}\n  J = {} (witness subgroup of order {}, normal abelian subgroup of order {})\n  minimal normal abelian index {}\n  Z-group: {z}\n",
        a.m, a.r, rep.group_order, rep.jordan_constant, rep.witness_order, rep.abelian_order, rep.group_index
    );
    Ok(Report { json, text, code: EXIT_PASS })
}

fn report_text(r: &VerificationReport) -> String {
    let mut text = String::new();
    let _ = writeln!(
        text,
        "witness {} ({}): {}",
        r.id,
        r.group,
        if r.pass { "PASS" } else { "FAILED" }
    );
    let _ = writeln!(text, "  q = {}, h = {}", r.q, r.poly);
    for s in &r.stages {
        let _ = writeln!(text, "  [{}] {}: {}", s.status, s.name, s.detail);
    }
    for e in &r.exclusions {
        let _ = writeln!(
            text,
            "    excludes {}: {}",
            e.group,
            e.reason.as_deref().unwrap_or("no obstruction found")
        );
    }
    text
}

fn catalog_verify(id: Option<usize>, all: bool) -> Result<Report, Failure> {
    let reports = if all {
        catalog::verify_all()
    } else {
        let id = id.expect("clap enforces --id or --all");
        vec![catalog::verify_witness(id).map_err(|e| Failure::Malformed(e.to_string()))?]
    };
    let pass = reports.iter().all(|r| r.pass);
    let (word, code) = verdict(pass);
    let asserted: usize = reports.iter().map(|r| r.paper_asserted_count()).sum();
    let json = json!({
        "command": "catalog verify",
        "reports": to_value(&reports),
        "paper_asserted_stages": asserted,
        "verdict": word,
    });
    let mut text: String = reports.iter().map(report_text).collect();
    let _ = writeln!(
        text,
        "{word}: {}/{} witnesses pass, {asserted} {} stage(s)",
        reports.iter().filter(|r| r.pass).count(),
        reports.len(),
        StageStatus::PaperAsserted
    );
    Ok(Report { json, text, code })
}

fn catalog_lemma(tag: &str) -> Result<Report, Failure> {
    let groups = catalog::reproduce_lemma(tag).map_err(|e| Failure::Malformed(e.to_string()))?;
    let json = json!({
        "command": "catalog lemma",
        "tag": tag,
        "groups": groups,
        "verdict": "PASS",
    });
    let text = format!("{tag}: {}\n", groups.join(", "));
    Ok(Report { json, text, code: EXIT_PASS })
}

fn catalog_jordan_range() -> Report {
    let range: Vec<usize> = catalog::jordan_range().into_iter().collect();
    let shown: Vec<String> = range.iter().map(usize::to_string).collect();
    Report {
        json: json!({
            "command": "catalog jordan-range",
            "range": range,
            "verdict": "PASS",
        }),
        text: format!("Jordan constants of the witness groups: {{{}}}\n", shown.join(", ")),
        code: EXIT_PASS,
    }
}
