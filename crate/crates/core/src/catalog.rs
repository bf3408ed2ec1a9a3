//! Master list of finite subgroups, the exclusion list, the thirteen
//! witnesses and their verification pipeline.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::abelianfield::AbelianFieldModel;
use crate::amitsur::{embeddable_params, enumerate_gmr, AmitsurError, Condition, GmrParams};
use crate::endalg::{
    classify_fourfold, cyclic_subgroup_admissible, invariant_sum, ramified_places,
    EndAlgebraShape, FourfoldKind,
};
use crate::finitegroup::{build_from_params, identify, jordan_constant, subgroups};
use crate::intmath::{is_prime, mult_order};
use crate::polyring::{factor_mod_p, IntPoly};
use crate::weil::{check_weil, real_root_count, weil_from_cyclotomic_scaling, WeilCandidate};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown witness id {0} (expected 1 to 13)")]
    UnknownWitness(usize),
    #[error("unknown lemma tag {0} (expected L3.5, L3.6 or L3.7)")]
    UnknownLemma(String),
    #[error(transparent)]
    Amitsur(#[from] AmitsurError),
}

pub const BINARY_TETRAHEDRAL: &str = "𝔗*";
pub const BINARY_OCTAHEDRAL: &str = "𝔒*";
pub const BINARY_ICOSAHEDRAL: &str = "𝔍*";

const CYCLIC_ORDERS: [u64; 10] = [2, 4, 6, 8, 10, 12, 16, 20, 24, 30];
const DICYCLIC_ORDERS: [u64; 8] = [12, 16, 20, 24, 32, 40, 48, 60];

/// Every finite subgroup of `End⁰(X)^×` for a simple abelian fourfold `X`
/// over a finite field, up to isomorphism.
pub fn master_subgroup_list() -> Vec<String> {
    let mut out: Vec<String> = CYCLIC_ORDERS.iter().map(|n| format!("C{n}")).collect();
    out.push("Q8".into());
    out.extend(DICYCLIC_ORDERS.iter().map(|n| format!("Dic{n}")));
    out.extend(["C5⋊C8", "C3⋊C16", "C5⋊C16"].map(String::from));
    out.extend([BINARY_TETRAHEDRAL, BINARY_OCTAHEDRAL, BINARY_ICOSAHEDRAL].map(String::from));
    out
}

/// Groups that never occur in `End⁰(X)^×` for a simple fourfold, with the
/// tag of the lemma excluding them.
pub fn excluded_groups_fourfold() -> Vec<(String, &'static str)> {
    [
        ("Dic20", "L4.2"),
        ("Dic16", "L4.3"),
        ("Dic24", "L4.3"),
        ("Q8", "L4.4"),
        (BINARY_TETRAHEDRAL, "L4.4"),
        (BINARY_OCTAHEDRAL, "L4.5"),
        (BINARY_ICOSAHEDRAL, "L4.5"),
        ("Dic32", "L4.6"),
        ("Dic40", "L4.6"),
        ("Dic48", "L4.6"),
        ("Dic60", "L4.6"),
        ("Dic12", "L4.8"),
    ]
    .into_iter()
    .map(|(g, t)| (g.to_string(), t))
    .collect()
}

pub fn exclusion_tag(group: &str) -> Option<&'static str> {
    excluded_groups_fourfold()
        .into_iter()
        .find(|(g, _)| g == group)
        .map(|(_, t)| t)
}

fn is_binary_polyhedral(name: &str) -> bool {
    [BINARY_TETRAHEDRAL, BINARY_OCTAHEDRAL, BINARY_ICOSAHEDRAL].contains(&name)
}

/// `G_{m,r}` presentation of a table-buildable master group.
pub fn presentation(name: &str) -> Option<GmrParams> {
    let (m, r, n) = match name {
        "Q8" => (4, 3, 2),
        "C5⋊C8" => (20, 9, 2),
        "C3⋊C16" => (24, 17, 2),
        "C5⋊C16" => (20, 13, 4),
        _ => {
            if let Some(k) = name.strip_prefix("Dic").and_then(|s| s.parse::<u64>().ok()) {
                (k / 2, k / 2 - 1, 2)
            } else {
                let k = name.strip_prefix('C')?.parse::<u64>().ok()?;
                return GmrParams::new(k, 1).ok();
            }
        }
    };
    GmrParams::with_order(m, r, n).ok()
}

pub fn group_order(name: &str) -> Option<u64> {
    match name {
        BINARY_TETRAHEDRAL => Some(24),
        BINARY_OCTAHEDRAL => Some(48),
        BINARY_ICOSAHEDRAL => Some(120),
        _ => presentation(name).map(|p| p.order()),
    }
}

/// Element orders; hardcoded for the binary polyhedral groups
/// (`SL(2,3)`, the binary octahedral group and `SL(2,5)`).
pub fn element_orders(name: &str) -> BTreeSet<u64> {
    let fixed: &[u64] = match name {
        BINARY_TETRAHEDRAL => &[1, 2, 3, 4, 6],
        BINARY_OCTAHEDRAL => &[1, 2, 3, 4, 6, 8],
        BINARY_ICOSAHEDRAL => &[1, 2, 3, 4, 5, 6, 10],
        _ => {
            let Some(gp) = presentation(name) else {
                return BTreeSet::new();
            };
            let g = build_from_params(&gp).expect("small master group");
            return (0..g.order()).map(|x| g.element_order(x) as u64).collect();
        }
    };
    fixed.iter().copied().collect()
}

pub fn is_cyclic_name(name: &str) -> bool {
    name.strip_prefix('C')
        .is_some_and(|s| s.chars().all(|c| c.is_ascii_digit()))
}

/// Noncyclic subgroups of the binary polyhedral groups that lie in the
/// master list.
fn polyhedral_noncyclic_subgroups(name: &str) -> &'static [&'static str] {
    match name {
        BINARY_TETRAHEDRAL => &["Q8"],
        BINARY_OCTAHEDRAL => &["Q8", "Dic12", "Dic16", BINARY_TETRAHEDRAL],
        BINARY_ICOSAHEDRAL => &["Q8", "Dic12", "Dic20", BINARY_TETRAHEDRAL],
        _ => &[],
    }
}

fn containment() -> &'static BTreeSet<(String, String)> {
    static CELL: OnceLock<BTreeSet<(String, String)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let names = master_subgroup_list();
        let mut rel = BTreeSet::new();
        for h in &names {
            if is_binary_polyhedral(h) {
                let orders = element_orders(h);
                for g in &names {
                    let cyclic_inside = is_cyclic_name(g)
                        && orders.contains(&group_order(g).unwrap());
                    if g == h || cyclic_inside || polyhedral_noncyclic_subgroups(h).contains(&g.as_str()) {
                        rel.insert((g.clone(), h.clone()));
                    }
                }
                continue;
            }
            // metacyclic groups have only metacyclic subgroups, so no
            // binary polyhedral group lies inside one
            let table = build_from_params(&presentation(h).unwrap()).unwrap();
            let inside: BTreeSet<String> = subgroups(&table)
                .unwrap()
                .iter()
                .map(|s| {
                    let elems = &s.elements;
                    let idx: BTreeMap<usize, usize> =
                        elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
                    let n = elems.len();
                    let mut cayley = vec![0; n * n];
                    for (i, &x) in elems.iter().enumerate() {
                        for (j, &y) in elems.iter().enumerate() {
                            cayley[i * n + j] = idx[&table.mul(x, y)];
                        }
                    }
                    let sub = crate::finitegroup::FiniteGroupTable::from_cayley(n, cayley).unwrap();
                    identify(&sub)
                })
                .collect();
            for g in &names {
                if inside.contains(g) {
                    rel.insert((g.clone(), h.clone()));
                }
            }
        }
        rel
    })
}

/// `g` is isomorphic to a subgroup of `h` (both master-list names).
pub fn is_subgroup_of(g: &str, h: &str) -> bool {
    containment().contains(&(g.to_string(), h.to_string()))
}

/// Master-list groups strictly containing `g`.
pub fn strict_supergroups(g: &str) -> Vec<String> {
    let order = group_order(g).unwrap_or(0);
    master_subgroup_list()
        .into_iter()
        .filter(|h| group_order(h).unwrap_or(0) > order && is_subgroup_of(g, h))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WitnessSource {
    Poly { q: u64, coeffs: Vec<i64> },
    /// `π = c·ζ_n`.
    Scaling { c: u64, n: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub id: usize,
    pub group: &'static str,
    pub source: WitnessSource,
    pub model: Option<&'static str>,
    pub kind: FourfoldKind,
    /// Nonzero local invariants as `(num, den)`, sorted.
    pub invariants: Vec<(i64, i64)>,
    pub jordan: usize,
}

impl WitnessEntry {
    pub fn candidate(&self) -> WeilCandidate {
        match &self.source {
            WitnessSource::Poly { q, coeffs } => WeilCandidate::new(
                *q,
                IntPoly::from_i64s(coeffs),
                self.model.map(|m| m.parse().expect("catalog model")),
            )
            .expect("catalog witness"),
            WitnessSource::Scaling { c, n } => {
                weil_from_cyclotomic_scaling(*c, *n).expect("catalog witness")
            }
        }
    }

    pub fn q(&self) -> u64 {
        match &self.source {
            WitnessSource::Poly { q, .. } => *q,
            WitnessSource::Scaling { c, .. } => c * c,
        }
    }

    pub fn center(&self) -> Option<AbelianFieldModel> {
        self.candidate().model
    }
}

const Q241: i64 = 241 * 241 * 241 * 241;

/// Group, source, model, kind, invariants, Jordan constant.
type WitnessRow<'a> = (&'a str, WitnessSource, Option<&'a str>, FourfoldKind, Vec<(i64, i64)>, usize);

pub fn witnesses() -> Vec<WitnessEntry> {
    use FourfoldKind::*;
    let poly = |q: u64, c: &[i64]| WitnessSource::Poly {
        q,
        coeffs: c.to_vec(),
    };
    let scaling = |c, n| WitnessSource::Scaling { c, n };
    let half4 = vec![(1, 2); 4];
    let rows: Vec<WitnessRow> = vec![
        ("C2", poly(2, &[16, 0, 8, -2, 1, -1, 2, 0, 1]), None, CmOctic, vec![], 1),
        ("C4", poly(Q241 as u64, &[Q241, 240 * 241, 1]), Some("4:"), Degree4OverImaginaryQuadratic, vec![(1, 4), (3, 4)], 1),
        ("C6", poly(Q241 as u64, &[Q241, 286 * 241, 1]), Some("3:"), Degree4OverImaginaryQuadratic, vec![(1, 4), (3, 4)], 1),
        ("C8", scaling(97, 8), None, QuaternionOverQuarticCm, half4.clone(), 1),
        ("C10", scaling(61, 10), None, QuaternionOverQuarticCm, half4.clone(), 1),
        ("C12", scaling(73, 12), None, QuaternionOverQuarticCm, half4, 1),
        ("C16", scaling(2, 16), None, CmOctic, vec![], 1),
        ("C20", scaling(2, 20), None, CmOctic, vec![], 1),
        ("C24", scaling(2, 24), None, CmOctic, vec![], 1),
        ("C30", scaling(5, 30), None, CmOctic, vec![], 1),
        ("C5⋊C8", poly(25, &[625, 0, -30, 0, 1]), Some("20:9"), QuaternionOverQuarticCm, vec![(1, 2); 2], 2),
        ("C3⋊C16", poly(81, &[6561, 0, -126, 0, 1]), Some("8:"), QuaternionOverQuarticCm, vec![(1, 2); 2], 2),
        ("C5⋊C16", poly(625, &[625, -30, 1]), Some("4:"), Degree4OverImaginaryQuadratic, vec![(1, 4), (3, 4)], 4),
    ];
    rows.into_iter()
        .enumerate()
        .map(|(i, (group, source, model, kind, invariants, jordan))| WitnessEntry {
            id: i + 1,
            group,
            source,
            model,
            kind,
            invariants,
            jordan,
        })
        .collect()
}

pub fn witness(id: usize) -> Result<WitnessEntry, CatalogError> {
    witnesses()
        .into_iter()
        .find(|w| w.id == id)
        .ok_or(CatalogError::UnknownWitness(id))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StageStatus {
    Pass,
    Fail,
    PaperAsserted,
}

impl fmt::Display for StageStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StageStatus::Pass => "PASS",
            StageStatus::Fail => "FAIL",
            StageStatus::PaperAsserted => "PAPER-ASSERTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub status: StageStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub group: String,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RationalJson(#[serde(serialize_with = "crate::serde_rational")] pub Rational);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: usize,
    pub group: String,
    pub q: u64,
    pub poly: IntPoly,
    pub kind: Option<FourfoldKind>,
    pub e: Option<u64>,
    pub d: Option<u64>,
    pub g: Option<u64>,
    pub invariants: Vec<RationalJson>,
    pub jordan: Option<usize>,
    pub stages: Vec<Stage>,
    pub exclusions: Vec<Exclusion>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn paper_asserted_count(&self) -> usize {
        self.stages
            .iter()
            .filter(|s| s.status == StageStatus::PaperAsserted)
            .count()
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }
}

fn stage(name: &'static str, ok: bool, detail: String) -> Stage {
    let status = if ok { StageStatus::Pass } else { StageStatus::Fail };
    Stage { name, status, detail }
}

/// A prime `ℓ ∤ k` with `h` squarefree mod `ℓ` and an irreducible factor
/// whose degree is not a multiple of `ord_k(ℓ)`. Then some prime of
/// `Q(π)` over `ℓ` has residue degree prime to the one forced by `ζ_k`,
/// so `ζ_k ∉ Q(π)`.
pub fn zeta_exclusion_certificate(h: &IntPoly, k: u64) -> Option<u64> {
    (3u64..2000).filter(|&l| is_prime(l) && !k.is_multiple_of(l)).find(|&l| {
        let Ok(fac) = factor_mod_p(h, l) else {
            return false;
        };
        let f = mult_order(l as i64, k).expect("ℓ ∤ k");
        fac.is_squarefree()
            && fac.degrees().iter().sum::<usize>() == h.degree().unwrap_or(0)
            && fac.degrees().iter().any(|&d| !(d as u64).is_multiple_of(f))
    })
}

/// What the center knows about roots of unity.
enum Center<'a> {
    Model(&'a AbelianFieldModel),
    /// Only the minimal polynomial of `π` is known.
    Poly(&'a IntPoly),
}

impl Center<'_> {
    /// Why `ζ_k ∉ K`, if that can be shown.
    fn lacks_zeta(&self, k: u64) -> Option<String> {
        match self {
            Center::Model(m) => (!m.contains_zeta(k)).then(|| format!("ζ_{k} ∉ K = {m}")),
            Center::Poly(h) => {
                // any ζ_j with j | k and j ∈ {3, 4, 5} suffices
                [3u64, 4, 5, k].iter().filter(|&&j| j > 2 && k.is_multiple_of(j)).find_map(|&j| {
                    zeta_exclusion_certificate(h, j)
                        .map(|l| format!("ζ_{j} ∉ K (prime certificate ℓ = {l})"))
                })
            }
        }
    }
}

struct Algebra<'a> {
    center: Center<'a>,
    d: u64,
    ram: Vec<(u64, u64)>,
}

impl Algebra<'_> {
    /// Reason why `C_k` does not embed, if one is found.
    fn cyclic_obstruction(&self, k: u64) -> Option<String> {
        if k <= 2 {
            return None;
        }
        if self.d == 1 {
            return self.center.lacks_zeta(k);
        }
        let Center::Model(m) = &self.center else {
            return None;
        };
        match cyclic_subgroup_admissible(k, m, self.d, &self.ram) {
            Ok(a) if !a.admissible => Some(format!("Q(ζ_{k}) does not embed: {}", a.reason)),
            _ => None,
        }
    }

    fn group_obstruction(&self, h: &str) -> Option<String> {
        if let Some(tag) = exclusion_tag(h) {
            return Some(format!("excluded by {tag}"));
        }
        if self.d == 1 && !is_cyclic_name(h) {
            return Some("nonabelian, but D = K is a field".into());
        }
        element_orders(h)
            .into_iter()
            .rev()
            .find_map(|k| self.cyclic_obstruction(k))
    }
}

/// The full pipeline for one witness.
pub fn verify_witness(id: usize) -> Result<VerificationReport, CatalogError> {
    let w = witness(id)?;
    Ok(run_pipeline(&w))
}

/// All thirteen witnesses, one thread each.
pub fn verify_all() -> Vec<VerificationReport> {
    let ws = witnesses();
    std::thread::scope(|s| {
        let handles: Vec<_> = ws.iter().map(|w| s.spawn(|| run_pipeline(w))).collect();
        handles.into_iter().map(|h| h.join().expect("pipeline thread")).collect()
    })
}

fn run_pipeline(w: &WitnessEntry) -> VerificationReport {
    let cand = w.candidate();
    let mut report = VerificationReport {
        id: w.id,
        group: w.group.to_string(),
        q: cand.q,
        poly: cand.h.clone(),
        kind: None,
        e: None,
        d: None,
        g: None,
        invariants: vec![],
        jordan: None,
        stages: vec![],
        exclusions: vec![],
        pass: false,
    };
    let weil = check_weil(&cand.h, cand.q);
    let weil_ok = matches!(&weil, Ok(v) if v.is_weil);
    report.stages.push(stage(
        "weil",
        weil_ok,
        match &weil {
            Ok(v) => v.reason.clone(),
            Err(e) => e.to_string(),
        },
    ));
    if !weil_ok {
        return report;
    }
    let shape = match classify_fourfold(&cand) {
        Ok(s) => s,
        Err(e) => {
            report.stages.push(stage("shape", false, e.to_string()));
            return report;
        }
    };
    fill_shape(&mut report, w, &shape);
    let center = match &cand.model {
        Some(m) => Center::Model(m),
        None => Center::Poly(&cand.h),
    };
    let alg = Algebra {
        center,
        d: shape.d,
        ram: ramified_places(&shape.invariants),
    };
    if let Center::Poly(h) = &alg.center {
        report.stages.push(units_stage(h));
    }
    group_stages(&mut report, w, &alg);
    maximality_stage(&mut report, w, &alg);
    jordan_stage(&mut report, w);
    report.pass = report.stages.iter().all(|s| s.status != StageStatus::Fail);
    report
}

fn fill_shape(report: &mut VerificationReport, w: &WitnessEntry, s: &EndAlgebraShape) {
    report.kind = Some(s.kind);
    report.e = Some(s.e);
    report.d = Some(s.d);
    report.g = Some(s.g);
    report.stages.push(stage(
        "shape",
        s.kind == w.kind,
        format!("{} (e = {}, d = {}), expected {}", s.kind, s.e, s.d, w.kind),
    ));
    let mut nz = s.nonzero_invariants();
    nz.sort();
    let expected: Vec<Rational> = w.invariants.iter().map(|&(n, d)| Rational::new(n, d)).collect();
    report.invariants = nz.iter().copied().map(RationalJson).collect();
    let shown: Vec<String> = nz.iter().map(|r| r.to_string()).collect();
    report.stages.push(stage(
        "invariants",
        nz == expected && *invariant_sum(&s.invariants).numer() == 0,
        format!("nonzero invariants [{}], sum ≡ 0 mod 1", shown.join(", ")),
    ));
    report.stages.push(stage(
        "dimension",
        s.d * s.e == 8 && s.g == 4,
        format!("d·deg h = {}, g = {}", s.d * s.e, s.g),
    ));
}

fn units_stage(h: &IntPoly) -> Stage {
    let deg = h.degree().unwrap_or(0) as u64;
    let r1 = real_root_count(h) as u64;
    let r2 = (deg - r1) / 2;
    let certs: Vec<Option<u64>> = [3, 4, 5]
        .iter()
        .map(|&k| zeta_exclusion_certificate(h, k))
        .collect();
    let shown: Vec<String> = certs
        .iter()
        .map(|c| c.map_or("none".into(), |l| l.to_string()))
        .collect();
    let ok = r1 + r2 == 4 && certs.iter().all(Option::is_some);
    // every root of unity of degree dividing 8 other than ±1 has order
    // divisible by 3, 4 or 5
    Stage {
        name: "units",
        status: if ok { StageStatus::Pass } else { StageStatus::Fail },
        detail: format!(
            "(r1, r2) = ({r1}, {r2}), unit rank {}; torsion C2: ζ3, ζ4, ζ5 excluded by primes {}",
            (r1 + r2).saturating_sub(1),
            shown.join(", ")
        ),
    }
}

fn group_stages(report: &mut VerificationReport, w: &WitnessEntry, alg: &Algebra) {
    let orders = element_orders(w.group);
    let blocked: Vec<String> = orders.iter().filter_map(|&k| alg.cyclic_obstruction(k)).collect();
    let listed: Vec<String> = orders.iter().map(u64::to_string).collect();
    if is_cyclic_name(w.group) {
        report.stages.push(stage(
            "embedding",
            blocked.is_empty(),
            if blocked.is_empty() {
                format!("Q(ζ_k) embeds for every element order k ∈ {{{}}}", listed.join(", "))
            } else {
                blocked.join("; ")
            },
        ));
        return;
    }
    let gp = presentation(w.group).expect("nonabelian witness");
    let v = embeddable_params(&gp);
    report.stages.push(stage(
        "embedding",
        v.embeddable && blocked.is_empty(),
        format!(
            "G({},{}) embeddable via {}; cyclotomic subfields for k ∈ {{{}}}: {}",
            gp.m,
            gp.r,
            v.branch,
            listed.join(", "),
            if blocked.is_empty() { "all admissible".into() } else { blocked.join("; ") }
        ),
    ));
    report.stages.push(Stage {
        name: "algebra-embedding",
        status: StageStatus::PaperAsserted,
        detail: format!("{} ≤ D^× from the local Schur index tables", w.group),
    });
}

fn maximality_stage(report: &mut VerificationReport, w: &WitnessEntry, alg: &Algebra) {
    report.exclusions = strict_supergroups(w.group)
        .into_iter()
        .map(|h| Exclusion {
            reason: alg.group_obstruction(&h),
            group: h,
        })
        .collect();
    let open: Vec<&str> = report
        .exclusions
        .iter()
        .filter(|e| e.reason.is_none())
        .map(|e| e.group.as_str())
        .collect();
    report.stages.push(stage(
        "maximality",
        open.is_empty(),
        if open.is_empty() {
            format!("{} larger master-list groups excluded", report.exclusions.len())
        } else {
            format!("no obstruction found for {}", open.join(", "))
        },
    ));
}

fn jordan_stage(report: &mut VerificationReport, w: &WitnessEntry) {
    let table = build_from_params(&presentation(w.group).expect("buildable")).expect("small");
    let j = jordan_constant(&table).expect("small").jordan_constant;
    report.jordan = Some(j);
    report.stages.push(stage(
        "jordan",
        j == w.jordan,
        format!("J = {j}, expected {}", w.jordan),
    ));
}

/// Group names from the enumeration behind one of the three lemmas.
pub fn reproduce_lemma(tag: &str) -> Result<Vec<String>, CatalogError> {
    let (n, cond) = match tag {
        "L3.5" => (2, Condition::C1),
        "L3.6" => (2, Condition::C2),
        "L3.7" => (4, Condition::C1),
        _ => return Err(CatalogError::UnknownLemma(tag.to_string())),
    };
    Ok(enumerate_gmr(n, 8, cond)?.into_iter().map(|g| g.name).collect())
}

/// Jordan constants of the thirteen witness groups.
pub fn jordan_range() -> BTreeSet<usize> {
    witnesses()
        .iter()
        .map(|w| {
            let t = build_from_params(&presentation(w.group).unwrap()).unwrap();
            jordan_constant(&t).unwrap().jordan_constant
        })
        .collect()
}

/// Degree of the center `Q(π)` as reported by the model, or `deg h`.
pub fn center_degree(w: &WitnessEntry) -> u64 {
    w.center()
        .map(|m| m.degree())
        .unwrap_or_else(|| w.candidate().h.degree().unwrap_or(0) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitegroup::is_z_group;

    #[test]
    fn master_list_and_exclusions() {
        let list = master_subgroup_list();
        assert_eq!(list.len(), 25);
        assert!(list.contains(&"Dic60".to_string()));
        assert!(list.contains(&BINARY_ICOSAHEDRAL.to_string()));
        assert_eq!(exclusion_tag("Q8"), Some("L4.4"));
        assert_eq!(exclusion_tag("Dic48"), Some("L4.6"));
        let excluded: BTreeSet<String> = excluded_groups_fourfold().into_iter().map(|(g, _)| g).collect();
        let rest: BTreeSet<String> = list.into_iter().filter(|g| !excluded.contains(g)).collect();
        let table2: BTreeSet<String> = witnesses().iter().map(|w| w.group.to_string()).collect();
        assert_eq!(rest, table2);
    }

    #[test]
    fn presentations_identify_to_their_names() {
        for name in master_subgroup_list() {
            match presentation(&name) {
                Some(gp) => {
                    let t = build_from_params(&gp).unwrap();
                    assert_eq!(identify(&t), name);
                }
                None => assert!(is_binary_polyhedral(&name)),
            }
        }
    }

    #[test]
    fn containments() {
        assert!(is_subgroup_of("C8", "C5⋊C8"));
        assert!(is_subgroup_of("C20", "C5⋊C8"));
        assert!(is_subgroup_of("C5⋊C8", "C5⋊C16"));
        assert!(is_subgroup_of("C16", "C3⋊C16"));
        assert!(is_subgroup_of("Dic20", "Dic60"));
        assert!(is_subgroup_of("Q8", "Dic24"));
        assert!(!is_subgroup_of("Q8", "Dic12"));
        assert!(is_subgroup_of("Q8", BINARY_OCTAHEDRAL));
        assert!(is_subgroup_of("C8", BINARY_OCTAHEDRAL));
        assert!(!is_subgroup_of("C8", BINARY_ICOSAHEDRAL));
        assert!(is_subgroup_of("C10", BINARY_ICOSAHEDRAL));
        assert_eq!(
            strict_supergroups("C16"),
            ["Dic32", "C3⋊C16", "C5⋊C16"]
        );
        assert!(strict_supergroups("C5⋊C16").is_empty());
    }

    #[test]
    fn binary_polyhedral_orders_are_consistent() {
        for h in [BINARY_TETRAHEDRAL, BINARY_OCTAHEDRAL, BINARY_ICOSAHEDRAL] {
            let order = group_order(h).unwrap();
            for k in element_orders(h) {
                assert_eq!(order % k, 0);
            }
            for g in polyhedral_noncyclic_subgroups(h) {
                assert_eq!(order % group_order(g).unwrap(), 0);
                assert!(element_orders(g).is_subset(&element_orders(h)));
            }
        }
    }

    #[test]
    fn octic_has_no_small_roots_of_unity() {
        let h = witness(1).unwrap().candidate().h;
        for k in [3, 4, 5] {
            assert!(zeta_exclusion_certificate(&h, k).is_some());
        }
        // Φ8 contains ζ4: no certificate can exist
        let phi8 = IntPoly::from_i64s(&[1, 0, 0, 0, 1]);
        assert_eq!(zeta_exclusion_certificate(&phi8, 4), None);
    }

    #[test]
    fn witness_reports() {
        for r in verify_all() {
            assert!(r.pass, "{r:#?}");
            let expected = if r.id >= 11 { 1 } else { 0 };
            assert_eq!(r.paper_asserted_count(), expected, "witness {}", r.id);
        }
        let r = verify_witness(2).unwrap();
        assert_eq!(
            r.invariants,
            vec![RationalJson(Rational::new(1, 4)), RationalJson(Rational::new(3, 4))]
        );
        assert_eq!(r.kind, Some(FourfoldKind::Degree4OverImaginaryQuadratic));
        let r = verify_witness(4).unwrap();
        let reasons: Vec<_> = r.exclusions.iter().map(|e| e.group.as_str()).collect();
        assert!(reasons.contains(&"C16") && reasons.contains(&"C24"));
        assert!(verify_witness(14).is_err());
    }

    #[test]
    fn lemmas_and_jordan_range() {
        assert_eq!(
            reproduce_lemma("L3.7").unwrap(),
            vec!["C5⋊C16".to_string()]
        );
        assert!(reproduce_lemma("L9.9").is_err());
        assert_eq!(jordan_range(), BTreeSet::from([1, 2, 4]));
    }

    #[test]
    fn table2_groups_are_z_groups() {
        for w in witnesses() {
            let t = build_from_params(&presentation(w.group).unwrap()).unwrap();
            assert!(is_z_group(&t).unwrap(), "{}", w.group);
        }
        let q8 = build_from_params(&presentation("Q8").unwrap()).unwrap();
        assert!(!is_z_group(&q8).unwrap());
    }

    #[test]
    fn centers() {
        let degs: Vec<u64> = witnesses().iter().map(center_degree).collect();
        assert_eq!(degs, [8, 2, 2, 4, 4, 4, 8, 8, 8, 8, 4, 4, 2]);
    }
}
