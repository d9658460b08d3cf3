//! Claim registry and runner behind the `sporadic` binary.
//!
//! Every claim is a pure function of a shared [`Context`] whose expensive
//! prerequisites are built at most once. Reports contain no timing data
//! unless asked for, so repeated runs are byte-identical.

use std::fmt::Display;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebras::{
    cayley_automorphisms, cayley_ring, cayley_units, eisenstein_unit_scan, eisenstein_units,
    eisenstein_units_mod_sign, hurwitz_unit_scan, hurwitz_units, CayleyAutomorphisms, CayleyRing,
    UnitLoop, MOUFANG_SAMPLES,
};
use crate::error::{Error, Result};
use crate::exact::{EisensteinRational, GaussianRational, Quaternion};
use crate::groups::{
    isomorphic, verify_isomorphism, FiniteGroup, GroupElement, IsoOptions, IsoOutcome, Perm,
    Transitivity,
};
use crate::lattices::{identify_root_system, RootLabel, VectorFamily};
use crate::matgroups::{build_psu33, build_sl23, BinaryMatrix6, SqMatrix, F3};
use crate::sic::{
    check_sic, hesse_symmetries, hesse_system, hoggar_full_symmetry, hoggar_stabilizer,
    hoggar_stabilizer_from_parts, hoggar_system, qubit_model, qubit_stabilizer, qubit_symmetries,
    triple_products, twin_check, HesseSymmetries, HoggarStabilizer, SicSystem,
    TripleProductTable, TwinStatus,
};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Wall-clock budget for a single isomorphism search before a claim falls
/// back to invariant matching.
pub const ISO_BUDGET: Duration = Duration::from_secs(600);

/// Pairs checked exhaustively when verifying an isomorphism witness.
const EXHAUSTIVE_PAIRS: usize = 1_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    IdentifiedByInvariants,
    Failed,
    Inconclusive,
    Finding,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::IdentifiedByInvariants => "identified-by-invariants",
            Status::Failed => "failed",
            Status::Inconclusive => "inconclusive",
            Status::Finding => "finding",
        }
    }

    fn passes(self) -> bool {
        matches!(self, Status::Verified | Status::IdentifiedByInvariants)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub description: String,
    pub paper_anchor: String,
    pub status: Status,
    pub witnesses: Value,
    pub runtime_ms: u64,
}

impl ClaimReport {
    pub fn summary(&self) -> &str {
        self.witnesses
            .get("summary")
            .and_then(Value::as_str)
            .unwrap_or("")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub artifact_version: String,
    pub reports: Vec<ClaimReport>,
    pub all_verified: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&format!("{:<4} {:<25} {}\n", r.claim, r.status.as_str(), r.summary()));
        }
        out.push_str(&format!(
            "all_verified: {} (version {})\n",
            self.all_verified, self.artifact_version
        ));
        out
    }
}

pub struct Claim {
    pub id: &'static str,
    pub name: &'static str,
    pub description: &'static str,
    pub paper_anchor: &'static str,
    /// Findings are reported but never decide the exit status.
    pub finding: bool,
    runner: fn(&Context) -> Result<Outcome>,
}

struct Outcome {
    status: Status,
    witnesses: Value,
}

impl Outcome {
    fn check(ok: bool, summary: impl Display, mut witnesses: Value) -> Self {
        witnesses["summary"] = Value::String(summary.to_string());
        Outcome {
            status: if ok { Status::Verified } else { Status::Failed },
            witnesses,
        }
    }

    fn with_status(mut self, status: Status) -> Self {
        if self.status != Status::Failed {
            self.status = status;
        }
        self
    }
}

/// Memoized prerequisites shared by the claims.
#[derive(Default)]
pub struct Context {
    cache_dir: Option<PathBuf>,
    hesse: OnceLock<SicSystem<EisensteinRational>>,
    hesse_table: OnceLock<TripleProductTable<EisensteinRational>>,
    hesse_sym: OnceLock<Result<HesseSymmetries>>,
    hoggar: OnceLock<SicSystem<GaussianRational>>,
    hoggar_table: OnceLock<TripleProductTable<GaussianRational>>,
    hoggar_stab: OnceLock<Result<HoggarStabilizer>>,
    hoggar_full: OnceLock<Result<FiniteGroup<Perm>>>,
    sl23: OnceLock<FiniteGroup<SqMatrix<F3, 2>>>,
    psu33: OnceLock<FiniteGroup<Perm>>,
    hurwitz: OnceLock<FiniteGroup<Quaternion>>,
    ring: OnceLock<Result<CayleyRing>>,
    units: OnceLock<Result<UnitLoop>>,
    aut: OnceLock<Result<CayleyAutomorphisms>>,
}

/// Borrow a memoized result, keeping the limit variants that decide exit code 3.
fn shared<T>(r: &Result<T>) -> Result<&T> {
    r.as_ref().map_err(|e| match e {
        Error::SizeLimit { limit } => Error::SizeLimit { limit: *limit },
        Error::BudgetExhausted { tried } => Error::BudgetExhausted { tried: *tried },
        other => Error::Construction(other.to_string()),
    })
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    /// Persist and reuse the Sp(6,2) scan under `dir`.
    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Self {
        Self {
            cache_dir: Some(dir.into()),
            ..Self::default()
        }
    }

    pub fn hesse(&self) -> &SicSystem<EisensteinRational> {
        self.hesse.get_or_init(hesse_system)
    }

    pub fn hesse_table(&self) -> &TripleProductTable<EisensteinRational> {
        self.hesse_table.get_or_init(|| triple_products(self.hesse()))
    }

    pub fn hesse_symmetries(&self) -> Result<&HesseSymmetries> {
        shared(self.hesse_sym.get_or_init(|| hesse_symmetries(self.hesse_table())))
    }

    pub fn hoggar(&self) -> &SicSystem<GaussianRational> {
        self.hoggar.get_or_init(hoggar_system)
    }

    pub fn hoggar_table(&self) -> &TripleProductTable<GaussianRational> {
        self.hoggar_table.get_or_init(|| triple_products(self.hoggar()))
    }

    pub fn hoggar_stabilizer(&self) -> Result<&HoggarStabilizer> {
        shared(self.hoggar_stab.get_or_init(|| {
            let table = self.hoggar_table();
            let Some(dir) = &self.cache_dir else {
                return hoggar_stabilizer(table);
            };
            let path = dir.join(SNAPSHOT_FILE);
            if let Some(stab) = load_snapshot(&path).and_then(|(u, a, n)| {
                hoggar_stabilizer_from_parts(table, u, a, n).ok()
            }) {
                return Ok(stab);
            }
            let stab = hoggar_stabilizer(table)?;
            write_snapshot(&path, &stab)?;
            Ok(stab)
        }))
    }

    pub fn hoggar_full(&self) -> Result<&FiniteGroup<Perm>> {
        shared(self.hoggar_full.get_or_init(|| hoggar_full_symmetry(self.hoggar_stabilizer()?)))
    }

    pub fn sl23(&self) -> &FiniteGroup<SqMatrix<F3, 2>> {
        self.sl23.get_or_init(build_sl23)
    }

    pub fn psu33(&self) -> &FiniteGroup<Perm> {
        self.psu33.get_or_init(build_psu33)
    }

    pub fn hurwitz(&self) -> &FiniteGroup<Quaternion> {
        self.hurwitz.get_or_init(hurwitz_units)
    }

    pub fn cayley_ring(&self) -> Result<&CayleyRing> {
        shared(self.ring.get_or_init(cayley_ring))
    }

    pub fn cayley_units(&self) -> Result<&UnitLoop> {
        shared(self.units.get_or_init(|| cayley_units(self.cayley_ring()?)))
    }

    pub fn cayley_automorphisms(&self) -> Result<&CayleyAutomorphisms> {
        shared(self.aut.get_or_init(|| cayley_automorphisms(self.cayley_units()?)))
    }
}

// ---------------------------------------------------------------------------
// Sp(6,2) scan snapshots.

const SNAPSHOT_FILE: &str = "hoggar-stabilizer.bin";
const SNAPSHOT_MAGIC: &[u8; 8] = b"SPRDSP62";
const SNAPSHOT_VERSION: u32 = 1;

fn write_snapshot(path: &Path, stab: &HoggarStabilizer) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut buf = Vec::new();
    buf.extend_from_slice(SNAPSHOT_MAGIC);
    buf.extend_from_slice(&SNAPSHOT_VERSION.to_le_bytes());
    buf.extend_from_slice(&(stab.candidates_scanned as u64).to_le_bytes());
    for list in [&stab.unitary_matrices, &stab.antiunitary_matrices] {
        buf.extend_from_slice(&(list.len() as u32).to_le_bytes());
        for m in list {
            buf.extend_from_slice(&m.cols);
        }
    }
    fs::File::create(path)?.write_all(&buf)?;
    Ok(())
}

/// `None` for a missing, foreign or truncated file; the caller rescans.
fn load_snapshot(path: &Path) -> Option<(Vec<BinaryMatrix6>, Vec<BinaryMatrix6>, usize)> {
    let mut buf = Vec::new();
    fs::File::open(path).ok()?.read_to_end(&mut buf).ok()?;
    let mut rest = buf.strip_prefix(SNAPSHOT_MAGIC)?;
    let mut take = |n: usize| -> Option<&[u8]> {
        let (head, tail) = rest.split_at_checked(n)?;
        rest = tail;
        Some(head)
    };
    if u32::from_le_bytes(take(4)?.try_into().ok()?) != SNAPSHOT_VERSION {
        return None;
    }
    let scanned = u64::from_le_bytes(take(8)?.try_into().ok()?) as usize;
    let mut lists = Vec::new();
    for _ in 0..2 {
        let n = u32::from_le_bytes(take(4)?.try_into().ok()?) as usize;
        let mut list = Vec::with_capacity(n);
        for _ in 0..n {
            list.push(BinaryMatrix6 {
                cols: take(6)?.try_into().ok()?,
            });
        }
        lists.push(list);
    }
    let anti = lists.pop()?;
    let lin = lists.pop()?;
    Some((lin, anti, scanned))
}

// ---------------------------------------------------------------------------
// Witness helpers.

fn describe_iso<E, F>(g: &FiniteGroup<E>, h: &FiniteGroup<F>, out: &IsoOutcome) -> (bool, Value)
where
    E: GroupElement + Display,
    F: GroupElement + Display,
{
    match out {
        IsoOutcome::Isomorphic(w) => {
            let verified = verify_isomorphism(g, h, &w.map, EXHAUSTIVE_PAIRS);
            let generators: Vec<String> =
                w.source_generators.iter().map(|&i| g.element(i).to_string()).collect();
            let images: Vec<String> = w.images.iter().map(|&i| h.element(i).to_string()).collect();
            (
                verified,
                json!({"outcome": "isomorphic", "verified": verified, "generators": generators, "images": images}),
            )
        }
        IsoOutcome::NotIsomorphic { reason } => {
            (false, json!({"outcome": "not-isomorphic", "reason": reason}))
        }
        IsoOutcome::Inconclusive { tried } => {
            (false, json!({"outcome": "inconclusive", "candidates_tried": tried}))
        }
    }
}

fn budgeted() -> IsoOptions {
    IsoOptions {
        deadline: Some(Instant::now() + ISO_BUDGET),
        ..IsoOptions::default()
    }
}

/// Certified witness if one is found in budget; otherwise invariant matching
/// on order, simplicity and class sizes, labeled as such.
fn iso_or_invariants<E, F>(g: &FiniteGroup<E>, h: &FiniteGroup<F>) -> (Status, bool, Value)
where
    E: GroupElement + Display,
    F: GroupElement + Display,
{
    let out = isomorphic(g, h, &budgeted());
    let (ok, w) = describe_iso(g, h, &out);
    if ok {
        return (Status::Verified, true, w);
    }
    if matches!(out, IsoOutcome::Inconclusive { .. }) {
        let mut a = g.class_sizes();
        let mut b = h.class_sizes();
        a.sort_unstable();
        b.sort_unstable();
        let same = g.order() == h.order() && g.is_simple() == h.is_simple() && a == b;
        return (Status::IdentifiedByInvariants, same, w);
    }
    (Status::Failed, false, w)
}

fn transitivity_name(t: Transitivity) -> &'static str {
    match t {
        Transitivity::Intransitive => "intransitive",
        Transitivity::Transitive => "transitive",
        Transitivity::DoublyTransitive => "doubly_transitive",
    }
}

fn twin_name(t: TwinStatus) -> &'static str {
    match t {
        TwinStatus::SelfConjugate => "self_conjugate",
        TwinStatus::Twinned => "twinned",
    }
}

fn is_cyclic<E: GroupElement>(g: &FiniteGroup<E>) -> bool {
    (0..g.order()).any(|i| g.element_order(i) == g.order())
}

// ---------------------------------------------------------------------------
// Runners.

fn c1(ctx: &Context) -> Result<Outcome> {
    let s = ctx.hesse();
    let c = check_sic(s);
    let ok = c.holds && s.norm_sq == crate::exact::int(2) && c.cross_overlaps == [crate::exact::int(1)];
    Ok(Outcome::check(
        ok,
        format!("9 vectors, norm_sq {}, |<j|k>|^2 = 1 for j != k over {} ordered pairs", s.norm_sq, c.ordered_pairs),
        json!({"vectors": s.len(), "norm_sq": s.norm_sq.to_string(), "ordered_pairs": c.ordered_pairs, "cross_overlaps": c.cross_overlaps.iter().map(ToString::to_string).collect::<Vec<_>>(), "identity": "4 * 1 = 2^2"}),
    ))
}

fn c2(ctx: &Context) -> Result<Outcome> {
    let s = ctx.hoggar();
    let c = check_sic(s);
    let ok = c.holds && s.norm_sq == crate::exact::int(12) && c.cross_overlaps == [crate::exact::int(16)];
    let n = s.len();
    Ok(Outcome::check(
        ok,
        format!("64 vectors, norm_sq {}, |<j|k>|^2 = 16 on all {} unordered pairs", s.norm_sq, n * (n - 1) / 2),
        json!({"vectors": n, "norm_sq": s.norm_sq.to_string(), "ordered_pairs": c.ordered_pairs, "unordered_pairs": n * (n - 1) / 2, "cross_overlaps": c.cross_overlaps.iter().map(ToString::to_string).collect::<Vec<_>>(), "identity": "9 * 16 = 12^2"}),
    ))
}

fn c3(_: &Context) -> Result<Outcome> {
    let rot = qubit_symmetries(false);
    let stab = qubit_stabilizer();
    let refl = qubit_symmetries(true);
    let t = rot.transitivity();
    let ok = rot.order() == 12
        && t == Transitivity::DoublyTransitive
        && stab.order() == 3
        && is_cyclic(&stab);
    Ok(Outcome::check(
        ok,
        format!("rotation group order {}, vertex stabilizer order {} (cyclic: {})", rot.order(), stab.order(), is_cyclic(&stab)),
        json!({"rotation_group_order": rot.order(), "transitivity": transitivity_name(t), "stabilizer_order": stab.order(), "stabilizer_cyclic": is_cyclic(&stab), "with_reflections_order": refl.order(), "with_reflections_stabilizer_order": refl.point_stabilizer(0).order(), "stabilizer_generators": stab.generator_elements().iter().map(ToString::to_string).collect::<Vec<_>>()}),
    ))
}

fn c4(_: &Context) -> Result<Outcome> {
    let g = eisenstein_units();
    let scan = eisenstein_unit_scan(2);
    let q = eisenstein_units_mod_sign()?;
    let qubit = qubit_stabilizer();
    let out = isomorphic(&q, &qubit, &IsoOptions::default());
    let (iso_ok, iso) = describe_iso(&q, &qubit, &out);
    let ok = g.order() == 6 && scan.len() == 6 && is_cyclic(&g) && q.order() == 3 && is_cyclic(&q) && iso_ok;
    Ok(Outcome::check(
        ok,
        format!("{} units, cyclic: {}, quotient by ±1 of order {} isomorphic to the qubit stabilizer: {}", g.order(), is_cyclic(&g), q.order(), iso_ok),
        json!({"units": g.elements().map(ToString::to_string).collect::<Vec<_>>(), "brute_force_count": scan.len(), "cyclic": is_cyclic(&g), "quotient_order": q.order(), "quotient_vs_qubit_stabilizer": iso}),
    ))
}

fn c5(ctx: &Context) -> Result<Outcome> {
    let h = ctx.hurwitz();
    let scan = hurwitz_unit_scan();
    let out = isomorphic(h, ctx.sl23(), &IsoOptions::default());
    let (iso_ok, iso) = describe_iso(h, ctx.sl23(), &out);
    let closed = scan.iter().all(|a| scan.iter().all(|b| h.contains(&a.compose(b))));
    let ok = h.order() == 24 && scan.len() == 24 && closed && iso_ok;
    Ok(Outcome::check(
        ok,
        format!("{} units, closed: {closed}, isomorphic to SL(2,3): {iso_ok}", h.order()),
        json!({"units": h.order(), "closure_audit": closed, "sl23": iso}),
    ))
}

fn c6(ctx: &Context) -> Result<Outcome> {
    let sym = ctx.hesse_symmetries()?;
    let g = &sym.full_group;
    let t = g.transitivity();
    let pairs = g.pair_orbit_size(0, 1);
    let (_, sl_ok, sl) = iso_or_invariants(&sym.stabilizer0, ctx.sl23());
    let (_, hw_ok, hw) = iso_or_invariants(&sym.stabilizer0, ctx.hurwitz());
    let ok = g.order() == 216 && t == Transitivity::DoublyTransitive && pairs == 72 && sym.stabilizer0.order() == 24 && sl_ok && hw_ok;
    Ok(Outcome::check(
        ok,
        format!("symmetry group order {}, pair orbit {}, stabilizer order {} isomorphic to SL(2,3): {sl_ok}", g.order(), pairs, sym.stabilizer0.order()),
        json!({"permutations_scanned": 362_880, "search_nodes": sym.nodes_visited, "full_group_order": g.order(), "transitivity": transitivity_name(t), "pair_orbit": pairs, "stabilizer_order": sym.stabilizer0.order(), "sl23": sl, "hurwitz_units": hw, "antiunitary_label_maps": sym.antiunitary.len()}),
    ))
}

fn c7(ctx: &Context) -> Result<Outcome> {
    let ring = ctx.cayley_ring()?;
    let units = ctx.cayley_units()?;
    let moufang = units.moufang_exhaustive();
    let sampled = units.moufang_sampled(MOUFANG_SAMPLES);
    let witness = units.associativity_witness();
    let ok = ring.basis_closed()
        && units.len() == 240
        && units.inverses_closed()
        && moufang.holds
        && sampled.iter().all(|m| m.holds)
        && witness.is_some();
    let assoc = witness.map(|[u, v, w]| {
        let (a, b, c) = (&units.units[u], &units.units[v], &units.units[w]);
        json!({"u": a.to_string(), "v": b.to_string(), "w": c.to_string(), "(uv)w": (&(a * b) * c).to_string(), "u(vw)": (a * &(b * c)).to_string()})
    });
    Ok(Outcome::check(
        ok,
        format!(
            "{} units; closure gate passed after {}; Moufang on {} triples: {}",
            units.len(),
            ring.swap.map_or("no swap".to_string(), |(a, b)| format!("swapping coordinates {a} and {b}")),
            moufang.triples,
            moufang.holds
        ),
        json!({"units": units.len(), "closure_gate": ring.attempts, "basis_pairs_checked": 64, "doubled_gram_det": ring.doubled_gram_det().to_string(), "min_norm": ring.min_norm().to_string(), "moufang": moufang, "moufang_sampled": sampled, "associativity_failure": assoc}),
    ))
}

fn c8(ctx: &Context) -> Result<Outcome> {
    let aut = ctx.cayley_automorphisms()?;
    let units = ctx.cayley_units()?;
    let ok = aut.permutations.len() == 12_096 && aut.group.order() == 12_096;
    let triple: Vec<String> = aut.basic_triple.iter().map(|&i| units.units[i].to_string()).collect();
    Ok(Outcome::check(
        ok,
        format!("{} automorphisms from {} candidate image triples", aut.group.order(), aut.candidates_tested),
        json!({"order": aut.group.order(), "candidates_tested": aut.candidates_tested, "basic_triple": triple, "faithful_on_units": aut.permutations.len() == aut.group.order()}),
    ))
}

fn c9(ctx: &Context) -> Result<Outcome> {
    let aut = ctx.cayley_automorphisms()?;
    let g = &aut.group;
    let d = g.derived_subgroup();
    let simple = d.is_simple();
    let (status, iso_ok, iso) = iso_or_invariants(&d, ctx.psu33());
    let involution = (0..g.order())
        .find(|&i| g.element_order(i) == 2 && !d.contains(g.element(i)));
    let ok = d.order() == 6048 && simple && iso_ok && involution.is_some();
    Ok(Outcome::check(
        ok,
        format!("derived subgroup order {}, simple: {simple}, PSU(3,3) witness: {iso_ok}, outer involution: {}", d.order(), involution.is_some()),
        json!({"derived_order": d.order(), "derived_simple": simple, "psu33": iso, "outer_involution": involution.map(|i| g.element(i).to_string())}),
    )
    .with_status(status))
}

fn c10(ctx: &Context) -> Result<Outcome> {
    let stab = ctx.hoggar_stabilizer()?;
    let g = &stab.unitary;
    let simple = g.is_simple();
    let (status, iso_ok, iso) = iso_or_invariants(g, ctx.psu33());
    let total = stab.unitary_matrices.len() + stab.antiunitary_coset_size();
    let ok = stab.candidates_scanned == crate::matgroups::SP62_ORDER
        && g.order() == 6048
        && simple
        && iso_ok
        && total == 12_096;
    Ok(Outcome::check(
        ok,
        format!("{} of {} symplectic maps preserve the triple products; simple: {simple}; PSU(3,3) witness: {iso_ok}; with antiunitary coset: {total}", g.order(), stab.candidates_scanned),
        json!({"candidates_scanned": stab.candidates_scanned, "unitary_order": g.order(), "antiunitary_coset_size": stab.antiunitary_coset_size(), "extended_order": total, "simple": simple, "psu33_order_from_gu33": "24192 / 4", "psu33": iso}),
    )
    .with_status(status))
}

fn c11(ctx: &Context) -> Result<Outcome> {
    let qubit = qubit_symmetries(false);
    let hesse = &ctx.hesse_symmetries()?.full_group;
    let hoggar = ctx.hoggar_full()?;
    let rows = [
        ("qubit", &qubit, 4usize),
        ("hesse", hesse, 9),
        ("hoggar", hoggar, 64),
    ];
    let mut w = serde_json::Map::new();
    let mut ok = true;
    for (name, g, n) in rows {
        let t = g.transitivity();
        let pairs = g.pair_orbit_size(0, 1);
        ok &= t == Transitivity::DoublyTransitive && pairs == n * (n - 1);
        w.insert(name.into(), json!({"order": g.order(), "points": n, "pair_orbit": pairs, "transitivity": transitivity_name(t)}));
    }
    let st0 = hoggar.point_stabilizer(0);
    let stab = &ctx.hoggar_stabilizer()?.unitary;
    let same = st0.order() == stab.order() && stab.elements().all(|e| st0.contains(e));
    ok &= hoggar.order() == 387_072 && same;
    w.insert("hoggar_point_stabilizer_matches".into(), json!(same));
    Ok(Outcome::check(
        ok,
        format!("pair orbits 12, 72, 4032 on 4, 9, 64 points (orders {}, {}, {})", qubit.order(), hesse.order(), hoggar.order()),
        Value::Object(w),
    ))
}

fn c12(ctx: &Context) -> Result<Outcome> {
    let fams = [
        ("eisenstein", VectorFamily::from_eisenstein(&eisenstein_unit_scan(1)), RootLabel::A2),
        ("hurwitz", VectorFamily::from_quaternions(&hurwitz_unit_scan()), RootLabel::D4),
        ("cayley", ctx.cayley_units()?.family(), RootLabel::E8),
    ];
    let mut w = serde_json::Map::new();
    let mut ok = true;
    for (name, f, want) in fams {
        let id = identify_root_system(&f);
        ok &= id.label == want && id.reflection_closed;
        if want == RootLabel::E8 {
            ok &= id.even_unimodular == Some(true);
        }
        w.insert(name.into(), serde_json::to_value(&id)?);
    }
    Ok(Outcome::check(ok, "A2 (6 roots), D4 (24 roots), E8 (240 roots, even unimodular)", Value::Object(w)))
}

fn c13(ctx: &Context) -> Result<Outcome> {
    let h = twin_check(ctx.hesse());
    let g = twin_check(ctx.hoggar());
    let q = qubit_model().twin_check();
    let ok = h == TwinStatus::SelfConjugate && g == TwinStatus::Twinned;
    Ok(Outcome::check(
        ok,
        format!("hesse {}, hoggar {}", twin_name(h), twin_name(g)),
        json!({"hesse": twin_name(h), "hoggar": twin_name(g), "qubit_bloch_y_reflection": twin_name(q)}),
    ))
}

fn c14(ctx: &Context) -> Result<Outcome> {
    let stab = ctx.hoggar_stabilizer()?;
    let ext = stab.extended()?;
    let aut = &ctx.cayley_automorphisms()?.group;
    let out = isomorphic(&ext, aut, &budgeted());
    let (_, w) = describe_iso(&ext, aut, &out);
    let verdict = match &out {
        IsoOutcome::Isomorphic(_) => "isomorphic",
        IsoOutcome::NotIsomorphic { .. } => "not isomorphic",
        IsoOutcome::Inconclusive { .. } => "undecided within budget",
    };
    let mut witnesses = json!({"extended_stabilizer_order": ext.order(), "automorphism_group_order": aut.order(), "extended_fingerprint": ext.fingerprint(), "automorphism_fingerprint": aut.fingerprint(), "isomorphism": w});
    witnesses["summary"] = Value::String(format!(
        "extended stabilizer (order {}) vs automorphism group (order {}): {verdict}",
        ext.order(),
        aut.order()
    ));
    Ok(Outcome {
        status: Status::Finding,
        witnesses,
    })
}

pub fn registry() -> &'static [Claim] {
    static REGISTRY: [Claim; 14] = [
        Claim { id: "C1", name: "hesse-is-sic", description: "Hesse fiducial orbit satisfies the SIC overlap identity", paper_anchor: "\"a set of $d^2$ vectors\"; fiducial \"(0, 1, -1)\"", finding: false, runner: c1 },
        Claim { id: "C2", name: "hoggar-is-sic", description: "Hoggar fiducial orbit satisfies the SIC overlap identity", paper_anchor: "\"One viable fiducial\" under the \"tensor product of three copies\" of the qubit group", finding: false, runner: c2 },
        Claim { id: "C3", name: "qubit-stabilizer-Z3", description: "Rotations fixing a qubit SIC vertex form a cyclic group of order 3", paper_anchor: "\"form a group that is isomorphic to $\\mathbb{Z}_3$\"", finding: false, runner: c3 },
        Claim { id: "C4", name: "eisenstein-units-Z6-mod-pm1-Z3", description: "Eisenstein units form Z6; modulo ±1 they match the qubit stabilizer", paper_anchor: "\"group of units in the ring of Eisenstein integers\" \"quotiented by a small simple group\"", finding: false, runner: c4 },
        Claim { id: "C5", name: "hurwitz-units-SL23", description: "The 24 Hurwitz units form a group isomorphic to SL(2,3)", paper_anchor: "\"isomorphic to the matrix group $SL(2,3)$\"", finding: false, runner: c5 },
        Claim { id: "C6", name: "hesse-stabilizer-SL23", description: "Hesse symmetry group has order 216 and point stabilizer SL(2,3)", paper_anchor: "\"stabilizer of any element in the Hesse SIC is given by the unit group of the Hurwitz integers\"", finding: false, runner: c6 },
        Claim { id: "C7", name: "cayley-units-240", description: "The Cayley integers have exactly 240 units forming a Moufang loop", paper_anchor: "\"Exactly 240 elements in the Cayley integers have unit norm\"", finding: false, runner: c7 },
        Claim { id: "C8", name: "aut-order-12096", description: "The Cayley integers have exactly 12096 automorphisms", paper_anchor: "\"The automorphism group of the integral octonions has order 12096\"", finding: false, runner: c8 },
        Claim { id: "C9", name: "aut-structure-PSU33-semidirect-Z2", description: "The automorphism group is PSU(3,3) extended by an outer involution", paper_anchor: "\"$G_2(\\mathbb{Z}) \\cong PSU(3,3) \\rtimes \\mathbb{Z}_2$\"", finding: false, runner: c9 },
        Claim { id: "C10", name: "hoggar-stabilizer-PSU33", description: "The Hoggar point stabilizer is PSU(3,3)", paper_anchor: "\"Zhu~\\cite{zhu2015} identified $PSU(3,3)$ as isomorphic to the stabilizer\"", finding: false, runner: c10 },
        Claim { id: "C11", name: "double-transitivity", description: "The qubit, Hesse and Hoggar symmetry groups are doubly transitive", paper_anchor: "\"symmetry groups act doubly transitively\"", finding: false, runner: c11 },
        Claim { id: "C12", name: "lattice-ADE", description: "The unit sets are the A2, D4 and E8 root systems", paper_anchor: "\"we noticed the appearance of the $A_2$, $D_4$ and $E_8$ lattices\"", finding: false, runner: c12 },
        Claim { id: "C13", name: "twin-conjugation", description: "Hesse SIC is self-conjugate; Hoggar SIC is not", paper_anchor: "\"invariant under complex conjugation, but\" the Hoggar fiducial \"is not\"", finding: false, runner: c13 },
        Claim { id: "C14", name: "extended-hoggar-vs-G2Z", description: "Extended Hoggar stabilizer compared with the Cayley automorphism group", paper_anchor: "\"factors of~$\\mathbb{Z}_2$\" \"accounted for by considering the pair of a fiducial with its counterpart in a twinned SIC\"", finding: true, runner: c14 },
    ];
    &REGISTRY
}

/// Resolve `--claims` entries (ids or names, case-insensitive) in registry order.
pub fn select(ids: &[String]) -> Result<Vec<&'static Claim>> {
    if ids.is_empty() {
        return Ok(registry().iter().collect());
    }
    let mut wanted = Vec::new();
    for raw in ids {
        let key = raw.trim();
        let claim = registry()
            .iter()
            .find(|c| c.id.eq_ignore_ascii_case(key) || c.name.eq_ignore_ascii_case(key))
            .ok_or_else(|| Error::UnknownClaim(key.to_string()))?;
        if !wanted.iter().any(|c: &&Claim| c.id == claim.id) {
            wanted.push(claim);
        }
    }
    let order = |c: &&Claim| registry().iter().position(|r| r.id == c.id);
    wanted.sort_by_key(order);
    Ok(wanted)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Record wall-clock time per claim (breaks byte-identical output).
    pub timings: bool,
}

/// Outcome of [`run`]: the report plus whether an internal limit stopped a
/// claim.
pub struct RunResult {
    pub report: RunReport,
    pub limit_exceeded: bool,
}

impl RunResult {
    pub fn exit_code(&self) -> i32 {
        if self.limit_exceeded {
            3
        } else if self.report.all_verified {
            0
        } else {
            1
        }
    }
}

pub fn run(claims: &[&Claim], ctx: &Context, opts: RunOptions) -> RunResult {
    let mut reports = Vec::new();
    let mut limit_exceeded = false;
    let mut all_verified = true;
    for claim in claims {
        let start = Instant::now();
        let outcome = (claim.runner)(ctx);
        let elapsed = start.elapsed().as_millis() as u64;
        let (status, witnesses) = match outcome {
            Ok(o) => (o.status, o.witnesses),
            Err(e) => {
                limit_exceeded |= matches!(e, Error::SizeLimit { .. } | Error::BudgetExhausted { .. });
                (Status::Failed, json!({"summary": format!("error: {e}"), "error": e.to_string()}))
            }
        };
        if !claim.finding && !status.passes() {
            all_verified = false;
        }
        reports.push(ClaimReport {
            claim: claim.id.to_string(),
            description: format!("{}: {}", claim.name, claim.description),
            paper_anchor: claim.paper_anchor.to_string(),
            status,
            witnesses,
            runtime_ms: if opts.timings { elapsed } else { 0 },
        });
    }
    RunResult {
        report: RunReport {
            artifact_version: ARTIFACT_VERSION.to_string(),
            reports,
            all_verified,
        },
        limit_exceeded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_contract() {
        let r = registry();
        assert_eq!(r.len(), 14);
        let mut ids: Vec<_> = r.iter().map(|c| c.id).collect();
        ids.dedup();
        assert_eq!(ids.len(), 14);
        assert_eq!(r.iter().filter(|c| c.finding).count(), 1);
    }

    #[test]
    fn selection() {
        let s = select(&["c7".into(), "hesse-is-sic".into(), "C7".into()]).unwrap();
        assert_eq!(s.iter().map(|c| c.id).collect::<Vec<_>>(), ["C1", "C7"]);
        assert!(matches!(select(&["bogus".into()]), Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn cheap_claims_verify() {
        let ctx = Context::new();
        let claims = select(&["C1".into(), "C3".into(), "C4".into(), "C5".into(), "C13".into()]).unwrap();
        let r = run(&claims, &ctx, RunOptions::default());
        for rep in &r.report.reports {
            assert_eq!(rep.status, Status::Verified, "{}: {}", rep.claim, rep.summary());
        }
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn snapshot_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(SNAPSHOT_FILE);
        let stab = HoggarStabilizer {
            unitary_matrices: vec![BinaryMatrix6::IDENTITY],
            antiunitary_matrices: vec![],
            unitary: FiniteGroup::from_members(Perm::identity(64), vec![Perm::identity(64)]).unwrap(),
            candidates_scanned: 7,
        };
        write_snapshot(&path, &stab).unwrap();
        let (u, a, n) = load_snapshot(&path).unwrap();
        assert_eq!((u, a, n), (vec![BinaryMatrix6::IDENTITY], vec![], 7));
        fs::write(&path, b"garbage").unwrap();
        assert!(load_snapshot(&path).is_none());
    }
}
