//! Acceptance suite: one line per criterion, then a single assertion.
//!
//! Run with `cargo test -p sporadic-core --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use sporadic_core::algebras::{
    cayley_automorphisms, cayley_ring, cayley_units, eisenstein_unit_scan, eisenstein_units,
    eisenstein_units_mod_sign, hurwitz_unit_scan, hurwitz_units,
};
use sporadic_core::exact::int;
use sporadic_core::groups::{
    isomorphic, verify_isomorphism, FiniteGroup, GroupElement, IsoOptions, IsoOutcome,
    Transitivity,
};
use sporadic_core::lattices::{identify_root_system, is_even_unimodular, RootLabel, VectorFamily};
use sporadic_core::matgroups::{build_gu33, build_psu33, build_sl23, SP62_ORDER};
use sporadic_core::sic::{
    check_sic, hesse_symmetries, hesse_system, hoggar_full_symmetry, hoggar_stabilizer,
    hoggar_system, qubit_stabilizer, qubit_symmetries, triple_products, twin_check, TwinStatus,
};

const AC1_LIMIT: Duration = Duration::from_secs(1);
const AC2_LIMIT: Duration = Duration::from_secs(5);
const AC3_LIMIT: Duration = Duration::from_secs(1);
const AC4_LIMIT: Duration = Duration::from_secs(1);
const AC5_LIMIT: Duration = Duration::from_secs(5);
const AC6_LIMIT: Duration = Duration::from_secs(60);
/// Single-threaded bound for the full Sp(6,2) scan and identification.
const AC7_LIMIT: Duration = Duration::from_secs(15 * 60);
/// Witness search budget before falling back to invariant matching.
const AC7_ISO_BUDGET: Duration = Duration::from_secs(10 * 60);
const AC8_LIMIT: Duration = Duration::from_secs(2 * 60);
const AC9_LIMIT: Duration = Duration::from_secs(5 * 60);
const AC10_LIMIT: Duration = Duration::from_secs(10 * 60);
const AC11_LIMIT: Duration = Duration::from_secs(60);
const AC12_LIMIT: Duration = Duration::from_secs(10);
/// Four full CLI runs.
const AC13_LIMIT: Duration = Duration::from_secs(10 * 60);
/// Pairs checked exhaustively when verifying a witness.
const EXHAUSTIVE_PAIRS: usize = 1_000;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn certified<E: GroupElement, F: GroupElement>(
    g: &FiniteGroup<E>,
    h: &FiniteGroup<F>,
    what: &str,
) -> Result<(), String> {
    match isomorphic(g, h, &IsoOptions::default()) {
        IsoOutcome::Isomorphic(w) => ensure(
            verify_isomorphism(g, h, &w.map, EXHAUSTIVE_PAIRS),
            format!("{what}: witness failed verification"),
        ),
        other => Err(format!("{what}: {other:?}")),
    }
}

fn ac1() -> Check {
    let s = hesse_system();
    let c = check_sic(&s);
    ensure(c.holds, "SIC identity fails")?;
    ensure(c.ordered_pairs == 81, format!("{} pairs", c.ordered_pairs))?;
    ensure(s.norm_sq == int(2) && c.cross_overlaps == [int(1)], "wrong overlap values")?;
    Ok("81 ordered pairs, 4·1 = 2²".into())
}

fn ac2() -> Check {
    let s = hoggar_system();
    let c = check_sic(&s);
    ensure(c.holds, "SIC identity fails")?;
    ensure(s.norm_sq == int(12) && c.cross_overlaps == [int(16)], "wrong overlap values")?;
    Ok(format!("{} unordered cross-overlaps, 9·16 = 144", 64 * 63 / 2))
}

fn ac3() -> Check {
    let rot = qubit_symmetries(false);
    let st = qubit_stabilizer();
    ensure(rot.order() == 12, format!("rotation group order {}", rot.order()))?;
    ensure(rot.transitivity() == Transitivity::DoublyTransitive, "not doubly transitive")?;
    ensure(st.order() == 3, format!("stabilizer order {}", st.order()))?;
    ensure((0..3).any(|i| st.element_order(i) == 3), "stabilizer not cyclic")?;
    Ok("rotations 12, stabilizer Z3".into())
}

fn ac4() -> Check {
    let g = eisenstein_units();
    ensure(g.order() == 6 && eisenstein_unit_scan(2).len() == 6, "unit count")?;
    ensure((0..6).any(|i| g.element_order(i) == 6), "not cyclic")?;
    let q = eisenstein_units_mod_sign().map_err(|e| e.to_string())?;
    ensure(q.order() == 3, format!("quotient order {}", q.order()))?;
    certified(&q, &qubit_stabilizer(), "quotient vs qubit stabilizer")?;
    Ok("6 units, Z6, quotient Z3 with witness".into())
}

fn ac5() -> Check {
    let h = hurwitz_units();
    ensure(h.order() == 24 && hurwitz_unit_scan().len() == 24, "unit count")?;
    certified(&h, &build_sl23(), "Hurwitz vs SL(2,3)")?;
    Ok("24 units ≅ SL(2,3)".into())
}

fn ac6() -> Check {
    let sym = hesse_symmetries(&triple_products(&hesse_system())).map_err(|e| e.to_string())?;
    let g = &sym.full_group;
    ensure(g.order() == 216, format!("order {}", g.order()))?;
    ensure(g.pair_orbit_size(0, 1) == 72, "pair orbit")?;
    ensure(sym.stabilizer0.order() == 24, "stabilizer order")?;
    certified(&sym.stabilizer0, &build_sl23(), "stabilizer vs SL(2,3)")?;
    certified(&sym.stabilizer0, &hurwitz_units(), "stabilizer vs Hurwitz units")?;
    Ok(format!("216, pair orbit 72, stabilizer 24 ≅ SL(2,3) ≅ Hurwitz ({} search nodes)", sym.nodes_visited))
}

fn ac7() -> Check {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(|e| e.to_string())?;
    pool.install(|| {
        let table = triple_products(&hoggar_system());
        let stab = hoggar_stabilizer(&table).map_err(|e| e.to_string())?;
        ensure(stab.candidates_scanned == SP62_ORDER, "incomplete scan")?;
        ensure(stab.unitary.order() == 6048, format!("order {}", stab.unitary.order()))?;
        ensure(stab.unitary.is_simple(), "not simple")?;
        let gu = build_gu33();
        let psu = build_psu33();
        ensure(gu.order() == 24_192 && gu.center().order() == 4 && psu.order() == 6048, "PSU(3,3) construction")?;
        let total = stab.unitary.order() + stab.antiunitary_coset_size();
        ensure(total == 12_096, format!("extended total {total}"))?;
        let opts = IsoOptions {
            deadline: Some(Instant::now() + AC7_ISO_BUDGET),
            ..IsoOptions::default()
        };
        match isomorphic(&stab.unitary, &psu, &opts) {
            IsoOutcome::Isomorphic(w) => {
                ensure(verify_isomorphism(&stab.unitary, &psu, &w.map, 0), "witness failed verification")?;
                Ok("6048 of 1,451,520, simple, certified ≅ PSU(3,3), total 12,096 (1 thread)".into())
            }
            IsoOutcome::Inconclusive { .. } => {
                let mut a = stab.unitary.class_sizes();
                let mut b = psu.class_sizes();
                a.sort_unstable();
                b.sort_unstable();
                ensure(a == b, "class sizes differ")?;
                Ok("identified-by-invariants (witness budget exceeded)".into())
            }
            other => Err(format!("{other:?}")),
        }
    })
}

fn ac8() -> Check {
    let stab = hoggar_stabilizer(&triple_products(&hoggar_system())).map_err(|e| e.to_string())?;
    let full = hoggar_full_symmetry(&stab).map_err(|e| e.to_string())?;
    ensure(full.order() == 387_072, format!("order {}", full.order()))?;
    ensure(full.pair_orbit_size(0, 1) == 4032, "pair orbit")?;
    Ok("387,072, pair orbit 4032".into())
}

fn ac9() -> Check {
    let ring = cayley_ring().map_err(|e| e.to_string())?;
    ensure(ring.basis_closed(), "closure gate")?;
    let units = cayley_units(&ring).map_err(|e| e.to_string())?;
    ensure(units.len() == 240, format!("{} units", units.len()))?;
    let m = units.moufang_exhaustive();
    ensure(m.holds && m.triples == 240 * 240 * 240, "Moufang")?;
    let [u, v, w] = units.associativity_witness().ok_or("no associativity failure")?;
    let (a, b, c) = (&units.units[u], &units.units[v], &units.units[w]);
    ensure(&(a * b) * c != a * &(b * c), "witness is associative")?;
    Ok(format!("gate passed with swap {:?}, 240 units, 13,824,000 Moufang triples", ring.swap))
}

fn ac10() -> Check {
    let ring = cayley_ring().map_err(|e| e.to_string())?;
    let units = cayley_units(&ring).map_err(|e| e.to_string())?;
    let aut = cayley_automorphisms(&units).map_err(|e| e.to_string())?;
    let g = &aut.group;
    ensure(g.order() == 12_096, format!("order {}", g.order()))?;
    let d = g.derived_subgroup();
    ensure(d.order() == 6048 && d.is_simple(), "derived subgroup")?;
    certified(&d, &build_psu33(), "derived vs PSU(3,3)")?;
    let outer = (0..g.order()).any(|i| g.element_order(i) == 2 && !d.contains(g.element(i)));
    ensure(outer, "no involution outside the derived subgroup")?;
    Ok("12,096, derived 6048 ≅ PSU(3,3), outer involution".into())
}

fn ac11() -> Check {
    let ring = cayley_ring().map_err(|e| e.to_string())?;
    let cayley = cayley_units(&ring).map_err(|e| e.to_string())?.family();
    let rows = [
        (VectorFamily::from_eisenstein(&eisenstein_unit_scan(1)), RootLabel::A2),
        (VectorFamily::from_quaternions(&hurwitz_unit_scan()), RootLabel::D4),
        (cayley.clone(), RootLabel::E8),
    ];
    for (f, want) in rows {
        let id = identify_root_system(&f);
        ensure(id.label == want && id.reflection_closed, format!("expected {want:?}, got {:?}", id.label))?;
    }
    ensure(is_even_unimodular(&cayley.scaled(&int(2))), "E8 not even unimodular")?;
    ensure(ring.doubled_gram_det() == int(1), "doubled Gram determinant")?;
    Ok("A2, D4, E8 (det 1)".into())
}

fn ac12() -> Check {
    ensure(twin_check(&hesse_system()) == TwinStatus::SelfConjugate, "Hesse")?;
    ensure(twin_check(&hoggar_system()) == TwinStatus::Twinned, "Hoggar")?;
    Ok("Hesse self_conjugate, Hoggar twinned".into())
}

fn cli_json(threads: usize) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sporadic"))
        .args(["verify", "--format", "json", "--threads", &threads.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), format!("exit status {:?}", out.status.code()))?;
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn schema_valid(text: &str) -> Result<(), String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let obj = v.as_object().ok_or("not an object")?;
    ensure(obj.len() == 3, "unexpected top-level keys")?;
    ensure(obj.get("artifact_version").is_some_and(Value::is_string), "artifact_version")?;
    ensure(obj.get("all_verified") == Some(&Value::Bool(true)), "all_verified")?;
    let reports = obj.get("reports").and_then(Value::as_array).ok_or("reports")?;
    ensure(reports.len() == 14, format!("{} reports", reports.len()))?;
    let statuses = ["verified", "identified-by-invariants", "failed", "inconclusive", "finding"];
    for r in reports {
        let r = r.as_object().ok_or("report not an object")?;
        ensure(r.len() == 6, "unexpected report keys")?;
        for key in ["claim", "description", "paper_anchor", "status"] {
            ensure(r.get(key).is_some_and(Value::is_string), format!("{key} not a string"))?;
        }
        ensure(statuses.contains(&r["status"].as_str().unwrap_or("")), "bad status")?;
        ensure(r.get("witnesses").is_some_and(Value::is_object), "witnesses not an object")?;
        ensure(r.get("runtime_ms").is_some_and(Value::is_u64), "runtime_ms not an integer")?;
    }
    Ok(())
}

fn ac13() -> Check {
    let first = cli_json(2)?;
    schema_valid(&first)?;
    let second = cli_json(2)?;
    ensure(first == second, "consecutive runs differ")?;
    let single = cli_json(1)?;
    ensure(first == single, "1-thread run differs")?;
    let many = cli_json(4)?;
    ensure(first == many, "4-thread run differs")?;
    Ok(format!("exit 0, schema valid, {} bytes identical across 4 runs", first.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, &str, Duration, fn() -> Check); 13] = [
        ("AC1", "Hesse SIC verification", AC1_LIMIT, ac1),
        ("AC2", "Hoggar SIC verification", AC2_LIMIT, ac2),
        ("AC3", "qubit stabilizer", AC3_LIMIT, ac3),
        ("AC4", "Eisenstein units", AC4_LIMIT, ac4),
        ("AC5", "Hurwitz units", AC5_LIMIT, ac5),
        ("AC6", "Hesse stabilizer", AC6_LIMIT, ac6),
        ("AC7", "Hoggar stabilizer", AC7_LIMIT, ac7),
        ("AC8", "Hoggar full symmetry group", AC8_LIMIT, ac8),
        ("AC9", "Cayley integers", AC9_LIMIT, ac9),
        ("AC10", "automorphism group", AC10_LIMIT, ac10),
        ("AC11", "lattice identifications", AC11_LIMIT, ac11),
        ("AC12", "twin check", AC12_LIMIT, ac12),
        ("AC13", "end-to-end CLI", AC13_LIMIT, ac13),
    ];
    println!();
    let mut failures = Vec::new();
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (tag, detail) = match result {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        println!("[{tag}] {id:<4} {name}: {detail} ({elapsed:.2?} / {limit:?})");
        if tag == "FAIL" {
            failures.push(id);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
