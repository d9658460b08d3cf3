use std::collections::HashSet;

use sporadic_core::groups::{closure, GroupElement};
use sporadic_core::matgroups::{
    build_gu33, build_psu33, build_sp62, preserves_symplectic_form, sp62_generators, BinaryMatrix6,
    SP62_ORDER,
};

#[test]
fn sp62_stream_is_complete_and_duplicate_free() {
    let mut seen = HashSet::with_capacity(SP62_ORDER);
    let mut count = 0usize;
    for s in build_sp62() {
        assert!(seen.insert(s), "duplicate {s:?}");
        count += 1;
    }
    assert_eq!(count, SP62_ORDER);
    // classical order formula 2^9 (2^2-1)(2^4-1)(2^6-1)
    assert_eq!(count, (1 << 9) * 3 * 15 * 63);
    for s in seen.iter().step_by(1013) {
        assert!(preserves_symplectic_form(&s.to_matrix()));
    }
}

#[test]
fn sp62_generators_close_to_full_group() {
    let gens = sp62_generators();
    for g in &gens {
        assert!(preserves_symplectic_form(&g.to_matrix()));
    }
    let g = closure(BinaryMatrix6::IDENTITY, &gens).unwrap();
    assert_eq!(g.order(), SP62_ORDER);
    // a generator-wise closure audit over all elements
    assert!(g.elements().all(|a| gens.iter().all(|s| g.contains(&a.compose(s)))));
}

#[test]
fn gu33_center_and_psu33() {
    let gu = build_gu33();
    assert_eq!(gu.order(), 24_192);
    assert_eq!(gu.center().order(), 4);
    let psu = build_psu33();
    assert_eq!(psu.order(), 6048);
    assert_eq!(psu.class_sizes().iter().sum::<usize>(), 6048);
    assert!(psu.is_simple());
}
