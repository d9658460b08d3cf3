use std::time::Instant;

use num_traits::One;
use sporadic_core::algebras::*;
use sporadic_core::exact::{Octonion, Rational};
use sporadic_core::groups::{isomorphic, verify_isomorphism, IsoOptions};
use sporadic_core::matgroups::{build_psu33, build_sl23};

#[test]
fn hurwitz_units_are_sl23() {
    let h = hurwitz_units();
    let sl = build_sl23();
    let out = isomorphic(&h, &sl, &IsoOptions::default());
    let w = out.witness().expect("isomorphic");
    assert!(verify_isomorphism(&h, &sl, &w.map, 1000));
}

#[test]
fn cayley_units_form_moufang_loop() {
    let ring = cayley_ring().unwrap();
    let units = cayley_units(&ring).unwrap();
    assert_eq!(units.len(), 240);
    assert!(units.inverses_closed());
    for u in &units.units {
        assert_eq!(u.norm(), Rational::one());
    }
    let start = Instant::now();
    let m = units.moufang_exhaustive();
    println!("moufang exhaustive: {:?}", start.elapsed());
    assert!(m.holds);
    assert_eq!(m.triples, 240 * 240 * 240);
    for s in units.moufang_sampled(MOUFANG_SAMPLES) {
        assert!(s.holds, "{}", s.identity);
    }
    let [u, v, w] = units.associativity_witness().expect("not associative");
    let (a, b, c) = (&units.units[u], &units.units[v], &units.units[w]);
    assert_ne!(&(a * b) * c, a * &(b * c));
    assert_eq!(units.imaginary().len(), 126);
}

#[test]
fn cayley_automorphism_group() {
    let ring = cayley_ring().unwrap();
    let units = cayley_units(&ring).unwrap();
    let start = Instant::now();
    let aut = cayley_automorphisms(&units).unwrap();
    println!(
        "automorphisms: {} of {} candidates in {:?}",
        aut.permutations.len(),
        aut.candidates_tested,
        start.elapsed()
    );
    assert_eq!(aut.permutations.len(), 12_096);
    assert_eq!(aut.group.order(), 12_096);
    assert!(aut.group.audit_closure(0));

    // matrix form: fixes 1, preserves the product on basis pairs and the lattice
    for k in (0..aut.image_triples.len()).step_by(997) {
        let m = aut.matrix(&units, k);
        assert_eq!(apply_matrix(&m, &Octonion::one()), Octonion::one());
        for a in 0..8 {
            let ea = Octonion::basis(a);
            for b in 0..8 {
                let eb = Octonion::basis(b);
                assert_eq!(
                    apply_matrix(&m, &(&ea * &eb)),
                    &apply_matrix(&m, &ea) * &apply_matrix(&m, &eb)
                );
            }
        }
        for b in &ring.basis {
            assert!(ring.contains(&apply_matrix(&m, b)));
        }
    }

    let derived = aut.group.derived_subgroup();
    assert_eq!(derived.order(), 6048);
    assert!(derived.is_simple());
    let psu = build_psu33();
    let out = isomorphic(&derived, &psu, &IsoOptions::default());
    let w = out.witness().expect("derived subgroup should be PSU(3,3)");
    assert!(verify_isomorphism(&derived, &psu, &w.map, 0));
    let involution = (0..aut.group.order())
        .find(|&g| aut.group.element_order(g) == 2 && !derived.contains(aut.group.element(g)));
    assert!(involution.is_some());
}

#[test]
fn unit_table_matches_exact_product() {
    let ring = cayley_ring().unwrap();
    let units = cayley_units(&ring).unwrap();
    for (a, x) in units.units.iter().enumerate() {
        for (b, y) in units.units.iter().enumerate() {
            assert_eq!(&units.units[units.mul(a, b)], &(x * y), "{a} * {b}");
        }
    }
}
