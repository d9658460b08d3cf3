"""Smoke test for the `sporadic` extension module.

Build and install first, e.g. `pip install maturin && maturin develop -m crates/python/Cargo.toml`,
then run `python python/smoke_test.py`.
"""

import json
import sys

import sporadic


def main():
    hesse = sporadic.SicSystem.hesse()
    assert len(hesse) == 9 and hesse.d == 3
    assert hesse.verify()
    assert hesse.norm_sq == "2" and hesse.cross_overlaps() == ["1"]
    assert hesse.twin_check() == "self_conjugate"

    hoggar = sporadic.SicSystem.hoggar()
    assert hoggar.verify()
    assert hoggar.norm_sq == "12" and hoggar.cross_overlaps() == ["16"]
    assert hoggar.twin_check() == "twinned"
    assert hoggar.labels[1] == "(100|000)"

    rot = sporadic.qubit_symmetries(False)
    assert rot.order == 12 and rot.transitivity() == "doubly_transitive"
    assert rot.point_stabilizer(0).order == 3

    full, stab, _ = sporadic.hesse_symmetries()
    assert full.order == 216 and full.pair_orbit_size(0, 1) == 72
    assert stab.order == 24 and stab.is_isomorphic(sporadic.sl23())

    assert len(sporadic.cayley_units()) == 240
    for name, label in [("eisenstein", "A2"), ("hurwitz", "D4"), ("cayley", "E8")]:
        assert json.loads(sporadic.identify_units(name))["label"] == label

    report = json.loads(sporadic.verify_claims(["C1", "C7"]))
    assert report["all_verified"], report
    assert [r["claim"] for r in report["reports"]] == ["C1", "C7"]

    try:
        sporadic.verify_claims(["bogus"])
    except ValueError:
        pass
    else:
        raise AssertionError("unknown claim accepted")

    print("sporadic", sporadic.__version__, "smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
