"""Acceptance criteria, one test each, with the stated time bounds.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import time

import pytest

from weylbraid.artin import BraidWord, michel_generators, project_to_weyl, words_equal
from weylbraid.dynkin import named_automorphisms, parse_type
from weylbraid.verify import (
    bfield_report,
    census_suite,
    folding_suite,
    garside_oracle_report,
    kodaira_suite,
    lattice_reflection_report,
    relations_suite,
    rewrite_invariance_report,
    standard_configurations,
    twist_parity_report,
)
from weylbraid.weyl import (
    check_isomorphism,
    enumerate_group,
    fixed_subgroup,
    generate_subgroup,
    weyl_order,
)


class Clock:
    def __init__(self, seconds):
        self.seconds = seconds
        self.start = time.perf_counter()

    def check(self):
        elapsed = time.perf_counter() - self.start
        assert elapsed < self.seconds, f"took {elapsed:.2f}s, bound {self.seconds}s"


def assert_report(rep):
    assert rep.passed, [c.to_dict() for c in rep.failures()]


@pytest.mark.criterion(1, "folding table", 1)
def test_folding_table():
    clock = Clock(1)
    rep = folding_suite()
    assert_report(rep)
    got = {c.name: c.detail["result"] for c in rep.checks}
    assert got["A3/z2"] == "C2" and got["A5/z2"] == "C3" and got["A7/z2"] == "C4"
    assert got["D4/z2"] == "B3" and got["D5/z2"] == "B4" and got["D6/z2"] == "B5"
    assert got["E6/z2"] == "F4" and got["D4/s3"] == "G2"
    assert got["A2/z2"] == got["A4/z2"] == got["A6/z2"] == "fold error"
    clock.check()


WEYL_ORDERS = {"A1": 2, "A2": 6, "A3": 24, "A4": 120, "A5": 720, "C2": 8, "C3": 48, "G2": 12, "F4": 1152, "D4": 192}


@pytest.mark.criterion(2, "Weyl orders by enumeration", 10)
def test_weyl_orders():
    clock = Clock(10)
    got = {t: len(enumerate_group(parse_type(t))) for t in WEYL_ORDERS}
    assert got == WEYL_ORDERS
    clock.check()


@pytest.mark.criterion(3, "braid-relation sweep (finite rank <= 4, ~A2, ~A3)", 30)
def test_braid_relation_sweep():
    clock = Clock(30)
    rep = relations_suite()
    assert_report(rep)
    assert {"~A2", "~A3", "F4", "G2", "D4"} <= {c.name for c in rep.checks}
    clock.check()


@pytest.mark.criterion(4, "Garside oracle equivalence and rewrite invariance", 120)
def test_garside_oracle():
    clock = Clock(120)
    for t in ("A2", "C2"):
        rep = garside_oracle_report(t, max_length=6)
        assert_report(rep)
        assert rep.checks[0].detail["disagreements"] == 0
    for seed, t in enumerate(("A3", "G2")):
        rep = rewrite_invariance_report(t, checks=10**4, seed=seed)
        assert_report(rep)
        assert rep.checks[0].detail["checks"] == 10**4
    clock.check()


@pytest.mark.criterion(5, "folded braid generators in B(A4) and fixed subgroups", 60)
def test_folded_generators():
    clock = Clock(60)
    a4 = parse_type("A4")
    g1, g2 = michel_generators(2)
    assert g1 == BraidWord.positive([1, 4]) and g2 == BraidWord.positive([2, 3, 2])
    lhs = g1 + g2 + g1 + g2
    rhs = g2 + g1 + g2 + g1
    assert words_equal(a4, lhs, rhs)
    assert not words_equal(a4, g1 + g2, g2 + g1)
    images = [project_to_weyl(a4, g) for g in (g1, g2)]
    assert len(generate_subgroup(images)) == 8
    fixed = fixed_subgroup(a4, named_automorphisms(a4, "z2"))
    assert len(fixed) == 8
    iso = check_isomorphism(parse_type("C2"), images, fixed)
    assert iso.passed, iso.to_dict()
    d4 = parse_type("D4")
    assert len(fixed_subgroup(d4, named_automorphisms(d4, "s3"))) == 12 == weyl_order(parse_type("G2"))
    clock.check()


@pytest.mark.criterion(6, "lattice reflection suite", 5)
def test_lattice_reflections():
    clock = Clock(5)
    cfgs = standard_configurations()
    for name in ("A1 in U", "A2", "A3", "D4"):
        assert_report(lattice_reflection_report(cfgs[name]))
    clock.check()


@pytest.mark.criterion(7, "B-field criterion", 5)
def test_bfield_criterion():
    clock = Clock(5)
    cfgs = standard_configurations()
    for seed, name in enumerate(("A1 in U", "A2", "A3", "D4")):
        rep = bfield_report(cfgs[name], samples=1000, seed=seed)
        assert_report(rep)
        assert rep.checks[0].detail["symmetric"] > 0  # the positive side is exercised
    clock.check()


@pytest.mark.criterion(8, "spherical twist parity", 5)
def test_twist_parity():
    clock = Clock(5)
    rep = twist_parity_report(samples=1000)
    assert_report(rep)
    clock.check()


@pytest.mark.criterion(9, "exceptional census", 1)
def test_census():
    clock = Clock(1)
    assert_report(census_suite())
    clock.check()


@pytest.mark.criterion(10, "Kodaira table and monodromy rejection", 1)
def test_kodaira():
    clock = Clock(1)
    assert_report(kodaira_suite())
    clock.check()

