from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from weylbraid.dynkin import named_automorphisms, parse_type
from weylbraid.errors import BudgetError, DiagramMismatchError, UnsupportedError
from weylbraid.weyl import (
    check_isomorphism,
    enumerate_group,
    equal,
    fixed_hyperplane,
    fixed_subgroup,
    folded_generators,
    identity,
    inversion_set,
    length,
    longest_element,
    orbit,
    reduced_word,
    roots,
    simple_reflection,
    weyl_order,
    word_to_element,
)

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"]


@pytest.mark.parametrize(
    "t,order",
    [("A1", 2), ("A2", 6), ("A3", 24), ("A4", 120), ("A5", 720), ("C2", 8), ("C3", 48), ("G2", 12), ("F4", 1152), ("D4", 192)],
)
def test_orders_by_enumeration(t, order):
    d = parse_type(t)
    els = enumerate_group(d)
    assert len(els) == order == weyl_order(d)
    assert len({w.matrix for w in els}) == order


@pytest.mark.parametrize("t,n", [("A2", 3), ("B3", 9), ("D4", 12), ("E6", 36), ("E8", 120), ("F4", 24), ("G2", 6)])
def test_positive_root_counts(t, n):
    assert roots(parse_type(t)).n_positive == n


def test_affine_roots_unsupported():
    with pytest.raises(UnsupportedError):
        roots(parse_type("~A2"))


def test_braid_relation_in_weyl():
    d = parse_type("A2")
    assert equal(word_to_element(d, [1, 2, 1]), word_to_element(d, [2, 1, 2]))
    assert not equal(word_to_element(d, [1, 2]), word_to_element(d, [2, 1]))


def test_mismatched_diagrams():
    with pytest.raises(DiagramMismatchError):
        equal(identity(parse_type("A2")), identity(parse_type("B2")))


def test_budget(monkeypatch):
    with pytest.raises(BudgetError):
        enumerate_group(parse_type("E8"))
    monkeypatch.setenv("WEYLBRAID_BUDGET", "100")
    with pytest.raises(BudgetError):
        enumerate_group(parse_type("A4"))
    assert len(enumerate_group(parse_type("A4"), cap=200)) == 120


def words(types):
    return st.sampled_from(types).flatmap(
        lambda t: st.tuples(st.just(t), st.lists(st.sampled_from(parse_type(t).nodes), max_size=14))
    )


@given(words(SMALL))
def test_length_matches_reduced_word_and_inversions(tw):
    t, word = tw
    w = word_to_element(parse_type(t), word)
    r = reduced_word(w)
    assert len(r) == length(w) == len(inversion_set(w))
    assert length(w) <= len(word) and (len(word) - length(w)) % 2 == 0
    assert equal(word_to_element(w.diagram, r), w)


@given(words(SMALL))
def test_inverse(tw):
    t, word = tw
    w = word_to_element(parse_type(t), word)
    assert (w * w.inverse()).is_identity()


@given(words(SMALL))
def test_elements_permute_roots(tw):
    t, word = tw
    w = word_to_element(parse_type(t), word)
    rs = roots(w.diagram)
    assert {w.apply(b) for b in rs.all} == set(rs.all)


@pytest.mark.parametrize("t", SMALL)
def test_longest_element(t):
    d = parse_type(t)
    assert length(longest_element(d)) == roots(d).n_positive


@given(words(SMALL), st.lists(st.fractions(max_denominator=5), min_size=4, max_size=4))
def test_walls_are_fixed_loci(tw, coords):
    t, _ = tw
    d = parse_type(t)
    x = tuple(coords[: d.size])
    for node in d.nodes:
        fixed = simple_reflection(d, node).apply(x) == x
        assert fixed == fixed_hyperplane(d, node).contains(x)


def test_orbit():
    d = parse_type("A2")
    assert len(orbit(d, (1, 0))) == 6
    assert orbit(d, (0, 0)) == [(Fraction(0), Fraction(0))]


@pytest.mark.parametrize("t,auto,order", [("A2", "z2", 2), ("A4", "z2", 8), ("A6", "z2", 48), ("D4", "s3", 12), ("D4", "z3", 12)])
def test_fixed_subgroup_orders(t, auto, order):
    d = parse_type(t)
    assert len(fixed_subgroup(d, named_automorphisms(d, auto))) == order


def test_fixed_subgroup_of_a2():
    d = parse_type("A2")
    words = sorted(tuple(w.word) for w in fixed_subgroup(d, named_automorphisms(d, "z2")))
    assert words == [(), (1, 2, 1)]


def test_fixed_subgroup_isomorphism():
    d = parse_type("A4")
    sigma = named_automorphisms(d, "z2")
    gens = folded_generators(d, sigma)
    check = check_isomorphism(parse_type("C2"), gens, fixed_subgroup(d, sigma))
    assert check.passed
