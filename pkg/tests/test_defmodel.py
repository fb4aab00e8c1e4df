from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weylbraid.defmodel import (
    build_model,
    census,
    cover_degrees,
    generic_point,
    orbit_relation,
    reflection_fixes,
    wall_codimension,
)
from weylbraid.dynkin import parse_type
from weylbraid.errors import ContractError, ModelError, UnsupportedError
from weylbraid.weyl import identity, roots, simple_reflection, word_to_element

TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


def test_generic_census_a2():
    m = build_model(parse_type("A2"), 2)
    c = census(m, generic_point(m))
    assert c.surfaces == ()
    assert c.curve_roots() == [(1, 0), (0, 1), (1, 1)]
    assert c.total_curves == 6
    assert c.to_dict()["curves"][0] == {"root": [1, 0], "count": 2}


def test_central_fibre():
    m = build_model(parse_type("A2"), 2)
    c = census(m, (0, 0))
    assert c.surfaces == (1, 2) and c.curves == ()


def test_genus_one_is_empty():
    m = build_model(parse_type("A2"), 1)
    c = census(m, generic_point(m))
    assert c.curves == () and c.surfaces == ()


def test_genus_zero_is_trivial():
    m = build_model(parse_type("A1"), 0)
    assert m.trivial_action and "W-action trivial" in m.flags
    assert census(m, (5,)).surfaces == (1,)
    with pytest.raises(ModelError):
        build_model(parse_type("B2"), 0)


@pytest.mark.parametrize("t,total", [("A2", 6), ("C2", 8), ("G2", 12), ("B3", 18)])
def test_generic_totals(t, total):
    m = build_model(parse_type(t), 2)
    assert census(m, generic_point(m)).total_curves == total


def test_intermediate_stratum():
    m = build_model(parse_type("A2"), 2)
    c = census(m, (1, 2))  # on the wall of node 1 only
    assert c.surfaces == (1,)
    assert c.curve_roots() == [(0, 1), (1, 1)]


def test_node_genus_and_cover_degrees():
    assert cover_degrees(parse_type("B3")) == (1, 1, 2)
    assert cover_degrees(parse_type("G2")) == (3, 1)
    m = build_model(parse_type("G2"), 2)
    assert m.genus_of(1) == 4 and m.genus_of(2) == 2


def test_errors():
    with pytest.raises(UnsupportedError):
        build_model(parse_type("~A2"), 2)
    with pytest.raises(ModelError):
        build_model(parse_type("A2"), -1)
    with pytest.raises(ContractError):
        census(build_model(parse_type("A2"), 2), (1, 2, 3))


def test_orbit_relation_examples():
    d = parse_type("A2")
    m = build_model(d, 2)
    s = generic_point(m)
    out = orbit_relation(m, identity(d), s)
    assert out.relation == "isomorphic" and out.flopped == () and out.image == s
    out = orbit_relation(m, simple_reflection(d, 1), s)
    assert out.relation == "birational" and out.flopped == (((1, 0), 2),)
    on_wall = (1, 2)
    out = orbit_relation(m, simple_reflection(d, 1), on_wall)
    assert out.relation == "isomorphic" and out.image == tuple(map(Fraction, on_wall))


@pytest.mark.parametrize("g,geometric,model,mismatch", [(0, 0, 0, False), (1, 1, 1, False), (2, 2, 1, True)])
def test_wall_codimension(g, geometric, model, mismatch):
    c = wall_codimension(build_model(parse_type("A2"), g), 1)
    assert (c.geometric, c.model, c.mismatch) == (geometric, model, mismatch)


def model_points(draw_types=TYPES):
    coords = st.lists(st.integers(-3, 3), min_size=4, max_size=4)
    word = st.lists(st.integers(0, 3), max_size=8)
    return st.tuples(st.sampled_from(draw_types), st.integers(0, 3), coords, word)


def _positive(r):
    return r if sum(r) > 0 else tuple(-x for x in r)


@settings(max_examples=80, deadline=None)
@given(model_points())
def test_census_is_equivariant(data):
    t, g, coords, word = data
    d = parse_type(t)
    if g == 0 and not d.simply_laced:
        return
    m = build_model(d, g)
    s = tuple(coords[: d.size])
    w = word_to_element(d, [d.nodes[k % d.size] for k in word])
    before = census(m, s)
    after = census(m, m.act(w, s))
    assert sorted(after.curve_roots()) == sorted(_positive(w.apply(r)) for r in before.curve_roots())
    assert after.total_curves == before.total_curves


@settings(max_examples=80, deadline=None)
@given(model_points())
def test_walls_are_fixed_loci(data):
    t, g, coords, _ = data
    d = parse_type(t)
    if g == 0 and not d.simply_laced:
        return
    m = build_model(d, g)
    s = tuple(coords[: d.size])
    for node in d.nodes:
        assert reflection_fixes(m, node, s) == m.wall(node).contains(s)


def test_surface_model():
    d = parse_type("A2")
    m = build_model(d, 0, surface=True)
    c = census(m, (0, 0))
    assert [r for r, _ in c.curves] == [(1, 0), (0, 1)]
    assert census(m, generic_point(m)).curves == ()
    assert orbit_relation(m, simple_reflection(d, 1), generic_point(m)).relation == "isomorphic"
    assert len(roots(d).positive) == 3
