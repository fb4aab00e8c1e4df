from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from weylbraid.dynkin import parse_type
from weylbraid.errors import (
    BFieldError,
    ContractError,
    EmbeddingNotFoundError,
    InvalidClassError,
    InvalidSphericalClassError,
)
from weylbraid.lattice import (
    BField,
    ExceptionalConfiguration,
    GradedCohomologyVector,
    IntegralLattice,
    bfield_reflect,
    embed_ade,
    enhanced_symmetry_bfield,
    induced_base_map,
    is_isometry,
    k3_local_model,
    mukai_lattice,
    reflect,
    reflect_in_class,
    reflection_matrix,
    spherical_twist_cohomology,
    weyl_orbit_action,
)

U = IntegralLattice.hyperbolic_plane()


def test_reflection_in_diag_minus_two():
    lat = IntegralLattice.diagonal(-2)
    cfg = embed_ade(parse_type("A1"), lat)
    assert cfg.classes == ((1,),)
    assert reflect_in_class(cfg, 1, (3,)) == (-3,)


def test_embeddings():
    cfg = embed_ade(parse_type("A1"), U)
    assert cfg.classes == ((1, -1),)
    a2 = parse_type("A2")
    assert embed_ade(a2, IntegralLattice.root_lattice(a2)).classes == ((1, 0), (0, 1))
    with pytest.raises(EmbeddingNotFoundError):
        embed_ade(parse_type("A1"), IntegralLattice.diagonal(2))


def test_invalid_class():
    with pytest.raises(InvalidClassError):
        reflect(U, (1, 1), (1, 0))
    with pytest.raises(InvalidClassError):
        ExceptionalConfiguration(U, parse_type("A1"), ((1, 0),))


def test_configuration_must_match_cartan():
    lat = IntegralLattice.diagonal(-2, -2)
    with pytest.raises(ContractError):
        ExceptionalConfiguration(lat, parse_type("A2"), ((1, 0), (0, 1)))


vectors = st.lists(st.integers(-20, 20), min_size=4, max_size=4)


@given(vectors, vectors)
def test_reflection_is_isometric_involution(v, w):
    d = parse_type("A2")
    lat = U.direct_sum(IntegralLattice.root_lattice(d))
    cfg = embed_ade(d, lat)
    for node in d.nodes:
        rv, rw = reflect_in_class(cfg, node, v), reflect_in_class(cfg, node, w)
        assert lat.dot(rv, rw) == lat.dot(v, w)
        assert reflect_in_class(cfg, node, rv) == tuple(v)


def test_reflection_matrices_are_isometries():
    cfg = ExceptionalConfiguration.standard(parse_type("D4"))
    for e in cfg.classes:
        assert is_isometry(cfg.lattice, reflection_matrix(cfg.lattice, e))


def test_orbit_action_order():
    cfg = ExceptionalConfiguration.standard(parse_type("A2"))
    v = (1, 0)
    # rightmost letter acts first
    assert weyl_orbit_action(cfg, [1, 2], v) == reflect_in_class(cfg, 1, reflect_in_class(cfg, 2, v))


def test_bfield_examples():
    cfg = embed_ade(parse_type("A1"), U)
    b = BField((Fraction(1, 2), 0))
    assert bfield_reflect(cfg, 1, b) == BField((0, Fraction(1, 2)))
    crit = enhanced_symmetry_bfield(cfg, b)
    assert not crit.holds and crit.node == 1 and crit.value == Fraction(1, 2)
    assert enhanced_symmetry_bfield(cfg, BField.zero(2)).holds
    assert enhanced_symmetry_bfield(cfg, BField(("1/2", "1/2"))).holds


@pytest.mark.parametrize("bad", [0.5, True, "0.5", "1e-1", "x"])
def test_bfield_rejects_inexact(bad):
    with pytest.raises(BFieldError):
        BField((bad, 0))


def test_bfield_reduced_mod_one():
    assert BField(("3/2", -1)).coords == (Fraction(1, 2), 0)
    assert BField(("1/6", "1/4")).order == 12


def test_twist():
    muk = mukai_lattice(U)
    v = GradedCohomologyVector((1, 0, 0, 1))
    assert muk.dot(v.even, v.even) == -2
    alpha = GradedCohomologyVector((1, 2, 3, 4), (5, 6))
    out = spherical_twist_cohomology(v, alpha, muk)
    assert out.odd == (5, 6)
    assert spherical_twist_cohomology(v, out, muk).even == alpha.even
    with pytest.raises(InvalidSphericalClassError):
        spherical_twist_cohomology(GradedCohomologyVector((1, 0, 0, 1), (1,)), alpha, muk)


def test_induced_base_map():
    cfg, tangent = k3_local_model(parse_type("A1"))
    r1 = reflection_matrix(cfg.lattice, cfg.classes[0])
    out = induced_base_map(r1, cfg.lattice, tangent)
    assert out.compatible and out.matrix == ((-1,),)
    lat = IntegralLattice.diagonal(-2, -2)
    swap = [[0, 1], [1, 0]]
    out = induced_base_map(swap, lat, [(1, 0)])
    assert not out.compatible and out.reason
    with pytest.raises(ContractError):
        induced_base_map([[2, 0], [0, 1]], lat, [(1, 0)])
