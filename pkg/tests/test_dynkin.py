import pytest
from hypothesis import given, strategies as st

from weylbraid.dynkin import (
    INFINITE_LABEL,
    DiagramAutomorphism,
    DynkinDiagram,
    KodairaFiberType,
    affinize,
    automorphism_group,
    build_diagram,
    fold,
    highest_root,
    identify,
    kodaira_to_affine,
    named_automorphisms,
    parse_type,
    symmetrizer,
)
from weylbraid.errors import (
    ClassificationError,
    FoldError,
    MonodromyError,
    UnknownNodeError,
    UnsupportedError,
)

FINITE = ["A1", "A2", "A5", "B2", "B4", "C3", "D4", "D6", "E6", "E7", "E8", "F4", "G2"]
types = st.sampled_from(FINITE)


def test_cartan_conventions():
    # the row of the short root carries the -2 / -3
    assert build_diagram("B", 3).cartan[2][1] == -2
    assert build_diagram("C", 3).cartan[1][2] == -2
    assert parse_type("F4").cartan[2][1] == -2
    assert parse_type("G2").cartan[0][1] == -3


def test_coxeter_labels():
    assert parse_type("A2").coxeter == ((1, 3), (3, 1))
    assert parse_type("B2").coxeter[0][1] == 4
    assert parse_type("G2").coxeter[0][1] == 6
    assert parse_type("~A1").coxeter[0][1] == INFINITE_LABEL


@pytest.mark.parametrize("text", ["D3", "B1", "E9", "X2", "A0", ""])
def test_bad_types(text):
    with pytest.raises(ClassificationError):
        parse_type(text)


def test_parse_affine_spellings():
    assert parse_type("~A2") == parse_type("A2~")
    assert parse_type("~A2").nodes == (0, 1, 2)
    assert parse_type("~E6").name == "~E6"


def test_unknown_node():
    with pytest.raises(UnknownNodeError):
        parse_type("A2").index(7)


@given(types)
def test_serialization_round_trip(t):
    d = parse_type(t)
    assert DynkinDiagram.from_dict(d.to_dict()) == d


@given(types)
def test_identify_recovers_type(t):
    d = parse_type(t)
    found, perm = identify(d.cartan)
    n = d.size
    assert all(found.cartan[a][b] == d.cartan[perm[a]][perm[b]] for a in range(n) for b in range(n))
    # B2 and C2 are the same diagram; C is the preferred name
    expected = ("C", 2) if (d.kind, d.rank) == ("B", 2) else (d.kind, d.rank)
    assert (found.kind, found.rank) == expected


@given(types)
def test_affinize_adds_one_node(t):
    d = parse_type(t)
    a = affinize(d)
    assert a.affine and a.size == d.size + 1 and a.nodes[0] == 0
    # the null vector (1, theta) is in the kernel of the affine Cartan matrix
    delta = (1,) + highest_root(d)
    assert all(sum(row[k] * delta[k] for k in range(a.size)) == 0 for row in a.cartan)


def test_affinize_twice_is_unsupported():
    with pytest.raises(UnsupportedError):
        affinize(parse_type("~A2"))


def test_highest_roots():
    assert highest_root(parse_type("E8")) == (2, 3, 4, 6, 5, 4, 3, 2)
    assert highest_root(parse_type("G2")) == (3, 2)
    assert highest_root(parse_type("C3")) == (2, 2, 1)


@given(types)
def test_symmetrizer_symmetrizes(t):
    a = parse_type(t).cartan
    s = symmetrizer(a)
    n = len(a)
    assert all(s[i] * a[i][j] == s[j] * a[j][i] for i in range(n) for j in range(n))


@pytest.mark.parametrize("t,order", [("A1", 1), ("A5", 2), ("D4", 6), ("D5", 2), ("E6", 2), ("E7", 1), ("~A3", 8)])
def test_automorphism_group_sizes(t, order):
    assert len(automorphism_group(parse_type(t))) == order


@given(types)
def test_automorphisms_preserve_cartan(t):
    d = parse_type(t)
    for g in automorphism_group(d):
        assert g.preserves(d.cartan)
        assert (g * g.inverse()).is_identity()


@pytest.mark.parametrize(
    "src,auto,target",
    [("A3", "z2", "C2"), ("A5", "z2", "C3"), ("A7", "z2", "C4"), ("D4", "z2", "B3"), ("D5", "z2", "B4"),
     ("D6", "z2", "B5"), ("E6", "z2", "F4"), ("D4", "s3", "G2"), ("D4", "z3", "G2")],
)
def test_folding(src, auto, target):
    d = parse_type(src)
    assert fold(d, named_automorphisms(d, auto)).name == target


def test_folded_nodes_are_orbits():
    f = fold(parse_type("E6"), named_automorphisms(parse_type("E6"), "z2"))
    assert f.nodes == ((2,), (4,), (3, 5), (1, 6))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_even_type_a_fold_is_excluded(n):
    d = parse_type(f"A{2 * n}")
    with pytest.raises(FoldError) as info:
        fold(d, named_automorphisms(d, "z2"))
    assert info.value.orbit == (n, n + 1)
    assert "excluded" in str(info.value)


def test_affine_folds():
    d = parse_type("~A3")
    assert fold(d, [DiagramAutomorphism.from_cycles(d, [(1, 3)])]).name == "~C2"
    d = parse_type("~D4")
    assert fold(d, [DiagramAutomorphism.from_cycles(d, [(0, 1, 3)])]).name == "~G2"


def test_fold_rejects_non_automorphism():
    d = parse_type("A3")
    with pytest.raises(Exception):
        fold(d, [DiagramAutomorphism.from_cycles(d, [(1, 2)])])


@pytest.mark.parametrize(
    "text,name",
    [("I3", "~A2"), ("I5", "~A4"), ("I*0", "~D4"), ("I*2", "~D6"), ("II*", "~E8"), ("III*", "~E7"), ("IV*", "~E6")],
)
def test_kodaira_table(text, name):
    assert kodaira_to_affine(text).name == name


def test_kodaira_parse():
    assert KodairaFiberType.parse("I*1").name == "I*1"
    with pytest.raises(ClassificationError):
        KodairaFiberType.parse("II")


def test_kodaira_monodromy_fold():
    from weylbraid.dynkin import kodaira_diagram

    f = KodairaFiberType.parse("I*1")
    base = kodaira_diagram(f)
    swap = DiagramAutomorphism.from_cycles(base, [(4, 5)])
    assert kodaira_to_affine(f, [swap]).name == "~B4"


def test_transitive_monodromy_rejected():
    from weylbraid.dynkin import kodaira_diagram

    f = KodairaFiberType.parse("I4")
    rot = DiagramAutomorphism.from_cycles(kodaira_diagram(f), [(0, 1, 2, 3)])
    with pytest.raises(MonodromyError):
        kodaira_to_affine(f, [rot])
