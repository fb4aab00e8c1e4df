"""
Root systems and Weyl groups through the integral reflection representation.

A Weyl element is stored as the integer matrix of its action on simple-root
coordinates: column j is w(alpha_j).  Because this representation is
faithful for finite and affine types, the word problem is a matrix
comparison and needs no rewriting.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Hashable, Iterable, Sequence

from .config import enumeration_cap
from .dynkin import DiagramAutomorphism, DynkinDiagram, Matrix, coxeter_from_cartan
from .errors import BudgetError, ContractError, DiagramMismatchError, UnsupportedError

Vector = tuple


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(a[r], cols[c])) for c in range(n)) for r in range(n))


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(r == c) for c in range(n)) for r in range(n))


def _apply(m: Matrix, v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


@dataclass(frozen=True)
class RootSystem:
    diagram: DynkinDiagram
    simple: tuple[Vector, ...]
    positive: tuple[Vector, ...]
    all: tuple[Vector, ...]  # positive roots first, then their negatives in the same order
    pairing: Matrix
    index: dict = field(compare=False, hash=False, repr=False)

    @property
    def n_positive(self) -> int:
        return len(self.positive)

    def is_root(self, v: Sequence) -> bool:
        return tuple(v) in self.index

    def highest(self) -> Vector:
        return max(self.positive, key=sum)


def _height_key(root: Vector):
    return (sum(root), tuple(-c for c in root))


def roots(d: DynkinDiagram) -> RootSystem:
    """All roots, by saturating the simple roots under simple reflections."""
    if d.affine:
        raise UnsupportedError(f"{d.name}: affine root systems are infinite")
    return _roots(d)


@functools.lru_cache(maxsize=None)
def _roots(d: DynkinDiagram) -> RootSystem:
    n = d.size
    a = d.cartan
    simple = tuple(tuple(int(k == j) for k in range(n)) for j in range(n))
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                c = sum(a[i][k] * beta[k] for k in range(n))
                if c == 0:
                    continue
                gamma = tuple(beta[k] - (c if k == i else 0) for k in range(n))
                if gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    for beta in seen:
        signs = {(x > 0) - (x < 0) for x in beta if x}
        if len(signs) != 1:
            raise AssertionError(f"{beta} is neither positive nor negative")
    positive = tuple(sorted((b for b in seen if sum(b) > 0), key=_height_key))
    everything = positive + tuple(tuple(-x for x in b) for b in positive)
    return RootSystem(d, simple, positive, everything, d.cartan, {r: k for k, r in enumerate(everything)})


def weyl_order(d: DynkinDiagram) -> int:
    """|W| from the classification (no enumeration)."""
    if d.affine:
        raise UnsupportedError(f"{d.name}: affine Weyl groups are infinite")
    n = d.rank
    return {
        "A": lambda: factorial(n + 1),
        "B": lambda: 2**n * factorial(n),
        "C": lambda: 2**n * factorial(n),
        "D": lambda: 2 ** (n - 1) * factorial(n),
        "E6": lambda: 51840,
        "E7": lambda: 2903040,
        "E8": lambda: 696729600,
        "F4": lambda: 1152,
        "G2": lambda: 12,
    }[d.kind]()


@dataclass(frozen=True)
class WeylElement:
    diagram: DynkinDiagram
    matrix: Matrix
    word: tuple = field(default=(), compare=False)

    def __mul__(self, other: WeylElement) -> WeylElement:
        _same_diagram(self, other)
        return WeylElement(self.diagram, _matmul(self.matrix, other.matrix), self.word + other.word)

    def inverse(self) -> WeylElement:
        d = self.diagram
        if self.word:
            w = word_to_element(d, tuple(reversed(self.word)))
            return WeylElement(d, w.matrix, w.word)
        # no witnessing word; fall back to a reduced word
        return word_to_element(d, tuple(reversed(reduced_word(self))))

    def apply(self, v: Sequence) -> tuple:
        return _apply(self.matrix, v)

    def is_identity(self) -> bool:
        return self.matrix == _identity(len(self.matrix))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.matrix)

    def to_dict(self) -> dict:
        return {"word": list(self.word), "matrix": [list(r) for r in self.matrix]}


def _same_diagram(a: WeylElement, b: WeylElement) -> None:
    if a.diagram != b.diagram:
        raise DiagramMismatchError(f"elements live in W({a.diagram.name}) and W({b.diagram.name})")


@functools.lru_cache(maxsize=None)
def _reflection_matrix(d: DynkinDiagram, k: int) -> Matrix:
    n = d.size
    return tuple(
        tuple(int(r == c) - (d.cartan[k][c] if r == k else 0) for c in range(n))
        for r in range(n)
    )


def identity(d: DynkinDiagram) -> WeylElement:
    return WeylElement(d, _identity(d.size), ())


def simple_reflection(d: DynkinDiagram, node: Hashable) -> WeylElement:
    k = d.index(node)
    return WeylElement(d, _reflection_matrix(d, k), (node,))


def word_to_element(d: DynkinDiagram, word: Iterable[Hashable]) -> WeylElement:
    """Product r_{w_1} r_{w_2} ... of simple reflections; empty word is 1."""
    word = tuple(word)
    m = _identity(d.size)
    for node in word:
        m = _matmul(m, _reflection_matrix(d, d.index(node)))
    return WeylElement(d, m, word)


def equal(a: WeylElement, b: WeylElement) -> bool:
    _same_diagram(a, b)
    return a.matrix == b.matrix


def right_descents(w: WeylElement) -> list[int]:
    """Positions i with l(w r_i) < l(w), i.e. w(alpha_i) negative."""
    return [j for j in range(w.diagram.size) if any(x < 0 for x in w.column(j))]


def reduced_word(w: WeylElement) -> tuple:
    """A reduced word for ``w``, peeling off the smallest right descent."""
    d = w.diagram
    m = w.matrix
    word = []
    guard = 0
    while m != _identity(d.size):
        cols = list(zip(*m))
        j = next(j for j in range(d.size) if any(x < 0 for x in cols[j]))
        m = _matmul(m, _reflection_matrix(d, j))
        word.append(d.nodes[j])
        guard += 1
        if guard > 10**6:
            raise BudgetError("reduced word too long")
    return tuple(reversed(word))


def length(w: WeylElement) -> int:
    rs = roots(w.diagram)
    return sum(1 for b in rs.positive if sum(w.apply(b)) < 0)


def inversion_set(w: WeylElement) -> list[Vector]:
    """Positive roots alpha with w^-1(alpha) negative."""
    rs = roots(w.diagram)
    winv = w.inverse()
    return [b for b in rs.positive if sum(winv.apply(b)) < 0]


def longest_element(d: DynkinDiagram, nodes: Iterable[Hashable] | None = None) -> WeylElement:
    """Longest element of W, or of the parabolic subgroup on ``nodes``."""
    positions = range(d.size) if nodes is None else [d.index(x) for x in nodes]
    w = identity(d)
    while True:
        desc = set(right_descents(w))
        missing = [j for j in positions if j not in desc]
        if not missing:
            return w
        w = w * simple_reflection(d, d.nodes[missing[0]])


def permutes_roots(w: WeylElement) -> bool:
    rs = roots(w.diagram)
    images = {w.apply(b) for b in rs.all}
    return images == set(rs.all)


# --------------------------------------------------------------------------
# enumeration

def enumerate_group(d: DynkinDiagram, cap: int | None = None) -> list[WeylElement]:
    """Breadth-first enumeration of W.

    Elements come in order of length; within a length they are sorted by
    their lexicographically smallest reduced word, which is the word
    attached to each element.
    """
    if d.affine:
        raise UnsupportedError(f"{d.name}: affine Weyl groups are infinite")
    cap = enumeration_cap(cap)
    order = weyl_order(d)
    if order > cap:
        raise BudgetError(f"|W({d.name})| = {order} exceeds the enumeration budget {cap}")
    return _enumerate(d, cap)


@functools.lru_cache(maxsize=16)
def _enumerate(d: DynkinDiagram, cap: int) -> list[WeylElement]:
    n = d.size
    a = d.cartan
    ident = tuple(tuple(int(r == c) for r in range(n)) for c in range(n))  # columns
    seen = {ident}
    layer = [(ident, ())]
    out = [(ident, ())]
    while layer:
        nxt = []
        for cols, word in layer:
            for i in range(n):
                ci = cols[i]
                new = tuple(
                    cols[j] if a[i][j] == 0 else tuple(x - a[i][j] * y for x, y in zip(cols[j], ci))
                    for j in range(n)
                )
                if new in seen:
                    continue
                seen.add(new)
                nxt.append((new, word + (d.nodes[i],)))
                if len(seen) > cap:
                    raise BudgetError(f"enumeration of W({d.name}) exceeded budget {cap}")
        out.extend(nxt)
        layer = nxt
    return [WeylElement(d, tuple(zip(*cols)), word) for cols, word in out]


def generate_subgroup(gens: Sequence[WeylElement], cap: int | None = None) -> list[WeylElement]:
    """Closure of ``gens`` under multiplication, breadth-first."""
    if not gens:
        return []
    cap = enumeration_cap(cap)
    d = gens[0].diagram
    start = identity(d)
    seen = {start.matrix: start}
    layer = [start]
    while layer:
        nxt = []
        for x in layer:
            for g in gens:
                y = x * g
                if y.matrix not in seen:
                    seen[y.matrix] = y
                    nxt.append(y)
                    if len(seen) > cap:
                        raise BudgetError(f"subgroup exceeds budget {cap}")
        layer = nxt
    return list(seen.values())


def _as_group(sigma) -> list[DiagramAutomorphism]:
    if isinstance(sigma, DiagramAutomorphism):
        return [sigma]
    return list(sigma)


def conjugate_by_automorphism(w: WeylElement, sigma: DiagramAutomorphism) -> WeylElement:
    """sigma(w) = P w P^-1 where P permutes the simple roots."""
    p = sigma.perm
    n = len(p)
    m = [[0] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            m[p[r]][p[c]] = w.matrix[r][c]
    word = tuple(w.diagram.nodes[p[w.diagram.index(x)]] for x in w.word)
    return WeylElement(w.diagram, tuple(tuple(r) for r in m), word)


def fixed_subgroup(d: DynkinDiagram, sigma, cap: int | None = None) -> list[WeylElement]:
    """Elements of W fixed by a diagram automorphism (or by every member of a list)."""
    group = _as_group(sigma)
    for g in group:
        if not g.preserves(d.cartan):
            raise ContractError(f"{g.images(d)} is not an automorphism of the Cartan matrix of {d.name}")
    out = []
    for w in enumerate_group(d, cap):
        m = w.matrix
        if all(
            m[g.perm[r]][g.perm[c]] == m[r][c]
            for g in group
            for r in range(d.size)
            for c in range(d.size)
        ):
            out.append(w)
    return out


def folded_generators(d: DynkinDiagram, sigma) -> list[WeylElement]:
    """One generator per orbit: the longest element of the orbit's parabolic subgroup."""
    from .dynkin import orbits

    group = _as_group(sigma)
    return [longest_element(d, [d.nodes[k] for k in orb]) for orb in orbits(group, d.size)]


def element_order(w: WeylElement, limit: int = 10**4) -> int:
    x = w
    for k in range(1, limit + 1):
        if x.is_identity():
            return k
        x = x * w
    raise BudgetError(f"order exceeds {limit}")


@dataclass
class IsomorphismCheck:
    source: str
    relations_hold: bool
    injective: bool
    onto_target: bool
    source_order: int
    image_order: int

    @property
    def passed(self) -> bool:
        return self.relations_hold and self.injective and self.onto_target

    def to_dict(self) -> dict:
        return dict(self.__dict__, passed=self.passed)


def check_isomorphism(
    source: DynkinDiagram,
    images: Sequence[WeylElement],
    target: Sequence[WeylElement] | None = None,
    cap: int | None = None,
) -> IsomorphismCheck:
    """Check that r_i -> images[i] defines an isomorphism W(source) -> <images>.

    The Coxeter relations of ``source`` are checked on the images, which
    gives a surjection from W(source); injectivity then follows from
    pushing every enumerated element of W(source) through the map.  If
    ``target`` is given the image must coincide with it as a set.
    """
    m = source.coxeter
    n = source.size
    relations = all(
        element_order(images[i] * images[j]) == (1 if i == j else m[i][j])
        for i in range(n)
        for j in range(n)
        if i == j or m[i][j] != 0
    )
    relations = relations and all(element_order(images[i]) == 2 for i in range(n))
    pos = {x: k for k, x in enumerate(source.nodes)}
    elements = enumerate_group(source, cap)
    image_matrices = set()
    d = images[0].diagram
    for w in elements:
        x = identity(d)
        for letter in w.word:
            x = x * images[pos[letter]]
        image_matrices.add(x.matrix)
    onto = True
    if target is not None:
        onto = image_matrices == {t.matrix for t in target}
    return IsomorphismCheck(
        source=source.name,
        relations_hold=relations,
        injective=len(image_matrices) == len(elements),
        onto_target=onto,
        source_order=len(elements),
        image_order=len(image_matrices),
    )


# --------------------------------------------------------------------------
# walls and orbits

@dataclass(frozen=True)
class Hyperplane:
    """{x : normal . x = 0} in simple-root coordinates; zero normal means the whole space."""

    normal: tuple

    def contains(self, point: Sequence) -> bool:
        return sum(Fraction(a) * Fraction(b) for a, b in zip(self.normal, point)) == 0

    @property
    def codimension(self) -> int:
        return int(any(self.normal))

    def to_dict(self) -> dict:
        return {"normal": [str(x) for x in self.normal], "codimension": self.codimension}


def fixed_hyperplane(d: DynkinDiagram, node: Hashable) -> Hyperplane:
    """Fixed locus of r_i: the kernel of <alpha_i^vee, .>, i.e. row i of the Cartan matrix."""
    if d.affine:
        raise UnsupportedError(f"{d.name}: walls are modelled for finite types only")
    return Hyperplane(tuple(d.cartan[d.index(node)]))


def as_rational(point: Sequence) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in point)
    except (TypeError, ValueError) as exc:
        raise ContractError(f"point {point!r} is not rational") from exc


def orbit(d: DynkinDiagram, point: Sequence, cap: int | None = None) -> list[tuple[Fraction, ...]]:
    """W-orbit of a rational point, deduplicated exactly, in breadth-first order."""
    cap = enumeration_cap(cap)
    order = weyl_order(d)
    if order > cap:
        raise BudgetError(f"|W({d.name})| = {order} exceeds the enumeration budget {cap}")
    x = as_rational(point)
    if len(x) != d.size:
        raise ContractError(f"point has {len(x)} coordinates, expected {d.size}")
    mats = [_reflection_matrix(d, k) for k in range(d.size)]
    seen = {x: None}
    layer = [x]
    while layer:
        nxt = []
        for y in layer:
            for m in mats:
                z = _apply(m, y)
                if z not in seen:
                    seen[z] = None
                    nxt.append(z)
        layer = nxt
    return list(seen)


def invariant_form(d: DynkinDiagram) -> tuple[tuple[Fraction, ...], ...]:
    """W-invariant symmetric form (alpha_k, alpha_l) on simple-root coordinates."""
    from .dynkin import symmetrizer

    lengths = symmetrizer(d.cartan)
    n = d.size
    return tuple(tuple(Fraction(lengths[k] * d.cartan[k][l], 2) for l in range(n)) for k in range(n))


def pair(form, x: Sequence, y: Sequence) -> Fraction:
    n = len(form)
    return sum(Fraction(x[k]) * form[k][l] * Fraction(y[l]) for k in range(n) for l in range(n))


__all__ = [
    "RootSystem",
    "WeylElement",
    "Hyperplane",
    "IsomorphismCheck",
    "roots",
    "weyl_order",
    "identity",
    "simple_reflection",
    "word_to_element",
    "equal",
    "enumerate_group",
    "fixed_subgroup",
    "fixed_hyperplane",
    "orbit",
    "reduced_word",
    "length",
    "inversion_set",
    "longest_element",
    "right_descents",
    "permutes_roots",
    "generate_subgroup",
    "folded_generators",
    "check_isomorphism",
    "element_order",
    "conjugate_by_automorphism",
    "invariant_form",
    "coxeter_from_cartan",
]
