"""
Integral lattices, (-2)-reflections, torsion B-fields and the cohomological
action of spherical twists.

Sign convention: exceptional classes have self-intersection -2, so the Gram
matrix of an ADE configuration is minus the Cartan matrix.  The reflection

    r_E(w) = w + (E . w) E

then acts on the classes exactly as the Weyl group acts on simple roots:
r_{E_i}(E_j) = E_j - cartan[i][j] E_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Hashable, Iterable, Iterator, Sequence

import sympy

from .dynkin import DynkinDiagram
from .errors import (
    BFieldError,
    ContractError,
    EmbeddingNotFoundError,
    InvalidClassError,
    InvalidSphericalClassError,
)

Matrix = tuple[tuple[int, ...], ...]


def _dot(gram: Matrix, x: Sequence, y: Sequence):
    return sum(x[a] * gram[a][b] * y[b] for a in range(len(gram)) for b in range(len(gram)) if gram[a][b])


@dataclass(frozen=True)
class IntegralLattice:
    gram: Matrix

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(gram)
        if n == 0 or any(len(r) != n for r in gram):
            raise ContractError("Gram matrix must be square and nonempty")
        if any(gram[a][b] != gram[b][a] for a in range(n) for b in range(n)):
            raise ContractError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def dot(self, x: Sequence, y: Sequence):
        if len(x) != self.rank or len(y) != self.rank:
            raise ContractError(f"vectors must have {self.rank} coordinates")
        return _dot(self.gram, x, y)

    def basis(self) -> list[tuple[int, ...]]:
        return [tuple(int(a == b) for b in range(self.rank)) for a in range(self.rank)]

    @classmethod
    def hyperbolic_plane(cls) -> IntegralLattice:
        return cls(((0, 1), (1, 0)))

    @classmethod
    def diagonal(cls, *entries: int) -> IntegralLattice:
        return cls(tuple(tuple(e if a == b else 0 for b in range(len(entries))) for a, e in enumerate(entries)))

    @classmethod
    def root_lattice(cls, d: DynkinDiagram, scale: int = -1) -> IntegralLattice:
        """Root lattice of a simply-laced diagram scaled by ``scale`` (default: -Cartan)."""
        if not d.simply_laced:
            raise ContractError(f"{d.name} is not simply laced")
        return cls(tuple(tuple(scale * x for x in row) for row in d.cartan))

    def direct_sum(self, *others: IntegralLattice) -> IntegralLattice:
        blocks = (self,) + others
        n = sum(b.rank for b in blocks)
        g = [[0] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for a in range(b.rank):
                for c in range(b.rank):
                    g[off + a][off + c] = b.gram[a][c]
            off += b.rank
        return IntegralLattice(tuple(tuple(r) for r in g))

    def to_dict(self) -> dict:
        return {"gram": [list(r) for r in self.gram]}


def reflect(lattice: IntegralLattice, e: Sequence[int], w: Sequence):
    """w + (e . w) e for a (-2)-class e."""
    if lattice.dot(e, e) != -2:
        raise InvalidClassError(f"class {tuple(e)} has self-intersection {lattice.dot(e, e)}, not -2")
    c = lattice.dot(e, w)
    return tuple(w[a] + c * e[a] for a in range(lattice.rank))


def reflection_matrix(lattice: IntegralLattice, e: Sequence[int]) -> Matrix:
    """Matrix of r_e in the lattice basis (column a is r_e(basis_a))."""
    cols = [reflect(lattice, e, b) for b in lattice.basis()]
    return tuple(zip(*cols))


def is_isometry(lattice: IntegralLattice, m: Sequence[Sequence]) -> bool:
    n = lattice.rank
    cols = [tuple(m[r][c] for r in range(n)) for c in range(n)]
    return all(lattice.dot(cols[a], cols[b]) == lattice.gram[a][b] for a in range(n) for b in range(n))


@dataclass(frozen=True)
class ExceptionalConfiguration:
    lattice: IntegralLattice
    diagram: DynkinDiagram
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        classes = tuple(tuple(int(x) for x in c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        d = self.diagram
        if len(classes) != d.size:
            raise ContractError(f"{d.name} needs {d.size} classes, got {len(classes)}")
        for node, e in zip(d.nodes, classes):
            if len(e) != self.lattice.rank:
                raise ContractError(f"class for node {node} has wrong length")
            if self.lattice.dot(e, e) != -2:
                raise InvalidClassError(f"class for node {node} has self-intersection {self.lattice.dot(e, e)}")
        if not d.simply_laced or d.affine:
            raise ContractError("exceptional configurations are ADE")
        for a in range(d.size):
            for b in range(d.size):
                if self.lattice.dot(classes[a], classes[b]) != -d.cartan[a][b]:
                    raise ContractError(f"intersection of classes {d.nodes[a]}, {d.nodes[b]} does not match {d.name}")

    @classmethod
    def standard(cls, d: DynkinDiagram) -> ExceptionalConfiguration:
        """Simple-root basis of the (-1)-scaled root lattice."""
        lat = IntegralLattice.root_lattice(d)
        return cls(lat, d, tuple(lat.basis()))

    def cls_of(self, node: Hashable) -> tuple[int, ...]:
        return self.classes[self.diagram.index(node)]

    def to_dict(self) -> dict:
        return {
            "diagram": self.diagram.to_dict(),
            "lattice": self.lattice.to_dict(),
            "classes": [list(c) for c in self.classes],
        }


def reflect_in_class(cfg: ExceptionalConfiguration, node: Hashable, w: Sequence):
    return reflect(cfg.lattice, cfg.cls_of(node), w)


def weyl_orbit_action(cfg: ExceptionalConfiguration, word: Iterable[Hashable], w: Sequence):
    """Action of r_{w_1} r_{w_2} ... r_{w_k} (the same product as ``weyl.word_to_element``)."""
    out = tuple(w)
    for node in reversed(tuple(word)):
        out = reflect_in_class(cfg, node, out)
    return out


# --------------------------------------------------------------------------
# embedding search

def _shell(n: int, k: int, box: int) -> Iterator[tuple[int, ...]]:
    """Vectors with L1 norm k and entries in [-box, box], in descending lexicographic order."""
    if n == 1:
        if k <= box:
            yield (k,)
            if k:
                yield (-k,)
        return
    top = min(k, box)
    for c in range(top, -top - 1, -1):
        for tail in _shell(n - 1, k - abs(c), box):
            yield (c,) + tail


def box_vectors(n: int, box: int) -> Iterator[tuple[int, ...]]:
    """All vectors in the box ordered by L1 norm, then descending lexicographically."""
    for k in range(n * box + 1):
        yield from _shell(n, k, box)


def _is_primitive(vectors: Sequence[Sequence[int]]) -> bool:
    r = len(vectors)
    n = len(vectors[0])
    m = sympy.Matrix(vectors)
    g = 0
    for cols in itertools.combinations(range(n), r):
        g = gcd(g, int(m.extract(list(range(r)), list(cols)).det()))
        if g == 1:
            return True
    return False


def embed_ade(
    d: DynkinDiagram,
    ambient: IntegralLattice,
    box: int = 10,
    max_steps: int = 10**6,
) -> ExceptionalConfiguration:
    """First primitive ADE configuration of type ``d`` found in the coefficient box.

    Candidates are visited by L1 norm, then in descending lexicographic
    order.  Failure means "not found within the box", not nonexistence.
    """
    if d.affine or not d.simply_laced:
        raise ContractError(f"{d.name} is not of ADE type")
    r = d.size
    target = [[-x for x in row] for row in d.cartan]
    pool: list[tuple[int, ...]] = []
    source = (v for v in box_vectors(ambient.rank, box) if ambient.dot(v, v) == -2)
    steps = 0

    def candidate(idx: int):
        while len(pool) <= idx:
            nxt = next(source, None)
            if nxt is None:
                return None
            pool.append(nxt)
        return pool[idx]

    chosen: list[tuple[int, ...]] = []

    def search(j: int) -> bool:
        nonlocal steps
        if j == r:
            return _is_primitive(chosen)
        idx = 0
        while True:
            v = candidate(idx)
            if v is None:
                return False
            idx += 1
            steps += 1
            if steps > max_steps:
                raise EmbeddingNotFoundError(
                    f"no {d.name} configuration found within box {box} before the step budget ran out"
                )
            if all(ambient.dot(chosen[a], v) == target[a][j] for a in range(j)):
                chosen.append(v)
                if search(j + 1):
                    return True
                chosen.pop()

    if not search(0):
        raise EmbeddingNotFoundError(f"no primitive {d.name} configuration within coefficient box {box}")
    return ExceptionalConfiguration(ambient, d, tuple(chosen))


# --------------------------------------------------------------------------
# B-fields

def _rational(x) -> Fraction:
    if isinstance(x, bool):
        raise BFieldError("booleans are not B-field coordinates")
    if isinstance(x, (int, Fraction)) or (isinstance(x, Rational) and not isinstance(x, float)):
        return Fraction(x)
    if isinstance(x, str):
        if any(ch in x for ch in ".eE"):
            raise BFieldError(f"{x!r} is a decimal; write B-field coordinates as fractions p/q")
        try:
            return Fraction(x.strip())
        except ValueError:
            raise BFieldError(f"cannot read {x!r} as an exact fraction") from None
    raise BFieldError(f"B-field coordinates must be exact rationals (torsion classes); got {x!r}")


@dataclass(frozen=True)
class BField:
    """Torsion class in L (x) Q/Z, coordinates reduced to [0, 1)."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_rational(x) % 1 for x in self.coords))

    @classmethod
    def zero(cls, rank: int) -> BField:
        return cls((0,) * rank)

    @property
    def order(self) -> int:
        from math import lcm

        return lcm(*(c.denominator for c in self.coords)) if self.coords else 1

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coords]


def bfield_reflect(cfg: ExceptionalConfiguration, node: Hashable, b: BField) -> BField:
    if len(b.coords) != cfg.lattice.rank:
        raise BFieldError(f"B-field has {len(b.coords)} coordinates, lattice rank is {cfg.lattice.rank}")
    return BField(reflect_in_class(cfg, node, b.coords))


@dataclass(frozen=True)
class SymmetryCriterion:
    holds: bool
    node: Hashable = None
    value: Fraction | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        out = {"enhanced": self.holds}
        if not self.holds:
            out["witness"] = {"node": self.node, "value": str(self.value)}
        return out


def enhanced_symmetry_bfield(cfg: ExceptionalConfiguration, b: BField) -> SymmetryCriterion:
    """E_i . B = 0 mod 1 for every node; the witness is the first failing node."""
    if len(b.coords) != cfg.lattice.rank:
        raise BFieldError(f"B-field has {len(b.coords)} coordinates, lattice rank is {cfg.lattice.rank}")
    witness = None
    for node, e in zip(cfg.diagram.nodes, cfg.classes):
        value = Fraction(cfg.lattice.dot(e, b.coords)) % 1
        if value != 0:
            witness = (node, value)
            break
    fixed = all(bfield_reflect(cfg, node, b) == b for node in cfg.diagram.nodes)
    if fixed != (witness is None):
        raise AssertionError("pairing criterion and reflection-invariance disagree")
    if witness is None:
        return SymmetryCriterion(True)
    return SymmetryCriterion(False, witness[0], witness[1])


# --------------------------------------------------------------------------
# graded cohomology and spherical twists

@dataclass(frozen=True)
class GradedCohomologyVector:
    even: tuple
    odd: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "even", tuple(self.even))
        object.__setattr__(self, "odd", tuple(self.odd))

    def to_dict(self) -> dict:
        return {"even": [str(x) for x in self.even], "odd": [str(x) for x in self.odd]}


def mukai_lattice(h2: IntegralLattice) -> IntegralLattice:
    """H^0 + H^2 + H^4 with <(r,c,s),(r',c',s')> = c.c' - r s' - s r'."""
    n = h2.rank + 2
    g = [[0] * n for _ in range(n)]
    g[0][n - 1] = g[n - 1][0] = -1
    for a in range(h2.rank):
        for b in range(h2.rank):
            g[a + 1][b + 1] = h2.gram[a][b]
    return IntegralLattice(tuple(tuple(r) for r in g))


def spherical_twist_cohomology(
    v: GradedCohomologyVector,
    alpha: GradedCohomologyVector,
    pairing: IntegralLattice,
) -> GradedCohomologyVector:
    """alpha + <v, alpha> v for the Chern character v of a spherical object.

    ``pairing`` is the form on even cohomology; odd classes pair trivially
    with the even class v, so the odd part of alpha is returned untouched.
    """
    if any(x != 0 for x in v.odd):
        raise InvalidSphericalClassError("the Chern character of a spherical object has no odd part")
    if len(v.even) != pairing.rank or len(alpha.even) != pairing.rank:
        raise ContractError(f"even parts must have {pairing.rank} coordinates")
    c = pairing.dot(v.even, alpha.even)
    even = tuple(a + c * x for a, x in zip(alpha.even, v.even))
    return GradedCohomologyVector(even, alpha.odd)


# --------------------------------------------------------------------------
# induced maps on the tangent model

@dataclass(frozen=True)
class BaseMap:
    compatible: bool
    matrix: tuple | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        out = {"compatible": self.compatible}
        if self.matrix is not None:
            out["matrix"] = [[str(x) for x in row] for row in self.matrix]
        if self.reason:
            out["reason"] = self.reason
        return out


def induced_base_map(
    psi: Sequence[Sequence],
    lattice: IntegralLattice,
    tangent: Sequence[Sequence],
) -> BaseMap:
    """Restriction of an isometry to a distinguished subspace, if it preserves it.

    ``tangent`` is a list of spanning vectors.  The returned matrix expresses
    psi(t_k) in the basis ``tangent``; if some psi(t_k) leaves the span the
    result is an incompatibility report instead.
    """
    n = lattice.rank
    m = sympy.Matrix(psi)
    if m.shape != (n, n):
        raise ContractError(f"map must be {n} x {n}")
    if not is_isometry(lattice, [[m[r, c] for c in range(n)] for r in range(n)]):
        raise ContractError("map does not preserve the bilinear form")
    if m.det() == 0:
        raise ContractError("map is not invertible")
    t = sympy.Matrix([list(v) for v in tangent]).T
    if t.rank() != t.shape[1]:
        raise ContractError("tangent vectors must be linearly independent")
    cols = []
    for k in range(t.shape[1]):
        image = m * t[:, k]
        try:
            sol, params = t.gauss_jordan_solve(image)
        except ValueError:
            return BaseMap(False, None, f"image of tangent vector {k + 1} leaves the subspace")
        cols.append([Fraction(int(x.p), int(x.q)) for x in sol])
    return BaseMap(True, tuple(zip(*cols)))


def k3_local_model(d: DynkinDiagram, polarization: int = 2):
    """<2h> + (ADE)(-1) with the exceptional classes spanning the tangent model.

    Returns the configuration and the tangent basis (the classes E_i): the
    polarization class spans M and the classes E_i span its complement N.
    """
    lat = IntegralLattice.diagonal(polarization).direct_sum(IntegralLattice.root_lattice(d))
    classes = tuple(tuple(int(a == k + 1) for a in range(lat.rank)) for k in range(d.size))
    cfg = ExceptionalConfiguration(lat, d, classes)
    return cfg, list(classes)
