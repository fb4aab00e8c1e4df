"""
Dynkin diagrams: construction, automorphisms, folding, affine extension and
the Kodaira fibre table.

Conventions
-----------
Nodes are numbered in Bourbaki order, 1..n.  Affine diagrams get an extra
node labelled 0, stored first.  The Cartan matrix is

    cartan[i][j] = <alpha_i^vee, alpha_j>,

so the simple reflection r_i sends alpha_j to alpha_j - cartan[i][j] alpha_i,
and the row of a short simple root carries the -2 (or -3) entry of a
multiple bond.  With this convention:

    B_n   alpha_n short            cartan[n][n-1] = -2
    C_n   alpha_1..alpha_{n-1} short, cartan[n-1][n] = -2
    F_4   alpha_3, alpha_4 short   cartan[3][2] = -2
    G_2   alpha_1 short            cartan[1][2] = -3

Coxeter labels follow from the products cartan[i][j]*cartan[j][i] in
{0, 1, 2, 3} -> {2, 3, 4, 6}.  The affine A_1 diagram has product 4; its
Coxeter label is the marker ``INFINITE_LABEL``.

Diagrams whose Cartan matrix is the transpose of a standard one (these arise
from some affine foldings) carry ``dual=True``.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Sequence

from .errors import ClassificationError, FoldError, MonodromyError, UnknownNodeError, UnsupportedError

INFINITE_LABEL = 0
_PRODUCT_TO_LABEL = {0: 2, 1: 3, 2: 4, 3: 6, 4: INFINITE_LABEL}

Matrix = tuple[tuple[int, ...], ...]

EXCEPTIONAL = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}
CLASSICAL = ("A", "B", "C", "D")
# C before B: rank-2 folds are reported as C_2, matching A_3 / Z2 -> C_2.
_KIND_ORDER = ("A", "C", "B", "D", "E6", "E7", "E8", "F4", "G2")


def _label(product: int) -> int:
    try:
        return _PRODUCT_TO_LABEL[product]
    except KeyError:
        raise ClassificationError(f"bond with Cartan product {product} is not of finite or affine type") from None


def coxeter_from_cartan(cartan: Sequence[Sequence[int]]) -> Matrix:
    n = len(cartan)
    return tuple(
        tuple(1 if i == j else _label(cartan[i][j] * cartan[j][i]) for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class DynkinDiagram:
    kind: str
    rank: int
    affine: bool
    nodes: tuple
    cartan: Matrix
    dual: bool = False
    coxeter: Matrix = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        cartan = tuple(tuple(int(x) for x in row) for row in self.cartan)
        object.__setattr__(self, "cartan", cartan)
        object.__setattr__(self, "nodes", tuple(self.nodes))
        n = len(cartan)
        if len(self.nodes) != n or any(len(row) != n for row in cartan):
            raise ClassificationError("Cartan matrix must be square with one row per node")
        if len(set(self.nodes)) != n:
            raise ClassificationError("node labels must be distinct")
        if n != self.rank + (1 if self.affine else 0):
            raise ClassificationError(f"{n} nodes do not match rank {self.rank} (affine={self.affine})")
        for i in range(n):
            if cartan[i][i] != 2:
                raise ClassificationError("Cartan diagonal must be 2")
            for j in range(n):
                if i == j:
                    continue
                a, b = cartan[i][j], cartan[j][i]
                if a > 0 or (a == 0) != (b == 0):
                    raise ClassificationError(f"invalid Cartan entries at ({i + 1}, {j + 1})")
                if a * b == 4 and not self.affine:
                    raise ClassificationError("product 4 bonds only occur in affine A_1")
        object.__setattr__(self, "coxeter", coxeter_from_cartan(cartan))

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def name(self) -> str:
        base = self.kind if self.kind in EXCEPTIONAL else f"{self.kind}{self.rank}"
        if self.affine:
            base = "~" + base
        if self.dual:
            base += "^t"
        return base

    @property
    def simply_laced(self) -> bool:
        return all(self.cartan[i][j] in (0, -1) for i in range(self.size) for j in range(self.size) if i != j)

    def index(self, node: Hashable) -> int:
        """Position of a node label in ``nodes`` (0-based)."""
        try:
            return self.nodes.index(node)
        except ValueError:
            raise UnknownNodeError(f"{node!r} is not a node of {self.name}") from None

    def neighbours(self, k: int) -> list[int]:
        return [j for j in range(self.size) if j != k and self.cartan[k][j] != 0]

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "rank": self.rank,
            "affine": self.affine,
            "coxeter": [list(r) for r in self.coxeter],
            "cartan": [list(r) for r in self.cartan],
        }
        if self.dual:
            out["dual"] = True
        return out

    @classmethod
    def from_dict(cls, data: dict) -> DynkinDiagram:
        cartan = data["cartan"]
        affine = bool(data.get("affine", False))
        nodes = data.get("nodes")
        if nodes is None:
            nodes = tuple(range(len(cartan))) if affine else tuple(range(1, len(cartan) + 1))
        d = cls(data["kind"], int(data["rank"]), affine, tuple(nodes), cartan, bool(data.get("dual", False)))
        if data.get("coxeter") is not None and [list(r) for r in d.coxeter] != [list(r) for r in data["coxeter"]]:
            raise ClassificationError("Coxeter matrix inconsistent with Cartan matrix")
        return d


# --------------------------------------------------------------------------
# construction

def _normalize_kind(kind: str, rank: int) -> str:
    kind = kind.strip().upper()
    if kind in ("E", "F", "G"):
        kind = f"{kind}{rank}"
    return kind


def _standard_cartan(kind: str, n: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, ij=-1, ji=-1):
        a[i][j] = ij
        a[j][i] = ji

    if kind in ("A", "B", "C", "F4", "G2"):
        for i in range(n - 1):
            bond(i, i + 1)
    if kind == "B":
        bond(n - 2, n - 1, -1, -2)
    elif kind == "C":
        bond(n - 2, n - 1, -2, -1)
    elif kind == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif kind in ("E6", "E7", "E8"):
        bond(0, 2)
        bond(1, 3)
        for i in range(2, n - 1):
            bond(i, i + 1)
    elif kind == "F4":
        bond(1, 2, -1, -2)
    elif kind == "G2":
        bond(0, 1, -3, -1)
    return a


def build_diagram(kind: str, rank: int) -> DynkinDiagram:
    """Standard finite-type diagram in Bourbaki numbering.

    >>> build_diagram("G2", 2).coxeter
    ((1, 6), (6, 1))
    """
    kind = _normalize_kind(kind, rank)
    valid = (
        (kind == "A" and rank >= 1)
        or (kind in ("B", "C") and rank >= 2)
        or (kind == "D" and rank >= 4)
        or EXCEPTIONAL.get(kind) == rank
    )
    if not valid:
        raise ClassificationError(f"({kind}, {rank}) is not in the finite classification list")
    return _cached_diagram(kind, rank)


@functools.lru_cache(maxsize=None)
def _cached_diagram(kind: str, rank: int) -> DynkinDiagram:
    return DynkinDiagram(kind, rank, False, tuple(range(1, rank + 1)), _standard_cartan(kind, rank))


_TYPE_RE = re.compile(r"^\s*(~)?\s*([A-Ga-g])_?(\d+)\s*(~)?\s*$")


def parse_type(text: str) -> DynkinDiagram:
    """Parse labels such as ``"E6"``, ``"A2"``, ``"~A2"`` or ``"A2~"``."""
    m = _TYPE_RE.match(text)
    if not m:
        raise ClassificationError(f"cannot parse diagram type {text!r}")
    d = build_diagram(m.group(2).upper(), int(m.group(3)))
    if m.group(1) or m.group(4):
        d = affinize(d)
    return d


# --------------------------------------------------------------------------
# symmetrizer and highest root

def symmetrizer(cartan: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Integers d_i > 0 (squared root lengths) with d_i a_ij = d_j a_ji."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i][j] != 0:
                    val = d[i] * cartan[i][j] / cartan[j][i]
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise ClassificationError("Cartan matrix is not symmetrizable")
    scale = lcm(*(x.denominator for x in d))
    ints = [int(x * scale) for x in d]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


def highest_root(d: DynkinDiagram) -> tuple[int, ...]:
    """Highest root in simple-root coordinates (finite type)."""
    if d.affine:
        raise UnsupportedError("affine root systems have no highest root")
    lengths = symmetrizer(d.cartan)
    n = d.size
    start = max(range(n), key=lambda k: (lengths[k], -k))
    theta = [0] * n
    theta[start] = 1
    while True:
        for i in range(n):
            pairing = sum(d.cartan[i][k] * theta[k] for k in range(n))
            if pairing < 0:
                theta[i] -= pairing
                break
        else:
            return tuple(theta)


# --------------------------------------------------------------------------
# automorphisms

@dataclass(frozen=True)
class DiagramAutomorphism:
    """Node permutation; ``perm[k]`` is the position of the image of node k."""

    perm: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> DiagramAutomorphism:
        return cls(tuple(range(n)))

    @classmethod
    def from_images(cls, d: DynkinDiagram, images: Sequence[Hashable]) -> DiagramAutomorphism:
        """Build from the list of image labels, in node order."""
        if len(images) != d.size:
            raise MonodromyError(f"expected {d.size} images, got {len(images)}")
        perm = tuple(d.index(x) for x in images)
        if sorted(perm) != list(range(d.size)):
            raise MonodromyError("images do not form a permutation")
        sigma = cls(perm)
        if not sigma.preserves(d.coxeter):
            raise MonodromyError(f"{list(images)} does not preserve the Coxeter matrix of {d.name}")
        return sigma

    @classmethod
    def from_cycles(cls, d: DynkinDiagram, cycles: Iterable[Sequence[Hashable]]) -> DiagramAutomorphism:
        images = list(d.nodes)
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[d.index(a)] = b
        return cls.from_images(d, images)

    def __call__(self, k: int) -> int:
        return self.perm[k]

    def __mul__(self, other: DiagramAutomorphism) -> DiagramAutomorphism:
        return DiagramAutomorphism(tuple(self.perm[other.perm[k]] for k in range(len(self.perm))))

    def inverse(self) -> DiagramAutomorphism:
        inv = [0] * len(self.perm)
        for k, v in enumerate(self.perm):
            inv[v] = k
        return DiagramAutomorphism(tuple(inv))

    def is_identity(self) -> bool:
        return all(k == v for k, v in enumerate(self.perm))

    def preserves(self, matrix: Sequence[Sequence[int]]) -> bool:
        p = self.perm
        n = len(p)
        return all(matrix[p[i]][p[j]] == matrix[i][j] for i in range(n) for j in range(n))

    def images(self, d: DynkinDiagram) -> list:
        return [d.nodes[k] for k in self.perm]


def automorphism_group(d: DynkinDiagram) -> list[DiagramAutomorphism]:
    """All node permutations preserving the Cartan matrix, by backtracking.

    Arrows count: the swap of B2 preserves the Coxeter graph but not the
    Cartan matrix, so it is not an automorphism here.

    Candidates for each node are restricted to nodes of equal degree; the
    identity comes first and the rest follow in lexicographic order.
    """
    n = d.size
    m = d.cartan
    degree = [len(d.neighbours(k)) for k in range(n)]
    found: list[tuple[int, ...]] = []
    perm = [-1] * n
    used = [False] * n

    def extend(k: int) -> None:
        if k == n:
            found.append(tuple(perm))
            return
        for c in range(n):
            if used[c] or degree[c] != degree[k]:
                continue
            if all(m[c][perm[j]] == m[k][j] and m[perm[j]][c] == m[j][k] for j in range(k)):
                perm[k] = c
                used[c] = True
                extend(k + 1)
                used[c] = False
        perm[k] = -1

    extend(0)
    return [DiagramAutomorphism(p) for p in sorted(found)]


def generate_group(gens: Iterable[DiagramAutomorphism], n: int) -> list[DiagramAutomorphism]:
    """Closure of a set of automorphisms under composition."""
    ident = DiagramAutomorphism.identity(n)
    gens = [g for g in gens]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=lambda s: (not s.is_identity(), s.perm))


def orbits(gens: Iterable[DiagramAutomorphism], n: int) -> list[tuple[int, ...]]:
    """Orbits of positions, each sorted, ordered by smallest member."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for k in range(n):
            a, b = find(k), find(g(k))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for k in range(n):
        groups.setdefault(find(k), []).append(k)
    return sorted(tuple(v) for v in groups.values())


NAMED_AUTOMORPHISMS = ("z2", "z3", "s3")


def named_automorphisms(d: DynkinDiagram, name: str) -> list[DiagramAutomorphism]:
    """Generators for the conventional symmetry groups of A_n, D_n, E_6."""
    name = name.lower()
    n = d.size
    if d.affine:
        raise UnsupportedError("named automorphisms are defined for finite diagrams; pass an explicit permutation")
    if name == "z2":
        if d.kind in ("A", "E6") and n > 1:
            if d.kind == "A":
                return [DiagramAutomorphism(tuple(reversed(range(n))))]
            return [DiagramAutomorphism((5, 1, 4, 3, 2, 0))]
        if d.kind == "D":
            p = list(range(n))
            p[n - 2], p[n - 1] = n - 1, n - 2
            return [DiagramAutomorphism(tuple(p))]
    if d.kind == "D" and n == 4:
        if name == "z3":
            return [DiagramAutomorphism((2, 1, 3, 0))]
        if name == "s3":
            return [DiagramAutomorphism((2, 1, 3, 0)), DiagramAutomorphism((0, 1, 3, 2))]
    raise ClassificationError(f"{d.name} has no automorphism group named {name!r}")


# --------------------------------------------------------------------------
# identification, folding, affine extension

def _candidates(size: int) -> list[DynkinDiagram]:
    out = []
    for kind in _KIND_ORDER:
        for rank, affine in ((size, False), (size - 1, True)):
            if rank < 1 or EXCEPTIONAL.get(kind, rank) != rank:
                continue
            try:
                d = build_diagram(kind, rank)
            except ClassificationError:
                continue
            out.append(affinize(d) if affine else d)
    return out


def _match(template: Matrix, target: Matrix) -> tuple[int, ...] | None:
    """Permutation p with template[a][b] == target[p[a]][p[b]], or None."""
    n = len(template)
    sig = lambda m, k: (sorted(m[k]), sorted(m[j][k] for j in range(n)))
    tsig = [sig(template, k) for k in range(n)]
    gsig = [sig(target, k) for k in range(n)]
    if sorted(tsig) != sorted(gsig):
        return None
    perm = [-1] * n
    used = [False] * n

    def extend(a: int) -> bool:
        if a == n:
            return True
        for c in range(n):
            if used[c] or tsig[a] != gsig[c]:
                continue
            if all(template[a][b] == target[c][perm[b]] and template[b][a] == target[perm[b]][c] for b in range(a)):
                perm[a] = c
                used[c] = True
                if extend(a + 1):
                    return True
                used[c] = False
        return False

    return tuple(perm) if extend(0) else None


def identify(cartan: Sequence[Sequence[int]]) -> tuple[DynkinDiagram, tuple[int, ...]]:
    """Find the standard diagram isomorphic to ``cartan``.

    Returns ``(template, perm)`` where template position ``a`` corresponds to
    row ``perm[a]`` of the input.  Transposed templates are tried after the
    untransposed ones and come back with ``dual=True``.
    """
    target = tuple(tuple(r) for r in cartan)
    n = len(target)
    cands = _candidates(n)
    for cand in cands:
        p = _match(cand.cartan, target)
        if p is not None:
            return cand, p
    for cand in cands:
        transposed = tuple(zip(*cand.cartan))
        if transposed == cand.cartan:
            continue
        p = _match(transposed, target)
        if p is not None:
            return DynkinDiagram(cand.kind, cand.rank, cand.affine, cand.nodes, transposed, dual=True), p
    raise ClassificationError("Cartan matrix is not of finite or affine type")


def affinize(d: DynkinDiagram) -> DynkinDiagram:
    """Attach the node of the lowest root -theta; the new node is labelled 0."""
    if d.affine:
        raise UnsupportedError(f"{d.name} is already affine")
    return _affinize(d)


@functools.lru_cache(maxsize=None)
def _affinize(d: DynkinDiagram) -> DynkinDiagram:
    n = d.size
    theta = highest_root(d)
    lengths = symmetrizer(d.cartan)
    # (alpha_k, alpha_l) = lengths[k] * cartan[k][l] / 2
    form = [[Fraction(lengths[k] * d.cartan[k][l], 2) for l in range(n)] for k in range(n)]
    theta_theta = sum(theta[k] * form[k][l] * theta[l] for k in range(n) for l in range(n))
    row0 = [2]
    col0 = [2]
    for j in range(n):
        theta_j = sum(theta[k] * form[k][j] for k in range(n))
        row0.append(int(-2 * theta_j / theta_theta))
        col0.append(-sum(d.cartan[j][k] * theta[k] for k in range(n)))
    cartan = [row0] + [[col0[j + 1]] + list(d.cartan[j]) for j in range(n)]
    nodes = (0,) + d.nodes
    return DynkinDiagram(d.kind, d.rank, True, nodes, cartan, d.dual)


def fold(d: DynkinDiagram, group: Sequence[DiagramAutomorphism]) -> DynkinDiagram:
    """Quotient of ``d`` by a group of diagram automorphisms.

    ``group`` may be the whole group or just generators.  The nodes of the
    result are tuples of the original labels (the orbits), listed in the
    standard order of the identified diagram.
    """
    for g in group:
        if len(g.perm) != d.size or not g.preserves(d.cartan):
            raise FoldError(f"{g.images(d) if len(g.perm) == d.size else g.perm} is not an automorphism of {d.name}")
    orbs = orbits(group, d.size)
    a = d.cartan
    for orb in orbs:
        for i, j in itertools.combinations(orb, 2):
            if a[i][j] != 0:
                labels = tuple(d.nodes[k] for k in orb)
                raise FoldError(
                    f"orbit {labels} of {d.name} contains adjacent nodes; "
                    "this is the excluded A_2n / Z2 case (see the fixed-subgroup construction in weylbraid.artin)",
                    orbit=labels,
                )
    folded = []
    for I in orbs:
        row = []
        for J in orbs:
            if I == J:
                row.append(2)
                continue
            sums = {sum(a[i][j] for i in I) for j in J}
            if len(sums) != 1:
                raise FoldError("group does not preserve the Cartan matrix")
            row.append(sums.pop())
        folded.append(row)
    template, perm = identify(folded)
    nodes = tuple(tuple(d.nodes[k] for k in orbs[perm[t]]) for t in range(template.size))
    return DynkinDiagram(template.kind, template.rank, template.affine, nodes, template.cartan, template.dual)


# --------------------------------------------------------------------------
# Kodaira fibres

_KODAIRA_RE = re.compile(r"^\s*(I|II|III|IV)\s*(\*)?\s*_?(\d+)?\s*(\*)?\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class KodairaFiberType:
    tag: str  # one of "I", "I*", "II*", "III*", "IV*"
    n: int = 0

    def __post_init__(self):
        if self.tag not in ("I", "I*", "II*", "III*", "IV*"):
            raise ClassificationError(f"Kodaira type {self.tag!r} has no affine diagram in this table")
        if self.tag == "I" and self.n <= 2:
            raise ClassificationError("I_n requires n > 2")
        if self.n < 0:
            raise ClassificationError("fibre index must be nonnegative")

    @classmethod
    def parse(cls, text: str) -> KodairaFiberType:
        m = _KODAIRA_RE.match(text)
        if not m:
            raise ClassificationError(f"cannot parse Kodaira type {text!r}")
        roman, star1, num, star2 = m.groups()
        roman = roman.upper()
        star = bool(star1 or star2)
        if roman == "I":
            if num is None:
                raise ClassificationError("I and I* need an index")
            return cls("I*" if star else "I", int(num))
        if not star or num is not None:
            raise ClassificationError(f"Kodaira type {text!r} has no affine diagram in this table")
        return cls(roman + "*")

    @property
    def name(self) -> str:
        return f"I{self.n}" if self.tag == "I" else (f"I*{self.n}" if self.tag == "I*" else self.tag)


def kodaira_diagram(f: KodairaFiberType) -> DynkinDiagram:
    if f.tag == "I":
        return affinize(build_diagram("A", f.n - 1))
    if f.tag == "I*":
        return affinize(build_diagram("D", f.n + 4))
    kind = {"II*": "E8", "III*": "E7", "IV*": "E6"}[f.tag]
    return affinize(build_diagram(kind, EXCEPTIONAL[kind]))


def kodaira_to_affine(f: KodairaFiberType | str, monodromy: Sequence[DiagramAutomorphism] | None = None) -> DynkinDiagram:
    """Affine diagram of a Kodaira fibre, folded by the monodromy if given."""
    if isinstance(f, str):
        f = KodairaFiberType.parse(f)
    base = kodaira_diagram(f)
    if not monodromy:
        return base
    for g in monodromy:
        if len(g.perm) != base.size or not g.preserves(base.coxeter):
            raise MonodromyError(f"monodromy element is not an automorphism of {base.name}")
    orbs = orbits(monodromy, base.size)
    if f.tag == "I" and len(orbs) == 1:
        raise MonodromyError(f"monodromy acts transitively on the cycle of {base.name}")
    if f.tag == "I*" and f.n == 0:
        outer = {k for k in range(base.size) if len(base.neighbours(k)) == 1}
        if any(outer <= set(o) for o in orbs):
            raise MonodromyError(f"monodromy acts transitively on the outer vertices of {base.name}")
    return fold(base, monodromy)
