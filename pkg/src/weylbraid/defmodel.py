"""
Linear model of the deformation base of a threefold with a configuration of
exceptional ruled surfaces over a curve of genus g (and of the K3 case).

The base is the complexified reflection representation in simple-root
coordinates, the wall of node j is the fixed hyperplane of r_j, and the
exceptional locus over a point s is read off from the roots orthogonal to s:

* surfaces: nodes whose wall contains s;
* curves: positive roots not orthogonal to s, each with multiplicity 2g - 2.

At a point of the open chamber this gives every positive root; at the origin
it gives every node as a surface and no curves.  For g = 0 the action is
trivial and the locus is all surfaces everywhere.  Flops along w are
recorded by the inversion set of w, which is a modelling convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence

import sympy

from .dynkin import DynkinDiagram, symmetrizer
from .errors import ContractError, ModelError, UnsupportedError
from .weyl import (
    Hyperplane,
    WeylElement,
    as_rational,
    fixed_hyperplane,
    invariant_form,
    inversion_set,
    pair,
    roots,
    simple_reflection,
)


@dataclass(frozen=True)
class DeformationModel:
    diagram: DynkinDiagram
    genus: int
    node_genus: tuple[tuple[Hashable, int], ...]
    walls: tuple[Hyperplane, ...]
    surface: bool = False
    trivial_action: bool = False
    flags: tuple[str, ...] = field(default=())

    @property
    def dimension(self) -> int:
        return self.diagram.size

    def wall(self, node: Hashable) -> Hyperplane:
        return self.walls[self.diagram.index(node)]

    def genus_of(self, node: Hashable) -> int:
        return dict(self.node_genus)[node]

    def act(self, w: WeylElement, s: Sequence) -> tuple[Fraction, ...]:
        x = self._point(s)
        if self.trivial_action:
            return x
        return tuple(Fraction(v) for v in w.apply(x))

    def _point(self, s: Sequence) -> tuple[Fraction, ...]:
        x = as_rational(s)
        if len(x) != self.dimension:
            raise ContractError(f"point has {len(x)} coordinates, the model has dimension {self.dimension}")
        return x

    def to_dict(self) -> dict:
        return {
            "diagram": self.diagram.to_dict(),
            "genus": self.genus,
            "node_genus": {str(k): v for k, v in self.node_genus},
            "surface": self.surface,
            "dimension": self.dimension,
            "walls": {str(k): w.to_dict() for k, w in zip(self.diagram.nodes, self.walls)},
            "flags": list(self.flags),
        }


def cover_degrees(d: DynkinDiagram) -> tuple[int, ...]:
    """Degree of B_j over B: squared length of a long root over that of alpha_j."""
    lengths = symmetrizer(d.cartan)
    top = max(lengths)
    return tuple(top // x for x in lengths)


def build_model(d: DynkinDiagram, g: int, surface: bool = False) -> DeformationModel:
    if d.affine:
        raise UnsupportedError(f"{d.name}: deformation models are built for finite diagrams")
    if g < 0:
        raise ModelError("genus must be nonnegative")
    degrees = cover_degrees(d)
    if surface:
        return DeformationModel(
            d, g, tuple((x, 0) for x in d.nodes), tuple(fixed_hyperplane(d, x) for x in d.nodes), surface=True
        )
    if g == 0:
        if any(k > 1 for k in degrees):
            raise ModelError("a genus-0 base has no connected unramified covers, so the diagram must be simply laced")
        walls = tuple(Hyperplane((0,) * d.size) for _ in d.nodes)
        return DeformationModel(
            d, 0, tuple((x, 0) for x in d.nodes), walls, trivial_action=True, flags=("W-action trivial",)
        )
    # an unramified degree-k cover of a genus-g curve has genus k(g - 1) + 1
    node_genus = tuple((x, k * (g - 1) + 1) for x, k in zip(d.nodes, degrees))
    walls = tuple(fixed_hyperplane(d, x) for x in d.nodes)
    return DeformationModel(d, g, node_genus, walls)


def generic_point(m: DeformationModel) -> tuple[Fraction, ...]:
    """The point with <alpha_i^vee, s> = 1 for all i; it lies on no reflecting hyperplane."""
    a = sympy.Matrix(m.diagram.cartan)
    s = a.LUsolve(sympy.Matrix([1] * m.dimension))
    return tuple(Fraction(int(x.p), int(x.q)) for x in s)


@dataclass(frozen=True)
class ExceptionalCensus:
    surfaces: tuple
    curves: tuple[tuple[tuple[int, ...], int], ...]
    surface_roots: tuple[tuple[int, ...], ...] = ()

    @property
    def total_curves(self) -> int:
        return sum(c for _, c in self.curves)

    def curve_roots(self) -> list[tuple[int, ...]]:
        return [r for r, _ in self.curves]

    def to_dict(self) -> dict:
        return {
            "surfaces": list(self.surfaces),
            "curves": [{"root": list(r), "count": c} for r, c in self.curves],
            "surface_roots": [list(r) for r in self.surface_roots],
        }


def _simple_subsystem(rs: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Indecomposable elements of a positive subsystem."""
    present = set(rs)
    out = []
    for a in rs:
        if not any(tuple(x - y for x, y in zip(a, b)) in present for b in rs if b != a):
            out.append(a)
    return out


def stabilizer_roots(m: DeformationModel, s: Sequence) -> list[tuple[int, ...]]:
    """Positive roots orthogonal to s; their reflections generate the stabilizer of s."""
    x = m._point(s)
    form = invariant_form(m.diagram)
    return [b for b in roots(m.diagram).positive if pair(form, b, x) == 0]


def census(m: DeformationModel, s: Sequence) -> ExceptionalCensus:
    x = m._point(s)
    d = m.diagram
    if m.trivial_action:
        return ExceptionalCensus(tuple(d.nodes), (), tuple(roots(d).simple))
    on_walls = tuple(node for node, w in zip(d.nodes, m.walls) if w.contains(x))
    stab = stabilizer_roots(m, x)
    simple_stab = tuple(_simple_subsystem(stab))
    if m.surface:
        # K3 model: the (-2)-curves surviving over s
        return ExceptionalCensus((), tuple((r, 1) for r in simple_stab), simple_stab)
    count = 2 * m.genus - 2
    stab_set = set(stab)
    curves = () if count == 0 else tuple((b, count) for b in roots(d).positive if b not in stab_set)
    return ExceptionalCensus(on_walls, curves, simple_stab)


@dataclass(frozen=True)
class OrbitRelation:
    image: tuple[Fraction, ...]
    relation: str
    flopped: tuple[tuple[tuple[int, ...], int], ...]

    def to_dict(self) -> dict:
        return {
            "image": [str(v) for v in self.image],
            "relation": self.relation,
            "flopped": [{"root": list(r), "count": c} for r, c in self.flopped],
        }


def orbit_relation(m: DeformationModel, w: WeylElement, s: Sequence) -> OrbitRelation:
    if w.diagram != m.diagram:
        raise ContractError("element and model use different diagrams")
    x = m._point(s)
    image = m.act(w, x)
    relation = "isomorphic" if image == x or m.surface else "birational"
    if m.trivial_action:
        return OrbitRelation(image, relation, ())
    inv = set(inversion_set(w))
    flopped = tuple((r, c) for r, c in census(m, x).curves if r in inv)
    return OrbitRelation(image, relation, flopped)


@dataclass(frozen=True)
class WallCodimension:
    node: Hashable
    geometric: int
    model: int

    @property
    def mismatch(self) -> bool:
        return self.geometric != self.model

    def to_dict(self) -> dict:
        return {"node": self.node, "geometric": self.geometric, "model": self.model, "mismatch": self.mismatch}


def wall_codimension(m: DeformationModel, node: Hashable) -> WallCodimension:
    """Geometric codimension (the genus of B_j) next to the linear model's codimension."""
    if m.surface:
        raise ModelError("wall codimension is recorded for threefold models")
    return WallCodimension(node, m.genus_of(node), m.wall(node).codimension)


def reflection_fixes(m: DeformationModel, node: Hashable, s: Sequence) -> bool:
    """r_j(s) == s in the model."""
    return m.act(simple_reflection(m.diagram, node), s) == m._point(s)
