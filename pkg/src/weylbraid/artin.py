"""
Artin (generalized braid) groups of spherical type.

Words are sequences of ``(node, sign)`` letters.  The word problem is solved
with the left-greedy Garside normal form

    Delta^k x_1 x_2 ... x_r,

where each x_i is a simple element, i.e. the positive lift of a Weyl group
element other than 1 and w_0.  Simple elements are handled through their
action on the root set: a permutation ``p`` with ``p[t]`` the index of
w(root_t).  Descent sets are sign checks on images of simple roots, so no
table of the whole Weyl group is ever built, and the engine works up to E_8.

A pair (a, b) is left-weighted when every left descent of b is already a
right descent of a.

Affine Artin groups have no Garside structure in this sense; for them only
relation checks in the affine Weyl quotient are offered.
"""

from __future__ import annotations

import functools
import re
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable

from .config import MAX_GARSIDE_RANK, MAX_GARSIDE_WORD_LENGTH
from .dynkin import INFINITE_LABEL, DynkinDiagram, build_diagram
from .errors import BudgetError, ContractError, UnsupportedError
from .report import Report
from .weyl import (
    WeylElement,
    check_isomorphism,
    fixed_subgroup,
    generate_subgroup,
    roots,
    word_to_element,
)
from .dynkin import DiagramAutomorphism

Letter = tuple  # (node, +1 | -1)
Perm = tuple


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((node, 1 if sign > 0 else -1) for node, sign in self.letters)
        object.__setattr__(self, "letters", letters)

    @classmethod
    def positive(cls, nodes: Iterable[Hashable]) -> BraidWord:
        return cls(tuple((x, 1) for x in nodes))

    @classmethod
    def parse(cls, text: str) -> BraidWord:
        """Signed node labels: ``"1 2 -1"`` is R_1 R_2 R_1^-1.

        ``-0`` is accepted for the inverse of the affine generator R_0.
        """
        letters = []
        for tok in re.split(r"[\s,]+", text.strip()):
            if not tok:
                continue
            sign = -1 if tok.startswith("-") else 1
            body = tok.lstrip("+-")
            if not body.isdigit():
                raise ContractError(f"bad braid letter {tok!r}")
            letters.append((int(body), sign))
        return cls(tuple(letters))

    @classmethod
    def from_ints(cls, ints: Iterable[int]) -> BraidWord:
        return cls(tuple((abs(x), 1 if x > 0 else -1) for x in ints))

    def __add__(self, other: BraidWord) -> BraidWord:
        return BraidWord(self.letters + other.letters)

    def __mul__(self, k: int) -> BraidWord:
        return BraidWord(self.letters * k)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(tuple((x, -s) for x, s in reversed(self.letters)))

    def is_positive(self) -> bool:
        return all(s > 0 for _, s in self.letters)

    def nodes(self) -> list:
        return [x for x, _ in self.letters]

    def __str__(self) -> str:
        return " ".join(("-" if s < 0 else "") + str(x) for x, s in self.letters)

    def to_list(self) -> list:
        return [str(x) if s > 0 else "-" + str(x) for x, s in self.letters]


def alternating(i: Hashable, j: Hashable, m: int) -> BraidWord:
    """R_i R_j R_i ... with m letters."""
    return BraidWord.positive((i, j)[k % 2] for k in range(m))


# --------------------------------------------------------------------------
# root-permutation model of simple elements

class _Garside:
    def __init__(self, d: DynkinDiagram):
        rs = roots(d)
        self.d = d
        self.n = d.size
        self.N = rs.n_positive
        self.roots = rs.all
        self.simple = tuple(rs.index[r] for r in rs.simple)
        self.gens = []
        for k in range(self.n):
            a = d.cartan[k]
            perm = []
            for beta in rs.all:
                c = sum(a[t] * beta[t] for t in range(self.n))
                img = tuple(beta[t] - (c if t == k else 0) for t in range(self.n))
                perm.append(rs.index[img])
            self.gens.append(tuple(perm))
        self.id = tuple(range(len(rs.all)))
        self._simple_pos = {s: k for k, s in enumerate(self.simple)}
        delta = self.id
        while True:
            missing = [k for k in range(self.n) if not self.is_right_descent(delta, k)]
            if not missing:
                break
            delta = self.compose(delta, self.gens[missing[0]])
        self.delta = delta
        # Delta R_k^-1 = lift of w_0 r_k
        self.inv_lift = [self.compose(delta, g) for g in self.gens]
        self._weighted: dict[tuple[Perm, Perm], tuple[Perm, Perm]] = {}

    @staticmethod
    def compose(a: Perm, b: Perm) -> Perm:
        return tuple(a[t] for t in b)

    def tau(self, x: Perm) -> Perm:
        # conjugation by Delta; w_0 is an involution
        return self.compose(self.compose(self.delta, x), self.delta)

    def is_right_descent(self, x: Perm, k: int) -> bool:
        return x[self.simple[k]] >= self.N

    def left_descents(self, x: Perm) -> set[int]:
        targets = self._simple_pos
        out = set()
        for t in range(self.N, len(x)):
            k = targets.get(x[t])
            if k is not None:
                out.add(k)
        return out

    def left_weight(self, a: Perm, b: Perm) -> tuple[Perm, Perm]:
        key = (a, b)
        hit = self._weighted.get(key)
        if hit is None:
            hit = self._left_weight(a, b)
            if len(self._weighted) < 200_000:
                self._weighted[key] = hit
        return hit

    def _left_weight(self, a: Perm, b: Perm) -> tuple[Perm, Perm]:
        while True:
            for k in sorted(self.left_descents(b)):
                if not self.is_right_descent(a, k):
                    g = self.gens[k]
                    a = self.compose(a, g)
                    b = self.compose(g, b)
                    break
            else:
                return a, b

    def word(self, x: Perm) -> tuple:
        out = []
        while x != self.id:
            k = next(k for k in range(self.n) if self.is_right_descent(x, k))
            x = self.compose(x, self.gens[k])
            out.append(self.d.nodes[k])
        return tuple(reversed(out))

    def to_element(self, x: Perm) -> WeylElement:
        cols = [self.roots[x[s]] for s in self.simple]
        matrix = tuple(zip(*cols))
        return WeylElement(self.d, matrix, self.word(x))

    def from_element(self, w: WeylElement) -> Perm:
        idx = roots(self.d).index
        return tuple(idx[w.apply(beta)] for beta in self.roots)


@functools.lru_cache(maxsize=64)
def _context(d: DynkinDiagram) -> _Garside:
    return _Garside(d)


def _require_spherical(d: DynkinDiagram) -> _Garside:
    if d.affine:
        raise UnsupportedError(f"{d.name}: no Garside normal form for affine Artin groups")
    if d.size > MAX_GARSIDE_RANK:
        raise BudgetError(f"Garside computations are limited to rank {MAX_GARSIDE_RANK}")
    return _context(d)


@dataclass(frozen=True)
class GarsideNormalForm:
    diagram: DynkinDiagram
    delta_power: int
    factors: tuple[WeylElement, ...]

    def to_dict(self) -> dict:
        return {
            "delta_power": self.delta_power,
            "factors": [list(f.word) for f in self.factors],
        }

    def to_word(self) -> BraidWord:
        """A braid word representing the same element."""
        delta = delta_word(self.diagram)
        head = delta * self.delta_power if self.delta_power >= 0 else delta.inverse() * (-self.delta_power)
        for f in self.factors:
            head = head + BraidWord.positive(f.word)
        return head

    @property
    def canonical_length(self) -> int:
        return len(self.factors)


def _check_letters(d: DynkinDiagram, w: BraidWord) -> list[tuple[int, int]]:
    return [(d.index(x), s) for x, s in w.letters]


def normal_form(d: DynkinDiagram, w: BraidWord) -> GarsideNormalForm:
    """Left-greedy Garside normal form of a braid word."""
    ctx = _require_spherical(d)
    if len(w) > MAX_GARSIDE_WORD_LENGTH:
        raise BudgetError(f"word length {len(w)} exceeds {MAX_GARSIDE_WORD_LENGTH}")
    letters = _check_letters(d, w)
    # R_k^-1 = Delta^-1 (w_0 r_k); push every Delta^-1 to the front, which
    # conjugates each factor to its left by Delta once.
    total_inv = sum(1 for _, s in letters if s < 0)
    seen = 0
    factors: list[Perm] = []
    for k, s in letters:
        if s < 0:
            seen += 1
            f = ctx.inv_lift[k]
        else:
            f = ctx.gens[k]
        if (total_inv - seen) % 2:
            f = ctx.tau(f)
        factors.append(f)

    nf: list[Perm] = []
    for f in factors:
        nf.append(f)
        j = len(nf) - 1
        while j > 0:
            a, b = ctx.left_weight(nf[j - 1], nf[j])
            if a == nf[j - 1]:
                break
            nf[j - 1], nf[j] = a, b
            j -= 1
    lead = 0
    while lead < len(nf) and nf[lead] == ctx.delta:
        lead += 1
    end = len(nf)
    while end > lead and nf[end - 1] == ctx.id:
        end -= 1
    body = tuple(ctx.to_element(x) for x in nf[lead:end])
    return GarsideNormalForm(d, lead - total_inv, body)


def words_equal(d: DynkinDiagram, a: BraidWord, b: BraidWord) -> bool:
    return normal_form(d, a) == normal_form(d, b)


def project_to_weyl(d: DynkinDiagram, w: BraidWord) -> WeylElement:
    """Image under R_i -> r_i (and R_i^-1 -> r_i)."""
    return word_to_element(d, w.nodes())


def delta_word(d: DynkinDiagram) -> BraidWord:
    """Positive lift of the longest element w_0."""
    ctx = _require_spherical(d)
    return BraidWord.positive(ctx.word(ctx.delta))


def lift(w: WeylElement) -> BraidWord:
    """Positive lift of a Weyl element (via a reduced word)."""
    ctx = _require_spherical(w.diagram)
    return BraidWord.positive(ctx.word(ctx.from_element(w)))


# --------------------------------------------------------------------------
# relation checks

def abelianization(d: DynkinDiagram, w: BraidWord) -> Counter:
    """Image of ``w`` in the abelianization of the Artin group.

    Generators joined by an odd label are conjugate, so letters are counted
    per class of the graph of odd-labelled edges (with sign).
    """
    n = d.size
    cls = list(range(n))

    def find(x):
        while cls[x] != x:
            x = cls[x]
        return x

    for i in range(n):
        for j in range(n):
            m = d.coxeter[i][j]
            if i != j and m != INFINITE_LABEL and m % 2 == 1:
                a, b = find(i), find(j)
                if a != b:
                    cls[max(a, b)] = min(a, b)
    out: Counter = Counter()
    for k, s in _check_letters(d, w):
        out[find(k)] += s
    return Counter({k: v for k, v in out.items() if v})


def verify_braid_relations(d: DynkinDiagram) -> Report:
    """Check the braid relation for every pair of nodes.

    Spherical types use the Garside word problem.  Affine types compare the
    two sides in the affine Weyl group (integer matrices on the affine root
    lattice) and compare letter counts; the affine Artin word problem itself
    is not solved.
    """
    rep = Report(f"braid relations {d.name}")
    n = d.size
    for i in range(n):
        for j in range(i + 1, n):
            a, b = d.nodes[i], d.nodes[j]
            m = d.coxeter[i][j]
            name = f"({a},{b})"
            if m == INFINITE_LABEL:
                # no relation; (r_i r_j) has infinite order in the quotient
                x = word_to_element(d, (a, b))
                y = x
                finite = False
                for _ in range(24):
                    if y.is_identity():
                        finite = True
                        break
                    y = y * x
                rep.add(name, not finite, m="inf", method="affine-weyl-quotient", note="no relation")
                continue
            lhs, rhs = alternating(a, b, m), alternating(b, a, m)
            if d.affine:
                same = word_to_element(d, lhs.nodes()) == word_to_element(d, rhs.nodes())
                counts = abelianization(d, lhs) == abelianization(d, rhs)
                rep.add(name, same and counts, m=m, method="affine-weyl-quotient", word_length=m)
            else:
                rep.add(name, words_equal(d, lhs, rhs), m=m, method="garside", word_length=m)
    return rep


def michel_generators(n: int) -> list[BraidWord]:
    """Generators of the Z/2-fixed subgroup of B(A_2n), indexed as C_n generators.

    R_i R_{2n+1-i} for i < n, then R_n R_{n+1} R_n.
    """
    if n < 1:
        raise ContractError("n must be positive")
    gens = [BraidWord.positive((i, 2 * n + 1 - i)) for i in range(1, n)]
    gens.append(BraidWord.positive((n, n + 1, n)))
    return gens


def flip(w: BraidWord, n: int) -> BraidWord:
    """Letterwise image under the A_2n diagram flip i -> 2n+1-i."""
    return BraidWord(tuple((2 * n + 1 - x, s) for x, s in w.letters))


def _alternating_product(a: BraidWord, b: BraidWord, m: int) -> BraidWord:
    out = BraidWord()
    for k in range(m):
        out = out + (a if k % 2 == 0 else b)
    return out


def verify_folded_braid_relations(n: int, max_n: int = 3) -> Report:
    """Check that the fixed-subgroup generators of B(A_2n) satisfy the C_n braid relations.

    Also checks that the paired generators commute, that R_n and R_{n+1}
    braid, that every generator is flip-invariant, and that the Weyl images
    generate a group isomorphic to W(C_n) equal to the flip-fixed subgroup
    of W(A_2n).
    """
    if n > max_n:
        raise BudgetError(f"n = {n} exceeds the Garside budget (n <= {max_n})")
    d = build_diagram("A", 2 * n)
    gens = michel_generators(n)
    rep = Report(f"folded braid relations A{2 * n} / Z2 -> C{n}")
    for k, g in enumerate(gens, 1):
        rep.add(f"S{k} flip-invariant", words_equal(d, g, flip(g, n)), word=str(g))
    for i in range(1, n):
        a, b = BraidWord.positive((i, 2 * n + 1 - i)), BraidWord.positive((2 * n + 1 - i, i))
        rep.add(f"R{i},R{2 * n + 1 - i} commute", words_equal(d, a, b))
    rep.add(f"R{n},R{n + 1} braid", words_equal(d, alternating(n, n + 1, 3), alternating(n + 1, n, 3)))
    if n >= 2:
        c = build_diagram("C", n)
        for i in range(n):
            for j in range(i + 1, n):
                m = c.coxeter[i][j]
                lhs = _alternating_product(gens[i], gens[j], m)
                rhs = _alternating_product(gens[j], gens[i], m)
                rep.add(f"S{i + 1},S{j + 1} braid (m={m})", words_equal(d, lhs, rhs), m=m, word_length=len(lhs))
        source = c
    else:
        source = build_diagram("A", 1)
    images = [project_to_weyl(d, g) for g in gens]
    sigma = DiagramAutomorphism(tuple(reversed(range(d.size))))
    fixed = fixed_subgroup(d, sigma)
    iso = check_isomorphism(source, images, fixed)
    generated = generate_subgroup(images)
    rep.add("Weyl images generate", len(generated) == iso.source_order, order=len(generated))
    rep.add(f"fixed subgroup = W({source.name})", iso.passed, isomorphism=iso.to_dict())
    return rep


__all__ = [
    "BraidWord",
    "GarsideNormalForm",
    "alternating",
    "normal_form",
    "words_equal",
    "project_to_weyl",
    "delta_word",
    "lift",
    "verify_braid_relations",
    "michel_generators",
    "flip",
    "verify_folded_braid_relations",
    "abelianization",
]
