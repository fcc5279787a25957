"""Torus-fixed points of the orbifold Hilbert scheme.

Fixed points are zero-dimensional invariant monomial ideals whose standard
monomials form a G-graph: a division-closed set containing 1 with exactly one
monomial per weight class. Two independent enumerations are provided (the
closed-form classification and a brute-force search over division-closed
sets), plus equivariant tangent-space dimensions and the matching between
fixed points and the maximal cones of the resolution fan.

Naming: y_1..y_s are the first-block coordinates (weight r-1), x_1..x_{n-s}
the second-block ones (weight 1); x_j is the absolute coordinate s+j.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import ConfigurationError, InvalidFixedPointError, MatchFailure
from .group import (
    GroupData,
    degree,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_sort_key,
    monomials_of_degree,
    one,
    unit_monomial,
    weight,
)
from .toric import Cone, Fan

# ---------------------------------------------------------------------------
# labels and domain types

@dataclass(frozen=True)
class PointLabel:
    """Tagged label: interior(i, j, t), boundary_x(j), or boundary_y(i).

    i indexes the first block (1..s), j the second block (1..n-s), and t the
    interior stage (2..r-1).
    """

    kind: str
    i: int = 0
    j: int = 0
    t: int = 0

    def render(self) -> str:
        if self.kind == "interior":
            return f"interior(i={self.i},j={self.j},t={self.t})"
        if self.kind == "boundary_x":
            return f"boundary_x(j={self.j})"
        return f"boundary_y(i={self.i})"


def interior_label(i: int, j: int, t: int) -> PointLabel:
    return PointLabel(kind="interior", i=i, j=j, t=t)


def boundary_x_label(j: int) -> PointLabel:
    return PointLabel(kind="boundary_x", j=j)


def boundary_y_label(i: int) -> PointLabel:
    return PointLabel(kind="boundary_y", i=i)


@dataclass(frozen=True)
class GGraph:
    monomials: tuple

    @classmethod
    def from_monomials(cls, g: GroupData, monomials) -> "GGraph":
        mset = set(monomials)
        if one(g) not in mset:
            raise InvalidFixedPointError("G-graph must contain the constant monomial")
        weights = set()
        for m in mset:
            for idx in range(g.n):
                if m[idx] > 0:
                    lower = m[:idx] + (m[idx] - 1,) + m[idx + 1 :]
                    if lower not in mset:
                        raise InvalidFixedPointError(
                            f"G-graph not division-closed at {m}"
                        )
            weights.add(weight(g, m).k)
        if len(mset) != g.r or weights != set(range(g.r)):
            raise InvalidFixedPointError(
                "G-graph must hit every weight class exactly once"
            )
        return cls(tuple(sorted(mset, key=monomial_sort_key)))

    def key(self) -> frozenset:
        return frozenset(self.monomials)


@dataclass(frozen=True)
class FixedPointIdeal:
    label: PointLabel
    generators: tuple

    def __post_init__(self):
        for a, b in combinations(self.generators, 2):
            if monomial_divides(a, b) or monomial_divides(b, a):
                raise InvalidFixedPointError("generator list is not minimal")


# ---------------------------------------------------------------------------
# enumeration

def _y(g: GroupData, i: int, e: int = 1) -> tuple:
    return unit_monomial(g, i, e)


def _x(g: GroupData, j: int, e: int = 1) -> tuple:
    return unit_monomial(g, g.s + j, e)


def enumerate_fixed_points(g: GroupData):
    """The closed-form list, in deterministic order.

    interior(i,j,t) for 1<=i<=s, 1<=j<=n-s, 2<=t<=r-1, then boundary_x(j),
    then boundary_y(i). Count: s(n-s)(r-2) + n.
    """
    points = []
    for i in range(1, g.s + 1):
        for j in range(1, g.n - g.s + 1):
            for t in range(2, g.r):
                gens = [_y(g, ii, t if ii == i else 1) for ii in range(1, g.s + 1)]
                gens += [
                    _x(g, jj, g.r - t + 1 if jj == j else 1)
                    for jj in range(1, g.n - g.s + 1)
                ]
                gens.append(monomial_mul(_y(g, i), _x(g, j)))
                points.append(
                    FixedPointIdeal(
                        label=interior_label(i, j, t),
                        generators=tuple(sorted(gens, key=monomial_sort_key)),
                    )
                )
    for j in range(1, g.n - g.s + 1):
        gens = [_y(g, ii) for ii in range(1, g.s + 1)]
        gens += [
            _x(g, jj, g.r if jj == j else 1) for jj in range(1, g.n - g.s + 1)
        ]
        points.append(
            FixedPointIdeal(
                label=boundary_x_label(j),
                generators=tuple(sorted(gens, key=monomial_sort_key)),
            )
        )
    for i in range(1, g.s + 1):
        gens = [_y(g, ii, g.r if ii == i else 1) for ii in range(1, g.s + 1)]
        gens += [_x(g, jj) for jj in range(1, g.n - g.s + 1)]
        points.append(
            FixedPointIdeal(
                label=boundary_y_label(i),
                generators=tuple(sorted(gens, key=monomial_sort_key)),
            )
        )
    return tuple(points)


def prescribed_gamma(g: GroupData, label: PointLabel) -> GGraph:
    """The closed-form standard-monomial set attached to a label."""
    if label.kind == "interior":
        monos = [one(g)]
        monos += [_x(g, label.j, a) for a in range(1, g.r - label.t + 1)]
        monos += [_y(g, label.i, b) for b in range(1, label.t)]
    elif label.kind == "boundary_x":
        monos = [_x(g, label.j, a) if a else one(g) for a in range(g.r)]
    elif label.kind == "boundary_y":
        monos = [_y(g, label.i, a) if a else one(g) for a in range(g.r)]
    else:
        raise InvalidFixedPointError(f"unknown label kind {label.kind!r}")
    return GGraph.from_monomials(g, monos)


def standard_monomials(g: GroupData, generators, degree_cap: int | None = None):
    """Monomials outside the ideal, found by breadth-first multiplication.

    Raises when a standard monomial exceeds the degree cap (default r); valid
    fixed-point ideals stay below it.
    """
    cap = g.r if degree_cap is None else degree_cap
    start = one(g)
    seen = {start}
    queue = deque([start])
    out = []
    while queue:
        m = queue.popleft()
        out.append(m)
        for idx in range(g.n):
            m2 = m[:idx] + (m[idx] + 1,) + m[idx + 1 :]
            if m2 in seen:
                continue
            if any(monomial_divides(gen, m2) for gen in generators):
                continue
            if degree(m2) > cap:
                raise InvalidFixedPointError(
                    f"standard monomial {m2} exceeds the degree cap {cap}"
                )
            seen.add(m2)
            queue.append(m2)
    return tuple(sorted(out, key=monomial_sort_key))


def companion_graph(g: GroupData, p: FixedPointIdeal) -> GGraph:
    std = standard_monomials(g, p.generators)
    if len(std) != g.r:
        raise InvalidFixedPointError(
            f"{p.label.render()}: {len(std)} standard monomials, expected {g.r}"
        )
    return GGraph.from_monomials(g, std)


# ---------------------------------------------------------------------------
# exhaustive G-graph search (independent oracle)

def search_ggraphs(g: GroupData, exponent_cap: int):
    """All division-closed r-element monomial sets with one monomial per
    weight class, grown from {1} one monomial at a time.

    Exponents above r-1 cannot occur (the powers of a single variable inside
    a division-closed set already use that many distinct weights), so the
    effective cap is min(exponent_cap, r-1); a cap below r-1 would miss the
    boundary graphs and is rejected.
    """
    if exponent_cap < g.r - 1:
        raise ConfigurationError(
            f"exponent cap {exponent_cap} cannot contain the boundary graphs"
        )
    cap = min(exponent_cap, g.r - 1)
    start = frozenset([one(g)])
    visited = {start}
    stack = [start]
    complete = set()
    while stack:
        state = stack.pop()
        if len(state) == g.r:
            complete.add(state)
            continue
        used = {weight(g, m).k for m in state}
        for m in state:
            for idx in range(g.n):
                if m[idx] + 1 > cap:
                    continue
                m2 = m[:idx] + (m[idx] + 1,) + m[idx + 1 :]
                if m2 in state or weight(g, m2).k in used:
                    continue
                closed = all(
                    m2[:jdx] + (m2[jdx] - 1,) + m2[jdx + 1 :] in state
                    for jdx in range(g.n)
                    if m2[jdx] > 0
                )
                if not closed:
                    continue
                nxt = frozenset(state | {m2})
                if nxt not in visited:
                    visited.add(nxt)
                    stack.append(nxt)
    graphs = [GGraph.from_monomials(g, s) for s in complete]
    graphs.sort(key=lambda gr: gr.monomials)
    return tuple(graphs)


# ---------------------------------------------------------------------------
# tangent space

def tangent_dimension(g: GroupData, p: FixedPointIdeal) -> int:
    """dim Hom(I, R/I)^G by the pair-syzygy linear system.

    One unknown per minimal generator (its image is a scalar times the unique
    standard monomial of the same weight); each generator pair contributes the
    constraint that the two routes around their syzygy agree in R/I, where a
    product is the monomial product if standard and 0 otherwise.
    """
    std = standard_monomials(g, p.generators)
    if len(std) != g.r:
        raise InvalidFixedPointError(
            f"{p.label.render()}: not a torus-fixed cluster"
        )
    std_set = set(std)
    by_weight = {}
    for m in std:
        k = weight(g, m).k
        if k in by_weight:
            raise InvalidFixedPointError("duplicate standard weight class")
        by_weight[k] = m
    gens = p.generators
    rows = []
    for a, b in combinations(range(len(gens)), 2):
        lcm = monomial_lcm(gens[a], gens[b])
        row = [Fraction(0)] * len(gens)
        u1 = monomial_mul(monomial_div(lcm, gens[a]), by_weight[weight(g, gens[a]).k])
        u2 = monomial_mul(monomial_div(lcm, gens[b]), by_weight[weight(g, gens[b]).k])
        if u1 in std_set:
            row[a] += 1
        if u2 in std_set:
            row[b] -= 1
        if any(row):
            rows.append(row)
    if not rows:
        return len(gens)
    _, basis = linalg.nullspace(linalg.RatMatrix.from_rows(rows))
    return len(basis)


# ---------------------------------------------------------------------------
# matching cones to G-graphs

def weight_class_candidates(g: GroupData, k: int):
    """Minimal monomials of weight k: pure first-block monomials of degree
    r-k and pure second-block monomials of degree k (just 1 when k = 0).

    Mixed monomials never beat these: dividing by the weight-0 product of one
    variable from each block strictly lowers the pairing with every ray.
    """
    if k == 0:
        return [one(g)]
    cands = [
        m + (0,) * (g.n - g.s) for m in monomials_of_degree(g.s, g.r - k)
    ]
    cands += [(0,) * g.s + m for m in monomials_of_degree(g.n - g.s, k)]
    return cands


def _pairing(m: tuple, ray) -> Fraction:
    return sum((e * c for e, c in zip(m, ray)), Fraction(0))


def match_cones_to_ggraphs(g: GroupData, fan: Fan, graphs) -> dict:
    """Bijection maximal cone -> G-graph via simultaneous valuation minima.

    For each weight class the selected monomial must minimize the pairing
    against every ray of the cone at once; failure of existence or uniqueness
    raises MatchFailure rather than guessing.
    """
    lookup = {gr.key(): gr for gr in graphs}
    matched: dict[Cone, GGraph] = {}
    for cone in fan.maximal_cones:
        selected = []
        for k in range(g.r):
            cands = weight_class_candidates(g, k)
            vectors = [tuple(_pairing(m, ray) for ray in cone.rays) for m in cands]
            minima = tuple(min(col) for col in zip(*vectors))
            winners = [m for m, v in zip(cands, vectors) if v == minima]
            if len(winners) != 1:
                raise MatchFailure(
                    f"{len(winners)} simultaneous minimizers in weight class {k}",
                    cone=cone,
                    weight_class=k,
                )
            selected.append(winners[0])
        key = frozenset(selected)
        if key not in lookup:
            raise MatchFailure(
                "selected monomials do not form an enumerated G-graph", cone=cone
            )
        matched[cone] = lookup[key]
    if len({gr.key() for gr in matched.values()}) != len(graphs) or len(
        matched
    ) != len(graphs):
        raise MatchFailure("cone-to-graph map is not a bijection")
    return matched
