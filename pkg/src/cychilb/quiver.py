"""McKay quiver of the action, quiver representations, and chart data.

Vertices are the characters 0..r-1. Each first-block coordinate contributes
an up-arrow k -> k+1 at every vertex and each second-block coordinate a
down-arrow k -> k-1 (indices mod r). Representations here have dimension
vector all ones, so a representation is one scalar per arrow; stability for
the standard character is cyclicity: every vertex reachable from vertex 0
through nonzero arrows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import ConventionError, InvalidFixedPointError, ParameterError
from .group import GroupData
from .hilb import FixedPointIdeal, PointLabel, enumerate_fixed_points

# ---------------------------------------------------------------------------
# quiver structure

@dataclass(frozen=True)
class Arrow:
    """kind "y" goes source -> source+1, kind "x" goes source -> source-1."""

    kind: str
    copy: int
    source: int

    def target(self, r: int) -> int:
        step = 1 if self.kind == "y" else -1
        return (self.source + step) % r


@dataclass(frozen=True)
class McKayQuiver:
    r: int
    up_arrows: tuple
    down_arrows: tuple

    @property
    def arrows(self) -> tuple:
        return self.up_arrows + self.down_arrows


def build_quiver(g: GroupData) -> McKayQuiver:
    up = tuple(
        Arrow(kind="y", copy=c, source=k)
        for c in range(1, g.s + 1)
        for k in range(g.r)
    )
    down = tuple(
        Arrow(kind="x", copy=c, source=k)
        for c in range(1, g.n - g.s + 1)
        for k in range(g.r)
    )
    quiver = McKayQuiver(r=g.r, up_arrows=up, down_arrows=down)
    for k in range(g.r):
        out_deg = sum(1 for a in quiver.arrows if a.source == k)
        in_deg = sum(1 for a in quiver.arrows if a.target(g.r) == k)
        if out_deg != g.n or in_deg != g.n:
            raise ConventionError(f"vertex {k} degree is not n")
    return quiver


@dataclass
class QuiverRep:
    """One exact scalar per arrow; dimension vector all ones."""

    scalars: dict

    def scalar(self, arrow: Arrow) -> Fraction:
        try:
            return self.scalars[arrow]
        except KeyError:
            raise ParameterError(f"missing arrow assignment for {arrow}") from None


@dataclass(frozen=True)
class Chart:
    fixed_point: PointLabel
    unit_arrows: frozenset


def constant_rep(q: McKayQuiver, value: Fraction) -> QuiverRep:
    return QuiverRep(scalars={a: Fraction(value) for a in q.arrows})


def all_ones_rep(q: McKayQuiver) -> QuiverRep:
    return constant_rep(q, Fraction(1))


def zero_rep(q: McKayQuiver) -> QuiverRep:
    return constant_rep(q, Fraction(0))


# ---------------------------------------------------------------------------
# relations and stability

def check_relations(q: McKayQuiver, rep: QuiverRep) -> bool:
    """The three commutation families, instantiated at every vertex and every
    pair of copy indices."""
    r = q.r
    up_copies = sorted({a.copy for a in q.up_arrows})
    down_copies = sorted({a.copy for a in q.down_arrows})

    def up(c: int, k: int) -> Fraction:
        return rep.scalar(Arrow(kind="y", copy=c, source=k % r))

    def down(c: int, k: int) -> Fraction:
        return rep.scalar(Arrow(kind="x", copy=c, source=k % r))

    for k in range(r):
        for c, c2 in combinations(up_copies, 2):
            if up(c, k) * up(c2, k + 1) != up(c2, k) * up(c, k + 1):
                return False
        for c, c2 in combinations(down_copies, 2):
            if down(c, k) * down(c2, k - 1) != down(c2, k) * down(c, k - 1):
                return False
        for c, d in product(up_copies, down_copies):
            if up(c, k) * down(d, k + 1) != down(d, k) * up(c, k - 1):
                return False
    return True


def support_edges(q: McKayQuiver, rep: QuiverRep):
    return [
        (a.source, a.target(q.r)) for a in q.arrows if rep.scalar(a) != 0
    ]


def is_stable(q: McKayQuiver, rep: QuiverRep) -> bool:
    """Cyclicity: every vertex reachable from vertex 0 via nonzero arrows."""
    adjacency: dict[int, set[int]] = {k: set() for k in range(q.r)}
    for src, dst in support_edges(q, rep):
        adjacency[src].add(dst)
    seen = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) == q.r


# ---------------------------------------------------------------------------
# fixed-point representations

def _unit_arrows_for_label(q: McKayQuiver, label: PointLabel):
    r = q.r
    if label.kind == "interior":
        ups = {Arrow(kind="y", copy=label.i, source=k) for k in range(label.t - 1)}
        down_sources = [0] + [k for k in range(r - 1, label.t, -1)]
        downs = {Arrow(kind="x", copy=label.j, source=k) for k in down_sources}
        return ups | downs
    if label.kind == "boundary_x":
        down_sources = [0] + [k for k in range(r - 1, 1, -1)]
        return {Arrow(kind="x", copy=label.j, source=k) for k in down_sources}
    if label.kind == "boundary_y":
        return {Arrow(kind="y", copy=label.i, source=k) for k in range(r - 1)}
    raise InvalidFixedPointError(f"unknown label kind {label.kind!r}")


def rep_from_fixed_point(q: McKayQuiver, p: FixedPointIdeal):
    """Scalar 1 on the arrows the chart prescribes nonvanishing, 0 elsewhere.

    For interior(i,j,t) the units are the copy-i up-arrows on the first t-1
    stages and the copy-j down-arrows on the complementary chain through the
    top vertex; boundary points use a single full chain. Relations, stability
    and the r-1 unit count are asserted.
    """
    units = _unit_arrows_for_label(q, p.label)
    if len(units) != q.r - 1:
        raise ConventionError(f"{p.label.render()}: {len(units)} unit arrows")
    scalars = {a: Fraction(1) if a in units else Fraction(0) for a in q.arrows}
    rep = QuiverRep(scalars=scalars)
    if not check_relations(q, rep):
        raise ConventionError(f"{p.label.render()}: relations fail")
    if not is_stable(q, rep):
        raise ConventionError(f"{p.label.render()}: representation not stable")
    return rep, Chart(fixed_point=p.label, unit_arrows=frozenset(units))


# ---------------------------------------------------------------------------
# divisor membership and the connectedness witness

def _has_cycle(r: int, edges) -> bool:
    adjacency: dict[int, set[int]] = {k: set() for k in range(r)}
    for src, dst in edges:
        adjacency[src].add(dst)
    color = {k: 0 for k in range(r)}

    def visit(v: int) -> bool:
        color[v] = 1
        for w in adjacency[v]:
            if color[w] == 1 or (color[w] == 0 and visit(w)):
                return True
        color[v] = 2
        return False

    return any(color[k] == 0 and visit(k) for k in range(r))


def divisor_membership(q: McKayQuiver, rep: QuiverRep) -> set:
    """E-indices of the sinks of the nonzero-support subquiver when acyclic.

    A generic (cyclic-support) representation belongs to no exceptional
    divisor and yields the empty set.
    """
    if not is_stable(q, rep):
        raise ParameterError("divisor membership needs a stable representation")
    edges = support_edges(q, rep)
    if _has_cycle(q.r, edges):
        return set()
    has_out = {src for src, _ in edges}
    return {k for k in range(q.r) if k not in has_out}


@dataclass(frozen=True)
class ConnectednessWitness:
    relations_ok: bool
    stable: bool
    chart_verdicts: tuple
    all_pass: bool


def connectedness_witness(g: GroupData, points=None) -> ConnectednessWitness:
    """The all-ones representation lies in every chart: relations hold, it is
    stable, and no chart unit coordinate vanishes on it."""
    if points is None:
        points = enumerate_fixed_points(g)
    q = build_quiver(g)
    ones = all_ones_rep(q)
    relations_ok = check_relations(q, ones)
    stable = is_stable(q, ones)
    verdicts = []
    for p in points:
        _, chart = rep_from_fixed_point(q, p)
        ok = all(ones.scalar(a) != 0 for a in chart.unit_arrows)
        verdicts.append((p.label.render(), ok))
    all_pass = relations_ok and stable and all(ok for _, ok in verdicts)
    return ConnectednessWitness(
        relations_ok=relations_ok,
        stable=stable,
        chart_verdicts=tuple(verdicts),
        all_pass=all_pass,
    )


def sink_pattern_check(r: int) -> bool:
    """Exhaustive slot-edge search: no stable acyclic support pattern has two
    sinks at distance greater than one.

    Copies of parallel arrows never change reachability, cycles or sinks, so
    it is enough to switch each of the 2r slots (up k->k+1, down k->k-1) on
    or off.
    """
    slots = [("y", k) for k in range(r)] + [("x", k) for k in range(r)]
    for mask in range(2 ** len(slots)):
        edges = []
        for bit, (kind, k) in enumerate(slots):
            if mask >> bit & 1:
                step = 1 if kind == "y" else -1
                edges.append((k, (k + step) % r))
        adjacency: dict[int, set[int]] = {k: set() for k in range(r)}
        for src, dst in edges:
            adjacency[src].add(dst)
        seen = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        if len(seen) != r or _has_cycle(r, edges):
            continue
        sinks = sorted(k for k in range(r) if not adjacency[k])
        if len(sinks) > 2:
            return False
        if len(sinks) == 2 and sinks[1] - sinks[0] != 1:
            return False
    return True
