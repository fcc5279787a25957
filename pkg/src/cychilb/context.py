"""Per-triple computation context.

Caches the expensive shared objects (fan, fixed points, matching, tables) so
that report generation, verification, and tests reuse one computation per
triple within a process.
"""

from __future__ import annotations

from functools import cached_property

from . import hilb, mckay, quiver, toric
from .group import GroupData, validate


class TripleContext:
    def __init__(self, s: int, n: int, r: int):
        self.g: GroupData = validate(s, n, r)

    @cached_property
    def fan(self) -> toric.Fan:
        return toric.resolution_fan(self.g)

    @cached_property
    def fixed_points(self) -> tuple:
        return hilb.enumerate_fixed_points(self.g)

    @cached_property
    def companion_graphs(self) -> tuple:
        return tuple(hilb.companion_graph(self.g, p) for p in self.fixed_points)

    @cached_property
    def searched_graphs(self) -> tuple:
        return hilb.search_ggraphs(self.g, self.g.r)

    @cached_property
    def matching(self) -> dict:
        return hilb.match_cones_to_ggraphs(self.g, self.fan, self.companion_graphs)

    @cached_property
    def tangent_dimensions(self) -> tuple:
        return tuple(
            hilb.tangent_dimension(self.g, p) for p in self.fixed_points
        )

    @cached_property
    def discrepancies(self) -> tuple:
        return tuple(toric.discrepancies(self.g))

    @cached_property
    def singularity(self) -> toric.SingularityType:
        return toric.singularity_type(self.g)

    @cached_property
    def m_table(self) -> mckay.MDivisorTable:
        return mckay.m_table(self.g)

    @cached_property
    def fm_complexes(self) -> tuple:
        return tuple(mckay.fm_complex(self.g, t) for t in range(self.g.r))

    @cached_property
    def correspondence(self) -> tuple:
        return mckay.correspondence_table(self.g)

    @cached_property
    def quiver(self) -> quiver.McKayQuiver:
        return quiver.build_quiver(self.g)

    @cached_property
    def fixed_point_reps(self) -> tuple:
        return tuple(
            quiver.rep_from_fixed_point(self.quiver, p) for p in self.fixed_points
        )

    @cached_property
    def witness(self) -> quiver.ConnectednessWitness:
        return quiver.connectedness_witness(self.g, self.fixed_points)

    @cached_property
    def invariant_generators(self) -> tuple:
        return toric.invariant_generators(self.g)
