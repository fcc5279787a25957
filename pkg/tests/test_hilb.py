from __future__ import annotations

import pytest

from cychilb.errors import ConfigurationError, InvalidFixedPointError, MatchFailure
from cychilb.group import validate
from cychilb.hilb import (
    FixedPointIdeal,
    GGraph,
    boundary_x_label,
    boundary_y_label,
    companion_graph,
    enumerate_fixed_points,
    interior_label,
    match_cones_to_ggraphs,
    prescribed_gamma,
    search_ggraphs,
    standard_monomials,
    tangent_dimension,
    weight_class_candidates,
)

# Frozen expected standard-monomial sets for (2, 3, 5): coordinates are
# (z1, z2 | z3) with weights (4, 4, 1); the nine fixed points.
GAMMAS_235 = {
    frozenset({(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0), (4, 0, 0)}),
    frozenset({(0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 3, 0), (0, 4, 0)}),
    frozenset({(0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 0, 3), (0, 0, 4)}),
    frozenset({(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0), (0, 0, 1)}),
    frozenset({(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 0, 1), (0, 0, 2)}),
    frozenset({(0, 0, 0), (1, 0, 0), (0, 0, 1), (0, 0, 2), (0, 0, 3)}),
    frozenset({(0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 3, 0), (0, 0, 1)}),
    frozenset({(0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 0, 1), (0, 0, 2)}),
    frozenset({(0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 2), (0, 0, 3)}),
}


def test_fixed_point_counts():
    assert len(enumerate_fixed_points(validate(2, 3, 5))) == 9
    for r in (2, 3, 5, 7):
        assert len(enumerate_fixed_points(validate(1, 2, r))) == r
    g = validate(2, 6, 5)
    assert len(enumerate_fixed_points(g)) == 2 * 4 * 3 + 6


def test_fixed_point_label_order():
    points = enumerate_fixed_points(validate(2, 3, 5))
    rendered = [p.label.render() for p in points]
    assert rendered == [
        "interior(i=1,j=1,t=2)",
        "interior(i=1,j=1,t=3)",
        "interior(i=1,j=1,t=4)",
        "interior(i=2,j=1,t=2)",
        "interior(i=2,j=1,t=3)",
        "interior(i=2,j=1,t=4)",
        "boundary_x(j=1)",
        "boundary_y(i=1)",
        "boundary_y(i=2)",
    ]


def test_boundary_generators():
    g = validate(2, 3, 5)
    points = {p.label.render(): p for p in enumerate_fixed_points(g)}
    bx = points["boundary_x(j=1)"]
    assert set(bx.generators) == {(1, 0, 0), (0, 1, 0), (0, 0, 5)}
    by = points["boundary_y(i=2)"]
    assert set(by.generators) == {(1, 0, 0), (0, 5, 0), (0, 0, 1)}


def test_interior_generators_include_mixed_term():
    g = validate(2, 3, 5)
    points = {p.label.render(): p for p in enumerate_fixed_points(g)}
    p = points["interior(i=1,j=1,t=4)"]
    assert set(p.generators) == {(4, 0, 0), (0, 1, 0), (0, 0, 2), (1, 0, 1)}


def test_companion_graphs_frozen_oracle():
    g = validate(2, 3, 5)
    graphs = {companion_graph(g, p).key() for p in enumerate_fixed_points(g)}
    assert graphs == GAMMAS_235


def test_prescribed_gamma_matches_companion():
    for (s, n, r) in [(1, 2, 3), (2, 3, 5), (2, 4, 4), (1, 3, 5)]:
        g = validate(s, n, r)
        for p in enumerate_fixed_points(g):
            assert prescribed_gamma(g, p.label) == companion_graph(g, p)


def test_ggraph_validation():
    g = validate(1, 2, 3)
    with pytest.raises(InvalidFixedPointError):
        GGraph.from_monomials(g, [(1, 0), (2, 0), (0, 1)])  # no constant
    with pytest.raises(InvalidFixedPointError):
        GGraph.from_monomials(g, [(0, 0), (2, 0), (0, 1)])  # gap below (2,0)
    with pytest.raises(InvalidFixedPointError):
        GGraph.from_monomials(g, [(0, 0), (1, 0)])  # too small
    with pytest.raises(InvalidFixedPointError):
        # division-closed and size 3, but weights 0,1,2,0: (1,1) repeats 0
        GGraph.from_monomials(g, [(0, 0), (1, 0), (0, 1), (1, 1)])


def test_fixed_point_ideal_minimality():
    with pytest.raises(InvalidFixedPointError):
        FixedPointIdeal(label=boundary_x_label(1), generators=((1, 0), (2, 0)))


def test_standard_monomials_runaway_ideal():
    g = validate(1, 2, 3)
    # <z1^2> alone is not zero-dimensional; the walk must hit the cap.
    with pytest.raises(InvalidFixedPointError):
        standard_monomials(g, [(2, 0)])


def test_standard_monomials_example():
    g = validate(1, 2, 3)
    std = standard_monomials(g, [(1, 0), (0, 3)])
    assert set(std) == {(0, 0), (0, 1), (0, 2)}


def test_search_matches_enumeration():
    for (s, n, r) in [(1, 2, 3), (2, 3, 5), (1, 3, 2), (2, 4, 3)]:
        g = validate(s, n, r)
        searched = {gr.key() for gr in search_ggraphs(g, g.r)}
        enumerated = {
            companion_graph(g, p).key() for p in enumerate_fixed_points(g)
        }
        assert searched == enumerated
        assert len(searched) == g.s * (g.n - g.s) * (g.r - 2) + g.n


def test_search_surface_case():
    g = validate(1, 2, 3)
    searched = {gr.key() for gr in search_ggraphs(g, 3)}
    assert searched == {
        frozenset({(0, 0), (1, 0), (2, 0)}),
        frozenset({(0, 0), (1, 0), (0, 1)}),
        frozenset({(0, 0), (0, 1), (0, 2)}),
    }


def test_search_cap_too_small():
    g = validate(2, 3, 5)
    with pytest.raises(ConfigurationError):
        search_ggraphs(g, 3)


def test_tangent_dimension_is_n(ctx_for):
    for (s, n, r) in [(2, 3, 5), (1, 2, 4), (2, 5, 6)]:
        ctx = ctx_for(s, n, r)
        assert all(d == n for d in ctx.tangent_dimensions)


def test_weight_class_candidates():
    g = validate(2, 3, 5)
    assert weight_class_candidates(g, 0) == [(0, 0, 0)]
    cands = set(weight_class_candidates(g, 2))
    # weight 2: first-block degree 3 or second-block degree 2
    assert cands == {(3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0), (0, 0, 2)}


def test_matching_surface_frozen():
    from fractions import Fraction as F

    from cychilb.toric import resolution_fan

    g = validate(1, 2, 3)
    fan = resolution_fan(g)
    graphs = tuple(companion_graph(g, p) for p in enumerate_fixed_points(g))
    matched = match_cones_to_ggraphs(g, fan, graphs)
    by_rays = {cone.rays: gr.key() for cone, gr in matched.items()}
    e1 = (F(1), F(0))
    e2 = (F(0), F(1))
    v1 = (F(2, 3), F(1, 3))
    v2 = (F(1, 3), F(2, 3))
    # The chart containing e_1 carries the cluster cut out by powers of the
    # weight-1 coordinate z_2, and symmetrically for e_2.
    assert by_rays[tuple(sorted((v1, e1)))] == frozenset({(0, 0), (0, 1), (0, 2)})
    assert by_rays[tuple(sorted((v1, v2)))] == frozenset({(0, 0), (1, 0), (0, 1)})
    assert by_rays[tuple(sorted((v2, e2)))] == frozenset({(0, 0), (1, 0), (2, 0)})


def test_matching_is_bijective(ctx_for):
    for (s, n, r) in [(1, 2, 3), (2, 3, 5), (2, 4, 4)]:
        ctx = ctx_for(s, n, r)
        matched = ctx.matching
        assert len(matched) == len(ctx.fan.maximal_cones)
        assert len({gr.key() for gr in matched.values()}) == len(matched)


def test_matching_rejects_unknown_graphs():
    g = validate(1, 2, 3)
    from cychilb.toric import resolution_fan

    fan = resolution_fan(g)
    graphs = tuple(
        companion_graph(g, p) for p in enumerate_fixed_points(g)
    )[:2]
    with pytest.raises(MatchFailure):
        match_cones_to_ggraphs(g, fan, graphs)


def test_labels_render():
    assert interior_label(1, 2, 3).render() == "interior(i=1,j=2,t=3)"
    assert boundary_x_label(2).render() == "boundary_x(j=2)"
    assert boundary_y_label(1).render() == "boundary_y(i=1)"


def test_tangent_dimension_direct():
    g = validate(2, 3, 5)
    for p in enumerate_fixed_points(g):
        assert tangent_dimension(g, p) == 3
