import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropical_demand import (
    AffinePiece,
    DegenerateInput,
    EmptyCell,
    HPolyhedron,
    HalfSpace,
    LinearProgram,
    polygon_from_halfspaces,
    reduce,
    simplex_solve,
    upper_concave_hull,
)
from tropical_demand.exactmath import dot, solve_linear_system

F = Fraction


def hs(normal, offset) -> HalfSpace:
    return HalfSpace(normal=tuple(F(c) for c in normal), offset=F(offset))


# ---------------------------------------------------------------------------
# upper concave hull
# ---------------------------------------------------------------------------


def test_hull_of_five_bundle_valuation():
    points = [((0, 0), F(0)), ((2, 0), F(16)), ((1, 1), F(24)), ((0, 2), F(28)), ((2, 2), F(34))]
    pieces, hull = upper_concave_hull(points)
    got = {(p.slope, p.intercept) for p in pieces}
    assert got == {
        ((F(1), F(9)), F(14)),
        ((F(3), F(7)), F(14)),
        ((F(8), F(16)), F(0)),
        ((F(10), F(14)), F(0)),
    }
    assert hull == {0, 1, 2, 3, 4}


def test_hull_single_point():
    pieces, hull = upper_concave_hull([((0, 0), F(0))])
    assert len(pieces) == 1
    assert pieces[0].slope == (F(0), F(0)) and pieces[0].intercept == 0
    assert hull == {0}


def test_hull_one_dimensional_chord():
    # Independent oracle: the middle point lies strictly below the chord
    # through the outer points, (0 + 4) / 2 = 2 > 1.
    points = [((0,), F(0)), ((1,), F(1)), ((2,), F(4))]
    chord_mid = (points[0][1] + points[2][1]) / 2
    assert points[1][1] < chord_mid
    pieces, hull = upper_concave_hull(points)
    assert hull == {0, 2}
    assert min(p.evaluate((F(1),)) for p in pieces) == 2


def test_hull_duplicate_bundles_rejected():
    with pytest.raises(DegenerateInput):
        upper_concave_hull([((0, 0), F(0)), ((0, 0), F(1))])


def test_hull_collinear_bundles_in_two_goods():
    points = [((0, 0), F(0)), ((1, 1), F(5)), ((2, 2), F(6))]
    pieces, hull = upper_concave_hull(points)
    assert hull == {0, 1, 2}
    for q, u in points:
        assert min(p.evaluate(q) for p in pieces) == u


@settings(max_examples=60)
@given(
    st.dictionaries(
        st.tuples(st.integers(0, 4), st.integers(0, 4)),
        st.integers(0, 50),
        min_size=1,
        max_size=8,
    )
)
def test_hull_majorizes_with_equality_exactly_on_hull(entries):
    points = sorted((q, F(u)) for q, u in entries.items())
    pieces, hull = upper_concave_hull(points)
    for i, (q, u) in enumerate(points):
        envelope = min(p.evaluate(q) for p in pieces)
        assert envelope >= u
        assert (envelope == u) == (i in hull)


# ---------------------------------------------------------------------------
# simplex
# ---------------------------------------------------------------------------


def test_simplex_box_lp():
    lp = LinearProgram(
        objective=(F(1), F(1)),
        sense="min",
        constraints=(hs((-1, 0), -25), hs((0, -1), -45)),
    )
    res = simplex_solve(lp)
    assert res.status == "optimal"
    assert res.value == 70 and res.point == (F(25), F(45))
    assert res.unique is True


def test_simplex_two_consumer_epigraph_lp():
    # Variables (t1, t2, pA, pB): minimize t1 + t2 + pA + pB with t_i above
    # every surplus piece of its consumer; the exact minimum is 75 at
    # prices (25, 45).
    rows = []
    for i, pieces in enumerate(
        [
            [((0, 0), 0), ((1, 0), 30), ((0, 1), 50), ((1, 1), 60)],
            [((0, 0), 0), ((1, 0), 10), ((0, 1), 30), ((1, 1), 70)],
        ]
    ):
        for bundle, value in pieces:
            normal = [F(0)] * 4
            normal[i] = F(-1)
            normal[2] = F(-bundle[0])
            normal[3] = F(-bundle[1])
            rows.append(HalfSpace(normal=tuple(normal), offset=F(-value)))
    lp = LinearProgram(
        objective=(F(1), F(1), F(1), F(1)),
        sense="min",
        constraints=tuple(rows),
        nonneg=(False, False, True, True),
    )
    res = simplex_solve(lp)
    assert res.status == "optimal"
    assert res.value == 75
    assert res.point[2:] == (F(25), F(45))
    assert res.unique is True


def test_simplex_max_direction():
    lp = LinearProgram(
        objective=(F(1),),
        sense="max",
        constraints=(hs((1,), 3),),
        nonneg=(True,),
    )
    res = simplex_solve(lp)
    assert res.status == "optimal" and res.value == 3 and res.point == (F(3),)


def test_simplex_unbounded():
    lp = LinearProgram(objective=(F(1),), sense="max", constraints=(hs((-1,), 0),))
    assert simplex_solve(lp).status == "unbounded"


def test_simplex_infeasible():
    lp = LinearProgram(
        objective=(F(1),),
        sense="min",
        constraints=(hs((1,), 0), hs((-1,), -1)),
    )
    assert simplex_solve(lp).status == "infeasible"


def test_simplex_reports_non_unique_optimum():
    # min x + y on the simplex x + y >= 1: the whole edge is optimal.
    lp = LinearProgram(
        objective=(F(1), F(1)),
        sense="min",
        constraints=(hs((-1, -1), -1),),
        nonneg=(True, True),
    )
    res = simplex_solve(lp)
    assert res.status == "optimal" and res.value == 1
    assert res.unique is False


def _brute_force_lp(lp: LinearProgram):
    """Independent oracle: intersect all n-subsets of tight constraints,
    filter feasible, take the best vertex.  Assumes a bounded feasible
    region (callers include box constraints)."""
    n = len(lp.objective)
    rows = [(h.normal, h.offset) for h in lp.constraints]
    rows += [(row, b) for row, b in lp.equalities]
    for j, flag in enumerate(lp.nonneg or ()):
        if flag:
            rows.append((tuple(F(-1 if k == j else 0) for k in range(n)), F(0)))
    best = None
    for subset in itertools.combinations(range(len(rows)), n):
        mat = [list(rows[i][0]) for i in subset]
        rhs = [rows[i][1] for i in subset]
        x = solve_linear_system(mat, rhs)
        if x is None:
            continue
        if any(dot(h.normal, x) > h.offset for h in lp.constraints):
            continue
        if any(dot(row, x) != b for row, b in lp.equalities):
            continue
        if any(flag and x[j] < 0 for j, flag in enumerate(lp.nonneg or ())):
            continue
        value = dot(lp.objective, x)
        if best is None:
            best = value
        elif lp.sense == "min":
            best = min(best, value)
        else:
            best = max(best, value)
    return best


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(lambda v: v != (0, 0)),
            st.integers(-5, 10),
        ),
        max_size=4,
    ),
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(lambda v: v != (0, 0)),
    st.sampled_from(["min", "max"]),
)
def test_simplex_matches_brute_force(raw_rows, objective, sense):
    box = [hs((1, 0), 6), hs((-1, 0), 6), hs((0, 1), 6), hs((0, -1), 6)]
    constraints = tuple(box + [hs(normal, offset) for normal, offset in raw_rows])
    lp = LinearProgram(
        objective=tuple(F(c) for c in objective),
        sense=sense,
        constraints=constraints,
    )
    res = simplex_solve(lp, probe_unique=False)
    expected = _brute_force_lp(lp)
    if expected is None:
        assert res.status == "infeasible"
    else:
        assert res.status == "optimal"
        assert res.value == expected


# ---------------------------------------------------------------------------
# polygon extraction
# ---------------------------------------------------------------------------


def test_polygon_of_zero_bundle_region():
    # Prices at which the empty bundle is demanded in the five-bundle
    # valuation; derived by solving the pairwise ties by hand.
    poly = HPolyhedron(
        2,
        (
            hs((-2, 0), -16),
            hs((-1, -1), -24),
            hs((0, -2), -28),
            hs((-2, -2), -34),
        ),
    )
    out = polygon_from_halfspaces(poly)
    assert out.kind == "unbounded"
    assert set(out.vertices) == {(F(8), F(16)), (F(10), F(14))}
    assert set(out.rays) == {(1, 0), (0, 1)}


def test_polygon_unit_square():
    poly = HPolyhedron(
        2, (hs((1, 0), 1), hs((-1, 0), 0), hs((0, 1), 1), hs((0, -1), 0))
    )
    out = polygon_from_halfspaces(poly)
    assert out.kind == "bounded" and not out.rays
    assert set(out.vertices) == {(F(0), F(0)), (F(1), F(0)), (F(1), F(1)), (F(0), F(1))}
    # counterclockwise: positive signed area
    area = sum(
        out.vertices[i][0] * out.vertices[(i + 1) % 4][1]
        - out.vertices[(i + 1) % 4][0] * out.vertices[i][1]
        for i in range(4)
    )
    assert area > 0


def test_polygon_empty():
    with pytest.raises(EmptyCell):
        polygon_from_halfspaces(HPolyhedron(2, (hs((1, 0), 0), hs((-1, 0), -1))))


def test_polygon_full_plane():
    out = polygon_from_halfspaces(HPolyhedron(2, ()))
    assert out.kind == "plane" and not out.vertices and not out.rays


def test_polygon_halfplane_is_unpointed():
    out = polygon_from_halfspaces(HPolyhedron(2, (hs((1, 0), 2),)))
    assert out.kind == "unpointed"
    assert set(out.rays) == {(0, 1), (0, -1)}


def test_polygon_vertices_satisfy_constraints():
    poly = HPolyhedron(
        2,
        (hs((1, 1), 4), hs((-1, 2), 3), hs((0, -1), 0), hs((-1, -3), 1)),
    )
    out = polygon_from_halfspaces(poly)
    for vertex in out.vertices:
        tight = sum(1 for h in poly.halfspaces if dot(h.normal, vertex) == h.offset)
        assert tight >= 2
        assert all(dot(h.normal, vertex) <= h.offset for h in poly.halfspaces)


# ---------------------------------------------------------------------------
# reduce
# ---------------------------------------------------------------------------


def test_reduce_drops_dominated_row():
    poly = HPolyhedron(1, (hs((1,), 1), hs((1,), 2)))
    out = reduce(poly)
    assert out.halfspaces == (hs((1,), 1),)


def test_reduce_drops_constraint_touching_in_one_point():
    # x + y <= 2 only touches the box at its corner; removing it does not
    # enlarge the set, so an irredundant representation drops it.
    poly = HPolyhedron(2, (hs((1, 1), 2), hs((1, 0), 1), hs((0, 1), 1)))
    out = reduce(poly)
    assert set(out.halfspaces) == {hs((1, 0), 1), hs((0, 1), 1)}


def test_reduce_keeps_supporting_rows():
    poly = HPolyhedron(2, (hs((1, 1), 2), hs((1, 0), F(3, 2)), hs((0, 1), F(3, 2))))
    out = reduce(poly)
    # Each constraint cuts a corner off the other two: all are irredundant.
    assert set(out.halfspaces) == set(poly.halfspaces)


def test_reduce_empty_input_is_whole_space():
    poly = HPolyhedron(2, ())
    assert reduce(poly).halfspaces == ()


def test_affine_piece_evaluation():
    piece = AffinePiece(slope=(F(2), F(-1)), intercept=F(3))
    assert piece.evaluate((F(1), F(1))) == 4
