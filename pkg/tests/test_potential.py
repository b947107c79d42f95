import dataclasses
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropical_demand import (
    CorrespondenceSample,
    DegenerateInput,
    DomainError,
    NonConservative,
    Polyline,
    check_cyclic_monotonicity,
    demand,
    demand_complex,
    dualize,
    essential_pieces,
    indirect_utility,
    integrate_subdivision,
    path_integral,
    price_complex,
)

from conftest import make_valuation, price_vectors, valuations

F = Fraction


def vec(*cs):
    return tuple(F(c) for c in cs)


def region_by_label(s, label):
    want = tuple(F(c) for c in label)
    return next(r for r in s.regions() if s.region_labels[r] == want)


# ---------------------------------------------------------------------------
# integrate_subdivision
# ---------------------------------------------------------------------------


def test_integrate_price_complex_recovers_indirect_utility(five_bundle_valuation):
    s = price_complex(five_bundle_valuation)
    anchor = (region_by_label(s, (0, 0)), F(0))
    potential = integrate_subdivision(s, anchor)
    assert potential.convention == "max"
    got = {(p.slope, p.intercept) for p in potential.pieces}
    assert got == {
        ((F(0), F(0)), F(0)),
        ((F(-2), F(0)), F(16)),
        ((F(-1), F(-1)), F(24)),
        ((F(0), F(-2)), F(28)),
        ((F(-2), F(-2)), F(34)),
    }


def test_integrate_demand_complex_recovers_dual(five_bundle_valuation):
    s = demand_complex(five_bundle_valuation)
    anchor = (region_by_label(s, (8, 16)), F(0))
    potential = integrate_subdivision(s, anchor)
    assert potential.convention == "min"
    got = {(p.slope, p.intercept) for p in potential.pieces}
    assert got == {
        ((F(1), F(9)), F(14)),
        ((F(3), F(7)), F(14)),
        ((F(8), F(16)), F(0)),
        ((F(10), F(14)), F(0)),
    }


def test_integrate_detects_perturbed_label(five_bundle_valuation):
    s = price_complex(five_bundle_valuation)
    bad_region = region_by_label(s, (1, 1))
    labels = dict(s.region_labels)
    labels[bad_region] = (F(3), F(0))
    tampered = dataclasses.replace(s, region_labels=labels)
    anchor = (region_by_label(s, (0, 0)), F(0))
    with pytest.raises(NonConservative) as err:
        integrate_subdivision(tampered, anchor)
    assert err.value.cycle is not None
    assert bad_region in err.value.cycle


def test_integrate_one_region_complex():
    s = price_complex(make_valuation({(0, 0): 0}))
    potential = integrate_subdivision(s, (s.regions()[0], F(7)))
    assert len(potential.pieces) == 1
    assert potential.pieces[0].intercept == 7


def test_integrate_rejects_unknown_anchor(five_bundle_valuation):
    s = price_complex(five_bundle_valuation)
    with pytest.raises(DegenerateInput):
        integrate_subdivision(s, (10_000, F(0)))


@settings(max_examples=40, deadline=None)
@given(valuations())
def test_integrate_roundtrip_on_random_valuations(v):
    s = price_complex(v)
    anchor_region = s.regions()[0]
    bundle = tuple(int(c) for c in s.region_labels[anchor_region])
    potential = integrate_subdivision(s, (anchor_region, v.entries[bundle]))
    assert frozenset(potential.pieces) == essential_pieces(indirect_utility(v))


# ---------------------------------------------------------------------------
# path_integral
# ---------------------------------------------------------------------------


def test_closed_loop_through_all_vertices_vanishes(five_bundle_valuation):
    f = indirect_utility(five_bundle_valuation)
    loop = Polyline(
        waypoints=(vec(1, 9), vec(3, 7), vec(10, 14), vec(8, 16)), closed=True
    )
    assert path_integral(f, loop) == 0


def test_open_path_equals_potential_difference(five_bundle_valuation):
    # The selection integral of demand from p0 to p equals V(p0) - V(p).
    f = indirect_utility(five_bundle_valuation)
    path = Polyline(waypoints=(vec(0, 0), vec(8, 16)))
    assert path_integral(f, path) == f.evaluate(vec(0, 0)) - f.evaluate(vec(8, 16))
    assert path_integral(f, path) == 34


def test_constant_potential_loop():
    f = indirect_utility(make_valuation({(0, 0): 0}))
    loop = Polyline(waypoints=(vec(1, 1), vec(5, 2), vec(3, 9)), closed=True)
    assert path_integral(f, loop) == 0


def test_path_outside_domain(five_bundle_valuation):
    dual = dualize(five_bundle_valuation)  # domain is the bundle hull
    with pytest.raises(DomainError):
        path_integral(dual, Polyline(waypoints=(vec(0, 0), vec(5, 5))))


def test_path_along_a_facet_uses_the_single_valued_tangent(five_bundle_valuation):
    # The segment from (8,16) to (10,14) lies inside the facet between the
    # regions of bundles (0,0) and (1,1); any selection gives the same
    # tangential contribution.
    f = indirect_utility(five_bundle_valuation)
    path = Polyline(waypoints=(vec(8, 16), vec(10, 14)))
    assert path_integral(f, path) == f.evaluate(vec(8, 16)) - f.evaluate(vec(10, 14))


@settings(max_examples=30, deadline=None)
@given(
    valuations(max_bundles=6),
    st.lists(price_vectors(), min_size=2, max_size=6),
)
def test_closed_polyline_integrals_vanish(v, waypoints):
    f = indirect_utility(v)
    loop = Polyline(waypoints=tuple(waypoints), closed=True)
    assert path_integral(f, loop) == 0


@settings(max_examples=30, deadline=None)
@given(
    valuations(max_bundles=6),
    st.lists(price_vectors(), min_size=2, max_size=6),
)
def test_open_polyline_integrals_are_path_independent(v, waypoints):
    f = indirect_utility(v)
    path = Polyline(waypoints=tuple(waypoints))
    direct = Polyline(waypoints=(waypoints[0], waypoints[-1]))
    expected = f.evaluate(waypoints[0]) - f.evaluate(waypoints[-1])
    assert path_integral(f, path) == expected
    assert path_integral(f, direct) == expected


# ---------------------------------------------------------------------------
# cyclic monotonicity
# ---------------------------------------------------------------------------


def test_demand_samples_are_cyclically_monotone(five_bundle_valuation):
    import random

    rng = random.Random(11)
    pairs = []
    for _ in range(25):
        p = (F(rng.randint(-5, 30)), F(rng.randint(-5, 30)))
        q = sorted(demand(five_bundle_valuation, p).bundles)[rng.randrange(
            len(demand(five_bundle_valuation, p).bundles)
        )]
        pairs.append((p, tuple(F(c) for c in q)))
    ok, witness = check_cyclic_monotonicity(CorrespondenceSample(pairs=tuple(pairs)))
    assert ok and witness is None


def test_increasing_univariate_data_fails_with_two_cycle():
    sample = CorrespondenceSample(pairs=(((F(0),), (F(0),)), ((F(1),), (F(1),))))
    ok, witness = check_cyclic_monotonicity(sample)
    assert not ok
    assert witness is not None and sorted(witness) == [0, 1]
    # the K=2 inequality fails: (q2-q1)(p2-p1) = 1 > 0
    assert (1 - 0) * (1 - 0) > 0


def test_single_pair_is_vacuously_monotone():
    sample = CorrespondenceSample(pairs=(((F(3),), (F(2),)),))
    ok, witness = check_cyclic_monotonicity(sample)
    assert ok and witness is None


def test_inverse_direction_swaps_roles():
    # Decreasing data: fine in both directions; the inverse test reads the
    # same pairs as samples of p(q).
    pairs = (((F(0),), (F(5),)), ((F(2),), (F(1),)), ((F(4),), (F(0),)))
    sample = CorrespondenceSample(pairs=pairs)
    assert check_cyclic_monotonicity(sample, "demand")[0]
    assert check_cyclic_monotonicity(sample, "inverse")[0]
    increasing = CorrespondenceSample(pairs=(((F(0),), (F(0),)), ((F(1),), (F(1),))))
    assert not check_cyclic_monotonicity(increasing, "inverse")[0]


def test_unknown_direction_rejected():
    sample = CorrespondenceSample(pairs=(((F(0),), (F(0),)),))
    with pytest.raises(DegenerateInput):
        check_cyclic_monotonicity(sample, "sideways")


@settings(max_examples=25, deadline=None)
@given(valuations(max_bundles=6), st.lists(price_vectors(), min_size=2, max_size=8), st.randoms())
def test_cyclic_monotonicity_is_selection_invariant(v, prices, rng):
    pairs = []
    for p in prices:
        options = sorted(demand(v, p).bundles)
        q = options[rng.randrange(len(options))]
        pairs.append((p, tuple(F(c) for c in q)))
    ok, _ = check_cyclic_monotonicity(CorrespondenceSample(pairs=tuple(pairs)))
    assert ok
