"""Recover potentials from labeled subdivisions and test conservativeness.

A normally labeled subdivision integrates up to a piecewise-affine
potential: constants propagate over a spanning tree of the region-adjacency
graph, and every non-tree adjacency is re-checked, which is exactly the
requirement that all closed-path integrals vanish.  Path integrals of the
induced correspondence are computed in closed form by splitting segments at
the facet crossings where the active piece changes; the tangential
component is single-valued on facets, so the selection does not matter.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from .complexes import LabeledSubdivision, edge_direction
from .errors import DegenerateInput, DomainError, NonConservative
from .exactmath import Vec, ZERO, dot, vsub
from .polyhedra import AffinePiece
from .valuation import PolyhedralFunction


@dataclass(frozen=True)
class Polyline:
    """Piecewise-linear path; closed paths return to the first waypoint."""

    waypoints: tuple[Vec, ...]
    closed: bool = False

    def __post_init__(self):
        if len(self.waypoints) < 2:
            raise DegenerateInput("a polyline needs at least two waypoints")


@dataclass(frozen=True)
class CorrespondenceSample:
    """Finite sample (p_k, q_k) of a correspondence, q_k in Q(p_k)."""

    pairs: tuple[tuple[Vec, Vec], ...]

    def __post_init__(self):
        if not self.pairs:
            raise DegenerateInput("empty correspondence sample")
        dims = {(len(p), len(q)) for p, q in self.pairs}
        if len(dims) != 1:
            raise DegenerateInput("inconsistent sample dimensions")


# ---------------------------------------------------------------------------
# integration of subdivisions
# ---------------------------------------------------------------------------


def _facet_point(s: LabeledSubdivision, edge_id: int) -> Vec:
    # Any exact point of the shared facet works; segment and ray endpoints
    # are 0-cells, a full line carries its canonical anchor.
    return s.cells[edge_id].points[0]


def _constant_step(
    s: LabeledSubdivision, from_region: int, to_region: int, point: Vec
) -> Fraction:
    li = s.region_labels[from_region]
    lj = s.region_labels[to_region]
    if s.convention == "max":
        return dot(point, vsub(lj, li))
    return dot(point, vsub(li, lj))


def integrate_subdivision(
    s: LabeledSubdivision, anchor: tuple[int, Fraction]
) -> PolyhedralFunction:
    """Rebuild the potential whose projected subdifferential is ``s``.

    ``anchor`` fixes the intercept of one region's affine piece.  Raises
    :class:`NonConservative` with a witnessing region cycle when the labels
    admit no single potential.
    """
    regions = s.regions()
    if not regions:
        raise DegenerateInput("subdivision has no regions to integrate")
    anchor_region, anchor_value = anchor
    if anchor_region not in s.region_labels:
        raise DegenerateInput(f"anchor region {anchor_region} is not a region")

    adjacency: dict[int, list[tuple[int, int]]] = {r: [] for r in regions}
    for edge_id, fd in sorted(s.facet_data.items()):
        adjacency[fd.from_region].append((fd.to_region, edge_id))
        adjacency[fd.to_region].append((fd.from_region, edge_id))
        # A label difference that is not perpendicular to its facet cannot
        # come from a potential: the two pieces would disagree along it.
        diff = vsub(s.region_labels[fd.from_region], s.region_labels[fd.to_region])
        if dot(diff, edge_direction(s.cells[edge_id])) != 0:
            raise NonConservative(
                f"label difference across edge {edge_id} is not normal to it",
                cycle=(fd.from_region, fd.to_region, fd.from_region),
            )

    constants: dict[int, Fraction] = {anchor_region: Fraction(anchor_value)}
    parent: dict[int, int] = {anchor_region: anchor_region}
    tree_edges: set[int] = set()
    queue = deque([anchor_region])
    while queue:
        current = queue.popleft()
        for neighbor, edge_id in sorted(adjacency[current]):
            if neighbor in constants:
                continue
            point = _facet_point(s, edge_id)
            constants[neighbor] = constants[current] + _constant_step(
                s, current, neighbor, point
            )
            parent[neighbor] = current
            tree_edges.add(edge_id)
            queue.append(neighbor)

    if len(constants) != len(regions):
        missing = [r for r in regions if r not in constants]
        raise DegenerateInput(
            f"region adjacency graph is disconnected (unreached: {missing})"
        )

    for edge_id, fd in sorted(s.facet_data.items()):
        if edge_id in tree_edges:
            continue
        point = _facet_point(s, edge_id)
        expected = constants[fd.from_region] + _constant_step(
            s, fd.from_region, fd.to_region, point
        )
        if constants[fd.to_region] != expected:
            cycle = _tree_cycle(parent, fd.from_region, fd.to_region)
            raise NonConservative(
                f"inconsistent constant across edge {edge_id}: "
                f"{constants[fd.to_region]} != {expected}",
                cycle=cycle,
            )

    pieces = set()
    for region in regions:
        label = s.region_labels[region]
        if s.convention == "max":
            slope = tuple(-c for c in label)
        else:
            slope = label
        pieces.add(AffinePiece(slope=slope, intercept=constants[region]))
    ordered = tuple(sorted(pieces, key=lambda p: (p.slope, p.intercept)))
    return PolyhedralFunction(s.convention, ordered, s.domain)


def _tree_cycle(parent: dict[int, int], a: int, b: int) -> tuple[int, ...]:
    def ancestry(x: int) -> list[int]:
        chain = [x]
        while parent[x] != x:
            x = parent[x]
            chain.append(x)
        return chain

    up_a = ancestry(a)
    up_b = ancestry(b)
    set_b = set(up_b)
    meet_idx = next(i for i, node in enumerate(up_a) if node in set_b)
    meet = up_a[meet_idx]
    down_b = up_b[: up_b.index(meet) + 1]
    return tuple(up_a[: meet_idx + 1] + list(reversed(down_b[:-1])) + [a])


# ---------------------------------------------------------------------------
# path integrals
# ---------------------------------------------------------------------------


def path_integral(f: PolyhedralFunction, path: Polyline) -> Fraction:
    """Exact integral of the induced correspondence along a polyline.

    For a convex max-of-affine potential the correspondence is the demand
    selection (minus the active slope); for a concave min-of-affine
    potential it is the active slope itself.  Each segment is split at the
    parameters where the active piece changes.
    """
    points = list(path.waypoints)
    if path.closed:
        points.append(points[0])
    for p in points:
        if not f.domain.contains(p):
            raise DomainError(f"waypoint {p} is outside the potential's domain")

    total = ZERO
    for a, b in zip(points, points[1:]):
        if a == b:
            continue
        step = vsub(b, a)
        cuts = {ZERO, Fraction(1)}
        n_pieces = len(f.pieces)
        for i in range(n_pieces):
            for j in range(i + 1, n_pieces):
                si, sj = f.pieces[i], f.pieces[j]
                rate = dot(vsub(si.slope, sj.slope), step)
                if rate == 0:
                    continue
                gap = (sj.intercept + dot(sj.slope, a)) - (
                    si.intercept + dot(si.slope, a)
                )
                t = gap / rate
                if 0 < t < 1:
                    cuts.add(t)
        ordered = sorted(cuts)
        for t0, t1 in zip(ordered, ordered[1:]):
            mid = (t0 + t1) / 2
            x = tuple(pa + mid * d for pa, d in zip(a, step))
            active = _active_piece(f, x)
            selection = (
                tuple(-c for c in active.slope)
                if f.convention == "max"
                else active.slope
            )
            delta = tuple((t1 - t0) * d for d in step)
            total += dot(selection, delta)
    return total


def _active_piece(f: PolyhedralFunction, x: Vec) -> AffinePiece:
    best = None
    best_value = None
    for piece in f.pieces:
        value = piece.evaluate(x)
        if (
            best_value is None
            or (f.convention == "max" and value > best_value)
            or (f.convention == "min" and value < best_value)
        ):
            best, best_value = piece, value
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# cyclic monotonicity
# ---------------------------------------------------------------------------


def check_cyclic_monotonicity(
    data: CorrespondenceSample, direction: str = "demand"
) -> tuple[bool, tuple[int, ...] | None]:
    """Test the cycle inequalities of a sampled monotone correspondence.

    With the decreasing (demand) convention, every cycle must satisfy
    sum_k q_k . (p_{k+1} - p_k) >= 0; a violating cycle is therefore a
    negative-total cycle of the complete digraph with arc weight
    w(i -> j) = q_i . (p_j - p_i).  The inverse direction swaps the roles
    of prices and bundles.  Detection is exact Bellman-Ford; the witness is
    a violating cycle as a tuple of sample indices.
    """
    if direction not in ("demand", "inverse"):
        raise DegenerateInput(f"unknown direction {direction!r}")
    pairs = data.pairs
    k = len(pairs)
    if k == 1:
        return True, None

    def weight(i: int, j: int) -> Fraction:
        pi, qi = pairs[i]
        pj, qj = pairs[j]
        if direction == "demand":
            return dot(qi, vsub(pj, pi))
        return dot(pi, vsub(qj, qi))

    dist = [ZERO for _ in range(k)]
    pred: list[int | None] = [None for _ in range(k)]
    witness_node = None
    for round_ in range(k):
        changed = False
        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                candidate = dist[i] + weight(i, j)
                if candidate < dist[j]:
                    dist[j] = candidate
                    pred[j] = i
                    changed = True
                    if round_ == k - 1:
                        witness_node = j
        if not changed:
            return True, None
    if witness_node is None:
        return True, None

    # Walk predecessors k steps to make sure we are on the cycle itself.
    node = witness_node
    for _ in range(k):
        node = pred[node]  # type: ignore[assignment]
    cycle = [node]
    cursor = pred[node]
    while cursor != node:
        cycle.append(cursor)  # type: ignore[arg-type]
        cursor = pred[cursor]  # type: ignore[index]
    cycle.reverse()
    start = cycle.index(min(cycle))
    cycle = cycle[start:] + cycle[:start]
    return False, tuple(cycle)
