"""Normally labeled polyhedral subdivisions of the plane.

The subdivision induced by a piecewise-affine function: 2-cells where one
piece is active, 1-cells where two tie, 0-cells where three or more meet.
Region labels encode the active piece; each interior facet stores a weight
and a primitive integer normal with the invariant

    label(from) - label(to) == weight * normal,

where the normal points geometrically from the ``from`` region into the
``to`` region (labels decrease along facet normals, the decreasing-demand
convention).  At every interior vertex the weighted normals of the incident
facets, oriented counterclockwise, sum to zero; that balancing condition is
what makes the subdivision integrable back to a potential.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateInput,
    NonConservative,
    UnsupportedDimension,
)
from .exactmath import (
    IVec,
    Vec,
    ZERO,
    cross2,
    dot,
    independent_directions,
    is_primitive,
    ivec_to_vec,
    rational_direction,
    rot90ccw,
    vsub,
)
from .polyhedra import (
    HPolyhedron,
    HalfSpace,
    Polygon2,
    convex_hull_halfspaces,
    dedupe_halfspaces,
    interior_point,
    polygon_from_halfspaces,
)
from .valuation import Valuation, dualize, indirect_utility


@dataclass(frozen=True)
class Cell:
    """One cell of a subdivision.

    dim 0: points = (location,).
    dim 1: segment (two points), ray (point + direction), or full line
           (anchor point + both directions).
    dim 2: ccw vertex chain plus up to two recession rays; a chain with no
           points and no rays is the whole plane.
    incident lists the ids of the cell's boundary cells.
    """

    dim: int
    points: tuple[Vec, ...]
    rays: tuple[IVec, ...]
    incident: tuple[int, ...]


@dataclass(frozen=True)
class FacetData:
    weight: Fraction
    normal: IVec
    from_region: int
    to_region: int


@dataclass(frozen=True)
class LabeledSubdivision:
    ambient_dim: int
    convention: str  # potential convention this subdivision integrates to
    domain: HPolyhedron
    cells: dict[int, Cell]
    region_labels: dict[int, Vec]
    facet_data: dict[int, FacetData]

    def vertices(self) -> list[int]:
        return sorted(i for i, c in self.cells.items() if c.dim == 0)

    def edges(self) -> list[int]:
        return sorted(i for i, c in self.cells.items() if c.dim == 1)

    def regions(self) -> list[int]:
        return sorted(i for i, c in self.cells.items() if c.dim == 2)

    def boundary_edges(self) -> list[int]:
        return [e for e in self.edges() if e not in self.facet_data]


@dataclass(frozen=True)
class VertexBalance:
    point: Vec
    residual: Vec
    balanced: bool
    contributions: tuple[tuple[Fraction, IVec], ...]  # ccw-oriented (weight, normal)


@dataclass(frozen=True)
class BalanceReport:
    per_vertex: dict[int, VertexBalance]
    skipped_boundary: tuple[int, ...]
    overall: bool


@dataclass(frozen=True)
class LabelingViolation:
    edge: int
    message: str


# ---------------------------------------------------------------------------
# geometry helpers
# ---------------------------------------------------------------------------


def _edge_kind(cell: Cell) -> str:
    if len(cell.points) == 2:
        return "segment"
    if len(cell.rays) == 1:
        return "ray"
    return "line"


def edge_direction(cell: Cell) -> Vec:
    if _edge_kind(cell) == "segment":
        return vsub(cell.points[1], cell.points[0])
    return ivec_to_vec(cell.rays[0])


def _angle_class(v: Sequence[Fraction | int]) -> int:
    if v[1] > 0 or (v[1] == 0 and v[0] > 0):
        return 0
    return 1


def _ccw_cmp(a: Vec, b: Vec) -> int:
    ca, cb = _angle_class(a), _angle_class(b)
    if ca != cb:
        return -1 if ca < cb else 1
    cr = cross2(a, b)
    if cr > 0:
        return -1
    if cr < 0:
        return 1
    return 0


def _sort_ccw(items: list, key) -> list:
    return sorted(items, key=functools.cmp_to_key(lambda x, y: _ccw_cmp(key(x), key(y))))


def _hull_chain_ccw(points: Sequence[Vec]) -> tuple[Vec, ...]:
    """CCW convex hull chain (strict corners only), starting at the lex-min point."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)

    def half(iterable):
        chain: list[Vec] = []
        for p in iterable:
            while len(chain) >= 2 and cross2(vsub(chain[-1], chain[-2]), vsub(p, chain[-2])) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    return tuple(lower[:-1] + upper[:-1])


def _canonical_line(p0: Vec, d: Vec) -> tuple[Vec, tuple[IVec, IVec]]:
    n = rot90ccw(d)
    c = dot(n, p0)
    nn = dot(n, n)
    anchor = tuple(c / nn * x for x in n)
    prim, _ = rational_direction(d)
    neg = tuple(-x for x in prim)
    return anchor, tuple(sorted((prim, neg)))  # type: ignore[return-value]


def _region_representative(cell: Cell) -> Vec | None:
    """A point inside the region (exact for convex chains), None if unknown."""
    if cell.dim != 2:
        return None
    if not cell.points and not cell.rays:
        return (ZERO, ZERO)  # whole plane
    if not cell.points:
        return None
    k = Fraction(len(cell.points))
    avg = tuple(sum(p[i] for p in cell.points) / k for i in range(2))
    for r in cell.rays:
        avg = tuple(a + Fraction(x) for a, x in zip(avg, r))
    return avg


# ---------------------------------------------------------------------------
# construction from affine pieces
# ---------------------------------------------------------------------------


def _active_region_halfspaces(
    pieces, k: int, convention: str, domain: HPolyhedron
) -> list[HalfSpace]:
    out: list[HalfSpace] = []
    for j, other in enumerate(pieces):
        if j == k:
            continue
        if convention == "max":
            normal = vsub(other.slope, pieces[k].slope)
            offset = pieces[k].intercept - other.intercept
        else:
            normal = vsub(pieces[k].slope, other.slope)
            offset = other.intercept - pieces[k].intercept
        if all(c == 0 for c in normal):
            continue
        out.append(HalfSpace(normal=normal, offset=offset))
    out.extend(domain.halfspaces)
    return out


def _clamp_line(
    halfspaces: Sequence[HalfSpace], p0: Vec, d: Vec
) -> tuple[Fraction | None, Fraction | None] | None:
    lo: Fraction | None = None
    hi: Fraction | None = None
    for h in halfspaces:
        k = dot(h.normal, d)
        c = h.offset - dot(h.normal, p0)
        if k == 0:
            if c < 0:
                return None
        elif k > 0:
            bound = c / k
            if hi is None or bound < hi:
                hi = bound
        else:
            bound = c / k
            if lo is None or bound > lo:
                lo = bound
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


@dataclass
class _EdgeDraft:
    points: tuple[Vec, ...]
    rays: tuple[IVec, ...]
    facet: tuple[int, int] | None  # region keys (from, to)
    weight: Fraction | None
    normal: IVec | None
    owner: int | None  # region key for boundary edges

    def sort_key(self):
        return (len(self.points), self.points, self.rays)


def _edge_draft_from_interval(
    p0: Vec, d: Vec, lo: Fraction | None, hi: Fraction | None
) -> tuple[tuple[Vec, ...], tuple[IVec, ...]] | None:
    if lo is not None and hi is not None:
        if lo == hi:
            return None
        a = tuple(x + lo * y for x, y in zip(p0, d))
        b = tuple(x + hi * y for x, y in zip(p0, d))
        return tuple(sorted((a, b))), ()
    if lo is None and hi is None:
        anchor, dirs = _canonical_line(p0, d)
        return (anchor,), dirs
    if hi is None:
        start = tuple(x + lo * y for x, y in zip(p0, d))
        prim, _ = rational_direction(d)
        return (start,), (prim,)
    end = tuple(x + hi * y for x, y in zip(p0, d))
    prim, _ = rational_direction(tuple(-y for y in d))
    return (end,), (prim,)


def _subdivision_from_pieces(
    pieces, labels: Sequence[Vec], convention: str, domain: HPolyhedron
) -> LabeledSubdivision:
    domain = HPolyhedron(2, dedupe_halfspaces(domain.halfspaces))
    keep: list[int] = []
    region_hs: dict[int, list[HalfSpace]] = {}
    for k in range(len(pieces)):
        hs = _active_region_halfspaces(pieces, k, convention, domain)
        if interior_point(HPolyhedron(2, tuple(hs))) is not None:
            keep.append(k)
            region_hs[k] = hs

    edges: list[_EdgeDraft] = []
    for idx, k in enumerate(keep):
        for l in keep[idx + 1 :]:
            normal = vsub(pieces[k].slope, pieces[l].slope)
            if all(c == 0 for c in normal):
                continue
            offset = pieces[l].intercept - pieces[k].intercept
            line = HalfSpace(normal=normal, offset=offset)
            p0 = _point_on_line(line)
            d = rot90ccw(normal)
            interval = _clamp_line(region_hs[k], p0, d)
            if interval is None:
                continue
            geom = _edge_draft_from_interval(p0, d, *interval)
            if geom is None:
                continue
            diff = vsub(labels[k], labels[l])
            prim, weight = rational_direction(diff)
            edges.append(
                _EdgeDraft(
                    points=geom[0],
                    rays=geom[1],
                    facet=(k, l),
                    weight=weight,
                    normal=prim,
                    owner=None,
                )
            )

    for h in domain.halfspaces:
        p0 = _point_on_line(h)
        d = rot90ccw(h.normal)
        for k in keep:
            others = [x for x in region_hs[k] if x != h]
            interval = _clamp_line(others, p0, d)
            if interval is None:
                continue
            geom = _edge_draft_from_interval(p0, d, *interval)
            if geom is None:
                continue
            edges.append(
                _EdgeDraft(
                    points=geom[0],
                    rays=geom[1],
                    facet=None,
                    weight=None,
                    normal=None,
                    owner=k,
                )
            )

    regions = []
    for k in keep:
        poly = polygon_from_halfspaces(HPolyhedron(2, tuple(region_hs[k])))
        regions.append((k, labels[k], poly))

    return _assemble(edges, regions, convention, domain)


def _point_on_line(h: HalfSpace) -> Vec:
    j = next(i for i, c in enumerate(h.normal) if c != 0)
    p = [ZERO, ZERO]
    p[j] = h.offset / h.normal[j]
    return tuple(p)


def _assemble(
    edges: list[_EdgeDraft],
    regions: list[tuple[int, Vec, Polygon2]],
    convention: str,
    domain: HPolyhedron,
) -> LabeledSubdivision:
    """Assign canonical ids (vertices, then edges, then regions) and wire
    incidence."""
    # Segments contribute both endpoints, rays their single endpoint; full
    # lines have no 0-cells.
    vertex_points: set[Vec] = set()
    for e in edges:
        if len(e.points) == 2:
            vertex_points.update(e.points)
        elif len(e.rays) == 1:
            vertex_points.add(e.points[0])

    ordered_vertices = sorted(vertex_points)
    vid = {p: i for i, p in enumerate(ordered_vertices)}

    edges_sorted = sorted(edges, key=lambda e: e.sort_key())
    n_v = len(ordered_vertices)
    eid_base = n_v
    regions_sorted = sorted(regions, key=lambda r: r[1])
    rid = {key: eid_base + len(edges_sorted) + i for i, (key, _, _) in enumerate(regions_sorted)}

    cells: dict[int, Cell] = {}
    for p, i in sorted(vid.items(), key=lambda kv: kv[1]):
        cells[i] = Cell(dim=0, points=(p,), rays=(), incident=())

    facet_data: dict[int, FacetData] = {}
    region_edge_ids: dict[int, list[int]] = {key: [] for key, _, _ in regions}
    for i, e in enumerate(edges_sorted):
        edge_id = eid_base + i
        if len(e.points) == 2:
            incident = tuple(sorted((vid[e.points[0]], vid[e.points[1]])))
        elif len(e.rays) == 1:
            incident = (vid[e.points[0]],)
        else:
            incident = ()
        cells[edge_id] = Cell(dim=1, points=e.points, rays=e.rays, incident=incident)
        if e.facet is not None:
            facet_data[edge_id] = FacetData(
                weight=e.weight,
                normal=e.normal,
                from_region=rid[e.facet[0]],
                to_region=rid[e.facet[1]],
            )
            region_edge_ids[e.facet[0]].append(edge_id)
            region_edge_ids[e.facet[1]].append(edge_id)
        else:
            region_edge_ids[e.owner].append(edge_id)

    region_labels: dict[int, Vec] = {}
    for key, label, poly in regions_sorted:
        region_id = rid[key]
        chain = poly.vertices
        if poly.kind == "bounded" and chain:
            start = chain.index(min(chain))
            chain = chain[start:] + chain[:start]
        cells[region_id] = Cell(
            dim=2,
            points=chain,
            rays=poly.rays,
            incident=tuple(sorted(region_edge_ids[key])),
        )
        region_labels[region_id] = label

    return LabeledSubdivision(
        ambient_dim=2,
        convention=convention,
        domain=domain,
        cells=cells,
        region_labels=region_labels,
        facet_data=facet_data,
    )


# ---------------------------------------------------------------------------
# public constructions
# ---------------------------------------------------------------------------


def price_complex(v: Valuation) -> LabeledSubdivision:
    """Subdivision of price space into regions of constant demand.

    Regions are labeled by the demanded bundle; facets carry the weight and
    primitive normal factored from the label difference.
    """
    if v.goods != 2:
        raise UnsupportedDimension("price complexes are built in 2-D only")
    f = indirect_utility(v)
    labels = [tuple(-c for c in piece.slope) for piece in f.pieces]
    return _subdivision_from_pieces(f.pieces, labels, "max", f.domain)


def demand_complex(v: Valuation) -> LabeledSubdivision:
    """Dual subdivision of the bundle hull, labeled by indifference prices."""
    if v.goods != 2:
        raise UnsupportedDimension("demand complexes are built in 2-D only")
    if len(v.entries) == 1:
        bundle = next(iter(v.entries))
        point = ivec_to_vec(bundle)
        cells = {0: Cell(dim=0, points=(point,), rays=(), incident=())}
        return LabeledSubdivision(
            ambient_dim=2,
            convention="min",
            domain=convex_hull_halfspaces([point], 2),
            cells=cells,
            region_labels={},
            facet_data={},
        )
    if len(independent_directions([ivec_to_vec(q) for q in v.bundles()])) < 2:
        raise DegenerateInput("bundles are affinely collinear; the dual complex is 1-D")
    dual = dualize(v)
    labels = [piece.slope for piece in dual.pieces]
    return _subdivision_from_pieces(dual.pieces, labels, "min", dual.domain)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------


def check_normal_labeling(s: LabeledSubdivision) -> tuple[bool, list[LabelingViolation]]:
    """Verify every interior facet factors its label difference as stated."""
    violations: list[LabelingViolation] = []
    for edge_id, fd in sorted(s.facet_data.items()):
        cell = s.cells.get(edge_id)
        if cell is None or cell.dim != 1:
            violations.append(LabelingViolation(edge_id, "facet data on a non-edge"))
            continue
        if fd.from_region not in s.region_labels or fd.to_region not in s.region_labels:
            violations.append(LabelingViolation(edge_id, "facet references unknown region"))
            continue
        if fd.weight <= 0:
            violations.append(LabelingViolation(edge_id, f"weight {fd.weight} is not positive"))
        if all(c == 0 for c in fd.normal) or not is_primitive(fd.normal):
            violations.append(LabelingViolation(edge_id, f"normal {fd.normal} is not primitive"))
            continue
        diff = vsub(s.region_labels[fd.from_region], s.region_labels[fd.to_region])
        expected = tuple(fd.weight * c for c in fd.normal)
        if diff != expected:
            violations.append(
                LabelingViolation(
                    edge_id,
                    f"label difference {diff} != weight*normal {expected}",
                )
            )
            continue
        direction = edge_direction(cell)
        if dot(fd.normal, direction) != 0:
            violations.append(
                LabelingViolation(edge_id, "normal is not perpendicular to the facet")
            )
            continue
        rep_from = _region_representative(s.cells[fd.from_region])
        rep_to = _region_representative(s.cells[fd.to_region])
        if rep_from is not None and rep_to is not None:
            side = dot(fd.normal, vsub(rep_to, rep_from))
            if side < 0:
                violations.append(
                    LabelingViolation(edge_id, "normal points from 'to' into 'from'")
                )
    return (not violations), violations


def _incident_edges(s: LabeledSubdivision, vertex_id: int) -> list[int]:
    return [e for e in s.edges() if vertex_id in s.cells[e].incident]


def _direction_from_vertex(s: LabeledSubdivision, edge_id: int, vertex_id: int) -> Vec:
    cell = s.cells[edge_id]
    vpoint = s.cells[vertex_id].points[0]
    if _edge_kind(cell) == "segment":
        other = cell.points[1] if cell.points[0] == vpoint else cell.points[0]
        return vsub(other, vpoint)
    return ivec_to_vec(cell.rays[0])


def check_balancing(s: LabeledSubdivision) -> BalanceReport:
    """Sum the ccw-oriented weighted facet normals around each interior vertex.

    Vertices incident to any boundary facet (no facet data) are reported as
    skipped, not checked.
    """
    per_vertex: dict[int, VertexBalance] = {}
    skipped: list[int] = []
    for vertex_id in s.vertices():
        incident = _incident_edges(s, vertex_id)
        if not incident or any(e not in s.facet_data for e in incident):
            skipped.append(vertex_id)
            continue
        entries = []
        for e in incident:
            d = _direction_from_vertex(s, e, vertex_id)
            entries.append((e, d))
        entries = _sort_ccw(entries, key=lambda item: item[1])
        contributions: list[tuple[Fraction, IVec]] = []
        for e, d in entries:
            fd = s.facet_data[e]
            crossing = rot90ccw(d)
            side = dot(fd.normal, crossing)
            if side > 0:
                oriented = tuple(-c for c in fd.normal)
            else:
                oriented = fd.normal
            contributions.append((fd.weight, oriented))
        residual = (
            sum((w * n[0] for w, n in contributions), ZERO),
            sum((w * n[1] for w, n in contributions), ZERO),
        )
        per_vertex[vertex_id] = VertexBalance(
            point=s.cells[vertex_id].points[0],
            residual=residual,
            balanced=residual == (0, 0),
            contributions=tuple(contributions),
        )
    overall = all(vb.balanced for vb in per_vertex.values())
    return BalanceReport(
        per_vertex=per_vertex, skipped_boundary=tuple(skipped), overall=overall
    )


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------


def _boundary_outer_normal(s: LabeledSubdivision, edge_id: int) -> IVec:
    cell = s.cells[edge_id]
    anchor = cell.points[0]
    direction = edge_direction(cell)
    for h in s.domain.halfspaces:
        if h.tight_at(anchor) and dot(h.normal, direction) == 0:
            prim, _ = rational_direction(h.normal)
            return prim
    raise DegenerateInput(f"boundary edge {edge_id} lies on no domain facet")


def dualize_complex(s: LabeledSubdivision) -> LabeledSubdivision:
    """Cell-wise dual: regions become vertices at their labels, vertices
    become regions labeled by their location, facets become perpendicular
    facets whose weight is the source edge's lattice length."""
    ok, violations = check_normal_labeling(s)
    if not ok:
        detail = "; ".join(v.message for v in violations[:3])
        raise NonConservative(f"subdivision is not normally labeled: {detail}")

    if not s.edges():
        return _dualize_edgeless(s)

    dual_edges: list[_EdgeDraft] = []
    region_points: dict[int, list[Vec]] = {v: [] for v in s.vertices()}
    region_rays: dict[int, list[IVec]] = {v: [] for v in s.vertices()}

    for edge_id in s.edges():
        cell = s.cells[edge_id]
        endpoints = cell.incident
        if edge_id in s.facet_data:
            fd = s.facet_data[edge_id]
            a = s.region_labels[fd.from_region]
            b = s.region_labels[fd.to_region]
            if len(endpoints) == 2:
                u, w = endpoints
                pu = s.cells[u].points[0]
                pw = s.cells[w].points[0]
                prim, weight = rational_direction(vsub(pu, pw))
                dual_edges.append(
                    _EdgeDraft(
                        points=tuple(sorted((a, b))),
                        rays=(),
                        facet=(u, w),
                        weight=weight,
                        normal=prim,
                        owner=None,
                    )
                )
            elif len(endpoints) == 1:
                dual_edges.append(
                    _EdgeDraft(
                        points=tuple(sorted((a, b))),
                        rays=(),
                        facet=None,
                        weight=None,
                        normal=None,
                        owner=endpoints[0],
                    )
                )
            else:
                # A full-line facet dualizes to an edge with no incident
                # 2-cells; representable only in a 1-D complex, so refuse.
                raise DegenerateInput("cannot dualize a subdivision with line facets")
            for vertex in endpoints:
                region_points[vertex].extend((a, b))
        else:
            owner = _owner_region(s, edge_id)
            label = s.region_labels[owner]
            outer = _boundary_outer_normal(s, edge_id)
            ray_dir = tuple(-c for c in outer)
            for vertex in endpoints:
                region_points[vertex].append(label)
                region_rays[vertex].append(ray_dir)
            if len(endpoints) == 1:
                dual_edges.append(
                    _EdgeDraft(
                        points=(label,),
                        rays=(ray_dir,),
                        facet=None,
                        weight=None,
                        normal=None,
                        owner=endpoints[0],
                    )
                )
            elif len(endpoints) == 2:
                u, w = endpoints
                pu = s.cells[u].points[0]
                pw = s.cells[w].points[0]
                prim, weight = rational_direction(vsub(pu, pw))
                dual_edges.append(
                    _EdgeDraft(
                        points=(label,),
                        rays=(ray_dir,),
                        facet=(u, w),
                        weight=weight,
                        normal=prim,
                        owner=None,
                    )
                )

    dual_regions = []
    for vertex in s.vertices():
        pts = region_points[vertex]
        if not pts:
            continue
        chain = _hull_chain_ccw(pts)
        rays = []
        for r in region_rays[vertex]:
            if r not in rays:
                rays.append(r)
        rays = _sort_ccw(rays, key=ivec_to_vec)
        kind = "bounded" if not rays else "unbounded"
        poly = Polygon2(tuple(chain), tuple(rays), kind)
        dual_regions.append((vertex, s.cells[vertex].points[0], poly))

    if s.domain.halfspaces:
        dual_domain = HPolyhedron(2, ())
    else:
        label_points = [s.region_labels[r] for r in s.regions()]
        dual_domain = convex_hull_halfspaces(label_points, 2)
    convention = "min" if s.convention == "max" else "max"
    return _assemble(dual_edges, dual_regions, convention, dual_domain)


def _dualize_edgeless(s: LabeledSubdivision) -> LabeledSubdivision:
    """Dual of a complex with no 1-cells: a single region maps to a single
    vertex at its label, and a single vertex maps to one region covering the
    dual domain."""
    convention = "min" if s.convention == "max" else "max"
    regions = s.regions()
    if regions:
        label = s.region_labels[regions[0]]
        cells = {0: Cell(dim=0, points=(label,), rays=(), incident=())}
        return LabeledSubdivision(
            ambient_dim=2,
            convention=convention,
            domain=convex_hull_halfspaces([label], 2),
            cells=cells,
            region_labels={},
            facet_data={},
        )
    vertices = s.vertices()
    if len(vertices) != 1:
        raise DegenerateInput("cannot dualize an empty subdivision")
    point = s.cells[vertices[0]].points[0]
    cells = {0: Cell(dim=2, points=(), rays=(), incident=())}
    return LabeledSubdivision(
        ambient_dim=2,
        convention=convention,
        domain=HPolyhedron(2, ()),
        cells=cells,
        region_labels={0: point},
        facet_data={},
    )


def _owner_region(s: LabeledSubdivision, edge_id: int) -> int:
    for region_id in s.regions():
        if edge_id in s.cells[region_id].incident:
            return region_id
    raise DegenerateInput(f"boundary edge {edge_id} belongs to no region")


# ---------------------------------------------------------------------------
# canonical comparison form
# ---------------------------------------------------------------------------


def canonical_form(s: LabeledSubdivision):
    """Rotation- and id-independent description, for exact cell-for-cell
    comparison of subdivisions built along different routes."""
    verts = frozenset(s.cells[v].points[0] for v in s.vertices())
    edge_sigs = []
    for e in s.edges():
        cell = s.cells[e]
        if e in s.facet_data:
            fd = s.facet_data[e]
            la = s.region_labels[fd.from_region]
            lb = s.region_labels[fd.to_region]
            normal = fd.normal
            if (la, lb) > (lb, la):
                la, lb = lb, la
                normal = tuple(-c for c in normal)
            rel = (la, lb, fd.weight, normal)
        else:
            rel = None
        edge_sigs.append(
            (tuple(sorted(cell.points)), tuple(sorted(cell.rays)), rel)
        )
    region_sigs = []
    for r in s.regions():
        cell = s.cells[r]
        region_sigs.append(
            (
                s.region_labels[r],
                frozenset(cell.points),
                frozenset(cell.rays),
            )
        )
    return (
        verts,
        frozenset(edge_sigs),
        frozenset(region_sigs),
        s.convention,
    )
