"""Exact polyhedral primitives.

Half-space representations, an exact-rational two-phase simplex solver with
Bland's anti-cycling rule, irredundancy reduction, 2-D polygon extraction
(vertex chains plus recession rays), and upper concave hulls of lifted
lattice points.  Everything is a pure function on immutable inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateInput, EmptyCell, InstanceTooLarge, UnsupportedDimension
from .exactmath import (
    IVec,
    Vec,
    ZERO,
    dot,
    independent_directions,
    rational_direction,
    rot90ccw,
    solve_linear_system,
    vsub,
)


@dataclass(frozen=True)
class HalfSpace:
    """The closed set { x : normal . x <= offset }."""

    normal: Vec
    offset: Fraction

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise DegenerateInput("half-space with zero normal")

    def contains(self, x: Sequence[Fraction | int]) -> bool:
        return dot(self.normal, x) <= self.offset

    def tight_at(self, x: Sequence[Fraction | int]) -> bool:
        return dot(self.normal, x) == self.offset


@dataclass(frozen=True)
class HPolyhedron:
    """Intersection of finitely many half-spaces in R^dim (empty list = all of R^dim)."""

    dim: int
    halfspaces: tuple[HalfSpace, ...]

    def contains(self, x: Sequence[Fraction | int]) -> bool:
        return all(h.contains(x) for h in self.halfspaces)


@dataclass(frozen=True)
class AffinePiece:
    """The affine function x -> slope . x + intercept."""

    slope: Vec
    intercept: Fraction

    def evaluate(self, x: Sequence[Fraction | int]) -> Fraction:
        return dot(self.slope, x) + self.intercept


@dataclass(frozen=True)
class LinearProgram:
    """min or max of objective . x subject to half-space rows, equality rows,
    and per-variable nonnegativity flags."""

    objective: Vec
    sense: str  # "min" | "max"
    constraints: tuple[HalfSpace, ...]
    equalities: tuple[tuple[Vec, Fraction], ...] = ()
    nonneg: tuple[bool, ...] = ()

    def __post_init__(self):
        n = len(self.objective)
        if self.sense not in ("min", "max"):
            raise DegenerateInput(f"unknown sense {self.sense!r}")
        for h in self.constraints:
            if len(h.normal) != n:
                raise DegenerateInput("constraint row length mismatch")
        for row, _ in self.equalities:
            if len(row) != n:
                raise DegenerateInput("equality row length mismatch")
        if self.nonneg and len(self.nonneg) != n:
            raise DegenerateInput("nonneg mask length mismatch")


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    point: Vec | None = None
    unique: bool | None = None


@dataclass(frozen=True)
class Polygon2:
    """2-D polyhedron geometry: ccw vertex chain plus recession rays.

    kind is one of "bounded", "unbounded" (pointed, rays at the chain ends),
    "plane" (no constraints), "unpointed" (contains a line: rays hold the
    lineality directions), or "degenerate" (a single point or segment).
    """

    vertices: tuple[Vec, ...]
    rays: tuple[IVec, ...]
    kind: str


# ---------------------------------------------------------------------------
# simplex
# ---------------------------------------------------------------------------


def _pivot(tableau: list[list[Fraction]], row: int, col: int) -> None:
    inv = tableau[row][col]
    tableau[row] = [x / inv for x in tableau[row]]
    piv = tableau[row]
    for r, line in enumerate(tableau):
        if r != row and line[col] != 0:
            f = line[col]
            tableau[r] = [x - f * y for x, y in zip(line, piv)]


def _bland(tableau: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    """Run Bland-rule simplex iterations on a tableau whose last row holds
    reduced costs (minimization). Returns "optimal" or "unbounded"."""
    m = len(basis)
    cost = tableau[m]
    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            return "optimal"
        leave, best = None, None
        for r in range(m):
            a = tableau[r][enter]
            if a > 0:
                ratio = tableau[r][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:
            return "unbounded"
        _pivot(tableau, leave, enter)
        basis[leave] = enter
        cost = tableau[m]


def simplex_solve(lp: LinearProgram, probe_unique: bool = True) -> LPResult:
    """Exact two-phase simplex.

    Returns the optimum and one optimal basic solution; the ``unique`` flag
    reports whether the optimal solution point is unique, established by
    minimizing and maximizing every coordinate over the optimal face.
    """
    nvars = len(lp.objective)
    nonneg = lp.nonneg if lp.nonneg else tuple(False for _ in range(nvars))

    # Map original variables onto nonnegative columns (free vars are split).
    col_of: list[list[tuple[int, int]]] = []
    ncols = 0
    for j in range(nvars):
        if nonneg[j]:
            col_of.append([(ncols, 1)])
            ncols += 1
        else:
            col_of.append([(ncols, 1), (ncols + 1, -1)])
            ncols += 2
    nstruct = ncols

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    kinds: list[str] = []
    for h in lp.constraints:
        row = [ZERO] * nstruct
        for j, coeff in enumerate(h.normal):
            for col, sign in col_of[j]:
                row[col] += sign * coeff
        rows.append(row)
        rhs.append(h.offset)
        kinds.append("ineq")
    for vec, b in lp.equalities:
        row = [ZERO] * nstruct
        for j, coeff in enumerate(vec):
            for col, sign in col_of[j]:
                row[col] += sign * coeff
        rows.append(row)
        rhs.append(b)
        kinds.append("eq")

    m = len(rows)
    nslack = sum(1 for k in kinds if k == "ineq")
    ncols = nstruct + nslack

    matrix: list[list[Fraction]] = []
    slack_seen = 0
    for i in range(m):
        row = rows[i] + [ZERO] * nslack
        if kinds[i] == "ineq":
            row[nstruct + slack_seen] = Fraction(1)
            slack_seen += 1
        if rhs[i] < 0:
            row = [-x for x in row]
            b = -rhs[i]
        else:
            b = rhs[i]
        matrix.append(row + [b])

    # Phase 1: artificial variables, minimize their sum.
    total = ncols + m
    tableau = [matrix[i][:ncols] + [ZERO] * m + [matrix[i][ncols]] for i in range(m)]
    for i in range(m):
        tableau[i][ncols + i] = Fraction(1)
    basis = [ncols + i for i in range(m)]
    cost = [ZERO] * (total + 1)
    for i in range(m):
        cost = [c - a for c, a in zip(cost, tableau[i])]
    for i in range(m):
        cost[ncols + i] = ZERO
    tableau.append(cost)
    _bland(tableau, basis, total)
    if -tableau[m][total] != 0:
        return LPResult(status="infeasible")

    # Drive remaining artificials out of the basis; drop redundant rows.
    keep = []
    for r in range(m):
        if basis[r] >= ncols:
            col = next((j for j in range(ncols) if tableau[r][j] != 0), None)
            if col is None:
                continue  # redundant row
            _pivot(tableau, r, col)
            basis[r] = col
        keep.append(r)
    rows2 = [tableau[r][:ncols] + [tableau[r][total]] for r in keep]
    basis2 = [basis[r] for r in keep]

    # Phase 2.
    objective = [ZERO] * ncols
    sign = Fraction(1) if lp.sense == "min" else Fraction(-1)
    for j in range(nvars):
        for col, s in col_of[j]:
            objective[col] += sign * s * lp.objective[j]
    cost = objective[:] + [ZERO]
    for r, line in enumerate(rows2):
        f = cost[basis2[r]]
        if f != 0:
            cost = [c - f * a for c, a in zip(cost, line)]
    tableau2 = rows2 + [cost]
    status = _bland(tableau2, basis2, ncols)
    if status == "unbounded":
        return LPResult(status="unbounded")

    values = [ZERO] * ncols
    for r, var in enumerate(basis2):
        values[var] = tableau2[r][ncols]
    point = []
    for j in range(nvars):
        x = ZERO
        for col, s in col_of[j]:
            x += s * values[col]
        point.append(x)
    point = tuple(point)
    value = dot(lp.objective, point)

    unique = None
    if probe_unique:
        unique = _optimum_is_unique(lp, value, point)
    return LPResult(status="optimal", value=value, point=point, unique=unique)


def _optimum_is_unique(lp: LinearProgram, value: Fraction, point: Vec) -> bool:
    """Probe the optimal face: unique iff every coordinate is pinned on it."""
    nvars = len(lp.objective)
    face_eq = lp.equalities + ((lp.objective, value),)
    for j in range(nvars):
        unit = tuple(Fraction(1 if k == j else 0) for k in range(nvars))
        for sense in ("min", "max"):
            probe = LinearProgram(
                objective=unit,
                sense=sense,
                constraints=lp.constraints,
                equalities=face_eq,
                nonneg=lp.nonneg,
            )
            res = simplex_solve(probe, probe_unique=False)
            if res.status != "optimal" or res.value != point[j]:
                return False
    return True


# ---------------------------------------------------------------------------
# feasibility and redundancy
# ---------------------------------------------------------------------------


def feasible_point(poly: HPolyhedron) -> Vec | None:
    lp = LinearProgram(
        objective=tuple(ZERO for _ in range(poly.dim)),
        sense="min",
        constraints=poly.halfspaces,
    )
    res = simplex_solve(lp, probe_unique=False)
    return res.point if res.status == "optimal" else None


def interior_point(poly: HPolyhedron) -> Vec | None:
    """A point strictly inside all half-spaces, or None if the polyhedron is
    empty or not full-dimensional."""
    n = poly.dim
    # Variables (x, t); maximize t subject to normal.x + t <= offset, t <= 1.
    constraints = [
        HalfSpace(tuple(h.normal) + (Fraction(1),), h.offset) for h in poly.halfspaces
    ]
    constraints.append(
        HalfSpace(tuple(ZERO for _ in range(n)) + (Fraction(1),), Fraction(1))
    )
    lp = LinearProgram(
        objective=tuple(ZERO for _ in range(n)) + (Fraction(1),),
        sense="max",
        constraints=tuple(constraints),
    )
    res = simplex_solve(lp, probe_unique=False)
    if res.status != "optimal" or res.value is None or res.value <= 0:
        return None
    return res.point[:n]


def is_full_dimensional(poly: HPolyhedron) -> bool:
    return interior_point(poly) is not None


def _normalized(h: HalfSpace) -> HalfSpace:
    n, w = rational_direction(h.normal)
    return HalfSpace(tuple(Fraction(c) for c in n), h.offset / w)


def dedupe_halfspaces(halfspaces: Sequence[HalfSpace]) -> tuple[HalfSpace, ...]:
    """Scale-normalize and drop repeated or dominated copies of the same row."""
    best: dict[Vec, Fraction] = {}
    order: list[Vec] = []
    for h in halfspaces:
        nh = _normalized(h)
        if nh.normal not in best:
            best[nh.normal] = nh.offset
            order.append(nh.normal)
        elif nh.offset < best[nh.normal]:
            best[nh.normal] = nh.offset
    return tuple(HalfSpace(normal, best[normal]) for normal in order)


def reduce(poly: HPolyhedron) -> HPolyhedron:
    """Irredundant representation of the same set, one LP per constraint.

    Empty polyhedra are returned unchanged (irredundancy is not meaningful
    for them).
    """
    halfspaces = list(dedupe_halfspaces(poly.halfspaces))
    if not halfspaces:
        return HPolyhedron(poly.dim, ())
    if feasible_point(HPolyhedron(poly.dim, tuple(halfspaces))) is None:
        return poly
    kept = halfspaces[:]
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1 :]
        lp = LinearProgram(
            objective=kept[i].normal,
            sense="max",
            constraints=tuple(others),
        )
        res = simplex_solve(lp, probe_unique=False)
        redundant = res.status == "optimal" and res.value <= kept[i].offset
        if redundant:
            kept.pop(i)
        else:
            i += 1
    return HPolyhedron(poly.dim, tuple(kept))


# ---------------------------------------------------------------------------
# 2-D polygon extraction
# ---------------------------------------------------------------------------


def _edge_interval(
    halfspaces: Sequence[HalfSpace], p0: Vec, d: Vec, skip: int
) -> tuple[Fraction | None, Fraction | None] | None:
    """Clamp the line p0 + t d against every half-space except ``skip``.

    Returns (lo, hi) with None meaning unbounded on that side, or None when
    the intersection is empty.
    """
    lo: Fraction | None = None
    hi: Fraction | None = None
    for j, h in enumerate(halfspaces):
        if j == skip:
            continue
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


def _point_on_boundary(h: HalfSpace) -> Vec:
    j = next(i for i, c in enumerate(h.normal) if c != 0)
    p = [ZERO, ZERO]
    p[j] = h.offset / h.normal[j]
    return tuple(p)


def polygon_from_halfspaces(poly: HPolyhedron) -> Polygon2:
    """Extract exact 2-D geometry: ccw vertex chain plus recession rays."""
    if poly.dim != 2:
        raise UnsupportedDimension("polygon extraction is 2-D only")
    halfspaces = dedupe_halfspaces(poly.halfspaces)
    if not halfspaces:
        return Polygon2((), (), "plane")

    # One candidate edge per constraint, oriented ccw (interior on the left).
    edges = []  # (index, start|None, end|None, direction)
    lines = []
    for i, h in enumerate(halfspaces):
        p0 = _point_on_boundary(h)
        d = tuple(Fraction(c) for c in rot90ccw(h.normal))
        interval = _edge_interval(halfspaces, p0, d, i)
        if interval is None:
            continue
        lo, hi = interval
        if lo is not None and hi is not None and lo == hi:
            continue  # constraint touches the region in a single point
        start = None if lo is None else tuple(a + lo * b for a, b in zip(p0, d))
        end = None if hi is None else tuple(a + hi * b for a, b in zip(p0, d))
        if lo is None and hi is None:
            lines.append((i, p0, d))
        else:
            edges.append((i, start, end, d))

    if lines:
        dirs = []
        for _, _, d in lines:
            n, _ = rational_direction(d)
            dirs.append(n)
            dirs.append(tuple(-c for c in n))
        seen = []
        for v in dirs:
            if v not in seen:
                seen.append(v)
        return Polygon2((), tuple(seen), "unpointed")

    if not edges:
        pt = feasible_point(poly)
        if pt is None:
            raise EmptyCell("empty polyhedron")
        return Polygon2((pt,), (), "degenerate")

    unbounded_start = [e for e in edges if e[1] is None]
    unbounded_end = [e for e in edges if e[2] is None]

    if unbounded_start:
        chain = [unbounded_start[0]]
    else:
        chain = [min(edges, key=lambda e: e[1])]
    used = {chain[0][0]}
    while True:
        tail = chain[-1]
        if tail[2] is None:
            break
        nxt = next(
            (e for e in edges if e[0] not in used and e[1] == tail[2]),
            None,
        )
        if nxt is None:
            break
        chain.append(nxt)
        used.add(nxt[0])

    if unbounded_start or unbounded_end:
        # A pointed unbounded convex region has exactly one edge reaching
        # infinity backward and one forward; the ccw walk runs between them.
        vertices = [e[1] for e in chain if e[1] is not None]
        first_dir, _ = rational_direction(tuple(-c for c in chain[0][3]))
        last_dir, _ = rational_direction(chain[-1][3])
        return Polygon2(tuple(vertices), (first_dir, last_dir), "unbounded")
    vertices = tuple(e[1] for e in chain)
    return Polygon2(vertices, (), "bounded")


# ---------------------------------------------------------------------------
# upper concave hull of lifted lattice points
# ---------------------------------------------------------------------------

MAX_HULL_POINTS = 64


def _interpolating_piece(
    bundles: Sequence[IVec], values: Sequence[Fraction], n: int
) -> AffinePiece | None:
    rows = [[Fraction(c) for c in q] + [Fraction(1)] for q in bundles]
    sol = solve_linear_system(rows, list(values))
    if sol is None:
        return None
    return AffinePiece(slope=tuple(sol[:n]), intercept=sol[n])


def _hull_full_dim(
    bundles: Sequence[IVec], values: Sequence[Fraction], n: int
) -> list[AffinePiece]:
    pieces: set[AffinePiece] = set()
    for subset in itertools.combinations(range(len(bundles)), n + 1):
        piece = _interpolating_piece(
            [bundles[i] for i in subset], [values[i] for i in subset], n
        )
        if piece is None:
            continue
        if all(piece.evaluate(q) >= u for q, u in zip(bundles, values)):
            pieces.add(piece)
    return sorted(pieces, key=lambda p: (p.slope, p.intercept))


def upper_concave_hull(
    points: Sequence[tuple[IVec, Fraction]],
) -> tuple[list[AffinePiece], set[int]]:
    """Minimal affine pieces whose pointwise min majorizes the lifted points.

    Facet enumeration over (d+1)-subsets with an above-all filter, where d is
    the affine dimension of the bundle set; cost is O(K^(n+2)) and the input
    is capped at 64 points and 3 goods.  Hull indices are exactly the points
    the majorant touches.
    """
    if not points:
        raise DegenerateInput("hull of no points")
    if len(points) > MAX_HULL_POINTS:
        raise InstanceTooLarge(f"more than {MAX_HULL_POINTS} bundles")
    bundles = [q for q, _ in points]
    values = [Fraction(v) for _, v in points]
    n = len(bundles[0])
    if n > 3:
        raise UnsupportedDimension("hull enumeration supports up to 3 goods")
    if len(set(bundles)) != len(bundles):
        raise DegenerateInput("duplicate bundle keys")

    if len(bundles) == 1:
        piece = AffinePiece(slope=tuple(ZERO for _ in range(n)), intercept=values[0])
        return [piece], {0}

    directions = independent_directions([tuple(Fraction(c) for c in q) for q in bundles])
    d = len(directions)
    if d == n:
        pieces = _hull_full_dim(bundles, values, n)
    else:
        # Project onto the affine hull, take the hull there, and lift slopes
        # back into the span of the basis directions.
        base = bundles[0]
        proj = [
            tuple(int(dot(b, vsub(q, base))) for b in directions) for q in bundles
        ]
        sub_pieces = _hull_full_dim(proj, values, d)
        pieces = []
        for sp in sub_pieces:
            slope = tuple(
                sum((w * b[i] for w, b in zip(sp.slope, directions)), ZERO)
                for i in range(n)
            )
            pieces.append(AffinePiece(slope=slope, intercept=sp.intercept - dot(slope, base)))
        pieces = sorted(set(pieces), key=lambda p: (p.slope, p.intercept))

    hull = {
        i
        for i, (q, u) in enumerate(zip(bundles, values))
        if min(p.evaluate(q) for p in pieces) == u
    }
    return pieces, hull


def convex_hull_halfspaces(points: Sequence[Sequence[Fraction | int]], dim: int) -> HPolyhedron:
    """H-representation of the convex hull of finitely many rational points.

    Supports dim <= 3; in dimension 2 degenerate (collinear) inputs produce
    the line/segment as an intersection of half-planes.
    """
    pts = [tuple(Fraction(c) for c in p) for p in points]
    if not pts:
        raise DegenerateInput("hull of no points")
    if dim == 1:
        xs = [p[0] for p in pts]
        return HPolyhedron(
            1,
            (
                HalfSpace((Fraction(1),), max(xs)),
                HalfSpace((Fraction(-1),), -min(xs)),
            ),
        )
    if dim == 2:
        return _hull_halfspaces_2d(pts)
    if dim == 3:
        return _hull_halfspaces_3d(pts)
    raise UnsupportedDimension("convex hulls supported up to dimension 3")


def _hull_halfspaces_2d(pts: list[Vec]) -> HPolyhedron:
    uniq = sorted(set(pts))
    if len(uniq) == 1:
        p = uniq[0]
        hs = []
        for j in range(2):
            e = tuple(Fraction(1 if k == j else 0) for k in range(2))
            hs.append(HalfSpace(e, p[j]))
            hs.append(HalfSpace(tuple(-c for c in e), -p[j]))
        return HPolyhedron(2, tuple(hs))
    dirs = independent_directions(uniq)
    if len(dirs) == 1:
        d = dirs[0]
        normal = rot90ccw(d)
        c = dot(normal, uniq[0])
        ts = [dot(d, p) for p in uniq]
        hs = (
            HalfSpace(tuple(normal), c),
            HalfSpace(tuple(-x for x in normal), -c),
            HalfSpace(tuple(d), max(ts)),
            HalfSpace(tuple(-x for x in d), -min(ts)),
        )
        return HPolyhedron(2, dedupe_halfspaces(hs))
    hs: list[HalfSpace] = []
    for a, b in itertools.combinations(uniq, 2):
        normal = rot90ccw(vsub(b, a))
        c = dot(normal, a)
        sides = [dot(normal, p) - c for p in uniq]
        if all(s <= 0 for s in sides):
            hs.append(HalfSpace(tuple(normal), c))
        elif all(s >= 0 for s in sides):
            hs.append(HalfSpace(tuple(-x for x in normal), -c))
    return HPolyhedron(2, dedupe_halfspaces(hs))


def _hull_halfspaces_3d(pts: list[Vec]) -> HPolyhedron:
    uniq = sorted(set(pts))
    dirs = independent_directions(uniq)
    if len(dirs) < 3:
        raise DegenerateInput("degenerate point set in dimension 3")
    hs: list[HalfSpace] = []
    for a, b, c in itertools.combinations(uniq, 3):
        u, v = vsub(b, a), vsub(c, a)
        normal = (
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )
        if all(x == 0 for x in normal):
            continue
        off = dot(normal, a)
        sides = [dot(normal, p) - off for p in uniq]
        if all(s <= 0 for s in sides):
            hs.append(HalfSpace(tuple(Fraction(x) for x in normal), off))
        elif all(s >= 0 for s in sides):
            hs.append(HalfSpace(tuple(Fraction(-x) for x in normal), -off))
    return HPolyhedron(3, dedupe_halfspaces(hs))
