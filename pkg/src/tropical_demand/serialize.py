"""JSON wire formats.

Rationals travel as strings ("num/den", or "num" when the denominator is
1); bundles and primitive normals as integer arrays.  Every writer sorts
its content and every document round-trips through its own parser, so
identical inputs produce byte-identical output.  The schemas shipped in
docs/schemas/ describe the same formats.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .complexes import (
    BalanceReport,
    Cell,
    FacetData,
    LabeledSubdivision,
)
from .equilibrium import Economy, EquilibriumReport
from .errors import ValidationError
from .exactmath import IVec, Vec, format_rational, rational
from .polyhedra import AffinePiece, HPolyhedron, HalfSpace
from .potential import CorrespondenceSample, Polyline
from .valuation import PolyhedralFunction, Valuation


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _vec_out(v) -> list[str]:
    return [format_rational(Fraction(c)) for c in v]


def _vec_in(data, context: str) -> Vec:
    if not isinstance(data, list):
        raise ValidationError(f"{context}: expected an array")
    try:
        return tuple(rational(c) for c in data)
    except Exception as exc:
        raise ValidationError(f"{context}: {exc}") from exc


def _ivec_in(data, context: str) -> IVec:
    if not isinstance(data, list) or not all(
        isinstance(c, int) and not isinstance(c, bool) for c in data
    ):
        raise ValidationError(f"{context}: expected an integer array")
    return tuple(data)


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


# ---------------------------------------------------------------------------
# valuations and economies
# ---------------------------------------------------------------------------


def valuation_to_dict(v: Valuation) -> dict:
    return {
        "goods": v.goods,
        "entries": [
            {"bundle": list(q), "value": format_rational(u)}
            for q, u in sorted(v.entries.items())
        ],
    }


def valuation_from_dict(data) -> Valuation:
    _expect(isinstance(data, dict), "valuation: expected an object")
    _expect(isinstance(data.get("goods"), int), "valuation: 'goods' must be an integer")
    entries_raw = data.get("entries")
    _expect(isinstance(entries_raw, list), "valuation: 'entries' must be an array")
    entries: dict[IVec, Fraction] = {}
    for item in entries_raw:
        _expect(isinstance(item, dict), "valuation entry: expected an object")
        bundle = _ivec_in(item.get("bundle"), "valuation entry bundle")
        if bundle in entries:
            raise ValidationError(f"duplicate bundle {list(bundle)}")
        try:
            entries[bundle] = rational(item.get("value"))
        except Exception as exc:
            raise ValidationError(f"valuation entry value: {exc}") from exc
    try:
        return Valuation(goods=data["goods"], entries=entries)
    except ValidationError:
        raise
    except Exception as exc:
        raise ValidationError(str(exc)) from exc


def economy_to_dict(e: Economy) -> dict:
    out = {
        "goods": e.goods,
        "endowment": list(e.endowment),
        "consumers": [valuation_to_dict(v) for v in e.consumers],
    }
    if e.ownership is not None:
        out["ownership"] = [list(share) for share in e.ownership]
    return out


def economy_from_dict(data) -> Economy:
    _expect(isinstance(data, dict), "economy: expected an object")
    _expect(isinstance(data.get("goods"), int), "economy: 'goods' must be an integer")
    endowment = _ivec_in(data.get("endowment"), "economy endowment")
    consumers_raw = data.get("consumers")
    _expect(isinstance(consumers_raw, list) and consumers_raw, "economy: 'consumers' must be a nonempty array")
    consumers = tuple(valuation_from_dict(c) for c in consumers_raw)
    ownership = None
    if data.get("ownership") is not None:
        _expect(isinstance(data["ownership"], list), "economy: 'ownership' must be an array")
        ownership = tuple(_ivec_in(s, "ownership share") for s in data["ownership"])
    try:
        return Economy(
            goods=data["goods"], consumers=consumers, endowment=endowment, ownership=ownership
        )
    except ValidationError:
        raise
    except Exception as exc:
        raise ValidationError(str(exc)) from exc


# ---------------------------------------------------------------------------
# polyhedral functions
# ---------------------------------------------------------------------------


def domain_to_dict(domain: HPolyhedron) -> dict:
    return {
        "dim": domain.dim,
        "halfspaces": [
            {"normal": _vec_out(h.normal), "offset": format_rational(h.offset)}
            for h in domain.halfspaces
        ],
    }


def domain_from_dict(data) -> HPolyhedron:
    _expect(isinstance(data, dict), "domain: expected an object")
    _expect(isinstance(data.get("dim"), int), "domain: 'dim' must be an integer")
    raw = data.get("halfspaces")
    _expect(isinstance(raw, list), "domain: 'halfspaces' must be an array")
    halfspaces = []
    for item in raw:
        _expect(isinstance(item, dict), "halfspace: expected an object")
        normal = _vec_in(item.get("normal"), "halfspace normal")
        try:
            offset = rational(item.get("offset"))
        except Exception as exc:
            raise ValidationError(f"halfspace offset: {exc}") from exc
        halfspaces.append(HalfSpace(normal=normal, offset=offset))
    return HPolyhedron(dim=data["dim"], halfspaces=tuple(halfspaces))


def function_to_dict(f: PolyhedralFunction, never_demanded: list[IVec] | None = None) -> dict:
    out = {
        "convention": f.convention,
        "pieces": [
            {"slope": _vec_out(p.slope), "intercept": format_rational(p.intercept)}
            for p in sorted(f.pieces, key=lambda p: (p.slope, p.intercept))
        ],
        "domain": domain_to_dict(f.domain),
    }
    if never_demanded is not None:
        out["never_demanded"] = [list(q) for q in sorted(never_demanded)]
    return out


def function_from_dict(data) -> PolyhedralFunction:
    _expect(isinstance(data, dict), "function: expected an object")
    convention = data.get("convention")
    _expect(convention in ("max", "min"), "function: convention must be 'max' or 'min'")
    raw = data.get("pieces")
    _expect(isinstance(raw, list) and raw, "function: 'pieces' must be a nonempty array")
    pieces = []
    for item in raw:
        _expect(isinstance(item, dict), "piece: expected an object")
        slope = _vec_in(item.get("slope"), "piece slope")
        try:
            intercept = rational(item.get("intercept"))
        except Exception as exc:
            raise ValidationError(f"piece intercept: {exc}") from exc
        pieces.append(AffinePiece(slope=slope, intercept=intercept))
    domain = domain_from_dict(data.get("domain"))
    return PolyhedralFunction(convention=convention, pieces=tuple(pieces), domain=domain)


# ---------------------------------------------------------------------------
# subdivisions
# ---------------------------------------------------------------------------


def subdivision_to_dict(s: LabeledSubdivision) -> dict:
    cells = []
    for cell_id in sorted(s.cells):
        cell = s.cells[cell_id]
        entry: dict[str, Any] = {
            "id": cell_id,
            "dim": cell.dim,
            "points": [_vec_out(p) for p in cell.points],
            "rays": [list(r) for r in cell.rays],
            "incident": list(cell.incident),
        }
        if cell.dim == 2:
            entry["label"] = _vec_out(s.region_labels[cell_id])
        if cell_id in s.facet_data:
            fd = s.facet_data[cell_id]
            entry["weight"] = format_rational(fd.weight)
            entry["normal"] = list(fd.normal)
            entry["from_region"] = fd.from_region
            entry["to_region"] = fd.to_region
        cells.append(entry)
    return {
        "ambient_dim": s.ambient_dim,
        "convention": s.convention,
        "domain": domain_to_dict(s.domain),
        "cells": cells,
    }


def subdivision_from_dict(data) -> LabeledSubdivision:
    _expect(isinstance(data, dict), "subdivision: expected an object")
    _expect(data.get("ambient_dim") == 2, "subdivision: ambient_dim must be 2")
    convention = data.get("convention")
    _expect(convention in ("max", "min"), "subdivision: convention must be 'max' or 'min'")
    domain = domain_from_dict(data.get("domain"))
    raw = data.get("cells")
    _expect(isinstance(raw, list), "subdivision: 'cells' must be an array")
    cells: dict[int, Cell] = {}
    region_labels: dict[int, Vec] = {}
    facet_data: dict[int, FacetData] = {}
    for item in raw:
        _expect(isinstance(item, dict), "cell: expected an object")
        cell_id = item.get("id")
        _expect(isinstance(cell_id, int), "cell: 'id' must be an integer")
        _expect(cell_id not in cells, f"cell: duplicate id {cell_id}")
        dim = item.get("dim")
        _expect(dim in (0, 1, 2), "cell: 'dim' must be 0, 1, or 2")
        points = tuple(_vec_in(p, "cell point") for p in item.get("points", []))
        rays = tuple(_ivec_in(r, "cell ray") for r in item.get("rays", []))
        incident = tuple(item.get("incident", []))
        _expect(
            all(isinstance(i, int) for i in incident), "cell: 'incident' must be integer ids"
        )
        cells[cell_id] = Cell(dim=dim, points=points, rays=rays, incident=incident)
        if dim == 2:
            _expect("label" in item, f"region cell {cell_id} is missing its label")
            region_labels[cell_id] = _vec_in(item["label"], "region label")
        if "weight" in item or "normal" in item:
            _expect(dim == 1, f"cell {cell_id}: facet data on a non-edge")
            try:
                weight = rational(item.get("weight"))
            except Exception as exc:
                raise ValidationError(f"facet weight: {exc}") from exc
            normal = _ivec_in(item.get("normal"), "facet normal")
            _expect(
                isinstance(item.get("from_region"), int)
                and isinstance(item.get("to_region"), int),
                f"cell {cell_id}: facet data needs from_region and to_region",
            )
            facet_data[cell_id] = FacetData(
                weight=weight,
                normal=normal,
                from_region=item["from_region"],
                to_region=item["to_region"],
            )
    # Structural sanity: incidence and facet references must resolve.
    for cell_id, cell in cells.items():
        for ref in cell.incident:
            _expect(ref in cells, f"cell {cell_id}: incident id {ref} does not exist")
            _expect(
                cells[ref].dim == cell.dim - 1,
                f"cell {cell_id}: incident id {ref} is not one dimension lower",
            )
    for edge_id, fd in facet_data.items():
        _expect(
            fd.from_region in region_labels and fd.to_region in region_labels,
            f"edge {edge_id}: facet regions do not exist",
        )
    return LabeledSubdivision(
        ambient_dim=2,
        convention=convention,
        domain=domain,
        cells=cells,
        region_labels=region_labels,
        facet_data=facet_data,
    )


# ---------------------------------------------------------------------------
# reports and samples
# ---------------------------------------------------------------------------


def balance_report_to_dict(report: BalanceReport) -> dict:
    checked = []
    for vertex_id in sorted(report.per_vertex):
        vb = report.per_vertex[vertex_id]
        checked.append(
            {
                "vertex": vertex_id,
                "point": _vec_out(vb.point),
                "residual": _vec_out(vb.residual),
                "balanced": vb.balanced,
                "contributions": [
                    {"weight": format_rational(w), "normal": list(n)}
                    for w, n in vb.contributions
                ],
            }
        )
    return {
        "balanced": report.overall,
        "checked": checked,
        "skipped_boundary": list(report.skipped_boundary),
    }


def sample_to_dict(sample: CorrespondenceSample) -> dict:
    return {
        "pairs": [
            {"p": _vec_out(p), "q": _vec_out(q)} for p, q in sample.pairs
        ]
    }


def sample_from_dict(data) -> CorrespondenceSample:
    # Accepted either as a bare array of {"p": ..., "q": ...} pairs or
    # wrapped in {"pairs": [...]}.
    if isinstance(data, list):
        raw = data
    else:
        _expect(isinstance(data, dict), "sample: expected an object or array")
        raw = data.get("pairs")
    _expect(isinstance(raw, list) and raw, "sample: 'pairs' must be a nonempty array")
    pairs = []
    for item in raw:
        _expect(isinstance(item, dict), "sample pair: expected an object")
        pairs.append((_vec_in(item.get("p"), "pair p"), _vec_in(item.get("q"), "pair q")))
    try:
        return CorrespondenceSample(pairs=tuple(pairs))
    except Exception as exc:
        raise ValidationError(str(exc)) from exc


def polyline_to_dict(path: Polyline) -> dict:
    return {
        "waypoints": [_vec_out(p) for p in path.waypoints],
        "closed": path.closed,
    }


def polyline_from_dict(data) -> Polyline:
    _expect(isinstance(data, dict), "polyline: expected an object")
    raw = data.get("waypoints")
    _expect(isinstance(raw, list), "polyline: 'waypoints' must be an array")
    waypoints = tuple(_vec_in(p, "waypoint") for p in raw)
    closed = data.get("closed", False)
    _expect(isinstance(closed, bool), "polyline: 'closed' must be a boolean")
    try:
        return Polyline(waypoints=waypoints, closed=closed)
    except Exception as exc:
        raise ValidationError(str(exc)) from exc


def equilibrium_report_to_dict(report: EquilibriumReport) -> dict:
    certificate = None
    if report.certificate is not None:
        c = report.certificate
        certificate = {
            "prices": _vec_out(c.prices),
            "bundles": [list(q) for q in c.allocation.bundles],
            "receipts": [
                {
                    "consumer": r.consumer,
                    "surplus": format_rational(r.surplus),
                    "best_surplus": format_rational(r.best_surplus),
                    "optimal": r.optimal,
                }
                for r in c.receipts
            ],
            "status": c.status,
        }
    return {
        "min_value": format_rational(report.min_value),
        "argmin_prices": _vec_out(report.argmin_prices),
        "price_unique": report.price_unique,
        "max_value": format_rational(report.max_value),
        "argmax_allocations": [
            [list(q) for q in a.bundles] for a in report.argmax_allocations
        ],
        "gap": format_rational(report.gap),
        "exists": report.exists,
        "certificate": certificate,
        "demand_sets_at_argmin": [
            {
                "bundles": [list(q) for q in sorted(ds.bundles)],
                "surplus": format_rational(ds.value),
            }
            for ds in report.demand_sets_at_argmin
        ],
    }
