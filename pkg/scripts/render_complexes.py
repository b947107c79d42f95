#!/usr/bin/env python3
"""Build the price and demand complexes for the bundled five-bundle
valuation and write JSON + SVG next to this script (out/)."""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from tropical_demand import check_balancing, demand_complex, price_complex
from tropical_demand.serialize import dumps, subdivision_to_dict, valuation_from_dict
from tropical_demand.svg import render_subdivision


def main() -> None:
    root = pathlib.Path(__file__).resolve().parents[1]
    out = root / "scripts" / "out"
    out.mkdir(exist_ok=True)
    data = json.loads((root / "data" / "five_bundle_valuation.json").read_text())
    v = valuation_from_dict(data)

    for which, build in (("price", price_complex), ("demand", demand_complex)):
        s = build(v)
        (out / f"{which}_complex.json").write_text(dumps(subdivision_to_dict(s)))
        (out / f"{which}_complex.svg").write_text(render_subdivision(s))
        report = check_balancing(s)
        print(
            f"{which} complex: {len(s.regions())} regions, {len(s.edges())} edges, "
            f"{len(s.vertices())} vertices; balanced={report.overall} "
            f"(checked {len(report.per_vertex)}, skipped {len(report.skipped_boundary)})"
        )
    print(f"wrote JSON and SVG to {out}")


if __name__ == "__main__":
    main()
