#!/usr/bin/env python3
"""Randomized sweep: integrate price complexes back to their potentials and
collect balancing statistics.

Usage: python3 scripts/sweep_random_valuations.py [count] [seed]
"""

import pathlib
import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from tropical_demand import (
    Valuation,
    check_balancing,
    essential_pieces,
    indirect_utility,
    integrate_subdivision,
    price_complex,
)


def random_valuation(rng: random.Random, max_bundles: int = 8) -> Valuation:
    entries = {(0, 0): Fraction(0)}
    target = rng.randint(1, max_bundles)
    while len(entries) < target:
        bundle = (rng.randint(0, 4), rng.randint(0, 4))
        entries.setdefault(bundle, Fraction(rng.randint(0, 50)))
    return Valuation(goods=2, entries=entries)


def main() -> None:
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 100
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    rng = random.Random(seed)
    start = time.time()
    region_hist: dict[int, int] = {}
    balanced = 0
    for _ in range(count):
        v = random_valuation(rng)
        s = price_complex(v)
        regions = s.regions()
        region_hist[len(regions)] = region_hist.get(len(regions), 0) + 1
        anchor = regions[0]
        bundle = tuple(int(c) for c in s.region_labels[anchor])
        potential = integrate_subdivision(s, (anchor, v.entries[bundle]))
        assert frozenset(potential.pieces) == essential_pieces(indirect_utility(v))
        if check_balancing(s).overall:
            balanced += 1
    elapsed = time.time() - start
    print(f"{count} valuations in {elapsed:.1f}s (seed {seed})")
    print(f"balanced price complexes: {balanced}/{count}")
    print("regions histogram:", dict(sorted(region_hist.items())))


if __name__ == "__main__":
    main()
