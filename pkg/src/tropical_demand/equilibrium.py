"""Quasi-linear exchange economies and the equilibrium duality test.

The minimum of aggregate indirect utility over nonnegative prices always
weakly exceeds the maximum of aggregate utility over feasible allocations;
a Walrasian equilibrium exists exactly when the two coincide.  Both sides
are computed exactly: the price side by an epigraph LP, the allocation
side by capped exhaustive enumeration over the bundle supports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InstanceTooLarge, ValidationError
from .exactmath import IVec, Vec, ZERO, dot
from .polyhedra import HalfSpace, LinearProgram, simplex_solve
from .valuation import DemandSet, Valuation, demand


@dataclass(frozen=True)
class Economy:
    """Consumers with finite valuations plus a social endowment.

    The optional per-consumer endowment split only affects transfer
    bookkeeping in reports; the equilibrium verdict never depends on it.
    """

    goods: int
    consumers: tuple[Valuation, ...]
    endowment: IVec
    ownership: tuple[IVec, ...] | None = None

    def __post_init__(self):
        if not self.consumers:
            raise ValidationError("economy needs at least one consumer")
        for v in self.consumers:
            if v.goods != self.goods:
                raise ValidationError("consumer dimension mismatch")
        if len(self.endowment) != self.goods or any(
            not isinstance(c, int) or c < 0 for c in self.endowment
        ):
            raise ValidationError("endowment must be a nonnegative lattice vector")
        if self.ownership is not None:
            if len(self.ownership) != len(self.consumers):
                raise ValidationError("ownership split needs one share per consumer")
            for share in self.ownership:
                if len(share) != self.goods or any(c < 0 for c in share):
                    raise ValidationError("ownership shares must be nonnegative")
            total = tuple(sum(share[l] for share in self.ownership) for l in range(self.goods))
            if total != tuple(self.endowment):
                raise ValidationError("ownership shares must sum to the endowment")


@dataclass(frozen=True)
class Allocation:
    """One bundle per consumer."""

    bundles: tuple[IVec, ...]


@dataclass(frozen=True)
class ConsumerReceipt:
    consumer: int
    surplus: Fraction
    best_surplus: Fraction

    @property
    def optimal(self) -> bool:
        return self.surplus == self.best_surplus


@dataclass(frozen=True)
class Certificate:
    prices: Vec
    allocation: Allocation
    receipts: tuple[ConsumerReceipt, ...]
    status: str  # "found" | "indeterminate"


@dataclass(frozen=True)
class EquilibriumReport:
    min_value: Fraction
    argmin_prices: Vec
    price_unique: bool
    max_value: Fraction
    argmax_allocations: tuple[Allocation, ...]
    gap: Fraction
    exists: bool
    certificate: Certificate | None
    demand_sets_at_argmin: tuple[DemandSet, ...]


def _check_prices(e: Economy, p: Sequence[Fraction | int]) -> Vec:
    if len(p) != e.goods:
        raise DomainError("price vector has wrong length")
    prices = tuple(Fraction(c) for c in p)
    if any(c < 0 for c in prices):
        raise DomainError("prices must be nonnegative")
    return prices


def _check_allocation(e: Economy, a: Allocation) -> None:
    if len(a.bundles) != len(e.consumers):
        raise DomainError("allocation needs one bundle per consumer")
    for bundle, consumer in zip(a.bundles, e.consumers):
        if bundle not in consumer.entries:
            raise DomainError(f"bundle {bundle} is not in the consumer's support")
    for l in range(e.goods):
        if sum(bundle[l] for bundle in a.bundles) > e.endowment[l]:
            raise DomainError("allocation exceeds the endowment")


def best_surplus(v: Valuation, p: Sequence[Fraction | int]) -> Fraction:
    return max(u - dot(p, q) for q, u in v.entries.items())


def aggregate_indirect(e: Economy, p: Sequence[Fraction | int]) -> Fraction:
    """Sum of consumer surplus maxima plus the endowment value, exactly."""
    prices = _check_prices(e, p)
    return sum((best_surplus(v, prices) for v in e.consumers), ZERO) + dot(
        prices, e.endowment
    )


def min_aggregate_indirect(e: Economy) -> tuple[Fraction, Vec, bool]:
    """Epigraph LP: minimize sum_i t_i + p.w with t_i above every surplus piece.

    Returns the exact optimum, one optimal price vector, and whether the
    optimal prices are unique (established by bounding each price coordinate
    over the optimal face).
    """
    n = len(e.consumers)
    L = e.goods
    nvars = n + L
    constraints = []
    for i, v in enumerate(e.consumers):
        for q, u in sorted(v.entries.items()):
            normal = [ZERO] * nvars
            normal[i] = Fraction(-1)
            for l in range(L):
                normal[n + l] = Fraction(-q[l])
            constraints.append(HalfSpace(normal=tuple(normal), offset=-u))
    objective = tuple([Fraction(1)] * n + [Fraction(c) for c in e.endowment])
    nonneg = tuple([False] * n + [True] * L)
    lp = LinearProgram(
        objective=objective,
        sense="min",
        constraints=tuple(constraints),
        nonneg=nonneg,
    )
    res = simplex_solve(lp, probe_unique=False)
    assert res.status == "optimal", "epigraph LP is always feasible and bounded"
    value = res.value
    prices = res.point[n:]

    unique = True
    face = lp.equalities + ((objective, value),)
    for l in range(L):
        unit = tuple(
            Fraction(1 if k == n + l else 0) for k in range(nvars)
        )
        for sense in ("min", "max"):
            probe = LinearProgram(
                objective=unit,
                sense=sense,
                constraints=lp.constraints,
                equalities=face,
                nonneg=nonneg,
            )
            probe_res = simplex_solve(probe, probe_unique=False)
            if probe_res.status != "optimal" or probe_res.value != prices[l]:
                unique = False
                break
        if not unique:
            break
    return value, prices, unique


def max_aggregate_utility(
    e: Economy, cap: int = 10**6
) -> tuple[Fraction, tuple[Allocation, ...]]:
    """Exhaustive search over the product of bundle supports, feasibility
    filtered; returns the exact maximum and every maximizer."""
    supports = [v.bundles() for v in e.consumers]
    size = 1
    for s in supports:
        size *= len(s)
    if size > cap:
        raise InstanceTooLarge(
            f"allocation space has {size} points (cap {cap}); prune supports"
        )
    best: Fraction | None = None
    argmax: list[Allocation] = []
    for combo in itertools.product(*supports):
        if any(
            sum(bundle[l] for bundle in combo) > e.endowment[l] for l in range(e.goods)
        ):
            continue
        total = sum((v.entries[q] for v, q in zip(e.consumers, combo)), ZERO)
        if best is None or total > best:
            best, argmax = total, [Allocation(bundles=combo)]
        elif total == best:
            argmax.append(Allocation(bundles=combo))
    assert best is not None, "the all-zero allocation is always feasible"
    return best, tuple(argmax)


def walrasian_check(
    e: Economy, p: Sequence[Fraction | int], a: Allocation
) -> tuple[bool, tuple[ConsumerReceipt, ...]]:
    """Per-consumer optimality receipts: does each assigned bundle attain the
    consumer's best surplus at these prices?"""
    prices = _check_prices(e, p)
    _check_allocation(e, a)
    receipts = []
    for i, (v, q) in enumerate(zip(e.consumers, a.bundles)):
        receipts.append(
            ConsumerReceipt(
                consumer=i,
                surplus=v.entries[q] - dot(prices, q),
                best_surplus=best_surplus(v, prices),
            )
        )
    return all(r.optimal for r in receipts), tuple(receipts)


def economy_potential(
    e: Economy, p: Sequence[Fraction | int], a: Allocation
) -> Fraction:
    """Aggregate utility minus aggregate indirect utility; always <= 0, and
    zero exactly at Walrasian equilibria (each consumer optimal and no
    leftover supply at a positive price)."""
    prices = _check_prices(e, p)
    _check_allocation(e, a)
    total_u = sum((v.entries[q] for v, q in zip(e.consumers, a.bundles)), ZERO)
    return total_u - aggregate_indirect(e, prices)


def _market_clears(e: Economy, p: Vec, a: Allocation) -> bool:
    leftover = tuple(
        e.endowment[l] - sum(bundle[l] for bundle in a.bundles) for l in range(e.goods)
    )
    return dot(p, leftover) == 0


def duality_test(e: Economy, cap: int = 10**6) -> EquilibriumReport:
    """Compare min aggregate indirect utility with max aggregate utility.

    ``exists`` is decided by the gap alone.  When the gap is zero, a
    certificate is assembled from a maximizing allocation (whose consumers
    are then all optimal at the minimizing prices, with no priced leftover
    supply); a capped fallback searches the product of demand sets.  When
    no equilibrium exists, the per-consumer demand sets at the minimizing
    prices document why the market cannot clear.
    """
    min_value, prices, unique = min_aggregate_indirect(e)
    max_value, argmax = max_aggregate_utility(e, cap=cap)
    gap = min_value - max_value
    exists = gap == 0
    demand_sets = tuple(demand(v, prices) for v in e.consumers)

    certificate = None
    if exists:
        certificate = _build_certificate(e, prices, argmax, demand_sets, cap)
    return EquilibriumReport(
        min_value=min_value,
        argmin_prices=prices,
        price_unique=unique,
        max_value=max_value,
        argmax_allocations=argmax,
        gap=gap,
        exists=exists,
        certificate=certificate,
        demand_sets_at_argmin=demand_sets,
    )


def _build_certificate(
    e: Economy,
    prices: Vec,
    argmax: tuple[Allocation, ...],
    demand_sets: tuple[DemandSet, ...],
    cap: int,
) -> Certificate:
    for allocation in argmax:
        ok, receipts = walrasian_check(e, prices, allocation)
        if ok and _market_clears(e, prices, allocation):
            return Certificate(
                prices=prices, allocation=allocation, receipts=receipts, status="found"
            )
    # Fallback: search selections from the demand sets directly.
    size = 1
    for ds in demand_sets:
        size *= len(ds.bundles)
    if size <= cap:
        for combo in itertools.product(*(sorted(ds.bundles) for ds in demand_sets)):
            allocation = Allocation(bundles=combo)
            feasible = all(
                sum(b[l] for b in combo) <= e.endowment[l] for l in range(e.goods)
            )
            if not feasible:
                continue
            if _market_clears(e, prices, allocation):
                ok, receipts = walrasian_check(e, prices, allocation)
                if ok:
                    return Certificate(
                        prices=prices,
                        allocation=allocation,
                        receipts=receipts,
                        status="found",
                    )
    _, receipts = walrasian_check(e, prices, argmax[0])
    return Certificate(
        prices=prices, allocation=argmax[0], receipts=receipts, status="indeterminate"
    )
