"""Exact rational scalars, vectors, and integer-lattice helpers.

Every quantity in this package is exact.  Scalars are ``fractions.Fraction``
(the stdlib keeps them in canonical form: positive denominator, reduced),
rational vectors are plain tuples of Fractions, and lattice vectors are
tuples of ints.  All helpers here are pure functions on immutable values,
so they are safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DegenerateInput

Rational = Fraction
Vec = tuple[Fraction, ...]
IVec = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rational(value: int | str | Fraction) -> Fraction:
    """Parse a rational from an int, a Fraction, or a ``num/den`` string.

    A zero denominator signals :class:`DegenerateInput`.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DegenerateInput(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, slash, den = text.partition("/")
        try:
            numerator = int(num)
        except ValueError:
            raise DegenerateInput(f"not a rational: {value!r}") from None
        if not slash:
            return Fraction(numerator)
        try:
            denominator = int(den)
        except ValueError:
            raise DegenerateInput(f"not a rational: {value!r}") from None
        if denominator == 0:
            raise DegenerateInput(f"zero denominator in {value!r}")
        return Fraction(numerator, denominator)
    raise DegenerateInput(f"not a rational: {value!r}")


def format_rational(x: Fraction) -> str:
    """Render ``num/den``, or just ``num`` when the denominator is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_vec(coords: Iterable[int | str | Fraction]) -> Vec:
    return tuple(rational(c) for c in coords)


def as_ivec(coords: Iterable[int]) -> IVec:
    out = []
    for c in coords:
        if isinstance(c, bool) or not isinstance(c, int):
            raise DegenerateInput(f"not an integer coordinate: {c!r}")
        out.append(c)
    return tuple(out)


def ivec_to_vec(v: IVec) -> Vec:
    return tuple(Fraction(c) for c in v)


def dot(u: Sequence[Fraction | int], v: Sequence[Fraction | int]) -> Fraction:
    if len(u) != len(v):
        raise DegenerateInput(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((Fraction(a) * b for a, b in zip(u, v)), ZERO)


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence[Fraction | int], v: Sequence[Fraction | int]) -> Vec:
    if len(u) != len(v):
        raise DegenerateInput(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(Fraction(a) - Fraction(b) for a, b in zip(u, v))


def vscale(c: Fraction | int, v: Sequence[Fraction | int]) -> Vec:
    return tuple(Fraction(c) * Fraction(x) for x in v)


def is_zero_vec(v: Sequence[Fraction | int]) -> bool:
    return all(x == 0 for x in v)


def is_primitive(v: IVec) -> bool:
    """True iff the gcd of the absolute coordinates is 1."""
    g = 0
    for c in v:
        g = gcd(g, abs(c))
    return g == 1


def primitive_direction(v: IVec, orient: IVec | None = None) -> tuple[IVec, int]:
    """Factor a nonzero lattice vector as ``v = w * n`` with n primitive, w > 0.

    With no ``orient``, the sign of ``n`` is the sign of ``v`` itself, so the
    identity ``w * n == v`` always holds.  When ``orient`` is given, the
    reported normal is flipped if necessary so that ``n . orient > 0``; in
    that case only ``v = +/- w * n`` is guaranteed.
    """
    g = 0
    for c in v:
        g = gcd(g, abs(c))
    if g == 0:
        raise DegenerateInput("primitive_direction of the zero vector")
    n = tuple(c // g for c in v)
    if orient is not None:
        side = sum(a * b for a, b in zip(n, orient))
        if side == 0:
            raise DegenerateInput("orientation hint is orthogonal to the direction")
        if side < 0:
            n = tuple(-c for c in n)
    return n, g


def rational_direction(v: Sequence[Fraction | int]) -> tuple[IVec, Fraction]:
    """Factor a nonzero rational vector as ``v = w * n``, n primitive integer, w > 0 rational."""
    fracs = [Fraction(c) for c in v]
    if all(c == 0 for c in fracs):
        raise DegenerateInput("rational_direction of the zero vector")
    scale = lcm(*(c.denominator for c in fracs)) if fracs else 1
    ints = tuple(int(c * scale) for c in fracs)
    n, g = primitive_direction(ints)
    return n, Fraction(g, scale)


def lattice_length(v: Sequence[Fraction | int]) -> Fraction:
    """The w in ``v = w * n`` with n a primitive lattice direction."""
    return rational_direction(v)[1]


def rot90ccw(v: Sequence[Fraction | int]) -> tuple:
    if len(v) != 2:
        raise DegenerateInput("rot90ccw needs a 2-vector")
    return (-v[1], v[0])


def cross2(u: Sequence[Fraction | int], v: Sequence[Fraction | int]) -> Fraction:
    return Fraction(u[0]) * v[1] - Fraction(u[1]) * v[0]


def solve_linear_system(
    rows: Sequence[Sequence[Fraction | int]], rhs: Sequence[Fraction | int]
) -> list[Fraction] | None:
    """Solve a square exact linear system by Gaussian elimination.

    Returns None when the matrix is singular.
    """
    n = len(rows)
    if n == 0:
        return []
    if any(len(r) != n for r in rows) or len(rhs) != n:
        raise DegenerateInput("solve_linear_system needs a square system")
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def independent_directions(points: Sequence[Sequence[Fraction | int]]) -> list[Vec]:
    """A maximal set of linearly independent difference vectors ``p_i - p_0``.

    The length of the result is the dimension of the affine hull of the
    points.
    """
    if not points:
        return []
    base = [Fraction(c) for c in points[0]]
    basis: list[list[Fraction]] = []
    reduced: list[list[Fraction]] = []
    for p in points[1:]:
        vec = [Fraction(c) - b for c, b in zip(p, base)]
        work = vec[:]
        for row in reduced:
            lead = next((i for i, x in enumerate(row) if x != 0), None)
            if lead is not None and work[lead] != 0:
                factor = work[lead] / row[lead]
                work = [x - factor * y for x, y in zip(work, row)]
        if any(x != 0 for x in work):
            basis.append(vec)
            reduced.append(work)
    return [tuple(v) for v in basis]
