"""Exact integer 3-vectors, bases and Hermite normal forms.

Vectors are plain ``tuple[int, int, int]``. A :class:`Basis3` stores its
columns; the matrix it represents has ``B[i][j] == cols[j][i]``.

Python integers never wrap, but results are still confined to the signed
128-bit range so that outputs stay reproducible by fixed-width
implementations. Inputs are expected to satisfy ``|coordinate| <= 2**30`` and
edge lengths ``d <= 10**4``; within those bounds no guard ever fires.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .errors import IntOverflowError, RankError, ZeroVectorError

Vec3 = Tuple[int, int, int]

INT_LIMIT = 1 << 127


def checked(x: int) -> int:
    if not -INT_LIMIT <= x < INT_LIMIT:
        raise IntOverflowError(f"value {x} exceeds the signed 128-bit range")
    return x


def vec(xs: Iterable[int]) -> Vec3:
    t = tuple(int(x) for x in xs)
    if len(t) != 3:
        raise ValueError(f"expected 3 coordinates, got {len(t)}")
    return t  # type: ignore[return-value]


def add(a: Vec3, b: Vec3) -> Vec3:
    return (checked(a[0] + b[0]), checked(a[1] + b[1]), checked(a[2] + b[2]))


def sub(a: Vec3, b: Vec3) -> Vec3:
    return (checked(a[0] - b[0]), checked(a[1] - b[1]), checked(a[2] - b[2]))


def scale(k: int, a: Vec3) -> Vec3:
    return (checked(k * a[0]), checked(k * a[1]), checked(k * a[2]))


def exact_div(a: Vec3, k: int) -> Optional[Vec3]:
    """``a / k`` if every coordinate is divisible by ``k``, else None."""
    if any(x % k for x in a):
        return None
    return (a[0] // k, a[1] // k, a[2] // k)


def dot(a: Vec3, b: Vec3) -> int:
    return checked(a[0] * b[0] + a[1] * b[1] + a[2] * b[2])


def norm2(a: Vec3) -> int:
    return dot(a, a)


def cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        checked(a[1] * b[2] - a[2] * b[1]),
        checked(a[2] * b[0] - a[0] * b[2]),
        checked(a[0] * b[1] - a[1] * b[0]),
    )


def det3(a: Vec3, b: Vec3, c: Vec3) -> int:
    return dot(cross(a, b), c)


def gcd_vec(a: Sequence[int]) -> int:
    return math.gcd(*a)


def is_primitive(a: Vec3) -> bool:
    return gcd_vec(a) == 1


def primitive_part(a: Vec3) -> Tuple[int, Vec3]:
    """Split ``a`` as ``k * u`` with ``k > 0`` and ``u`` primitive."""
    k = gcd_vec(a)
    if k == 0:
        raise ZeroVectorError("the zero vector has no primitive part")
    return k, (a[0] // k, a[1] // k, a[2] // k)


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def max_square_divisor(n: int) -> int:
    """Largest ``d`` with ``d*d`` dividing ``n`` (so ``n // d**2`` is square-free)."""
    if n < 1:
        raise ValueError("n must be positive")
    d = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        d *= p ** (e // 2)
        p += 1 if p == 2 else 2
    return d


def factorize(n: int) -> list:
    """Prime factors of ``|n|`` in ascending order, with multiplicity."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list:
    """Positive divisors of ``n >= 1`` in ascending order."""
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def icbrt(n: int) -> Optional[int]:
    """Exact cube root of ``n >= 0``, or None if ``n`` is not a cube."""
    if n < 0:
        raise ValueError("n must be non-negative")
    r = round(n ** (1.0 / 3.0)) if n < (1 << 52) else _icbrt_newton(n)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c * c == n:
            return c
    return None


def _icbrt_newton(n: int) -> int:
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            return x
        x = y


def rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / rows[r][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def hnf_columns(cols: Sequence[Sequence[int]], n: int) -> list:
    """Column Hermite normal form of a full-rank set of ``n``-dimensional columns.

    Output: ``n`` columns forming a lower-triangular matrix with positive
    diagonal, where every entry left of a diagonal entry lies in
    ``[0, diagonal)``. Raises :class:`RankError` if the columns do not span a
    rank-``n`` group.
    """
    A = [[int(x) for x in c] for c in cols if any(c)]
    if len(A) < n:
        raise RankError(rank(cols) if cols else 0, n)
    m = len(A)
    for r in range(n):
        for j in range(r + 1, m):
            b = A[j][r]
            if b == 0:
                continue
            a = A[r][r]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            cr, cj = A[r], A[j]
            A[r] = [checked(x * p + y * q) for p, q in zip(cr, cj)]
            A[j] = [checked(ag * q - bg * p) for p, q in zip(cr, cj)]
        if A[r][r] == 0:
            raise RankError(rank(cols), n)
        if A[r][r] < 0:
            A[r] = [-x for x in A[r]]
    for r in range(1, n):
        piv = A[r][r]
        for c in range(r):
            q = A[c][r] // piv
            if q:
                A[c] = [checked(x - q * y) for x, y in zip(A[c], A[r])]
    return [tuple(c) for c in A[:n]]


@dataclass(frozen=True)
class Basis3:
    """Three integer columns spanning a full-rank sublattice of Z³."""

    cols: Tuple[Vec3, Vec3, Vec3]

    def __post_init__(self):
        cols = tuple(vec(c) for c in self.cols)
        if len(cols) != 3:
            raise ValueError("a basis needs exactly three columns")
        object.__setattr__(self, "cols", cols)
        if self.det == 0:
            raise RankError(rank(cols), 3)

    @classmethod
    def of(cls, *cols: Iterable[int]) -> "Basis3":
        return cls(tuple(vec(c) for c in cols))

    @cached_property
    def det(self) -> int:
        return det3(*self.cols)

    @property
    def index(self) -> int:
        return abs(self.det)

    @cached_property
    def _adj_rows(self) -> Tuple[Vec3, Vec3, Vec3]:
        a, b, c = self.cols
        return cross(b, c), cross(c, a), cross(a, b)

    def coords(self, a: Vec3) -> Optional[Vec3]:
        """Integer ``x`` with ``B x == a``, or None when ``a`` is not a member."""
        det = self.det
        out = []
        for row in self._adj_rows:
            num = dot(row, a)
            if num % det:
                return None
            out.append(num // det)
        return tuple(out)  # type: ignore[return-value]

    def __contains__(self, a) -> bool:
        return self.coords(tuple(a)) is not None

    def apply(self, x: Vec3) -> Vec3:
        a, b, c = self.cols
        return add(add(scale(x[0], a), scale(x[1], b)), scale(x[2], c))

    def scaled(self, k: int) -> "Basis3":
        return type(self)(tuple(scale(k, c) for c in self.cols))

    def gram(self) -> Tuple[Vec3, Vec3, Vec3]:
        return gram(self)

    def hnf(self) -> "HnfBasis3":
        return hnf_of_generators(self.cols)

    def to_json(self) -> list:
        return [list(c) for c in self.cols]

    @classmethod
    def from_json(cls, data) -> "Basis3":
        return cls(tuple(vec(c) for c in data))


class HnfBasis3(Basis3):
    """A :class:`Basis3` in canonical column Hermite normal form.

    Two generating sets span the same lattice iff their HNFs are equal.
    """

    def key(self) -> Tuple[int, ...]:
        return tuple(x for c in self.cols for x in c)

    def scaled(self, k: int) -> Basis3:
        if k > 0:
            return HnfBasis3(tuple(scale(k, c) for c in self.cols))
        return Basis3(tuple(scale(k, c) for c in self.cols))


def gram(B: Basis3) -> Tuple[Vec3, Vec3, Vec3]:
    c = B.cols
    return tuple(tuple(dot(c[i], c[j]) for j in range(3)) for i in range(3))  # type: ignore[return-value]


def hnf_of_generators(gens: Iterable[Iterable[int]]) -> HnfBasis3:
    cols = [vec(g) for g in gens]
    return HnfBasis3(tuple(hnf_columns(cols, 3)))


def coords_in_basis(B: Basis3, a: Vec3) -> Optional[Vec3]:
    return B.coords(vec(a))


IDENTITY = HnfBasis3(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
