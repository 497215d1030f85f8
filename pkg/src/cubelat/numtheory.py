"""Sums of three coprime squares via cubic sublattices.

A primitive ``t`` with ``d² | |t|²`` keeps being primitive when written in a
cubic basis of ``gamma(t, d)``; its new coordinates square-sum to
``|t|² / d²`` (:func:`scale_down`). For odd ``d`` the converse holds and
:func:`reverse_construct` produces the lift explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .cubic import NotCubic, cubic_basis_extract, gamma
from .errors import (
    DivisibilityError,
    EvenModulusError,
    NotPrimeError,
    NotPrimitiveError,
)
from .int3 import (
    Basis3,
    Vec3,
    dot,
    factorize,
    gcd_vec,
    is_primitive,
    norm2,
    primitive_part,
    vec,
)

EXHAUSTIVE_SQRT_LIMIT = 10**4


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == [n]


def sqrt_minus_one(p: int) -> int:
    """Some ``x`` in ``[1, p)`` with ``x² ≡ -1 (mod p)`` for a prime ``p ≡ 1 (mod 4)``."""
    for g in range(2, min(p, 200)):
        x = pow(g, (p - 1) // 4, p)
        if x * x % p == p - 1:
            return x
    if p < EXHAUSTIVE_SQRT_LIMIT:
        for x in range(1, p):
            if x * x % p == p - 1:
                return x
    raise ValueError(f"no square root of -1 found modulo {p}")


def _sum_two_squares_minus_one(p: int) -> Tuple[int, int]:
    for x in range(1, p):
        for y in range(1, p):
            if (x * x + y * y + 1) % p == 0:
                return x, y
    raise AssertionError(f"x² + y² ≡ -1 has no solution modulo {p}")  # pragma: no cover


def prime_vector(p: int) -> Vec3:
    """A primitive vector whose squared length is divisible by ``p²``.

    Only odd primes admit one.
    """
    if p == 2:
        raise EvenModulusError("no primitive vector has squared length divisible by 4")
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p % 4 == 1:
        x, y = 0, sqrt_minus_one(p)
    else:
        x, y = _sum_two_squares_minus_one(p)
    a = (x * x + y * y + 1) // p
    b = -a * pow(2, -1, p) % p
    _, w = primitive_part((x, y, b * p + 1))
    assert norm2(w) % (p * p) == 0
    return w


@dataclass(frozen=True)
class ReverseStep:
    p: int
    w: Vec3
    permutation: Tuple[int, int, int]
    sign_flip: bool
    basis: Basis3
    result: Vec3

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "w": list(self.w),
            "permutation": list(self.permutation),
            "sign_flip": self.sign_flip,
            "basis": self.basis.to_json(),
            "result": list(self.result),
        }


@dataclass(frozen=True)
class ReverseTrace:
    """Lift of ``v`` to ``u`` with ``coords(certificate, u) == v``.

    ``certificate`` is a cubic basis of ``gamma(u, d)``.
    """

    v: Vec3
    d: int
    steps: Tuple[ReverseStep, ...]
    u: Vec3
    certificate: Basis3

    @property
    def outer_basis(self) -> Optional[Basis3]:
        return self.steps[0].basis if self.steps else None

    def to_json(self) -> dict:
        return {
            "v": list(self.v),
            "d": self.d,
            "steps": [s.to_json() for s in self.steps],
            "u": list(self.u),
            "certificate": self.certificate.to_json(),
        }


def _matmul(rows: Tuple[Vec3, Vec3, Vec3], cols: Tuple[Vec3, Vec3, Vec3]) -> Tuple[Vec3, ...]:
    # columns of rows @ cols
    return tuple(tuple(dot(r, c) for r in rows) for c in cols)


def _reverse_prime(v: Vec3, p: int) -> ReverseStep:
    i = next(j for j in range(3) if v[j] % p)
    w0 = prime_vector(p)
    j = next(j for j in range(3) if w0[j] % p)
    perm = [0, 1, 2]
    perm[i], perm[j] = perm[j], perm[i]
    w = [w0[perm[0]], w0[perm[1]], w0[perm[2]]]
    flip = dot(v, tuple(w)) % p == 0
    if flip:
        w[i] = -w[i]
    w = tuple(w)
    assert dot(v, w) % p, (v, w, p)
    B = cubic_basis_extract(gamma(w, p).hnf)
    assert not isinstance(B, NotCubic)
    u = B.coords(tuple(p * p * x for x in v))
    assert u is not None and is_primitive(u), (v, w, p, u)
    return ReverseStep(p, w, tuple(perm), flip, B, u)


def reverse_construct(v: Vec3, d: int) -> ReverseTrace:
    """Primitive ``u`` such that ``gamma(u, d)`` has a cubic basis in which ``u`` reads ``v``.

    ``d`` must be odd. The lift is done one prime factor at a time (ascending).
    """
    v = vec(v)
    if gcd_vec(v) != 1:
        raise NotPrimitiveError(f"{v} is not primitive")
    if d < 1:
        raise ValueError("d must be a positive integer")
    if d % 2 == 0:
        raise EvenModulusError("d must be odd")
    steps: List[ReverseStep] = []
    cur = v
    for p in factorize(d):
        step = _reverse_prime(cur, p)
        steps.append(step)
        cur = step.result
    # u = B_n^T ... B_1^T v, so the columns of that product form a cubic basis
    # of gamma(u, d) in which u has coordinates v
    Q = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for step in steps:
        Q = _matmul(step.basis.cols, Q)
    cert = Basis3(Q)
    assert cert.apply(v) == cur
    assert cert.gram() == tuple(tuple(d * d * (r == c) for c in range(3)) for r in range(3))
    assert norm2(cur) == d * d * norm2(v)
    return ReverseTrace(v, d, tuple(steps), cur, cert)


def scale_down(t: Vec3, d: int) -> Vec3:
    """Coordinates of coprime ``t`` in the cubic basis of ``gamma(t, d)``."""
    t = vec(t)
    if gcd_vec(t) != 1:
        raise NotPrimitiveError(f"{t} is not coprime")
    if norm2(t) % (d * d):
        raise DivisibilityError()
    if d == 1:
        # the standard basis is itself a cubic basis of Z³
        return t
    x = gamma(t, d).basis.coords(t)
    assert x is not None and is_primitive(x)
    return x


def scale_up(t: Vec3, d: int) -> Vec3:
    """A coprime triple whose squares sum to ``d² * |t|²`` (``d`` odd)."""
    return reverse_construct(t, d).u


def coprime_three_squares_necessary(m: int) -> bool:
    """False when ``m`` certainly is not a sum of three coprime squares."""
    if m < 1:
        raise ValueError("m must be positive")
    return not (m % 4 == 0 or m % 8 == 7)
