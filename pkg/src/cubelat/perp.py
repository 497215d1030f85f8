"""The plane lattice of integer vectors orthogonal to a primitive vector.

For primitive ``v`` the vectors ``a`` with ``a . v == 0`` form a rank-2 lattice
whose fundamental parallelogram has area ``|v|``. Crossing with ``v`` maps
``Z³ / Zv`` bijectively onto that lattice; :func:`phi_lift` inverts the map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from .errors import (
    DivisibilityError,
    NotOrthogonalError,
    NotPrimitiveError,
    ZeroVectorError,
)
from .int3 import (
    Vec3,
    add,
    checked,
    cross,
    dot,
    gcd_vec,
    hnf_columns,
    norm2,
    scale,
    vec,
    xgcd,
)

E = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _require_primitive(v: Vec3) -> None:
    g = gcd_vec(v)
    if g == 0:
        raise ZeroVectorError("v must be non-zero")
    if g != 1:
        raise NotPrimitiveError(f"{v} is not primitive (greatest divisor {g})")


@dataclass(frozen=True)
class PlaneLattice:
    """Rank-2 lattice spanned by ``b1, b2`` inside the plane orthogonal to ``normal``."""

    normal: Vec3
    b1: Vec3
    b2: Vec3

    @property
    def area_vector(self) -> Vec3:
        return cross(self.b1, self.b2)

    def coords(self, m: Vec3) -> Optional[Tuple[int, int]]:
        """Integer ``(s, t)`` with ``s*b1 + t*b2 == m``, or None."""
        if dot(m, self.normal) != 0:
            return None
        n = self.area_vector
        den = dot(n, n)
        s = dot(cross(m, self.b2), n)
        t = dot(cross(self.b1, m), n)
        if s % den or t % den:
            return None
        return s // den, t // den

    def __contains__(self, m) -> bool:
        return self.coords(vec(m)) is not None

    def at(self, s: int, t: int) -> Vec3:
        return add(scale(s, self.b1), scale(t, self.b2))

    def sublattice(self, gens: Iterable[Vec3]) -> "PlaneLattice":
        """Canonical basis of the sublattice generated by ``gens``.

        The HNF is taken in ``(b1, b2)`` coordinates and mapped back.
        """
        local = []
        for g in gens:
            c = self.coords(vec(g))
            if c is None:
                raise NotOrthogonalError(f"{g} is not a member of the plane lattice")
            local.append(c)
        (s1, t1), (s2, t2) = hnf_columns(local, 2)
        return PlaneLattice(self.normal, self.at(s1, t1), self.at(s2, t2))

    def index_in(self, other: "PlaneLattice") -> int:
        """Index of this lattice inside ``other`` (which must contain it)."""
        c1 = other.coords(self.b1)
        c2 = other.coords(self.b2)
        if c1 is None or c2 is None:
            raise ValueError("lattice is not contained in the reference lattice")
        return abs(c1[0] * c2[1] - c1[1] * c2[0])

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "basis": [list(self.b1), list(self.b2)]}


def bezout_vector(v: Vec3) -> Vec3:
    """Some integer ``t`` with ``t . v == gcd(v)``."""
    g, x, y = xgcd(v[0], v[1])
    g2, p, q = xgcd(g, v[2])
    return (checked(p * x), checked(p * y), q)


def _kernel_basis(v: Vec3) -> Tuple[Vec3, Vec3]:
    # column operations on the row (v1, v2, v3) tracked in a unimodular U;
    # once the row reads (g, 0, 0) the last two columns of U span the kernel
    row = list(v)
    U = [list(c) for c in E]
    for j in (1, 2):
        b = row[j]
        if b == 0:
            continue
        a = row[0]
        g, x, y = xgcd(a, b)
        ag, bg = a // g, b // g
        c0, cj = U[0], U[j]
        U[0] = [x * p + y * q for p, q in zip(c0, cj)]
        U[j] = [ag * q - bg * p for p, q in zip(c0, cj)]
        row[0], row[j] = g, 0
    return tuple(U[1]), tuple(U[2])  # type: ignore[return-value]


def _lagrange_reduce(b1: Vec3, b2: Vec3) -> Tuple[Vec3, Vec3]:
    while True:
        n1, n2 = norm2(b1), norm2(b2)
        if n2 < n1:
            b1, b2, n1 = b2, b1, n2
        mu = (2 * dot(b1, b2) + n1) // (2 * n1)
        if mu == 0:
            return b1, b2
        b2 = add(b2, scale(-mu, b1))


def perp_basis(v: Vec3) -> PlaneLattice:
    """A basis of all integer vectors orthogonal to the primitive vector ``v``.

    The basis is Lagrange-reduced and oriented so that ``b1 x b2 == v``.
    """
    v = vec(v)
    _require_primitive(v)
    b1, b2 = _lagrange_reduce(*_kernel_basis(v))
    n = cross(b1, b2)
    if n == v:
        plane = PlaneLattice(v, b1, b2)
    elif n == scale(-1, v):
        plane = PlaneLattice(v, b2, b1)
    else:  # pragma: no cover - the kernel of a primitive row has covolume |v|
        raise AssertionError(f"kernel basis of {v} has area vector {n}")
    # e_i x v must generate the whole plane
    spanned = plane.sublattice(cross(e, v) for e in E)
    assert spanned.index_in(plane) == 1, spanned
    return plane


def phi_lift(v: Vec3, m: Vec3) -> Vec3:
    """Return ``w`` with ``w x v == m``, chosen canonically in ``w + Zv``.

    The representative minimises the max-norm; ties go to the smaller
    Euclidean norm, then to the lexicographically smaller vector.
    """
    v, m = vec(v), vec(m)
    _require_primitive(v)
    if dot(m, v) != 0:
        raise NotOrthogonalError(f"{m} is not orthogonal to {v}")
    N = norm2(v)
    x = cross(v, m)
    # rational solution x / N + s v; pick s so that x + t v is divisible by N
    t0 = -dot(bezout_vector(v), x) % N
    w0 = [x[i] + t0 * v[i] for i in range(3)]
    if any(c % N for c in w0):  # pragma: no cover - the lift is a bijection
        raise AssertionError(f"no integral lift of {m} along {v}")
    w0 = tuple(c // N for c in w0)

    def size(t: int) -> int:
        return max(abs(w0[i] + t * v[i]) for i in range(3))

    # size is convex in t, so its minimisers form one run of integers
    t = -((2 * dot(w0, v) + N) // (2 * N))
    while size(t + 1) < size(t):
        t += 1
    while size(t - 1) <= size(t):
        t -= 1
    best = size(t)
    candidates = []
    while size(t) == best:
        candidates.append(add(w0, scale(t, v)))
        t += 1
    w = min(candidates, key=lambda c: (norm2(c), c))
    assert cross(w, v) == m
    return w


@dataclass(frozen=True)
class MSublattice:
    """The vectors ``a`` of the orthogonal plane with ``d | a x v``."""

    plane: PlaneLattice
    v: Vec3
    d: int

    @property
    def basis(self) -> Tuple[Vec3, Vec3]:
        return self.plane.b1, self.plane.b2

    def index(self) -> int:
        return self.plane.index_in(perp_basis(self.v))

    def __contains__(self, a) -> bool:
        return vec(a) in self.plane

    def to_json(self) -> dict:
        return {
            "v": list(self.v),
            "d": self.d,
            "basis": [list(self.plane.b1), list(self.plane.b2)],
        }


def in_m_def(v: Vec3, d: int, a: Vec3) -> bool:
    """Definitional membership: ``a . v == 0`` and ``d`` divides ``a x v``."""
    if dot(a, v) != 0:
        return False
    return all(c % d == 0 for c in cross(a, v))


def m_sublattice(v: Vec3, d: int) -> MSublattice:
    v = vec(v)
    _require_primitive(v)
    if d < 1:
        raise ValueError("d must be a positive integer")
    if norm2(v) % (d * d):
        raise DivisibilityError()
    full = perp_basis(v)
    gens = []
    for e in E:
        ev = cross(e, v)
        gens.append(scale(d, ev))
        gens.append(cross(ev, v))
    gens += [scale(d, full.b1), scale(d, full.b2)]
    plane = full.sublattice(gens)
    M = MSublattice(plane, v, d)
    assert in_m_def(v, d, plane.b1) and in_m_def(v, d, plane.b2)
    assert plane.index_in(full) == d, (v, d)
    return M
