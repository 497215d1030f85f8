"""Cubic sublattices of Z³.

A cubic sublattice has a basis of three pairwise orthogonal vectors of common
length ``e`` (the edge). For primitive ``v`` and ``d`` with ``d² | v.v`` there is
exactly one cubic sublattice of edge ``d`` containing ``v``; :func:`gamma`
builds it. Every cubic sublattice is ``k * gamma(v, d)`` for unique ``k, d``;
:func:`classify` recovers them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

from .errors import (
    BoundExceededError,
    DivisibilityError,
    RankError,
    ZeroVectorError,
)
from .int3 import (
    Basis3,
    HnfBasis3,
    Vec3,
    add,
    cross,
    det3,
    divisors,
    dot,
    exact_div,
    factorize,
    gcd_vec,
    hnf_of_generators,
    icbrt,
    norm2,
    primitive_part,
    rank,
    scale,
    vec,
    xgcd,
)
from .perp import _require_primitive, m_sublattice, perp_basis, phi_lift

MAX_ENUM_EDGE = 12


@dataclass(frozen=True)
class NotCubic:
    """Negative answer to "is this lattice cubic?"; not an error."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class CubicLattice:
    """``k * gamma(v, d)`` together with a cubic basis of edge ``k * d``."""

    basis: Basis3
    hnf: HnfBasis3
    k: int
    d: int
    v: Vec3

    @property
    def edge(self) -> int:
        return self.k * self.d

    def __contains__(self, a) -> bool:
        return vec(a) in self.hnf

    def coords(self, a: Vec3) -> Optional[Vec3]:
        return self.basis.coords(vec(a))

    def scaled(self, k: int) -> "CubicLattice":
        if k < 1:
            raise ValueError("scale factor must be positive")
        return CubicLattice(self.basis.scaled(k), self.hnf.scaled(k), self.k * k, self.d, self.v)

    def to_json(self) -> dict:
        return {
            "basis": self.basis.to_json(),
            "hnf": self.hnf.to_json(),
            "k": self.k,
            "d": self.d,
            "edge": self.edge,
            "v": list(self.v),
        }


@dataclass(frozen=True)
class ClassifyResult:
    k: int
    d: int
    v: Vec3

    @property
    def edge(self) -> int:
        return self.k * self.d

    def to_json(self) -> dict:
        return {"cubic": True, "k": self.k, "d": self.d, "edge": self.edge, "v": list(self.v)}


def _check_admissible(v: Vec3, d: int) -> None:
    if d < 1:
        raise ValueError("d must be a positive integer")
    if norm2(v) % (d * d):
        raise DivisibilityError()


def gamma_membership_def(v: Vec3, d: int, a: Vec3) -> bool:
    """Literal test: ``d | a x v`` and ``d² | (a x v) x v``."""
    av = cross(vec(a), vec(v))
    if any(c % d for c in av):
        return False
    return all(c % (d * d) == 0 for c in cross(av, v))


def gamma_hnf(v: Vec3, d: int) -> HnfBasis3:
    """HNF of the unique cubic sublattice of edge ``d`` through primitive ``v``."""
    v = vec(v)
    _require_primitive(v)
    _check_admissible(v, d)
    M = m_sublattice(v, d)
    w1 = phi_lift(v, scale(d, M.plane.b1))
    w2 = phi_lift(v, scale(d, M.plane.b2))
    hnf = hnf_of_generators([v, w1, w2])
    assert hnf.index == d**3, (v, d, hnf)
    return hnf


def gamma(v: Vec3, d: int) -> CubicLattice:
    hnf = gamma_hnf(v, d)
    basis = cubic_basis_extract(hnf)
    if isinstance(basis, NotCubic):  # pragma: no cover - guaranteed to exist
        raise AssertionError(f"no cubic basis found for gamma({v}, {d}): {basis.reason}")
    return CubicLattice(basis, hnf, 1, d, vec(v))


def gamma_decompositions(v: Vec3, d: int) -> List[Tuple[int, int]]:
    """All ``(d1, d2)`` with ``d1 * d2 == d``, ``d1 | gcd(v)`` and ``d2² | |v/gcd(v)|²``.

    Ordered by decreasing ``d2``.
    """
    v = vec(v)
    k, u = primitive_part(v)
    _check_admissible(v, d)
    n = norm2(u)
    return [
        (d // d2, d2)
        for d2 in reversed(divisors(d))
        if k % (d // d2) == 0 and n % (d2 * d2) == 0
    ]


def gamma_any(v: Vec3, d: int, d2: Optional[int] = None) -> CubicLattice:
    """A cubic sublattice of edge ``d`` containing the non-zero vector ``v``.

    Writing ``v = k u`` with ``u`` primitive, the result is ``d1 * gamma(u, d2)``
    for the admissible split ``d = d1 d2`` with the largest ``d2`` (or the
    given ``d2``). When ``gcd(k, d) == 1`` it is the only such lattice.
    """
    decomps = gamma_decompositions(v, d)
    assert decomps, "d² | |v|² always admits a decomposition"
    if d2 is None:
        d1, d2 = decomps[0]
    else:
        match = [p for p in decomps if p[1] == d2]
        if not match:
            raise ValueError(f"d2={d2} is not an admissible split of d={d} for {v}")
        d1 = match[0][0]
    _, u = primitive_part(vec(v))
    return gamma(u, d2).scaled(d1) if d1 > 1 else gamma(u, d2)


@lru_cache(maxsize=None)
def sphere_points(e: int) -> Tuple[Vec3, ...]:
    """All integer points with ``x² + y² + z² == e²``, sorted lexicographically."""
    n = e * e
    pts = []
    for x in range(-e, e + 1):
        rx = n - x * x
        ymax = math.isqrt(rx)
        for y in range(-ymax, ymax + 1):
            rz = rx - y * y
            z = math.isqrt(rz)
            if z * z == rz:
                pts.append((x, y, -z))
                if z:
                    pts.append((x, y, z))
    return tuple(pts)


def _edge_of(L: Basis3) -> Optional[int]:
    return icbrt(L.index)


def cubic_basis_extract(L: Basis3) -> Union[Basis3, NotCubic]:
    """Cubic basis ``(a, b, c)`` of ``L``, or :class:`NotCubic`.

    ``a`` is the lexicographically least member of length ``e``, ``b`` the least
    such member orthogonal to ``a``, and ``c = a x b / e``.
    """
    e = _edge_of(L)
    if e is None:
        return NotCubic(f"index {L.index} is not a perfect cube")
    members = [p for p in sphere_points(e) if L.coords(p) is not None]
    if not members:
        return NotCubic(f"no member of length {e}")
    a = members[0]
    ortho = [p for p in members if dot(p, a) == 0]
    if not ortho:
        return NotCubic(f"no member of length {e} orthogonal to {a}")
    b = ortho[0]
    c = exact_div(cross(a, b), e)
    if c is None or L.coords(c) is None:
        return NotCubic(f"{a} x {b} / {e} is not a member")
    B = Basis3((a, b, c))
    if abs(B.det) != L.index:  # pragma: no cover - orthogonal triple of full index
        return NotCubic("orthogonal triple does not span the lattice")
    return B


def _lattice_gcd(B: Basis3) -> int:
    return math.gcd(*(x for c in B.cols for x in c))


def _squarefree_primes(b: int, exclude: int) -> int:
    c = 1
    for p in sorted(set(factorize(b))):
        if exclude % p:
            c *= p
    return c


def gcd2_witness(v1: Vec3, v2: Vec3) -> Vec3:
    """A vector ``c*v1 + v2`` whose greatest divisor is ``gcd(k1, k2)``.

    ``k1, k2`` are the greatest divisors of the inputs. The construction works
    in the saturated plane lattice through ``v1`` and ``v2``.
    """
    v1, v2 = vec(v1), vec(v2)
    n = cross(v1, v2)
    if n == (0, 0, 0):
        raise RankError(rank([v1, v2]), 2)
    plane = perp_basis(primitive_part(n)[1])
    k1, u1 = primitive_part(v1)
    k2, u2 = primitive_part(v2)
    k = math.gcd(k1, k2)
    p, q = plane.coords(u1)
    g, al, be = xgcd(p, q)
    assert g == 1
    # w = (-be, al) in plane coordinates completes u1 to a basis; only the
    # w-coefficient b of u2 = a*u1 + b*w is needed
    s, t = plane.coords(u2)
    b = -q * s + p * t
    c = _squarefree_primes(b, (k1 // k) * (k2 // k))
    out = add(scale(c, v1), v2)
    assert gcd_vec(out) == k, (v1, v2, out)
    return out


def gcd3_witness(v1: Vec3, v2: Vec3, v3: Vec3) -> Vec3:
    """A member of the lattice spanned by the inputs with the lattice's greatest divisor."""
    v1, v2, v3 = vec(v1), vec(v2), vec(v3)
    if det3(v1, v2, v3) == 0:
        raise RankError(rank([v1, v2, v3]), 3)
    return gcd2_witness(gcd2_witness(v1, v2), v3)


def classify(B: Basis3) -> Union[ClassifyResult, NotCubic]:
    """Decide whether ``B`` spans a cubic lattice and write it as ``k * gamma(v, d)``."""
    if not isinstance(B, Basis3):
        B = Basis3(tuple(vec(c) for c in B))
    k = _lattice_gcd(B)
    e = _edge_of(B)
    if e is None:
        return NotCubic(f"index {B.index} is not a perfect cube")
    if e % k:
        return NotCubic(f"lattice gcd {k} does not divide the edge {e}")
    e2 = e * e
    cols = B.cols
    if any(dot(cols[i], cols[j]) % e2 for i in range(3) for j in range(i, 3)):
        return NotCubic(f"Gram entries are not all divisible by {e2}")
    d = e // k
    hnf = B.hnf()
    inner = HnfBasis3(tuple(exact_div(c, k) for c in hnf.cols))
    v = gcd3_witness(*inner.cols)
    if norm2(v) % (d * d):
        return NotCubic(f"witness {v} has squared length not divisible by {d * d}")
    if gamma_hnf(v, d) != inner:
        return NotCubic(f"lattice differs from {k}*gamma({v}, {d})")
    return ClassifyResult(k, d, v)


def _canonical_cubic_basis(six: Sequence[Vec3], e: int) -> Basis3:
    a = min(six)
    b = min(p for p in six if dot(p, a) == 0)
    return Basis3((a, b, exact_div(cross(a, b), e)))


def _from_cubic_basis(B: Basis3, e: int) -> CubicLattice:
    k = _lattice_gcd(B)
    hnf = B.hnf()
    inner = HnfBasis3(tuple(exact_div(c, k) for c in hnf.cols))
    v = gcd3_witness(*inner.cols)
    return CubicLattice(B, hnf, k, e // k, v)


@lru_cache(maxsize=None)
def cubic_lattices_of_edge(e: int) -> Tuple[CubicLattice, ...]:
    """Every cubic sublattice of Z³ with edge ``e``, sorted by HNF."""
    pts = sphere_points(e)
    seen = set()
    found = {}
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if dot(a, b):
                continue
            c = exact_div(cross(a, b), e)
            if c is None:
                continue
            six = frozenset((a, b, c, scale(-1, a), scale(-1, b), scale(-1, c)))
            if six in seen:
                continue
            seen.add(six)
            lat = _from_cubic_basis(_canonical_cubic_basis(tuple(six), e), e)
            found.setdefault(lat.hnf.key(), lat)
    return tuple(found[key] for key in sorted(found))


def _cubic_contains(lat: CubicLattice, a: Vec3) -> bool:
    e2 = lat.edge**2
    return all(dot(a, c) % e2 == 0 for c in lat.basis.cols)


def enumerate_cubic_containing(v: Vec3, d: int, max_edge: int = MAX_ENUM_EDGE) -> List[CubicLattice]:
    """All cubic sublattices of edge ``d`` containing ``v``, by exhaustive search."""
    v = vec(v)
    if v == (0, 0, 0):
        raise ZeroVectorError("v must be non-zero")
    _check_admissible(v, d)
    if d > max_edge:
        raise BoundExceededError(f"edge {d} exceeds the enumeration bound {max_edge}")
    return [lat for lat in cubic_lattices_of_edge(d) if _cubic_contains(lat, v)]
