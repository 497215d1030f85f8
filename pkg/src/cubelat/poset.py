"""Inclusion order on cubic sublattices.

The cubic sublattices of Z³ are not closed under joins and meets: a bounded
exhaustive search over edges exhibits pairs with two incomparable minimal
upper (or maximal lower) bounds. The cubic lattices through one primitive
vector, on the other hand, form a copy of the divisor lattice of the largest
admissible edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Union

from .cubic import MAX_ENUM_EDGE, CubicLattice, cubic_lattices_of_edge, gamma
from .errors import BoundExceededError
from .int3 import Basis3, Vec3, divisors, max_square_divisor, norm2, vec
from .perp import _require_primitive

LatticeLike = Union[Basis3, CubicLattice]


def _basis(L: LatticeLike) -> Basis3:
    return L.hnf if isinstance(L, CubicLattice) else L


def lattice_leq(L1: LatticeLike, L2: LatticeLike) -> bool:
    """True iff ``L1`` is a sublattice of ``L2``."""
    B2 = _basis(L2)
    return all(B2.coords(c) is not None for c in _basis(L1).cols)


@dataclass(frozen=True)
class CubicFamily:
    v: Vec3
    d_max: int
    members: Dict[int, CubicLattice]

    def to_json(self) -> dict:
        return {
            "v": list(self.v),
            "d_max": self.d_max,
            "members": {str(d): m.to_json() for d, m in sorted(self.members.items())},
        }


def divisor_family(v: Vec3) -> CubicFamily:
    """``gamma(v, d)`` for every divisor ``d`` of the largest admissible edge."""
    v = vec(v)
    _require_primitive(v)
    d_max = max_square_divisor(norm2(v))
    members = {d: gamma(v, d) for d in divisors(d_max)}
    for a, La in members.items():
        for b, Lb in members.items():
            assert lattice_leq(La, Lb) == (a % b == 0), (v, a, b)
    return CubicFamily(v, d_max, members)


def _all_cubic(edge_bound: int) -> List[CubicLattice]:
    if edge_bound > MAX_ENUM_EDGE:
        raise BoundExceededError(f"edge bound {edge_bound} exceeds {MAX_ENUM_EDGE}")
    out: List[CubicLattice] = []
    for e in range(1, edge_bound + 1):
        out.extend(cubic_lattices_of_edge(e))
    return out


def _sort_key(L: CubicLattice):
    return (L.edge, L.hnf.key())


def _strictly_below(a: CubicLattice, b: CubicLattice) -> bool:
    return a.hnf != b.hnf and lattice_leq(a, b)


def minimal_cubic_over(L1: LatticeLike, L2: LatticeLike, edge_bound: int = 9) -> List[CubicLattice]:
    """Inclusion-minimal cubic lattices of edge <= ``edge_bound`` containing both inputs."""
    uppers = [C for C in _all_cubic(edge_bound) if lattice_leq(L1, C) and lattice_leq(L2, C)]
    minimal = [C for C in uppers if not any(_strictly_below(D, C) for D in uppers)]
    return sorted(minimal, key=_sort_key)


def maximal_cubic_under(L1: LatticeLike, L2: LatticeLike, edge_bound: int = 9) -> List[CubicLattice]:
    """Inclusion-maximal cubic lattices of edge <= ``edge_bound`` inside both inputs."""
    lowers = [C for C in _all_cubic(edge_bound) if lattice_leq(C, L1) and lattice_leq(C, L2)]
    maximal = [C for C in lowers if not any(_strictly_below(C, D) for D in lowers)]
    return sorted(maximal, key=_sort_key)


def join_report(L1: LatticeLike, L2: LatticeLike, edge_bound: int = 9) -> dict:
    ups = minimal_cubic_over(L1, L2, edge_bound)
    return {"minimal_upper_bounds": [L.to_json() for L in ups], "join_exists": len(ups) == 1}


def meet_report(L1: LatticeLike, L2: LatticeLike, edge_bound: int = 9) -> dict:
    downs = maximal_cubic_under(L1, L2, edge_bound)
    return {"maximal_lower_bounds": [L.to_json() for L in downs], "meet_exists": len(downs) == 1}
