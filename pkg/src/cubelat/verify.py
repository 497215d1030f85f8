"""Brute-force oracle suites behind ``cubelat verify``.

Each check pits a construction against an independent definitional test over
every primitive vector up to a norm bound. Box scans are vectorised with
numpy; entries stay far below the int64 range for the supported bounds.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterator, List, Tuple

import numpy as np

from .cubic import (
    MAX_ENUM_EDGE,
    enumerate_cubic_containing,
    gamma,
    gamma_membership_def,
)
from .int3 import (
    Basis3,
    Vec3,
    cross,
    det3,
    divisors,
    dot,
    exact_div,
    gcd_vec,
    max_square_divisor,
    norm2,
)
from .numtheory import (
    coprime_three_squares_necessary,
    is_prime,
    prime_vector,
    scale_down,
    scale_up,
)
from .perp import m_sublattice, perp_basis, phi_lift
from .poset import divisor_family, lattice_leq


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f": {self.detail}" if self.detail else ""
        return f"{status} {self.name} ({self.cases} cases){tail}"


def primitive_vectors(max_norm: int) -> Iterator[Vec3]:
    """All primitive vectors with ``0 < |v|² <= max_norm``, in lexicographic order."""
    r = math.isqrt(max_norm)
    for v in itertools.product(range(-r, r + 1), repeat=3):
        n = norm2(v)
        if 0 < n <= max_norm and gcd_vec(v) == 1:
            yield v


def admissible_pairs(max_norm: int, max_d: int, min_d: int = 2) -> Iterator[Tuple[Vec3, int]]:
    for v in primitive_vectors(max_norm):
        dm = max_square_divisor(norm2(v))
        for d in divisors(dm):
            if min_d <= d <= max_d:
                yield v, d


def int_box(r: int) -> np.ndarray:
    g = np.arange(-r, r + 1, dtype=np.int64)
    return np.stack(np.meshgrid(g, g, g, indexing="ij"), axis=-1).reshape(-1, 3)


def np_cross(A: np.ndarray, v) -> np.ndarray:
    return np.cross(A, np.asarray(v, dtype=np.int64))


def basis_members(B: Basis3, A: np.ndarray) -> np.ndarray:
    a, b, c = B.cols
    adj = np.array([cross(b, c), cross(c, a), cross(a, b)], dtype=np.int64)
    return np.all((A @ adj.T) % B.det == 0, axis=1)


def gamma_members_def(v: Vec3, d: int, A: np.ndarray) -> np.ndarray:
    av = np_cross(A, v)
    first = np.all(av % d == 0, axis=1)
    second = np.all(np_cross(av, v) % (d * d) == 0, axis=1)
    return first & second


def m_members_def(v: Vec3, d: int, A: np.ndarray) -> np.ndarray:
    orth = (A @ np.asarray(v, dtype=np.int64)) == 0
    return orth & np.all(np_cross(A, v) % d == 0, axis=1)


def _run(name: str, cases, body: Callable) -> CheckResult:
    n = 0
    for case in cases:
        n += 1
        problem = body(*case)
        if problem:
            label = case[0] if len(case) == 1 else case
            return CheckResult(name, False, n, f"{label}: {problem}")
    return CheckResult(name, True, n)


def check_cross(max_norm: int) -> CheckResult:
    rng = random.Random(0)
    r = math.isqrt(max_norm)
    pairs = [
        (tuple(rng.randint(-r, r) for _ in range(3)), tuple(rng.randint(-r, r) for _ in range(3)))
        for _ in range(500)
    ]

    def body(a, b):
        c = cross(a, b)
        if dot(c, a) or dot(c, b):
            return f"cross {c} not orthogonal"
        if det3(a, b, c) != norm2(c):
            return "triple product mismatch"

    return _run("cross_orthogonality", pairs, body)


def check_perp(max_norm: int) -> CheckResult:
    def body(v):
        plane = perp_basis(v)
        if cross(plane.b1, plane.b2) != v:
            return "area vector differs from v"
        spanned = plane.sublattice(cross(e, v) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        if spanned.index_in(plane) != 1:
            return "e_i x v do not span the plane"

    return _run("perp_basis_spans", ((v,) for v in primitive_vectors(max_norm)), body)


def check_phi(max_norm: int) -> CheckResult:
    box = [tuple(int(x) for x in a) for a in int_box(3)]

    def body(v):
        plane = perp_basis(v)
        for s, t in itertools.product(range(-3, 4), repeat=2):
            m = plane.at(s, t)
            if cross(phi_lift(v, m), v) != m:
                return f"lift of {m} does not cross back"
        for w in box:
            lift = phi_lift(v, cross(w, v))
            diff = tuple(x - y for x, y in zip(w, lift))
            if cross(diff, v) != (0, 0, 0):
                return f"{w} and its lift {lift} differ by a non-multiple of v"
            if max(map(abs, lift)) > max(map(abs, w)):
                return f"lift {lift} is longer than the preimage {w}"

    return _run("phi_round_trip", ((v,) for v in primitive_vectors(min(max_norm, 30))), body)


def check_m_membership(max_norm: int, max_d: int) -> CheckResult:
    def body(v, d):
        M = m_sublattice(v, d)
        if M.index() != d:
            return f"index {M.index()}"
        A = int_box(3 * d)
        A = A[A @ np.asarray(v, dtype=np.int64) == 0]
        b1, b2 = M.basis
        n = np.asarray(cross(b1, b2), dtype=np.int64)
        den = int(n @ n)
        s = np_cross(A, b2) @ n
        t = np.cross(np.asarray(b1, dtype=np.int64), A) @ n
        got = (s % den == 0) & (t % den == 0)
        if not np.array_equal(got, m_members_def(v, d, A)):
            return "basis membership disagrees with the definition"

    return _run("m_sublattice_membership", admissible_pairs(max_norm, max_d), body)


def check_index_laws(max_norm: int, max_d: int) -> CheckResult:
    def body(v, d):
        G = gamma(v, d)
        if G.hnf.index != d**3:
            return f"index {G.hnf.index}"
        if abs(G.basis.det) != d**3:
            return "cubic basis determinant"
        if m_sublattice(v, d).index() != d:
            return "M index"

    return _run("index_laws", admissible_pairs(max_norm, max_d), body)


def check_gamma_oracle(max_norm: int, max_d: int) -> CheckResult:
    def body(v, d):
        G = gamma(v, d)
        A = int_box(d * d)
        if not np.array_equal(basis_members(G.hnf, A), gamma_members_def(v, d, A)):
            return "basis membership disagrees with the definition"

    return _run("gamma_oracle_equivalence", admissible_pairs(max_norm, max_d), body)


def check_divisibility(max_norm: int, max_d: int) -> CheckResult:
    rng = random.Random(1)

    def body(v, d):
        G = gamma(v, d)
        d2 = d * d
        for _ in range(10):
            a = G.hnf.apply(tuple(rng.randint(-2, 2) for _ in range(3)))
            b = G.hnf.apply(tuple(rng.randint(-2, 2) for _ in range(3)))
            if dot(a, v) % d2 or dot(a, b) % d2:
                return f"dot products of {a}, {b} not divisible by {d2}"
            c = exact_div(cross(a, b), d)
            if c is None or not gamma_membership_def(v, d, c):
                return f"{a} x {b} / {d} is not a member"
        for e in ((d2, 0, 0), (0, d2, 0), (0, 0, d2)):
            if e not in G.hnf:
                return f"{e} not a member"

    return _run("divisibility_laws", admissible_pairs(max_norm, max_d), body)


def check_uniqueness(max_norm: int, max_d: int) -> CheckResult:
    bound = min(max_d, MAX_ENUM_EDGE)

    def body(v, d):
        found = enumerate_cubic_containing(v, d, max_edge=bound)
        if len(found) != 1:
            return f"{len(found)} cubic lattices"
        if found[0].hnf != gamma(v, d).hnf:
            return "enumerated lattice differs from gamma"

    return _run("uniqueness", admissible_pairs(max_norm, bound), body)


def check_prime_vectors() -> CheckResult:
    def body(p):
        w = prime_vector(p)
        if gcd_vec(w) != 1 or norm2(w) % (p * p):
            return f"bad vector {w}"

    return _run("prime_vector", [(p,) for p in range(3, 200) if is_prime(p)], body)


def check_reverse(max_d: int) -> CheckResult:
    vs = [(1, 0, 0), (1, 1, 1), (1, 2, 2), (3, 4, 12)]
    ds = [d for d in range(1, max(max_d, 1) + 1, 2)]

    def body(v, d):
        u = scale_up(v, d)
        if gcd_vec(u) != 1 or norm2(u) != d * d * norm2(v):
            return f"bad lift {u}"
        if not coprime_three_squares_necessary(norm2(u)):
            return "lift fails the mod 4 / mod 8 filter"
        back = scale_down(u, d)
        if sorted(map(abs, back)) != sorted(map(abs, v)):
            return f"round trip gave {back}"

    return _run("reverse_round_trip", [(v, d) for v in vs for d in ds], body)


def check_divisor_family(max_norm: int) -> CheckResult:
    def body(v):
        fam = divisor_family(v)
        for a, La in fam.members.items():
            for b, Lb in fam.members.items():
                if lattice_leq(La, Lb) != (a % b == 0):
                    return f"inclusion of {a} in {b}"

    cases = ((v,) for v in primitive_vectors(max_norm) if max_square_divisor(norm2(v)) > 1)
    return _run("divisor_family", cases, body)


def run_checks(max_norm: int = 200, max_d: int = 5) -> List[CheckResult]:
    return [
        check_cross(max_norm),
        check_perp(max_norm),
        check_phi(max_norm),
        check_m_membership(max_norm, max_d),
        check_index_laws(max_norm, max_d),
        check_gamma_oracle(max_norm, max_d),
        check_divisibility(max_norm, max_d),
        check_uniqueness(max_norm, max_d),
        check_prime_vectors(),
        check_reverse(max_d),
        check_divisor_family(max_norm),
    ]
