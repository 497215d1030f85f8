"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section at the end of the report for one PASS/FAIL line per criterion.
"""

import math
import random
import time

import numpy as np
import pytest

from cubelat.cubic import (
    ClassifyResult,
    NotCubic,
    classify,
    cubic_basis_extract,
    cubic_lattices_of_edge,
    enumerate_cubic_containing,
    gamma,
    sphere_points,
)
from cubelat.errors import EvenModulusError
from cubelat.int3 import IDENTITY, Basis3, coords_in_basis, cross, det3, dot, gcd_vec, hnf_of_generators, icbrt, max_square_divisor, norm2
from cubelat.numtheory import is_prime, prime_vector, scale_down, scale_up
from cubelat.perp import m_sublattice
from cubelat.poset import divisor_family, lattice_leq, maximal_cubic_under, minimal_cubic_over
from cubelat.verify import admissible_pairs, basis_members, gamma_members_def, int_box, primitive_vectors

from oracles import gamma_def, is_signed_permutation, same_up_to_signed_permutation

EDGE3_BASIS = [(-1, 2, 2), (2, -1, 2), (2, 2, -1)]
SWEEP_NORM = 400
# primitive vectors have squared norm not divisible by 4, so d is odd and d <= 19 here
SWEEP_EDGE = math.isqrt(SWEEP_NORM)


@pytest.fixture
def cold_caches():
    sphere_points.cache_clear()
    cubic_lattices_of_edge.cache_clear()


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def sweep():
    return list(admissible_pairs(SWEEP_NORM, SWEEP_EDGE))


@pytest.mark.criterion(1, "cubic basis and coordinates of the edge-3 lattice through (5,5,2)")
def test_criterion_01_edge3_basis(cold_caches):
    with Timer() as t:
        G = gamma((5, 5, 2), 3)
        assert same_up_to_signed_permutation(G.basis.cols, EDGE3_BASIS)
        assert (5, 5, 2) in G.hnf
        assert coords_in_basis(Basis3(tuple(EDGE3_BASIS)), (5, 5, 2)) == (1, 1, 2)
        assert hnf_of_generators(EDGE3_BASIS) == G.hnf
        assert is_signed_permutation((1, 1, 2), G.coords((5, 5, 2)))
    assert t.elapsed < 1


@pytest.mark.criterion(2, "(5,0,0) lies in several cubic lattices of edge 5")
def test_criterion_02_non_uniqueness(cold_caches):
    with Timer() as t:
        hnfs = {L.hnf for L in enumerate_cubic_containing((5, 0, 0), 5)}
    assert IDENTITY.scaled(5).hnf() in hnfs
    assert hnf_of_generators([(5, 0, 0), (0, 3, 4), (0, 4, -3)]) in hnfs
    assert t.elapsed < 10


@pytest.mark.criterion(3, "uniqueness sweep, primitive v with |v|^2 <= 400")
def test_criterion_03_uniqueness_sweep(cold_caches):
    pairs = sweep()
    assert len(pairs) > 5000
    with Timer() as t:
        bad = []
        for v, d in pairs:
            found = enumerate_cubic_containing(v, d, max_edge=SWEEP_EDGE)
            if len(found) != 1 or found[0].hnf != gamma(v, d).hnf:
                bad.append((v, d, len(found)))
    assert bad == []
    assert t.elapsed < 300


@pytest.mark.criterion(4, "index laws over the same sweep")
def test_criterion_04_index_laws():
    bad = []
    for v, d in sweep():
        G = gamma(v, d)
        if abs(det3(*G.hnf.cols)) != d**3 or abs(G.basis.det) != d**3:
            bad.append((v, d, "gamma"))
        if m_sublattice(v, d).index() != d:
            bad.append((v, d, "M"))
    assert bad == []


@pytest.mark.criterion(5, "divisibility laws on 10^4 random member pairs")
def test_criterion_05_divisibility_laws():
    rng = random.Random(5)
    pairs = rng.sample(sweep(), 100)
    failures = 0
    checked = 0
    for v, d in pairs:
        G = gamma(v, d)
        d2 = d * d
        for _ in range(100):
            a = G.hnf.apply(tuple(rng.randint(-5, 5) for _ in range(3)))
            b = G.hnf.apply(tuple(rng.randint(-5, 5) for _ in range(3)))
            assert gamma_def(v, d, a) and gamma_def(v, d, b)
            c = cross(a, b)
            ok = (
                dot(a, v) % d2 == 0
                and dot(a, b) % d2 == 0
                and all(x % d == 0 for x in c)
                and gamma_def(v, d, tuple(x // d for x in c))
            )
            failures += not ok
            checked += 1
    assert checked == 10**4
    assert failures == 0


@pytest.mark.criterion(6, "definitional and basis membership agree on |a_i| <= d^2, d <= 7")
def test_criterion_06_oracle_equivalence():
    boxes = {}
    bad = []
    n = 0
    for v, d in admissible_pairs(SWEEP_NORM, 7):
        A = boxes.get(d)
        if A is None:
            A = boxes[d] = int_box(d * d)
        G = gamma(v, d)
        if not np.array_equal(basis_members(G.hnf, A), gamma_members_def(v, d, A)):
            bad.append((v, d))
        n += 1
    assert {d for _, d in admissible_pairs(SWEEP_NORM, 7)} == {3, 5, 7}
    assert n > 4000
    assert bad == []


@pytest.mark.criterion(7, "prime vectors for odd primes below 200")
def test_criterion_07_prime_vector():
    with Timer() as t:
        for p in range(3, 200):
            if is_prime(p):
                w = prime_vector(p)
                assert gcd_vec(w) == 1 and norm2(w) % (p * p) == 0
        with pytest.raises(EvenModulusError):
            prime_vector(2)
    assert t.elapsed < 1


@pytest.mark.criterion(8, "scale up then down returns a signed permutation")
def test_criterion_08_reverse_round_trip(cold_caches):
    with Timer() as t:
        for v in [(1, 0, 0), (1, 1, 1), (1, 2, 2), (3, 4, 12)]:
            for d in [1, 3, 5, 9, 15]:
                u = scale_up(v, d)
                assert gcd_vec(u) == 1
                assert norm2(u) == d * d * norm2(v)
                assert is_signed_permutation(v, scale_down(u, d))
    assert t.elapsed < 30


def random_unimodular(rng, steps=12):
    cols = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(steps):
        i, j = rng.sample(range(3), 2)
        c = rng.choice([-2, -1, 1, 2])
        cols[i] = [x + c * y for x, y in zip(cols[i], cols[j])]
        if rng.random() < 0.3:
            cols[i] = [-x for x in cols[i]]
    return cols


def rebase(B, U):
    # columns of B @ U
    return tuple(tuple(sum(B[k][r] * U[c][k] for k in range(3)) for r in range(3)) for c in range(3))


def cubic_by_gram(cols):
    """Exact cubicity test: |det| = e^3 and e^2 divides every Gram entry.

    Gram / e^2 is then an integral unimodular positive form of rank 3, and
    every such form is equivalent to the identity.
    """
    e = icbrt(abs(det3(*cols)))
    if e is None:
        return False
    return all(dot(a, b) % (e * e) == 0 for a in cols for b in cols)


@pytest.mark.criterion(9, "classification round trip and rejection of non-cubic bases")
def test_criterion_09_classification():
    rng = random.Random(9)
    pool = [(v, d) for v, d in admissible_pairs(120, 11, min_d=1)]
    for _ in range(500):
        v, d = rng.choice(pool)
        k = rng.randint(1, 4)
        G = gamma(v, d)
        cols = rebase(G.scaled(k).basis.cols, random_unimodular(rng))
        assert cubic_by_gram(cols)
        r = classify(Basis3(cols))
        assert isinstance(r, ClassifyResult)
        assert (r.k, r.d) == (k, d)
        assert gamma(r.v, r.d).scaled(r.k).hnf == hnf_of_generators(cols)
    rejected = 0
    while rejected < 500:
        if rejected % 2:
            cols = tuple(tuple(rng.randint(-6, 6) for _ in range(3)) for _ in range(3))
        else:
            # cube determinant, so only the Gram test can tell
            a = rng.choice([1, 2, 3])
            diag = rng.choice([(1, 1, a**3), (1, a, a * a), (a, a * a, 1), (2, 4, 1)])
            cols = ((diag[0], 0, 0), (rng.randint(0, 5), diag[1], 0), (rng.randint(0, 5), rng.randint(0, 5), diag[2]))
            cols = rebase(cols, random_unimodular(rng))
        if det3(*cols) == 0 or cubic_by_gram(cols):
            continue
        r = classify(Basis3(cols))
        assert isinstance(r, NotCubic) and not r
        assert isinstance(cubic_basis_extract(Basis3(cols)), NotCubic)
        rejected += 1


@pytest.mark.criterion(10, "no join of 3G and 9Z^3, no meet of G and 3Z^3")
def test_criterion_10_poset_counterexample(cold_caches):
    G = gamma((1, 2, 2), 3)
    with Timer() as t:
        ups = minimal_cubic_over(G.scaled(3), IDENTITY.scaled(9), 9)
        downs = maximal_cubic_under(G, IDENTITY.scaled(3), 9)
    assert {L.hnf for L in ups} == {IDENTITY.scaled(3).hnf(), G.hnf}
    assert len(ups) == 2
    a, b = ups
    assert not lattice_leq(a, b) and not lattice_leq(b, a)
    assert {L.hnf for L in downs} == {G.scaled(3).hnf, IDENTITY.scaled(9).hnf()}
    assert len(downs) == 2
    assert t.elapsed < 60


@pytest.mark.criterion(11, "divisor-lattice isomorphism for 50 vectors")
def test_criterion_11_divisor_family():
    def composite(n):
        return n > 1 and not is_prime(n)

    candidates = [
        v for v in primitive_vectors(15 * 15 * 3)
        if max_square_divisor(norm2(v)) <= 15 and composite(max_square_divisor(norm2(v)))
    ]
    chosen = random.Random(11).sample(candidates, 50)
    assert {max_square_divisor(norm2(v)) for v in chosen} == {9, 15}
    for v in chosen:
        fam = divisor_family(v)
        assert sorted(fam.members) == [d for d in range(1, fam.d_max + 1) if fam.d_max % d == 0]
        for a, La in fam.members.items():
            for b, Lb in fam.members.items():
                assert lattice_leq(La, Lb) == (a % b == 0)
