import random

import pytest
from hypothesis import given, settings, strategies as st

from weildec.modgroup import (
    census,
    class_representatives,
    class_size_bruteforce,
    conj_profile,
    count_quadratic_solutions,
    divisors,
    eval_word,
    expected_quadratic_solutions,
    hensel_lift_count,
    mat_inv,
    mat_mul,
    orbit_census,
    sigma0,
    sl2_enumerate,
    sl2_order,
    sp_apply,
    sp_generators,
    symplectic_form,
    word_decompose,
)


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6, 8, 9, 12])
def test_group_order_formula_matches_enumeration(N):
    assert sum(1 for _ in sl2_enumerate(N)) == sl2_order(N)


def test_enumeration_has_no_duplicates():
    seen = set(sl2_enumerate(8))
    assert len(seen) == sl2_order(8)


def test_hensel_lift_count_is_eight():
    for M in sl2_enumerate(4):
        assert hensel_lift_count(M, 4) == 8


@settings(max_examples=30, deadline=None)
@given(
    a=st.integers(0, 7),
    b=st.integers(0, 7),
    c=st.integers(0, 7),
    seed=st.integers(0, 2**16),
)
def test_word_decompose_roundtrip(a, b, c, seed):
    N = 8
    d = None
    for cand in range(N):
        if (a * cand - b * c) % N == 1:
            d = cand
            break
    if d is None:
        return
    M = (a, b, c, d)
    word = word_decompose(M, N, rng=random.Random(seed))
    assert eval_word(word, N) == M


def test_conj_profile_is_invariant():
    N = 16
    n = 4
    rng = random.Random(5)
    elts = list(sl2_enumerate(N))
    for _ in range(40):
        M = elts[rng.randrange(len(elts))]
        P = elts[rng.randrange(len(elts))]
        conj = mat_mul(mat_mul(P, M, N), mat_inv(P, N), N)
        assert conj_profile(M, n) == conj_profile(conj, n)


@pytest.mark.parametrize("n", [2, 3])
def test_census_rows_match(n):
    for row in census(n):
        assert row.match


@pytest.mark.parametrize("n", [2, 3])
def test_class_sizes_bruteforce(n):
    for rep in class_representatives(n):
        assert class_size_bruteforce(rep.matrix, n) == rep.size


def test_class_sizes_partition_group():
    n = 3
    total = sum(rep.size for rep in class_representatives(n))
    assert total == sl2_order(2**n)


@pytest.mark.parametrize("even_cross", [False, True])
def test_quadratic_counting_small(even_cross):
    for n in (1, 2, 3, 4):
        for A in (1, 3):
            for D in (1, 5):
                Bs = range(4) if even_cross else (1, 3)
                for B in Bs:
                    for C in range(4):
                        got = count_quadratic_solutions(
                            A, B, C, D, n, even_cross=even_cross
                        )
                        want = expected_quadratic_solutions(
                            A, B, C, D, n, even_cross=even_cross
                        )
                        assert got == want, (A, B, C, D, n, even_cross)


def test_divisor_helpers():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert sigma0(12) == 6
    assert sigma0(1) == 1


def test_symplectic_form_antisymmetry():
    g, N = 2, 5
    rng = random.Random(3)
    for _ in range(20):
        u = tuple(rng.randrange(N) for _ in range(2 * g))
        v = tuple(rng.randrange(N) for _ in range(2 * g))
        assert (symplectic_form(u, v, g, N) + symplectic_form(v, u, g, N)) % N == 0


def test_sp_generators_preserve_form():
    g, N = 2, 4
    rng = random.Random(9)
    for M in sp_generators(g, N):
        for _ in range(10):
            u = tuple(rng.randrange(N) for _ in range(2 * g))
            v = tuple(rng.randrange(N) for _ in range(2 * g))
            assert symplectic_form(
                sp_apply(M, u, N), sp_apply(M, v, N), g, N
            ) == symplectic_form(u, v, g, N)


@pytest.mark.parametrize("N", [2, 3, 4, 6])
def test_orbit_census_matches_divisor_count(N):
    count, orbits = orbit_census(N, 1)
    assert count == sigma0(N)
    assert sorted(d for d, _ in orbits) == divisors(N)
    assert sum(size for _, size in orbits) == N ** 2
