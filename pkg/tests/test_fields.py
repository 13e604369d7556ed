import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from moravak.fields import (
    Echelon,
    canonical_irreducible,
    eigen_multiplicity,
    ext_field,
    fixed_space,
    is_irreducible,
    kernel_basis,
    matmul_mod,
    multiplicative_order_mod,
    rank,
    rref,
)
from moravak.groups import companion

PRIMES = st.sampled_from([2, 3, 5, 7])


@st.composite
def fp_matrices(draw, max_side=6):
    p = draw(PRIMES)
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(0, max_side))
    flat = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return p, np.array(flat, dtype=np.int64).reshape(r, c)


def test_rank_small_cases():
    assert rank(np.eye(3, dtype=int), 3) == 3
    assert rank(np.zeros((3, 3), dtype=int), 3) == 0
    assert rank([[1, 2], [2, 4]], 5) == 1


def test_kernel_small_cases():
    assert kernel_basis(np.eye(4, dtype=int), 5).shape[0] == 0
    assert kernel_basis(np.zeros((2, 2), dtype=int), 2).shape[0] == 2
    ker = kernel_basis([[1, 1], [0, 0]], 2)
    assert ker.tolist() == [[1, 1]]


def test_fixed_space_cases():
    assert fixed_space([np.eye(3, dtype=int)], 3).shape[0] == 3
    p = 5
    cycle = np.roll(np.eye(p, dtype=int), 1, axis=0)
    fixed = fixed_space([cycle], p)
    assert fixed.shape[0] == 1
    assert np.all(fixed[0] == fixed[0, 0])
    # regular representation of C_3 over F_3: brute force over all 27 vectors
    reg = np.roll(np.eye(3, dtype=int), 1, axis=0)
    brute = sum(1 for v in np.ndindex(3, 3, 3) if np.array_equal(reg @ np.array(v) % 3, np.array(v)))
    assert 3 ** fixed_space([reg], 3).shape[0] == brute


def test_eigen_multiplicity_cases():
    F4 = ext_field(2, 2)
    assert eigen_multiplicity(np.eye(3, dtype=int), 2, 1, F4) == 3
    g2 = companion((1, 1, 1), 2)  # t^2 + t + 1
    omega = F4.zeta_power(1)
    assert F4.mult_order(omega) == 3
    assert eigen_multiplicity(g2, 2, omega, F4) == 1
    # 1 is not a root of t^2 + t + 1
    assert eigen_multiplicity(g2, 2, 1, F4) == 0


def test_ext_field_tables():
    F = ext_field(3, 2)
    assert F.order == 9
    assert is_irreducible(canonical_irreducible(3, 2), 3)
    for a in range(1, 9):
        assert F.mul[a, F.inv[a]] == 1
    assert F.mult_order(F.generator) == 8
    assert multiplicative_order_mod(2, 7) == 3
    assert multiplicative_order_mod(3, 13) == 3


@given(fp_matrices())
def test_rank_nullity(pm):
    p, m = pm
    assert rank(m, p) + kernel_basis(m, p).shape[0] == m.shape[1]


@given(fp_matrices())
def test_kernel_vectors_are_killed(pm):
    p, m = pm
    ker = kernel_basis(m, p)
    if ker.size and m.size:
        assert not np.any(matmul_mod(m, ker.T, p))


@given(fp_matrices(), st.data())
def test_rank_of_products_and_permutations(pm, data):
    p, a = pm
    c = a.shape[1]
    k = data.draw(st.integers(0, 5))
    b = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=c * k, max_size=c * k)), dtype=np.int64).reshape(c, k)
    ab = matmul_mod(a, b, p) if a.size and b.size else np.zeros((a.shape[0], k), dtype=np.int64)
    assert rank(ab, p) <= min(rank(a, p), rank(b, p))
    rows = data.draw(st.permutations(range(a.shape[0])))
    cols = data.draw(st.permutations(range(c)))
    assert rank(a[list(rows)][:, list(cols)], p) == rank(a, p)


@given(fp_matrices(max_side=5))
def test_rref_is_idempotent(pm):
    p, m = pm
    r, piv = rref(m, p)
    r2, piv2 = rref(r, p)
    assert piv == piv2
    assert np.array_equal(r, r2)


@given(PRIMES, st.integers(1, 4), st.data())
def test_fixed_space_equals_kernel_of_g_minus_one(p, d, data):
    # a random unipotent upper-triangular matrix is always invertible
    g = np.eye(d, dtype=np.int64)
    for i in range(d):
        for j in range(i + 1, d):
            g[i, j] = data.draw(st.integers(0, p - 1))
    fs = fixed_space([g], p)
    ker = kernel_basis((g - np.eye(d, dtype=np.int64)) % p, p)
    e = Echelon(d, p)
    e.add(fs)
    assert fs.shape[0] == ker.shape[0]
    assert all(e.contains(v) for v in ker)


@pytest.mark.parametrize("p,t", [(2, 3), (2, 7), (3, 4), (3, 13), (5, 3), (2, 5)])
def test_eigen_multiplicities_sum_to_size(p, t):
    # companion matrix of x^t - 1 has every t-th root of unity exactly once
    poly = [p - 1] + [0] * (t - 1) + [1]
    m = companion(tuple(poly), p)
    r = multiplicative_order_mod(p, t)
    F = ext_field(p, r)
    step = (F.order - 1) // t
    total = sum(eigen_multiplicity(m, p, F.zeta_power(s * step), F) for s in range(t))
    assert total == t


def test_echelon_tracks_dimension():
    e = Echelon(3, 2)
    assert e.add(np.array([[1, 1, 0]])) == 1
    assert e.add(np.array([[0, 1, 1], [1, 0, 1]])) == 1
    assert e.contains(np.array([1, 0, 1]))
    assert not e.contains(np.array([1, 0, 0]))
    assert e.dim == 2


@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 2**31))
def test_blocked_rank_matches_pivot_by_pivot(p, seed):
    from moravak.fields import _rank_unblocked, as_fp

    rng = np.random.default_rng(seed)
    rows, cols = (int(x) for x in rng.integers(130, 300, size=2))
    inner = int(rng.integers(1, min(rows, cols) + 1))
    a = matmul_mod(rng.integers(0, p, (rows, inner)), rng.integers(0, p, (inner, cols)), p)
    # zero panels exercise the branch that skips a column block
    a[:, : int(rng.integers(0, 100))] = 0
    assert rank(a, p) == _rank_unblocked(as_fp(a, p), p)


@pytest.mark.parametrize("p,d", [(2, 3), (3, 2), (5, 2)])
def test_census_agrees_with_extension_field_kernels(p, d):
    from moravak.characters import eigen_census, matrix_order
    from moravak.groups import p_regular_classes, preset_group

    G = preset_group(p, d, "GL")
    for i in p_regular_classes(G, p):
        g = G.elements[i]
        t = matrix_order(g, p)
        F = ext_field(p, multiplicative_order_mod(p, t))
        step = (F.order - 1) // t
        expect = [eigen_multiplicity(g, p, F.zeta_power(s * step), F) for s in range(t)]
        assert eigen_census(g, p, t) == expect
