import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from moravak.algebra import (
    AlgebraContext,
    AlgebraElement,
    a_series,
    act_on_generators,
    apply,
    build_graded_action,
    formal_sum,
    multiply,
    piece_basis,
    piece_matrices,
    power,
)
from moravak.fields import fixed_space, matmul_mod, rank
from moravak.groups import preset_group, preset_matrices
from moravak.theorems import diagonal_fixed_count

SMALL = [(2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 1, 3), (3, 1, 3), (5, 1, 2), (2, 2, 3), (3, 2, 2)]


def el(ctx, terms):
    return AlgebraElement(ctx, terms)


def test_generator_images_for_a_transvection():
    g = np.array([[1, 1], [0, 1]])
    ctx = AlgebraContext(2, 1, 2)
    y1, y2 = act_on_generators(ctx, g)
    assert y1 == el(ctx, {(1, 0): 1})
    assert y2 == el(ctx, {(1, 0): 1, (0, 1): 1, (1, 1): 1})
    ctx2 = AlgebraContext(2, 2, 2)
    _, y2 = act_on_generators(ctx2, g)
    assert y2 == el(ctx2, {(1, 0): 1, (0, 1): 1, (2, 2): 1})


def test_identity_acts_trivially():
    ctx = AlgebraContext(3, 2, 2)
    xs = act_on_generators(ctx, np.eye(2, dtype=int))
    assert xs == [ctx.variable(0), ctx.variable(1)]
    for k, m in piece_matrices(ctx, np.eye(2, dtype=int)).items():
        assert np.array_equal(m, np.eye(m.shape[0], dtype=np.int64))


def test_products_and_powers():
    ctx = AlgebraContext(2, 1, 2)
    x, y = ctx.variable(0), ctx.variable(1)
    assert not multiply(ctx, x, x)
    ctx2 = AlgebraContext(2, 2, 2)
    x, y = ctx2.variable(0), ctx2.variable(1)
    assert power(ctx2, x + y, 2) == power(ctx2, x, 2) + power(ctx2, y, 2)
    assert not multiply(ctx2, power(ctx2, x, ctx2.q - 1), x)


def test_piece_sizes():
    assert AlgebraContext(3, 2, 2).piece_dim == 10
    ctx = AlgebraContext(3, 2, 2)
    for k in range(1, 8):
        assert len(piece_basis(ctx, k)) == 10
    assert len(piece_basis(ctx, 0)) == 11
    assert len(piece_basis(ctx, 0, reduced=True)) == 10
    ctx = AlgebraContext(2, 1, 2)
    assert len(piece_basis(ctx, 0)) == 4
    assert len(piece_basis(ctx, 0, reduced=True)) == 3


def test_a_series_edges():
    ctx = AlgebraContext(3, 1, 2)
    u = ctx.variable(0) + multiply(ctx, ctx.variable(0), ctx.variable(1))
    assert a_series(ctx, 1, u) == u
    assert not a_series(ctx, 0, u)
    with pytest.raises(ValueError):
        a_series(ctx, 3, u)


def test_rejects_bad_input():
    ctx = AlgebraContext(2, 1, 2)
    with pytest.raises(ValueError):
        formal_sum(ctx, ctx.one(), ctx.variable(0))
    with pytest.raises(ValueError):
        act_on_generators(ctx, np.array([[1, 1], [1, 1]]))
    with pytest.raises(ValueError):
        AlgebraContext(4, 1, 2)


@st.composite
def positive_elements(draw, ctx, count=3):
    out = []
    for _ in range(count):
        terms = {}
        for _ in range(draw(st.integers(0, 4))):
            e = tuple(draw(st.integers(0, ctx.q - 1)) for _ in range(ctx.d))
            if sum(e):
                terms[e] = draw(st.integers(1, ctx.p - 1))
        out.append(el(ctx, terms))
    return out


@st.composite
def ctx_and_elements(draw):
    p, n, d = draw(st.sampled_from([(2, 1, 2), (2, 2, 2), (3, 1, 2), (3, 2, 2), (5, 1, 2), (2, 2, 3), (3, 1, 3)]))
    ctx = AlgebraContext(p, n, d)
    return ctx, draw(positive_elements(ctx))


@given(ctx_and_elements())
def test_formal_group_law_axioms(data):
    ctx, (u, v, w) = data
    F = lambda a, b: formal_sum(ctx, a, b)  # noqa: E731
    assert F(u, ctx.zero()) == u
    assert F(u, v) == F(v, u)
    assert F(F(u, v), w) == F(u, F(v, w))


@given(ctx_and_elements())
def test_p_series_vanishes(data):
    ctx, (u, _, _) = data
    acc = ctx.zero()
    for _ in range(ctx.p):
        acc = formal_sum(ctx, acc, u)
    assert not acc


def random_invertible(p, d, seed):
    rng = np.random.default_rng(seed)
    while True:
        g = rng.integers(0, p, size=(d, d))
        if rank(g, p) == d:
            return g


@st.composite
def ctx_and_pair(draw):
    p, n, d = draw(st.sampled_from(SMALL))
    seed = draw(st.integers(0, 2**32 - 1))
    return AlgebraContext(p, n, d), random_invertible(p, d, seed), random_invertible(p, d, seed + 1)


@given(ctx_and_pair(), st.sampled_from(["K", "L"]))
def test_homomorphism_law(data, variant):
    ctx, g, h = data
    A = piece_matrices(ctx, g, variant)
    B = piece_matrices(ctx, h, variant)
    C = piece_matrices(ctx, matmul_mod(g, h, ctx.p), variant)
    for k in A:
        assert np.array_equal(matmul_mod(A[k], B[k], ctx.p), C[k])


@given(ctx_and_pair())
def test_matrices_agree_with_substitution(data):
    ctx, g, _ = data
    mats = piece_matrices(ctx, g, "K")
    k = 1 % ctx.grade_modulus
    basis = piece_basis(ctx, k)
    col = len(basis) // 2
    img = apply(ctx, g, el(ctx, {basis[col]: 1}), "K")
    vec = np.zeros(len(basis), dtype=np.int64)
    pos = {b: i for i, b in enumerate(basis)}
    for e, c in img.terms.items():
        vec[pos[e]] = c
    assert np.array_equal(mats[k][:, col], vec)


@given(ctx_and_pair())
def test_grading_preserved(data):
    ctx, g, _ = data
    for j, y in enumerate(act_on_generators(ctx, g, "K")):
        assert y.grades() <= {1 % ctx.grade_modulus}


@given(ctx_and_pair())
def test_block_triangularity_against_linear_action(data):
    ctx, g, _ = data
    K = piece_matrices(ctx, g, "K")
    L = piece_matrices(ctx, g, "L")
    for k in K:
        lengths = np.array([sum(e) for e in piece_basis(ctx, k)])
        assert np.all(np.diff(lengths) >= 0)
        below = lengths[:, None] < lengths[None, :]
        assert not np.any(K[k][below])
        same = lengths[:, None] == lengths[None, :]
        assert np.array_equal(K[k][same], L[k][same])
        assert not np.any(L[k][~same])


@pytest.mark.parametrize("p,n,d", [(3, 1, 2), (3, 2, 2), (5, 1, 3), (3, 1, 3), (5, 2, 2)])
def test_diagonal_fixed_points(p, n, d):
    ctx = AlgebraContext(p, n, d)
    D = preset_matrices(p, d, "D")
    for k in range(ctx.grade_modulus):
        mats = [piece_matrices(ctx, g, "K", [k])[k] for g in D]
        dim = fixed_space(mats, p).shape[0]
        assert dim == diagonal_fixed_count(p, n, d, k)
        if k % (p - 1):
            assert dim == 0


def test_uv_piece_is_91_dimensional():
    U = preset_group(3, 3, "UV")
    act = build_graded_action(AlgebraContext(3, 2, 3), U.gens, 1, "K")
    assert act.dim == 91
    assert all(m.shape == (91, 91) for m in act.matrices)


def test_identity_group_gives_identity_matrices():
    act = build_graded_action(AlgebraContext(2, 2, 3), [np.eye(3, dtype=int)], 0, "K", reduced=True)
    assert np.array_equal(act.matrices[0], np.eye(act.dim, dtype=np.int64))
