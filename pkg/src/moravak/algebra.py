"""The truncated algebra F_p[x_1..x_d]/(x_i^q), q = p^n, and its GL_d(F_p) actions.

Two actions are built on each cyclically graded piece:

* ``"K"``: x_j goes to the formal sum over i of [a_ij](x_i), using the
  height-n formal group law truncated at q-th powers (with v_n = 1);
* ``"L"``: x_j goes to the linear form sum_i a_ij x_i.

Grades live in Z/(q-1).  Piece bases are ordered by total exponent length,
ties broken by mixed-radix index, so the K-matrix of any element is block
lower-triangular with the L-matrix blocks on the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .fields import as_fp, check_prime, rank

Exps = tuple[int, ...]


@dataclass(frozen=True)
class AlgebraContext:
    p: int
    n: int
    d: int

    def __post_init__(self):
        check_prime(self.p)
        if self.n < 1 or self.d < 1:
            raise ValueError("height n and dimension d must be positive")

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def grade_modulus(self) -> int:
        return self.q - 1

    @property
    def fgl_coeffs(self) -> tuple[int, ...]:
        """c_i = C(p, i)/p mod p for 1 <= i <= p-1."""
        return tuple((comb(self.p, i) // self.p) % self.p for i in range(1, self.p))

    @property
    def piece_dim(self) -> int:
        """Dimension of every reduced graded piece."""
        return (self.p ** (self.n * self.d) - 1) // (self.p**self.n - 1)

    def grade(self, exps: Exps) -> int:
        return sum(exps) % self.grade_modulus

    def index(self, exps: Exps) -> int:
        idx = 0
        for e in exps:
            idx = idx * self.q + e
        return idx

    @cached_property
    def tables(self) -> "_MonomialTables":
        return _MonomialTables(self)

    def variable(self, i: int) -> "AlgebraElement":
        e = [0] * self.d
        e[i] = 1
        return AlgebraElement(self, {tuple(e): 1})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {(0,) * self.d: 1})


class _MonomialTables:
    """Monomial enumeration and per-grade orderings for one context."""

    def __init__(self, ctx: AlgebraContext):
        q, d, N = ctx.q, ctx.d, ctx.grade_modulus
        total = q**d
        idx = np.arange(total, dtype=np.int64)
        exps = np.zeros((total, d), dtype=np.int64)
        rest = idx.copy()
        for j in range(d - 1, -1, -1):
            exps[:, j] = rest % q
            rest //= q
        self.exps = exps
        self.lengths = exps.sum(axis=1)
        self.grades = self.lengths % N
        self.members: list[np.ndarray] = []
        self.pos = np.zeros(total, dtype=np.int64)
        for c in range(N):
            mem = idx[self.grades == c]
            mem = mem[np.lexsort((mem, self.lengths[mem]))]
            self.members.append(mem)
            self.pos[mem] = np.arange(mem.size)
        self.layers = [idx[self.lengths == l] for l in range(int(self.lengths.max()) + 1)]
        self.strides = q ** np.arange(d - 1, -1, -1, dtype=np.int64)


class AlgebraElement:
    """Element of the truncated algebra, stored as {exponent tuple: coefficient}."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: dict[Exps, int] | None = None):
        self.ctx = ctx
        p, q = ctx.p, ctx.q
        clean = {}
        for e, c in (terms or {}).items():
            c %= p
            if c and all(x < q for x in e):
                clean[tuple(e)] = c
        self.terms = clean

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return AlgebraElement(self.ctx, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, a: int) -> "AlgebraElement":
        return AlgebraElement(self.ctx, {e: a * c for e, c in self.terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self.ctx, self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def has_constant_term(self) -> bool:
        return (0,) * self.ctx.d in self.terms

    def grades(self) -> set[int]:
        return {self.ctx.grade(e) for e in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def multiply(ctx: AlgebraContext, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Product in the truncated algebra; exponents reaching q vanish."""
    q, p = ctx.q, ctx.p
    out: dict[Exps, int] = {}
    for e1, c1 in u.terms.items():
        for e2, c2 in v.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if max(e) < q:
                out[e] = (out.get(e, 0) + c1 * c2) % p
    return AlgebraElement(ctx, out)


def frobenius(ctx: AlgebraContext, u: AlgebraElement, times: int = 1) -> AlgebraElement:
    """u^(p^times); coefficients in F_p are fixed by Frobenius."""
    f = ctx.p**times
    return AlgebraElement(ctx, {tuple(f * x for x in e): c for e, c in u.terms.items()})


def power(ctx: AlgebraContext, u: AlgebraElement, e: int) -> AlgebraElement:
    if e < 0:
        raise ValueError("negative exponent")
    out = ctx.one()
    j = 0
    while e:
        e, digit = divmod(e, ctx.p)
        if digit:
            base = frobenius(ctx, u, j)
            for _ in range(digit):
                out = multiply(ctx, out, base)
        j += 1
    return out


def formal_sum(ctx: AlgebraContext, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """u +_F v = u + v - sum_i c_i u^(i p^(n-1)) v^((p-i) p^(n-1))."""
    if u.has_constant_term() or v.has_constant_term():
        raise ValueError("formal_sum requires elements without constant term")
    p = ctx.p
    out = u + v
    uf = frobenius(ctx, u, ctx.n - 1)
    vf = frobenius(ctx, v, ctx.n - 1)
    for i, c in enumerate(ctx.fgl_coeffs, start=1):
        if c:
            term = multiply(ctx, power(ctx, uf, i), power(ctx, vf, p - i))
            out = out - term.scale(c)
    return out


def a_series(ctx: AlgebraContext, a: int, u: AlgebraElement) -> AlgebraElement:
    """[a](u) = u +_F ... +_F u (a copies)."""
    if not 0 <= a < ctx.p:
        raise ValueError(f"a_series: {a} not in [0, {ctx.p})")
    out = ctx.zero()
    for _ in range(a):
        out = formal_sum(ctx, out, u)
    return out


def _check_invertible(g: np.ndarray, p: int) -> None:
    if g.shape[0] != g.shape[1] or rank(g, p) < g.shape[0]:
        raise ValueError("singular matrix")


def act_on_generators(ctx: AlgebraContext, g, variant: str = "K") -> list[AlgebraElement]:
    """Images y_1..y_d of the generators x_1..x_d under the d x d matrix g."""
    g = as_fp(g, ctx.p)
    if g.shape != (ctx.d, ctx.d):
        raise ValueError(f"expected a {ctx.d}x{ctx.d} matrix")
    _check_invertible(g, ctx.p)
    xs = [ctx.variable(i) for i in range(ctx.d)]
    ys = []
    for j in range(ctx.d):
        if variant == "L":
            y = ctx.zero()
            for i in range(ctx.d):
                y = y + xs[i].scale(int(g[i, j]))
        elif variant == "K":
            y = ctx.zero()
            for i in range(ctx.d):
                y = formal_sum(ctx, y, a_series(ctx, int(g[i, j]), xs[i]))
        else:
            raise ValueError(f"unknown variant {variant!r}")
        ys.append(y)
    return ys


def apply(ctx: AlgebraContext, g, u: AlgebraElement, variant: str = "K") -> AlgebraElement:
    """Image of an arbitrary element, computed term by term as products of powers."""
    ys = act_on_generators(ctx, g, variant)
    out = ctx.zero()
    for e, c in u.terms.items():
        img = ctx.one()
        for y, k in zip(ys, e):
            if k:
                img = multiply(ctx, img, power(ctx, y, k))
        out = out + img.scale(c)
    return out


# ---------------------------------------------------------------------------
# graded action matrices


@dataclass
class GradedAction:
    """Matrices of a list of group elements on one graded piece.

    Column i of each matrix is the image of ``basis[i]``.
    """

    ctx: AlgebraContext
    k: int
    variant: str
    reduced: bool
    basis: list[Exps]
    matrices: list[np.ndarray]
    labels: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)


def _mult_operator(ctx: AlgebraContext, y: AlgebraElement, src: int) -> sp.csr_matrix:
    """Multiplication by a grade-1 element, from piece ``src`` to piece ``src + 1``."""
    t = ctx.tables
    N = ctx.grade_modulus
    dst = (src + 1) % N
    mem = t.members[src]
    rows, cols, vals = [], [], []
    for e, c in y.terms.items():
        target = t.exps[mem] + np.array(e, dtype=np.int64)
        ok = (target < ctx.q).all(axis=1)
        tidx = target[ok] @ t.strides
        rows.append(t.pos[tidx])
        cols.append(np.flatnonzero(ok))
        vals.append(np.full(int(ok.sum()), c, dtype=np.int64))
    if rows:
        rows, cols, vals = np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)
    shape = (t.members[dst].size, mem.size)
    return sp.csr_matrix((vals, (rows, cols)), shape=shape, dtype=np.int64)


def piece_matrices(ctx: AlgebraContext, g, variant: str = "K", grades: Iterable[int] | None = None) -> dict[int, np.ndarray]:
    """Unreduced action matrices of g on the requested grade pieces."""
    g = as_fp(g, ctx.p)
    N = ctx.grade_modulus
    key = tuple(sorted(set(range(N) if grades is None else (c % N for c in grades))))
    return _piece_matrices_cached(ctx, g.tobytes(), g.shape[0], variant, key)


# entries reach ~80 MB at p = 5, n = 2, d = 3, so keep few
@lru_cache(maxsize=8)
def _piece_matrices_cached(ctx, gbytes, size, variant, grades):
    g = np.frombuffer(gbytes, dtype=np.int64).reshape(size, size)
    ys = act_on_generators(ctx, g, variant)
    t = ctx.tables
    N, p, d = ctx.grade_modulus, ctx.p, ctx.d
    ops = [[None] * N for _ in range(d)]
    wanted = set(grades)
    out = {c: np.zeros((t.members[c].size,) * 2, dtype=np.int64) for c in grades}
    # images of the previous length layer, one column per monomial
    prev_idx = t.layers[0]
    prev = np.zeros((t.members[0].size, 1), dtype=np.int64)
    prev[t.pos[0], 0] = 1
    if 0 in wanted:
        out[0][:, t.pos[0]] = prev[:, 0]
    prev_col = {int(prev_idx[0]): 0}
    for length in range(1, len(t.layers)):
        layer = t.layers[length]
        src = (length - 1) % N
        dst = length % N
        cur = np.zeros((t.members[dst].size, layer.size), dtype=np.int64)
        ex = t.exps[layer]
        # peel the last variable with a positive exponent
        j_of = d - 1 - np.argmax(ex[:, ::-1] > 0, axis=1)
        for j in range(d):
            sel = np.flatnonzero(j_of == j)
            if not sel.size:
                continue
            if ops[j][src] is None:
                ops[j][src] = _mult_operator(ctx, ys[j], src)
            preds = layer[sel] - t.strides[j]
            pcols = np.fromiter((prev_col[int(i)] for i in preds), dtype=np.int64, count=preds.size)
            cur[:, sel] = (ops[j][src] @ prev[:, pcols]) % p
        if dst in wanted:
            out[dst][:, t.pos[layer]] = cur
        prev = cur
        prev_col = {int(i): c for c, i in enumerate(layer)}
    return out


def piece_basis(ctx: AlgebraContext, k: int, reduced: bool = False) -> list[Exps]:
    t = ctx.tables
    k %= ctx.grade_modulus
    mem = t.members[k]
    if reduced and k == 0:
        mem = mem[1:]
    return [tuple(int(x) for x in t.exps[i]) for i in mem]


def build_graded_action(
    ctx: AlgebraContext,
    gens: Sequence,
    k: int,
    variant: str = "K",
    reduced: bool = False,
    labels: Sequence[str] | None = None,
) -> GradedAction:
    """Action matrices of ``gens`` on the grade-k piece."""
    k %= ctx.grade_modulus
    mats = []
    for g in gens:
        m = piece_matrices(ctx, g, variant, [k])[k]
        if reduced and k == 0:
            m = m[1:, 1:]
        mats.append(m.copy())
    return GradedAction(
        ctx=ctx,
        k=k,
        variant=variant,
        reduced=reduced,
        basis=piece_basis(ctx, k, reduced),
        matrices=mats,
        labels=list(labels) if labels else [f"g{i}" for i in range(len(mats))],
    )
