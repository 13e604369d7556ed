"""Dense linear algebra over prime fields F_p and their extensions F_{p^r}.

Matrices over F_p are plain numpy integer arrays with entries in [0, p);
the modulus travels alongside as an argument.  Extension-field matrices
hold integer codes of field elements (see :class:`ExtField`) and are
reduced with lookup tables.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

# float64 matmul is exact while every partial sum stays below 2**53
_EXACT_FLOAT = 2**53


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def as_fp(m, p: int) -> np.ndarray:
    """Return ``m`` as a 2-d int64 array reduced mod p."""
    a = np.array(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    return a % p


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product of two F_p matrices, reduced mod p."""
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1]
    if inner * (p - 1) ** 2 < _EXACT_FLOAT:
        out = np.asarray(a, dtype=np.float64) @ np.asarray(b, dtype=np.float64)
        return np.rint(out).astype(np.int64) % p
    return (np.asarray(a, dtype=object) @ np.asarray(b, dtype=object) % p).astype(np.int64)


def identity(size: int) -> np.ndarray:
    return np.eye(size, dtype=np.int64)


def rref(m, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Returns the nonzero rows of the RREF and the list of pivot columns.
    """
    a = as_fp(m, p)
    rows, cols = a.shape
    inv = inverse_table(p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r, c:] = (a[r, c:] * inv[a[r, c]]) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


_PANEL = 64


def _rank_unblocked(a: np.ndarray, p: int) -> int:
    """Forward elimination one pivot at a time; ``a`` is modified."""
    rows, cols = a.shape
    inv = inverse_table(p)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            factor = (a[below, c] * inv[a[r, c]]) % p
            a[below, c:] = (a[below, c:] - np.outer(factor, a[r, c:])) % p
        r += 1
    return r


def _panel_basis(panel: np.ndarray, p: int) -> tuple[list[int], list[int]]:
    """Original row indices and column indices of an invertible minor of maximal size."""
    a = panel.copy()
    order = np.arange(a.shape[0])
    inv = inverse_table(p)
    r, cols = 0, []
    for c in range(a.shape[1]):
        if r == a.shape[0]:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
            order[[r, piv]] = order[[piv, r]]
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            factor = (a[below, c] * inv[a[r, c]]) % p
            a[below, c:] = (a[below, c:] - np.outer(factor, a[r, c:])) % p
        cols.append(c)
        r += 1
    return [int(i) for i in order[:r]], cols


def rank(m, p: int) -> int:
    """Row rank over F_p.

    Large matrices are eliminated a panel of columns at a time: rows I and
    columns C of an invertible minor are found inside the panel, the other
    rows J lose their panel part via J -= J[:, C] inv(I[:, C]) I (a single
    matrix product), and the rank is |I| plus the rank of what remains.
    """
    a = as_fp(m, p)
    if min(a.shape) <= 2 * _PANEL:
        return _rank_unblocked(a, p)
    total = 0
    c0 = 0
    while a.shape[0] and c0 < a.shape[1]:
        c1 = min(c0 + _PANEL, a.shape[1])
        rows_i, cols_c = _panel_basis(a[:, c0:c1], p)
        if rows_i:
            k = len(rows_i)
            keep = np.ones(a.shape[0], dtype=bool)
            keep[rows_i] = False
            pivot_rows = a[rows_i]
            minor = pivot_rows[:, [c0 + c for c in cols_c]]
            red, _ = rref(np.hstack([minor, identity(k)]), p)
            x = matmul_mod(a[keep][:, [c0 + c for c in cols_c]], red[:, k:], p)
            rest = a[keep][:, c1:]
            a = (rest - matmul_mod(x, pivot_rows[:, c1:], p)) % p
            total += k
        else:
            a = a[:, c1:]
        c0 = 0
    return total


def kernel_basis(m, p: int) -> np.ndarray:
    """Basis of the right null space, one vector per row."""
    a = as_fp(m, p)
    cols = a.shape[1]
    red, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        if pivots:
            basis[i, pivots] = (-red[:, f]) % p
    return basis


def fixed_space(gens, p: int, size: int | None = None) -> np.ndarray:
    """Basis (rows) of the common fixed vectors of the square matrices ``gens``."""
    gens = [as_fp(g, p) for g in gens]
    if not gens:
        if size is None:
            raise ValueError("size required when no generators are given")
        return identity(size)
    n = gens[0].shape[0]
    for g in gens:
        if g.shape != (n, n):
            raise ValueError("fixed_space: generators must be square of one size")
    eye = identity(n)
    stacked = np.vstack([(g - eye) % p for g in gens])
    return kernel_basis(stacked, p)


class Echelon:
    """Growing subspace of F_p^n held as an RREF basis."""

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vecs) -> np.ndarray:
        """Residues of ``vecs`` modulo the current span."""
        v = as_fp(vecs, self.p)
        if self.pivots and v.size:
            v = (v - matmul_mod(v[:, self.pivots], self.rows, self.p)) % self.p
        return v

    def add(self, vecs) -> int:
        """Extend the span by ``vecs``; return the dimension gained."""
        res = self.reduce(vecs)
        if not res.size:
            return 0
        red, piv = rref(res, self.p)
        if not piv:
            return 0
        rows = self.rows
        if self.pivots:
            rows = (rows - matmul_mod(rows[:, piv], red, self.p)) % self.p
        allrows = np.vstack([rows, red])
        allpiv = self.pivots + piv
        order = np.argsort(allpiv)
        self.rows = allrows[order]
        self.pivots = [allpiv[i] for i in order]
        return len(piv)

    def contains(self, vec) -> bool:
        return not self.reduce(vec).any()


# ---------------------------------------------------------------------------
# extension fields


def _poly_divides(f: tuple[int, ...], g: tuple[int, ...], p: int) -> bool:
    """Whether monic ``f`` divides ``g`` (coefficient tuples, low degree first)."""
    rem = list(g)
    df = len(f) - 1
    for top in range(len(rem) - 1, df - 1, -1):
        c = rem[top] % p
        if c:
            for i in range(df + 1):
                rem[top - df + i] = (rem[top - df + i] - c * f[i]) % p
    return not any(x % p for x in rem[:df])


def _monic_polys(p: int, r: int):
    # lexicographic in (c_0, c_1, ..., c_{r-1}), low degree first
    for coeffs in product(range(p), repeat=r):
        yield coeffs + (1,)


def is_irreducible(f: tuple[int, ...], p: int) -> bool:
    r = len(f) - 1
    if r <= 1:
        return r == 1
    for deg in range(1, r // 2 + 1):
        for h in _monic_polys(p, deg):
            if _poly_divides(h, f, p):
                return False
    return True


@lru_cache(maxsize=None)
def canonical_irreducible(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree r.

    Coefficients are listed low degree first and compared in that order.
    """
    for f in _monic_polys(p, r):
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")


class ExtField:
    """The field F_{p^r} = F_p[t]/(f) for the canonical irreducible f.

    Elements are integer codes ``sum(c_i * p**i)`` of their coordinate
    vectors ``(c_0, ..., c_{r-1})``; codes below p are the prime field.
    """

    def __init__(self, p: int, r: int):
        check_prime(p)
        self.p = p
        self.r = r
        self.order = p**r
        self.modulus = canonical_irreducible(p, r)
        q = self.order
        digits = np.array([[(x // p**i) % p for i in range(r)] for x in range(q)], dtype=np.int64)
        weights = p ** np.arange(r, dtype=np.int64)
        self.add = (digits[:, None, :] + digits[None, :, :]) % p @ weights
        self.neg = (-digits % p) @ weights
        self.sub = self.add[:, self.neg]
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                mul[a, b] = mul[b, a] = self._mul_poly(digits[a], digits[b])
        self.mul = mul
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self.inv = inv
        self.generator = self._find_generator()

    def _mul_poly(self, a, b) -> int:
        p, r, f = self.p, self.r, self.modulus
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += int(x) * int(y)
        for top in range(len(prod) - 1, r - 1, -1):
            c = prod[top] % p
            if c:
                for i in range(r + 1):
                    prod[top - r + i] -= c * f[i]
        return sum((prod[i] % p) * p**i for i in range(r))

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        x, k = a, 1
        while x != 1:
            x = int(self.mul[x, a])
            k += 1
        return k

    def _find_generator(self) -> int:
        for a in range(1, self.order):
            if self.mult_order(a) == self.order - 1:
                return a
        raise AssertionError("no primitive element")

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        e %= self.order - 1
        out = 1
        base = a
        while e:
            if e & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            e >>= 1
        return out

    def zeta_power(self, e: int) -> int:
        """The element generator**e."""
        return self.power(self.generator, e)

    def __repr__(self) -> str:
        return f"ExtField({self.p}, {self.r})"


@lru_cache(maxsize=None)
def ext_field(p: int, r: int) -> ExtField:
    return ExtField(p, r)


def multiplicative_order_mod(p: int, t: int) -> int:
    """Smallest r >= 1 with t | p**r - 1."""
    if t == 1:
        return 1
    r, x = 1, p % t
    while x != 1:
        x = x * p % t
        r += 1
        if r > t:
            raise ValueError(f"{p} is not invertible mod {t}")
    return r


def ext_rank(m: np.ndarray, field: ExtField) -> int:
    """Rank of a matrix of field codes over ``field``."""
    a = np.array(m, dtype=np.int64)
    rows, cols = a.shape
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            factor = neg[mul[a[below, c], inv[a[r, c]]]]
            a[below, c:] = add[a[below, c:], mul[factor[:, None], a[r, c:][None, :]]]
        r += 1
    return r


def eigen_multiplicity(m, p: int, theta: int, field: ExtField) -> int:
    """dim over ``field`` of ker(m - theta*I) for an F_p matrix ``m``."""
    a = as_fp(m, p)
    n = a.shape[0]
    diag = np.arange(n)
    a[diag, diag] = field.sub[a[diag, diag], theta]
    return n - ext_rank(a, field)
