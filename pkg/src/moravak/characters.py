"""Exact Brauer characters of the graded pieces and of permutation modules.

Eigenvalues of a p-regular matrix of order t are found inside F_{p^r},
r = ord_t(p), as powers of ``theta = zeta**((p**r - 1) / t)`` where zeta is
the fixed primitive element of :class:`~moravak.fields.ExtField`.  The
eigenvalue ``theta**s`` lifts to the complex root ``exp(2 pi i s / t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Sequence

import numpy as np

from .cyclotomic import Cyclotomic, root_of_unity
from .fields import as_fp, ext_field, identity, matmul_mod, multiplicative_order_mod, rank
from .groups import GroupData, Subgroup


def matrix_order(g: np.ndarray, p: int) -> int:
    g = as_fp(g, p)
    x, k = g, 1
    eye = identity(g.shape[0])
    while not np.array_equal(x, eye):
        x = matmul_mod(x, g, p)
        k += 1
    return k


def _frobenius_orbits(t: int, p: int) -> list[list[int]]:
    seen: set[int] = set()
    orbits = []
    for s in range(t):
        if s in seen:
            continue
        orb = []
        x = s
        while x not in orb:
            orb.append(x)
            x = x * p % t
        seen.update(orb)
        orbits.append(orb)
    return orbits


def _orbit_polynomial(field, roots) -> list[int]:
    """Coefficients (constant term first) of prod (x - a) over ``roots``, in F_p."""
    poly = [1]
    for a in roots:
        shifted = [0] + poly
        poly = [int(field.sub[shifted[i], field.mul[a, poly[i]]]) if i < len(poly) else shifted[i]
                for i in range(len(shifted))]
    if any(c >= field.p for c in poly):
        raise ArithmeticError("roots are not closed under Frobenius")
    return poly


def _poly_at_matrix(f: list[int], m: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros_like(m)
    eye = identity(m.shape[0])
    for c in reversed(f):
        out = (matmul_mod(out, m, p) + c * eye) % p
    return out


def eigen_census(m: np.ndarray, p: int, t: int) -> list[int]:
    """counts[s] = multiplicity of the eigenvalue lifting to exp(2 pi i s / t).

    ``m`` must satisfy m**t = 1 with t coprime to p, so it is diagonalizable
    over F_{p^r} and geometric multiplicities are the algebraic ones.
    """
    if t % p == 0:
        raise ValueError(f"order {t} is not coprime to p = {p}")
    r = multiplicative_order_mod(p, t)
    field = ext_field(p, r)
    step = (field.order - 1) // t
    counts = [0] * t
    m = as_fp(m, p)
    remaining = m.shape[0]
    orbits = _frobenius_orbits(t, p)
    for pos, orb in enumerate(orbits):
        if remaining == 0:
            break
        if pos == len(orbits) - 1:
            # whatever is left belongs to the last orbit
            if remaining % len(orb):
                raise ArithmeticError("eigenvalue multiplicities do not add up to the size")
            for s in orb:
                counts[s] = remaining // len(orb)
            remaining = 0
            break
        # Galois conjugate eigenvalues share one multiplicity; as m is
        # semisimple, ker f(m) for their minimal polynomial f has dimension
        # len(orb) * mult, so only an F_p rank is needed
        f = _orbit_polynomial(field, [field.zeta_power(s * step) for s in orb])
        mult = (m.shape[0] - rank(_poly_at_matrix(f, m, p), p)) // len(orb)
        for s in orb:
            counts[s] = mult
        remaining -= mult * len(orb)
    if remaining != 0:
        raise ArithmeticError("eigenvalue multiplicities do not add up to the size")
    return counts


def eigenvalue_exponents(g, p: int) -> tuple[int, list[int]]:
    """(t, [s_1..s_d]) with the lifted eigenvalues exp(2 pi i s_j / t) of g."""
    g = as_fp(g, p)
    t = matrix_order(g, p)
    counts = eigen_census(g, p, t)
    return t, [s for s in range(t) for _ in range(counts[s])]


def lift_eigenvalues(g, p: int) -> list[Cyclotomic]:
    t, exps = eigenvalue_exponents(g, p)
    return [root_of_unity(t, s) for s in exps]


def character_from_action(m: np.ndarray, p: int, t: int) -> Cyclotomic:
    """Brauer character value of a matrix of p-regular order dividing t."""
    counts = eigen_census(m, p, t)
    return Cyclotomic.from_counts(t, counts)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _cyclic_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # entries stay far below 2**63: they count monomials of the truncated algebra
    M = a.size
    full = np.convolve(a, b)
    out = full[:M].copy()
    out[: full.size - M] += full[M:]
    return out


def _geometric_factor(M: int, step: int, q: int) -> np.ndarray:
    # group-ring element sum_{e<q} z**(e*step) in Z[C_M]
    return np.bincount((np.arange(q, dtype=np.int64) * step) % M, minlength=M).astype(np.int64)


def character_via_generating_function(p: int, n: int, k: int, t: int, exponents: Sequence[int]) -> Cyclotomic:
    """Character of the linear-substitution piece of grade k, from eigenvalues.

    Averages tau**(-k) * prod_i G(lambda_i tau) over the (p^n - 1)-st roots
    of unity tau, where G(z) = 1 + z + ... + z^(q-1).  Each factor is kept
    as a geometric sum, so no division by a vanishing 1 - lambda tau occurs.
    """
    q = p**n
    N = q - 1
    M = _lcm(N, t)
    total = np.zeros(M, dtype=np.int64)
    for j in range(N):
        tau = j * (M // N)
        acc = np.zeros(M, dtype=np.int64)
        acc[(-k * tau) % M] = 1
        for s in exponents:
            acc = _cyclic_convolve(acc, _geometric_factor(M, s * (M // t) + tau, q))
        total += acc
    return Cyclotomic.from_counts(M, total) / N


def character_via_eq31(p: int, n: int, d: int, k: int, eigenvalues) -> Cyclotomic:
    """Same as :func:`character_via_generating_function`, taking a matrix or (t, exponents)."""
    if isinstance(eigenvalues, tuple) and len(eigenvalues) == 2 and isinstance(eigenvalues[0], int):
        t, exps = eigenvalues
    else:
        t, exps = eigenvalue_exponents(eigenvalues, p)
    if len(exps) != d:
        raise ValueError(f"expected {d} eigenvalues, got {len(exps)}")
    return character_via_generating_function(p, n, k, t, exps)


def generating_function_at_one(p: int, n: int, t: int, exponents: Sequence[int]) -> Cyclotomic:
    """f_g(1) = prod_i (1 + lambda_i + ... + lambda_i^(q-1))."""
    q = p**n
    out = Cyclotomic.rational(1, t)
    for s in exponents:
        out = out * Cyclotomic.from_counts(t, _geometric_factor(t, s, q))
    return out


def block_diagonal_with_identity(g: np.ndarray, r: int) -> np.ndarray:
    d = g.shape[0]
    out = identity(d + r)
    out[:d, :d] = g
    return out


def lemma32_check(g, p: int, r: int, n: int, k: int) -> tuple[bool, Cyclotomic, Cyclotomic]:
    """Compare the character of g x I_r with the shifted character of g.

    Returns (equal, left side, right side); both sides come from separate
    generating-function evaluations.
    """
    g = as_fp(g, p)
    d = g.shape[0]
    big = block_diagonal_with_identity(g, r)
    lhs = character_via_eq31(p, n, d + r, k, big)
    t, exps = eigenvalue_exponents(g, p)
    shift = Fraction(p ** (n * r) - 1, p**n - 1)
    rhs = character_via_generating_function(p, n, k, t, exps) + generating_function_at_one(p, n, t, exps) * shift
    return lhs == rhs, lhs, rhs


# ---------------------------------------------------------------------------
# permutation characters


def perm_character_cosets(G: GroupData, H: Subgroup, g: int) -> int:
    """Fixed points of element g on the left cosets G/H."""
    hits = sum(1 for x in range(G.order) if G.mul(G.mul(G.inverses[x], g), x) in H.members)
    return hits // H.order


def perm_character_map(perm: Sequence[int]) -> int:
    """Fixed points of an explicit permutation given as an image list."""
    return sum(1 for i, j in enumerate(perm) if i == j)


def gaussian_binomial(n: int, i: int, p: int) -> int:
    """Number of i-dimensional subspaces of (F_p)^n."""
    if i < 0 or i > n:
        return 0
    num = prod(p**n - p**j for j in range(i))
    den = prod(p**i - p**j for j in range(i))
    return num // den


def gl_order(d: int, p: int) -> int:
    return prod(p**d - p**j for j in range(d))


@dataclass(frozen=True)
class HomOrbitType:
    image_dim: int
    kernel_dim: int
    multiplicity: int
    orbit_size: int
    stabilizer_order: int


def hom_orbit_decomposition(p: int, n: int, d: int) -> list[HomOrbitType]:
    """GL_d(F_p)-orbits on Hom(V, (F_p)^n) grouped by image dimension.

    Maps with image of dimension i form m(n, i) orbits, one per image; each
    is a copy of GL/H(W) with W = kernel of dimension d - i.
    """
    out = []
    for i in range(min(n, d) + 1):
        size = prod(p**d - p**j for j in range(i))  # surjections V -> fixed image
        out.append(HomOrbitType(i, d - i, gaussian_binomial(n, i, p), size, gl_order(d, p) // size))
    return out


def hom_fixed_points(g, p: int, n: int) -> int:
    """|{phi in Hom(V,(F_p)^n) : phi(vg) = phi(v)}| = p^(n * dim ker(g - 1))."""
    g = as_fp(g, p)
    d = g.shape[0]
    return p ** (n * (d - rank((g - identity(d)) % p, p)))


def hom_permutation(g, p: int, n: int) -> list[int]:
    """g acting on d x n matrices (maps V -> F_p^n on row vectors) by phi -> g phi."""
    g = as_fp(g, p)
    d = g.shape[0]
    size = d * n
    weights = p ** np.arange(size, dtype=np.int64)
    out = []
    for code in range(p**size):
        phi = np.array([(code // p**i) % p for i in range(size)], dtype=np.int64).reshape(d, n)
        img = matmul_mod(g, phi, p)
        out.append(int(img.reshape(-1) @ weights))
    return out


@dataclass
class KuhnRow:
    label: str
    order: int
    graded_total: Cyclotomic
    fixed_points: int

    @property
    def ok(self) -> bool:
        return self.graded_total == self.fixed_points


def kuhn_character_check(G: GroupData, n: int, reps: Sequence[int] | None = None) -> list[KuhnRow]:
    """Sum over k of the K-piece characters vs fixed points on Hom(V,(F_p)^n).

    The graded side is computed from the action matrices on every piece.
    """
    from .algebra import AlgebraContext, piece_matrices
    from .groups import p_regular_classes

    p, d = G.p, G.d
    ctx = AlgebraContext(p, n, d)
    if reps is None:
        reps = p_regular_classes(G, p)
    rows = []
    for i in reps:
        g = G.elements[i]
        t = G.orders[i]
        mats = piece_matrices(ctx, g, "K")
        total = sum((character_from_action(m, p, t) for m in mats.values()), Cyclotomic.rational(0))
        rows.append(KuhnRow(f"g{i}", t, total, hom_fixed_points(g, p, n)))
    return rows


# ---------------------------------------------------------------------------
# obstructions


@dataclass
class CharacterRow:
    label: str
    order: int
    module: str
    value: Cyclotomic


def perm_obstruction(rows: Sequence[CharacterRow]) -> str:
    """First reason the values cannot come from a permutation module, or 'none'."""
    ident = [r for r in rows if r.order == 1]
    top = ident[0].value if ident else None
    for r in rows:
        if not r.value.is_rational():
            return f"irrational value at {r.label}"
    for r in rows:
        if not r.value.is_nonnegative_integer():
            return f"value {r.value} at {r.label} is not a non-negative integer"
    if top is not None:
        for r in rows:
            if r.value.rational_value() > top.rational_value():
                return f"value at {r.label} exceeds the dimension"
    return "none"
