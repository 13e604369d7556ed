"""Decomposition engines.

* maximal permutation submodules over p-groups, by chaining trace-map images
  through an ordered list of subgroup classes;
* SL_2(F_3)-modules in characteristic 3 via seven idempotent ranks;
* GL_2(F_2)-modules in characteristic 2 via two ranks, with closed forms for
  the truncated polynomial pieces;
* a feasibility search deciding whether a module with known Brauer
  character and known restriction to a Sylow subgroup could be a sum of
  transitive permutation modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .characters import character_from_action, perm_character_cosets
from .cyclotomic import Cyclotomic
from .fields import Echelon, as_fp, fixed_space, identity, matmul_mod, rank
from .groups import (
    GroupData,
    Subgroup,
    conjugacy_classes_of_subgroups,
    p_regular_classes,
    subgroup_lattice,
    transversal,
)


class Representation:
    """A homomorphism from a matrix group into GL(M), given on generators.

    ``images[s]`` is the matrix of ``G.gens[s]``; every other element is
    reached along the closure tree, one product per element.
    """

    def __init__(self, G: GroupData, images: Sequence, p: int | None = None):
        self.G = G
        self.p = G.p if p is None else p
        self.images = [as_fp(m, self.p) for m in images]
        if len(self.images) != len(G.gens):
            raise ValueError("one image per group generator is required")
        if self.images:
            self.dim = self.images[0].shape[0]
        else:
            raise ValueError("a representation of the trivial group needs an explicit dimension")
        self._all: np.ndarray | None = None

    @classmethod
    def trivial_group(cls, G: GroupData, dim: int) -> "Representation":
        rep = cls.__new__(cls)
        rep.G, rep.p, rep.images, rep.dim, rep._all = G, G.p, [], dim, None
        return rep

    @classmethod
    def trivial_module(cls, G: GroupData, dim: int = 1) -> "Representation":
        """Every element acts as the identity."""
        if not G.gens:
            return cls.trivial_group(G, dim)
        return cls(G, [identity(dim) for _ in G.gens])

    def all_matrices(self) -> np.ndarray:
        """rho of every element, indexed like ``G.elements`` (uint8 storage)."""
        if self._all is None:
            G, n = self.G, self.dim
            dtype = np.uint8 if self.p < 256 else np.int64
            out = np.empty((G.order, n, n), dtype=dtype)
            out[0] = identity(n)
            for i in range(1, G.order):
                out[i] = matmul_mod(self.images[G.via[i]], out[G.parent[i]], self.p)
            self._all = out
        return self._all

    def matrix(self, i: int) -> np.ndarray:
        return self.all_matrices()[i].astype(np.int64)

    def check_homomorphism(self) -> bool:
        """rho(s) rho(g) = rho(s g) for every generator s and element g."""
        G, mats = self.G, self.all_matrices()
        gens = [G.lookup(g) for g in G.gens]
        for s, img in zip(gens, self.images):
            for i in range(G.order):
                j = G.mul(s, i)
                if not np.array_equal(matmul_mod(img, mats[i], self.p), mats[j]):
                    return False
        return True

    def element_sum(self, indices: Sequence[int]) -> np.ndarray:
        mats = self.all_matrices()
        acc = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i in indices:
            acc += mats[i]
        return acc % self.p

    def conjugated(self, P: np.ndarray) -> "Representation":
        """The isomorphic representation P^-1 rho P."""
        from .groups import matrix_inverse

        Pinv = matrix_inverse(as_fp(P, self.p), self.p)
        imgs = [matmul_mod(matmul_mod(Pinv, m, self.p), P, self.p) for m in self.images]
        return Representation(self.G, imgs, self.p)


def _gens_of(G: GroupData, H: Subgroup) -> list[int]:
    # a small generating set is enough for the fixed space
    return list(H.gens) if H.gens else []


# ---------------------------------------------------------------------------
# maximal permutation submodules


@dataclass
class PermDecomposition:
    labels: list[str]
    indices: list[int]
    multiplicities: list[int]
    dim_M: int
    complete: bool
    generators: list[list[np.ndarray]] | None = None
    verified_dim: int | None = None

    @property
    def dim_M_prime(self) -> int:
        return sum(m * i for m, i in zip(self.multiplicities, self.indices))

    @property
    def is_permutation_module(self) -> bool | None:
        if not self.complete:
            return None
        return self.dim_M_prime == self.dim_M


def perm_submodule(
    rep: Representation,
    classes: Sequence[Subgroup],
    complete: bool = False,
    with_generators: bool = False,
) -> PermDecomposition:
    """Multiplicities of transitive permutation summands in a maximal permutation submodule.

    ``classes`` holds one representative per subgroup class, in non-decreasing
    order.  M_i = M_{i-1} + trace_i(M^{G_i}), where trace_i sums rho over a
    left transversal of G_i; m_i is the dimension gained at step i.
    """
    G, p = rep.G, rep.p
    if not G.is_p_group():
        raise ValueError(f"group of order {G.order} is not a {p}-group")
    orders = [H.order for H in classes]
    if any(b < a for a, b in zip(orders, orders[1:])):
        raise ValueError("subgroup classes must be listed with non-decreasing order")
    n = rep.dim
    span = Echelon(n, p)
    mults, gens_out = [], []
    for H in classes:
        hgens = _gens_of(G, H)
        if hgens:
            fixed = fixed_space([rep.matrix(h) for h in hgens], p)
        else:
            fixed = identity(n)
        if fixed.shape[0] == 0:
            mults.append(0)
            gens_out.append([])
            continue
        trace = rep.element_sum(transversal(G, H))
        images = matmul_mod(fixed, trace.T, p)  # rows are trace images of fixed vectors
        if with_generators:
            chosen = []
            for x, y in zip(fixed, images):
                if span.add(y[None, :]):
                    chosen.append(x)
            mults.append(len(chosen))
            gens_out.append(chosen)
        else:
            mults.append(span.add(images))
    out = PermDecomposition(
        labels=[H.label or f"H{i + 1}" for i, H in enumerate(classes)],
        indices=[G.order // H.order for H in classes],
        multiplicities=mults,
        dim_M=n,
        complete=complete,
        generators=gens_out if with_generators else None,
    )
    if with_generators:
        out.verified_dim = _generated_submodule_dim(rep, [x for xs in gens_out for x in xs])
    return out


def _generated_submodule_dim(rep: Representation, vecs: Sequence[np.ndarray]) -> int:
    if not vecs:
        return 0
    X = np.array(vecs, dtype=np.int64)  # rows
    mats = rep.all_matrices()
    rows = [matmul_mod(X, mats[i].T.astype(np.int64), rep.p) for i in range(rep.G.order)]
    return rank(np.vstack(rows), rep.p)


def class_representatives(G: GroupData, preset: Sequence[Subgroup] | None = None, bound: int = 200) -> list[Subgroup]:
    classes = conjugacy_classes_of_subgroups(G, subgroup_lattice(G, bound), preset)
    reps = []
    for i, cls in enumerate(classes):
        H = cls[0]
        reps.append(H if H.label else Subgroup(H.members, H.gens, f"H{i + 1}"))
    return reps


def is_permutation_module(
    rep: Representation, classes: Sequence[Subgroup] | None = None, with_generators: bool = False
) -> tuple[bool, PermDecomposition]:
    """Run the trace chain over the full list of subgroup classes."""
    if classes is None:
        classes = class_representatives(rep.G)
    dec = perm_submodule(rep, classes, complete=True, with_generators=with_generators)
    return bool(dec.is_permutation_module), dec


# ---------------------------------------------------------------------------
# permutation modules from G-sets


def coset_action(G: GroupData, H: Subgroup) -> tuple[list[int], list[list[int]]]:
    """Left transversal of H and, for each group generator, its permutation of the cosets."""
    reps = transversal(G, H)
    where = {}
    for c, x in enumerate(reps):
        for h in H.members:
            where[G.mul(x, h)] = c
    perms = []
    for g in G.gens:
        gi = G.lookup(g)
        perms.append([where[G.mul(gi, x)] for x in reps])
    return reps, perms


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    n = len(perm)
    m = np.zeros((n, n), dtype=np.int64)
    m[list(perm), list(range(n))] = 1
    return m


def gset_representation(G: GroupData, stabilizers: Sequence[Subgroup]) -> Representation:
    """F_p[G/H_1 + ... + G/H_r] as a representation (block diagonal)."""
    blocks = [coset_action(G, H)[1] for H in stabilizers]
    images = []
    for s in range(len(G.gens)):
        mats = [permutation_matrix(b[s]) for b in blocks]
        n = sum(m.shape[0] for m in mats)
        big = np.zeros((n, n), dtype=np.int64)
        off = 0
        for m in mats:
            k = m.shape[0]
            big[off:off + k, off:off + k] = m
            off += k
        images.append(big)
    return Representation(G, images)


def direct_sum(*reps: Representation) -> Representation:
    G = reps[0].G
    images = []
    for s in range(len(G.gens)):
        mats = [r.images[s] for r in reps]
        n = sum(m.shape[0] for m in mats)
        big = np.zeros((n, n), dtype=np.int64)
        off = 0
        for m in mats:
            k = m.shape[0]
            big[off:off + k, off:off + k] = m
            off += k
        images.append(big)
    return Representation(G, images, reps[0].p)


def augmentation_kernel(G: GroupData, H: Subgroup) -> Representation:
    """Sum-zero vectors of F_p[G/H], on the basis e_i - e_0."""
    _, perms = coset_action(G, H)
    m = len(perms[0]) if perms else 1
    B = np.zeros((m, m - 1), dtype=np.int64)
    for i in range(1, m):
        B[i, i - 1] = 1
        B[0, i - 1] = G.p - 1
    images = [matmul_mod(permutation_matrix(pm)[1:, :], B, G.p) for pm in perms]
    return Representation(G, images)


def dual(rep: Representation) -> Representation:
    from .groups import matrix_inverse

    return Representation(rep.G, [matrix_inverse(m, rep.p).T.copy() for m in rep.images], rep.p)


def subgroup_class_index(G: GroupData, classes: Sequence[Sequence[Subgroup]], members: frozenset[int]) -> int:
    for i, cls in enumerate(classes):
        if any(S.members == members for S in cls):
            return i
    raise KeyError("subgroup not found among the classes")


# ---------------------------------------------------------------------------
# SL_2(F_3)

SL2F3_DIMS = (1, 2, 3, 2, 4, 6, 3)
# I_3 and I_6 are the projective covers of T and V; I_7 is simple projective
SL2F3_PROJECTIVE = (False, False, True, False, False, True, True)


@dataclass
class SL2F3Report:
    ranks: tuple[int, ...]
    counts: tuple[int, ...]

    @property
    def dim(self) -> int:
        return sum(c * d for c, d in zip(self.counts, SL2F3_DIMS))

    @property
    def non_projective(self) -> int:
        return sum(c for c, proj in zip(self.counts, SL2F3_PROJECTIVE) if not proj)


def sl2f3_decompose(rep: Representation) -> SL2F3Report:
    """Multiplicities of I_1..I_7 in a module for SL_2(F_3) over F_3.

    tau is the central involution, sigma the sum of the six elements of
    order four, alpha any element of order three; all three are located by
    element orders rather than assumed from the generators.
    """
    G, p = rep.G, rep.p
    if p != 3 or G.order != 24:
        raise ValueError("expects a group of order 24 acting over F_3")
    orders = G.orders
    twos = [i for i in range(G.order) if orders[i] == 2]
    fours = [i for i in range(G.order) if orders[i] == 4]
    threes = [i for i in range(G.order) if orders[i] == 3]
    if len(twos) != 1 or len(fours) != 6 or not threes:
        raise ValueError("group is not SL_2(F_3)")
    n = rep.dim
    eye = identity(n)
    tau = rep.matrix(twos[0])
    sigma = rep.element_sum(fours)
    alpha = rep.matrix(threes[0])
    bT = (2 * eye + 2 * tau + 2 * sigma) % 3
    bV = (2 * eye + tau) % 3
    bP = sigma
    one_minus = (eye - alpha) % 3
    sq = matmul_mod(one_minus, one_minus, 3)
    elems = [bT, matmul_mod(one_minus, bT, 3), matmul_mod(sq, bT, 3),
             bV, matmul_mod(one_minus, bV, 3), matmul_mod(sq, bV, 3), bP]
    r = [rank(e, 3) for e in elems]
    counts = [
        Fraction(r[0] - 2 * r[1] + r[2]),
        Fraction(r[1] - 2 * r[2]),
        Fraction(r[2]),
        Fraction(r[4] - 2 * r[5]),
        Fraction(r[3] - 2 * r[4] + r[5]),
        Fraction(2 * r[4] - r[3], 2),
        Fraction(r[6], 3),
    ]
    if any(c.denominator != 1 or c < 0 for c in counts):
        raise ArithmeticError(f"rank data {r} do not describe an SL_2(F_3)-module")
    rep_out = SL2F3Report(tuple(r), tuple(int(c) for c in counts))
    if rep_out.dim != n:
        raise ArithmeticError("multiplicities do not account for the dimension")
    return rep_out


# ---------------------------------------------------------------------------
# GL_2(F_2)


@dataclass(frozen=True)
class GL2F2Report:
    """Counts of the trivial module T, its projective cover N, and the natural module V."""

    t: int
    n: int
    v: int

    @property
    def dim(self) -> int:
        return self.t + 2 * self.n + 2 * self.v

    def __add__(self, other: "GL2F2Report") -> "GL2F2Report":
        return GL2F2Report(self.t + other.t, self.n + other.n, self.v + other.v)

    def scaled(self, c: int) -> "GL2F2Report":
        return GL2F2Report(c * self.t, c * self.n, c * self.v)


def gl2f2_decompose(rep: Representation) -> GL2F2Report:
    """(t, n, v) from two ranks.

    With c the sum over the subgroup of order three and s an involution:
    c kills V and acts invertibly on T and N, so rank(c) = t + 2n; (1 + s)c
    is zero on T and has rank one on N, so rank((1 + s)c) = n.
    """
    G, p = rep.G, rep.p
    if p != 2 or G.order != 6:
        raise ValueError("expects a group of order 6 acting over F_2")
    threes = [i for i in range(G.order) if G.orders[i] == 3]
    twos = [i for i in range(G.order) if G.orders[i] == 2]
    if len(threes) != 2 or not twos:
        raise ValueError("group is not GL_2(F_2)")
    c = rep.element_sum([0] + threes)
    s = rep.matrix(twos[0])
    rc = rank(c, 2)
    nn = rank(matmul_mod((identity(rep.dim) + s) % 2, c, 2), 2)
    t = rc - 2 * nn
    rest = rep.dim - t - 2 * nn
    if t < 0 or rest < 0 or rest % 2:
        raise ArithmeticError("rank data do not describe a GL_2(F_2)-module")
    return GL2F2Report(t, nn, rest // 2)


def l_formula_52(n: int, k: int) -> GL2F2Report:
    """Closed-form decomposition of the linear-substitution piece L^k, d = 2, p = 2."""
    N = 2**n - 1
    k %= N
    q = 2**n
    trivial = 2 if k == 0 else 1
    if n % 2:
        return GL2F2Report(trivial, (q - 2) // 6, (q + 1) // 3)
    if k == 0 or k % 3 == 0:
        return GL2F2Report(trivial, (q + 2) // 6, (q - 1) // 3)
    return GL2F2Report(1, (q - 4) // 6, (q + 2) // 3)


def _series_coeff(num: dict[int, int], den_factors: Sequence[int], j: int) -> int:
    # coefficient of t^j in (sum num[e] t^e) / prod (1 - t^f)
    coeffs = [0] * (j + 1)
    for e, c in num.items():
        if e <= j:
            coeffs[e] += c
    for f in den_factors:
        for i in range(f, j + 1):
            coeffs[i] += coeffs[i - f]
    return coeffs[j]


def molien_counts_51(j: int) -> GL2F2Report:
    """Multiplicities of T, N, V in the degree-j polynomial functions on V = F_2^2."""
    if j < 0:
        raise ValueError("degree must be non-negative")
    t = _series_coeff({0: 1}, (2,), j)
    nn = _series_coeff({3: 1}, (2, 3), j)
    v = _series_coeff({1: 1}, (1, 3), j)
    return GL2F2Report(t, nn, v)


def truncated_l_decomposition_via_51(n: int, k: int) -> GL2F2Report:
    """L^k assembled from symmetric powers: S^k + S^(N-k) for 0 < k < N, 2T + S^N for k = 0."""
    N = 2**n - 1
    k %= N
    if k == 0:
        return GL2F2Report(2, 0, 0) + molien_counts_51(N)
    return molien_counts_51(k) + molien_counts_51(N - k)


TRANSITIVE_GL2F2 = {
    "GL/GL": GL2F2Report(1, 0, 0),
    "GL/C3": GL2F2Report(0, 1, 0),
    "GL/H1": GL2F2Report(1, 0, 1),
    "GL/1": GL2F2Report(0, 1, 2),
}


def gl2f2_permutation_census(r: GL2F2Report) -> dict[str, int] | None:
    """Write r as a sum of the four transitive permutation modules, if possible."""
    for e in range(r.n + 1):
        c = r.v - 2 * e
        if c < 0:
            break
        if c <= r.t:
            return {"GL/GL": r.t - c, "GL/C3": r.n - e, "GL/H1": c, "GL/1": e}
    return None


def hom_module_gl2f2(n: int) -> GL2F2Report:
    """F_2[Hom(V, F_2^n)] from its orbit types."""
    a = 2**n - 1
    b = (2**n - 1) * (2**n - 2) // 6
    return TRANSITIVE_GL2F2["GL/GL"] + TRANSITIVE_GL2F2["GL/H1"].scaled(a) + TRANSITIVE_GL2F2["GL/1"].scaled(b)


# ---------------------------------------------------------------------------
# graded permutation feasibility over the full group


@dataclass
class FeasibilityResult:
    feasible: bool
    reason: str
    certificate: dict[str, int] | None = None


def character_obstruction(values: Sequence[Cyclotomic]) -> str | None:
    for v in values:
        if not v.is_rational():
            return "irrational Brauer character value"
        r = v.rational_value()
        if r.denominator != 1 or r < 0:
            return f"Brauer character value {r} is not a non-negative integer"
    return None


@dataclass
class PermutationCensus:
    """Per subgroup class H of G: Brauer character and Sylow restriction of F_p[G/H]."""

    G: GroupData
    classes: list[Subgroup]
    regular: list[int]
    characters: list[list[int]]  # [class][regular class]
    restrictions: list[list[int]]  # [class][Sylow subgroup class]
    sylow_classes: list[Subgroup]
    labels: list[str] = field(default_factory=list)

    def solve(self, target_chars: Sequence[Cyclotomic], target_restriction: Sequence[int]) -> FeasibilityResult:
        bad = character_obstruction(target_chars)
        if bad:
            return FeasibilityResult(False, bad)
        ints = [int(v.rational_value()) for v in target_chars]
        target = np.array(ints + list(target_restriction), dtype=np.int64)
        vecs = [np.array(c + r, dtype=np.int64) for c, r in zip(self.characters, self.restrictions)]
        # every coordinate is non-negative, so the remaining target must stay so
        order = sorted(range(len(vecs)), key=lambda i: -int(vecs[i][0]))
        sol = [0] * len(vecs)

        def dfs(pos: int, rest: np.ndarray) -> bool:
            if not rest.any():
                return True
            if pos == len(order):
                return False
            i = order[pos]
            v = vecs[i]
            nz = v > 0
            cap = int((rest[nz] // v[nz]).min()) if nz.any() else 0
            for c in range(cap, -1, -1):
                sol[i] = c
                if dfs(pos + 1, rest - c * v):
                    return True
            sol[i] = 0
            return False

        if dfs(0, target):
            cert = {self.labels[i]: sol[i] for i in range(len(sol)) if sol[i]}
            return FeasibilityResult(True, "decomposition found", cert)
        return FeasibilityResult(False, "no non-negative combination of transitive permutation modules matches")


def permutation_census(G: GroupData, sylow: GroupData, sylow_preset: Sequence[Subgroup] | None = None, bound: int = 200) -> PermutationCensus:
    """Characters and Mackey restrictions of every transitive F_p[G]-permutation module.

    ``sylow`` is a separately closed Sylow p-subgroup whose matrices lie in G.
    """
    p = G.p
    lattice = subgroup_lattice(G, bound)
    classes = [cls[0] for cls in conjugacy_classes_of_subgroups(G, lattice)]
    regular = p_regular_classes(G, p)
    s_classes_full = conjugacy_classes_of_subgroups(sylow, subgroup_lattice(sylow), sylow_preset)
    s_reps = [c[0] for c in s_classes_full]
    to_sylow = {G.lookup(m): i for i, m in enumerate(sylow.elements)}
    U = frozenset(to_sylow)
    chars, restr, labels = [], [], []
    for ci, H in enumerate(classes):
        chars.append([perm_character_cosets(G, H, g) for g in regular])
        counts = [0] * len(s_reps)
        covered: set[int] = set()
        for x in range(G.order):
            if x in covered:
                continue
            dc = {G.mul(G.mul(u, x), h) for u in U for h in H.members}
            covered |= dc
            conj = {G.mul(G.mul(x, h), G.inverses[x]) for h in H.members}
            inter = frozenset(to_sylow[g] for g in conj & U)
            counts[subgroup_class_index(sylow, s_classes_full, inter)] += 1
        restr.append(counts)
        labels.append(f"G/H{ci + 1}(order {H.order})")
    return PermutationCensus(G, classes, regular, chars, restr, s_reps, labels)


def module_invariants(census: PermutationCensus, rep_G: Representation, rep_U: Representation) -> tuple[list[Cyclotomic], list[int]]:
    """Brauer character on the regular classes and Sylow multiplicities of a module."""
    G, p = census.G, census.G.p
    chars = [character_from_action(rep_G.matrix(g), p, G.orders[g]) for g in census.regular]
    dec = perm_submodule(rep_U, census.sylow_classes, complete=True)
    return chars, dec.multiplicities


def gl_graded_perm_feasibility(
    p: int, n: int, d: int, k: int, census: PermutationCensus | None = None
) -> tuple[FeasibilityResult, PermDecomposition | None]:
    """Could the graded piece K^k be a sum of transitive GL_d(F_p)-permutation modules?

    Checks the Brauer character on the p-regular classes and, when it is a
    non-negative integer vector, the restriction to U(V) computed by the
    trace chain.  Infeasible means K^k is not a permutation module.
    """
    from .algebra import AlgebraContext, build_graded_action
    from .groups import preset_group, uv_class_presets

    if census is None:
        G = preset_group(p, d, "GL")
        U = preset_group(p, d, "UV")
        census = permutation_census(G, U, uv_class_presets(U) if d == 3 else None)
    G = census.G
    ctx = AlgebraContext(p, n, d)
    chars = []
    for g in census.regular:
        m = build_graded_action(ctx, [G.elements[g]], k, "K").matrices[0]
        chars.append(character_from_action(m, p, G.orders[g]))
    bad = character_obstruction(chars)
    if bad:
        return FeasibilityResult(False, bad), None
    U = preset_group(p, d, "UV")
    act = build_graded_action(ctx, U.gens, k, "K")
    dec = perm_submodule(Representation(U, act.matrices), census.sylow_classes, complete=True)
    if not dec.is_permutation_module:
        return FeasibilityResult(False, "not even a permutation module for U(V)"), dec
    return census.solve(chars, dec.multiplicities), dec
