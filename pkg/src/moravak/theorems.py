"""Machine checks of the structural claims, one function per claim.

Each check returns a list of :class:`Verdict` lines; a claim holds on the
checked range when every line passes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraContext, build_graded_action, piece_matrices
from .characters import (
    character_via_eq31,
    gaussian_binomial,
    hom_permutation,
)
from .decompose import (
    GL2F2Report,
    Representation,
    class_representatives,
    gl2f2_decompose,
    gl2f2_permutation_census,
    gl_graded_perm_feasibility,
    gset_representation,
    hom_module_gl2f2,
    is_permutation_module,
    perm_submodule,
    permutation_census,
    permutation_matrix,
    sl2f3_decompose,
)
from .fields import fixed_space
from .groups import GroupData, Subgroup, h_stabilizer, preset_group, preset_matrices, uv_class_presets


@dataclass
class Verdict:
    claim: str
    instance: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{self.claim}\t{self.instance}\t{'pass' if self.ok else 'FAIL'}\t{self.detail}"


def diagonal_fixed_count(p: int, n: int, d: int, k: int) -> int:
    """Grade-k monomials whose exponents are all divisible by p - 1."""
    ctx = AlgebraContext(p, n, d)
    t = ctx.tables
    ex = t.exps[t.members[k % ctx.grade_modulus]]
    return int(((ex % (p - 1)) == 0).all(axis=1).sum())


def check_1_1a(ps=(3, 5), n_max: int = 2, d_max: int = 3) -> list[Verdict]:
    """Diagonal matrices fix nothing in pieces with (p - 1) not dividing k."""
    out = []
    for p in ps:
        for n in range(1, n_max + 1):
            for d in range(1, d_max + 1):
                ctx = AlgebraContext(p, n, d)
                D = preset_matrices(p, d, "D")
                empty = []
                for k in range(ctx.grade_modulus):
                    mats = [piece_matrices(ctx, g, "K", [k])[k] for g in D]
                    dim = fixed_space(mats, p).shape[0]
                    expect = diagonal_fixed_count(p, n, d, k)
                    ok = dim == expect and (k % (p - 1) == 0 or dim == 0)
                    if dim == 0:
                        empty.append(k)
                    if not ok:
                        out.append(Verdict("1.1a", f"p={p} n={n} d={d} k={k}", False, f"fixed dim {dim}, expected {expect}"))
                ok = bool(empty)
                out.append(Verdict("1.1a", f"p={p} n={n} d={d}", ok,
                                   f"no diagonal-fixed vectors in grades {empty}" if ok else "every grade has fixed vectors"))
    return out


def _smallest_prime_factor(n: int) -> int:
    f = 2
    while n % f:
        f += 1
    return f


def obstruction_element(n: int, d: int) -> tuple[np.ndarray, int, str]:
    """The 2-regular element and grade giving a non-permutation character for p = 2."""
    q = _smallest_prime_factor(n)
    if q > 2:
        gq = preset_matrices(2, q, "gq")[0]
        g = np.eye(d, dtype=np.int64)
        g[:q, :q] = gq
        return g, 1, f"g_{q} x I_{d - q}"
    return preset_matrices(2, d, "gprime")[0], 1, "g'"


def check_1_1c(ns=(2, 3, 4, 6), ds=(4, 5)) -> list[Verdict]:
    out = []
    for n in ns:
        for d in ds:
            if d < _smallest_prime_factor(n):
                continue
            g, k, name = obstruction_element(n, d)
            val = character_via_eq31(2, n, d, k, g)
            bad = not val.is_nonnegative_integer()
            out.append(Verdict("1.1c", f"n={n} d={d}", bad, f"character of L^{k} at {name} = {val}"))
    return out


def check_1_1d(ns=(2, 3, 4)) -> list[Verdict]:
    """Search every grade for an obstruction to GL_3(F_2)-permutation structure."""
    G = preset_group(2, 3, "GL")
    U = preset_group(2, 3, "UV")
    census = permutation_census(G, U, uv_class_presets(U))
    out = []
    for n in ns:
        witness = None
        for k in range(2**n - 1):
            res, _ = gl_graded_perm_feasibility(2, n, 3, k, census)
            if not res.feasible:
                witness = (k, res.reason)
                break
        ok = witness is not None
        detail = f"grade {witness[0]}: {witness[1]}" if ok else "every grade admits a permutation decomposition"
        out.append(Verdict("1.1d", f"n={n} d=3", ok, detail))
    return out


def check_1_1e(n_max: int = 5) -> list[Verdict]:
    G = preset_group(2, 2, "GL2F2")
    out = []
    for n in range(1, n_max + 1):
        ctx = AlgebraContext(2, n, 2)
        census_ok = True
        for k in range(2**n - 1):
            act = build_graded_action(ctx, G.gens, k, "K")
            if gl2f2_permutation_census(gl2f2_decompose(Representation(G, act.matrices))) is None:
                census_ok = False
        expect = n % 2 == 1
        out.append(Verdict("1.1e", f"n={n}", census_ok == expect,
                           "all grades are permutation modules" if census_ok else "some grade is not a permutation module"))
    return out


def coset_module(G: GroupData, H: Subgroup) -> Representation:
    return gset_representation(G, [H])


def check_1_2b(n_max: int = 4) -> list[Verdict]:
    G = preset_group(2, 2, "GL2F2")
    out = []
    H1 = h_stabilizer(G, [[1, 0]])
    trivial = Subgroup(frozenset({0}), (), "1")
    for name, H, expect in (("GL/H1", H1, GL2F2Report(1, 0, 1)), ("GL/1", trivial, GL2F2Report(0, 1, 2))):
        got = gl2f2_decompose(coset_module(G, H))
        out.append(Verdict("1.2b", f"F_2[{name}]", got == expect, str(got)))
    for n in range(1, n_max + 1):
        ctx = AlgebraContext(2, n, 2)
        total = GL2F2Report(0, 0, 0)
        for k in range(2**n - 1):
            total = total + gl2f2_decompose(Representation(G, build_graded_action(ctx, G.gens, k, "K").matrices))
        hom = hom_module_gl2f2(n)
        out.append(Verdict("1.2b", f"n={n}", total == hom, f"graded sum {total}, Hom module {hom}"))
    return out


def hom_representation(G: GroupData, n: int) -> Representation:
    """F_p[Hom(V, F_p^n)] with g acting by composition."""
    images = [permutation_matrix(hom_permutation(g, G.p, n)) for g in G.gens]
    return Representation(G, images)


def sl2f3_hom_prediction(n: int) -> tuple[int, ...]:
    """Sum of the tabulated SL_2(F_3)-decompositions of the three orbit types."""
    a = gaussian_binomial(n, 1, 3)
    b = gaussian_binomial(n, 2, 3)
    cosets = {"GL/GL": (1, 0, 0, 0, 0, 0, 0), "GL/H1": (1, 0, 0, 0, 1, 0, 1), "GL/1": (0, 0, 2, 0, 0, 4, 6)}
    return tuple(x + a * y + b * z for x, y, z in zip(cosets["GL/GL"], cosets["GL/H1"], cosets["GL/1"]))


def gl2f3_coset_restrictions() -> dict[str, tuple[int, ...]]:
    """SL_2(F_3)-decompositions of F_3[GL/H1] and F_3[GL/1], computed directly."""
    GL = preset_group(3, 2, "GL")
    SLgens = preset_matrices(3, 2, "SL2F3")
    SL = GroupData(SLgens, 3, 2)
    out = {}
    for name, H in (("GL/H1", h_stabilizer(GL, [[1, 0]])), ("GL/1", Subgroup(frozenset({0}), (), "1"))):
        from .decompose import coset_action

        reps, _ = coset_action(GL, H)
        where = {}
        for c, x in enumerate(reps):
            for h in H.members:
                where[GL.mul(x, h)] = c
        images = []
        for g in SLgens:
            gi = GL.lookup(g)
            images.append(permutation_matrix([where[GL.mul(gi, x)] for x in reps]))
        out[name] = sl2f3_decompose(Representation(SL, images)).counts
    return out


def check_1_2c(ns=(1, 2, 3)) -> list[Verdict]:
    G = preset_group(3, 2, "SL2F3")
    out = []
    cos = gl2f3_coset_restrictions()
    out.append(Verdict("1.2c", "F_3[GL/H1]", cos["GL/H1"] == (1, 0, 0, 0, 1, 0, 1), str(cos["GL/H1"])))
    out.append(Verdict("1.2c", "F_3[GL/1]", cos["GL/1"] == (0, 0, 2, 0, 0, 4, 6), str(cos["GL/1"])))
    for n in ns:
        ctx = AlgebraContext(3, n, 2)
        total = [0] * 7
        for k in range(3**n - 1):
            c = sl2f3_decompose(Representation(G, build_graded_action(ctx, G.gens, k, "K").matrices)).counts
            total = [a + b for a, b in zip(total, c)]
        direct = sl2f3_decompose(hom_representation(G, n)).counts
        pred = sl2f3_hom_prediction(n)
        ok = tuple(total) == direct == pred
        out.append(Verdict("1.2c", f"n={n}", ok, f"graded {tuple(total)}, Hom module {direct}, orbit formula {pred}"))
    return out


def check_1_3(include_p5: bool = True) -> list[Verdict]:
    out = []
    cases = [(3, 2)] + ([(5, 2)] if include_p5 else [])
    for p, n in cases:
        U = preset_group(p, 3, "UV")
        classes = class_representatives(U, uv_class_presets(U))
        ctx = AlgebraContext(p, n, 3)
        act = build_graded_action(ctx, U.gens, 1, "K", reduced=True)
        dec = perm_submodule(Representation(U, act.matrices), classes, complete=True)
        out.append(Verdict("1.3", f"p={p} n={n} k=1", not dec.is_permutation_module,
                           f"maximal permutation submodule {dec.dim_M_prime} < {dec.dim_M}"))
    U = preset_group(2, 3, "UV")
    classes = class_representatives(U, uv_class_presets(U))
    for n in (2, 3, 4):
        ctx = AlgebraContext(2, n, 3)
        bad = []
        for k in range(2**n - 1):
            act = build_graded_action(ctx, U.gens, k, "K")
            if not perm_submodule(Representation(U, act.matrices), classes, complete=True).is_permutation_module:
                bad.append(k)
        out.append(Verdict("1.3", f"p=2 n={n}", not bad, "every grade is a U(V)-permutation module" if not bad else f"grades {bad} fail"))
    return out


def check_1_4(ps=(3, 5)) -> list[Verdict]:
    out = []
    for p in ps:
        ctx = AlgebraContext(p, 2, 3)
        for lab in ["AC"] + [f"ABC:{j}" for j in range(1, p)] + ["BC"]:
            H = GroupData(preset_matrices(p, 3, lab), p, 3)
            act = build_graded_action(ctx, H.gens, 1, "K")
            ok, dec = is_permutation_module(Representation(H, act.matrices))
            out.append(Verdict("1.4", f"p={p} H={lab}", not ok, f"{dec.dim_M_prime} < {dec.dim_M}"))
    return out


CHECKS = {
    "1.1a": check_1_1a,
    "1.1c": check_1_1c,
    "1.1d": check_1_1d,
    "1.1e": check_1_1e,
    "1.2b": check_1_2b,
    "1.2c": check_1_2c,
    "1.3": check_1_3,
    "1.4": check_1_4,
}


def run_checks(selector: str = "all") -> list[Verdict]:
    names = list(CHECKS) if selector == "all" else [s.strip() for s in selector.split(",")]
    out = []
    for name in names:
        if name not in CHECKS:
            raise ValueError(f"unknown claim {name!r}; choose from {', '.join(CHECKS)}")
        out.extend(CHECKS[name]())
    return out
