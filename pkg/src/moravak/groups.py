"""Finite matrix groups over F_p: closure, subgroup lattices, classes, presets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Sequence

import numpy as np

from .fields import as_fp, check_prime, identity, matmul_mod, rank


class GroupBoundError(ValueError):
    """Raised when a group is larger than an enumeration bound allows."""


def _key(m: np.ndarray) -> bytes:
    return np.ascontiguousarray(m, dtype=np.int64).tobytes()


class GroupData:
    """A finite group of d x d matrices over F_p, closed from generators.

    ``elements[0]`` is the identity.  Every other element satisfies
    ``elements[i] == gens[via[i]] @ elements[parent[i]]``, which lets a
    representation be evaluated on all elements with one product each.
    """

    def __init__(self, gens: Sequence, p: int, d: int | None = None, max_order: int | None = None):
        check_prime(p)
        self.p = p
        gens = [as_fp(g, p) for g in gens]
        if d is None:
            if not gens:
                raise ValueError("dimension needed for an empty generator list")
            d = gens[0].shape[0]
        self.d = d
        for g in gens:
            if g.shape != (d, d) or rank(g, p) < d:
                raise ValueError("generators must be invertible d x d matrices")
        self.gens = gens
        eye = identity(d)
        self.elements: list[np.ndarray] = [eye]
        self.index: dict[bytes, int] = {_key(eye): 0}
        self.parent = [-1]
        self.via = [-1]
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for s, g in enumerate(gens):
                h = matmul_mod(g, self.elements[i], p)
                k = _key(h)
                if k not in self.index:
                    self.index[k] = len(self.elements)
                    self.elements.append(h)
                    self.parent.append(i)
                    self.via.append(s)
                    queue.append(len(self.elements) - 1)
                    if max_order is not None and len(self.elements) > max_order:
                        raise GroupBoundError(f"group order exceeds {max_order}")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def lookup(self, m) -> int:
        return self.index[_key(as_fp(m, self.p))]

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        return self.lookup(matmul_mod(self.elements[i], self.elements[j], self.p))

    _table = None

    def build_table(self, bound: int = 2000) -> np.ndarray:
        """Full multiplication table (only for small groups)."""
        if self._table is None:
            if self.order > bound:
                raise GroupBoundError(f"group order {self.order} exceeds table bound {bound}")
            n = self.order
            tab = np.zeros((n, n), dtype=np.int64)
            for i in range(n):
                for j in range(n):
                    tab[i, j] = self.lookup(matmul_mod(self.elements[i], self.elements[j], self.p))
            self._table = tab
        return self._table

    @cached_property
    def inverses(self) -> list[int]:
        inv = [0] * self.order
        for i, m in enumerate(self.elements):
            inv[i] = self.lookup(matrix_inverse(m, self.p))
        return inv

    def element_order(self, i: int) -> int:
        m = self.elements[i]
        x, k = m, 1
        eye = identity(self.d)
        while not np.array_equal(x, eye):
            x = matmul_mod(x, m, self.p)
            k += 1
        return k

    @cached_property
    def orders(self) -> list[int]:
        return [self.element_order(i) for i in range(self.order)]

    def conjugate(self, g: int, h: int) -> int:
        """Index of g h g^-1."""
        return self.mul(self.mul(g, h), self.inverses[g])

    def conjugacy_class(self, i: int) -> list[int]:
        seen = {i}
        queue = deque([i])
        gens = [self.lookup(g) for g in self.gens]
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.conjugate(s, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def is_p_group(self) -> bool:
        n = self.order
        while n % self.p == 0:
            n //= self.p
        return n == 1


def matrix_inverse(m: np.ndarray, p: int) -> np.ndarray:
    from .fields import rref

    n = m.shape[0]
    red, piv = rref(np.hstack([as_fp(m, p), identity(n)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return red[:, n:]


def close(generators: Sequence, p: int, d: int | None = None, max_order: int | None = None) -> GroupData:
    return GroupData(generators, p, d, max_order)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    members: frozenset[int]
    gens: tuple[int, ...]
    label: str | None = None

    @property
    def order(self) -> int:
        return len(self.members)


def subgroup_closure(G: GroupData, gens: Sequence[int]) -> frozenset[int]:
    members = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.mul(s, x)
            if y not in members:
                members.add(y)
                queue.append(y)
    return frozenset(members)


def subgroup_from_matrices(G: GroupData, mats: Sequence, label: str | None = None) -> Subgroup:
    gens = tuple(G.lookup(m) for m in mats)
    return Subgroup(subgroup_closure(G, gens), gens, label)


def subgroup_lattice(G: GroupData, bound: int = 200) -> list[Subgroup]:
    """Every subgroup exactly once, by extending known subgroups one element at a time."""
    if G.order > bound:
        raise GroupBoundError(f"group order {G.order} exceeds lattice bound {bound}")
    G.build_table(max(bound, G.order))
    trivial = Subgroup(frozenset({0}), ())
    found = {trivial.members: trivial}
    queue = deque([trivial])
    while queue:
        H = queue.popleft()
        tried: set[int] = set(H.members)
        for x in range(G.order):
            if x in tried:
                continue
            gens = H.gens + (x,)
            mem = subgroup_closure(G, gens)
            # <H, y> = <H, x> for y in the double coset HxH or a generating power of x
            for a in H.members:
                ax = G.mul(a, x)
                tried.update(G.mul(ax, b) for b in H.members)
            o = G.orders[x]
            y = x
            for k in range(2, o):
                y = G.mul(y, x)
                if gcd(k, o) == 1:
                    tried.add(y)
            if mem not in found:
                S = Subgroup(mem, gens)
                found[mem] = S
                queue.append(S)
    return sorted(found.values(), key=lambda S: (S.order, sorted(S.members)))


def conjugates(G: GroupData, H: Subgroup) -> set[frozenset[int]]:
    out = set()
    for g in range(G.order):
        out.add(frozenset(G.conjugate(g, h) for h in H.members))
    return out


def conjugacy_classes_of_subgroups(
    G: GroupData,
    lattice: Sequence[Subgroup] | None = None,
    preset: Sequence[Subgroup] | None = None,
) -> list[list[Subgroup]]:
    """Subgroup classes sorted by order, then preset position, then smallest member set.

    When a preset list is given, its subgroup heads the class it lies in.
    """
    if lattice is None:
        lattice = subgroup_lattice(G)
    by_members = {S.members: S for S in lattice}
    seen: set[frozenset[int]] = set()
    classes = []
    for S in lattice:
        if S.members in seen:
            continue
        conj = conjugates(G, S)
        seen |= conj
        members = sorted((by_members[c] for c in conj), key=lambda T: sorted(T.members))
        classes.append(members)
    preset_pos = {}
    if preset:
        for pos, P in enumerate(preset):
            for ci, cls in enumerate(classes):
                if any(T.members == P.members for T in cls):
                    if ci in preset_pos:
                        raise ValueError("two preset subgroups are conjugate")
                    preset_pos[ci] = pos
                    rest = [T for T in cls if T.members != P.members]
                    classes[ci] = [P] + rest
                    break
            else:
                raise ValueError(f"preset subgroup {P.label} not found in lattice")
    order = sorted(
        range(len(classes)),
        key=lambda ci: (
            classes[ci][0].order,
            preset_pos.get(ci, len(preset or ())),
            sorted(classes[ci][0].members),
        ),
    )
    return [classes[ci] for ci in order]


def transversal(G: GroupData, H: Subgroup) -> list[int]:
    """One representative per left coset gH, scanning elements in index order."""
    if 0 not in H.members or G.order % H.order:
        raise ValueError("not a subgroup")
    covered: set[int] = set()
    reps = []
    for g in range(G.order):
        if g in covered:
            continue
        reps.append(g)
        coset = {G.mul(g, h) for h in H.members}
        if len(coset) != H.order or coset & covered:
            raise ValueError("not a subgroup")
        covered |= coset
    return reps


def p_regular_classes(G: GroupData, p: int, bound: int = 10**4) -> list[int]:
    """One representative (smallest index) per conjugacy class of p-regular elements."""
    if G.order > bound:
        raise GroupBoundError(f"group order {G.order} exceeds bound {bound}")
    seen: set[int] = set()
    reps = []
    for i in range(G.order):
        if i in seen or G.orders[i] % p == 0:
            continue
        cls = G.conjugacy_class(i)
        seen.update(cls)
        reps.append(i)
    return sorted(reps, key=lambda i: (G.orders[i], i))


# ---------------------------------------------------------------------------
# presets


def elementary(d: int, i: int, j: int, a: int = 1) -> np.ndarray:
    m = identity(d)
    m[i, j] = a
    return m


def primitive_root(p: int) -> int:
    for a in range(1, p):
        if all(pow(a, (p - 1) // r, p) != 1 for r in range(2, p) if (p - 1) % r == 0 and _isprime(r)):
            return a
    raise AssertionError


def _isprime(r: int) -> bool:
    return r > 1 and all(r % i for i in range(2, int(r**0.5) + 1))


def companion(poly: Sequence[int], p: int) -> np.ndarray:
    """Companion matrix of a monic polynomial given low degree first."""
    r = len(poly) - 1
    m = np.zeros((r, r), dtype=np.int64)
    for i in range(r - 1):
        m[i + 1, i] = 1
    for i in range(r):
        m[i, r - 1] = (-poly[i]) % p
    return m


def smallest_primitive_polynomial(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest (low degree first) primitive monic polynomial."""
    from itertools import product

    from .fields import is_irreducible

    for coeffs in product(range(p), repeat=r):
        f = tuple(coeffs) + (1,)
        if not is_irreducible(f, p):
            continue
        c = companion(f, p)
        if GroupData([c], p).order == p**r - 1:
            return f
    raise AssertionError


def uv_generators(p: int, d: int = 3) -> list[np.ndarray]:
    return [elementary(d, i, i + 1) for i in range(d - 1)]


def _inv(m, p):
    return matrix_inverse(as_fp(m, p), p)


def preset_matrices(p: int, d: int, label: str) -> list[np.ndarray]:
    """Generators for the named preset subgroup of GL_d(F_p)."""
    check_prime(p)
    mm = lambda a, b: matmul_mod(a, b, p)  # noqa: E731
    if label in ("A", "B", "C", "AB", "AC", "BC") or label.startswith("ABC:"):
        if d != 3:
            raise ValueError(f"preset {label} needs d = 3")
        A, B = elementary(3, 0, 1), elementary(3, 1, 2)
        C = mm(mm(A, B), mm(_inv(A, p), _inv(B, p)))
        named = {"A": [A], "B": [B], "C": [C], "AB": [mm(A, B)], "AC": [A, C], "BC": [B, C]}
        if label.startswith("ABC:"):
            j = int(label.split(":", 1)[1])
            Bj = np.linalg.matrix_power(B, j) % p
            return [mm(A, Bj), C]
        return named[label]
    if label == "UV":
        return uv_generators(p, d)
    if label == "D":
        w = primitive_root(p)
        if p == 2:
            return []
        return [elementary(d, i, i, w) for i in range(d)]
    if label == "gq":
        if p != 2:
            raise ValueError("gq is defined for p = 2")
        return [companion(smallest_primitive_polynomial(2, d), 2)]
    if label == "gprime":
        if p != 2:
            raise ValueError("gprime is defined for p = 2")
        m = identity(d)
        for b in range(d // 2):
            m[2 * b:2 * b + 2, 2 * b:2 * b + 2] = [[0, 1], [1, 1]]
        return [m]
    if label == "SL2F3":
        if (p, d) != (3, 2):
            raise ValueError("SL2F3 needs p = 3, d = 2")
        return [np.array([[1, 1], [0, 1]]), np.array([[1, 0], [1, 1]])]
    if label == "GL2F2":
        if (p, d) != (2, 2):
            raise ValueError("GL2F2 needs p = 2, d = 2")
        return [np.array([[1, 1], [0, 1]]), np.array([[0, 1], [1, 0]])]
    if label == "GL":
        gens = [elementary(d, i, j) for i in range(d) for j in range(d) if i != j]
        if p > 2:
            gens.append(elementary(d, 0, 0, primitive_root(p)))
        return gens or [identity(d)]
    if label == "SL":
        return [elementary(d, i, j) for i in range(d) for j in range(d) if i != j] or [identity(d)]
    if label == "1":
        return []
    raise ValueError(f"unknown preset label {label!r}")


def preset_group(p: int, d: int, label: str, max_order: int | None = None) -> GroupData:
    return GroupData(preset_matrices(p, d, label), p, d, max_order)


def uv_class_presets(G: GroupData) -> list[Subgroup]:
    """The subgroup-class list of U(V), d = 3, in the tabulated order."""
    p = G.p
    labels = ["1", "A"]
    if p == 2:
        labels += ["B", "C", "AB", "AC", "BC", "UV"]
    else:
        labels += [f"AB^{j}" for j in range(1, p)] + ["B", "C", "AC"]
        labels += [f"AB^{j},C" for j in range(1, p)] + ["BC", "UV"]
    out = []
    for lab in labels:
        if lab == "1":
            mats = []
        elif lab.startswith("AB^"):
            j = lab[3:].split(",")[0]
            mats = preset_matrices(p, 3, f"ABC:{j}")
            if not lab.endswith(",C"):
                mats = mats[:1]
            lab = f"<AB^{j},C>" if lab.endswith(",C") else f"<AB^{j}>"
        else:
            mats = preset_matrices(p, 3, lab)
            lab = {"UV": "U(V)", "AC": "<A,C>", "BC": "<B,C>"}.get(lab, f"<{lab}>")
        out.append(subgroup_from_matrices(G, mats, lab))
    return out


def h_stabilizer(G: GroupData, W: Sequence[Sequence[int]]) -> Subgroup:
    """H(W) = {g : v g - v in W for all v}, for W spanned by the given row vectors."""
    from .fields import Echelon

    p, d = G.p, G.d
    span = Echelon(d, p)
    if len(W):
        span.add(np.array(W))
    eye = identity(d)
    members = [i for i, g in enumerate(G.elements) if span.contains((g - eye) % p)]
    return Subgroup(frozenset(members), tuple(members), f"H({span.dim})")
