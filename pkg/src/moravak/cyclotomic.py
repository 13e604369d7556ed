"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A value is stored as the remainder of a rational polynomial in zeta_m
modulo the m-th cyclotomic polynomial, so two values of the same order are
equal exactly when their coefficient tuples are.  Mixed-order operands are
embedded into Q(zeta_lcm) first.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import cos, gcd, pi, sin


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_monic(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    dd = len(den) - 1
    if len(num) <= dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for top in range(len(num) - 1, dd - 1, -1):
        c = num[top]
        if c:
            quot[top - dd] = c
            for i in range(dd + 1):
                num[top - dd + i] -= c * den[i]
    return quot, num[:dd]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    den = [1]
    for d in range(1, m):
        if m % d == 0:
            den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    quot, rem = _poly_divmod_monic(num, den)
    assert not any(rem)
    return tuple(quot)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _reduce(coeffs: list, m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    # fold exponents mod m first: zeta^m = 1
    folded = [Fraction(0)] * m
    for i, c in enumerate(coeffs):
        if c:
            folded[i % m] += c
    _, rem = _poly_divmod_monic(folded, list(phi))
    rem = list(rem) + [Fraction(0)] * (deg - len(rem))
    return tuple(Fraction(x) for x in rem)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Cyclotomic:
    """Element of Q(zeta_m) in canonical reduced form."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=(), *, reduced: bool = False):
        self.order = order
        if reduced:
            self.coeffs = tuple(coeffs)
        else:
            self.coeffs = _reduce(list(coeffs), order)

    @classmethod
    def rational(cls, value, order: int = 1) -> "Cyclotomic":
        return cls(order, [Fraction(value)])

    @classmethod
    def from_counts(cls, order: int, counts) -> "Cyclotomic":
        """The sum of ``counts[j] * zeta_order**j``."""
        return cls(order, [Fraction(int(c)) for c in counts])

    def embed(self, order: int) -> "Cyclotomic":
        """Image in Q(zeta_order); ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {order}")
        step = order // self.order
        spread = [Fraction(0)] * (step * max(len(self.coeffs) - 1, 0) + 1)
        for i, c in enumerate(self.coeffs):
            spread[i * step] = c
        return Cyclotomic(order, spread)

    def _common(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other)
        m = _lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    def __add__(self, other) -> "Cyclotomic":
        a, b = self._common(other)
        return Cyclotomic(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)], reduced=True)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.order, [-x for x in self.coeffs], reduced=True)

    def __sub__(self, other) -> "Cyclotomic":
        return self + (-other)

    def __rsub__(self, other) -> "Cyclotomic":
        return (-self) + other

    def __mul__(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self._common(other)
        prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(a.order, prod)

    __rmul__ = __mul__

    def scale(self, r) -> "Cyclotomic":
        r = Fraction(r)
        return Cyclotomic(self.order, [x * r for x in self.coeffs], reduced=True)

    def __truediv__(self, r) -> "Cyclotomic":
        r = Fraction(r)
        if r == 0:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / r)

    def __pow__(self, e: int) -> "Cyclotomic":
        if e < 0:
            raise ValueError("only non-negative powers are supported")
        out = Cyclotomic.rational(1, self.order)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclotomic):
            if isinstance(other, (int, Fraction)):
                other = Cyclotomic.rational(other)
            else:
                return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # rational values hash alike whatever their order
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.minimal().coeffs)

    def minimal(self) -> "Cyclotomic":
        """The same value expressed in the smallest field Q(zeta_d), d | order."""
        for d in range(1, self.order):
            if self.order % d == 0:
                pre = self._preimage(d)
                if pre is not None:
                    return pre
        return self

    def _preimage(self, d: int) -> "Cyclotomic | None":
        # solve self = sum c_i * zeta_d**i over the embedded basis of Q(zeta_d)
        basis = [root_of_unity(d, i).embed(self.order).coeffs for i in range(euler_phi(d))]
        rows = [list(col) + [t] for col, t in zip(zip(*basis), self.coeffs)]
        ncols = len(basis)
        piv_cols = []
        r = 0
        for c in range(ncols):
            pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            piv_cols.append(c)
            r += 1
        if any(row[-1] for row in rows[r:]):
            return None
        sol = [Fraction(0)] * ncols
        for i, c in enumerate(piv_cols):
            sol[c] = rows[i][-1]
        return Cyclotomic(d, sol, reduced=True)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_nonnegative_integer(self) -> bool:
        if not self.is_rational():
            return False
        v = self.rational_value()
        return v.denominator == 1 and v >= 0

    def __complex__(self) -> complex:
        z = complex(cos(2 * pi / self.order), sin(2 * pi / self.order))
        return sum((complex(float(c)) * z**i for i, c in enumerate(self.coeffs)), 0j)

    def decimal(self, digits: int = 6) -> str:
        v = complex(self)
        re, im = round(v.real, digits) + 0.0, round(v.imag, digits) + 0.0
        if im == 0:
            return f"{re:.{digits}f}"
        return f"{re:.{digits}f}{im:+.{digits}f}i"

    def __str__(self) -> str:
        m = self.minimal()
        if m.is_rational():
            return str(m.rational_value())
        terms = []
        for i, c in enumerate(m.coeffs):
            if not c:
                continue
            mono = "1" if i == 0 else ("z" if i == 1 else f"z^{i}")
            terms.append(f"{c}*{mono}" if i else str(c))
        return f"[{m.order}] " + " + ".join(terms)

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"

    def root_exponent(self) -> tuple[int, int]:
        """(m, j) with self == zeta_m**j in lowest terms; raises if not a root of unity."""
        for m in range(1, 2 * self.order + 1):
            if (2 * self.order) % m:
                continue
            for j in range(m):
                if gcd(j, m) == 1 or m == 1:
                    if root_of_unity(m, j) == self:
                        return m, j
        raise ValueError(f"{self} is not a root of unity")


def root_of_unity(m: int, j: int) -> Cyclotomic:
    """zeta_m**j in canonical form."""
    coeffs = [Fraction(0)] * (j % m + 1)
    coeffs[j % m] = Fraction(1)
    return Cyclotomic(m, coeffs)


def zero(order: int = 1) -> Cyclotomic:
    return Cyclotomic.rational(0, order)
