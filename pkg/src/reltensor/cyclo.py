"""Exact cyclotomic numbers.

Character values of finite groups live in Q(zeta_m) for m the exponent
of the group.  An element is stored as a Fraction vector over the power
basis 1, z, ..., z^(phi(m)-1) of Q[z] modulo the m-th cyclotomic
polynomial.  Arithmetic between elements of different conductors lifts
both to the least common multiple.

Values that happen to be rational should be carried as plain Fractions
wherever possible; ``Cyclo.reduced`` hands back a Fraction in that case
and the character-table code uses it to keep tables mostly rational.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence, Union

from .polynomial import MPoly

Scalar = Union[int, Fraction]


def _int_poly_div(num: Sequence[int], den: Sequence[int]):
    """Exact division of integer polynomials in ascending coefficients."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        coeff = num[shift + len(den) - 1]
        if coeff % den[-1]:
            raise ValueError("division is not exact")
        q = coeff // den[-1]
        out[shift] = q
        for i, d in enumerate(den):
            num[shift + i] -= q * d
    if any(num):
        raise ValueError("division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int):
    """Ascending integer coefficients of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return (-1, 1)
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _int_poly_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _reduce(m: int, raw: dict) -> tuple:
    """Reduce a sparse power->coefficient map modulo the m-th cyclotomic."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    dense = [Fraction(0)] * m if m > 1 else [Fraction(0)]
    for e, c in raw.items():
        dense[e % m] += c
    for e in range(len(dense) - 1, deg - 1, -1):
        c = dense[e]
        if c == 0:
            continue
        dense[e] = Fraction(0)
        for i in range(deg):
            dense[e - deg + i] -= c * phi[i]
    return tuple(dense[:deg])


class Cyclo:
    """An element of Q(zeta_m) in the power basis."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Sequence[Scalar]):
        deg = len(cyclotomic_polynomial(m)) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = list(_reduce(m, {e: c for e, c in enumerate(cs)}))
        cs += [Fraction(0)] * (deg - len(cs))
        self.m = m
        self.coeffs = tuple(cs)

    @classmethod
    def root(cls, m: int, k: int = 1) -> "Cyclo":
        """zeta_m^k."""
        return cls(m, _reduce(m, {k % m: Fraction(1)}))

    @classmethod
    def from_scalar(cls, x: Scalar, m: int = 1) -> "Cyclo":
        return cls(m, [Fraction(x)])

    # ---------------- structure ----------------

    def lift(self, M: int) -> "Cyclo":
        if M % self.m:
            raise ValueError("can only lift to a multiple of the conductor")
        step = M // self.m
        return Cyclo(M, _reduce(M, {e * step: c for e, c in enumerate(self.coeffs)}))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def reduced(self) -> Union[Fraction, "Cyclo"]:
        """A plain Fraction when the value is rational, else self."""
        if self.is_rational():
            return self.coeffs[0] if self.coeffs else Fraction(0)
        return self

    def galois(self, k: int) -> "Cyclo":
        """Apply the automorphism zeta -> zeta^k; k must be prime to m."""
        if gcd(k, self.m) != 1:
            raise ValueError("k must be coprime to the conductor")
        return Cyclo(self.m, _reduce(self.m, {e * k: c for e, c in enumerate(self.coeffs)}))

    def conjugate(self) -> "Cyclo":
        return self.galois(self.m - 1) if self.m > 1 else self

    # ---------------- arithmetic ----------------

    @staticmethod
    def _pair(a: "Cyclo", b) -> tuple:
        if isinstance(b, (int, Fraction)):
            b = Cyclo.from_scalar(b, 1)
        elif not isinstance(b, Cyclo):
            return None, None
        M = a.m * b.m // gcd(a.m, b.m)
        return a.lift(M), b.lift(M)

    def __add__(self, other):
        a, b = self._pair(self, other)
        if a is None:
            return NotImplemented
        return Cyclo(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        a, b = self._pair(self, other)
        if a is None:
            return NotImplemented
        return Cyclo(a.m, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        a, b = self._pair(self, other)
        if a is None:
            return NotImplemented
        raw: dict = {}
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y == 0:
                    continue
                raw[i + j] = raw.get(i + j, Fraction(0)) + x * y
        return Cyclo(a.m, _reduce(a.m, raw))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.reduced() == other
        if isinstance(other, Cyclo):
            a, b = self._pair(self, other)
            return a.coeffs == b.coeffs
        return NotImplemented

    # equal values can have different conductors, so no reliable hash;
    # rational values should travel as Fraction (see ``reduced``)
    __hash__ = None

    def __bool__(self):
        return any(self.coeffs)

    # ---------------- display ----------------

    def _as_mpoly(self) -> MPoly:
        name = f"z{self.m}"
        return MPoly((name,), {(e,): c for e, c in enumerate(self.coeffs) if c})

    def __str__(self):
        return str(self._as_mpoly())

    def __repr__(self):
        return f"Cyclo({self.m}, {str(self)!r})"
