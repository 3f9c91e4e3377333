"""Truncated power series with exact rational coefficients.

A Series of order N stores coefficients of q^0 .. q^N as Fractions.  All
operations truncate at the common order; nothing is ever floated.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import NonIntegralError


class Series:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int]):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", cs)

    # -- constructors ----------------------------------------------------

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls((1,) + (0,) * order)

    @classmethod
    def monomial(cls, power: int, order: int, coeff: Fraction | int = 1) -> "Series":
        if not 0 <= power <= order:
            raise ValueError("monomial power outside truncation order")
        cs = [Fraction(0)] * (order + 1)
        cs[power] = Fraction(coeff)
        return cls(cs)

    # -- inspection -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Fraction:
        return self.coeffs[n]

    def integer_coeffs(self) -> tuple[int, ...]:
        """Coefficients as ints; raises if any is non-integral."""
        out = []
        for n, c in enumerate(self.coeffs):
            if c.denominator != 1:
                raise NonIntegralError(f"coefficient of q^{n} is {c}")
            out.append(c.numerator)
        return tuple(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Series) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return "Series" + repr(tuple(str(c) for c in self.coeffs))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Series") -> None:
        if self.order != other.order:
            raise ValueError("series have different truncation orders")

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        return Series(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "Series") -> "Series":
        self._check(other)
        return Series(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series(c * other for c in self.coeffs)
        self._check(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return Series(out)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        a0 = self.coeffs[0]
        if not a0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(1) / a0
        for k in range(1, n + 1):
            out[k] = -sum(self.coeffs[i] * out[k - i] for i in range(1, k + 1)) / a0
        return Series(out)

    def __pow__(self, exponent: int) -> "Series":
        if not isinstance(exponent, int):
            raise TypeError("series powers must be integers")
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = Series.one(self.order)
        while exponent:
            if exponent & 1:
                result = result * base
            if exponent > 1:
                base = base * base
            exponent >>= 1
        return result

    def substitute_signed(self, sign: int) -> "Series":
        """The substitution q -> sign * q for sign in {+1, -1}."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if sign == 1:
            return self
        return Series(c if n % 2 == 0 else -c for n, c in enumerate(self.coeffs))


def series_pow(s: Series, exponent: int) -> Series:
    return s ** exponent


def macmahon(order: int) -> Series:
    """MacMahon's generating series prod_{k>=1} (1 - q^k)^(-k), truncated."""
    result = Series.one(order)
    for k in range(1, order + 1):
        factor = Series.one(order) - Series.monomial(k, order)
        result = result * factor ** (-k)
    return result


def dt_closed_formula(rank: int, c3: int, order: int) -> Series:
    """The closed invariant series M((-1)^rank q)^(rank * c3)."""
    if rank < 1:
        raise ValueError("rank must be at least 1")
    m = macmahon(order).substitute_signed(-1 if rank % 2 else 1)
    return m ** (rank * c3)
