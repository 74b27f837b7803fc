"""Dense univariate polynomials over Fraction or float coefficients."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Number

import numpy as np


class Polynomial:
    """Coefficient list, ``coeffs[i]`` multiplies the i-th power.

    Trailing zeros are trimmed, so the zero polynomial has ``coeffs == ()``
    and degree -1. Coefficients may be ints, Fractions or floats; mixing
    follows ordinary Python numeric promotion.
    """

    __slots__ = ("coeffs",)
    var = "x"

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def one(cls):
        return cls([1])

    @classmethod
    def monomial(cls, power: int, coeff=1):
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, power: int):
        return self.coeffs[power] if 0 <= power < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, Number):
            return type(self)([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return type(self)([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return type(self)([c * other for c in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return type(self)()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return type(self)(out)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, scalar):
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return type(self)([c / scalar for c in self.coeffs])

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; accepts scalars or numpy arrays."""
        if isinstance(x, np.ndarray):
            return np.polyval(np.array([float(c) for c in reversed(self.coeffs)] or [0.0]), x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return type(self)([i * c for i, c in enumerate(self.coeffs)][1:])

    def to_float(self):
        return type(self)([float(c) for c in self.coeffs])

    def __repr__(self):
        terms = [f"{c}*{self.var}^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return f"{type(self).__name__}({' + '.join(terms) or '0'})"


class XPolynomial(Polynomial):
    """Polynomial in the real variable x."""


class OperatorPolynomial(Polynomial):
    """Constant-coefficient differential operator sum_l c_l D^l, D = d/dx.

    These commute, so the algebra is just polynomial arithmetic in D.
    """

    var = "D"

    def conjugate_gaussian(self) -> XPolynomial:
        """The polynomial e^{x^2/2} (sum_l c_l D^l) e^{-x^2/2}.

        Uses e^{x^2/2} D^l e^{-x^2/2} = (-1)^l He_l(x).
        """
        out = XPolynomial()
        for l, c in enumerate(self.coeffs):
            if c != 0:
                out = out + hermite(l) * (c if l % 2 == 0 else -c)
        return out


@lru_cache(maxsize=None)
def hermite(l: int) -> XPolynomial:
    """Probabilists' Hermite polynomial He_l with integer coefficients.

    He_{l+1} = x He_l - l He_{l-1}, He_0 = 1, He_1 = x.
    """
    if l < 0:
        raise ValueError(f"Hermite index must be >= 0, got {l}")
    prev, cur = XPolynomial([1]), XPolynomial([0, 1])
    if l == 0:
        return prev
    x = XPolynomial([0, 1])
    for m in range(1, l):
        prev, cur = cur, x * cur - prev * m
    return cur
