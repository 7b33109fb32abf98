"""Exact arithmetic in cyclotomic fields Q(zeta_M).

Values are stored in the power basis 1, zeta, ..., zeta**(phi(M)-1) with
rational coefficients, reduced modulo the M-th cyclotomic polynomial.
Mixed-order arithmetic lifts both operands to the lcm of their orders.
Equality is exact; floats appear only in to_complex, which is display-only.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Mapping, Union

from .errors import DomainError

Scalar = Union[int, Fraction]


def factorize(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def divisors(m: int) -> list[int]:
    divs = [1]
    for p, e in factorize(m).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(m: int) -> int:
    out = 1
    for p, e in factorize(m).items():
        out *= (p - 1) * p ** (e - 1)
    return out


def _int_poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; division must be exact.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            out[k - dd] = c
            for t, dc in enumerate(den):
                num[k - dd + t] -= c * dc
    if any(num):
        raise AssertionError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, ascending, monic; computed by dividing x**m - 1."""
    if m < 1:
        raise DomainError("order must be >= 1")
    if m == 1:
        return (-1, 1)
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m):
        if d < m:
            poly = _int_poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce_mod_phi(coeffs: list[Fraction], m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    c = list(coeffs)
    if len(c) < deg:
        c += [Fraction(0)] * (deg - len(c))
    for k in range(len(c) - 1, deg - 1, -1):
        lead = c[k]
        if lead:
            for t in range(deg):
                c[k - deg + t] -= lead * phi[t]
        c[k] = Fraction(0)
    return tuple(c[:deg])


class Cyclotomic:
    """An element of Q(zeta_M), canonically reduced."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: tuple[Fraction, ...]):
        # Assumes coeffs already reduced mod Phi_order; use the classmethods.
        if order > 1 and not any(coeffs[1:]):
            order, coeffs = 1, (coeffs[0],)
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def from_poly(cls, order: int, coeffs: Iterable[Scalar]) -> "Cyclotomic":
        cs = [Fraction(c) for c in coeffs]
        return cls(order, _reduce_mod_phi(cs, order))

    @classmethod
    def root(cls, m: int, k: int) -> "Cyclotomic":
        """zeta_m**k in reduced form."""
        if m < 1:
            raise DomainError("order must be >= 1")
        k %= m
        coeffs = [Fraction(0)] * (k + 1)
        coeffs[k] = Fraction(1)
        return cls.from_poly(m, coeffs)

    @classmethod
    def from_rational(cls, r: Scalar) -> "Cyclotomic":
        return cls(1, (Fraction(r),))

    @classmethod
    def zero(cls) -> "Cyclotomic":
        return cls.from_rational(0)

    @classmethod
    def one(cls) -> "Cyclotomic":
        return cls.from_rational(1)

    @classmethod
    def from_root_counts(cls, m: int, counts: Mapping[int, Scalar]) -> "Cyclotomic":
        """Sum of counts[k] * zeta_m**k, reduced once."""
        coeffs = [Fraction(0)] * m
        for k, v in counts.items():
            coeffs[k % m] += Fraction(v)
        return cls.from_poly(m, coeffs)

    def _lift(self, order: int) -> tuple[Fraction, ...]:
        if order == self.order:
            return self.coeffs
        step = order // self.order
        coeffs = [Fraction(0)] * order
        for k, c in enumerate(self.coeffs):
            coeffs[k * step] += c
        return _reduce_mod_phi(coeffs, order)

    @staticmethod
    def _coerce(value: "Cyclotomic | Scalar") -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction)):
            return Cyclotomic.from_rational(value)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: "Cyclotomic | Scalar") -> "Cyclotomic":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        m = lcm(self.order, other.order)
        a, b = self._lift(m), other._lift(m)
        return Cyclotomic(m, tuple(x + y for x, y in zip(a, b)))

    def __radd__(self, other: Scalar) -> "Cyclotomic":
        return self + other

    def __sub__(self, other: "Cyclotomic | Scalar") -> "Cyclotomic":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Cyclotomic":
        return (-self) + other

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Cyclotomic | Scalar") -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyclotomic(self.order, tuple(c * f for c in self.coeffs))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        m = lcm(self.order, other.order)
        a, b = self._lift(m), other._lift(m)
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(m, _reduce_mod_phi(prod, m))

    def __rmul__(self, other: Scalar) -> "Cyclotomic":
        return self * other

    def __truediv__(self, other: Scalar) -> "Cyclotomic":
        if not isinstance(other, (int, Fraction)):
            raise DomainError("division only by rational scalars")
        f = Fraction(other)
        if f == 0:
            raise DomainError("division by zero")
        return self * (1 / f)

    def __pow__(self, e: int) -> "Cyclotomic":
        if e < 0:
            raise DomainError("negative powers not supported")
        out = Cyclotomic.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation: zeta_M -> zeta_M**(M-1), ring-homomorphically."""
        m = self.order
        coeffs = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            coeffs[(m - k) % m] += c
        return Cyclotomic.from_poly(m, coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        m = lcm(self.order, other.order)
        return self._lift(m) == other._lift(m)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return self.order == 1

    def as_rational(self) -> Fraction:
        if self.order != 1:
            raise DomainError("value is not rational")
        return self.coeffs[0]

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        out = 0j
        for k, c in enumerate(self.coeffs):
            if c:
                out += float(c) * z**k
        return out

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "num": [c.numerator for c in self.coeffs],
            "den": [c.denominator for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Cyclotomic":
        coeffs = [Fraction(n, e) for n, e in zip(d["num"], d["den"])]
        return cls.from_poly(d["order"], coeffs)

    def __repr__(self) -> str:
        if self.order == 1:
            return f"Cyclotomic({self.coeffs[0]})"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z{self.order}^{k}" if k else str(c))
        return "Cyclotomic(" + (" + ".join(terms) or "0") + ")"
