"""Arithmetic in the prime field F_q for odd primes q.

Field elements are plain ints in [0, q); a PrimeField instance carries the
modulus, the canonical primitive root (smallest positive) and the discrete
log table that pins down the multiplicative character convention.
"""

from __future__ import annotations

from .errors import DomainError

MAX_Q = 1 << 16


def _factorize(m: int) -> dict[int, int]:
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


def is_odd_prime(q: int) -> bool:
    if q < 3 or q % 2 == 0:
        return False
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def smallest_primitive_root(q: int) -> int:
    primes = list(_factorize(q - 1))
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in primes):
            return g
    raise DomainError(f"no primitive root mod {q}")


class PrimeField:
    """F_q with q an odd prime, 3 <= q < 2**16."""

    __slots__ = ("q", "g0", "_dlog", "_inv")

    def __init__(self, q: int):
        if not isinstance(q, int) or not is_odd_prime(q) or q >= MAX_Q:
            raise DomainError(f"q must be an odd prime with 3 <= q < 2**16, got {q!r}")
        self.q = q
        self.g0 = smallest_primitive_root(q)
        dlog = [-1] * q
        acc = 1
        for k in range(q - 1):
            dlog[acc] = k
            acc = acc * self.g0 % q
        self._dlog = tuple(dlog)
        self._inv = (0,) + tuple(pow(a, q - 2, q) for a in range(1, q))

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        return -a % self.q

    def mul(self, a: int, b: int) -> int:
        return a * b % self.q

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise DomainError("division by zero in F_q")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.q

    def arith(self, a: int, b: int, op: str) -> int:
        if op == "add":
            return self.add(a, b)
        if op == "sub":
            return self.sub(a, b)
        if op == "mul":
            return self.mul(a, b)
        if op == "div":
            return self.div(a, b)
        raise DomainError(f"unknown field operation {op!r}")

    def dlog(self, a: int) -> int:
        """Exponent k with g0**k == a; raises on a == 0."""
        a %= self.q
        if a == 0:
            raise DomainError("dlog of zero")
        return self._dlog[a]


def additive_char_exponent(t: int, q: int) -> int:
    """Exponent of the fixed additive character: t maps to zeta_q**t."""
    return t % q


def mult_char_exponent(field: PrimeField, h: int, e: int) -> int:
    """Exponent of zeta_{q-1} for the multiplicative character g0**k -> zeta_{q-1}**(e*k)."""
    if h % field.q == 0:
        raise DomainError("multiplicative character undefined at zero")
    return e * field.dlog(h) % (field.q - 1)
