"""Finite fields GF(p^e) with table-driven arithmetic.

Elements are the integers ``0..q-1``; element ``a`` stands for the polynomial
whose coefficients are the base-p digits of ``a`` (least significant digit is
the constant term). The modulus is the first monic irreducible polynomial of
degree e when the lower coefficients are read as a base-p integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .core import factorize, is_prime

MAX_ORDER = 512


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo monic m; coefficient lists are low-degree first."""
    a = a[:]
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - dm
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return a


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(coeffs) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            div = list(low) + [1]
            rem = _poly_mod(coeffs, div, p)
            if not any(rem):
                return False
    return True


def first_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Coefficients (low degree first, monic) of the first irreducible of degree e."""
    if e == 1:
        return (0, 1)
    for val in range(p ** e):
        low = [(val // p ** i) % p for i in range(e)]
        coeffs = low + [1]
        if coeffs[0] == 0:
            continue
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class PrimePowerField:
    p: int
    e: int
    modulus: tuple[int, ...]
    add_table: np.ndarray = field(repr=False, compare=False)
    mul_table: np.ndarray = field(repr=False, compare=False)
    inv_table: np.ndarray = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.e

    @property
    def order(self) -> int:
        return self.q

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def neg(self, a: int) -> int:
        return int(np.flatnonzero(self.add_table[a] == 0)[0])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        out = 1
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def eval_poly(self, coeffs, x: int) -> int:
        """Horner evaluation; coeffs are field elements, low degree first."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})"


def field_make(p: int, e: int = 1) -> PrimePowerField:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("exponent must be >= 1")
    q = p ** e
    if q > MAX_ORDER:
        raise ValueError(f"field order {q} above the table limit {MAX_ORDER}")
    mod = first_irreducible(p, e)
    digits = np.array([[(a // p ** i) % p for i in range(e)] for a in range(q)], dtype=np.int64)
    place = p ** np.arange(e, dtype=np.int64)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ place
    # multiplication: schoolbook product then reduction, once per pair
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            prod = [0] * (2 * e - 1)
            for i in range(e):
                if digits[a, i]:
                    for j in range(e):
                        prod[i + j] += digits[a, i] * digits[b, j]
            rem = _poly_mod([c % p for c in prod], list(mod), p) if e > 1 else [prod[0] % p]
            rem = rem + [0] * (e - len(rem))
            val = sum(int(c) * p ** i for i, c in enumerate(rem))
            mul[a, b] = mul[b, a] = val
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        hits = np.flatnonzero(mul[a] == 1)
        if hits.size != 1:
            raise AssertionError(f"element {a} of GF({q}) has no unique inverse")
        inv[a] = hits[0]
    for t in (add, mul, inv):
        t.setflags(write=False)
    return PrimePowerField(p, e, mod, add, mul, inv)


def field_of_order(q: int) -> PrimePowerField:
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, e = fac[0]
    return field_make(p, e)
