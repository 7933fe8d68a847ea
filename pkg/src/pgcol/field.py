"""Small finite fields GF(q) for q in {2, 3, 4, 5, 7}.

Elements are the integers ``0..q-1``. For prime q this is arithmetic mod q;
for q = 4 an element is a polynomial over GF(2) packed into two bits
(bit 0 = constant term, bit 1 = coefficient of x), reduced modulo x^2 + x + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import UnsupportedField

SUPPORTED_Q = (2, 3, 4, 5, 7)

_GF4_MODULUS = 0b111  # x^2 + x + 1


def _gf4_mul(a: int, b: int) -> int:
    prod = 0
    for bit in range(2):
        if (b >> bit) & 1:
            prod ^= a << bit
    if prod & 0b100:
        prod ^= _GF4_MODULUS
    return prod


@dataclass(frozen=True)
class FieldSpec:
    q: int
    add: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    mul: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    neg: tuple[int, ...] = field(repr=False, compare=False)
    inv: tuple[int, ...] = field(repr=False, compare=False)  # inv[0] is 0 by convention

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]


@lru_cache(maxsize=None)
def get_field(q: int) -> FieldSpec:
    if q not in SUPPORTED_Q:
        raise UnsupportedField(f"q={q} is not supported (choose from {SUPPORTED_Q})")
    if q == 4:
        add = tuple(tuple(a ^ b for b in range(4)) for a in range(4))
        mul = tuple(tuple(_gf4_mul(a, b) for b in range(4)) for a in range(4))
    else:
        add = tuple(tuple((a + b) % q for b in range(q)) for a in range(q))
        mul = tuple(tuple((a * b) % q for b in range(q)) for a in range(q))
    neg = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
    inv = (0,) + tuple(next(b for b in range(1, q) if mul[a][b] == 1) for a in range(1, q))
    return FieldSpec(q, add, mul, neg, inv)
