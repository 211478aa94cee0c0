"""Arithmetic in the binary fields GF(2^m) for 1 <= m <= 12.

Field elements are plain Python ints in [0, 2^m): bit k of the int is the
coefficient of x^k in the polynomial basis of a fixed irreducible modulus.
One modulus is frozen per degree so that every downstream artifact (unit
enumerations, weight histograms, golden files) is bit-exact reproducible:

    m=1  : x + 1                  m=7  : x^7 + x + 1
    m=2  : x^2 + x + 1            m=8  : x^8 + x^4 + x^3 + x + 1
    m=3  : x^3 + x + 1            m=9  : x^9 + x + 1
    m=4  : x^4 + x + 1            m=10 : x^10 + x^3 + 1
    m=5  : x^5 + x^2 + 1          m=11 : x^11 + x^2 + 1
    m=6  : x^6 + x + 1            m=12 : x^12 + x^3 + 1

For m >= 2 each entry is the lowest-weight irreducible of its degree, ties
broken by smallest integer encoding; for m=1 the modulus x+1 realizes the
prime field directly.  Every entry is re-validated by exhaustive trial
division at construction time.

Multiplication uses log/exp tables over a generator of the multiplicative
group (found by search from the smallest candidate), which keeps the
8-digit enumeration loops elsewhere in this package cheap.  The absolute
trace tr(x) = x + x^2 + ... + x^(2^(m-1)) is precomputed per element.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache

import numpy as np

MAX_DEGREE = 12

#: Frozen modulus per extension degree (bit k = coefficient of x^k).
IRREDUCIBLE_POLY: dict[int, int] = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000000011,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000000001001,
}


def poly_mod_f2(a: int, b: int) -> int:
    """Remainder of the carry-less division of a by b over GF(2)."""
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length() - 1
    while a.bit_length() - 1 >= db and a:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def is_irreducible_f2(p: int, degree: int) -> bool:
    """Exhaustive trial-division irreducibility test over GF(2)."""
    if p.bit_length() - 1 != degree:
        return False
    if degree == 1:
        return True
    for d in range(1, degree // 2 + 1):
        for low in range(1 << d):
            if poly_mod_f2(p, (1 << d) | low) == 0:
                return False
    return True


def poly_str(p: int) -> str:
    """Human-readable form of a GF(2) polynomial, highest degree first."""
    if p == 0:
        return "0"
    terms = []
    for k in range(p.bit_length() - 1, -1, -1):
        if (p >> k) & 1:
            terms.append("x^%d" % k if k > 1 else ("x" if k == 1 else "1"))
    return " + ".join(terms)


def modulus_table_sha256() -> str:
    """Digest of the frozen modulus table, embedded in every report."""
    blob = ";".join("%d:%d" % (m, IRREDUCIBLE_POLY[m]) for m in sorted(IRREDUCIBLE_POLY))
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FieldContext:
    """A concrete model of GF(2^m).

    Immutable after construction; all operations are pure functions of
    their arguments, so one context may be shared freely across workers.
    """

    def __init__(self, m: int, modulus: int | None = None):
        if not 1 <= m <= MAX_DEGREE:
            raise ValueError(f"extension degree m={m} out of supported range 1..{MAX_DEGREE}")
        self.m = m
        self.modulus = IRREDUCIBLE_POLY[m] if modulus is None else modulus
        if not is_irreducible_f2(self.modulus, m):
            raise ValueError(f"modulus {bin(self.modulus)} is not irreducible of degree {m}")
        self.order = 1 << m
        self._group_order = self.order - 1
        self._group_factors = _prime_factors(self._group_order) if self._group_order > 1 else []

        self.generator = self._find_generator()
        self._exp, self._log = self._build_log_tables()
        self._trace = self._build_trace_table()

    # -- construction helpers -------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        """Shift-and-XOR product, independent of the log tables."""
        p = 0
        while b:
            if b & 1:
                p ^= a
            b >>= 1
            a <<= 1
            if a >> self.m & 1:
                a ^= self.modulus
        return p

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        n = self._group_order
        for g in range(1, self.order):
            if self._pow_raw(g, n) != 1:
                continue
            if all(self._pow_raw(g, n // p) != 1 for p in self._group_factors):
                return g
        raise RuntimeError("no generator found; modulus is not irreducible")

    def _build_log_tables(self) -> tuple[list[int], list[int]]:
        n = self._group_order
        exp = [1] * (2 * max(n, 1))
        log = [0] * self.order
        val = 1
        for i in range(n):
            exp[i] = val
            log[val] = i
            val = self._mul_raw(val, self.generator)
        for i in range(n, len(exp)):
            exp[i] = exp[i - n] if n else 1
        return exp, log

    def _build_trace_table(self) -> np.ndarray:
        table = np.zeros(self.order, dtype=np.uint8)
        for a in range(self.order):
            t, x = 0, a
            for _ in range(self.m):
                t ^= x
                x = self._mul_raw(x, x)
            if t not in (0, 1):
                raise RuntimeError("trace fell outside GF(2); modulus table corrupt")
            table[a] = t
        return table

    # -- arithmetic ------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self._exp[self._group_order - self._log[a]]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        if e < 0:
            a, e = self.inv(a), -e
        return self._exp[(self._log[a] * e) % max(self._group_order, 1)]

    def tr(self, a: int) -> int:
        """Absolute trace down to GF(2)."""
        return int(self._trace[a])

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self._group_order
        if n == 0:
            return 1
        o = n
        for p in _prime_factors(n):
            while o % p == 0 and self.pow(a, o // p) == 1:
                o //= p
        return o

    def element_of_order(self, n: int) -> int:
        """The canonical element of multiplicative order exactly n.

        Returns generator^((2^m-1)/n); raises if n does not divide 2^m - 1
        (e.g. order 3 requires even m, order 5 requires 4 | m).
        """
        if n <= 0:
            raise ValueError("order must be positive")
        if n == 1:
            return 1
        if self._group_order % n != 0:
            raise ValueError(
                f"no element of order {n}: {n} does not divide 2^{self.m}-1 = {self._group_order}"
            )
        e = self.pow(self.generator, self._group_order // n)
        if self.multiplicative_order(e) != n:
            raise RuntimeError("order computation inconsistent")
        return e

    # -- bulk helpers ----------------------------------------------------------

    def elements(self) -> range:
        return range(self.order)

    def nonzero_elements(self) -> range:
        return range(1, self.order)

    def trace_table(self) -> np.ndarray:
        """Per-element absolute trace as a uint8 array (read-only view)."""
        view = self._trace.view()
        view.flags.writeable = False
        return view

    def mul_row(self, c: int) -> np.ndarray:
        """The row [c*x for x in GF(2^m)] as an array, for vectorized gathers."""
        row = np.empty(self.order, dtype=np.uint16 if self.m > 8 else np.uint8)
        for x in range(self.order):
            row[x] = self.mul(c, x)
        return row

    def __repr__(self) -> str:  # pragma: no cover
        return f"FieldContext(m={self.m}, modulus={poly_str(self.modulus)}, generator={self.generator})"


@lru_cache(maxsize=None)
def field_context(m: int) -> FieldContext:
    """Shared immutable context for GF(2^m) with the frozen modulus."""
    return FieldContext(m)
