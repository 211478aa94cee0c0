"""The quintic group ring R_m = GF(2^m)[v]/(v^5 - 1).

A ring element is a 5-tuple (c0, c1, c2, c3, c4) of field elements, the
coefficients of 1, v, v^2, v^3, v^4.  Multiplication is cyclic convolution
(v^5 = 1), so multiplying by v rotates the coefficient vector.

Packed form and canonical order
-------------------------------
An element packs into a 5m-bit integer little-endian by coefficient: bit
i*m+k is bit k of c_i, i.e. c0 occupies the low m bits.  Read as a number
this equals the concatenation c4|c3|c2|c1|c0, so ascending packed value is
the canonical element order used for unit enumeration and codeword
coordinates everywhere in this package (``UNIT_ORDER_VERSION``).  Elements
serialize to JSON as the packed integer in fixed-width hex.

Structure by the residue of m mod 4
-----------------------------------
v^5 - 1 = (v+1) * (1+v+v^2+v^3+v^4) over GF(2), and the quartic factor
splits further once the field contains third or fifth roots of unity:

* m odd          : R_m ~ GF(2^m) x GF(2^4m)                 ("odd")
* m = 2 (mod 4)  : R_m ~ GF(2^m) x GF(2^2m) x GF(2^2m)      ("singly even")
* m = 0 (mod 4)  : R_m ~ GF(2^m)^5, with orthogonal idempotents built
                   from a fifth root of unity                ("doubly even")

An element is a unit iff it is coprime to v^5 - 1; ``is_unit`` computes the
polynomial gcd directly, while ``unit_profile`` evaluates the per-factor
residues, giving an independent criterion and the weight-class pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb

import numpy as np

from .gf2m import FieldContext, field_context

RingElement = tuple[int, int, int, int, int]

#: Identifier of the frozen coordinate/unit enumeration order.
UNIT_ORDER_VERSION = "lex(c4|c3|c2|c1|c0)-ascending-v1"

#: Largest m for which the full 2^(5m) element space is materialized.
MAX_MATERIALIZED_M = 4


class ParityClass(str, Enum):
    """The three splitting patterns of v^5 - 1 over GF(2^m)."""

    ODD = "odd"
    SINGLY_EVEN = "singlyEven"
    DOUBLY_EVEN = "doublyEven"


def parity_class_of(m: int) -> ParityClass:
    if m % 2 == 1:
        return ParityClass.ODD
    if m % 4 == 2:
        return ParityClass.SINGLY_EVEN
    return ParityClass.DOUBLY_EVEN


@dataclass(frozen=True)
class UnitProfile:
    """Per-factor invariants of a ring element.

    ``values`` holds five field elements whose vanishing pattern decides
    both unithood and the Lee-weight class of the associated codeword:

    * odd m: (I, I1, I2, I3, I4) with I = c0+c1+c2+c3+c4 (the residue at
      v=1), I1 = c1+c2+c3+c4, I2 = c0+c1, I3 = c3+c4, I4 = c0+c1+c2+c3;
      (I1..I4) vanish together exactly when the quartic factor divides
      the element.
    * singly even m: (H, r10, r11, r20, r21) where H is the residue at
      v=1 and (rj0, rj1) are the coordinates of the residue modulo the
      two quadratic factors v^2 + w^(3-j) v + 1 (w a cube root of unity).
    * doubly even m: the five components of the idempotent decomposition,
      i.e. the evaluations at the five fifth roots of unity.

    ``component_pattern`` flags which CRT blocks are nonzero: (point,
    quartic) for odd m, (point, quad1, quad2) for singly even, one flag
    per root for doubly even.  ``is_unit`` is true iff every block is
    nonzero, which agrees with the gcd test.
    """

    parity_class: ParityClass
    values: tuple[int, int, int, int, int]
    component_pattern: tuple[bool, ...]
    is_unit: bool

    @property
    def nonzero_components(self) -> int:
        return sum(self.component_pattern)

    @property
    def class_key(self) -> tuple[int, ...]:
        """Key into the family weight classes (see trace_codes.weight_classes)."""
        p = self.component_pattern
        if self.parity_class is ParityClass.ODD:
            return (int(p[0]), int(p[1]))
        if self.parity_class is ParityClass.SINGLY_EVEN:
            return (int(p[0]), int(p[1]) + int(p[2]))
        return (self.nonzero_components,)


@dataclass(frozen=True)
class IdempotentBasis:
    """Orthogonal idempotents eta_0..eta_4 of the fully split case (4 | m).

    eta_t = sum_k eps^(-t*k) v^k with eps the canonical fifth root of
    unity; eta_t evaluates to 1 at v = eps^t and to 0 at the other roots.
    """

    epsilon: int
    etas: tuple[RingElement, RingElement, RingElement, RingElement, RingElement]


class QuinticRing:
    """Arithmetic and structure of R_m for one field context.

    Immutable after construction; unit enumeration is cached.
    """

    def __init__(self, field: FieldContext):
        self.field = field
        self.m = field.m
        self.q = field.order
        self.mask = self.q - 1
        self.size = self.q ** 5
        self.parity_class = parity_class_of(self.m)
        self.zero: RingElement = (0, 0, 0, 0, 0)
        self.one: RingElement = (1, 0, 0, 0, 0)
        self.v: RingElement = (0, 1, 0, 0, 0)
        self._hex_digits = -(-5 * self.m // 4)
        self._units: np.ndarray | None = None
        self._idempotents: IdempotentBasis | None = None
        if self.parity_class is not ParityClass.ODD:
            omega = field.element_of_order(3)
            self._omega = omega
            # Reduction of v^k modulo v^2 + w*v + 1 as (constant, v) pairs,
            # for w = omega^2 (block 1) and w = omega (block 2).
            self._quad_reductions = tuple(
                self._quadratic_reduction_rows(w) for w in (field.mul(omega, omega), omega)
            )
        if self.parity_class is ParityClass.DOUBLY_EVEN:
            self._idempotents = self._build_idempotents()
            eps = self._idempotents.epsilon
            # decompose(a)_t = a(eps^t) = sum_i eps^(t*i) a_i
            self._eval_matrix = tuple(
                tuple(field.pow(eps, (t * i) % 5) for i in range(5)) for t in range(5)
            )

    # -- element representation --------------------------------------------

    def check_element(self, a: RingElement) -> RingElement:
        if len(a) != 5 or any(not 0 <= c < self.q for c in a):
            raise ValueError(f"not a valid element of R_{self.m}: {a!r}")
        return a

    def pack(self, a: RingElement) -> int:
        code = 0
        for i in range(5):
            code |= a[i] << (i * self.m)
        return code

    def unpack(self, code: int) -> RingElement:
        if not 0 <= code < self.size:
            raise ValueError(f"packed code {code} out of range for m={self.m}")
        m, mask = self.m, self.mask
        return (
            code & mask,
            (code >> m) & mask,
            (code >> 2 * m) & mask,
            (code >> 3 * m) & mask,
            (code >> 4 * m) & mask,
        )

    def to_hex(self, a: RingElement) -> str:
        return format(self.pack(a), f"0{self._hex_digits}x")

    def from_hex(self, s: str) -> RingElement:
        return self.unpack(int(s, 16))

    def elements(self):
        """All ring elements in canonical (ascending packed) order."""
        for code in range(self.size):
            yield self.unpack(code)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: RingElement, b: RingElement) -> RingElement:
        return tuple(x ^ y for x, y in zip(a, b))  # type: ignore[return-value]

    def scalar_mul(self, c: int, a: RingElement) -> RingElement:
        mul = self.field.mul
        return tuple(mul(c, x) for x in a)  # type: ignore[return-value]

    def mul(self, a: RingElement, b: RingElement) -> RingElement:
        mul = self.field.mul
        out = [0, 0, 0, 0, 0]
        for i in range(5):
            ai = a[i]
            if ai:
                for j in range(5):
                    if b[j]:
                        out[(i + j) % 5] ^= mul(ai, b[j])
        return tuple(out)  # type: ignore[return-value]

    def trace(self, a: RingElement) -> RingElement:
        """Coefficientwise absolute trace; lands in the m=1 ring."""
        tr = self.field.tr
        return tuple(tr(c) for c in a)  # type: ignore[return-value]

    # -- units ----------------------------------------------------------------

    def is_unit(self, a: RingElement) -> bool:
        """gcd(a(v), v^5 - 1) = 1, by the Euclidean algorithm over GF(2^m)."""
        field = self.field
        A = [1, 0, 0, 0, 0, 1]  # v^5 + 1
        B = [a[0], a[1], a[2], a[3], a[4], 0]
        da, db = 5, _degree(B)
        while db >= 0:
            if da < db:
                A, B = B, A
                da, db = db, da
                continue
            factor = field.mul(A[da], field.inv(B[db]))
            shift = da - db
            for k in range(db + 1):
                if B[k]:
                    A[k + shift] ^= field.mul(factor, B[k])
            da = _degree(A)
            if da < db:
                A, B = B, A
                da, db = db, da
        return da == 0

    def unit_count(self) -> int:
        """|R_m^*| from per-factor multiplicative group orders."""
        n = 1
        for t, mult in self.component_block_orders():
            n *= t ** mult
        return n

    def component_block_orders(self) -> tuple[tuple[int, int], ...]:
        """(|subgroup|, multiplicity) per CRT block, in profile order."""
        q = self.q
        if self.parity_class is ParityClass.ODD:
            return ((q - 1, 1), (q ** 4 - 1, 1))
        if self.parity_class is ParityClass.SINGLY_EVEN:
            return ((q - 1, 1), (q ** 2 - 1, 2))
        return ((q - 1, 5),)

    def units(self) -> np.ndarray:
        """All units as packed codes, ascending (the canonical coordinate order).

        Materializes the full element space; limited to m <= 4.  The mask is
        computed from the per-factor residues; agreement with the gcd-based
        ``is_unit`` is part of the test suite's standing invariants.
        """
        if self._units is None:
            if self.m > MAX_MATERIALIZED_M:
                raise ValueError(
                    f"materialized unit enumeration is limited to m <= {MAX_MATERIALIZED_M}; "
                    "use iter_units() to stream"
                )
            mask = self.unit_mask()
            units = np.nonzero(mask)[0].astype(np.uint32)
            if len(units) != self.unit_count():
                raise RuntimeError(
                    f"unit enumeration produced {len(units)} elements, expected {self.unit_count()}"
                )
            units.flags.writeable = False
            self._units = units
        return self._units

    def iter_units(self):
        """Stream units in canonical order without materializing the space."""
        for code in range(self.size):
            if self.unit_profile(self.unpack(code)).is_unit:
                yield code

    def coefficient_columns(self, codes: np.ndarray | None = None) -> list[np.ndarray]:
        """Coefficient vectors c_i of the given packed codes (default: all)."""
        if codes is None:
            codes = np.arange(self.size, dtype=np.uint32)
        return [((codes >> (i * self.m)) & self.mask).astype(np.uint16) for i in range(5)]

    def unit_mask(self) -> np.ndarray:
        """Boolean mask over all packed codes marking the units (m <= 4)."""
        if self.m > MAX_MATERIALIZED_M:
            raise ValueError(f"unit mask is limited to m <= {MAX_MATERIALIZED_M}")
        cols = self.coefficient_columns()
        point = cols[0] ^ cols[1] ^ cols[2] ^ cols[3] ^ cols[4]
        ok = point != 0
        if self.parity_class is ParityClass.ODD:
            all_equal = (
                (cols[0] == cols[1])
                & (cols[1] == cols[2])
                & (cols[2] == cols[3])
                & (cols[3] == cols[4])
            )
            return ok & ~all_equal
        if self.parity_class is ParityClass.SINGLY_EVEN:
            for block in (0, 1):
                c0, c1 = self._quad_residue_bulk(cols, block)
                ok &= (c0 | c1) != 0
            return ok
        comps = self.components_bulk(None, cols=cols)
        return (comps != 0).all(axis=0)

    # -- parity-class profiles -------------------------------------------------

    def _quadratic_reduction_rows(self, w: int) -> tuple[tuple[int, int], ...]:
        # v^k modulo v^2 + w*v + 1, k = 0..4, as (constant, v) coordinate pairs.
        field = self.field
        rows = [(1, 0), (0, 1)]
        for _ in range(3):
            c, d = rows[-1]
            # v * (c + d v) = d + (c + d w) v   using v^2 = 1 + w v
            rows.append((d, c ^ field.mul(d, w)))
        return tuple(rows)

    def _quad_residue(self, a: RingElement, block: int) -> tuple[int, int]:
        mul = self.field.mul
        rows = self._quad_reductions[block]
        c0 = c1 = 0
        for i in range(5):
            if a[i]:
                c0 ^= mul(rows[i][0], a[i])
                c1 ^= mul(rows[i][1], a[i])
        return c0, c1

    def _quad_residue_bulk(self, cols: list[np.ndarray], block: int) -> tuple[np.ndarray, np.ndarray]:
        rows = self._quad_reductions[block]
        field = self.field
        c0 = np.zeros(len(cols[0]), dtype=np.uint16)
        c1 = np.zeros(len(cols[0]), dtype=np.uint16)
        for i in range(5):
            idx = cols[i].astype(np.intp)
            c0 ^= field.mul_row(rows[i][0])[idx]
            c1 ^= field.mul_row(rows[i][1])[idx]
        return c0, c1

    def unit_profile(self, a: RingElement) -> UnitProfile:
        """Per-factor invariants; predicts unithood and the weight class."""
        point = a[0] ^ a[1] ^ a[2] ^ a[3] ^ a[4]
        if self.parity_class is ParityClass.ODD:
            i1 = a[1] ^ a[2] ^ a[3] ^ a[4]
            i2 = a[0] ^ a[1]
            i3 = a[3] ^ a[4]
            i4 = a[0] ^ a[1] ^ a[2] ^ a[3]
            pattern = (point != 0, (i1 | i2 | i3 | i4) != 0)
            values = (point, i1, i2, i3, i4)
        elif self.parity_class is ParityClass.SINGLY_EVEN:
            r10, r11 = self._quad_residue(a, 0)
            r20, r21 = self._quad_residue(a, 1)
            pattern = (point != 0, (r10 | r11) != 0, (r20 | r21) != 0)
            values = (point, r10, r11, r20, r21)
        else:
            comps = self.crt_decompose(a)
            pattern = tuple(c != 0 for c in comps)
            values = comps
        return UnitProfile(
            parity_class=self.parity_class,
            values=values,
            component_pattern=pattern,
            is_unit=all(pattern),
        )

    def class_ids_bulk(self, codes: np.ndarray | None = None) -> np.ndarray:
        """Vectorized weight-class ids; id order matches iter_class_keys()."""
        cols = self.coefficient_columns(codes)
        point = (cols[0] ^ cols[1] ^ cols[2] ^ cols[3] ^ cols[4]) != 0
        if self.parity_class is ParityClass.ODD:
            quartic = ~(
                (cols[0] == cols[1])
                & (cols[1] == cols[2])
                & (cols[2] == cols[3])
                & (cols[3] == cols[4])
            )
            return (point.astype(np.int8) << 1) | quartic.astype(np.int8)
        if self.parity_class is ParityClass.SINGLY_EVEN:
            k = np.zeros(len(cols[0]), dtype=np.int8)
            for block in (0, 1):
                c0, c1 = self._quad_residue_bulk(cols, block)
                k += ((c0 | c1) != 0).astype(np.int8)
            return 3 * point.astype(np.int8) + k
        comps = self.components_bulk(codes, cols=cols)
        return (comps != 0).sum(axis=0).astype(np.int8)

    def class_key_of_id(self, class_id: int) -> tuple[int, ...]:
        if self.parity_class is ParityClass.ODD:
            return (class_id >> 1, class_id & 1)
        if self.parity_class is ParityClass.SINGLY_EVEN:
            return (class_id // 3, class_id % 3)
        return (class_id,)

    # -- idempotents and CRT (doubly even m) ------------------------------------

    def _require_doubly_even(self) -> None:
        if self.parity_class is not ParityClass.DOUBLY_EVEN:
            raise ValueError(
                f"operation requires 4 | m (fifth roots of unity); m={self.m} is {self.parity_class.value}"
            )

    def _build_idempotents(self) -> IdempotentBasis:
        field = self.field
        eps = field.element_of_order(5)
        etas = tuple(
            tuple(field.pow(eps, (-t * k) % 5) for k in range(5)) for t in range(5)
        )
        for i in range(5):
            if self.mul(etas[i], etas[i]) != etas[i]:
                raise RuntimeError("idempotent fails eta*eta = eta")
            for j in range(i + 1, 5):
                if self.mul(etas[i], etas[j]) != self.zero:
                    raise RuntimeError("idempotents are not orthogonal")
        total = self.zero
        for eta in etas:
            total = self.add(total, eta)
        if total != self.one:
            raise RuntimeError("idempotents do not sum to 1")
        return IdempotentBasis(epsilon=eps, etas=etas)  # type: ignore[arg-type]

    def idempotent_basis(self) -> IdempotentBasis:
        self._require_doubly_even()
        assert self._idempotents is not None
        return self._idempotents

    def crt_decompose(self, a: RingElement) -> tuple[int, int, int, int, int]:
        """Components (a at eps^0, ..., a at eps^4); a = sum eta_t * r_t."""
        self._require_doubly_even()
        mul = self.field.mul
        out = []
        for t in range(5):
            row = self._eval_matrix[t]
            r = 0
            for i in range(5):
                if a[i]:
                    r ^= mul(row[i], a[i])
            out.append(r)
        return tuple(out)  # type: ignore[return-value]

    def crt_recompose(self, components: tuple[int, int, int, int, int]) -> RingElement:
        self._require_doubly_even()
        assert self._idempotents is not None
        out = self.zero
        for r, eta in zip(components, self._idempotents.etas):
            if r:
                out = self.add(out, self.scalar_mul(r, eta))
        return out

    def components_bulk(
        self, codes: np.ndarray | None, cols: list[np.ndarray] | None = None
    ) -> np.ndarray:
        """CRT components of many packed codes at once, shape (5, n)."""
        self._require_doubly_even()
        if cols is None:
            cols = self.coefficient_columns(codes)
        field = self.field
        out = np.zeros((5, len(cols[0])), dtype=np.uint16)
        for t in range(5):
            row = self._eval_matrix[t]
            acc = np.zeros(len(cols[0]), dtype=np.uint16)
            for i in range(5):
                acc ^= field.mul_row(row[i])[cols[i].astype(np.intp)]
            out[t] = acc
        return out

    def recompose_bulk(self, comps: np.ndarray) -> np.ndarray:
        """Packed codes from a (5, n) component array; inverse of components_bulk."""
        self._require_doubly_even()
        assert self._idempotents is not None
        field = self.field
        n = comps.shape[1]
        coeffs = [np.zeros(n, dtype=np.uint32) for _ in range(5)]
        for t in range(5):
            eta = self._idempotents.etas[t]
            idx = comps[t].astype(np.intp)
            for k in range(5):
                if eta[k]:
                    coeffs[k] ^= field.mul_row(eta[k])[idx].astype(np.uint32)
        codes = np.zeros(n, dtype=np.uint32)
        for k in range(5):
            codes |= coeffs[k] << (k * self.m)
        return codes

    def class_sizes(self) -> dict[int, int]:
        """Closed-form sizes of the zero-pattern classes (doubly even m)."""
        self._require_doubly_even()
        t = self.q - 1
        return {k: comb(5, k) * t ** k for k in range(6)}

    def __repr__(self) -> str:  # pragma: no cover
        return f"QuinticRing(m={self.m}, {self.parity_class.value}, |R*|={self.unit_count()})"


def _degree(coeffs: list[int]) -> int:
    for d in range(len(coeffs) - 1, -1, -1):
        if coeffs[d]:
            return d
    return -1


@lru_cache(maxsize=None)
def quintic_ring(m: int) -> QuinticRing:
    """Shared immutable ring context for R_m."""
    return QuinticRing(field_context(m))
