"""Construction and Lee-weight analysis of the trace codes over R_m.

The code of parameter m has one ring coordinate per unit of R_m, in the
canonical packed order: the codeword of a message element a is

    ev(a) = (Tr(a * u))_{u in units(R_m)},

each coordinate an element of the base ring R (m=1).  The Gray map sends a
base-ring element to its 5-bit coefficient vector, so the binary image has
length s = 5L with the unit index major and the v-coefficient minor; this
layout keeps the 5-bit blocks contiguous so that multiplying the message
by v rotates every block in place (the quasi-cyclic structure).

Weight distributions are produced by three independent routes:

* ``enumerate_distribution`` - exact histogram over all 2^(5m) messages
  (m <= 3 under the default budget), streaming over unit chunks.
* ``theoretical_distribution`` - closed forms, exact integers, any m.
  Weights come from the character-sum product law: a message whose CRT
  components are nonzero in a pattern P has

      theta(a) = 5 * prod over blocks ((-1) if nonzero else |block group|)

  and Lee weight (s - theta)/2.  For the doubly even family this law
  (verified here by enumeration at m=4) fixes the weight of the
  three-nonzero-component class at
  5*(2^m-1)^2*(2^(3m-1) - 3*2^(2m-1) + 3*2^(m-1)); a variant form of that
  row circulates with coefficients 1 instead of 3 and is adjudicated by
  the verification report rather than silently adopted.
* ``classified_distribution`` - for 4 | m, classifies every message by its
  CRT zero pattern, counts classes exactly, and measures one weight per
  class on several representatives which must agree.

The enumeration kernel builds, for a block of units, the packed products
a*u for every message a by XOR-doubling over the 5m message bits, then
accumulates a per-ring-element Lee lookup table.  Histogram merging is
associative, so the unit chunks may be processed in any order or split
across workers without changing the result.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iter_product
from math import comb

import numpy as np

from .quintic_ring import ParityClass, QuinticRing, RingElement, parity_class_of, quintic_ring

#: Refusal threshold for full enumeration, in message x unit pairs.
DEFAULT_ENUM_BUDGET = 2_000_000_000

_UNIT_CHUNK = 512


class EnumerationBudgetError(ValueError):
    """Full enumeration would exceed the operation budget."""


def _resolve_jobs(jobs: int | None) -> int:
    if jobs is not None:
        if jobs < 1:
            raise ValueError("jobs must be >= 1")
        return jobs
    return os.cpu_count() or 1


@dataclass(frozen=True)
class CodeSpec:
    """Shape parameters of the code for one m."""

    m: int
    parity_class: ParityClass
    L: int
    s: int
    dimension: int

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "parityClass": self.parity_class.value,
            "L": self.L,
            "s": self.s,
            "dimension": self.dimension,
        }


def code_spec(m: int) -> CodeSpec:
    ring = quintic_ring(m)
    L = ring.unit_count()
    return CodeSpec(m=m, parity_class=ring.parity_class, L=L, s=5 * L, dimension=5 * m)


@dataclass(frozen=True)
class WeightClass:
    """One zero-pattern class of messages and its predicted codeword weight."""

    key: tuple[int, ...]
    theta: int
    weight: int
    frequency: int


def weight_classes(m: int) -> list[WeightClass]:
    """All zero-pattern classes with exact theta, weight and frequency.

    The key counts nonzero CRT components per block, in the block order of
    ``QuinticRing.component_block_orders`` (matching UnitProfile.class_key).
    """
    ring = quintic_ring(m)
    blocks = ring.component_block_orders()
    s = 5 * ring.unit_count()
    out = []
    for key in iter_product(*(range(n + 1) for _, n in blocks)):
        theta = 5
        freq = 1
        for (t, n), k in zip(blocks, key):
            theta *= (-1) ** k * t ** (n - k)
            freq *= comb(n, k) * t ** k
        weight, rem = divmod(s - theta, 2)
        if rem:
            raise RuntimeError("theta parity violated; construction bug")
        out.append(WeightClass(key=key, theta=theta, weight=weight, frequency=freq))
    return out


@dataclass
class WeightDistribution:
    """Lee weight histogram of the full code, with provenance."""

    spec: CodeSpec
    provenance: str  # "enumerated" | "theoretical" | "classified"
    entries: dict[int, int]
    detail: dict | None = field(default=None)

    def total_codewords(self) -> int:
        return sum(self.entries.values())

    def first_moment(self) -> int:
        return sum(w * f for w, f in self.entries.items())

    def nonzero_weights(self) -> list[int]:
        return sorted(w for w in self.entries if w > 0)

    def validate(self) -> "WeightDistribution":
        expect_total = 1 << (5 * self.spec.m)
        if self.total_codewords() != expect_total:
            raise RuntimeError(
                f"distribution totals {self.total_codewords()}, expected {expect_total}"
            )
        if self.entries.get(0) != 1:
            raise RuntimeError("weight 0 must occur exactly once")
        expect_moment = self.spec.s * (1 << (5 * self.spec.m - 1))
        if self.first_moment() != expect_moment:
            raise RuntimeError(
                f"first moment {self.first_moment()} != s*2^(5m-1) = {expect_moment}"
            )
        return self

    def to_json_dict(self) -> dict:
        out = self.spec.to_json_dict()
        out["provenance"] = self.provenance
        out["entries"] = [
            {"weight": w, "frequency": self.entries[w]} for w in sorted(self.entries)
        ]
        if self.detail is not None:
            out["detail"] = self.detail
        return out

    def to_csv(self) -> str:
        lines = ["weight,frequency"]
        lines += [f"{w},{self.entries[w]}" for w in sorted(self.entries)]
        return "\n".join(lines) + "\n"


# -- Gray map and per-element weights -----------------------------------------


def gray(r: tuple[int, ...]) -> tuple[int, int, int, int, int]:
    """Gray image of a base-ring element: its coefficient 5-tuple."""
    if len(r) != 5 or any(b not in (0, 1) for b in r):
        raise ValueError(f"not an element of the base ring: {r!r}")
    return tuple(r)  # type: ignore[return-value]


def lee_weight(r: tuple[int, ...]) -> int:
    """Lee weight of a base-ring element (Hamming weight of its Gray image)."""
    return sum(gray(r))


# -- lookup tables (cached per m) ----------------------------------------------


@lru_cache(maxsize=None)
def _lee_table(m: int) -> np.ndarray:
    """Lee weight of Tr(y) for every packed ring element y."""
    ring = quintic_ring(m)
    tr = ring.field.trace_table()
    table = np.zeros(ring.size, dtype=np.uint8)
    for col in ring.coefficient_columns():
        table += tr[col.astype(np.intp)]
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def _chi_table(m: int) -> np.ndarray:
    """Sum over coefficients of (-1)^tr for every packed ring element."""
    ring = quintic_ring(m)
    signs = np.where(ring.field.trace_table() == 0, 1, -1).astype(np.int8)
    table = np.zeros(ring.size, dtype=np.int8)
    for col in ring.coefficient_columns():
        table += signs[col.astype(np.intp)]
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def _trace_pack_table(m: int) -> np.ndarray:
    """Packed 5-bit Gray block of Tr(y) for every packed ring element y."""
    ring = quintic_ring(m)
    tr = ring.field.trace_table()
    table = np.zeros(ring.size, dtype=np.uint8)
    for i, col in enumerate(ring.coefficient_columns()):
        table |= tr[col.astype(np.intp)] << i
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def _unit_index(m: int) -> np.ndarray:
    return quintic_ring(m).units().astype(np.intp)


def _basis_elements(ring: QuinticRing) -> list[RingElement]:
    """The 5m module generators v^i * x^k in packed-bit order."""
    out = []
    for b in range(5 * ring.m):
        i, k = divmod(b, ring.m)
        out.append(tuple((1 << k) if j == i else 0 for j in range(5)))
    return out


def _product_table(m: int, a: RingElement) -> np.ndarray:
    """T[y] = packed a*y for every packed ring element y, by XOR-doubling."""
    ring = quintic_ring(m)
    T = np.zeros(ring.size, dtype=np.uint32)
    for b, e in enumerate(_basis_elements(ring)):
        img = ring.pack(ring.mul(a, e))
        half = 1 << b
        T[half: 2 * half] = T[:half] ^ img
    return T


# -- single-codeword operations -------------------------------------------------


def evaluate(m: int, a: RingElement) -> list[tuple[int, int, int, int, int]]:
    """The codeword of a as a list of base-ring elements, one per unit."""
    ring = quintic_ring(m)
    ring.check_element(a)
    return [ring.trace(ring.mul(a, ring.unpack(int(u)))) for u in ring.units()]


def evaluate_packed(m: int, a: RingElement) -> np.ndarray:
    """The codeword of a as packed 5-bit Gray blocks, one per unit."""
    ring = quintic_ring(m)
    ring.check_element(a)
    T = _product_table(m, a)
    return _trace_pack_table(m)[T[_unit_index(m)]]


def gray_image(m: int, a: RingElement) -> np.ndarray:
    """Full binary Gray image of the codeword of a (length s)."""
    blocks = evaluate_packed(m, a)
    bits = (blocks[:, None] >> np.arange(5, dtype=np.uint8)[None, :]) & 1
    return bits.reshape(-1).astype(np.uint8)


def codeword_lee_weight(m: int, a: RingElement) -> int:
    """Lee weight of the codeword of a, streamed over units."""
    ring = quintic_ring(m)
    ring.check_element(a)
    T = _product_table(m, a)
    return int(_lee_table(m)[T[_unit_index(m)]].sum(dtype=np.int64))


def theta(m: int, a: RingElement) -> int:
    """Character-sum statistic: sum of (-1)^bit over the codeword's Gray bits."""
    ring = quintic_ring(m)
    ring.check_element(a)
    T = _product_table(m, a)
    return int(_chi_table(m)[T[_unit_index(m)]].sum(dtype=np.int64))


def unit_permutation(m: int, u: RingElement) -> np.ndarray:
    """Coordinate permutation induced by x -> u*x on the unit coordinates."""
    ring = quintic_ring(m)
    if not ring.is_unit(u):
        raise ValueError("coordinate permutations are induced by units only")
    units = ring.units()
    products = _product_table(m, u)[units.astype(np.intp)]
    perm = np.searchsorted(units, products)
    if not np.array_equal(np.sort(perm), np.arange(len(units))):
        raise RuntimeError("unit multiplication did not permute the coordinates")
    return perm


# -- full enumeration ------------------------------------------------------------


def _weights_for_unit_chunk(m: int, unit_codes: np.ndarray) -> np.ndarray:
    """Sum of Lee lookups over one chunk of units, for every message at once."""
    ring = quintic_ring(m)
    lee = _lee_table(m)
    ncol = len(unit_codes)
    nb = 5 * ring.m
    images = np.zeros((nb, ncol), dtype=np.uint32)
    cols = [((unit_codes >> (i * ring.m)) & ring.mask).astype(np.intp) for i in range(5)]
    for b in range(nb):
        i, k = divmod(b, ring.m)
        row = ring.field.mul_row(1 << k)
        img = np.zeros(ncol, dtype=np.uint32)
        for j in range(5):
            img |= row[cols[(j - i) % 5]].astype(np.uint32) << (j * ring.m)
        images[b] = img
    T = np.zeros((ring.size, ncol), dtype=np.uint32)
    for b in range(nb):
        half = 1 << b
        T[half: 2 * half] = T[:half] ^ images[b]
    return lee[T].sum(axis=1, dtype=np.int64)


def enumerate_weights(
    m: int, jobs: int | None = None, budget: int | None = None
) -> np.ndarray:
    """Exact Lee weight of every codeword, indexed by packed message.

    Refuses (rather than sampling) when messages x units exceeds the
    budget; the classified or theoretical routes cover larger m.
    """
    ring = quintic_ring(m)
    limit = DEFAULT_ENUM_BUDGET if budget is None else budget
    cost = ring.size * ring.unit_count()
    if cost > limit:
        raise EnumerationBudgetError(
            f"full enumeration at m={m} needs {cost:.2e} message-unit pairs "
            f"(budget {limit:.2e}); use classified_distribution (4 | m) or "
            "theoretical_distribution instead"
        )
    cached = _enumerated_weights_cache.get(m)
    if cached is not None:
        return cached
    units = ring.units()
    chunks = [units[i: i + _UNIT_CHUNK] for i in range(0, len(units), _UNIT_CHUNK)]
    njobs = _resolve_jobs(jobs)
    W = np.zeros(ring.size, dtype=np.int64)
    if njobs == 1 or len(chunks) == 1:
        for chunk in chunks:
            W += _weights_for_unit_chunk(m, chunk)
    else:
        with ThreadPoolExecutor(max_workers=njobs) as pool:
            for part in pool.map(lambda c: _weights_for_unit_chunk(m, c), chunks):
                W += part
    W.flags.writeable = False
    _enumerated_weights_cache[m] = W
    return W


_enumerated_weights_cache: dict[int, np.ndarray] = {}


def clear_enumeration_cache() -> None:
    _enumerated_weights_cache.clear()


def enumerate_distribution(
    m: int, jobs: int | None = None, budget: int | None = None
) -> WeightDistribution:
    """Exact weight histogram over all messages (the enumeration oracle)."""
    W = enumerate_weights(m, jobs=jobs, budget=budget)
    values, counts = np.unique(W, return_counts=True)
    entries = {int(w): int(c) for w, c in zip(values, counts)}
    return WeightDistribution(
        spec=code_spec(m), provenance="enumerated", entries=entries
    ).validate()


def theoretical_distribution(m: int) -> WeightDistribution:
    """Closed-form weight histogram from the character-sum product law."""
    entries: dict[int, int] = {}
    for cls in weight_classes(m):
        entries[cls.weight] = entries.get(cls.weight, 0) + cls.frequency
    return WeightDistribution(
        spec=code_spec(m), provenance="theoretical", entries=entries
    ).validate()


def classified_distribution(
    m: int,
    jobs: int | None = None,
    seed: int = 0,
    extra_representatives: int = 4,
) -> WeightDistribution:
    """Weight histogram for 4 | m via CRT zero-pattern classification.

    Counts the six nonzero-component classes exactly, then measures the
    weight of each class on its first member plus ``extra_representatives``
    seeded random members.  Disagreement inside a class is an error (it
    would mean the classes are not weight-homogeneous) and is raised, not
    masked.
    """
    ring = quintic_ring(m)
    if ring.parity_class is not ParityClass.DOUBLY_EVEN:
        raise ValueError(f"classified distribution requires 4 | m; got m={m}")
    if m > 4:
        raise EnumerationBudgetError(
            f"classified distribution materializes 2^(5m) decompositions; m={m} exceeds m=4"
        )
    rng = np.random.default_rng(seed)
    ids = ring.class_ids_bulk()
    sizes = np.bincount(ids, minlength=6)
    entries: dict[int, int] = {}
    classes = []
    for k in range(6):
        members = np.nonzero(ids == k)[0]
        size = len(members)
        if size != sizes[k]:
            raise RuntimeError("class size bookkeeping error")
        nreps = min(size, 1 + extra_representatives)
        picks = [members[0]]
        if size > 1:
            picks += list(members[rng.choice(size - 1, size=nreps - 1, replace=False) + 1])
        reps = [ring.unpack(int(c)) for c in picks]
        weights = {codeword_lee_weight(m, a) for a in reps}
        if len(weights) != 1:
            raise RuntimeError(
                f"representatives of the {k}-nonzero-component class disagree on "
                f"weight: {sorted(weights)}; class is not weight-homogeneous"
            )
        w = weights.pop()
        entries[w] = entries.get(w, 0) + size
        classes.append(
            {
                "nonzeroComponents": k,
                "size": int(size),
                "weight": w,
                "representativesChecked": nreps,
                "firstRepresentative": ring.to_hex(reps[0]),
            }
        )
    return WeightDistribution(
        spec=code_spec(m),
        provenance="classified",
        entries=entries,
        detail={"classes": classes, "seed": seed},
    ).validate()


def distribution(
    m: int,
    mode: str,
    jobs: int | None = None,
    budget: int | None = None,
    seed: int = 0,
) -> WeightDistribution:
    """Dispatch by provenance mode (enumerated | theoretical | classified)."""
    if mode == "enumerated":
        return enumerate_distribution(m, jobs=jobs, budget=budget)
    if mode == "theoretical":
        return theoretical_distribution(m)
    if mode == "classified":
        return classified_distribution(m, jobs=jobs, seed=seed)
    raise ValueError(f"unknown distribution mode {mode!r}")


# -- generator matrix -------------------------------------------------------------


@lru_cache(maxsize=None)
def generator_matrix(m: int) -> np.ndarray:
    """Binary generator matrix of the Gray image, 5m rows by s columns.

    Row b is the Gray image of ev(e_b) with e_b = v^i x^k, b = i*m + k, so
    the codeword of any message is the XOR of the rows selected by its
    packed bits.
    """
    ring = quintic_ring(m)
    rows = [gray_image(m, e) for e in _basis_elements(ring)]
    G = np.stack(rows)
    G.flags.writeable = False
    return G


@lru_cache(maxsize=None)
def generator_column_codes(m: int) -> np.ndarray:
    """Columns of the generator matrix packed as 5m-bit integers."""
    ring = quintic_ring(m)
    spec = code_spec(m)
    codes = np.zeros(spec.s, dtype=np.uint32)
    for b, e in enumerate(_basis_elements(ring)):
        codes |= gray_image(m, e).astype(np.uint32) << b
    codes.flags.writeable = False
    return codes
