"""Code-quality analytics for the binary Gray images.

Covers four independent quality measures:

* Griesmer distance-optimality: the bound sum_{j<K} ceil(d/2^j) <= N must
  fail at d+1 for an [N, K, d] code to admit no [N, K, d+1] improvement.
  Exact big-integer arithmetic throughout (values pass 2^53 before m=7).
* Dual distance, computed constructively from generator-matrix columns:
  the dual minimum weight is the smallest number of linearly dependent
  columns, so 1 means a zero column, 2 means a duplicate pair, and beyond
  that a bounded search looks for small dependent sets.  Every verdict
  carries a witness (the dependent column set) plus the exhaustive scan
  counts certifying that nothing smaller exists.
* The sufficient minimality condition 2*w_min > w_max (binary case): when
  it holds, every nonzero codeword is minimal.
* A brute-force minimal-codeword scan (pairwise support containment over
  all nonzero codewords), feasible for m <= 2, which both confirms the
  sufficient condition and exhibits explicit non-minimal witnesses when
  the condition fails.

JSON serialization renders every exact integer as a decimal string, since
several values exceed the 2^53 window of common JSON consumers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .trace_codes import (
    WeightDistribution,
    code_spec,
    generator_column_codes,
    generator_matrix,
    theoretical_distribution,
)

DUAL_SEARCH_CAP = 3
_MINIMAL_BRUTE_MAX_M = 2


def griesmer_sum(k: int, d: int) -> int:
    """sum_{j=0}^{k-1} ceil(d / 2^j), exact."""
    if k <= 0 or d <= 0:
        raise ValueError("k and d must be positive")
    return sum((d + (1 << j) - 1) >> j for j in range(k))


@dataclass(frozen=True)
class GriesmerReport:
    """Distance-optimality verdict for an [n, k, d] binary code."""

    n: int
    k: int
    d: int
    sum_at_d_plus_1: int
    optimal: bool
    slack: int  # sum_at_d_plus_1 - n; optimal iff slack > 0

    def to_json_dict(self) -> dict:
        return {
            "n": str(self.n),
            "k": str(self.k),
            "d": str(self.d),
            "griesmerSumAtDPlus1": str(self.sum_at_d_plus_1),
            "optimal": self.optimal,
            "slack": str(self.slack),
        }


def griesmer_report(n: int, k: int, d: int) -> GriesmerReport:
    total = griesmer_sum(k, d + 1)
    return GriesmerReport(
        n=n, k=k, d=d, sum_at_d_plus_1=total, optimal=total > n, slack=total - n
    )


def distance_optimality(m: int) -> GriesmerReport:
    """Griesmer verdict for the Gray image at this m.

    The optimality claim in the odd family holds for odd m > 6; for other
    parameters the report still carries the exact slack, it just certifies
    nothing beyond what the bound says.
    """
    spec = code_spec(m)
    dist = theoretical_distribution(m)
    d = min(w for w in dist.entries if w > 0)
    return griesmer_report(spec.s, spec.dimension, d)


# -- dual distance -----------------------------------------------------------------


@dataclass(frozen=True)
class DualDistanceReport:
    """Constructive dual-distance verdict with certificate.

    ``distance`` is None when no dependent set of size <= cap exists (the
    dual distance then exceeds ``cap``).  ``witness`` lists column indices
    whose XOR vanishes; ``zero_columns`` and ``distinct_columns`` document
    the exhaustive scans ruling out smaller weights.
    """

    distance: int | None
    cap: int
    witness: tuple[int, ...]
    columns: int
    zero_columns: int
    distinct_columns: int

    def to_json_dict(self) -> dict:
        return {
            "distance": None if self.distance is None else str(self.distance),
            "cap": str(self.cap),
            "witness": [str(j) for j in self.witness],
            "columns": str(self.columns),
            "zeroColumns": str(self.zero_columns),
            "distinctColumns": str(self.distinct_columns),
            "exceedsCap": self.distance is None,
        }


def _column_codes_of(generator: np.ndarray) -> np.ndarray:
    rows, _ = generator.shape
    codes = np.zeros(generator.shape[1], dtype=np.uint64)
    for b in range(rows):
        codes |= generator[b].astype(np.uint64) << np.uint64(b)
    return codes


def _rank_of_codes(codes: np.ndarray, n_rows: int) -> int:
    pivots: dict[int, int] = {}
    for c in codes:
        x = int(c)
        while x:
            h = x.bit_length() - 1
            if h not in pivots:
                pivots[h] = x
                break
            x ^= pivots[h]
        if len(pivots) == n_rows:
            break
    return len(pivots)


def dual_distance(
    generator: np.ndarray, cap: int = DUAL_SEARCH_CAP
) -> DualDistanceReport:
    """Dual minimum weight from the generator matrix (or packed columns).

    Accepts either the 0/1 matrix (rows x columns) or a 1-D array of
    packed column codes; packed input skips the rank check only if the
    caller already owns it, so the matrix form is preferred for audits.
    """
    if cap < 1 or cap > 3:
        raise ValueError("supported search caps are 1..3")
    if generator.ndim == 2:
        n_rows = generator.shape[0]
        codes = _column_codes_of(generator)
        if _rank_of_codes(codes, n_rows) < n_rows:
            raise ValueError("generator matrix is rank deficient; construction bug")
    elif generator.ndim == 1:
        codes = generator.astype(np.uint64)
    else:
        raise ValueError("expected a generator matrix or packed column codes")

    n = len(codes)
    zero_cols = np.nonzero(codes == 0)[0]
    if len(zero_cols):
        return DualDistanceReport(
            distance=1,
            cap=cap,
            witness=(int(zero_cols[0]),),
            columns=n,
            zero_columns=int(len(zero_cols)),
            distinct_columns=int(len(np.unique(codes))),
        )
    distinct = len(np.unique(codes))
    if cap >= 2 and distinct < n:
        order = np.argsort(codes, kind="stable")
        sorted_codes = codes[order]
        dup = np.nonzero(sorted_codes[1:] == sorted_codes[:-1])[0][0]
        i, j = sorted(int(order[dup + k]) for k in (0, 1))
        return DualDistanceReport(
            distance=2,
            cap=cap,
            witness=(i, j),
            columns=n,
            zero_columns=0,
            distinct_columns=distinct,
        )
    if cap >= 3:
        triple = _find_dependent_triple(codes)
        if triple is not None:
            return DualDistanceReport(
                distance=3,
                cap=cap,
                witness=triple,
                columns=n,
                zero_columns=0,
                distinct_columns=distinct,
            )
    return DualDistanceReport(
        distance=None,
        cap=cap,
        witness=(),
        columns=n,
        zero_columns=0,
        distinct_columns=distinct,
    )


def _find_dependent_triple(codes: np.ndarray) -> tuple[int, int, int] | None:
    n = len(codes)
    if n > 20000:
        raise ValueError("triple search over this many columns is not supported")
    sorted_codes = np.sort(codes)
    positions = {int(c): i for i, c in enumerate(codes)}
    for i in range(n):
        xors = codes[i + 1:] ^ codes[i]
        hit = np.nonzero(
            sorted_codes[np.clip(np.searchsorted(sorted_codes, xors), 0, n - 1)] == xors
        )[0]
        for h in hit:
            j = i + 1 + int(h)
            k = positions[int(codes[i] ^ codes[j])]
            if k != i and k != j:
                return tuple(sorted((i, j, k)))  # type: ignore[return-value]
    return None


def dual_distance_for(m: int, cap: int = DUAL_SEARCH_CAP) -> DualDistanceReport:
    """Dual distance of the Gray image at this m (columns built on the fly)."""
    codes = generator_column_codes(m)
    n_rows = 5 * m
    if _rank_of_codes(codes, n_rows) < n_rows:
        raise ValueError("generator matrix is rank deficient; construction bug")
    return dual_distance(codes, cap=cap)


# -- minimal codewords ----------------------------------------------------------------


@dataclass(frozen=True)
class MinimalityReport:
    """Minimality analysis: ratio condition, optional brute-force census."""

    w_min: int
    w_max: int
    ratio_condition_holds: bool  # 2*w_min > w_max, exact integers
    brute_force: dict | None = None

    def to_json_dict(self) -> dict:
        out = {
            "w0": str(self.w_min),
            "wInf": str(self.w_max),
            "abRatioHolds": self.ratio_condition_holds,
        }
        if self.brute_force is not None:
            bf = self.brute_force
            out["bruteForce"] = {
                "nonzeroCodewords": str(bf["nonzero_codewords"]),
                "minimalCount": str(bf["minimal_count"]),
                "nonMinimalCount": str(bf["non_minimal_count"]),
                "nonMinimalWitnesses": [
                    {"coverMessage": str(a), "coveredMessage": str(b)}
                    for a, b in bf["witnesses"]
                ],
            }
        return out


def ab_condition(dist: WeightDistribution) -> MinimalityReport:
    """Sufficient condition for all nonzero codewords to be minimal."""
    nonzero = dist.nonzero_weights()
    if not nonzero:
        raise ValueError("distribution has no nonzero weights")
    w_min, w_max = nonzero[0], nonzero[-1]
    return MinimalityReport(
        w_min=w_min, w_max=w_max, ratio_condition_holds=2 * w_min > w_max
    )


def minimal_codewords(m: int, max_witnesses: int = 8) -> MinimalityReport:
    """Brute-force minimality census over all nonzero codewords (m <= 2).

    A codeword is non-minimal iff the support of some other nonzero
    codeword is contained in its own.  Witnesses are reported as packed
    message pairs (cover, covered).
    """
    if m > _MINIMAL_BRUTE_MAX_M:
        raise ValueError(
            f"pairwise support scan is limited to m <= {_MINIMAL_BRUTE_MAX_M} "
            f"(2^{5 * m} codewords); use the ratio condition instead"
        )
    G = generator_matrix(m)
    k, s = G.shape
    n_msgs = (1 << k) - 1
    msgs = np.arange(1, n_msgs + 1, dtype=np.uint32)
    msg_bits = ((msgs[:, None] >> np.arange(k, dtype=np.uint32)[None, :]) & 1).astype(np.uint8)
    words = (msg_bits.astype(np.int32) @ G.astype(np.int32)) & 1
    packed = np.packbits(words.astype(np.uint8), axis=1)

    non_minimal = np.zeros(n_msgs, dtype=bool)
    witnesses: list[tuple[int, int]] = []
    for i in range(n_msgs):
        outside = (packed & ~packed[i]) != 0
        covered = ~outside.any(axis=1)
        covered[i] = False
        if covered.any():
            non_minimal[i] = True
            if len(witnesses) < max_witnesses:
                j = int(np.nonzero(covered)[0][0])
                witnesses.append((int(msgs[i]), int(msgs[j])))

    dist = theoretical_distribution(m)
    base = ab_condition(dist)
    return MinimalityReport(
        w_min=base.w_min,
        w_max=base.w_max,
        ratio_condition_holds=base.ratio_condition_holds,
        brute_force={
            "nonzero_codewords": n_msgs,
            "minimal_count": int(n_msgs - non_minimal.sum()),
            "non_minimal_count": int(non_minimal.sum()),
            "witnesses": witnesses,
        },
    )
