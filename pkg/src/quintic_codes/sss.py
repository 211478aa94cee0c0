"""Massey-style secret sharing over the binary Gray images.

The dealer hides a one-bit secret in coordinate 0 of a random codeword:
the message is drawn uniformly from the affine set {u : (u G)_0 = secret}
and coordinates 1..s-1 become the shares.  A coalition recovers the secret
exactly when the dual code contains a word with a 1 at coordinate 0 whose
remaining support lies inside the coalition; the recovery relation is that
dual word, found here by linear elimination over the coalition's columns
rather than by enumerating minimal dual words (the dual dimension s - 5m
is far too large for that).

Because the dual distance of these codes is 2, some single share equals
the secret outright: every column of the generator matrix reappears
elsewhere (coordinate blocks of units v*u are rotations of u's block), so
a singleton coalition holding the duplicate of column 0 suffices.  Schemes
with this property are called dictatorial, as opposed to democratic ones
(dual distance >= 3) where every user sits in the same number of minimal
coalitions.

Dealing randomness comes from a caller-seeded generator, so deals are
reproducible; all other operations are pure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .analysis import dual_distance
from .trace_codes import code_spec, generator_column_codes, generator_matrix

_MAX_DEAL_M = 2


@dataclass(frozen=True)
class ShareDeal:
    """One dealing: the secret, the sampled message, and the s-1 shares.

    Shares are indexed by codeword coordinate 1..s-1; ``shares[j - 1]`` is
    the bit at coordinate j.
    """

    m: int
    secret: int
    message: tuple[int, ...]
    shares: tuple[int, ...]

    def share_at(self, coordinate: int) -> int:
        if not 1 <= coordinate <= len(self.shares):
            raise ValueError(f"share coordinate {coordinate} out of range")
        return self.shares[coordinate - 1]

    def to_json_dict(self) -> dict:
        packed = np.packbits(np.array(self.shares, dtype=np.uint8))
        return {
            "m": self.m,
            "secret": self.secret,
            "message": "".join(map(str, self.message)),
            "shareCount": len(self.shares),
            "sharesHex": bytes(packed).hex(),
        }


@dataclass(frozen=True)
class RecoveryRelation:
    """A dual word through coordinate 0 supported inside a coalition.

    ``coefficients[i]`` multiplies the share of ``coalition[i]``; the XOR
    of the selected shares equals the secret for every valid dealing.
    """

    m: int
    coalition: tuple[int, ...]
    coefficients: tuple[int, ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j, c in zip(self.coalition, self.coefficients) if c)

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "coalition": list(self.coalition),
            "coefficients": list(self.coefficients),
            "support": list(self.support),
        }


def deal(m: int, secret: int, seed: int | None = None, rng: random.Random | None = None) -> ShareDeal:
    """Deal a one-bit secret into s-1 shares (m <= 2: materialized matrix)."""
    if secret not in (0, 1):
        raise ValueError("the secret is a single bit")
    if m > _MAX_DEAL_M:
        raise ValueError(f"dealing materializes the generator matrix; m <= {_MAX_DEAL_M} only")
    if rng is None:
        rng = random.Random(seed)
    G = generator_matrix(m)
    k = G.shape[0]
    col0 = G[:, 0]
    pivots = np.nonzero(col0)[0]
    if len(pivots) == 0:
        raise ValueError("coordinate 0 cannot carry a secret: its column is zero")
    pivot = int(pivots[0])
    bits = [rng.randrange(2) for _ in range(k)]
    parity = 0
    for b in range(k):
        if b != pivot and col0[b]:
            parity ^= bits[b]
    bits[pivot] = secret ^ parity
    word = (np.array(bits, dtype=np.int32) @ G.astype(np.int32)) & 1
    if int(word[0]) != secret:
        raise RuntimeError("dealt codeword does not carry the secret")
    return ShareDeal(
        m=m,
        secret=secret,
        message=tuple(bits),
        shares=tuple(int(x) for x in word[1:]),
    )


def find_recovery(m: int, coalition) -> RecoveryRelation | None:
    """Solve for a recovery relation over a coalition, or None if none exists.

    The coalition is a set of coordinates in 1..s-1 (coordinate 0 is the
    secret and may not participate).  Failure is a value, not an error: it
    means the coalition's columns do not span column 0.
    """
    spec = code_spec(m)
    members = tuple(sorted(set(int(j) for j in coalition)))
    if any(j < 1 or j >= spec.s for j in members):
        raise ValueError("coalition coordinates must lie in 1..s-1")
    codes = generator_column_codes(m)
    target = int(codes[0])

    # Eliminate coalition columns, tracking which members combine to each pivot.
    pivots: dict[int, tuple[int, int]] = {}  # leading bit -> (code, member mask)
    for pos, j in enumerate(members):
        x, combo = int(codes[j]), 1 << pos
        while x:
            h = x.bit_length() - 1
            if h not in pivots:
                pivots[h] = (x, combo)
                break
            px, pcombo = pivots[h]
            x ^= px
            combo ^= pcombo
    x, combo = target, 0
    while x:
        h = x.bit_length() - 1
        if h not in pivots:
            return None
        px, pcombo = pivots[h]
        x ^= px
        combo ^= pcombo
    coefficients = tuple((combo >> pos) & 1 for pos in range(len(members)))
    return RecoveryRelation(m=m, coalition=members, coefficients=coefficients)


def reconstruct(share_deal: ShareDeal, relation: RecoveryRelation) -> int:
    """Recover the secret from a deal through a valid relation."""
    if relation.m != share_deal.m:
        raise ValueError(
            f"relation built for m={relation.m} cannot act on a deal at m={share_deal.m}"
        )
    _validate_relation(relation)
    out = 0
    for j in relation.support:
        out ^= share_deal.share_at(j)
    return out


def _validate_relation(relation: RecoveryRelation) -> None:
    codes = generator_column_codes(relation.m)
    acc = int(codes[0])
    for j in relation.support:
        acc ^= int(codes[j])
    if acc != 0:
        raise ValueError("relation is not orthogonal to the code; wrong coalition data")


def duplicate_of_first_column(m: int) -> int:
    """A coordinate j >= 1 whose column equals column 0 (exists: d' = 2)."""
    codes = generator_column_codes(m)
    matches = np.nonzero(codes == codes[0])[0]
    for j in matches:
        if int(j) != 0:
            return int(j)
    raise RuntimeError("column 0 has no duplicate; dual distance is not 2")


def classify_generator(generator: np.ndarray) -> str:
    """Democratic/dictatorial dichotomy from the dual distance."""
    if generator.ndim != 2:
        raise ValueError("expected a generator matrix")
    k, n = generator.shape
    if k >= n:
        raise ValueError("dual distance undefined: the dual code is trivial")
    report = dual_distance(generator)
    if report.distance == 1:
        raise ValueError("a zero column cannot carry shares; scheme undefined")
    return "dictatorial" if report.distance == 2 else "democratic"


def classify_scheme(m: int) -> str:
    """Classification of the scheme built on the Gray image at this m."""
    spec = code_spec(m)
    if spec.dimension >= spec.s:
        raise ValueError("dual distance undefined: the dual code is trivial")
    report = dual_distance(generator_column_codes(m))
    if report.distance == 1:
        raise ValueError("a zero column cannot carry shares; scheme undefined")
    return "dictatorial" if report.distance == 2 else "democratic"
