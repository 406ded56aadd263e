"""Exact integer prime-counting primitives.

Two table types back everything else in the package:

* ``PrimeTable``: a dense sieve up to a limit L, giving pi(x) for every
  x <= L in O(1) plus the ordered list of primes.
* ``QuotientPiTable``: for a fixed n, exact pi at every distinct value
  floor(n/d).  Built by a sieve-like recurrence over the ~2*sqrt(n)
  quotient points in O(n^(3/4)) arithmetic ops and O(sqrt(n)) memory,
  so pi(n/p) sums never require sieving anywhere near n/2.

All values are exact integers; no floating point is involved anywhere.
Tables are immutable after construction and safe to share between
threads or forked workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import RangeError, ResourceLimitError

#: Largest n accepted by build_quotient_pi without an explicit override.
SUPPORTED_MAX_N = 10**11

#: Default budget for dense tables (index range of pi_dense).
MAX_DENSE_LIMIT = 2**31

#: Default budget for sqrt(n) when building a quotient table (~0.5 GB).
MAX_QUOTIENT_ROOT = 2**25

#: Dense sieves are processed in blocks of this many entries.
SIEVE_SEGMENT = 2**20


def isqrt(n: int) -> int:
    """Exact integer square root: the r with r*r <= n < (r+1)*(r+1).

    Thin wrapper over math.isqrt that rejects negatives with a package
    error.  Never rounds through floats, so perfect-square boundaries
    (n = p^2) are always classified correctly.
    """
    if n < 0:
        raise RangeError(f"isqrt requires n >= 0, got {n}")
    return math.isqrt(n)


def _sieve_mask(limit: int) -> np.ndarray:
    """Boolean primality mask for 0..limit, sieved segment by segment."""
    mask = np.ones(limit + 1, dtype=bool)
    mask[: min(2, limit + 1)] = False
    root = math.isqrt(limit)
    base: list[int] = []
    for p in range(2, root + 1):
        if mask[p]:
            base.append(p)
            mask[p * p : root + 1 : p] = False
    lo = root + 1
    while lo <= limit:
        hi = min(lo + SIEVE_SEGMENT, limit + 1)
        for p in base:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start < hi:
                mask[start:hi:p] = False
        lo = hi
    return mask


@dataclass(frozen=True)
class PrimeTable:
    """Dense prime table: all primes <= limit plus an O(1) pi lookup.

    pi_dense[x] = number of primes <= x, for 0 <= x <= limit.
    primes[k-1] is the k-th prime (1-indexed).
    """

    limit: int
    primes: np.ndarray = field(repr=False)
    pi_dense: np.ndarray = field(repr=False)

    def pi(self, x: int) -> int:
        """pi(x) for 0 <= x <= limit."""
        if not 0 <= x <= self.limit:
            raise RangeError(f"pi({x}) outside table limit {self.limit}")
        return int(self.pi_dense[x])


def build_prime_table(limit: int, *, max_limit: int = MAX_DENSE_LIMIT) -> PrimeTable:
    """Sieve all primes <= limit and the dense pi array.

    Deterministic for a given limit.  Raises ResourceLimitError if the
    limit exceeds the dense-table budget (default 2**31 indices).
    """
    if limit < 1:
        raise RangeError(f"limit must be >= 1, got {limit}")
    if limit > max_limit:
        raise ResourceLimitError(
            f"limit {limit} exceeds dense table budget {max_limit}"
        )
    mask = _sieve_mask(limit)
    primes = np.flatnonzero(mask).astype(np.int64)
    pi_dense = np.cumsum(mask, dtype=np.int32)
    primes.setflags(write=False)
    pi_dense.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes, pi_dense=pi_dense)


def pi_floor(table: PrimeTable, numerator: int, denominator: int) -> int:
    """pi(numerator/denominator), evaluating at the floor of the quotient.

    Prime counts at rational arguments are taken as pi(floor(x)); e.g.
    pi(25/2) = pi(12).  The quotient must not exceed the table limit.
    """
    if denominator < 1:
        raise RangeError(f"denominator must be >= 1, got {denominator}")
    if numerator < 1:
        raise RangeError(f"numerator must be >= 1, got {numerator}")
    q = numerator // denominator
    if q > table.limit:
        raise RangeError(
            f"floor({numerator}/{denominator}) = {q} exceeds table limit {table.limit}"
        )
    return int(table.pi_dense[q])


def nth_prime(table: PrimeTable, k: int) -> int:
    """The k-th prime, 1-indexed: nth_prime(t, 1) == 2."""
    if not 1 <= k <= len(table.primes):
        raise IndexError(
            f"k={k} out of range; table holds {len(table.primes)} primes"
        )
    return int(table.primes[k - 1])


@dataclass(frozen=True)
class QuotientPiTable:
    """Exact pi at every distinct quotient floor(n/d), d = 1..n.

    Storage is two arrays indexed by the two halves of the quotient set:

    * ``smalls[v]``  = pi(v)          for 0 <= v <= root
    * ``larges[d]``  = pi(n // d)     for 1 <= d <= root + 1

    where root = isqrt(n).  Every floor(n/d) falls in one half or the
    other, so pi() is total on quotient points.  ``root_primes`` caches
    the primes <= root (the p_k over which the counting formulas sum).
    """

    n: int
    root: int
    smalls: np.ndarray = field(repr=False)
    larges: np.ndarray = field(repr=False)
    root_primes: np.ndarray = field(repr=False)

    def pi(self, v: int) -> int:
        """pi(v) for any v in the quotient set of n (plus any v <= root)."""
        if v < 0:
            raise RangeError(f"pi({v}) undefined for negative v")
        if v <= self.root:
            return int(self.smalls[v])
        if v > self.n:
            raise RangeError(f"pi({v}) outside table range (n = {self.n})")
        d = self.n // v
        if self.n // d != v:
            raise RangeError(f"{v} is not a quotient point of {self.n}")
        return int(self.larges[d])

    def pi_many(self, vs: np.ndarray) -> np.ndarray:
        """Vectorized pi over an array of quotient points (values >= 1)."""
        vs = np.asarray(vs, dtype=np.int64)
        small = vs <= self.root
        # Clamps keep the inactive np.where lane in bounds.
        ds = self.n // np.maximum(vs, 1)
        return np.where(
            small,
            self.smalls[np.minimum(vs, self.root)],
            self.larges[np.minimum(ds, self.root + 1)],
        )

    def quotients(self) -> np.ndarray:
        """All distinct floor(n/d) values, ascending."""
        d = np.arange(1, self.root + 1, dtype=np.int64)
        return np.unique(np.concatenate([d, self.n // d]))

    def pi_at_map(self) -> dict[int, int]:
        """Quotient -> pi(quotient) as a plain dict (small-n introspection)."""
        return {int(v): self.pi(int(v)) for v in self.quotients()}

    @classmethod
    def from_dense(cls, n: int, table: PrimeTable) -> "QuotientPiTable":
        """Fast-path construction by direct lookup in a covering dense table.

        Requires table.limit >= n.  Bit-identical to build_quotient_pi(n);
        used by sweeps where thousands of tables are needed.
        """
        if n < 1:
            raise RangeError(f"n must be >= 1, got {n}")
        if table.limit < n:
            raise RangeError(
                f"dense table limit {table.limit} does not cover n={n}"
            )
        r = math.isqrt(n)
        smalls = table.pi_dense[: r + 1].astype(np.int64)
        d = np.arange(1, r + 2, dtype=np.int64)
        larges = np.concatenate([[0], table.pi_dense[n // d]]).astype(np.int64)
        k = int(np.searchsorted(table.primes, r, side="right"))
        root_primes = table.primes[:k].copy()
        for a in (smalls, larges, root_primes):
            a.setflags(write=False)
        return cls(n=n, root=r, smalls=smalls, larges=larges, root_primes=root_primes)


def build_quotient_pi(
    n: int,
    *,
    max_n: int = SUPPORTED_MAX_N,
    max_root: int = MAX_QUOTIENT_ROOT,
) -> QuotientPiTable:
    """Compute pi at all quotient points of n in O(n^(3/4)) time.

    Starts from S(v) = v - 1 (every integer in [2, v] a prime candidate)
    and, for each prime p <= sqrt(n) in increasing order, removes the
    composites whose least prime factor is p:

        S(v) -= S(v // p) - pi(p - 1)      for all quotient points v >= p^2

    After the last prime, S(v) = pi(v) exactly.  Only the ~2*sqrt(n)
    quotient points are tracked, which is what keeps the cost at
    O(n^(3/4)) arithmetic operations and O(sqrt(n)) memory.

    n beyond max_n (default 10**11) is rejected with RangeError rather
    than silently degrading; the cap can be overridden by callers that
    accept the cost.
    """
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    if n > max_n:
        raise RangeError(
            f"n={n} exceeds the supported range (max_n={max_n}); "
            "pass a larger max_n to override"
        )
    r = math.isqrt(n)
    if r > max_root:
        raise ResourceLimitError(
            f"isqrt(n)={r} exceeds quotient-table budget {max_root}"
        )

    # smalls[v] tracks S(v) for v <= r; larges[d] tracks S(n // d).
    smalls = np.arange(r + 1, dtype=np.int64) - 1
    d = np.arange(r + 2, dtype=np.int64)
    larges = np.zeros(r + 2, dtype=np.int64)
    if r >= 1:
        larges[1 : r + 1] = n // d[1 : r + 1] - 1

    root_mask = _sieve_mask(r) if r >= 2 else np.zeros(r + 1, dtype=bool)
    root_primes = np.flatnonzero(root_mask).astype(np.int64)

    for p in root_primes.tolist():
        sp = int(smalls[p - 1])  # pi(p - 1): final, since p - 1 < p^2
        p2 = p * p
        dmax = min(r, n // p2)
        if dmax >= 1:
            dp = d[1 : dmax + 1] * p
            # S(n // (d*p)) lives in larges when d*p <= r, else in smalls
            # at n // (d*p) <= r.  Gather everything before writing so the
            # recurrence sees pre-update values throughout.
            inner = n // dp
            vals = np.where(
                dp <= r,
                larges[np.minimum(dp, r)],
                smalls[np.minimum(inner, r)],
            )
            larges[1 : dmax + 1] -= vals - sp
        if p2 <= r:
            src = smalls[np.arange(p2, r + 1, dtype=np.int64) // p]
            smalls[p2:] -= src - sp

    smalls[0] = 0
    larges[r + 1] = smalls[n // (r + 1)] if r + 1 <= n else 0
    for a in (smalls, larges, root_primes):
        a.setflags(write=False)
    return QuotientPiTable(
        n=n, root=r, smalls=smalls, larges=larges, root_primes=root_primes
    )
