"""Exact factorization primitives over integer segments.

Everything here is integer-exact: largest/smallest prime factor tables,
Mobius values, friable counting, and enumeration of sifted squarefree
integers.  Conventions for the degenerate inputs are fixed once and used
package-wide:

    P+(0) = 0,  P+(+-1) = 1          (so 0 and 1 are y-friable for every y)
    P-(0) = 0,  P-(+-1) = +infinity  (so 1 is y-sifted for every y)

Inside tables the infinite value is stored as the int64 sentinel
``SPF_INFINITY``; the scalar API surfaces it as ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import config
from ._parallel import ordered_map
from .errors import ArgumentError, ResourceError

SPF_INFINITY = np.iinfo(np.int64).max


# ---------------------------------------------------------------------------
# base primes
# ---------------------------------------------------------------------------

_prime_cache: dict = {"limit": 0, "primes": np.zeros(0, dtype=np.int64)}


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (simple Eratosthenes, cached)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    if n > _prime_cache["limit"]:
        size = max(n, 2 * _prime_cache["limit"], 1 << 16)
        flags = np.ones(size + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, math.isqrt(size) + 1):
            if flags[p]:
                flags[p * p :: p] = False
        _prime_cache["primes"] = np.nonzero(flags)[0].astype(np.int64)
        _prime_cache["limit"] = size
    primes = _prime_cache["primes"]
    return primes[: int(np.searchsorted(primes, n, side="right"))]


# ---------------------------------------------------------------------------
# factor tables
# ---------------------------------------------------------------------------


@dataclass
class FactorSieve:
    """Per-integer factor data for the segment [lo, hi] (inclusive).

    lpf[i], spf[i], mu[i] describe n = lo + i.  Immutable after
    construction; safe to share read-only across threads.
    """

    lo: int
    hi: int
    lpf: np.ndarray  # int64, largest prime factor (conventions above)
    spf: np.ndarray  # int64, smallest prime factor, SPF_INFINITY for +-1
    mu: np.ndarray   # int8, Mobius value in {-1, 0, +1}

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def _index(self, n: int) -> int:
        if not self.lo <= n <= self.hi:
            raise ArgumentError(f"{n} outside sieve segment [{self.lo}, {self.hi}]")
        return n - self.lo

    def largest(self, n: int) -> int:
        return int(self.lpf[self._index(n)])

    def smallest(self, n: int) -> int | float:
        v = self.spf[self._index(n)]
        return math.inf if v == SPF_INFINITY else int(v)

    def mobius(self, n: int) -> int:
        return int(self.mu[self._index(n)])

    def friable_mask(self, y: float) -> np.ndarray:
        """Boolean mask over the segment: P+(n) <= y."""
        return self.lpf <= y

    def sifted_mask(self, y: float) -> np.ndarray:
        """Boolean mask over the segment: P-(n) > y (n = 0 is never sifted)."""
        return self.spf > y


def _sieve_segment(lo: int, hi: int, base_primes: np.ndarray) -> FactorSieve:
    """Sieve one contiguous segment; pure integer arithmetic, no trial division."""
    n = hi - lo + 1
    lpf = np.zeros(n, dtype=np.int64)
    spf = np.zeros(n, dtype=np.int64)
    mu = np.ones(n, dtype=np.int8)
    rem = np.arange(lo, hi + 1, dtype=np.int64)
    if lo <= 0 <= hi:
        rem[0 - lo] = 1  # keep 0 out of the division loops
    for p in base_primes:
        p = int(p)
        if p * p > hi:
            break
        first = max(p, ((lo + p - 1) // p) * p)
        if first > hi:
            continue
        idx = np.arange(first - lo, n, p)
        rem[idx] //= p
        mu[idx] = -mu[idx]
        hit = spf[idx]
        spf[idx] = np.where(hit == 0, p, hit)
        lpf[idx] = p
        again = idx[rem[idx] % p == 0]
        if again.size:
            mu[again] = 0
            while again.size:
                rem[again] //= p
                again = again[rem[again] % p == 0]
    big = rem > 1
    lpf[big] = rem[big]
    hit = spf[big]
    spf[big] = np.where(hit == 0, rem[big], hit)
    mu[big] = -mu[big]
    if lo <= 0 <= hi:
        i = 0 - lo
        lpf[i], spf[i], mu[i] = 0, 0, 0
    if lo <= 1 <= hi:
        i = 1 - lo
        lpf[i], spf[i], mu[i] = 1, SPF_INFINITY, 1
    return FactorSieve(lo, hi, lpf, spf, mu)


def _check_bounds(lo: int, hi: int, max_n: int) -> None:
    if lo < 0 or lo > hi:
        raise ArgumentError(f"need 0 <= lo <= hi, got [{lo}, {hi}]")
    if hi > max_n:
        raise ResourceError(f"hi = {hi} exceeds configured maximum {max_n}")


def build_factor_sieve(
    lo: int,
    hi: int,
    *,
    segment_size: int | None = None,
    max_entries: int | None = None,
) -> FactorSieve:
    """Build lpf/spf/mu tables for [lo, hi], sieving in cache-sized segments.

    Raises ResourceError when the table would exceed ``max_entries``
    (default 2**26) and ArgumentError for an empty or negative range.
    """
    segment_size = segment_size or config.DEFAULT_SEGMENT_SIZE
    max_entries = max_entries or config.DEFAULT_MAX_TABLE
    _check_bounds(lo, hi, config.DEFAULT_MAX_SIEVE_N)
    total = hi - lo + 1
    if total > max_entries:
        raise ResourceError(
            f"segment of {total} entries exceeds memory budget of {max_entries}"
        )
    base = primes_up_to(math.isqrt(hi))
    parts = [
        _sieve_segment(a, min(a + segment_size - 1, hi), base)
        for a in range(lo, hi + 1, segment_size)
    ]
    if len(parts) == 1:
        return parts[0]
    return FactorSieve(
        lo,
        hi,
        np.concatenate([s.lpf for s in parts]),
        np.concatenate([s.spf for s in parts]),
        np.concatenate([s.mu for s in parts]),
    )


def iter_factor_segments(lo: int, hi: int, segment_size: int | None = None):
    """Yield FactorSieve segments covering [lo, hi] in order (streaming)."""
    segment_size = segment_size or config.DEFAULT_SEGMENT_SIZE
    _check_bounds(lo, hi, config.DEFAULT_MAX_SIEVE_N)
    base = primes_up_to(math.isqrt(hi))
    for a in range(lo, hi + 1, segment_size):
        yield _sieve_segment(a, min(a + segment_size - 1, hi), base)


# ---------------------------------------------------------------------------
# scalar operations
# ---------------------------------------------------------------------------


def largest_prime_factor(n: int) -> int:
    """P+(n) by trial division; P+(0) = 0 and P+(+-1) = 1."""
    n = abs(n)
    if n <= 1:
        return n  # 0 -> 0, 1 -> 1
    best = 1
    for p in (2, 3):
        while n % p == 0:
            best = p
            n //= p
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            while n % q == 0:
                best = q
                n //= q
        d += 6
    return max(best, n) if n > 1 else best


def smallest_prime_factor(n: int) -> int | float:
    """P-(n) by trial division; P-(0) = 0 and P-(+-1) = +infinity."""
    n = abs(n)
    if n == 0:
        return 0
    if n == 1:
        return math.inf
    if n % 2 == 0:
        return 2
    if n % 3 == 0:
        return 3
    d = 5
    while d * d <= n:
        if n % d == 0:
            return d
        if n % (d + 2) == 0:
            return d + 2
        d += 6
    return n


def is_friable(n: int, y: float) -> bool:
    """True iff P+(n) <= y.  Note 0 and +-1 are y-friable for every y > 1."""
    if y <= 1:
        raise ArgumentError(f"friability bound must exceed 1, got {y}")
    return largest_prime_factor(n) <= y


def psi_count(
    N: int,
    y: float,
    *,
    segment_size: int | None = None,
    threads: int = 1,
    max_n: int | None = None,
) -> int:
    """Psi(N, y) = #{1 <= n <= N : P+(n) <= y}, exact by segmented sieving."""
    if N < 1:
        raise ArgumentError(f"N must be >= 1, got {N}")
    if y <= 1:
        raise ArgumentError(f"friability bound must exceed 1, got {y}")
    max_n = max_n or config.DEFAULT_MAX_SIEVE_N
    if N > max_n:
        raise ResourceError(f"N = {N} exceeds configured maximum {max_n}")
    segment_size = segment_size or config.DEFAULT_SEGMENT_SIZE
    base = primes_up_to(math.isqrt(N))
    bounds = [(a, min(a + segment_size - 1, N)) for a in range(1, N + 1, segment_size)]

    def count_one(ab: tuple[int, int]) -> int:
        seg = _sieve_segment(ab[0], ab[1], base)
        return int(np.count_nonzero(seg.friable_mask(y)))

    return sum(ordered_map(count_one, bounds, threads))


def sifted_squarefree_arrays(
    limit: int, y: float, *, segment_size: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """(k, mu(k)) arrays for squarefree k <= limit with P-(k) > y, ascending."""
    if limit < 1:
        raise ArgumentError(f"limit must be >= 1, got {limit}")
    if y <= 1:
        raise ArgumentError(f"sifting bound must exceed 1, got {y}")
    ks: list[np.ndarray] = []
    mus: list[np.ndarray] = []
    for seg in iter_factor_segments(1, limit, segment_size):
        keep = (seg.mu != 0) & seg.sifted_mask(y)
        ks.append(np.arange(seg.lo, seg.hi + 1, dtype=np.int64)[keep])
        mus.append(seg.mu[keep].astype(np.int64))
    return np.concatenate(ks), np.concatenate(mus)


def enumerate_sifted_squarefree(limit: int, y: float) -> list[tuple[int, int]]:
    """All squarefree k <= limit with P-(k) > y, paired with mu(k), ascending.

    k = 1 is always present since P-(1) = +infinity.
    """
    ks, mus = sifted_squarefree_arrays(limit, y)
    return list(zip(ks.tolist(), mus.tolist()))
