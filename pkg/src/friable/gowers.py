"""Gowers uniformity norms U^k on cyclic groups and on integer intervals.

The cyclic norm is computed by the derivative recursion

    ||f||_{U^k(Z_M)}^(2^k) = E_h ||Delta_h f||_{U^(k-1)(Z_M)}^(2^(k-1)),
    Delta_h f(n) = f(n + h) * conj(f(n)),

with the U^2 base case evaluated through the Fourier identity
||f||_{U^2}^4 = sum_xi |fhat(xi)|^4 (one FFT), giving O(M^(k-1) log M)
instead of the O(M^(k+1)) direct sum.  The direct sum is kept as
``gowers_norm_bruteforce`` and serves as the test oracle.

The interval norm U^k[N] embeds f * 1_[0,N] into Z_M' with
M' = 2^k (N + 1), the smallest modulus for which no wrap-around occurs,
and normalizes by the embedded indicator:

    ||f||_{U^k[N]} = ||f 1_[0,N]||_{U^k(Z_M')} / ||1_[0,N]||_{U^k(Z_M')}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, NumericError, ResourceError

_CYCLIC_GUARDRAIL = {2: 1 << 22, 3: 1 << 14, 4: 1 << 9}
_BRUTE_GUARDRAIL = 10**9
_BLOCK_ENTRIES = 1 << 22  # complex entries per batched block (FFT and brute force)


@dataclass
class SequenceFn:
    """A finite complex-valued sequence with a label.

    On Z_M the domain is {0, ..., M-1}; as an interval function the domain
    is {0, ..., N} with N = len(values) - 1.  Norm entry points enforce the
    1-boundedness the uniformity-norm machinery assumes; other sequences
    (e.g. truncated Mobius approximants, bounded by 2^u) may exceed it.
    """

    values: np.ndarray = field(repr=False)
    meta: str = "custom"

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=np.complex128)
        if self.values.ndim != 1 or self.values.size == 0:
            raise ArgumentError("sequence values must be a nonempty 1-d array")

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))


def _coerce(f) -> np.ndarray:
    if isinstance(f, SequenceFn):
        return f.values
    return np.ascontiguousarray(f, dtype=np.complex128)


def _check_bounded(vals: np.ndarray) -> None:
    sup = float(np.max(np.abs(vals)))
    if sup > 1.0 + 1e-12:
        raise ArgumentError(
            f"uniformity norms expect |f| <= 1; this sequence has sup {sup:.6g}"
        )


def _u2_pow(vals: np.ndarray) -> float:
    """||f||_{U^2}^4 = sum_xi |fhat(xi)|^4 with fhat(xi) = E_n f(n) e(-xi n / M)."""
    fh = np.fft.fft(vals) / vals.size
    mag = np.abs(fh)
    return float(np.sum(mag**4))


def _derivative_rows(vals: np.ndarray, hs: np.ndarray) -> np.ndarray:
    """Rows Delta_h f for h in hs: row[h][n] = f(n+h) * conj(f(n))."""
    M = vals.size
    idx = (np.arange(M)[None, :] + hs[:, None]) % M
    return vals[idx] * np.conj(vals)[None, :]

def _uk_pow(vals: np.ndarray, k: int) -> float:
    """||f||_{U^k}^(2^k) by the derivative recursion with FFT base case."""
    M = vals.size
    if k == 2:
        return _u2_pow(vals)
    if k == 3:
        chunk = max(1, _BLOCK_ENTRIES // M)
        total = 0.0
        for start in range(0, M, chunk):
            hs = np.arange(start, min(start + chunk, M))
            rows = _derivative_rows(vals, hs)
            fh = np.fft.fft(rows, axis=1) / M
            total += float(np.sum(np.abs(fh) ** 4))
        return total / M
    # k == 4: average U^3 powers of the derivatives
    total = 0.0
    for h in range(M):
        row = vals[(np.arange(M) + h) % M] * np.conj(vals)
        total += _uk_pow(row, 3)
    return total / M


def _root(power: float, k: int) -> float:
    """Nonnegative 2^k-th root; tiny negative power is floating noise."""
    if power < 0.0:
        if power < -1e-12:
            raise NumericError(f"U^{k} power {power:.3g} is significantly negative")
        power = 0.0
    return power ** (1.0 / 2.0**k)


def _check_k_and_size(k: int, M: int) -> None:
    if k not in (2, 3, 4):
        raise ArgumentError(f"only U^2..U^4 are supported, got k = {k}")
    if M > _CYCLIC_GUARDRAIL[k]:
        raise ResourceError(
            f"modulus {M} exceeds the U^{k} cost guardrail {_CYCLIC_GUARDRAIL[k]}"
        )


def gowers_norm_cyclic(f, k: int) -> float:
    """||f||_{U^k(Z_M)} for f on Z_M, M = len(f)."""
    vals = _coerce(f)
    _check_k_and_size(k, vals.size)
    _check_bounded(vals)
    return _root(_uk_pow(vals, k), k)


def gowers_norm_interval(f, k: int) -> float:
    """||f||_{U^k[N]} for f on {0, ..., N}, N = len(f) - 1.

    The guardrail applies to the ambient modulus M' = 2^k (N + 1), which is
    what the FFTs actually run on.
    """
    vals = _coerce(f)
    n0 = vals.size
    M = 2**k * n0
    _check_k_and_size(k, M)
    _check_bounded(vals)
    emb = np.zeros(M, dtype=np.complex128)
    emb[:n0] = vals
    ind = np.zeros(M, dtype=np.complex128)
    ind[:n0] = 1.0
    num = _uk_pow(emb, k)
    den = _uk_pow(ind, k)
    return _root(num, k) / _root(den, k)


def gowers_norm_bruteforce(f, k: int) -> float:
    """Direct (k+1)-fold sum over all (n, h_1, ..., h_k); test oracle only.

    The grid is evaluated as blocks of shape (h_{k-1} chunk, h_k, n), with
    any remaining h variables looped.  Cost is M^(k+1), guarded at 10^9.
    """
    vals = _coerce(f)
    M = vals.size
    if k not in (2, 3, 4):
        raise ArgumentError(f"only U^2..U^4 are supported, got k = {k}")
    if M ** (k + 1) > _BRUTE_GUARDRAIL:
        raise ResourceError(f"brute force needs M^(k+1) = {M**(k+1)} > {_BRUTE_GUARDRAIL}")
    _check_bounded(vals)
    lead = k - 2
    n = np.arange(M).reshape(1, 1, M)
    h_b = np.arange(M).reshape(1, M, 1)
    rows = max(1, _BLOCK_ENTRIES // (M * M))
    total = 0.0

    def block_sum(lead_hs: tuple[int, ...], h_a: np.ndarray) -> float:
        prod = None
        for bits in np.ndindex(*([2] * k)):
            off = sum(b * h for b, h in zip(bits[:lead], lead_hs))
            arr = off + (bits[lead] * h_a) + (bits[lead + 1] * h_b)
            idx = (n + arr) % M
            w = vals[idx]
            if sum(bits) % 2 == 1:
                w = np.conj(w)
            prod = w if prod is None else prod * w
        return float(np.sum(prod).real)

    lead_iter = np.ndindex(*([M] * lead)) if lead else [()]
    for lead_hs in lead_iter:
        for start in range(0, M, rows):
            h_a = np.arange(start, min(start + rows, M)).reshape(-1, 1, 1)
            total += block_sum(tuple(lead_hs), h_a)
    return _root(total / M ** (k + 1), k)
