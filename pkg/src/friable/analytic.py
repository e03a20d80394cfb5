"""Saddle-point and singular-series constants, and sifted Mobius sums.

Implements the ingredients of the ternary friable asymptotic

    S0(alpha, y) * S1(alpha) * Psi(N, y)^3 / N,

where alpha = alpha(N, y) is the unique root of
sum_{p <= y} log p / (p^alpha - 1) = log N, together with the exact
partial sums sum mu(k)/k over sifted squarefree k that drive the
truncated Mobius-inversion error terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import roots_jacobi

from . import sieve
from .errors import ArgumentError, NumericError, ResourceError

_SADDLE_LO = 1e-6
_SADDLE_HI = 8.0
_MERTENS_MAX_N = 100_000_000


@dataclass(frozen=True)
class SaddlePoint:
    """Root alpha of the saddle equation for (N, y), with its residual."""

    N: int
    y: float
    alpha: float
    residual: float  # |LHS(alpha) - log N|


def saddle_lhs(alpha, primes: np.ndarray) -> float:
    """sum over p of log p / (p^alpha - 1); strictly decreasing in alpha."""
    p = primes.astype(np.float64)
    return float(np.sum(np.log(p) / (np.power(p, alpha) - 1.0)))


def solve_saddle_alpha(N: int, y: float) -> SaddlePoint:
    """Bisection to width 1e-12 on (1e-6, 8], then one Newton polish.

    Raises NumericError (reporting the bracket) when log N is not spanned,
    and when the polished root violates alpha in (0, 2] or the residual
    bound 1e-10 * log N.
    """
    if N < 2:
        raise ArgumentError(f"N must be >= 2, got {N}")
    if y < 2:
        raise ArgumentError(f"y must be >= 2, got {y}")
    primes = sieve.primes_up_to(int(math.floor(y)))
    target = math.log(N)
    lo, hi = _SADDLE_LO, _SADDLE_HI
    flo = saddle_lhs(lo, primes) - target
    fhi = saddle_lhs(hi, primes) - target
    if flo < 0 or fhi > 0:
        raise NumericError(
            f"no sign change on ({lo}, {hi}]: f(lo)={flo:.6g}, f(hi)={fhi:.6g}"
        )
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if saddle_lhs(mid, primes) - target > 0:
            lo = mid
        else:
            hi = mid
    alpha = 0.5 * (lo + hi)
    # one Newton step: f'(a) = -sum log^2 p * p^a / (p^a - 1)^2
    p = primes.astype(np.float64)
    pa = np.power(p, alpha)
    deriv = -float(np.sum(np.log(p) ** 2 * pa / (pa - 1.0) ** 2))
    f = saddle_lhs(alpha, primes) - target
    if deriv != 0.0:
        alpha -= f / deriv
    residual = abs(saddle_lhs(alpha, primes) - target)
    if not 0.0 < alpha <= 2.0:
        raise NumericError(f"saddle point {alpha:.6g} outside (0, 2] for N={N}, y={y}")
    if residual > 1e-10 * target:
        raise NumericError(f"saddle residual {residual:.3g} exceeds 1e-10 * log N")
    return SaddlePoint(N=N, y=float(y), alpha=float(alpha), residual=float(residual))


class SingularSeries0(NamedTuple):
    value: float
    tail_bound: float  # bound on sum_{p > p_max} 1/(p-1)^2, tail of the log


def singular_series_s0(alpha: float, y: float, p_max: int) -> SingularSeries0:
    """Euler product S0(alpha, y) truncated at p_max, with tail bracket.

    The factor for p <= y is 1 + (p - p^alpha)^3 / (p (p-1)^2 (p^(3a-1) - 1));
    for y < p <= p_max it is 1 - 1/(p-1)^2.  The returned tail_bound
    over-estimates sum_{p > p_max} 1/(p-1)^2 by 2/p_max, so the infinite
    product lies within a factor exp(+-2 * tail_bound) of value.
    """
    if not 0.0 < alpha <= 2.0:
        raise ArgumentError(f"alpha must lie in (0, 2], got {alpha}")
    if y < 2:
        raise ArgumentError(f"y must be >= 2, got {y}")
    if p_max < y:
        raise ArgumentError(f"p_max = {p_max} must be >= y = {y}")
    if abs(alpha - 1.0 / 3.0) < 1e-6:
        raise NumericError(
            "alpha within 1e-6 of 1/3: factor p^(3 alpha - 1) - 1 is singular"
        )
    primes = sieve.primes_up_to(p_max).astype(np.float64)
    small = primes[primes <= y]
    large = primes[primes > y]
    terms = []
    if small.size:
        num = (small - np.power(small, alpha)) ** 3
        den = small * (small - 1.0) ** 2 * (np.power(small, 3.0 * alpha - 1.0) - 1.0)
        terms.append(num / den)
    if large.size:
        terms.append(-1.0 / (large - 1.0) ** 2)
    factors = np.concatenate(terms) if terms else np.zeros(0)
    tail_bound = 2.0 / p_max
    if np.all(factors > -1.0):
        # exact-sum of log1p terms: value independent of evaluation order
        value = math.exp(math.fsum(np.log1p(factors).tolist()))
    else:
        value = float(np.prod(1.0 + factors))
    return SingularSeries0(value=value, tail_bound=tail_bound)


def singular_series_s1(alpha: float, tol: float = 1e-12) -> float:
    """S1(alpha) = integral over {t1, t2 >= 0, t1 + t2 <= 1} of
    alpha^3 (t1 t2 (t1 + t2))^(alpha - 1).

    By the t1 <-> t2 symmetry and the substitution t2 = t1 w the simplex
    integral collapses to a single Gauss-Jacobi-friendly axis:

        S1(alpha) = 2 alpha^3 / (3 alpha - 1)
                    * integral_0^1 w^(alpha-1) (1 + w)^(-2 alpha) dw.

    The only singularity is the w^(alpha-1) endpoint weight, so the
    Jacobi rule converges exponentially (a tensor rule on the square
    stalls on the corner singularity of (t1 t2 (t1+t2))^(alpha-1) and
    cannot reach tol = 1e-12).  Node count doubles from 64 until the
    change is <= tol.  The integral diverges for alpha <= 1/3.
    """
    if not 0.0 < alpha <= 2.0:
        raise ArgumentError(f"alpha must lie in (0, 2], got {alpha}")
    if alpha <= 1.0 / 3.0 + 1e-9:
        raise NumericError(
            f"S1({alpha}) diverges: the simplex integral needs alpha > 1/3"
        )
    if tol < 1e-12:
        raise ArgumentError(f"tol must be >= 1e-12, got {tol}")
    a = float(alpha)
    front = 2.0 * a**3 / (3.0 * a - 1.0)

    def estimate(n: int) -> float:
        x, w = roots_jacobi(n, 0.0, a - 1.0)  # weight (1+x)^(a-1) on [-1, 1]
        s = (x + 1.0) / 2.0
        g = (1.0 + s) ** (-2.0 * a)
        return front * 2.0 ** (-a) * float(w @ g)

    n = 64
    prev = estimate(n)
    while n <= 4096:
        n *= 2
        cur = estimate(n)
        if abs(cur - prev) <= tol:
            return cur
        prev = cur
    raise NumericError(f"S1 quadrature did not converge to {tol} by 4096 nodes")


def harper_prediction(N: int, y: float, *, threads: int = 1) -> float:
    """S0(alpha, y) * S1(alpha) * Psi(N, y)^3 / N with alpha = alpha(N, y).

    The S0 product is truncated at p_max = max(y, 10^6); Psi is exact.
    """
    if N < 2:
        raise ArgumentError(f"N must be >= 2, got {N}")
    if not 2 <= y <= N:
        raise ArgumentError(f"need 2 <= y <= N, got y={y}, N={N}")
    alpha = solve_saddle_alpha(N, y).alpha
    s0 = singular_series_s0(alpha, y, p_max=max(int(y), 10**6)).value
    s1 = singular_series_s1(alpha)
    psi = sieve.psi_count(N, y, threads=threads)
    return s0 * s1 * psi**3 / N


def _sifted_terms(N: int, u: float) -> tuple[np.ndarray, np.ndarray]:
    if N < 2:
        raise ArgumentError(f"N must be >= 2, got {N}")
    if u < 1:
        raise ArgumentError(f"u must be >= 1, got {u}")
    if N > _MERTENS_MAX_N:
        raise ResourceError(f"N = {N} exceeds enumeration budget {_MERTENS_MAX_N}")
    y = float(N) ** (1.0 / u)
    return sieve.sifted_squarefree_arrays(N, max(y, 1.0 + 1e-12))


def sifted_mobius_sum(N: int, u: float) -> float:
    """sum mu(k)/k over squarefree k <= N with P-(k) > N^(1/u), exact terms.

    Summed with math.fsum, so the result is the correctly rounded value of
    the exact sum of the floating-point terms.
    """
    ks, mus = _sifted_terms(N, u)
    return math.fsum((mus / ks).tolist())


def sifted_mu2_tail(N: int, u: float, tau: float) -> float:
    """sum mu(k)^2 / k over N^(1-tau) < k <= N with P-(k) > N^(1/u)."""
    if not 1.0 / math.log(N) < tau < 1.0:
        raise ArgumentError(f"tau must lie in (1/log N, 1), got {tau}")
    if tau * u >= 1.0:
        raise ArgumentError(f"need tau * u < 1, got tau * u = {tau * u}")
    ks, _ = _sifted_terms(N, u)
    cutoff = float(N) ** (1.0 - tau)
    ks = ks[ks > cutoff]
    return math.fsum((1.0 / ks).tolist())
