"""Balanced friable functions, truncated Mobius decomposition, correlations.

The balanced function of the friability level N^(1/u) is

    h(n) = 1[P+(n) <= N^(1/u)] - rho(u),    1 <= n <= N,

and Mobius inversion over sifted squarefree k splits it exactly as
h = h_tau + r, where

    h_tau(n) = sum_{k <= N^(1-tau), P-(k) > N^(1/u)} mu(k) (1[k|n] - 1/k),
    r(n)     = sum_{k >  N^(1-tau), P-(k) > N^(1/u)} mu(k) 1[k|n]
               + sum_{k <= N^(1-tau), P-(k) > N^(1/u)} mu(k)/k  -  rho(u).

Correlation sums against explicit polynomial/bracket phase sequences
(the concrete low-step stand-ins used throughout) therefore split as
Sigma_1 + Sigma_2 with the identity holding by construction.

All sequences live on index range 0..N; every sum runs over 1 <= n <= N,
and index 0 is fixed to 0 for the Mobius-built sequences (every k divides
0, which would otherwise inject a meaningless O(#k) spike).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import dickman, forms, sieve
from .errors import ArgumentError, ResourceError
from .gowers import SequenceFn

GOLDEN_CONJUGATE = (math.sqrt(5.0) - 1.0) / 2.0   # badly approximable
SQRT2_MINUS_1 = math.sqrt(2.0) - 1.0

_SUBSET_POINT_BUDGET = 10**6
_HTAU_TERM_BUDGET = 10**7


# ---------------------------------------------------------------------------
# phase sequences
# ---------------------------------------------------------------------------


def _frac_mod1(theta: float, k: int) -> float:
    """Exact fractional part of theta * k for the IEEE value of theta.

    theta = a / 2^s exactly, so theta * k mod 1 = (a k mod 2^s) / 2^s with
    integer arithmetic; float rounding of huge theta * k never leaks in.
    """
    a, b = float(theta).as_integer_ratio()
    return (a * k % b) / b if b > 1 else 0.0


@dataclass(frozen=True)
class PhaseSequence:
    """Explicit phase sequence n -> e(phase(n)) of step 0, 1 or 2.

    kinds:
      constant                 phase = theta0
      linear(theta, beta)      phase = theta n + beta
      quadratic(t2, t1, t0)    phase = t2 n^2 + t1 n + t0
      bracket(theta, phi)      phase = theta n floor(phi n)

    ``lipschitz`` tags whether the sequence comes from a continuous phase
    (bracket phases do not).
    """

    kind: str
    params: tuple[float, ...]
    step: int
    lipschitz: bool

    @staticmethod
    def constant(theta0: float = 0.0) -> "PhaseSequence":
        return PhaseSequence("constant", (float(theta0),), 0, True)

    @staticmethod
    def linear(theta: float, beta: float = 0.0) -> "PhaseSequence":
        return PhaseSequence("linear", (float(theta), float(beta)), 1, True)

    @staticmethod
    def quadratic(theta2: float, theta1: float = 0.0, theta0: float = 0.0) -> "PhaseSequence":
        return PhaseSequence("quadratic", (float(theta2), float(theta1), float(theta0)), 2, True)

    @staticmethod
    def bracket(theta: float, phi: float) -> "PhaseSequence":
        return PhaseSequence("bracket", (float(theta), float(phi)), 2, False)

    def phase(self, n: int) -> float:
        """Fractional phase at n, computed exactly for the IEEE parameters."""
        if self.kind == "constant":
            return self.params[0] % 1.0
        if self.kind == "linear":
            theta, beta = self.params
            return (_frac_mod1(theta, n) + beta) % 1.0
        if self.kind == "quadratic":
            t2, t1, t0 = self.params
            return (_frac_mod1(t2, n * n) + _frac_mod1(t1, n) + t0) % 1.0
        theta, phi = self.params
        m = math.floor(Fraction(phi) * n) if n else 0
        return _frac_mod1(theta, n * m)

    def values(self, N: int) -> np.ndarray:
        """e(phase(n)) for n = 0..N as a complex array."""
        if N < 0:
            raise ArgumentError("N must be >= 0")
        if self.kind == "constant":
            return np.full(N + 1, np.exp(2j * np.pi * (self.params[0] % 1.0)))
        phases = np.fromiter(
            (self.phase(n) for n in range(N + 1)), dtype=float, count=N + 1
        )
        return np.exp(2j * np.pi * phases)

    def sequence(self, N: int) -> SequenceFn:
        return SequenceFn(self.values(N), meta=f"{self.kind}{self.params}")


PHASE_PRESETS = {
    "constant": PhaseSequence.constant(),
    "linear_golden": PhaseSequence.linear(GOLDEN_CONJUGATE),
    "linear_sqrt2": PhaseSequence.linear(SQRT2_MINUS_1),
    "quadratic_sqrt2": PhaseSequence.quadratic(SQRT2_MINUS_1),
    "bracket_golden": PhaseSequence.bracket(GOLDEN_CONJUGATE, GOLDEN_CONJUGATE),
}


def phase_preset(name: str) -> PhaseSequence:
    try:
        return PHASE_PRESETS[name]
    except KeyError:
        raise ArgumentError(
            f"unknown phase preset {name!r}; choose from {sorted(PHASE_PRESETS)}"
        ) from None


# ---------------------------------------------------------------------------
# balanced friable function
# ---------------------------------------------------------------------------


@dataclass
class BalancedFriable:
    """h(n) = 1[n is N^(1/u)-friable] - rho(u) on 0..N (0 is friable)."""

    N: int
    u: float
    rho_u: float
    values: np.ndarray

    def sequence(self) -> SequenceFn:
        return SequenceFn(self.values, meta=f"balanced_friable(N={self.N}, u={self.u})")


def balanced_friable(
    N: int,
    u: float,
    *,
    table: sieve.FactorSieve | None = None,
    rho_table: dickman.DickmanTable | None = None,
) -> BalancedFriable:
    """Exact friable indicator from the sieve minus rho(u) from the table."""
    if N < 2:
        raise ArgumentError(f"N must be >= 2, got {N}")
    if not 1.0 <= u <= 20.0:
        raise ArgumentError(f"u must lie in [1, 20], got {u}")
    if table is None:
        table = sieve.build_factor_sieve(0, N)
    elif not (table.lo == 0 and table.hi >= N):
        raise ArgumentError("factor table must cover [0, N]")
    y = float(N) ** (1.0 / u)
    rho_u = float(rho_table.eval(u) if rho_table is not None else dickman.rho(u))
    vals = table.friable_mask(y)[: N + 1].astype(np.float64) - rho_u
    return BalancedFriable(N=N, u=u, rho_u=rho_u, values=vals)


# ---------------------------------------------------------------------------
# truncated Mobius approximant and the correlation split
# ---------------------------------------------------------------------------


def default_tau(N: int, epsilon: float = 0.5) -> float:
    """(log log N)^(1+eps) / log N, clamped into the open interval
    (1/log N, 1/2)."""
    if N < 16:
        raise ArgumentError(f"N must be >= 16, got {N}")
    if not 0.0 < epsilon <= 1.0:
        raise ArgumentError(f"epsilon must lie in (0, 1], got {epsilon}")
    logn = math.log(N)
    raw = math.log(logn) ** (1.0 + epsilon) / logn
    lo = math.nextafter(1.0 / logn, math.inf)
    hi = math.nextafter(0.5, 0.0)
    return min(max(raw, lo), hi)


def _admissible_k(N: int, u: float, tau: float) -> tuple[np.ndarray, np.ndarray]:
    """Sifted squarefree k <= N^(1-tau) with their Mobius values."""
    if not 1.0 / math.log(N) < tau < 1.0:
        raise ArgumentError(f"tau must lie in (1/log N, 1), got {tau}")
    y = float(N) ** (1.0 / u)
    klim = int(math.floor(float(N) ** (1.0 - tau)))
    ks, mus = sieve.sifted_squarefree_arrays(max(klim, 1), max(y, 1.0 + 1e-12))
    return ks, mus


def h_tau(N: int, u: float, tau: float) -> SequenceFn:
    """The truncated Mobius approximant as a sequence on 0..N.

    Built by one sieve pass per admissible k (add mu(k) on multiples of k,
    subtract mu(k)/k everywhere), not by per-n divisor scans.  Index 0 is
    set to 0: all sums over h_tau run over 1 <= n <= N.
    """
    if N < 2:
        raise ArgumentError(f"N must be >= 2, got {N}")
    ks, mus = _admissible_k(N, u, tau)
    work = int(np.sum(N // ks))
    if work > _HTAU_TERM_BUDGET:
        raise ResourceError(
            f"h_tau sieve pass needs {work} updates, over budget {_HTAU_TERM_BUDGET}"
        )
    mean = math.fsum((mus / ks).tolist())
    out = np.full(N + 1, -mean, dtype=np.float64)
    for k, m in zip(ks.tolist(), mus.tolist()):
        out[::k] += m
    out[0] = 0.0
    return SequenceFn(out, meta=f"h_tau(N={N}, u={u}, tau={tau})")


def correlation(f, g) -> complex:
    """N^-1 sum_{1 <= n <= N} f(n) conj(g(n)).

    ``f`` may be a SequenceFn, BalancedFriable, or array on 0..N; ``g`` a
    PhaseSequence (evaluated on the same range) or a matching sequence.
    """
    fv = _sequence_values(f)
    N = fv.size - 1
    gv = g.values(N) if isinstance(g, PhaseSequence) else _sequence_values(g)
    if gv.size != fv.size:
        raise ArgumentError(f"domain mismatch: f on 0..{N}, g on 0..{gv.size - 1}")
    return complex(np.sum(fv[1:] * np.conj(gv[1:])) / N)


def _sequence_values(f) -> np.ndarray:
    if isinstance(f, BalancedFriable):
        return f.values.astype(np.complex128)
    if isinstance(f, SequenceFn):
        return f.values
    return np.ascontiguousarray(f, dtype=np.complex128)


@dataclass(frozen=True)
class SigmaSplit:
    """The two halves of sum h(n) conj(g(n)) under the Mobius truncation."""

    sigma1: complex
    sigma2: complex
    total: complex  # sum_{n<=N} h(n) conj(g(n)), computed directly

    @property
    def reconstruction_error(self) -> float:
        return abs(self.sigma1 + self.sigma2 - self.total)


def sigma_split(
    N: int,
    u: float,
    tau: float,
    g: PhaseSequence,
    *,
    table: sieve.FactorSieve | None = None,
) -> SigmaSplit:
    """Sigma_1 = sum h_tau(n) conj(g(n)) and Sigma_2 = the tail remainder.

    Sigma_2 collects the divisor sum over admissible k > N^(1-tau), plus
    the constant (truncated Mobius mean - rho(u)), so Sigma_1 + Sigma_2
    equals the full balanced correlation sum identically.
    """
    if table is None:
        table = sieve.build_factor_sieve(0, N)
    h = balanced_friable(N, u, table=table)
    ht = h_tau(N, u, tau)
    y = float(N) ** (1.0 / u)
    klim = int(math.floor(float(N) ** (1.0 - tau)))
    ks, mus = sieve.sifted_squarefree_arrays(N, max(y, 1.0 + 1e-12))
    tail_sel = ks > klim
    mean = math.fsum((mus[~tail_sel] / ks[~tail_sel]).tolist())
    rest = np.full(N + 1, mean - h.rho_u, dtype=np.float64)
    for k, m in zip(ks[tail_sel].tolist(), mus[tail_sel].tolist()):
        rest[::k] += m
    rest[0] = 0.0
    gv = g.values(N)
    cg = np.conj(gv[1:])
    sigma1 = complex(np.sum(ht.values[1:] * cg))
    sigma2 = complex(np.sum(rest[1:] * cg))
    total = complex(np.sum(h.values[1:].astype(np.complex128) * cg))
    return SigmaSplit(sigma1=sigma1, sigma2=sigma2, total=total)


# ---------------------------------------------------------------------------
# subset decomposition over a form system
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionReport:
    """Exact numeric audit of the balanced-function subset decomposition.

    lhs = |count - Vol prod rho| must be at most the sum of the 2^t - 1
    subset correlation magnitudes plus the lattice-vs-volume boundary term
    |#points - Vol| * prod rho (an O(N^(d-1)) quantity); ``slack`` reports
    the margin.
    """

    count: int
    lattice_points: int
    volume: float
    main_term: float
    lhs: float
    subset_sums: dict[tuple[int, ...], float]
    subset_bound: float
    boundary_term: float
    slack: float
    holds: bool


def subset_decomposition_bound(
    system: forms.FormSystem,
    body: forms.ConvexBody,
    N: int,
    u: Sequence[float],
) -> DecompositionReport:
    """Evaluate every subset correlation sum exactly and check the bound."""
    if len(u) != system.count:
        raise ArgumentError(f"expected {system.count} exponents, got {len(u)}")
    if any(ui <= 0 for ui in u):
        raise ArgumentError("friability exponents must be positive")
    npoints = forms.lattice_point_count(body)
    if npoints > _SUBSET_POINT_BUDGET:
        raise ResourceError(
            f"{npoints} lattice points exceed the subset budget {_SUBSET_POINT_BUDGET}"
        )
    if not forms.validate_domain(system, body, N):
        raise ArgumentError(f"some form leaves [0, {N}] on this body")
    table = forms.shared_factor_table(system, N)
    t = system.count
    ys = [float(N) ** (1.0 / ui) for ui in u]
    masks = [table.friable_mask(y) for y in ys]
    rhos = [float(dickman.rho(ui)) for ui in u]

    subsets = []
    for size in range(1, t + 1):
        subsets.extend(itertools.combinations(range(t), size))
    sums = {s: 0.0 for s in subsets}
    count = 0
    for vals in forms.iter_form_value_slabs(system, body):
        hs = [masks[i][vals[i]].astype(np.float64) - rhos[i] for i in range(t)]
        friable_all = masks[0][vals[0]]
        for i in range(1, t):
            friable_all = friable_all & masks[i][vals[i]]
        count += int(np.count_nonzero(friable_all))
        for s in subsets:
            prod = hs[s[0]]
            for i in s[1:]:
                prod = prod * hs[i]
            sums[s] += float(np.sum(prod))
    vol = forms.volume(body).value
    prod_rho = float(np.prod(rhos))
    main = vol * prod_rho
    lhs = abs(count - main)
    subset_bound = sum(abs(v) for v in sums.values())
    boundary = abs(npoints - vol) * prod_rho
    slack = subset_bound + boundary - lhs
    holds = lhs <= subset_bound + boundary + 1e-6 * max(1.0, abs(main))
    return DecompositionReport(
        count=count,
        lattice_points=npoints,
        volume=vol,
        main_term=main,
        lhs=lhs,
        subset_sums=sums,
        subset_bound=subset_bound,
        boundary_term=boundary,
        slack=slack,
        holds=holds,
    )
