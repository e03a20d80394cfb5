"""Affine-linear form systems over convex bodies, and exact friable counts.

The headline quantity is the number of lattice points n of a convex body
K inside [-N, N]^d whose form values F_1(n), ..., F_t(n) are all friable
with per-form bounds N^(1/u_i), compared against Vol(K) * prod rho(u_i).

Geometry is exact: boxes and H-polytopes (A x <= b) carry Fraction
entries, membership and slab bounds use rational arithmetic only, and
lattice enumeration walks coordinate slabs obtained by Fourier-Motzkin
elimination.  Friability lookups come from one shared factor table over
[0, (d L + 1) N].
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from . import dickman, sieve
from ._parallel import chunk_ranges, ordered_map
from .errors import ArgumentError, PreconditionError

_INT64_MAX = 2**63 - 1


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineForm:
    """Integer affine-linear form  x -> <coeffs, x> + constant."""

    coeffs: tuple[int, ...]
    constant: int = 0

    def __post_init__(self):
        if not self.coeffs or all(c == 0 for c in self.coeffs):
            raise ArgumentError("an affine form needs a nonzero coefficient vector")

    @property
    def dimension(self) -> int:
        return len(self.coeffs)

    def __call__(self, point: Sequence[int]) -> int:
        return evaluate(self, point)

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            parts.append(f"{sign}{'' if mag == 1 else mag}x{j + 1}")
        if self.constant:
            parts.append(f"{'+' if self.constant > 0 and parts else ''}{self.constant}")
        return "".join(parts) or "0"


def evaluate(form: AffineForm, point: Sequence[int]) -> int:
    """Exact form value at an integer point; rejects results beyond 64 bits."""
    if len(point) != form.dimension:
        raise ArgumentError(
            f"point has {len(point)} coordinates, form expects {form.dimension}"
        )
    value = form.constant + sum(c * int(x) for c, x in zip(form.coeffs, point))
    if abs(value) > _INT64_MAX:
        raise OverflowError(f"form value {value} exceeds 64-bit range")
    return value


@dataclass(frozen=True)
class FormSystem:
    """A system of t affine-linear forms over d shared variables."""

    forms: tuple[AffineForm, ...]

    def __post_init__(self):
        if not self.forms:
            raise ArgumentError("a form system needs at least one form")
        dims = {f.dimension for f in self.forms}
        if len(dims) != 1:
            raise ArgumentError(f"forms mix dimensions {sorted(dims)}")

    @property
    def dimension(self) -> int:
        return self.forms[0].dimension

    @property
    def count(self) -> int:
        return len(self.forms)

    @property
    def coefficient_bound(self) -> int:
        """L = max absolute non-constant coefficient across the system."""
        return max(abs(c) for f in self.forms for c in f.coeffs)


def check_pairwise_affine_independence(system: FormSystem) -> bool:
    """True iff no two coefficient vectors are rationally parallel.

    Constants are irrelevant: F_j = a F_i + b over Q exactly when the
    non-constant coefficient vectors are parallel.
    """
    vecs = [f.coeffs for f in system.forms]
    d = system.dimension
    for v, w in itertools.combinations(vecs, 2):
        # nonzero vectors are parallel iff every 2x2 minor vanishes
        if all(v[a] * w[b] == v[b] * w[a] for a in range(d) for b in range(a + 1, d)):
            return False
    return True


def parse_form(text: str, dimension: int | None = None) -> AffineForm:
    """Parse expressions like ``2x1+3x2-1`` or ``x1 - x2``."""
    s = text.replace(" ", "").lower()
    if not s:
        raise ArgumentError("empty form expression")
    tokens = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur:
            tokens.append(cur)
            cur = ch
        else:
            cur += ch
    tokens.append(cur)
    terms: dict[int, int] = {}
    constant = 0
    maxvar = 0
    for tok in tokens:
        body = tok.lstrip("+-")
        sign = -1 if tok.startswith("-") else 1
        if "x" in body:
            coef_s, _, idx_s = body.partition("x")
            try:
                idx = int(idx_s)
                coef = int(coef_s) if coef_s else 1
            except ValueError as exc:
                raise ArgumentError(f"cannot parse term {tok!r} in {text!r}") from exc
            if idx < 1:
                raise ArgumentError(f"variable index must be >= 1 in {tok!r}")
            terms[idx - 1] = terms.get(idx - 1, 0) + sign * coef
            maxvar = max(maxvar, idx)
        else:
            try:
                constant += sign * int(body)
            except ValueError as exc:
                raise ArgumentError(f"cannot parse term {tok!r} in {text!r}") from exc
    d = dimension if dimension is not None else maxvar
    if maxvar > d:
        raise ArgumentError(f"form {text!r} uses x{maxvar} beyond dimension {d}")
    coeffs = tuple(terms.get(j, 0) for j in range(d))
    return AffineForm(coeffs, constant)


def parse_form_system(text: str) -> FormSystem:
    """Parse ``;``-separated forms, e.g. ``x1; x2; x1+x2``."""
    parts = [p for p in (q.strip() for q in text.split(";")) if p]
    if not parts:
        raise ArgumentError("empty form system")
    dimension = 0
    for p in parts:
        f = parse_form(p)
        dimension = max(dimension, f.dimension)
    return FormSystem(tuple(parse_form(p, dimension) for p in parts))


# ---------------------------------------------------------------------------
# convex bodies
# ---------------------------------------------------------------------------

_Row = tuple[tuple[Fraction, ...], Fraction]  # <coeffs, x> <= rhs


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class ConvexBody:
    """Axis-aligned box or H-polytope {x : A x <= b} with rational data."""

    def __init__(self, kind: str, *, bounds=None, rows=None):
        self.kind = kind
        if kind == "box":
            self.bounds: tuple[tuple[Fraction, Fraction], ...] = bounds
            for lo, hi in bounds:
                if lo > hi:
                    raise ArgumentError(f"box bound {lo} > {hi}")
        elif kind == "hpoly":
            self.rows: tuple[_Row, ...] = rows
            if not rows:
                raise ArgumentError("an H-polytope needs at least one constraint")
        else:
            raise ArgumentError(f"unknown body kind {kind!r}")
        self._levels: list[list[_Row]] | None = None
        self._empty: bool | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def box(bounds: Iterable[tuple]) -> "ConvexBody":
        bs = tuple((_as_fraction(lo), _as_fraction(hi)) for lo, hi in bounds)
        if not bs:
            raise ArgumentError("a box needs at least one coordinate")
        return ConvexBody("box", bounds=bs)

    @staticmethod
    def halfspaces(A: Iterable[Iterable], b: Iterable) -> "ConvexBody":
        rows = tuple(
            (tuple(_as_fraction(c) for c in row), _as_fraction(rhs))
            for row, rhs in zip(A, b)
        )
        dims = {len(r[0]) for r in rows}
        if len(dims) != 1:
            raise ArgumentError("constraint rows mix dimensions")
        return ConvexBody("hpoly", rows=rows)

    @staticmethod
    def simplex(dimension: int, lower, total) -> "ConvexBody":
        """{x : x_j >= lower for all j, sum x_j <= total}."""
        lo, tot = _as_fraction(lower), _as_fraction(total)
        A = [[Fraction(0)] * dimension for _ in range(dimension)]
        for j in range(dimension):
            A[j][j] = Fraction(-1)
        A.append([Fraction(1)] * dimension)
        b = [-lo] * dimension + [tot]
        return ConvexBody.halfspaces(A, b)

    # -- basics ------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self.bounds) if self.kind == "box" else len(self.rows[0][0])

    def contains(self, point: Sequence) -> bool:
        pt = [_as_fraction(x) for x in point]
        if len(pt) != self.dimension:
            raise ArgumentError("point dimension mismatch")
        if self.kind == "box":
            return all(lo <= x <= hi for (lo, hi), x in zip(self.bounds, pt))
        return all(
            sum(c * x for c, x in zip(coeffs, pt)) <= rhs for coeffs, rhs in self.rows
        )

    def translate(self, v: Sequence[int]) -> "ConvexBody":
        """The body shifted by the integer vector v."""
        vv = [_as_fraction(x) for x in v]
        if self.kind == "box":
            return ConvexBody.box(
                [(lo + s, hi + s) for (lo, hi), s in zip(self.bounds, vv)]
            )
        rows = [
            (coeffs, rhs + sum(c * s for c, s in zip(coeffs, vv)))
            for coeffs, rhs in self.rows
        ]
        return ConvexBody.halfspaces([r[0] for r in rows], [r[1] for r in rows])

    # -- Fourier-Motzkin levels ---------------------------------------------

    def _elimination_levels(self) -> list[list[_Row]]:
        """levels[k] constrains (x_1..x_k); levels[d] is the full system.

        Built by Fourier-Motzkin elimination of the last variable, repeated.
        Raises ArgumentError when some variable lacks a two-sided bound
        (unbounded polytope); detected infeasibility is recorded in
        self._empty instead.  Boxes never come through here.
        """
        if self._levels is not None:
            return self._levels
        d = self.dimension
        empty = False
        current: list[_Row] = []
        for r in self.rows:
            nr = self._normalize_row(r)
            if all(c == 0 for c in nr[0]):
                if nr[1] < 0:
                    empty = True
                continue
            current.append(nr)
        levels: list[list[_Row]] = [[] for _ in range(d + 1)]
        levels[d] = current
        for v in range(d - 1, 0, -1):
            pos = [r for r in current if r[0][v] > 0]
            neg = [r for r in current if r[0][v] < 0]
            zero = [r for r in current if r[0][v] == 0]
            if not empty and (not pos or not neg):
                raise ArgumentError(f"polytope is unbounded in x{v + 1}")
            combined = list(zero)
            for p in pos:
                for q in neg:
                    a = p[0][v]
                    bq = -q[0][v]
                    coeffs = tuple(bq * cp + a * cq for cp, cq in zip(p[0], q[0]))
                    rhs = bq * p[1] + a * q[1]
                    if all(c == 0 for c in coeffs):
                        if rhs < 0:
                            empty = True
                        continue
                    combined.append(self._normalize_row((coeffs, rhs)))
            nxt: dict[tuple, Fraction] = {}
            for coeffs, rhs in combined:
                if coeffs not in nxt or rhs < nxt[coeffs]:
                    nxt[coeffs] = rhs
            current = list(nxt.items())
            levels[v] = current
        top = levels[1] if d >= 1 else []
        if not empty:
            if not any(r[0][0] > 0 for r in top) or not any(r[0][0] < 0 for r in top):
                raise ArgumentError("polytope is unbounded in x1")
        self._levels = levels
        self._empty = empty
        return levels

    @staticmethod
    def _normalize_row(row: _Row) -> _Row:
        coeffs, rhs = row
        scale = max(abs(c) for c in coeffs) or Fraction(1)
        return (tuple(c / scale for c in coeffs), rhs / scale)

    def _slab_interval(
        self, level: int, prefix: Sequence[int]
    ) -> tuple[Fraction, Fraction] | None:
        """Rational range of x_level given x_1..x_{level-1} = prefix, or None."""
        if self.kind == "box":
            return self.bounds[level - 1]
        rows = self._elimination_levels()[level]
        v = level - 1
        lo: Fraction | None = None
        hi: Fraction | None = None
        for coeffs, rhs in rows:
            c = coeffs[v]
            if c == 0:
                if sum(cc * p for cc, p in zip(coeffs[:v], prefix)) > rhs:
                    return None
                continue
            bound = (rhs - sum(cc * p for cc, p in zip(coeffs[:v], prefix))) / c
            if c > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is None or hi is None or lo > hi:
            return None
        return lo, hi

    def integer_slab(self, level: int, prefix: Sequence[int]) -> tuple[int, int] | None:
        """Integer range [lo, hi] of x_level over the slab, or None if empty."""
        iv = self._slab_interval(level, prefix)
        if iv is None:
            return None
        lo = math.ceil(iv[0])
        hi = math.floor(iv[1])
        return (lo, hi) if lo <= hi else None

    def is_empty(self) -> bool:
        """No interior test: True iff the continuous body is infeasible."""
        if self.kind == "box":
            return False  # box constructor enforces lo <= hi
        self._elimination_levels()
        if self._empty:
            return True
        return self._slab_interval(1, ()) is None

    def coordinate_bounds(self) -> list[tuple[Fraction, Fraction]]:
        """Exact [min, max] of each coordinate over the body (bounded check)."""
        if self.kind == "box":
            return list(self.bounds)
        self._elimination_levels()
        if self.is_empty():
            raise ArgumentError("empty body has no coordinate bounds")
        verts = self._vertices()
        if not verts:
            raise ArgumentError("degenerate polytope: no vertices found")
        d = self.dimension
        return [
            (min(v[j] for v in verts), max(v[j] for v in verts)) for j in range(d)
        ]

    # -- vertices (bounded polytopes only) -----------------------------------

    def _vertices(self) -> list[tuple[Fraction, ...]]:
        self._elimination_levels()  # raises if unbounded
        d = self.dimension
        verts: set[tuple[Fraction, ...]] = set()
        for subset in itertools.combinations(range(len(self.rows)), d):
            mat = [list(self.rows[i][0]) for i in subset]
            rhs = [self.rows[i][1] for i in subset]
            sol = _solve_square(mat, rhs)
            if sol is None:
                continue
            if self.contains(sol):
                verts.add(tuple(sol))
        return sorted(verts)


def _solve_square(mat: list[list[Fraction]], rhs: list[Fraction]):
    """Solve a square rational system by Gaussian elimination; None if singular."""
    d = len(rhs)
    m = [row[:] + [r] for row, r in zip(mat, rhs)]
    for col in range(d):
        pivot = next((r for r in range(col, d) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(d):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [m[r][d] for r in range(d)]


# ---------------------------------------------------------------------------
# geometry operations
# ---------------------------------------------------------------------------


def _functional_range(body: ConvexBody, coeffs: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Exact [min, max] of <coeffs, x> over a bounded nonempty body."""
    if body.kind == "box":
        lo = hi = Fraction(0)
        for c, (a, b) in zip(coeffs, body.bounds):
            c = _as_fraction(c)
            lo += c * (a if c >= 0 else b)
            hi += c * (b if c >= 0 else a)
        return lo, hi
    verts = body._vertices()
    if not verts:
        raise ArgumentError("cannot bound a functional over an empty polytope")
    vals = [sum(_as_fraction(c) * x for c, x in zip(coeffs, v)) for v in verts]
    return min(vals), max(vals)


def validate_domain(system: FormSystem, body: ConvexBody, N: int) -> bool:
    """True iff every form maps the body into [0, N].

    Precondition body subset [-N, N]^d is checked exactly and raises
    PreconditionError on violation; an unbounded polytope raises
    ArgumentError.
    """
    if N < 1:
        raise ArgumentError(f"N must be >= 1, got {N}")
    if system.dimension != body.dimension:
        raise ArgumentError("system and body dimensions differ")
    if body.kind == "hpoly" and body.is_empty():
        return True  # vacuous: no points to violate the range
    for j, (lo, hi) in enumerate(body.coordinate_bounds()):
        if lo < -N or hi > N:
            raise PreconditionError(
                f"body coordinate x{j + 1} range [{lo}, {hi}] leaves [-{N}, {N}]"
            )
    for f in system.forms:
        lo, hi = _functional_range(body, f.coeffs)
        lo += f.constant
        hi += f.constant
        if lo < 0 or hi > N:
            return False
    return True


class VolumeResult(NamedTuple):
    value: float
    exact: bool


def volume(body: ConvexBody, *, max_grid_points: int = 20_000_000) -> VolumeResult:
    """Continuous volume: exact for boxes and simplices, grid surrogate otherwise.

    The surrogate counts K intersected with (eps Z)^d starting at eps =
    (shortest bounding-box edge)/8 and halving until the estimate moves by
    <= 0.1% (flagged approximate).
    """
    if body.kind == "box":
        prod = Fraction(1)
        for lo, hi in body.bounds:
            prod *= hi - lo
        return VolumeResult(float(prod), True)
    if body.is_empty():
        return VolumeResult(0.0, True)
    simplex_vol = _simplex_volume(body)
    if simplex_vol is not None:
        return VolumeResult(float(simplex_vol), True)

    bounds = body.coordinate_bounds()
    edge = min(hi - lo for lo, hi in bounds)
    if edge == 0:
        return VolumeResult(0.0, True)
    d = body.dimension
    eps = edge / 8
    est = None
    while True:
        scaled = ConvexBody.halfspaces(
            [r[0] for r in body.rows], [r[1] / eps for r in body.rows]
        )
        cnt = lattice_point_count(scaled)
        new = float(cnt) * float(eps) ** d
        if est is not None and cnt > 0 and abs(new - est) <= 1e-3 * new:
            return VolumeResult(new, False)
        est = new
        if cnt * 2**d > max_grid_points:
            return VolumeResult(est, False)
        eps = eps / 2


def _simplex_volume(body: ConvexBody) -> Fraction | None:
    """Exact volume when the H-polytope is a simplex with d+1 facets."""
    d = body.dimension
    if len(body.rows) != d + 1:
        return None
    verts = []
    for subset in itertools.combinations(range(d + 1), d):
        mat = [list(body.rows[i][0]) for i in subset]
        rhs = [body.rows[i][1] for i in subset]
        sol = _solve_square(mat, rhs)
        if sol is None or not body.contains(sol):
            return None
        verts.append(tuple(sol))
    if len(set(verts)) != d + 1:
        return None
    v0 = verts[0]
    mat = [[v[j] - v0[j] for j in range(d)] for v in verts[1:]]
    det = _determinant(mat)
    return abs(det) / math.factorial(d)


def _determinant(mat: list[list[Fraction]]) -> Fraction:
    d = len(mat)
    m = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(d):
        pivot = next((r for r in range(col, d) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        pv = m[col][col]
        for r in range(col + 1, d):
            if m[r][col] != 0:
                factor = m[r][col] / pv
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


# ---------------------------------------------------------------------------
# lattice enumeration and counting
# ---------------------------------------------------------------------------


def _iter_slabs(body: ConvexBody, first: tuple[int, int] | None = None):
    """Yield (prefix, lo, hi): innermost-coordinate runs, lexicographic.

    ``first`` optionally restricts the first coordinate (thread chunking).
    """
    d = body.dimension
    if body.kind == "hpoly" and body.is_empty():
        return
    if d == 1:
        rng = body.integer_slab(1, ())
        if rng is not None:
            lo, hi = rng
            if first is not None:
                lo, hi = max(lo, first[0]), min(hi, first[1])
            if lo <= hi:
                yield (), lo, hi
        return

    def walk(prefix: tuple[int, ...], level: int):
        rng = body.integer_slab(level, prefix)
        if rng is None:
            return
        lo, hi = rng
        if level == 1 and first is not None:
            lo, hi = max(lo, first[0]), min(hi, first[1])
        if level == d:
            if lo <= hi:
                yield prefix, lo, hi
            return
        for x in range(lo, hi + 1):
            yield from walk(prefix + (x,), level + 1)

    yield from walk((), 1)


def enumerate_lattice_points(body: ConvexBody, N: int) -> Iterator[tuple[int, ...]]:
    """All integer points of the body, row-major by coordinate slabs."""
    if body.kind == "hpoly" and body.is_empty():
        return
    for j, (lo, hi) in enumerate(body.coordinate_bounds()):
        if lo < -N or hi > N:
            raise PreconditionError(
                f"body coordinate x{j + 1} range [{lo}, {hi}] leaves [-{N}, {N}]"
            )
    for prefix, lo, hi in _iter_slabs(body):
        for x in range(lo, hi + 1):
            yield prefix + (x,)


def lattice_point_count(body: ConvexBody) -> int:
    """Exact number of integer points (no [-N, N] restriction)."""
    return sum(hi - lo + 1 for _, lo, hi in _iter_slabs(body))


def _slab_form_values(
    system: FormSystem, prefix: tuple[int, ...], lo: int, hi: int
) -> list[np.ndarray]:
    """Per-form int64 value arrays along one innermost-coordinate run."""
    xs = np.arange(lo, hi + 1, dtype=np.int64)
    out = []
    for f in system.forms:
        base = f.constant + sum(c * p for c, p in zip(f.coeffs[:-1], prefix))
        a = f.coeffs[-1]
        out.append(a * xs + base if a else np.full(xs.shape, base, dtype=np.int64))
    return out


def iter_form_value_slabs(
    system: FormSystem, body: ConvexBody
) -> Iterator[list[np.ndarray]]:
    """Stream per-form value arrays slab by slab (deterministic order)."""
    for prefix, lo, hi in _iter_slabs(body):
        yield _slab_form_values(system, prefix, lo, hi)


def shared_factor_table(system: FormSystem, N: int, **kwargs) -> sieve.FactorSieve:
    """The factor table over [0, (d L + 1) N] that serves every form lookup."""
    limit = (system.dimension * system.coefficient_bound + 1) * N
    return sieve.build_factor_sieve(0, limit, **kwargs)


def count_friable_values(
    system: FormSystem,
    body: ConvexBody,
    N: int,
    u: Sequence[float],
    *,
    threads: int = 1,
    table: sieve.FactorSieve | None = None,
) -> int:
    """#{n in K cap Z^d : P+(F_i(n)) <= N^(1/u_i) for every i}, exact.

    Form values equal to 0 or 1 count as friable (P+ convention).
    """
    if len(u) != system.count:
        raise ArgumentError(f"expected {system.count} friability exponents, got {len(u)}")
    if any(ui <= 0 for ui in u):
        raise ArgumentError("friability exponents must be positive")
    if not check_pairwise_affine_independence(system):
        raise ArgumentError("two forms are affinely related")
    if not validate_domain(system, body, N):
        raise PreconditionError(f"some form leaves [0, {N}] on this body")
    if table is None:
        table = shared_factor_table(system, N)
    elif table.lo != 0 or table.hi < N:
        raise ArgumentError(f"factor table [{table.lo}, {table.hi}] must cover [0, {N}]")
    ys = [float(N) ** (1.0 / ui) for ui in u]
    masks: dict[float, np.ndarray] = {}
    for y in ys:
        if y not in masks:
            masks[y] = table.friable_mask(y)
    form_masks = [masks[y] for y in ys]

    def count_chunk(first: tuple[int, int]) -> int:
        total = 0
        for prefix, lo, hi in _iter_slabs(body, first):
            vals = _slab_form_values(system, prefix, lo, hi)
            ok = form_masks[0][vals[0]]
            for mask, v in zip(form_masks[1:], vals[1:]):
                ok &= mask[v]
            total += int(np.count_nonzero(ok))
        return total

    top = body.integer_slab(1, ())
    if top is None:
        return 0
    chunks = chunk_ranges(top[0], top[1], max(1, threads) * 4)
    return sum(ordered_map(count_chunk, chunks, threads))


def main_term(
    system: FormSystem,
    body: ConvexBody,
    N: int,
    u: Sequence[float],
    *,
    table: dickman.DickmanTable | None = None,
) -> float:
    """Vol(K) * prod_i rho(u_i)."""
    if len(u) != system.count:
        raise ArgumentError(f"expected {system.count} friability exponents, got {len(u)}")
    vol = volume(body).value
    evaluate_rho = table.eval if table is not None else dickman.rho
    prod = 1.0
    for ui in u:
        prod *= float(evaluate_rho(ui))
    return vol * prod


def conjecture_prediction(degrees: Sequence[int], u: float, N: int, d: int) -> float:
    """Independence-heuristic prediction N^d * prod_i rho(d_i * u)."""
    if not degrees:
        raise ArgumentError("need at least one degree")
    if list(degrees) != sorted(degrees, reverse=True) or degrees[-1] < 1:
        raise ArgumentError("degrees must satisfy d_1 >= ... >= d_t >= 1")
    prod = 1.0
    for deg in degrees:
        prod *= float(dickman.rho(deg * u))
    return float(N) ** d * prod
