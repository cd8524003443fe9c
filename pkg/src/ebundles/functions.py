"""Continuous strictly decreasing rank-frequency functions on [0, T].

A rank-frequency function Z maps a continuous source rank x in [0, T] to a
nonnegative item density Z(x), strictly decreasing in x.  This module provides
the concrete representations (piecewise linear from knots, plus three
parametric families), pointwise evaluation, exact or tolerance-bounded
inversion, cumulative integration I_Z(x) = int_0^x Z, running averages, and
the order comparisons used by the axiom checkers:

* ``compare``              pointwise dominance on a grid (>=, strict >, =)
* ``cumulative_dominates`` the partial order I_Z(x) <= I_Y(x) for all x

All types are immutable after construction and every operation is a pure
function, so values can be shared freely across threads.
"""

from __future__ import annotations

import bisect as _bisect
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Sequence, Union

import numpy as np

__all__ = [
    "InputError",
    "SingularityError",
    "ThetaRangeError",
    "Knot",
    "ThetaRange",
    "RankFunction",
    "PiecewiseLinearFn",
    "LinearFamily",
    "ZipfFamily",
    "PowerComplement",
    "ParametricFn",
    "DominanceVerdict",
    "CumulativeOrder",
    "CumulativeVerdict",
    "compare",
    "cumulative_dominates",
    "from_citations",
    "parse_citations",
    "function_from_spec",
    "function_to_spec",
]

EQUALITY_TOL = 1e-12


class InputError(ValueError):
    """Arguments violate an operation's contract (domain, shape, ordering)."""


class SingularityError(InputError):
    """Evaluation requested at a pole, e.g. a Zipf function at x = 0."""


class ThetaRangeError(InputError):
    """A theta value outside the admissible range of the given function."""


@dataclass(frozen=True)
class ThetaRange:
    """Admissible theta interval [lo, hi]; hi may be ``math.inf``.

    An unbounded range is open above: ``contains`` never admits theta = inf,
    so nothing is ever evaluated at the point at infinity.
    """

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if math.isnan(self.lo) or math.isnan(self.hi) or self.lo > self.hi:
            raise InputError(f"invalid theta range [{self.lo}, {self.hi}]")

    @property
    def unbounded_above(self) -> bool:
        return math.isinf(self.hi)

    def contains(self, theta: float, slack: float = EQUALITY_TOL) -> bool:
        if math.isinf(theta) or math.isnan(theta):
            return False
        if theta < self.lo - slack:
            return False
        if self.unbounded_above:
            return True
        return theta <= self.hi + slack

    def clamp(self, theta: float) -> float:
        """Snap a theta accepted by ``contains`` onto the closed interval."""
        hi = self.hi if not self.unbounded_above else theta
        return min(max(theta, self.lo), hi)


@dataclass(frozen=True)
class Knot:
    """A sample point (rank x, density y) of a piecewise linear function."""

    x: float
    y: float

    def __post_init__(self) -> None:
        for name, v in (("x", self.x), ("y", self.y)):
            if not math.isfinite(v):
                raise InputError(f"knot {name} must be finite, got {v!r}")
            if v < 0:
                raise InputError(f"knot {name} must be >= 0, got {v!r}")


class RankFunction:
    """Base class: continuous, strictly decreasing, nonnegative on [0, T].

    Subclasses must provide ``T``, scalar ``value`` and vectorized ``values``.
    Generic fallbacks are supplied for ``inverse`` (bisection on [0, T] to an
    absolute residual of 1e-12 * max(1, Z(0))) and ``cumulative`` (adaptive
    quadrature, absolute tolerance 1e-9); every shipped subclass overrides
    both with an exact or closed-form routine.
    """

    T: float
    unbounded_at_origin: bool = False

    def value(self, x: float) -> float:
        raise NotImplementedError

    def values(self, xs: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, x: float) -> float:
        return self.value(x)

    def _check_domain(self, x: float) -> None:
        if math.isnan(x) or not (0.0 <= x <= self.T):
            raise InputError(f"x={x!r} outside domain [0, {self.T}]")

    def value_at_origin(self) -> float:
        """Z(0), or ``math.inf`` for functions unbounded at the origin."""
        if self.unbounded_at_origin:
            return math.inf
        return self.value(0.0)

    def is_positive_before_T(self) -> bool:
        """Whether Z(x) > 0 for every x in [0, T)."""
        return True

    def admissible_range(self) -> ThetaRange:
        """Theta values theta = Z(x) attained on the domain: [Z(T), Z(0)]."""
        return ThetaRange(self.value(self.T), self.value_at_origin())

    def inverse(self, theta: float) -> float:
        rng = self.admissible_range()
        if not rng.contains(theta):
            raise ThetaRangeError(
                f"theta={theta!r} outside admissible range [{rng.lo}, {rng.hi}]"
            )
        theta = rng.clamp(theta)
        abs_tol = 1e-12 * max(1.0, self.value_at_origin())
        lo, hi = 0.0, self.T  # value(lo) >= theta >= value(hi)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            v = self.value(mid)
            if abs(v - theta) <= abs_tol:
                return mid
            if v > theta:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def cumulative(self, x: float) -> float:
        self._check_domain(x)
        if x == 0.0:
            return 0.0
        from scipy.integrate import quad

        val, _err = quad(self.value, 0.0, x, epsabs=1e-9, epsrel=1e-12, limit=200)
        return val

    def cumulatives(self, xs: np.ndarray) -> np.ndarray:
        return np.array([self.cumulative(float(x)) for x in np.asarray(xs)])

    def average(self, x: float) -> float:
        """Running average (1/x) int_0^x Z; equals Z(0) at x = 0."""
        self._check_domain(x)
        if x == 0.0:
            if self.unbounded_at_origin:
                raise SingularityError("average undefined at x=0 for unbounded origin")
            return self.value(0.0)
        return self.cumulative(x) / x


@dataclass(frozen=True)
class PiecewiseLinearFn(RankFunction):
    """Strictly decreasing piecewise linear function given by its knots.

    Knots must start at x = 0, end at x = T > 0, be strictly increasing in x
    and strictly decreasing in y (exact comparison on the stored values).
    Evaluation interpolates linearly, inversion solves the containing segment
    exactly, and integration accumulates trapezoids, so these operations are
    exact up to float rounding.
    """

    knots: tuple[Knot, ...]

    def __post_init__(self) -> None:
        raw = tuple(
            k if isinstance(k, Knot) else Knot(float(k[0]), float(k[1]))
            for k in self.knots
        )
        object.__setattr__(self, "knots", raw)
        if len(raw) < 2:
            raise InputError("need at least two knots")
        if raw[0].x != 0.0:
            raise InputError(f"first knot must sit at x=0, got x={raw[0].x!r}")
        for a, b in zip(raw, raw[1:]):
            if b.x <= a.x:
                raise InputError(f"knot x values must strictly increase ({a.x} -> {b.x})")
            if b.y >= a.y:
                raise InputError(f"knot y values must strictly decrease ({a.y} -> {b.y})")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[float, float]]) -> "PiecewiseLinearFn":
        return cls(tuple(Knot(float(x), float(y)) for x, y in pairs))

    @property
    def T(self) -> float:
        return self.knots[-1].x

    @cached_property
    def _xs(self) -> tuple[float, ...]:
        return tuple(k.x for k in self.knots)

    @cached_property
    def _ys(self) -> tuple[float, ...]:
        return tuple(k.y for k in self.knots)

    @cached_property
    def _neg_ys(self) -> tuple[float, ...]:
        return tuple(-y for y in self._ys)

    @cached_property
    def _xs_arr(self) -> np.ndarray:
        return np.asarray(self._xs)

    @cached_property
    def _ys_arr(self) -> np.ndarray:
        return np.asarray(self._ys)

    @cached_property
    def _area_prefix(self) -> np.ndarray:
        """Trapezoid area accumulated up to each knot."""
        xs, ys = self._xs_arr, self._ys_arr
        seg = np.diff(xs) * (ys[:-1] + ys[1:]) * 0.5
        return np.concatenate(([0.0], np.cumsum(seg)))

    def is_positive_before_T(self) -> bool:
        return all(k.y > 0.0 for k in self.knots[:-1])

    def _segment(self, x: float) -> int:
        i = _bisect.bisect_right(self._xs, x)
        return min(max(i, 1), len(self._xs) - 1)

    def value(self, x: float) -> float:
        self._check_domain(x)
        i = self._segment(x)
        x0, x1 = self._xs[i - 1], self._xs[i]
        if x == x1:  # knot hits stay exact
            return self._ys[i]
        y0, y1 = self._ys[i - 1], self._ys[i]
        t = (x - x0) / (x1 - x0)
        return y0 + t * (y1 - y0)

    def values(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        if xs.size and (xs.min() < 0.0 or xs.max() > self.T):
            raise InputError("grid points outside domain")
        i = np.clip(np.searchsorted(self._xs_arr, xs, side="right"), 1, len(self.knots) - 1)
        x0, x1 = self._xs_arr[i - 1], self._xs_arr[i]
        y0, y1 = self._ys_arr[i - 1], self._ys_arr[i]
        t = (xs - x0) / (x1 - x0)
        return np.where(xs == x1, y1, y0 + t * (y1 - y0))

    def inverse(self, theta: float) -> float:
        rng = self.admissible_range()
        if not rng.contains(theta):
            raise ThetaRangeError(
                f"theta={theta!r} outside admissible range [{rng.lo}, {rng.hi}]"
            )
        theta = rng.clamp(theta)
        i = _bisect.bisect_left(self._neg_ys, -theta)
        i = min(max(i, 1), len(self._ys) - 1)
        y0, y1 = self._ys[i - 1], self._ys[i]
        x0, x1 = self._xs[i - 1], self._xs[i]
        return x0 + (y0 - theta) / (y0 - y1) * (x1 - x0)

    def cumulative(self, x: float) -> float:
        self._check_domain(x)
        i = self._segment(x)
        x0 = self._xs[i - 1]
        y0 = self._ys[i - 1]
        yx = self.value(x)
        return float(self._area_prefix[i - 1]) + (x - x0) * (y0 + yx) * 0.5

    def cumulatives(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        i = np.clip(np.searchsorted(self._xs_arr, xs, side="right"), 1, len(self.knots) - 1)
        x0 = self._xs_arr[i - 1]
        y0 = self._ys_arr[i - 1]
        yx = self.values(xs)
        return self._area_prefix[i - 1] + (xs - x0) * (y0 + yx) * 0.5


@dataclass(frozen=True)
class LinearFamily(RankFunction):
    """Z(x) = S * (1 - x / T): a straight line from (0, S) down to (T, 0)."""

    S: float
    T: float

    def __post_init__(self) -> None:
        if not (self.S > 0 and math.isfinite(self.S)):
            raise InputError(f"S must be positive and finite, got {self.S!r}")
        if not (self.T > 0 and math.isfinite(self.T)):
            raise InputError(f"T must be positive and finite, got {self.T!r}")

    def value(self, x: float) -> float:
        self._check_domain(x)
        return self.S * (1.0 - x / self.T)

    def values(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        return self.S * (1.0 - xs / self.T)

    def inverse(self, theta: float) -> float:
        rng = self.admissible_range()
        if not rng.contains(theta):
            raise ThetaRangeError(f"theta={theta!r} outside [0, {self.S}]")
        return self.T * (1.0 - rng.clamp(theta) / self.S)

    def cumulative(self, x: float) -> float:
        self._check_domain(x)
        return self.S * (x - x * x / (2.0 * self.T))

    def cumulatives(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        return self.S * (xs - xs * xs / (2.0 * self.T))


@dataclass(frozen=True)
class ZipfFamily(RankFunction):
    """Z(x) = (T / x) ** beta with 0 < beta < 1, unbounded at the origin.

    Pointwise evaluation at x = 0 raises ``SingularityError``; the cumulative
    integral is still finite and handled analytically:
    int_0^x (T/s)**beta ds = T**beta * x**(1-beta) / (1-beta).
    The admissible range is [Z(T), inf) = [1, inf), open above.
    """

    beta: float
    T: float
    unbounded_at_origin = True

    def __post_init__(self) -> None:
        if not (0.0 < self.beta < 1.0):
            raise InputError(f"beta must lie in (0, 1), got {self.beta!r}")
        if not (self.T > 0 and math.isfinite(self.T)):
            raise InputError(f"T must be positive and finite, got {self.T!r}")

    def value(self, x: float) -> float:
        self._check_domain(x)
        if x == 0.0:
            raise SingularityError("Zipf function diverges at x=0")
        return (self.T / x) ** self.beta

    def values(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        if xs.size and xs.min() <= 0.0:
            raise SingularityError("Zipf grid must stay strictly positive")
        return (self.T / xs) ** self.beta

    def admissible_range(self) -> ThetaRange:
        return ThetaRange(1.0, math.inf)

    def inverse(self, theta: float) -> float:
        if theta < 1.0 - EQUALITY_TOL or math.isinf(theta):
            raise ThetaRangeError(f"theta={theta!r} outside [1, inf)")
        return self.T * max(theta, 1.0) ** (-1.0 / self.beta)

    def cumulative(self, x: float) -> float:
        self._check_domain(x)
        return self.T**self.beta * x ** (1.0 - self.beta) / (1.0 - self.beta)

    def cumulatives(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        return self.T**self.beta * xs ** (1.0 - self.beta) / (1.0 - self.beta)


@dataclass(frozen=True)
class PowerComplement(RankFunction):
    """Z(x) = 1 - x**n on [0, 1] for a positive integer n."""

    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise InputError(f"n must be an integer >= 1, got {self.n!r}")

    @property
    def T(self) -> float:
        return 1.0

    def value(self, x: float) -> float:
        self._check_domain(x)
        return 1.0 - x**self.n

    def values(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        return 1.0 - xs**self.n

    def inverse(self, theta: float) -> float:
        rng = self.admissible_range()
        if not rng.contains(theta):
            raise ThetaRangeError(f"theta={theta!r} outside [0, 1]")
        return (1.0 - rng.clamp(theta)) ** (1.0 / self.n)

    def cumulative(self, x: float) -> float:
        self._check_domain(x)
        return x - x ** (self.n + 1) / (self.n + 1)

    def cumulatives(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        return xs - xs ** (self.n + 1) / (self.n + 1)


ParametricFn = Union[LinearFamily, ZipfFamily, PowerComplement]


# ---------------------------------------------------------------------------
# Order comparisons


def _common_T(f: RankFunction, g: RankFunction) -> float:
    if not math.isclose(f.T, g.T, rel_tol=1e-12, abs_tol=0.0):
        raise InputError(f"domain mismatch: T={f.T} vs T={g.T}")
    return f.T


def _grid(f: RankFunction, g: RankFunction, lo: float, hi: float, n: int) -> np.ndarray:
    xs = np.linspace(lo, hi, n)
    if xs[0] == 0.0 and (f.unbounded_at_origin or g.unbounded_at_origin):
        # cannot sample the pole itself; start half a step in
        xs = xs.copy()
        xs[0] = 0.5 * xs[1] if n > 1 else 0.5 * hi
    return xs


@dataclass(frozen=True)
class DominanceVerdict:
    """Grid-sampled dominance report for a pair (f, g) and prefix [0, a].

    ``geq_everywhere`` covers the full domain [0, T]; the strictness and
    equality verdicts cover [0, a] only.  Grid verdicts are sound for
    refutation (a witness is a real counterexample up to float noise) and
    heuristic for confirmation.
    """

    a: float
    grid_n: int
    geq_everywhere: bool
    geq_witness: float | None
    strict_on_prefix: bool
    min_gap: float
    strict_witness: float | None
    equal_on_prefix: bool
    max_deviation: float
    equal_witness: float | None


def compare(
    f: RankFunction,
    g: RankFunction,
    a: float | None = None,
    grid_n: int = 10_000,
) -> DominanceVerdict:
    """Check f >= g on [0, T], f > g on [0, a], and f = g on [0, a]."""
    T = _common_T(f, g)
    if a is None:
        a = T
    if not (0.0 < a <= T):
        raise InputError(f"prefix endpoint a={a!r} must lie in (0, T]")
    if grid_n < 2:
        raise InputError("grid_n must be >= 2")

    xs_full = _grid(f, g, 0.0, T, grid_n)
    diff_full = f.values(xs_full) - g.values(xs_full)
    i_min = int(np.argmin(diff_full))
    geq = bool(diff_full[i_min] >= -EQUALITY_TOL)

    xs_pre = _grid(f, g, 0.0, a, grid_n)
    diff_pre = f.values(xs_pre) - g.values(xs_pre)
    j_min = int(np.argmin(diff_pre))
    min_gap = float(diff_pre[j_min])
    strict = bool(min_gap > 0.0)
    j_max = int(np.argmax(np.abs(diff_pre)))
    max_dev = float(abs(diff_pre[j_max]))
    equal = bool(max_dev <= EQUALITY_TOL)

    return DominanceVerdict(
        a=a,
        grid_n=grid_n,
        geq_everywhere=geq,
        geq_witness=None if geq else float(xs_full[i_min]),
        strict_on_prefix=strict,
        min_gap=min_gap,
        strict_witness=None if strict else float(xs_pre[j_min]),
        equal_on_prefix=equal,
        max_deviation=max_dev,
        equal_witness=None if equal else float(xs_pre[j_max]),
    )


class CumulativeOrder(Enum):
    PRECEDES = "precedes"  # I_f <= I_g everywhere
    FOLLOWS = "follows"  # I_f >= I_g everywhere
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class CumulativeVerdict:
    order: CumulativeOrder
    min_diff: float  # extreme values of I_f - I_g over [0, T]
    max_diff: float
    witness_min: float
    witness_max: float


def _pwl_cumulative_extrema(
    f: PiecewiseLinearFn, g: PiecewiseLinearFn
) -> tuple[float, float, float, float]:
    """Exact extrema of d(x) = I_f(x) - I_g(x) for piecewise linear inputs.

    On each merged segment both functions are linear, so d is quadratic with
    d' = f - g; extrema can only occur at segment ends or at the interior
    zero of f - g (vertex analysis).
    """
    xs = np.unique(np.concatenate([f._xs_arr, g._xs_arr]))
    fe = f.values(xs)
    ge = g.values(xs)
    e = fe - ge
    d = np.empty_like(xs)
    d[0] = 0.0
    d[1:] = np.cumsum(np.diff(xs) * (e[:-1] + e[1:]) * 0.5)

    cand_x = list(xs)
    cand_d = list(d)
    for i in range(len(xs) - 1):
        eu, ev = e[i], e[i + 1]
        if eu * ev < 0.0:
            u, v = xs[i], xs[i + 1]
            x_star = u + eu * (v - u) / (eu - ev)
            cand_x.append(float(x_star))
            cand_d.append(float(d[i] + (x_star - u) * eu * 0.5))
    cand_d_arr = np.asarray(cand_d)
    i_min = int(np.argmin(cand_d_arr))
    i_max = int(np.argmax(cand_d_arr))
    return cand_d[i_min], cand_d[i_max], cand_x[i_min], cand_x[i_max]


def cumulative_dominates(
    f: RankFunction,
    g: RankFunction,
    grid_n: int = 10_000,
    tol: float = EQUALITY_TOL,
) -> CumulativeVerdict:
    """Order f and g by their cumulative integrals over the shared domain.

    Piecewise linear pairs get an exact verdict via quadratic vertex analysis
    on the merged knot grid; anything parametric falls back to a grid of
    ``grid_n`` closed-form cumulative evaluations.
    """
    T = _common_T(f, g)
    if isinstance(f, PiecewiseLinearFn) and isinstance(g, PiecewiseLinearFn):
        dmin, dmax, wmin, wmax = _pwl_cumulative_extrema(f, g)
    else:
        xs = np.linspace(0.0, T, grid_n)
        d = f.cumulatives(xs) - g.cumulatives(xs)
        i_min, i_max = int(np.argmin(d)), int(np.argmax(d))
        dmin, dmax = float(d[i_min]), float(d[i_max])
        wmin, wmax = float(xs[i_min]), float(xs[i_max])

    scale = max(1.0, abs(dmin), abs(dmax))
    below = dmin >= -tol * scale
    above = dmax <= tol * scale
    if below and above:
        order = CumulativeOrder.EQUAL
    elif above:
        order = CumulativeOrder.PRECEDES
    elif below:
        order = CumulativeOrder.FOLLOWS
    else:
        order = CumulativeOrder.INCOMPARABLE
    return CumulativeVerdict(order, dmin, dmax, wmin, wmax)


# ---------------------------------------------------------------------------
# Discrete citation data


def from_citations(counts: Sequence[float]) -> PiecewiseLinearFn:
    """Continuize a citation vector into a strictly decreasing knot list.

    Counts are sorted weakly decreasing (sorting is applied if needed),
    trailing zeros are dropped, and the k positive values become knots
    (i, c_{i+1}) for i = 0..k-1 with a terminal knot (k, 0), so T = k.  Tied
    runs are broken by subtracting j*eps from the j-th member of each run,
    eps = 1e-9 * max(counts), which keeps the knots strictly decreasing
    while preserving the total citation count to within rounding.  When the
    nominal eps would overshoot the gap to the next distinct value (extreme
    dynamic range in the counts), it is shrunk to half that gap spread over
    the run, so the output is always a valid rank function.
    """
    vals = [float(c) for c in counts]
    if not vals:
        raise InputError("empty citation list")
    for c in vals:
        if math.isnan(c) or c < 0:
            raise InputError(f"citation counts must be >= 0, got {c!r}")
    vals.sort(reverse=True)
    positive = [c for c in vals if c > 0.0]
    if not positive:
        raise InputError("all-zero citation vector has no rank function")

    eps = 1e-9 * positive[0]
    adjusted: list[float] = []
    i = 0
    while i < len(positive):
        j = i
        while j < len(positive) and positive[j] == positive[i]:
            j += 1
        run_len = j - i
        v = positive[i]
        nxt = positive[j] if j < len(positive) else 0.0
        run_eps = min(eps, (v - nxt) / (2.0 * run_len))
        adjusted.extend(v - k * run_eps for k in range(run_len))
        i = j

    knots = [(float(i), y) for i, y in enumerate(adjusted)]
    knots.append((float(len(adjusted)), 0.0))
    return PiecewiseLinearFn.from_pairs(knots)


def parse_citations(text: str) -> list[float]:
    """Parse one nonnegative count per line; blank lines are skipped."""
    out: list[float] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        try:
            v = float(stripped)
        except ValueError:
            raise InputError(f"line {lineno}: not a number: {stripped!r}") from None
        if math.isnan(v) or v < 0:
            raise InputError(f"line {lineno}: citation count must be >= 0, got {v}")
        out.append(v)
    if not out:
        raise InputError("no citation values found")
    return out


# ---------------------------------------------------------------------------
# Function spec (JSON-structured) round trip


def function_from_spec(spec: dict) -> RankFunction:
    """Build a rank function from its JSON-style mapping."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise InputError("function spec must be a mapping with a 'type' key")
    kind = spec["type"]
    try:
        if kind == "piecewise_linear":
            fn = PiecewiseLinearFn.from_pairs([(p[0], p[1]) for p in spec["knots"]])
            if "T" in spec and not math.isclose(float(spec["T"]), fn.T, rel_tol=1e-12):
                raise InputError(f"spec T={spec['T']} disagrees with last knot x={fn.T}")
            return fn
        if kind == "linear":
            return LinearFamily(S=float(spec["S"]), T=float(spec["T"]))
        if kind == "zipf":
            return ZipfFamily(beta=float(spec["beta"]), T=float(spec["T"]))
        if kind == "power_complement":
            return PowerComplement(n=int(spec["n"]))
    except KeyError as exc:
        raise InputError(f"function spec missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed function spec: {exc}") from None
    raise InputError(f"unknown function type {kind!r}")


def function_to_spec(f: RankFunction) -> dict:
    if isinstance(f, PiecewiseLinearFn):
        return {
            "type": "piecewise_linear",
            "T": f.T,
            "knots": [[k.x, k.y] for k in f.knots],
        }
    if isinstance(f, LinearFamily):
        return {"type": "linear", "S": f.S, "T": f.T}
    if isinstance(f, ZipfFamily):
        return {"type": "zipf", "beta": f.beta, "T": f.T}
    if isinstance(f, PowerComplement):
        return {"type": "power_complement", "n": f.n}
    raise InputError(f"no spec form for {type(f).__name__}")
