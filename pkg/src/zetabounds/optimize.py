"""Deterministic search over the free bound parameters (k, tau, q, t1, t2).

A coarse geometric grid scan seeds a coordinate-descent refinement with
geometrically shrinking multiplicative steps.  No randomness anywhere:
identical inputs give identical traces.  The crossover scan compares the
two bound families entirely in log space, so it stays exact for t far
beyond floating-point range (the comparison is well defined up to
t = 1e300 and beyond).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .bounds import (
    E3,
    E6,
    MID_TAIL_CONST,
    THM1_TAIL_CONST,
    THM1_TAIL_LOG,
    BoundCoefficients,
    BoundParams,
    theorem2_bound,
    theorem2_coeffs,
)

# Collected log t / constant coefficients of the direct-integration bound:
# 2 sqrt(t)(log t - 2) + (mid-tail + tail-remainder) linear forms.
_THM1_LOG_COEF = THM1_TAIL_LOG + 2.0  # 8.047
_THM1_CONST = THM1_TAIL_CONST + MID_TAIL_CONST  # 6.399

PARAM_ORDER = ("k", "tau", "q", "t1", "t2")

DEFAULT_RANGES: dict[str, tuple[float, float]] = {
    "k": (1.1, 8.0),
    "tau": (1.1, 8.0),
    "q": (2.0, 8.0),
    "t1": (E3, math.exp(8.0)),
    "t2": (E6, math.exp(10.0)),
}

_LOWER_LIMITS = {"k": 1.0, "tau": 1.0, "q": 2.0, "t1": E3, "t2": E6}


@dataclass(frozen=True)
class Objective:
    """What to minimize over the parameter box.

    kind "min_q1" minimizes the leading coefficient Q1; "min_bound_at_t"
    minimizes the full bound at a fixed t >= e^6; "min_weighted_q"
    minimizes a non-negative weighting of Q1..Q6.
    """

    kind: str
    t: float | None = None
    weights: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind == "min_q1":
            pass
        elif self.kind == "min_bound_at_t":
            if self.t is None or not (self.t >= E6 * (1 - 1e-6)):
                raise ValueError("min_bound_at_t needs t >= e^6")
        elif self.kind == "min_weighted_q":
            if (
                self.weights is None
                or len(self.weights) != 6
                or any(w < 0 for w in self.weights)
                or not any(w > 0 for w in self.weights)
            ):
                raise ValueError(
                    "min_weighted_q needs six non-negative weights, not all zero"
                )
        else:
            raise ValueError(f"unknown objective kind {self.kind!r}")

    @staticmethod
    def minimize_q1() -> "Objective":
        return Objective(kind="min_q1")

    @staticmethod
    def minimize_bound_at_t(t: float) -> "Objective":
        return Objective(kind="min_bound_at_t", t=t)

    @staticmethod
    def minimize_weighted_q(weights: tuple[float, ...]) -> "Objective":
        return Objective(kind="min_weighted_q", weights=tuple(weights))

    def evaluate(self, p: BoundParams) -> float:
        try:
            coeffs = theorem2_coeffs(p)
        except ValueError:
            return math.inf  # parameter corner outside the assembly's regime
        if self.kind == "min_q1":
            return coeffs.Q[0]
        if self.kind == "min_bound_at_t":
            assert self.t is not None
            return theorem2_bound(self.t, p, coeffs).total
        assert self.weights is not None
        return math.fsum(w * q for w, q in zip(self.weights, coeffs.Q))


@dataclass(frozen=True)
class OptResult:
    best: BoundParams
    objective_value: float
    trace: tuple[tuple[BoundParams, float], ...] = field(repr=False)
    evaluations: int = 0


def _validate_ranges(ranges: dict[str, tuple[float, float]]) -> None:
    for name in PARAM_ORDER:
        if name not in ranges:
            raise ValueError(f"missing range for parameter {name!r}")
        lo, hi = ranges[name]
        if not (lo <= hi):
            raise ValueError(f"empty feasible range for {name!r}")
        limit = _LOWER_LIMITS[name]
        strict = name in ("k", "tau")
        if (lo <= limit) if strict else (lo < limit * (1 - 1e-9)):
            raise ValueError(f"range for {name!r} violates its lower limit {limit}")


def _clamp(x: float, lo: float, hi: float) -> float:
    return min(max(x, lo), hi)


def _params_from_dict(vals: dict[str, float]) -> BoundParams:
    return BoundParams(**vals)


def optimize_params(
    obj: Objective,
    ranges: dict[str, tuple[float, float]] | None = None,
    budget: int = 600,
) -> OptResult:
    """Coarse grid scan followed by coordinate descent.

    The scan places up to 5 geometric points per axis (fewer under a tight
    budget) and walks them in lexicographic axis order, so grid ties
    resolve to the lexicographically smallest parameters.  Descent then
    cycles the axes in the fixed order (k, tau, q, t1, t2) with
    multiplicative steps that halve after each improvement-free cycle,
    stopping below 1e-3 relative step or when the budget runs out.
    """
    if budget < 10:
        raise ValueError("budget must be at least 10 evaluations")
    ranges = dict(DEFAULT_RANGES if ranges is None else ranges)
    _validate_ranges(ranges)

    evaluations = 0
    trace: list[tuple[BoundParams, float]] = []
    best_p: BoundParams | None = None
    best_v = math.inf

    def spend(vals: dict[str, float]) -> float:
        nonlocal evaluations
        evaluations += 1
        return obj.evaluate(_params_from_dict(vals))

    def consider(vals: dict[str, float]) -> bool:
        nonlocal best_p, best_v
        value = spend(vals)
        if value < best_v:
            best_v = value
            best_p = _params_from_dict(vals)
            trace.append((best_p, value))
            return True
        return False

    # Seed with the default parameter point (clamped into the box) so the
    # search can never end up worse than the documented defaults.
    seed = {
        name: _clamp(getattr(BoundParams(), name), *ranges[name])
        for name in PARAM_ORDER
    }
    consider(seed)

    per_axis = 5 if budget >= 5**5 else max(2, int(budget ** (1.0 / 5.0)))
    axes = []
    for name in PARAM_ORDER:
        lo, hi = ranges[name]
        if hi / lo < 1.0 + 1e-12:
            axes.append([lo])
        else:
            r = (hi / lo) ** (1.0 / (per_axis - 1))
            axes.append([lo * r**i for i in range(per_axis - 1)] + [hi])

    for combo in itertools.product(*axes):
        if evaluations >= budget:
            break
        consider(dict(zip(PARAM_ORDER, combo)))

    if best_p is None:  # pragma: no cover - seed always evaluates
        raise RuntimeError("no feasible point evaluated")

    # Coordinate descent with geometric step shrinking.
    step = 0.25
    current = {name: getattr(best_p, name) for name in PARAM_ORDER}
    while step >= 1e-3 and evaluations < budget:
        improved_cycle = False
        for name in PARAM_ORDER:
            if evaluations >= budget:
                break
            lo, hi = ranges[name]
            for factor in (1.0 + step, 1.0 / (1.0 + step)):
                if evaluations >= budget:
                    break
                candidate = dict(current)
                candidate[name] = _clamp(current[name] * factor, lo, hi)
                if candidate[name] == current[name]:
                    continue
                if consider(candidate):
                    current = candidate
                    improved_cycle = True
        if not improved_cycle:
            step *= 0.5

    return OptResult(
        best=best_p,
        objective_value=best_v,
        trace=tuple(trace),
        evaluations=evaluations,
    )


# ---------------------------------------------------------------------------
# Log-space bound comparison and crossover scan
# ---------------------------------------------------------------------------


def _logsumexp(logvals: list[float]) -> float:
    m = max(logvals)
    if m == -math.inf:
        return -math.inf
    return m + math.log(math.fsum(math.exp(v - m) for v in logvals))


def log_theorem1_bound(logt: float) -> float:
    """log of the direct-integration bound, computed without forming t.

    Valid for logt > 2 (all three grouped terms positive there)."""
    if not (logt > 2.0):
        raise ValueError("log-space form needs log t > 2")
    terms = [
        math.log(2.0) + 0.5 * logt + math.log(logt - 2.0),
        math.log(_THM1_LOG_COEF) + math.log(logt),
        math.log(_THM1_CONST),
    ]
    return _logsumexp(terms)


def log_theorem2_bound(logt: float, coeffs: BoundCoefficients) -> float:
    """log of the six-shape polynomial via max-term factoring."""
    if not (logt >= 6.0 * (1 - 1e-12)):
        raise ValueError("log-space form needs log t >= 6")
    Q = coeffs.Q
    loglog = math.log(logt)
    shapes = (
        (logt / 6.0, 2), (logt / 6.0, 1), (logt / 6.0, 0),
        (0.0, 2), (0.0, 1), (0.0, 0),
    )
    terms = [
        math.log(q) + base + p * loglog
        for q, (base, p) in zip(Q, shapes)
        if q > 0.0
    ]
    return _logsumexp(terms)


def crossover_scan(
    p: BoundParams,
    t_max: float | None = None,
    log_t_max: float | None = None,
    grid_ratio: float = 1.1,
) -> float | None:
    """Smallest t* in [e^6, t_max] where the six-shape bound drops below
    the direct-integration bound, or None if there is no crossover in
    range.

    The scan walks a geometric grid (ratio 1.1) in log space and refines
    the first sign change by bisection to relative width 1e-6.  Passing
    ``log_t_max`` instead of ``t_max`` allows scanning beyond float range;
    the returned value is then exp(log t*), which may overflow to inf for
    log t* > ~709, so callers working that far out should use
    ``crossover_scan_log``.
    """
    lmax = _resolve_log_tmax(t_max, log_t_max)
    lstar = crossover_scan_log(p, lmax, grid_ratio=grid_ratio)
    return None if lstar is None else math.exp(lstar)


def _resolve_log_tmax(t_max: float | None, log_t_max: float | None) -> float:
    if (t_max is None) == (log_t_max is None):
        raise ValueError("pass exactly one of t_max, log_t_max")
    lmax = math.log(t_max) if t_max is not None else float(log_t_max)
    if not (lmax >= 6.0):
        raise ValueError("t_max must be >= e^6")
    return lmax


def crossover_scan_log(
    p: BoundParams,
    log_t_max: float,
    grid_ratio: float = 1.1,
) -> float | None:
    """Log-space core of ``crossover_scan``: returns log t* (or None)."""
    if not (log_t_max >= 6.0):
        raise ValueError("log_t_max must be >= 6")
    coeffs = theorem2_coeffs(p)
    step = math.log(grid_ratio)

    def beats(logt: float) -> bool:
        return log_theorem2_bound(logt, coeffs) < log_theorem1_bound(logt)

    lo = 6.0
    if beats(lo):
        return lo  # crossover at (or before) the grid start
    logt = lo
    hit: float | None = None
    while logt < log_t_max:
        logt = min(logt + step, log_t_max)
        if beats(logt):
            hit = logt
            break
    if hit is None:
        return None
    left, right = hit - step, hit
    # invariant: thm2 >= thm1 at left, thm2 < thm1 at right
    while right - left > 1e-6:
        mid = 0.5 * (left + right)
        if beats(mid):
            right = mid
        else:
            left = mid
    return right
