"""Deterministic floating-point building blocks.

Compensated summation, Bernoulli numbers, and an adaptive quadrature
oracle able to cope with rapidly oscillating integrands.  Everything in
here is pure: same inputs, same bits, on any platform with IEEE-754
doubles.  All higher-level bound checks in this package lean on these
primitives, so each one carries an explicit error contract:

* ``compensated_sum``  -- absolute error <= 2 * eps * sum(|terms|)
* ``bernoulli_number`` -- exact rational recurrence, rounded once to float
* ``integrate_adaptive`` -- |value - integral| <= error_estimate <= tol
  whenever the subdivision cap was not hit.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

EPS = math.ulp(1.0)  # 2^-52


class Accumulator:
    """Neumaier-compensated running sum.

    Keeps a correction term alongside the running sum so that the final
    total is accurate to 2*eps*sum(|x|) regardless of cancellation.
    Adding the same values in the same order is bit-reproducible.
    """

    __slots__ = ("running_sum", "compensation")

    def __init__(self) -> None:
        self.running_sum = 0.0
        self.compensation = 0.0

    def add(self, value: float) -> None:
        if not math.isfinite(value):
            raise ValueError(f"non-finite term in compensated sum: {value!r}")
        t = self.running_sum + value
        if abs(self.running_sum) >= abs(value):
            self.compensation += (self.running_sum - t) + value
        else:
            self.compensation += (value - t) + self.running_sum
        self.running_sum = t

    @property
    def total(self) -> float:
        return self.running_sum + self.compensation


def compensated_sum(terms: Iterable[float]) -> float:
    """Sum ``terms`` in the given order with Neumaier compensation.

    Raises ValueError on non-finite input.  The empty sum is 0.0.
    """
    acc = Accumulator()
    for x in terms:
        acc.add(float(x))
    return acc.total


def compensated_complex_sum(values: np.ndarray) -> complex:
    """Exactly-rounded sum of a complex array (independent fsum per part).

    Used for the long Dirichlet-type sums where a Python-level loop would
    dominate the runtime; math.fsum gives the correctly rounded result,
    which is at least as accurate as the Neumaier loop.
    """
    arr = np.asarray(values, dtype=np.complex128)
    if arr.size and not np.isfinite(arr).all():
        raise ValueError("non-finite term in compensated sum")
    return complex(math.fsum(arr.real), math.fsum(arr.imag))


@lru_cache(maxsize=None)
def _bernoulli_exact(m: int) -> Fraction:
    # B_m by the defining recurrence sum_{k<=m} C(m+1,k) B_k = 0, exact
    # rationals throughout; cached because callers re-request small m often.
    table: list[Fraction] = [Fraction(1)]
    for n in range(1, m + 1):
        s = Fraction(0)
        for k in range(n):
            s += math.comb(n + 1, k) * table[k]
        table.append(-s / (n + 1))
    return table[m]


def bernoulli_number(m: int) -> float:
    """Bernoulli number B_m for even m with 2 <= m <= 60.

    Computed through the exact rational recurrence and rounded once, so
    the result is within 1 ulp of the true value.
    """
    if not isinstance(m, int) or m % 2 != 0 or not (2 <= m <= 60):
        raise ValueError(f"bernoulli_number requires even m in [2, 60], got {m!r}")
    return float(_bernoulli_exact(m))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float  # absolute
    subdivisions: int
    converged: bool = True

    def require_converged(self) -> "QuadratureResult":
        if not self.converged:
            raise ArithmeticError(
                "quadrature did not converge; result is unusable as an oracle"
            )
        return self


# Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (abscissae symmetric).
_GK_NODES = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_GK_WEIGHTS = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_G_WEIGHTS = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    """One Gauss-Kronrod 7-15 panel: (kronrod value, error estimate)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fk = []
    for x in _GK_NODES[:-1]:
        fk.append(f(mid - half * x))
        fk.append(f(mid + half * x))
    fc = f(mid)
    kron = _GK_WEIGHTS[-1] * fc
    gauss = _G_WEIGHTS[-1] * fc
    for i, x in enumerate(_GK_NODES[:-1]):
        pair = fk[2 * i] + fk[2 * i + 1]
        kron += _GK_WEIGHTS[i] * pair
        if i % 2 == 1:
            gauss += _G_WEIGHTS[i // 2] * pair
    kron *= half
    gauss *= half
    # Standard QUADPACK-style rescaling of the raw difference.
    diff = abs(kron - gauss)
    err = diff if diff == 0.0 else min(diff, diff * math.sqrt(diff / max(abs(kron), 1e-300)) + diff)
    return kron, max(err, abs(kron) * 50.0 * EPS)


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    *,
    min_wavelength: float | None = None,
    max_subdivisions: int = 4000,
) -> QuadratureResult:
    """Adaptive Gauss-Kronrod integration of ``f`` over [a, b].

    ``min_wavelength`` caps the width of the *initial* panels; callers
    integrating sin/cos phases must pass the shortest oscillation period
    so that no starting panel straddles many cycles (blind bisection can
    otherwise accept a spuriously converged panel).  Panels are then
    bisected worst-first until the summed error estimate falls below
    ``tol`` or the subdivision cap is hit, in which case the result is
    flagged ``converged=False`` and must not be used as an oracle.
    """
    if not (a < b):
        raise ValueError(f"integrate_adaptive requires a < b, got [{a}, {b}]")
    if not (tol > 0.0):
        raise ValueError("tol must be positive")

    width = b - a
    if min_wavelength is not None and min_wavelength > 0:
        n_init = max(1, min(2000, math.ceil(width / min_wavelength)))
    else:
        n_init = 1

    # heap entries: (-panel_error, seq, x0, x1, value, error)
    heap: list[tuple[float, int, float, float, float, float]] = []
    seq = 0
    subdivisions = 0
    for i in range(n_init):
        x0 = a + width * i / n_init
        x1 = a + width * (i + 1) / n_init if i + 1 < n_init else b
        val, err = _gk15(f, x0, x1)
        if not math.isfinite(val):
            raise ValueError(f"integrand not finite on [{x0}, {x1}]")
        heapq.heappush(heap, (-err, seq, x0, x1, val, err))
        seq += 1

    # Running totals are tracked incrementally while refining; the final
    # reported value and error are recomputed with compensated summation
    # over the surviving panels in left-to-right order (deterministic).
    total_err = math.fsum(entry[5] for entry in heap)
    while total_err > tol and subdivisions < max_subdivisions:
        _, _, x0, x1, val, err = heapq.heappop(heap)
        xm = 0.5 * (x0 + x1)
        if xm <= x0 or xm >= x1:
            # Panel at float resolution: keep it but stop refining it.
            heapq.heappush(heap, (0.0, seq, x0, x1, val, err))
            seq += 1
            break
        total_err -= err
        for lo, hi in ((x0, xm), (xm, x1)):
            v, e = _gk15(f, lo, hi)
            if not math.isfinite(v):
                raise ValueError(f"integrand not finite on [{lo}, {hi}]")
            heapq.heappush(heap, (-e, seq, lo, hi, v, e))
            seq += 1
            total_err += e
        subdivisions += 1

    panels = sorted((entry[2], entry[4], entry[5]) for entry in heap)
    total_val = compensated_sum(v for _, v, _ in panels)
    total_err = compensated_sum(e for _, _, e in panels)
    return QuadratureResult(
        value=total_val,
        error_estimate=total_err,
        subdivisions=subdivisions,
        converged=total_err <= tol,
    )


def geometric_grid(lo: float, hi: float, n: int) -> list[float]:
    """n geometrically spaced points from lo to hi inclusive (n >= 1)."""
    if n < 1:
        raise ValueError("need at least one grid point")
    if n == 1:
        return [lo]
    ratio = (hi / lo) ** (1.0 / (n - 1))
    pts = [lo * ratio**i for i in range(n)]
    pts[-1] = hi
    return pts
