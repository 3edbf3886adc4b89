"""Exact exponential / Dirichlet-type sums and the explicit estimate
machinery they are checked against.

Everything here comes in pairs: an exact, brute-force evaluator (the
oracle) and the closed-form estimate that is supposed to dominate it.
The verification harness sweeps the pairs; nothing in this module ever
assumes the estimates hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .numerics import compensated_complex_sum, compensated_sum

TWO_PI = 2.0 * math.pi

RANGE_GUARD = 10**8  # direct summation refuses longer ranges


@dataclass(frozen=True)
class PhaseFunction:
    """Phase f for sums of e^{2 pi i f(n)}.

    kind:
      * "log"       -- f(x) = -t log(x) / (2 pi), params = (t,), t > 0
      * "quadratic" -- f(x) = a x^2 + b x + c, params = (a, b, c)
      * "custom"    -- tabulated/callable phase; second derivative callable
                       optional (needed only by curvature-based estimates)
    """

    kind: str
    params: tuple[float, ...] = ()
    func: Callable[[float], float] | None = None
    second_derivative_func: Callable[[float], float] | None = None

    def __post_init__(self) -> None:
        if self.kind == "log":
            if len(self.params) != 1 or not self.params[0] > 0:
                raise ValueError("log phase needs params=(t,) with t > 0")
        elif self.kind == "quadratic":
            if len(self.params) != 3:
                raise ValueError("quadratic phase needs params=(a, b, c)")
        elif self.kind == "custom":
            if self.func is None:
                raise ValueError("custom phase needs a callable")
        else:
            raise ValueError(f"unknown phase kind {self.kind!r}")

    @staticmethod
    def log_phase(t: float) -> "PhaseFunction":
        return PhaseFunction(kind="log", params=(t,))

    @staticmethod
    def quadratic(a: float, b: float, c: float = 0.0) -> "PhaseFunction":
        return PhaseFunction(kind="quadratic", params=(a, b, c))

    @staticmethod
    def custom(
        func: Callable[[float], float],
        second_derivative: Callable[[float], float] | None = None,
    ) -> "PhaseFunction":
        return PhaseFunction(
            kind="custom", func=func, second_derivative_func=second_derivative
        )

    def __call__(self, x: float) -> float:
        if self.kind == "log":
            return -self.params[0] * math.log(x) / TWO_PI
        if self.kind == "quadratic":
            a, b, c = self.params
            return (a * x + b) * x + c
        assert self.func is not None
        return self.func(x)

    def values(self, x: np.ndarray) -> np.ndarray:
        if self.kind == "log":
            return -self.params[0] * np.log(x) / TWO_PI
        if self.kind == "quadratic":
            a, b, c = self.params
            return (a * x + b) * x + c
        assert self.func is not None
        return np.array([self.func(float(xi)) for xi in x])

    def second_derivative(self, x: float) -> float:
        if self.kind == "log":
            return self.params[0] / (TWO_PI * x * x)
        if self.kind == "quadratic":
            return 2.0 * self.params[0]
        if self.second_derivative_func is None:
            raise ValueError("custom phase has no second derivative attached")
        return self.second_derivative_func(x)


@dataclass(frozen=True)
class VdCParams:
    """Inputs of the curvature (second-derivative) sum estimate.

    Requires 1/W <= |f''| <= 1/V on the block, V < W, W > 1, L >= 0.
    """

    L: int
    V: float
    W: float

    def __post_init__(self) -> None:
        if self.L < 0:
            raise ValueError("block length must be >= 0")
        if not (self.V > 0):
            raise ValueError("V must be positive")
        if not (self.W > 1):
            raise ValueError("the estimate requires W > 1")
        if not (self.V < self.W):
            raise ValueError("need V < W")


def vdc_second_derivative_bound(p: VdCParams) -> float:
    """(1/5)(L/V + 1)(8 sqrt(W) + 15)."""
    return 0.2 * (p.L / p.V + 1.0) * (8.0 * math.sqrt(p.W) + 15.0)


def vdc_params_for_log_block(t: float, N: int, L: int) -> VdCParams:
    """Curvature window of the log phase on [N+1, N+L]:
    |f''(x)| = t/(2 pi x^2) is trapped between the endpoint values.
    L >= 2 is required, otherwise the window collapses (V = W)."""
    if L < 2 or N < 1 or not t > 0:
        raise ValueError("need t > 0, N >= 1, L >= 2")
    return VdCParams(L=L, V=TWO_PI * (N + 1) ** 2 / t, W=TWO_PI * (N + L) ** 2 / t)


def exp_sum_exact(f: PhaseFunction, N: int, L: int) -> complex:
    """Direct sum of e^{2 pi i f(n)} over n = N+1 .. N+L."""
    if L < 0:
        raise ValueError("L must be >= 0")
    if L == 0:
        return 0.0 + 0.0j
    if L > RANGE_GUARD:
        raise ValueError("range too long for direct summation")
    n = np.arange(N + 1, N + L + 1, dtype=np.float64)
    phase = TWO_PI * f.values(n)
    return compensated_complex_sum(np.cos(phase) + 1j * np.sin(phase))


def log_dirichlet_sum(t: float, a: float, b: float) -> complex:
    """Exact sum of log(n) * n^{-1/2 - it} over integers a < n <= b."""
    if not (0 < a < b or (0 < a and a == b)):
        raise ValueError(f"need 0 < a <= b, got a={a}, b={b}")
    if b - a > RANGE_GUARD:
        raise ValueError(
            "range too long for direct summation; use sampled verification"
        )
    lo = math.floor(a) + 1
    hi = math.floor(b)
    if hi < lo:
        return 0.0 + 0.0j
    n = np.arange(lo, hi + 1, dtype=np.float64)
    logn = np.log(n)
    # log n * n^{-1/2} * e^{-i t log n}
    amp = logn / np.sqrt(n)
    return compensated_complex_sum(amp * np.exp(-1j * t * logn))


def shifted_diff_maxima(f: PhaseFunction, N: int, L: int, M: int) -> list[float]:
    """Exact max_{K <= L} |sum_{n=N+1}^{N+K} e^{2 pi i (f(n+m) - f(n))}|
    for m = 1 .. M-1, scanning every prefix K."""
    if M < 1:
        raise ValueError("M must be >= 1")
    if L < 1:
        raise ValueError("L must be >= 1")
    n = np.arange(N + 1, N + L + 1, dtype=np.float64)
    fn = f.values(n)
    out: list[float] = []
    for m in range(1, M):
        fm = f.values(n + m)
        terms = np.exp(TWO_PI * 1j * (fm - fn))
        out.append(float(np.max(np.abs(np.cumsum(terms)))))
    return out


def weyl_differencing_rhs(L: int, M: int, diffmax: Sequence[float]) -> float:
    """Right-hand side of the squared-sum differencing inequality:

        (L+M)L/M + (2(L+M)/M) sum_{m<M} (1 - m/M) diffmax[m-1]

    ``diffmax[m-1]`` must hold max_{K<=L} |S'_m(K)| (exact prefix maxima).
    """
    if M < 1:
        raise ValueError("M must be a positive integer")
    if L < 0:
        raise ValueError("L must be >= 0")
    if len(diffmax) != M - 1:
        raise ValueError(f"diffmax must have M-1 = {M - 1} entries")
    if any(d < 0 for d in diffmax):
        raise ValueError("diffmax entries must be >= 0")
    base = (L + M) * L / M
    weighted = compensated_sum(
        (1.0 - m / M) * diffmax[m - 1] for m in range(1, M)
    )
    return base + 2.0 * (L + M) / M * weighted


def vertex_max_bound(amps: Sequence[float], phases: Sequence[float]) -> float:
    """a_n * max{1, b_2, ..., b_n} with the b_r taken over ALL r-subsets
    of the unit phasors, enumerated exhaustively (n <= 20).

    The quadratic form |sum a_i e^{i x_i}|^2 is affine in each amplitude,
    so its maximum over the amplitude box sits at a vertex; scaling by the
    largest amplitude gives the bound.
    """
    n = len(amps)
    if n == 0:
        raise ValueError("need at least one term")
    if len(phases) != n:
        raise ValueError("amps and phases must have equal length")
    if any(a <= 0 for a in amps):
        raise ValueError("amplitudes must be positive")
    if any(amps[i] > amps[i + 1] for i in range(n - 1)):
        raise ValueError("amplitudes must be sorted ascending")
    if n > 20:
        raise ValueError(
            "exact subset enumeration capped at n = 20; "
            "use vertex_max_estimate for larger n"
        )
    phasors = np.exp(1j * np.asarray(phases, dtype=np.float64))
    # Subset sums by doubling: sums[mask] indexed by bitmask.
    sums = np.zeros(1, dtype=np.complex128)
    for k in range(n):
        sums = np.concatenate([sums, sums + phasors[k]])
    masks = np.arange(sums.size)
    multi = (masks & (masks - 1)) != 0  # popcount >= 2
    best = float(np.max(np.abs(sums[multi]))) if multi.any() else 0.0
    return float(amps[-1]) * max(1.0, best)


def vertex_max_estimate(
    amps: Sequence[float],
    phases: Sequence[float],
    samples: int = 20000,
    seed: int = 0,
) -> float:
    """Sampled stand-in for ``vertex_max_bound`` when n > 20.

    Random subsets only; the result is an estimate (a lower bound on the
    true vertex maximum) and is never used inside verification sweeps.
    """
    n = len(amps)
    if len(phases) != n or n == 0:
        raise ValueError("amps and phases must be non-empty, equal length")
    rng = np.random.default_rng(seed)
    phasors = np.exp(1j * np.asarray(phases, dtype=np.float64))
    best = 0.0
    for _ in range(samples):
        r = int(rng.integers(2, n + 1))
        idx = rng.choice(n, size=r, replace=False)
        best = max(best, abs(complex(np.sum(phasors[idx]))))
    return float(amps[-1]) * max(1.0, best)


@dataclass(frozen=True)
class WeightSums:
    """Exact triangular weight sums over m = 1..M-1 next to their bounds.

    Order: sum (1-m/M) m^{1/2}, m^{-1/2}, m, 1 with bounds
    (4/15) M^{3/2}, (4/3) M^{1/2}, M^2/6, M/2.  The third and fourth exact
    values are (M^2-1)/6 and (M-1)/2, strictly below their quoted bounds
    for M >= 2.
    """

    M: int
    exact: tuple[float, float, float, float]
    bound: tuple[float, float, float, float]


def weight_sums(M: int) -> WeightSums:
    if M < 1:
        raise ValueError("M must be >= 1")
    if M == 1:
        exact = (0.0, 0.0, 0.0, 0.0)
    else:
        m = np.arange(1, M, dtype=np.float64)
        w = 1.0 - m / M
        exact = (
            float(math.fsum(w * np.sqrt(m))),
            float(math.fsum(w / np.sqrt(m))),
            float(math.fsum(w * m)),
            float(math.fsum(w)),
        )
    bound = (
        4.0 / 15.0 * M**1.5,
        4.0 / 3.0 * math.sqrt(M),
        M**2 / 6.0,
        M / 2.0,
    )
    return WeightSums(M=M, exact=exact, bound=bound)


@dataclass(frozen=True)
class BlockScheme:
    """Geometric cover of (t^alpha, t^upper] by blocks X_j = ratio^j t^alpha.

    blocks[j-1] = (X_{j-1}, X_j, N_{j-1}, N_j) with N = floor(X); the last
    grid point is clamped to t^upper so the integer cover is exact.
    """

    t: float
    base_exponent: float
    ratio: float
    upper_exponent: float
    blocks: tuple[tuple[float, float, int, int], ...] = field(repr=False)

    @property
    def J(self) -> int:
        return len(self.blocks)

    def count_limit(self) -> int:
        """Closed-form cap on the number of blocks for the standard ranges
        (exponent span 1/3): floor(log t / (3 log ratio)) + 1."""
        return math.floor(math.log(self.t) / (3.0 * math.log(self.ratio))) + 1


_ALLOWED_EXPONENTS = (1.0 / 3.0, 2.0 / 3.0, 1.0)


def block_scheme(
    t: float, alpha: float, ratio: float, upper_exponent: float
) -> BlockScheme:
    """Build the geometric block cover of (t^alpha, t^upper_exponent]."""
    if not t > 1:
        raise ValueError("t must exceed 1")
    if not ratio > 1:
        raise ValueError("ratio must exceed 1")
    if not any(math.isclose(alpha, e) for e in _ALLOWED_EXPONENTS):
        raise ValueError("alpha must be one of 1/3, 2/3, 1")
    if not any(math.isclose(upper_exponent, e) for e in _ALLOWED_EXPONENTS):
        raise ValueError("upper_exponent must be one of 1/3, 2/3, 1")
    if not alpha < upper_exponent:
        raise ValueError("alpha must be smaller than upper_exponent")
    x0 = t**alpha
    if x0 < 2:
        raise ValueError("t^alpha < 2: blocks degenerate")
    x_top = t**upper_exponent
    blocks: list[tuple[float, float, int, int]] = []
    x_prev = x0
    n_prev = math.floor(x0)
    n_top = math.floor(x_top)
    while n_prev < n_top:
        x_next = x_prev * ratio
        if x_next >= x_top:
            x_next = x_top
            n_next = n_top
        else:
            n_next = math.floor(x_next)
        blocks.append((x_prev, x_next, n_prev, n_next))
        x_prev, n_prev = x_next, n_next
    return BlockScheme(
        t=t,
        base_exponent=alpha,
        ratio=ratio,
        upper_exponent=upper_exponent,
        blocks=tuple(blocks),
    )
