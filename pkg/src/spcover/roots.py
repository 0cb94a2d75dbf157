"""Monotone transcendental systems linking (beta, gamma) with the ray parameters (s1, s2)."""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

from .errors import InvalidInput, NumericalFailure
from .symplectic import KakBetaGamma

BISECT_WIDTH = 1e-6
NEWTON_STEPS = 10


class S1S2Solution(NamedTuple):
    s1: float
    s2: float
    residual1: float
    residual2: float


def _check_pair(beta: float, gamma: float) -> None:
    if not (math.isfinite(beta) and math.isfinite(gamma)):
        raise InvalidInput("parameters must be finite")
    if not beta >= gamma >= 0:
        raise InvalidInput("need beta >= gamma >= 0")


def monotone_root(
    f: Callable[[float], float],
    df: Callable[[float], float],
    target: float,
    hi: float,
) -> float:
    """Root of f(s) = target on [0, hi] for increasing f with f(0) <= target <= f(hi).

    Bisection down to a bracket of width BISECT_WIDTH, then safeguarded Newton.
    """
    lo = 0.0
    if f(hi) < target:
        raise NumericalFailure("upper bracket does not enclose the root")
    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if f(mid) < target:
            lo = mid
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    for _ in range(NEWTON_STEPS):
        d = df(s)
        if d <= 0:
            break
        step = (f(s) - target) / d
        nxt = s - step
        if not lo <= nxt <= hi:
            nxt = 0.5 * (lo + hi)
        if f(nxt) < target:
            lo = nxt
        else:
            hi = nxt
        s = nxt
        if abs(step) <= 4e-16 * max(1.0, s):
            break
    return s


def _f1(s: float) -> float:
    return math.sinh(2 * s) ** 2 + math.sinh(s) ** 2


def _df1(s: float) -> float:
    return 2 * math.sinh(4 * s) + math.sinh(2 * s)


def _f2(s: float) -> float:
    return math.sinh(2 * s) * math.sinh(s)


def _df2(s: float) -> float:
    return 2 * math.cosh(2 * s) * math.sinh(s) + math.sinh(2 * s) * math.cosh(s)


def _sqrt_map(f, df):
    """sqrt(f) and its derivative: linear at 0 where f is quadratic, so Newton stays quadratic."""

    def g(s):
        return math.sqrt(f(s))

    def dg(s):
        v = f(s)
        return df(s) / (2 * math.sqrt(v)) if v > 0 else math.inf

    return g, dg


def relative_residual(value: float, target: float) -> float:
    return abs(value - target) / max(1.0, abs(target))


def solve_s1(beta: float, gamma: float) -> float:
    """s1 >= 0 with sinh^2(2 s1) + sinh^2(s1) = sinh^2(beta) + sinh^2(gamma)."""
    _check_pair(beta, gamma)
    target = math.sinh(beta) ** 2 + math.sinh(gamma) ** 2
    if target == 0:
        return 0.0
    g, dg = _sqrt_map(_f1, _df1)
    return monotone_root(g, dg, math.sqrt(target), 0.5 * math.asinh(math.sqrt(target)) + BISECT_WIDTH)


def solve_s2(beta: float, gamma: float) -> float:
    """s2 >= 0 with sinh(2 s2) sinh(s2) = sinh(beta) sinh(gamma)."""
    _check_pair(beta, gamma)
    target = math.sinh(beta) * math.sinh(gamma)
    if target == 0:
        return 0.0
    g, dg = _sqrt_map(_f2, _df2)
    return monotone_root(g, dg, math.sqrt(target), math.asinh(math.sqrt(target / 2)) + BISECT_WIDTH)


def solve_s1s2(beta: float, gamma: float) -> S1S2Solution:
    s1, s2 = solve_s1(beta, gamma), solve_s2(beta, gamma)
    return S1S2Solution(
        s1,
        s2,
        relative_residual(_f1(s1), math.sinh(beta) ** 2 + math.sinh(gamma) ** 2),
        relative_residual(_f2(s2), math.sinh(beta) * math.sinh(gamma)),
    )


def solve_beta_gamma(s1: float, s2: float) -> KakBetaGamma:
    """Invert the two maps: beta >= gamma >= 0 from (s1, s2).

    With x = sinh(beta), y = sinh(gamma) the system fixes x^2 + y^2 = S and
    x y = P, so x = (sqrt(S + 2P) + sqrt(S - 2P)) / 2 and y = P / x.
    Pairs coming from some (beta, gamma) can have s2 > s1 (near beta = gamma),
    so only S >= 2P is required.
    """
    if not (math.isfinite(s1) and math.isfinite(s2)) or s1 < 0 or s2 < 0:
        raise InvalidInput("need s1, s2 >= 0")
    big_s = _f1(s1)
    prod = _f2(s2)
    gap = big_s - 2 * prod
    if gap < 0:
        if gap < -1e-12 * max(1.0, big_s):
            raise NumericalFailure("no real solution for these symmetric functions")
        gap = 0.0
    x = 0.5 * (math.sqrt(big_s + 2 * prod) + math.sqrt(gap))
    y = prod / x if x > 0 else 0.0
    return KakBetaGamma(math.asinh(x), math.asinh(min(x, y)))


def r_parameters(beta: float, gamma: float, s1: float) -> tuple[float, float]:
    """r1 = 2 sinh b sinh g / (sinh^2 b + sinh^2 g), and the same with (2 s1, s1)."""
    _check_pair(beta, gamma)
    if s1 < 0:
        raise InvalidInput("s1 must be nonnegative")
    if gamma == 0:
        r1 = 0.0
    else:
        rho = math.sinh(gamma) / math.sinh(beta)
        r1 = 2 * rho / (1 + rho * rho)
    c = math.cosh(s1)
    r2 = 4 * c / (4 * c * c + 1)
    return r1, r2
