"""Explicit constants of the decay estimates, for completely bounded and Schatten-p multipliers."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import InvalidInput, OutOfWindow

P_THRESHOLD = 12.0
SQRT2 = math.sqrt(2.0)

# Regime thresholds under which the individual estimates are claimed.
ALPHA_MIN = 2.0
BETA_MINUS_GAMMA_MIN = 8.0
GAMMA_MIN = 2.0
S_MIN = 5.0

TFLAT_FACTOR = 24.0


def dual_exponent(p: float) -> float:
    if p == math.inf:
        return 1.0
    if not p > 1:
        raise InvalidInput("p must exceed 1")
    return p / (p - 1)


@dataclass(frozen=True)
class BoundChain:
    mode: str
    Ctilde: float
    Btilde: float
    B1: float | None
    B2: float | None
    B3: float | None
    B3prime: float | None
    B4: float | None
    C1: float | None
    C2: float
    p: float | None = None
    rate_circle: float | None = None
    rate_hyperbola: float | None = None
    rate_ray: float | None = None
    dual_endpoint: float = P_THRESHOLD / (P_THRESHOLD - 1)

    def envelope(self, beta: float, gamma: float) -> float:
        if self.C1 is None:
            raise InvalidInput("the prefactor is not explicit in p-mode")
        return self.C1 * math.exp(-self.C2 * math.hypot(beta, gamma))

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["p"] == math.inf:
            d["p"] = "inf"
        return d


def _cb_chain(ctilde: float) -> dict:
    btilde = 8 * SQRT2 + 24
    b1 = max(4 * SQRT2 + btilde, 2 * math.e ** 2)
    b2 = max(ctilde, 2 * math.exp(0.25))
    b3 = math.exp(0.125) * (b1 + b2)
    b3p = b3 / (1 - math.exp(-1 / 16))
    b4 = max(b3p, 2 * math.exp(5 / 16))
    c1 = max(b1 + b4, b2 + b4)
    return dict(Ctilde=ctilde, Btilde=btilde, B1=b1, B2=b2, B3=b3, B3prime=b3p, B4=b4, C1=c1)


def bound_chain(ctilde: float, p: float | None = None) -> BoundChain:
    """Constants for completely bounded multipliers, or for Schatten-p ones when ``p`` is given.

    In p-mode only the exponents are explicit; the prefactors B_i(p) and
    C1(p) are existence constants, reported as None.  Raises OutOfWindow for
    p <= 12, where the exponent 1/4 - 3/p stops being positive.
    """
    if not (ctilde > 0 and math.isfinite(ctilde)):
        raise InvalidInput("Ctilde must be positive and finite")
    cb = _cb_chain(ctilde)
    if p is None:
        return BoundChain(mode="cb", C2=1 / (64 * SQRT2), **cb)
    if isinstance(p, bool) or not (p == math.inf or math.isfinite(p)):
        raise InvalidInput("p must be a real number or inf")
    if p <= P_THRESHOLD:
        raise OutOfWindow(p, P_THRESHOLD, dual_exponent(P_THRESHOLD))
    inv = 0.0 if p == math.inf else 1.0 / p
    gap = 0.25 - 3 * inv
    return BoundChain(
        mode="p",
        Ctilde=ctilde,
        Btilde=cb["Btilde"],
        B1=None,
        B2=None,
        B3=None,
        B3prime=None,
        B4=None,
        C1=None,
        C2=gap / (32 * SQRT2),
        p=p,
        rate_circle=0.25 * (0.25 - inv),
        rate_hyperbola=0.25 * gap,
        rate_ray=0.125 * gap,
    )
