"""The universal cover of Sp(2,R) as pairs (g, t) with c(g) = exp(i t)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .config import DEFAULT
from .errors import InvalidInput, StepTooCoarse
from .symplectic import (
    SuParams,
    as_symplectic,
    circle_function,
    eta,
    kak_parameters,
    make_D,
    make_vt,
    realify,
    sp_inverse,
    su2_matrix,
)

Curve = Callable[[np.ndarray], np.ndarray]


def _sp_tol(g: np.ndarray, tol: float) -> float:
    return tol * max(1.0, float(np.abs(g).max()) ** 2)


@dataclass(frozen=True)
class CoverElement:
    """Point (g, t) of the cover; ``c(g) = exp(i t)`` is checked on construction."""

    g: np.ndarray
    t: float
    tol: float = field(default=DEFAULT.tol_cover, compare=False, repr=False)

    def __post_init__(self):
        g = np.array(self.g, dtype=float)
        if g.shape != (4, 4):
            raise InvalidInput("cover element needs a 4x4 matrix")
        if not math.isfinite(self.t):
            raise InvalidInput("t must be finite")
        as_symplectic(g, _sp_tol(g, DEFAULT.tol_sp))
        gap = abs(complex(circle_function(g)) - complex(math.cos(self.t), math.sin(self.t)))
        if gap > self.tol:
            raise InvalidInput(f"c(g) differs from exp(i t) by {gap:.3e}")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "t", float(self.t))

    def __matmul__(self, other: "CoverElement") -> "CoverElement":
        return cover_mul(self, other)

    def inverse(self) -> "CoverElement":
        return cover_inv(self)

    def close_to(self, other: "CoverElement", tol: float = 1e-8) -> bool:
        return bool(np.abs(self.g - other.g).max() <= tol and abs(self.t - other.t) <= tol)


class ClassParams(NamedTuple):
    beta: float
    gamma: float
    t: float


def identity() -> CoverElement:
    return CoverElement(np.eye(4), 0.0)


def central(k: int) -> CoverElement:
    """The central element (1, 2 pi k)."""
    return CoverElement(np.eye(4), 2 * math.pi * k)


def cover_mul(x: CoverElement, y: CoverElement) -> CoverElement:
    return CoverElement(x.g @ y.g, x.t + y.t + float(eta(x.g, y.g)))


def cover_inv(x: CoverElement) -> CoverElement:
    return CoverElement(sp_inverse(x.g), -x.t)


def cover_mul_arrays(g1, t1, g2, t2):
    """Unvalidated, broadcasting product of stacks of cover elements."""
    g1 = np.asarray(g1, dtype=float)
    g2 = np.asarray(g2, dtype=float)
    return g1 @ g2, np.asarray(t1) + np.asarray(t2) + eta(g1, g2)


def tilde_D(beta: float, gamma: float) -> CoverElement:
    return CoverElement(make_D(beta, gamma), 0.0)


def tilde_h(p: SuParams) -> CoverElement:
    """Lift of an element of H; c is identically 1 on H, so t = 0."""
    if not isinstance(p, SuParams):
        p = SuParams(*p)
    return CoverElement(realify(p.matrix()), 0.0)


def tilde_v(s: float) -> CoverElement:
    """Lift of v_s along the one-parameter subgroup: (v_s, 2s)."""
    return CoverElement(make_vt(s), 2.0 * s)


# -- path lifting ------------------------------------------------------------

@dataclass(frozen=True)
class GroupPath:
    samples: np.ndarray
    t0: float = 0.0

    def __post_init__(self):
        s = np.array(self.samples, dtype=float)
        if s.ndim != 3 or s.shape[1:] != (4, 4) or len(s) < 1:
            raise InvalidInput("path samples must have shape (N, 4, 4)")
        if not np.all(np.isfinite(s)):
            raise InvalidInput("path has non-finite entries")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)


def _increments(samples: np.ndarray) -> np.ndarray:
    c = circle_function(samples)
    return np.angle(c[1:] / c[:-1])


def lift_path(p: GroupPath, max_jump: float = math.pi) -> CoverElement:
    """Accumulate the unwrapped argument of c along the sampled path.

    Raises StepTooCoarse at the first increment whose size reaches ``max_jump``.
    """
    samples = p.samples
    if len(samples) == 1:
        return CoverElement(samples[0], p.t0)
    inc = _increments(samples)
    bad = np.flatnonzero(np.abs(inc) >= max_jump)
    if bad.size:
        i = int(bad[0])
        raise StepTooCoarse(i, float(inc[i]))
    return CoverElement(samples[-1], p.t0 + float(np.sum(inc)))


def lift_curve(
    curve: Curve,
    t0: float = 0.0,
    steps: int = DEFAULT.path_steps,
    max_depth: int = DEFAULT.path_max_depth,
    safe_jump: float = math.pi / 4,
) -> CoverElement:
    """Lift ``curve`` on [0, 1] starting from the lift coordinate ``t0``.

    The sampling is doubled until every increment stays below ``safe_jump``;
    a hard jump of pi or more at the final depth raises StepTooCoarse.
    """
    if steps < 1:
        raise InvalidInput("steps must be positive")
    n = steps
    for depth in range(max_depth + 1):
        samples = curve(np.linspace(0.0, 1.0, n + 1))
        inc = _increments(samples)
        worst = float(np.abs(inc).max()) if inc.size else 0.0
        if worst < safe_jump or depth == max_depth:
            return lift_path(GroupPath(samples, t0))
        n *= 2
    raise AssertionError("unreachable")


# -- standard curves, all starting at the identity -------------------------

def su2_geodesic(p: SuParams) -> Curve:
    """s -> exp(s log h) in the unit quaternions."""
    if not isinstance(p, SuParams):
        p = SuParams(*p)
    theta = math.acos(max(-1.0, min(1.0, p.a)))
    vec = np.array([p.b, p.c, p.d])
    norm = float(np.linalg.norm(vec))
    axis = vec / norm if norm > 0 else np.array([1.0, 0.0, 0.0])

    def curve(s):
        s = np.asarray(s, dtype=float)
        sn = np.sin(s * theta)
        return realify(su2_matrix(np.cos(s * theta), sn * axis[0], sn * axis[1], sn * axis[2]))

    return curve


def vtD_curve(t: float, beta: float, gamma: float) -> Curve:
    """s -> v_{st} D(s beta, s gamma); ends at v_t D(beta, gamma)."""

    def curve(s):
        s = np.asarray(s, dtype=float)
        return make_vt(s * t) @ make_D(s * beta, s * gamma)

    return curve


def hyperbola_curve(alpha: float, p: SuParams) -> Curve:
    """s -> D(s alpha, 0) h(s) D(s alpha, 0); ends at D(alpha,0) h D(alpha,0)."""
    h = su2_geodesic(p)

    def curve(s):
        s = np.asarray(s, dtype=float)
        d = make_D(s * alpha, 0.0 * s)
        return d @ h(s) @ d

    return curve


def circle_curve(alpha: float, p: SuParams, sign: int = 1) -> Curve:
    """s -> D(s alpha, s alpha) v_{sign s pi/4} h(s) D(s alpha, s alpha)."""
    _check_sign(sign)
    h = su2_geodesic(p)

    def curve(s):
        s = np.asarray(s, dtype=float)
        d = make_D(s * alpha, s * alpha)
        return d @ make_vt(sign * s * math.pi / 4) @ h(s) @ d

    return curve


def _check_sign(sign):
    if sign not in (1, -1):
        raise InvalidInput("sign must be +1 or -1")


# -- class parameters ---------------------------------------------------------

def class_params(x: CoverElement) -> ClassParams:
    beta, gamma = kak_parameters(x.g)
    return ClassParams(float(beta), float(gamma), x.t)


def _from_sinh(sb: float, sg: float, t: float) -> ClassParams:
    return ClassParams(math.asinh(sb), math.asinh(sg), t)


def hyperbola_class(alpha: float, p: SuParams, tol: float = DEFAULT.tol_su) -> ClassParams:
    """Closed-form class of D~(alpha,0) h~ D~(alpha,0) when h has c = 1/sqrt 2, d = 0.

    Uses sinh b - sinh g = sinh(2 alpha)|a| and
    sinh b sinh g = sinh(alpha)^2 (1 - a^2 - b^2).
    """
    if not isinstance(p, SuParams):
        p = SuParams(*p)
    if not alpha > 0:
        raise InvalidInput("alpha must be positive")
    if abs(p.c - 1 / math.sqrt(2)) > tol or abs(p.d) > tol:
        raise InvalidInput("hyperbola class needs c = 1/sqrt(2) and d = 0")
    a, b = p.a, p.b
    prod = math.sinh(alpha) ** 2 * max(0.0, 1.0 - a * a - b * b)
    diff = math.sinh(2 * alpha) * abs(a)
    sb = 0.5 * (diff + math.sqrt(diff * diff + 4 * prod))
    sg = prod / sb if sb > 0 else 0.0
    t = -math.atan(2 * a * b / (1 / math.tanh(alpha) ** 2 + a * a - b * b))
    return _from_sinh(sb, sg, t)


def circle_class(alpha: float, p: SuParams, sign: int = 1) -> ClassParams:
    """Closed-form class of D~(alpha,alpha) v~^{sign} h~ D~(alpha,alpha), with v = v_{pi/4}."""
    if not isinstance(p, SuParams):
        p = SuParams(*p)
    if not alpha > 0:
        raise InvalidInput("alpha must be positive")
    _check_sign(sign)
    r = max(-1.0, min(1.0, p.r))
    s2a = math.sinh(2 * alpha)
    root_p, root_m = math.sqrt(1 + abs(r)), math.sqrt(1 - abs(r))
    sb = 0.5 * s2a * (root_p + root_m)
    sg = s2a * abs(r) / (root_p + root_m)
    t = sign * (math.pi / 2 - math.atan(s2a * s2a * r / (2 * math.cosh(2 * alpha))))
    return _from_sinh(sb, sg, t)


def hyperbola_oracle(alpha: float, p: SuParams, **lift_kw) -> ClassParams:
    return class_params(lift_curve(hyperbola_curve(alpha, p), **lift_kw))


def circle_oracle(alpha: float, p: SuParams, sign: int = 1, **lift_kw) -> ClassParams:
    return class_params(lift_curve(circle_curve(alpha, p, sign), **lift_kw))
