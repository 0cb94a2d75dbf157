"""Synthetic class functions on the cover and numerical decay experiments along rays."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import (
    ALPHA_MIN,
    BETA_MINUS_GAMMA_MIN,
    GAMMA_MIN,
    S_MIN,
    TFLAT_FACTOR,
    BoundChain,
)
from .cover import class_params, cover_mul, cover_mul_arrays, tilde_D, tilde_v
from .errors import InvalidInput
from .harmonic import (
    CoeffExpansion,
    InvariantFunction,
    disc_coefficients,
    l1_multiplier_norm,
    legendre_coefficients,
)
from .haar import su2_rule
from .symplectic import _kak_arrays, make_D, make_vt, realify

PROFILES = ("exp", "bump", "const")


@dataclass(frozen=True)
class TestMultiplier:
    """phi(beta, gamma, t) = limit + rho(beta, gamma) * A(e^{it}/sqrt 2) * B(r1(beta, gamma)).

    ``A`` is the disc profile of ``disc``, ``B`` the Legendre profile of
    ``legendre`` and ``r1 = 2 sinh b sinh g / (sinh^2 b + sinh^2 g)``.  Depending
    only on the class parameters, it is constant on each class by construction.
    """

    __test__ = False

    disc: CoeffExpansion
    legendre: CoeffExpansion
    profile: str = "exp"
    kappa: float = 0.5
    radius: float = 4.0
    limit: complex = 0.0

    def __post_init__(self):
        if self.disc.kind != "disc" or self.legendre.kind != "legendre":
            raise InvalidInput("need one disc and one Legendre expansion")
        if self.profile not in PROFILES:
            raise InvalidInput(f"profile must be one of {PROFILES}")
        if not (self.kappa > 0 and self.radius > 0):
            raise InvalidInput("kappa and radius must be positive")
        object.__setattr__(self, "limit", complex(self.limit))

    def rho(self, beta, gamma):
        big_r = np.hypot(beta, gamma)
        if self.profile == "exp":
            return np.exp(-self.kappa * (np.sqrt(1 + big_r ** 2) - 1))
        if self.profile == "bump":
            x = np.clip(big_r / self.radius, 0.0, 1.0)
            return (1 - x ** 2) ** 3
        return np.ones_like(big_r)

    def dot(self, beta, gamma, t):
        """The profile as a function of class parameters (broadcasting)."""
        beta, gamma, t = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (beta, gamma, t)))
        sb, sg = np.sinh(beta), np.sinh(gamma)
        den = sb * sb + sg * sg
        r1 = np.where(den > 0, 2 * sb * sg / np.where(den > 0, den, 1.0), 0.0)
        a = self.disc.synthesize(np.exp(1j * t) / math.sqrt(2))
        b = self.legendre.synthesize(r1)
        return self.limit + self.rho(beta, gamma) * a * b

    def __call__(self, g, t):
        """Evaluate on stacks of cover elements given as (matrices, lift coordinates)."""
        sb, sg = _kak_arrays(np.asarray(g, dtype=float))
        return self.dot(np.arcsinh(sb), np.arcsinh(sg), t)

    def to_json(self) -> dict:
        return {
            "disc": self.disc.to_json(),
            "legendre": self.legendre.to_json(),
            "profile": self.profile,
            "kappa": self.kappa,
            "radius": self.radius,
            "limit": [self.limit.real, self.limit.imag],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TestMultiplier":
        lim = obj.get("limit", 0.0)
        if isinstance(lim, (list, tuple)):
            lim = complex(lim[0], lim[1])
        return cls(
            CoeffExpansion.from_json(obj["disc"]),
            CoeffExpansion.from_json(obj["legendre"]),
            obj.get("profile", "exp"),
            float(obj.get("kappa", 0.5)),
            float(obj.get("radius", 4.0)),
            lim,
        )


def synth_multiplier(
    disc: CoeffExpansion | None = None,
    legendre: CoeffExpansion | None = None,
    profile: str = "exp",
    kappa: float = 0.5,
    radius: float = 4.0,
    limit: complex = 0.0,
) -> TestMultiplier:
    """Build a test multiplier; missing factors default to the constant 1."""
    disc = disc or CoeffExpansion("disc", {(0, 0): 1.0})
    legendre = legendre or CoeffExpansion("legendre", {0: 1.0})
    return TestMultiplier(disc, legendre, profile, kappa, radius, limit)


def default_multiplier() -> TestMultiplier:
    disc = CoeffExpansion.from_synthesis("disc", {(0, 0): 0.5, (1, 0): 0.3, (2, 1): 0.2j})
    leg = CoeffExpansion.from_synthesis("legendre", {0: 0.6, 2: 0.4})
    return synth_multiplier(disc, leg, "exp", kappa=0.5, limit=0.25)


# -- restrictions to the compact subgroups ----------------------------------------

def restriction_psi(m: TestMultiplier, alpha: float):
    """h -> phi(D~(alpha,0) h~ D~(alpha,0)), a U(1)-conjugation invariant function on SU(2)."""
    d = make_D(alpha, 0.0)

    def f(z):
        h = realify(z)
        g, t = cover_mul_arrays(d, 0.0, h, 0.0)
        g, t = cover_mul_arrays(g, t, d, 0.0)
        return m(g, t)

    return f


def restriction_chi(m: TestMultiplier, alpha: float, sign: int = 1):
    """h -> phi(D~(alpha,alpha) v~^{sign} h~ D~(alpha,alpha)), SO(2)-bi-invariant on SU(2)."""
    d = make_D(alpha, alpha)
    v = make_vt(sign * math.pi / 4)

    def f(z):
        h = realify(z)
        g, t = cover_mul_arrays(d, 0.0, v, sign * math.pi / 2)
        g, t = cover_mul_arrays(g, t, h, 0.0)
        g, t = cover_mul_arrays(g, t, d, 0.0)
        return m(g, t)

    return f


@dataclass(frozen=True)
class SurrogateNorm:
    """max over alpha of l1 coefficient norms of the three compact restrictions."""

    value: float
    per_alpha: dict
    max_tail: float
    label: str = "l1 coefficient surrogate (lower bound for the multiplier norm)"


def surrogate_norm(
    m: TestMultiplier,
    alphas=(0.25, 0.5, 1.0, 2.0),
    order: int = 32,
    rng: np.random.Generator | None = None,
) -> SurrogateNorm:
    rule = su2_rule(order)
    rng = rng or np.random.default_rng(0)
    per = {}
    tail = 0.0
    for a in alphas:
        psi = disc_coefficients(InvariantFunction(restriction_psi(m, a), "int", "U(1)"), rule, rng=rng, probe_tol=1e-8)
        chi1 = legendre_coefficients(InvariantFunction(restriction_chi(m, a, 1), "bi", "SO(2)"), rule, rng=rng, probe_tol=1e-8)
        chi2 = legendre_coefficients(InvariantFunction(restriction_chi(m, a, -1), "bi", "SO(2)"), rule, rng=rng, probe_tol=1e-8)
        norms = [l1_multiplier_norm(e, tail_tol=math.inf) for e in (psi, chi1, chi2)]
        tail = max(tail, psi.tail, chi1.tail, chi2.tail)
        per[float(a)] = {"psi": norms[0], "chi_plus": norms[1], "chi_minus": norms[2]}
    value = max(max(v.values()) for v in per.values())
    return SurrogateNorm(float(value), per, float(tail))


# -- the experiment ----------------------------------------------------------------

def in_regime(beta: float, gamma: float, s: float) -> bool:
    return beta - gamma >= BETA_MINUS_GAMMA_MIN and gamma >= GAMMA_MIN and s >= S_MIN


@dataclass(frozen=True)
class DecayResult:
    t_values: list
    s_values: list
    ray_values: list  # [t][s] complex
    c_phi: list
    converged: list
    t_spread: float
    norm: float
    norm_label: str
    envelope_ok: bool
    envelope_checked: int
    envelope_min_margin: float
    out_of_regime_violations: int
    fitted_rate: float | None
    flatness: list = field(default_factory=list)
    flatness_ok: bool = True
    rows: list = field(default_factory=list)

    def passed(self, t_tol: float = 1e-4) -> bool:
        return bool(self.t_spread <= t_tol and self.envelope_ok and self.flatness_ok)


def _cover_ray_point(beta: float, gamma: float, t: float):
    x = cover_mul(tilde_v(t / 2), tilde_D(beta, gamma))
    return class_params(x), x


def decay_experiment(
    m: TestMultiplier,
    chain: BoundChain,
    t_values=None,
    s_max: float = 30.0,
    steps: int = 121,
    alphas=(0.5, 1.0, 2.0, 3.0, 4.0, 6.0),
    norm: SurrogateNorm | None = None,
    spread_tol: float = 1e-6,
) -> DecayResult:
    """Sample phi along (2s, s, t) and (2 alpha, 0, t), estimate c_phi(t) and test the envelopes."""
    if t_values is None:
        t_values = np.linspace(-math.pi, math.pi, 9)
    t_values = [float(t) for t in t_values]
    s_values = np.linspace(0.0, s_max, steps)
    norm = norm or surrogate_norm(m)
    rows = []
    ray = np.empty((len(t_values), steps), dtype=complex)
    betas = np.empty((len(t_values), steps))
    gammas = np.empty_like(betas)
    for i, t in enumerate(t_values):
        for j, s in enumerate(s_values):
            cp, x = _cover_ray_point(2 * s, s, t)
            betas[i, j], gammas[i, j] = cp.beta, cp.gamma
            ray[i, j] = complex(m(x.g[None], np.array([x.t]))[0])
    quart = steps - steps // 4
    tail = ray[:, quart:]
    c_phi = tail.mean(axis=1)
    spread = np.abs(tail - tail.mean(axis=1, keepdims=True)).max(axis=1) * 2
    converged = (spread < spread_tol).tolist()
    t_spread = float(np.abs(c_phi[:, None] - c_phi[None, :]).max())

    ok = True
    checked = 0
    margin = math.inf
    outside = 0
    fit_x, fit_y = [], []
    for i, t in enumerate(t_values):
        for j, s in enumerate(s_values):
            b, g = betas[i, j], gammas[i, j]
            dev = abs(ray[i, j] - c_phi[i])
            env = chain.envelope(b, g) * norm.value
            inside = in_regime(b, g, s)
            if inside:
                checked += 1
                ok = ok and dev <= env
                margin = min(margin, env - dev)
            elif dev > env:
                outside += 1
            if dev > 1e-14 and j < quart:
                fit_x.append(math.hypot(b, g))
                fit_y.append(math.log(dev))
            rows.append([t, float(s), float(b), float(g), ray[i, j].real, ray[i, j].imag, dev, env, inside])
    rate = None
    if len(set(fit_x)) >= 2:
        rate = float(-np.polyfit(fit_x, fit_y, 1)[0])

    flat = []
    flat_ok = True
    for a in alphas:
        vals = np.array([complex(m.dot(2 * a, 0.0, t)) for t in t_values])
        tv = np.array(t_values)
        close = np.abs(tv[:, None] - tv[None, :]) <= math.pi / 2 + 1e-12
        dev = float(np.abs(vals[:, None] - vals[None, :])[close].max())
        bound = TFLAT_FACTOR * math.exp(-a) * norm.value
        bound_2a = TFLAT_FACTOR * math.exp(-2 * a) * norm.value
        regime = a >= ALPHA_MIN
        if regime:
            flat_ok = flat_ok and dev <= bound
        flat.append({
            "alpha": float(a),
            "deviation": dev,
            "bound_exp_minus_alpha": bound,
            "bound_exp_minus_2alpha": bound_2a,
            "within_exp_minus_2alpha": dev <= bound_2a,
            "in_regime": regime,
        })
    return DecayResult(
        t_values=t_values,
        s_values=s_values.tolist(),
        ray_values=ray.tolist(),
        c_phi=c_phi.tolist(),
        converged=converged,
        t_spread=t_spread,
        norm=norm.value,
        norm_label=norm.label,
        envelope_ok=bool(ok),
        envelope_checked=checked,
        envelope_min_margin=float(margin),
        out_of_regime_violations=outside,
        fitted_rate=rate,
        flatness=flat,
        flatness_ok=bool(flat_ok),
        rows=rows,
    )
