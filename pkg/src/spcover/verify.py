"""Executable verification suites; each returns a JSON-ready report with a ``passed`` flag."""
from __future__ import annotations

import math
import time

import numpy as np

from .config import DEFAULT, Config
from .constants import BETA_MINUS_GAMMA_MIN, bound_chain
from .cover import (
    CoverElement,
    circle_class,
    circle_oracle,
    class_params,
    cover_inv,
    cover_mul,
    hyperbola_class,
    hyperbola_oracle,
    lift_curve,
    tilde_D,
    tilde_h,
    tilde_v,
    vtD_curve,
)
from .decay import decay_experiment, default_multiplier, surrogate_norm
from .harmonic import (
    check_phi_isometry,
    check_phi_well_defined,
    check_s_spherical,
    check_spherical,
    r_coordinate,
    random_su2_matrices,
)
from .roots import r_parameters, solve_beta_gamma, solve_s1s2
from .special import disc_poly, holder_growth_stable, legendre, scan_disc_holder, scan_legendre_holder
from .symplectic import (
    SuParams,
    circle_function,
    eta,
    kak_parameters,
    make_D,
    make_vt,
    random_su2,
    random_symplectic,
    realify,
)


def _rng(cfg: Config) -> np.random.Generator:
    return np.random.default_rng(cfg.seed)


def random_k(rng: np.random.Generator, size=None) -> np.ndarray:
    """Random element of K = U(2), realified."""
    shape = () if size is None else (size,)
    phase = np.exp(1j * rng.uniform(0, 2 * math.pi, size=shape))
    return realify(phase[..., None, None] * random_su2(rng, size))


def measured_ctilde(cfg: Config = DEFAULT) -> float:
    if cfg.ctilde is not None:
        return cfg.ctilde
    return scan_disc_holder(40, cfg.disc_grid).bound_constant


# -- symplectic group and cover ---------------------------------------------------

def cocycle_suite(n: int = 10_000, cfg: Config = DEFAULT) -> dict:
    rng = _rng(cfg)
    start = time.perf_counter()
    g1, g2, g3 = (random_symplectic(rng, n) for _ in range(3))
    e12 = eta(g1, g2)
    defining = np.abs(circle_function(g1 @ g2) - circle_function(g1) * circle_function(g2) * np.exp(1j * e12))
    cocycle = np.abs(e12 + eta(g1 @ g2, g3) - eta(g1, g2 @ g3) - eta(g2, g3))
    bound = np.abs(np.concatenate([e12, eta(g2, g3)]))
    elapsed = time.perf_counter() - start
    out = {
        "triples": n,
        "max_defining_residual": float(defining.max()),
        "max_cocycle_residual": float(cocycle.max()),
        "max_abs_eta": float(bound.max()),
        "seconds": elapsed,
    }
    out["passed"] = bool(out["max_defining_residual"] <= 1e-9 and out["max_cocycle_residual"] <= 1e-9
                         and out["max_abs_eta"] < 2 * math.pi)
    return out


def kakeqs_suite(n: int = 200, cfg: Config = DEFAULT) -> dict:
    """Polar parameters of k1 D(b, g) k2, and class invariance under H~ and v~ moves."""
    rng = _rng(cfg)
    worst_kak = 0.0
    worst_class = 0.0
    for _ in range(n):
        b, g = sorted(rng.uniform(0, 5, 2), reverse=True)
        k1, k2 = random_k(rng), random_k(rng)
        bb, gg = kak_parameters(k1 @ make_D(b, g) @ k2)
        worst_kak = max(worst_kak, abs(bb - b), abs(gg - g))
        t = rng.uniform(-2 * math.pi, 2 * math.pi)
        x = cover_mul(tilde_v(t / 2), tilde_D(b, g))
        h1, h2 = (tilde_h(SuParams.random(rng)) for _ in range(2))
        s = rng.uniform(-3, 3)
        ref = class_params(x)
        for y in (cover_mul(cover_mul(h1, x), h2), cover_mul(cover_mul(tilde_v(s), x), cover_inv(tilde_v(s)))):
            cp = class_params(y)
            worst_class = max(worst_class, abs(cp.beta - b), abs(cp.gamma - g), abs(cp.t - ref.t))
        worst_class = max(worst_class, abs(ref.t - t))
    return {"samples": n, "max_kak_error": worst_kak, "max_class_error": worst_class,
            "passed": bool(worst_kak <= 1e-9 and worst_class <= 1e-8)}


def exptzd_suite(n: int = 100, cfg: Config = DEFAULT) -> dict:
    rng = _rng(cfg)
    worst = 0.0
    for _ in range(n):
        t = rng.uniform(-2 * math.pi, 2 * math.pi)
        b, g = sorted(rng.uniform(0, 4, 2), reverse=True)
        x = lift_curve(vtD_curve(t, b, g), steps=cfg.path_steps, max_depth=cfg.path_max_depth)
        worst = max(worst, abs(x.t - 2 * t))
    return {"samples": n, "max_error": worst, "passed": bool(worst <= 1e-7)}


def _hyperbola_params(rng) -> SuParams:
    phi = rng.uniform(0, 2 * math.pi)
    r = 1 / math.sqrt(2)
    return SuParams(r * math.cos(phi), r * math.sin(phi), r, 0.0)


def hyperbola_suite(n: int = 20, alphas=(0.5, 1, 2, 4), cfg: Config = DEFAULT) -> dict:
    rng = _rng(cfg)
    worst = 0.0
    for a in alphas:
        for _ in range(n):
            p = _hyperbola_params(rng)
            closed = hyperbola_class(a, p)
            oracle = hyperbola_oracle(a, p, steps=cfg.path_steps, max_depth=cfg.path_max_depth)
            worst = max(worst, float(np.abs(np.subtract(closed, oracle)).max()))
    return {"alphas": list(alphas), "samples_per_alpha": n, "max_error": worst, "passed": bool(worst <= 1e-7)}


def circle_suite(n: int = 20, alphas=(0.5, 1, 2, 4), cfg: Config = DEFAULT) -> dict:
    rng = _rng(cfg)
    worst = {1: 0.0, -1: 0.0}
    for a in alphas:
        for _ in range(n):
            p = SuParams.random(rng)
            for sign in (1, -1):
                closed = circle_class(a, p, sign)
                oracle = circle_oracle(a, p, sign, steps=cfg.path_steps, max_depth=cfg.path_max_depth)
                worst[sign] = max(worst[sign], float(np.abs(np.subtract(closed, oracle)).max()))
    return {"alphas": list(alphas), "samples_per_alpha": n, "max_error_plus": worst[1],
            "max_error_minus": worst[-1], "passed": bool(max(worst.values()) <= 1e-7)}


# -- transcendental systems ----------------------------------------------------------

def betagamma_suite(grid: int = 50, top: float = 10.0) -> dict:
    vals = np.linspace(0, top, grid)
    worst_res = 0.0
    lower = 0
    r_viol = 0
    count = 0
    for b in vals:
        for g in vals:
            if g > b:
                continue
            count += 1
            sol = solve_s1s2(float(b), float(g))
            worst_res = max(worst_res, sol.residual1, sol.residual2)
            lower += int(sol.s1 < b / 4) + int(sol.s2 < g / 2)
            r1, r2 = r_parameters(float(b), float(g), sol.s1)
            r_viol += int(not 0 <= r2 <= 2 * math.exp(-sol.s1)) + int(not 0 <= r1 <= 1)
            if b - g >= BETA_MINUS_GAMMA_MIN:
                r_viol += int(r1 > 2 * math.exp(g - b))
    return {"grid": grid, "points": count, "max_residual": worst_res, "lower_bound_violations": lower,
            "r_bound_violations": r_viol,
            "passed": bool(worst_res <= 1e-10 and lower == 0 and r_viol == 0)}


def rhosigma_suite(grid: int = 50, s2_max: float = 10.0) -> dict:
    worst = 0.0
    viol = 0
    count = 0
    for s2 in np.linspace(1.0, s2_max, grid):
        for s1 in np.linspace(s2, 1.5 * s2, grid):
            b, g = solve_beta_gamma(float(s1), float(s2))
            e1, e2 = abs(b - 2 * s1), abs(g + 2 * s1 - 3 * s2)
            worst = max(worst, e1, e2)
            viol += int(e1 > 1) + int(e2 > 1)
            count += 1
    return {"grid": grid, "points": count, "max_deviation": worst, "violations": viol, "passed": viol == 0}


# -- special functions --------------------------------------------------------------------

def holder_disc_suite(max_degree: int = 40, cfg: Config = DEFAULT) -> dict:
    rep = scan_disc_holder(max_degree, cfg.disc_grid, cfg.ctilde)
    stable = holder_growth_stable(rep) if max_degree >= 30 else True
    out = rep.to_dict()
    out["stable"] = stable
    out["passed"] = bool(rep.passed and stable)
    return out


def holder_legendre_suite(max_n: int = 200, cfg: Config = DEFAULT) -> dict:
    rep = scan_legendre_holder(max_n, cfg.holder_grid)
    return rep.to_dict()


# -- harmonic analysis -------------------------------------------------------------------

def spherical_suite(max_n: int = 20, max_lm: int = 10, cfg: Config = DEFAULT) -> dict:
    rng = _rng(cfg)
    leg = max(check_spherical(lambda m, n=n: legendre(n, r_coordinate(m)), "SU(2),SO(2)",
                              cfg.circle_order, rng=rng) for n in range(max_n + 1))
    disc = max(check_spherical(lambda m, l=l, k=k: disc_poly(l, k, m[:, 0, 0]), "U(2),L", cfg.circle_order, rng=rng)
               for l in range(max_lm + 1) for k in range(max_lm + 1 - l))
    return {"legendre_max_residual": leg, "disc_max_residual": disc, "passed": bool(max(leg, disc) <= 1e-6)}


def s_spherical_suite(max_lm: int = 10, cfg: Config = DEFAULT) -> dict:
    rng = _rng(cfg)
    res = max(check_s_spherical(lambda m, l=l, k=k: disc_poly(l, k, m[:, 0, 0]), cfg.circle_order, rng=rng)
              for l in range(max_lm + 1) for k in range(max_lm + 1 - l))
    return {"max_residual": res, "passed": bool(res <= 1e-6)}


def phi_isometry_suite(max_lm: int = 6, cfg: Config = DEFAULT) -> dict:
    rng = _rng(cfg)
    funcs = [lambda m: np.ones(len(m))]
    funcs += [lambda m, l=l, k=k: disc_poly(l, k, m[:, 0, 0]) for l in range(max_lm + 1) for k in range(max_lm + 1 - l)]
    coeffs = rng.normal(size=(4, 2))
    idx = [(0, 0), (1, 0), (2, 1), (1, 3)]
    funcs.append(lambda m: sum(complex(*c) * disc_poly(l, k, m[:, 0, 0]) for c, (l, k) in zip(coeffs, idx)))
    worst = 0.0
    for f in funcs:
        a, b = check_phi_isometry(f, cfg.haar_order)
        worst = max(worst, abs(a - b))
    wd = check_phi_well_defined(rng)
    return {"functions": len(funcs), "max_norm_gap": worst, "well_defined_gap": wd,
            "passed": bool(worst <= 1e-6 and wd <= 1e-12)}


# -- decay ---------------------------------------------------------------------------------

def tdependence_suite(cfg: Config = DEFAULT, t_count: int = 9, s_max: float = 30.0, steps: int = 121) -> dict:
    m = default_multiplier()
    chain = bound_chain(measured_ctilde(cfg))
    norm = surrogate_norm(m, rng=_rng(cfg))
    res = decay_experiment(m, chain, np.linspace(-math.pi, math.pi, t_count), s_max, steps, norm=norm)
    return {
        "t_spread": res.t_spread,
        "converged": all(res.converged),
        "norm": res.norm,
        "norm_label": res.norm_label,
        "envelope_ok": res.envelope_ok,
        "envelope_checked": res.envelope_checked,
        "flatness": res.flatness,
        "flatness_ok": res.flatness_ok,
        "passed": res.passed(),
    }


SUITES = {
    "kakeqs": lambda cfg, a: kakeqs_suite(a.samples or 200, cfg),
    "exptzd": lambda cfg, a: exptzd_suite(a.samples or 100, cfg),
    "hyperbola": lambda cfg, a: hyperbola_suite(a.samples or 20, cfg=cfg),
    "circle": lambda cfg, a: circle_suite(a.samples or 20, cfg=cfg),
    "betagamma": lambda cfg, a: betagamma_suite(a.grid or 50),
    "rhosigma": lambda cfg, a: rhosigma_suite(a.grid or 50),
    "holder-disc": lambda cfg, a: holder_disc_suite(a.max_degree or 40, cfg),
    "holder-legendre": lambda cfg, a: holder_legendre_suite(a.max_degree or 200, cfg),
    "spherical": lambda cfg, a: spherical_suite(cfg=cfg),
    "s-spherical": lambda cfg, a: s_spherical_suite(cfg=cfg),
    "phi-isometry": lambda cfg, a: phi_isometry_suite(cfg=cfg),
    "tdependence": lambda cfg, a: tdependence_suite(cfg),
}
