"""Zonal expansions on SU(2) and U(2), multiplier-norm surrogates, and related checks.

Functions on SU(2) or U(2) are callables taking a stack of 2x2 complex
matrices of shape (N, 2, 2) and returning N values.

Coefficients are stored as inner products ``c = <phi, h>`` against the
zonal function ``h``; synthesis is then ``phi = sum c * dim * h`` with
``dim = l + m + 1`` for disc indices and ``2n + 1`` for Legendre indices.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .cover import CoverElement, cover_mul_arrays
from .errors import InvalidInput, NotInvariant, TruncationWarning
from .haar import HaarRule, circle_rule, su2_rule
from .special import disc_poly_table, legendre_all
from .symplectic import make_vt, realify

MatrixFn = Callable[[np.ndarray], np.ndarray]
KINDS = ("disc", "legendre")


def z11(m: np.ndarray) -> np.ndarray:
    return m[..., 0, 0]


def r_coordinate(m: np.ndarray) -> np.ndarray:
    """a^2 - b^2 + c^2 - d^2 = Re(z11^2 + z21^2), the SO(2) double-coset label."""
    return (m[..., 0, 0] ** 2 + m[..., 1, 0] ** 2).real


def random_su2_matrices(rng: np.random.Generator, n: int) -> np.ndarray:
    q = rng.normal(size=(n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    m = np.empty((n, 2, 2), dtype=complex)
    m[:, 0, 0] = q[:, 0] + 1j * q[:, 1]
    m[:, 0, 1] = -q[:, 2] + 1j * q[:, 3]
    m[:, 1, 0] = q[:, 2] + 1j * q[:, 3]
    m[:, 1, 1] = q[:, 0] - 1j * q[:, 1]
    return m


def random_u2_matrices(rng: np.random.Generator, n: int) -> np.ndarray:
    return np.exp(1j * rng.uniform(0, 2 * math.pi, n))[:, None, None] * random_su2_matrices(rng, n)


def _circle_elements(group: str, angles: np.ndarray) -> np.ndarray:
    m = np.zeros(np.shape(angles) + (2, 2), dtype=complex)
    if group == "U(1)":
        m[..., 0, 0] = np.exp(1j * angles)
        m[..., 1, 1] = np.exp(-1j * angles)
    elif group == "SO(2)":
        m[..., 0, 0] = m[..., 1, 1] = np.cos(angles)
        m[..., 0, 1] = -np.sin(angles)
        m[..., 1, 0] = np.sin(angles)
    elif group == "L":
        m[..., 0, 0] = 1.0
        m[..., 1, 1] = np.exp(1j * angles)
    else:
        raise InvalidInput(f"unknown circle subgroup {group!r}")
    return m


def _ct(m):
    return np.conj(np.swapaxes(m, -1, -2))


# -- expansions -----------------------------------------------------------------

@dataclass(frozen=True)
class CoeffExpansion:
    """Coefficients keyed by ``(l, m)`` for ``kind="disc"`` or ``n`` for ``kind="legendre"``."""

    kind: str
    coeffs: Mapping
    p: float | None = None
    tail: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput(f"kind must be one of {KINDS}")
        clean = {}
        for k, v in dict(self.coeffs).items():
            if self.kind == "disc":
                l, m = (int(i) for i in k)
                if l < 0 or m < 0:
                    raise InvalidInput("disc indices must be nonnegative")
                key = (l, m)
            else:
                key = int(k)
                if key < 0:
                    raise InvalidInput("Legendre index must be nonnegative")
            v = complex(v)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise InvalidInput("coefficients must be finite")
            clean[key] = v
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))
        if self.p is not None and not self.p > 1:
            raise InvalidInput("p must exceed 1")

    def dim(self, key) -> int:
        return key[0] + key[1] + 1 if self.kind == "disc" else 2 * key + 1

    @property
    def degree(self) -> int:
        if not self.coeffs:
            return 0
        return max((k[0] + k[1]) if self.kind == "disc" else k for k in self.coeffs)

    @classmethod
    def from_synthesis(cls, kind: str, weights: Mapping) -> "CoeffExpansion":
        """Expansion whose synthesis is ``sum w * h``, i.e. ``c = w / dim``."""
        probe = cls(kind, weights)
        return cls(kind, {k: v / probe.dim(k) for k, v in probe.coeffs.items()})

    def synthesize(self, x) -> np.ndarray:
        """Zonal profile at disc points ``z`` (disc) or at ``r`` in [-1, 1] (Legendre)."""
        if self.kind == "disc":
            z = np.asarray(x, dtype=complex)
            out = np.zeros(z.shape, dtype=complex)
            if not self.coeffs:
                return out
            table = disc_poly_table(self.degree, z)
            for key, c in self.coeffs.items():
                out = out + c * self.dim(key) * table[key]
            return out
        r = np.asarray(x, dtype=float)
        out = np.zeros(r.shape, dtype=complex)
        if not self.coeffs:
            return out
        p = legendre_all(self.degree, r)
        for n, c in self.coeffs.items():
            out = out + c * (2 * n + 1) * p[n]
        return out

    def on_su2(self) -> MatrixFn:
        """The invariant function on SU(2) whose profile is this expansion."""
        if self.kind == "disc":
            return lambda m: self.synthesize(z11(m))
        return lambda m: self.synthesize(r_coordinate(m))

    def to_json(self) -> dict:
        if self.kind == "disc":
            rows = [[l, m, c.real, c.imag] for (l, m), c in self.coeffs.items()]
        else:
            rows = [[n, c.real, c.imag] for n, c in self.coeffs.items()]
        out = {"kind": self.kind, "coeffs": rows}
        if self.p is not None:
            out["p"] = self.p
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CoeffExpansion":
        try:
            kind = obj["kind"]
            rows = obj["coeffs"]
        except (KeyError, TypeError) as exc:
            raise InvalidInput("expansion JSON needs 'kind' and 'coeffs'") from exc
        width = 4 if kind == "disc" else 3
        coeffs = {}
        for row in rows:
            if len(row) != width:
                raise InvalidInput(f"{kind} rows have {width} entries")
            if kind == "disc":
                coeffs[(row[0], row[1])] = complex(row[2], row[3])
            else:
                coeffs[row[0]] = complex(row[1], row[2])
        return cls(kind, coeffs, obj.get("p"))


def l1_multiplier_norm(e: CoeffExpansion, tail_tol: float = 1e-8) -> float:
    """sum |c| dim: the completely bounded multiplier norm on the compact pair."""
    if e.tail > tail_tol:
        warnings.warn(f"expansion tail mass {e.tail:.3e} exceeds budget", TruncationWarning)
    return float(sum(abs(c) * e.dim(k) for k, c in e.coeffs.items()))


def lp_coefficient_norm(e: CoeffExpansion, p: float | None = None, tail_tol: float = 1e-8) -> float:
    """(sum |c|^p dim)^{1/p}, a lower bound for the Schatten-p multiplier norm."""
    p = e.p if p is None else p
    if p is None or not (1 < p < math.inf):
        raise InvalidInput("p must lie in (1, inf)")
    if e.tail > tail_tol:
        warnings.warn(f"expansion tail mass {e.tail:.3e} exceeds budget", TruncationWarning)
    return float(sum(abs(c) ** p * e.dim(k) for k, c in e.coeffs.items()) ** (1 / p))


# -- invariant functions and analysis ----------------------------------------------

@dataclass(frozen=True)
class InvariantFunction:
    """A function on SU(2) together with its claimed symmetry.

    ``symmetry="int"`` means invariance under conjugation by ``subgroup``;
    ``symmetry="bi"`` means invariance under left and right translation.
    """

    evaluator: MatrixFn
    symmetry: str
    subgroup: str
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.symmetry not in ("int", "bi"):
            raise InvalidInput("symmetry must be 'int' or 'bi'")
        if self.subgroup not in ("U(1)", "SO(2)", "L"):
            raise InvalidInput("unsupported subgroup")

    def __call__(self, m: np.ndarray) -> np.ndarray:
        return np.asarray(self.evaluator(m))

    def probe(self, rng: np.random.Generator, n: int = 16, tol: float = 1e-9) -> float:
        """Largest symmetry defect over random probes; raises NotInvariant above ``tol``."""
        g = random_su2_matrices(rng, n)
        k1 = _circle_elements(self.subgroup, rng.uniform(0, 2 * math.pi, n))
        k2 = _circle_elements(self.subgroup, rng.uniform(0, 2 * math.pi, n))
        base = self(g)
        moved = self(_ct(k1) @ g @ k1) if self.symmetry == "int" else self(k1 @ g @ k2)
        scale = max(1.0, float(np.abs(base).max()))
        defect = float(np.abs(moved - base).max())
        if defect > tol * scale:
            raise NotInvariant(f"symmetry defect {defect:.3e} under {self.subgroup}")
        return defect


def _prepare(phi, symmetry: str, subgroup: str, rng, probe_tol):
    if isinstance(phi, InvariantFunction):
        if (phi.symmetry, phi.subgroup) != (symmetry, subgroup):
            raise NotInvariant(f"expected {symmetry}-invariance under {subgroup}")
        phi.probe(rng if rng is not None else np.random.default_rng(0), tol=probe_tol)
    return phi


def _norm2(vals, rule) -> float:
    return float(np.sum(rule.weights * np.abs(vals) ** 2))


def disc_coefficients(
    phi,
    rule: HaarRule | None = None,
    max_degree: int | None = None,
    rng: np.random.Generator | None = None,
    probe_tol: float = 1e-9,
) -> CoeffExpansion:
    """Disc-polynomial coefficients of a U(1)-conjugation invariant function on SU(2).

    Exact for profiles of degree at most ``max_degree`` once
    ``2 * max_degree < rule.order``, the default.
    """
    rule = rule or su2_rule()
    max_degree = (rule.order - 1) // 2 if max_degree is None else max_degree
    phi = _prepare(phi, "int", "U(1)", rng, probe_tol)
    vals = np.asarray(phi(rule.matrices), dtype=complex)
    table = disc_poly_table(max_degree, z11(rule.matrices))
    wv = rule.weights * vals
    coeffs = {key: complex(np.sum(wv * np.conj(h))) for key, h in table.items()}
    e = CoeffExpansion("disc", coeffs)
    parseval = sum(abs(c) ** 2 * e.dim(k) for k, c in e.coeffs.items())
    return CoeffExpansion("disc", e.coeffs, tail=max(0.0, _norm2(vals, rule) - parseval))


def legendre_coefficients(
    phi,
    rule: HaarRule | None = None,
    max_degree: int | None = None,
    rng: np.random.Generator | None = None,
    probe_tol: float = 1e-9,
) -> CoeffExpansion:
    """Legendre coefficients of an SO(2)-bi-invariant function on SU(2).

    Exact for profiles of degree at most ``max_degree`` once
    ``4 * max_degree < rule.order``, the default.
    """
    rule = rule or su2_rule()
    max_degree = (rule.order - 1) // 4 if max_degree is None else max_degree
    phi = _prepare(phi, "bi", "SO(2)", rng, probe_tol)
    vals = np.asarray(phi(rule.matrices), dtype=complex)
    p = legendre_all(max_degree, r_coordinate(rule.matrices))
    wv = rule.weights * vals
    coeffs = {n: complex(np.sum(wv * p[n])) for n in range(max_degree + 1)}
    e = CoeffExpansion("legendre", coeffs)
    parseval = sum(abs(c) ** 2 * e.dim(k) for k, c in e.coeffs.items())
    return CoeffExpansion("legendre", e.coeffs, tail=max(0.0, _norm2(vals, rule) - parseval))


# -- functional equations -------------------------------------------------------

PAIRS = {"SU(2),SO(2)": ("SO(2)", random_su2_matrices), "U(2),L": ("L", random_u2_matrices)}


def check_spherical(
    h: MatrixFn,
    pair: str,
    order: int = 24,
    samples: int = 16,
    rng: np.random.Generator | None = None,
) -> float:
    """max |int_K h(g1 k g2) dk - h(g1) h(g2)| over random pairs (g1, g2)."""
    if pair not in PAIRS:
        raise InvalidInput(f"pair must be one of {sorted(PAIRS)}")
    subgroup, sampler = PAIRS[pair]
    rng = rng or np.random.default_rng(0)
    rule = circle_rule(subgroup, order)
    g1, g2 = sampler(rng, samples), sampler(rng, samples)
    prod = g1[:, None] @ rule.matrices[None] @ g2[:, None]
    lhs = np.sum(rule.weights * np.asarray(h(prod.reshape(-1, 2, 2))).reshape(samples, -1), axis=1)
    rhs = np.asarray(h(g1)) * np.asarray(h(g2))
    return float(np.abs(lhs - rhs).max())


def check_s_spherical(
    h: MatrixFn,
    order: int = 24,
    samples: int = 16,
    rng: np.random.Generator | None = None,
) -> float:
    """max |int_K h(k^{-1} g1 k g2) dk - h(g1) h(g2)| with K = U(1) inside SU(2)."""
    rng = rng or np.random.default_rng(0)
    rule = circle_rule("U(1)", order)
    g1, g2 = random_su2_matrices(rng, samples), random_su2_matrices(rng, samples)
    k = rule.matrices[None]
    prod = _ct(k) @ g1[:, None] @ k @ g2[:, None]
    lhs = np.sum(rule.weights * np.asarray(h(prod.reshape(-1, 2, 2))).reshape(samples, -1), axis=1)
    rhs = np.asarray(h(g1)) * np.asarray(h(g2))
    return float(np.abs(lhs - rhs).max())


# -- the correspondence between (G x K, diagonal K) and conjugation classes ------

def phi_map(g: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Representative ``k^{-1} g`` of the conjugation class attached to (g, k)."""
    return _ct(np.asarray(k)) @ np.asarray(g)


def class_fingerprint(m: np.ndarray) -> np.ndarray:
    """Complete invariant of U(1)-conjugation classes in SU(2): the entry z11."""
    return z11(m)


def phi_pullback(f: MatrixFn) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    return lambda g, k: f(phi_map(g, k))


def check_phi_well_defined(rng: np.random.Generator | None = None, samples: int = 64) -> float:
    """Largest fingerprint change of phi_map under (g, k) -> (k1 g k2, k1 k k2)."""
    rng = rng or np.random.default_rng(0)
    g = random_su2_matrices(rng, samples)
    k, k1, k2 = (_circle_elements("U(1)", rng.uniform(0, 2 * math.pi, samples)) for _ in range(3))
    a = class_fingerprint(phi_map(g, k))
    b = class_fingerprint(phi_map(k1 @ g @ k2, k1 @ k @ k2))
    return float(np.abs(a - b).max())


def check_phi_isometry(f: MatrixFn, order: int = 24, dst_order: int | None = None) -> tuple[float, float]:
    """L2 norm of ``f`` on SU(2) and of its pullback on SU(2) x U(1), by separate rules."""
    src = su2_rule(order)
    norm_src = math.sqrt(_norm2(np.asarray(f(src.matrices)), src))
    dst = su2_rule(dst_order or order + 1)
    ks = circle_rule("U(1)", dst_order or order + 1)
    pulled = phi_pullback(f)
    g = np.broadcast_to(dst.matrices[:, None], (len(dst), len(ks), 2, 2)).reshape(-1, 2, 2)
    k = np.broadcast_to(ks.matrices[None], (len(dst), len(ks), 2, 2)).reshape(-1, 2, 2)
    w = np.outer(dst.weights, ks.weights).ravel()
    norm_dst = math.sqrt(float(np.sum(w * np.abs(np.asarray(pulled(g, k))) ** 2)))
    return norm_src, norm_dst


# -- averaging onto the class-function subspace -----------------------------------

CoverFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


def project_to_C(f: CoverFn, x: CoverElement, order: int = 4, t_nodes: int = 8) -> complex:
    """Average of ``f`` over h1 v_t x v_t^{-1} h2 with h1, h2 in H and t in [0, pi).

    ``f`` takes a stack of 4x4 matrices and matching lift coordinates.
    """
    rule = su2_rule(order)
    hs = realify(rule.matrices)
    ts = math.pi * np.arange(t_nodes) / t_nodes
    v = make_vt(ts)
    vinv = make_vt(-ts)
    g, t = cover_mul_arrays(v, 2 * ts, x.g, x.t)
    g, t = cover_mul_arrays(g, t, vinv, -2 * ts)
    n_h, n_t = len(hs), t_nodes
    # h1 (.) with t = 0 lifts
    g1, t1 = cover_mul_arrays(hs[:, None], 0.0, g[None], t[None])  # (n_h, n_t)
    g2, t2 = cover_mul_arrays(g1[:, :, None], t1[:, :, None], hs[None, None], 0.0)
    vals = np.asarray(f(g2.reshape(-1, 4, 4), t2.reshape(-1))).reshape(n_h, n_t, n_h)
    w = rule.weights
    return complex(np.einsum("i,ijk,k->", w, vals, w) / n_t)
