"""Product quadrature rules for normalised Haar measure on SU(2), U(2) and circle subgroups.

SU(2) is parametrised by ``z11 = cos(theta/2) e^{i phi}``, ``z21 = sin(theta/2) e^{i psi}``;
Haar measure is ``sin(theta) dtheta dphi dpsi / (16 pi^2)``.  The rule uses
Gauss-Legendre nodes in ``u = cos(theta)`` and trapezoid nodes in the two angles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import DEFAULT
from .errors import InvalidInput

GROUPS = ("SU(2)", "U(2)", "U(1)", "SO(2)", "L")


@dataclass(frozen=True)
class HaarRule:
    """Nodes as 2x2 complex matrices with nonnegative weights summing to one."""

    group: str
    order: int
    angles: np.ndarray
    weights: np.ndarray
    matrices: np.ndarray

    def __post_init__(self):
        if self.group not in GROUPS:
            raise InvalidInput(f"unknown group {self.group!r}")
        if np.any(self.weights < 0) or abs(float(np.sum(self.weights)) - 1.0) > 1e-12:
            raise InvalidInput("weights must be nonnegative with unit mass")
        for a in (self.angles, self.weights, self.matrices):
            a.setflags(write=False)

    def __len__(self) -> int:
        return len(self.weights)


def _trapezoid(n: int) -> np.ndarray:
    return 2 * math.pi * np.arange(n) / n


def _su2_from_angles(u, phi, psi) -> np.ndarray:
    ch = np.sqrt((1 + u) / 2)
    sh = np.sqrt((1 - u) / 2)
    z11 = ch * np.exp(1j * phi)
    z21 = sh * np.exp(1j * psi)
    m = np.empty(np.shape(z11) + (2, 2), dtype=complex)
    m[..., 0, 0] = z11
    m[..., 0, 1] = -np.conj(z21)
    m[..., 1, 0] = z21
    m[..., 1, 1] = np.conj(z11)
    return m


def su2_rule(order: int = DEFAULT.haar_order) -> HaarRule:
    """``order`` Gauss-Legendre nodes in cos(theta) times ``order`` nodes in each angle.

    Exact for polynomials in the matrix entries of degree below ``order``.
    """
    if order < 1:
        raise InvalidInput("order must be positive")
    u, wu = np.polynomial.legendre.leggauss(order)
    ang = _trapezoid(order)
    U, P, S = np.meshgrid(u, ang, ang, indexing="ij")
    W = np.broadcast_to((wu / 2)[:, None, None], U.shape) / order ** 2
    angles = np.stack([U.ravel(), P.ravel(), S.ravel()], axis=-1)
    return HaarRule("SU(2)", order, angles, W.ravel().copy(), _su2_from_angles(U.ravel(), P.ravel(), S.ravel()))


def u2_rule(order: int = DEFAULT.haar_order) -> HaarRule:
    """Pushforward of U(1) x SU(2) under ``(w, h) -> w h``."""
    base = su2_rule(order)
    omega = _trapezoid(order)
    phase = np.exp(1j * omega)
    mats = (phase[:, None, None, None] * base.matrices[None]).reshape(-1, 2, 2)
    w = np.outer(np.full(order, 1.0 / order), base.weights).ravel()
    angles = np.concatenate(
        [np.repeat(omega, len(base))[:, None], np.tile(base.angles, (order, 1))], axis=-1
    )
    return HaarRule("U(2)", order, angles, w, mats)


def circle_rule(group: str, order: int = DEFAULT.circle_order) -> HaarRule:
    """Trapezoid rule on a circle subgroup with ``2 * order`` nodes.

    ``"U(1)"`` is diag(e^{i nu}, e^{-i nu}), ``"SO(2)"`` the real rotations and
    ``"L"`` is diag(1, e^{i theta}) inside U(2).  Exact for trigonometric
    polynomials of degree below ``2 * order``.
    """
    n = 2 * order
    if order < 1:
        raise InvalidInput("order must be positive")
    th = _trapezoid(n)
    m = np.zeros((n, 2, 2), dtype=complex)
    if group == "U(1)":
        m[:, 0, 0] = np.exp(1j * th)
        m[:, 1, 1] = np.exp(-1j * th)
    elif group == "SO(2)":
        c, s = np.cos(th), np.sin(th)
        m[:, 0, 0] = c
        m[:, 1, 1] = c
        m[:, 0, 1] = -s
        m[:, 1, 0] = s
    elif group == "L":
        m[:, 0, 0] = 1.0
        m[:, 1, 1] = np.exp(1j * th)
    else:
        raise InvalidInput(f"{group!r} is not a circle subgroup")
    return HaarRule(group, order, th[:, None], np.full(n, 1.0 / n), m)


def haar_integrate(f: Callable[[np.ndarray], np.ndarray], rule: HaarRule) -> complex:
    """Integral of ``f`` against the rule; ``f`` maps a (N, 2, 2) stack to N values."""
    vals = np.asarray(f(rule.matrices))
    if vals.shape != rule.weights.shape:
        raise InvalidInput("integrand must return one value per node")
    return complex(np.sum(rule.weights * vals))
