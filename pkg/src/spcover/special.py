"""Jacobi, Legendre and disc polynomials, with grid scans of their Hoelder bounds."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import InvalidInput


class DiscIndex(NamedTuple):
    l: int
    m: int

    @property
    def dim(self) -> int:
        return self.l + self.m + 1


def _check_jacobi(n, alpha, beta):
    if int(n) != n or n < 0:
        raise InvalidInput("degree must be a nonnegative integer")
    if not (alpha > -1 and beta > -1):
        raise InvalidInput("Jacobi parameters must exceed -1")


def jacobi_all(nmax: int, alpha: float, beta: float, x) -> np.ndarray:
    """Values P_0 .. P_nmax of the Jacobi family at ``x``, stacked on axis 0."""
    _check_jacobi(nmax, alpha, beta)
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax == 0:
        return out
    ab = alpha + beta
    out[1] = (alpha + 1) + (ab + 2) * (x - 1) / 2
    for n in range(2, nmax + 1):
        c = 2 * n + ab
        a1 = 2 * n * (n + ab) * (c - 2)
        a2 = (c - 1) * (alpha * alpha - beta * beta)
        a3 = (c - 2) * (c - 1) * c
        a4 = 2 * (n + alpha - 1) * (n + beta - 1) * c
        out[n] = ((a2 + a3 * x) * out[n - 1] - a4 * out[n - 2]) / a1
    return out


def jacobi(n: int, alpha: float, beta: float, x):
    """P_n^{(alpha, beta)}(x) by the three-term recurrence."""
    v = jacobi_all(n, alpha, beta, x)[n]
    return float(v) if v.ndim == 0 else v


def legendre_all(nmax: int, x) -> np.ndarray:
    if int(nmax) != nmax or nmax < 0:
        raise InvalidInput("degree must be a nonnegative integer")
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = x
    for n in range(2, nmax + 1):
        out[n] = ((2 * n - 1) * x * out[n - 1] - (n - 1) * out[n - 2]) / n
    return out


def legendre(n: int, x):
    v = legendre_all(n, x)[n]
    return float(v) if v.ndim == 0 else v


def disc_poly(l: int, m: int, z, tol: float = 1e-12):
    """Disc polynomial h_{l,m}(z) = z^{l-m} P_m^{(0,l-m)}(2|z|^2 - 1), conjugated when l < m."""
    if int(l) != l or int(m) != m or l < 0 or m < 0:
        raise InvalidInput("disc indices must be nonnegative integers")
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1 + tol):
        raise InvalidInput("disc polynomials need |z| <= 1")
    x = 2 * np.abs(z) ** 2 - 1
    if l >= m:
        v = z ** (l - m) * jacobi(m, 0.0, l - m, x)
    else:
        v = np.conj(z) ** (m - l) * jacobi(l, 0.0, m - l, x)
    return complex(v) if np.ndim(v) == 0 else v


def disc_poly_table(max_degree: int, z) -> dict[tuple[int, int], np.ndarray]:
    """All h_{l,m}(z) with l + m <= max_degree, sharing one recurrence per |l - m|."""
    z = np.asarray(z, dtype=complex)
    x = 2 * np.abs(z) ** 2 - 1
    table = {}
    for k in range(max_degree + 1):
        nmax = (max_degree - k) // 2
        p = jacobi_all(nmax, 0.0, float(k), x)
        zk = z ** k
        for j in range(nmax + 1):
            table[(k + j, j)] = zk * p[j]
            if k:
                table[(j, k + j)] = np.conj(zk) * p[j]
    return table


# -- Hoelder scans --------------------------------------------------------------

@dataclass(frozen=True)
class HolderReport:
    kind: str
    max_degree: int
    grid: int
    empirical_sup_ratio: float
    bound_constant: float
    exponent: float
    passed: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def disc_amplitudes(max_degree: int) -> dict[tuple[int, int], float]:
    """|h_{l,m}| on the circle |z| = 1/sqrt 2, where it is constant."""
    amps = {}
    for k in range(max_degree + 1):
        nmax = (max_degree - k) // 2
        p = jacobi_all(nmax, 0.0, float(k), 0.0)
        for j in range(nmax + 1):
            amps[(k + j, j)] = amps[(j, k + j)] = abs(float(p[j])) * 2.0 ** (-k / 2)
    return amps


def scan_disc_holder(max_degree: int, grid: int, ctilde: float | None = None) -> HolderReport:
    """Quarter-Hoelder ratios of h_{l,m}(e^{i theta}/sqrt 2) over a uniform theta grid.

    On that circle h_{l,m} = A e^{i(l-m) theta}, so every pair ratio depends only on
    the grid spacing j * 2pi / grid, and scanning those offsets covers all pairs.
    Also reports the refined Lipschitz ratio (l+m+1)^{-3/4}|dh|/|dtheta| and the
    amplitude ratio (l+m+1)^{1/4}|h|.  Without ``ctilde`` the bound constant is
    the measured sup rounded up to one decimal.
    """
    if max_degree < 1 or grid < 16:
        raise InvalidInput("need max_degree >= 1 and grid >= 16")
    delta = 2 * math.pi * np.arange(1, grid) / grid
    amps = disc_amplitudes(max_degree)
    per_degree = np.zeros(max_degree + 1)
    lip = 0.0
    amp_ratio = 0.0
    for (l, m), amp in amps.items():
        k = abs(l - m)
        diff = amp * 2 * np.abs(np.sin(k * delta / 2))
        deg = l + m
        per_degree[deg] = max(per_degree[deg], float(np.max(diff / delta ** 0.25)))
        lip = max(lip, float(np.max(diff / delta)) * (deg + 1) ** -0.75)
        amp_ratio = max(amp_ratio, amp * (deg + 1) ** 0.25)
    cumulative = np.maximum.accumulate(per_degree)
    sup = float(cumulative[-1])
    bound = ctilde if ctilde is not None else math.ceil(sup * 10) / 10
    return HolderReport(
        kind="disc",
        max_degree=max_degree,
        grid=grid,
        empirical_sup_ratio=sup,
        bound_constant=float(bound),
        exponent=0.25,
        passed=bool(math.isfinite(sup) and sup <= bound),
        extra={
            "sup_by_degree": per_degree.tolist(),
            "cumulative_sup": cumulative.tolist(),
            "lipschitz_ratio": lip,
            "amplitude_ratio": amp_ratio,
        },
    )


def holder_growth_stable(report: HolderReport, checkpoints=(10, 20, 30, 40)) -> bool:
    """Cumulative-sup increments over successive degree windows do not grow."""
    cum = report.extra["cumulative_sup"]
    pts = [c for c in checkpoints if c < len(cum)]
    if len(pts) < 3:
        raise InvalidInput("need at least three checkpoints inside the scan")
    steps = [cum[b] - cum[a] for a, b in zip(pts, pts[1:])]
    return bool(all(np.isfinite(cum)) and all(b <= a + 1e-12 for a, b in zip(steps, steps[1:])))


def scan_legendre_holder(max_n: int, grid: int, slack: float = 1e-12) -> HolderReport:
    """Check |P_n(x)-P_n(y)| <= 4|x-y|^{1/2}, <= 4 sqrt(n)|x-y| and |P_n| <= 4/sqrt(n) on [-1/2, 1/2].

    ``empirical_sup_ratio`` is the largest left/right ratio over all three
    bounds; ``passed`` means no violation beyond ``slack``.
    """
    if max_n < 1 or grid < 16:
        raise InvalidInput("need max_n >= 1 and grid >= 16")
    x = np.linspace(-0.5, 0.5, grid)
    gap = np.abs(x[:, None] - x[None, :])
    off = gap > 0
    sq = np.sqrt(gap[off])
    lin = gap[off]
    vals = legendre_all(max_n, x)
    worst = {"sqrt": 0.0, "lipschitz": 0.0, "amplitude": 0.0}
    violations = {"sqrt": 0, "lipschitz": 0, "amplitude": 0}
    for n in range(1, max_n + 1):
        p = vals[n]
        d = np.abs(p[:, None] - p[None, :])[off]
        r1 = d / (4 * sq)
        r2 = d / (4 * math.sqrt(n) * lin)
        r3 = np.abs(p) * math.sqrt(n) / 4
        violations["sqrt"] += int(np.sum(d > 4 * sq + slack))
        violations["lipschitz"] += int(np.sum(d > 4 * math.sqrt(n) * lin + slack))
        violations["amplitude"] += int(np.sum(np.abs(p) > 4 / math.sqrt(n) + slack))
        worst["sqrt"] = max(worst["sqrt"], float(r1.max()))
        worst["lipschitz"] = max(worst["lipschitz"], float(r2.max()))
        worst["amplitude"] = max(worst["amplitude"], float(r3.max()))
    total = sum(violations.values())
    return HolderReport(
        kind="legendre",
        max_degree=max_n,
        grid=grid,
        empirical_sup_ratio=max(worst.values()),
        bound_constant=1.0,
        exponent=0.5,
        passed=total == 0,
        extra={"worst_ratio": worst, "violations": violations},
    )
