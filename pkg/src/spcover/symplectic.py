"""Arithmetic on Sp(2,R) realised as real 4x4 matrices.

Matrices are plain numpy arrays.  Most routines broadcast over leading
axes, so a stack of shape ``(N, 4, 4)`` is processed in one call; scalar
results then come back with shape ``(N,)``.

Conventions: ``J = (0 I; -I 0)`` and ``g`` is symplectic iff
``g.T @ J @ g == J``.  The maximal compact subgroup ``K`` is the set of
matrices ``(A -B; B A)`` with ``A + iB`` unitary, and ``iota`` sends such a
block matrix to ``A + iB``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import DEFAULT
from .errors import InvalidInput, NotInM4R0, NumericalFailure

I2 = np.eye(2)
I4 = np.eye(4)
J = np.block([[np.zeros((2, 2)), I2], [-I2, np.zeros((2, 2))]])
J.setflags(write=False)


def _finite(m, shape):
    m = np.asarray(m)
    if m.shape[-2:] != shape:
        raise InvalidInput(f"expected trailing shape {shape}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInput("matrix has non-finite entries")
    return m


def _t(m):
    return np.swapaxes(m, -1, -2)


def symplectic_defect(m):
    """Max-norm of ``m.T J m - J``."""
    m = _finite(np.asarray(m, dtype=float), (4, 4))
    return np.abs(_t(m) @ J @ m - J).max(axis=(-2, -1))


def is_symplectic(m, tol: float = DEFAULT.tol_sp):
    if not tol > 0:
        raise InvalidInput("tol must be positive")
    return symplectic_defect(m) <= tol


def as_symplectic(m, tol: float = DEFAULT.tol_sp) -> np.ndarray:
    """Return ``m`` as a float array after checking it is symplectic."""
    m = np.asarray(m, dtype=float)
    if not np.all(is_symplectic(m, tol)):
        raise InvalidInput(f"matrix is not symplectic within {tol}")
    return m


def inv_transpose(g):
    """``(g^T)^{-1}``, computed as ``J g J^T`` (exact on Sp(2,R), no inversion)."""
    return J @ g @ J.T


def sp_inverse(g):
    """Inverse of a symplectic matrix, ``J^T g^T J``."""
    return J.T @ _t(g) @ J


# -- the complex structure -------------------------------------------------

def m4r0_defect(m):
    m = np.asarray(m)
    a, b = m[..., :2, :2], m[..., 2:, :2]
    return np.maximum(
        np.abs(m[..., 2:, 2:] - a).max(axis=(-2, -1)),
        np.abs(m[..., :2, 2:] + b).max(axis=(-2, -1)),
    )


def iota(m, tol: float = DEFAULT.tol_m4r0):
    """Map ``(A -B; B A)`` to ``A + iB``.

    Raises NotInM4R0 when the block structure is violated by more than
    ``tol`` (relative to the largest entry once that exceeds one).
    """
    m = _finite(np.asarray(m, dtype=float), (4, 4))
    scale = np.maximum(1.0, np.abs(m).max(axis=(-2, -1)))
    if np.any(m4r0_defect(m) > tol * scale):
        raise NotInM4R0("matrix is not of the form (A -B; B A)")
    return m[..., :2, :2] + 1j * m[..., 2:, :2]


def realify(z):
    """Inverse of :func:`iota`: ``A + iB`` to ``(A -B; B A)``."""
    z = _finite(np.asarray(z, dtype=complex), (2, 2))
    a, b = z.real, z.imag
    top = np.concatenate([a, -b], axis=-1)
    bottom = np.concatenate([b, a], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def _iota_unchecked(m):
    return m[..., :2, :2] + 1j * m[..., 2:, :2]


def det2(z):
    return z[..., 0, 0] * z[..., 1, 1] - z[..., 0, 1] * z[..., 1, 0]


def inv2(z):
    d = det2(z)
    out = np.empty_like(z)
    out[..., 0, 0] = z[..., 1, 1]
    out[..., 1, 1] = z[..., 0, 0]
    out[..., 0, 1] = -z[..., 0, 1]
    out[..., 1, 0] = -z[..., 1, 0]
    return out / d[..., None, None]


def eig2(z):
    """Eigenvalues of 2x2 complex matrices, closed form, shape ``(..., 2)``."""
    half_tr = 0.5 * (z[..., 0, 0] + z[..., 1, 1])
    d = det2(z)
    root = np.sqrt(half_tr * half_tr - d + 0j)
    lam1 = half_tr + root
    lam2 = half_tr - root
    # Recover the smaller root from the product to avoid cancellation.
    big = np.where(np.abs(lam1) >= np.abs(lam2), lam1, lam2)
    safe = np.where(big == 0, 1.0, big)
    small = np.where(big == 0, 0.0, d / safe)
    return np.stack([big, small], axis=-1)


# -- circle function and cocycle ---------------------------------------------

def cg_dg(g):
    """Split ``g = C_g + D_g`` with ``C_g = (g + g^{-T})/2``, ``D_g = (g - g^{-T})/2``."""
    g = _finite(np.asarray(g, dtype=float), (4, 4))
    gi = inv_transpose(g)
    return 0.5 * (g + gi), 0.5 * (g - gi)


def _iota_c(g):
    gi = inv_transpose(g)
    return _iota_unchecked(0.5 * (g + gi))


def circle_function(g, tol_det: float = DEFAULT.tol_det):
    """Normalised circle function ``det(iota(C_g)) / |det(iota(C_g))|``."""
    g = _finite(np.asarray(g, dtype=float), (4, 4))
    d = det2(_iota_c(g))
    mod = np.abs(d)
    if np.any(mod < tol_det):
        raise NumericalFailure("det(iota(C_g)) vanishes numerically")
    return d / mod


def logm2(x, method: str = "eig"):
    """Principal logarithm of 2x2 complex matrices.

    ``method="eig"`` uses the closed-form spectral formula;
    ``method="series"`` sums ``-sum_n Y^n / n`` for ``Y = 1 - x`` and
    requires ``||Y||_2 < 0.9``.
    """
    x = np.asarray(x, dtype=complex)
    if method == "series":
        y = np.eye(2) - x
        if np.any(np.linalg.norm(y, ord=2, axis=(-2, -1)) >= 0.9):
            raise NumericalFailure("series logarithm needs ||1 - x|| < 0.9")
        out = np.zeros_like(y)
        term = np.broadcast_to(np.eye(2, dtype=complex), y.shape).copy()
        for n in range(1, 400):
            term = term @ y
            out -= term / n
            if np.abs(term).max() / n < 1e-18:
                break
        return out
    if method != "eig":
        raise InvalidInput(f"unknown method {method!r}")
    lam = eig2(x)
    if np.any(np.abs(lam) == 0) or np.any(np.abs(np.angle(lam)) > math.pi - 1e-12):
        raise NumericalFailure("eigenvalue on the branch cut of the logarithm")
    l1, l2 = lam[..., 0], lam[..., 1]
    log1, log2 = np.log(l1), np.log(l2)
    eye = np.broadcast_to(np.eye(2, dtype=complex), x.shape)
    gap = l1 - l2
    close = np.abs(gap) <= 1e-8 * np.maximum(np.abs(l1), 1.0)
    safe_gap = np.where(close, 1.0, gap)
    # Distinct eigenvalues: Lagrange interpolation of log on the spectrum.
    f1 = (log1 / safe_gap)[..., None, None]
    f2 = (log2 / safe_gap)[..., None, None]
    distinct = f1 * (x - l2[..., None, None] * eye) - f2 * (x - l1[..., None, None] * eye)
    # (Nearly) repeated eigenvalue: first-order Taylor, exact for 2x2 when equal.
    mid = 0.5 * (l1 + l2)
    repeated = np.log(mid)[..., None, None] * eye + (x - mid[..., None, None] * eye) / mid[..., None, None]
    return np.where(close[..., None, None], repeated, distinct)


def _cocycle_matrix(g1, g2):
    c1 = _iota_c(g1)
    c2 = _iota_c(g2)
    c12 = _iota_c(g1 @ g2)
    return inv2(c1) @ c12 @ inv2(c2)


def eta(g1, g2, method: str = "eig"):
    """Cocycle ``eta(g1, g2) = Im Tr iota(log(C_{g1}^{-1} C_{g1 g2} C_{g2}^{-1}))``.

    ``method="series"`` instead expands ``log(1 - Z_{g1} Z_{g2^{-1}})`` with
    ``Z_g = C_g^{-1} D_g``; it is an independent cross-check and only
    applies when that product has norm below 0.9.
    """
    g1 = _finite(np.asarray(g1, dtype=float), (4, 4))
    g2 = _finite(np.asarray(g2, dtype=float), (4, 4))
    if method == "eig":
        lam = eig2(_cocycle_matrix(g1, g2))
        if np.any(np.abs(np.angle(lam)) > math.pi - 1e-12):
            raise NumericalFailure("eigenvalue on the branch cut of the logarithm")
        return np.angle(lam).sum(axis=-1)
    if method == "series":
        z1 = _z(g1)
        z2 = _z(sp_inverse(g2))
        y = _iota_unchecked(z1 @ z2)
        return np.trace(logm2(np.eye(2) - y, method="series"), axis1=-2, axis2=-1).imag
    raise InvalidInput(f"unknown method {method!r}")


def _z(g):
    c, d = cg_dg(g)
    return np.linalg.solve(c, d)


# -- polar decomposition -----------------------------------------------------

class KakBetaGamma(NamedTuple):
    beta: float
    gamma: float


def _kak_arrays(g):
    """sinh(beta), sinh(gamma) from the Hilbert-Schmidt norm and determinant of g - g^{-T}."""
    m = g - inv_transpose(g)
    # m = (A B; B -A); its real determinant is |det(A + iB)|^2.
    w = m[..., :2, :2] + 1j * m[..., 2:, :2]
    h = w @ np.conj(_t(w)) / 4.0
    total = 0.125 * np.sum(m * m, axis=(-2, -1))  # sinh^2 b + sinh^2 g
    p = h[..., 0, 0].real
    q = h[..., 1, 1].real
    # Discriminant of x^2 - total x + sinh^2 b sinh^2 g, from entries (no cancellation).
    disc = (p - q) ** 2 + 4.0 * np.abs(h[..., 0, 1]) ** 2
    disc = np.where((disc < 0) & (disc >= -1e-9), 0.0, disc)
    if np.any(disc < 0):
        raise NumericalFailure("negative discriminant in polar parameters")
    big = 0.5 * (total + np.sqrt(disc))
    sb = np.sqrt(big)
    prod = np.abs(det2(w)) / 4.0  # sinh b * sinh g
    sg = np.where(sb > 0, prod / np.where(sb > 0, sb, 1.0), 0.0)
    sg = np.minimum(sg, sb)
    return sb, sg


def kak_parameters(g, tol: float = DEFAULT.tol_sp):
    """Weyl-chamber parameters ``beta >= gamma >= 0`` of ``g = k1 D(beta, gamma) k2``.

    Uses ``sinh^2 b + sinh^2 g = |g - g^{-T}|_HS^2 / 8`` and
    ``sinh^2 b sinh^2 g = det(g - g^{-T}) / 16``.  For a stack of matrices
    returns a pair of arrays.
    """
    g = as_symplectic(g, _scaled_tol(g, tol))
    sb, sg = _kak_arrays(g)
    beta, gamma = np.arcsinh(sb), np.arcsinh(sg)
    if np.ndim(beta) == 0:
        return KakBetaGamma(float(beta), float(gamma))
    return KakBetaGamma(beta, gamma)


def _scaled_tol(g, tol):
    # g^T J g has entries of size |g|^2; keep the test relative for large elements.
    g = np.asarray(g, dtype=float)
    return tol * max(1.0, float(np.abs(g).max()) ** 2)


# -- named subgroups -----------------------------------------------------------

@dataclass(frozen=True)
class SuParams:
    """Unit quaternion ``(a, b, c, d)`` for ``iota(h) = (a+ib, -c+id; c+id, a-ib)``."""

    a: float
    b: float
    c: float
    d: float
    tol: float = DEFAULT.tol_su

    def __post_init__(self):
        vals = (self.a, self.b, self.c, self.d)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidInput("SuParams entries must be finite")
        if abs(sum(v * v for v in vals) - 1.0) > self.tol:
            raise InvalidInput("a^2 + b^2 + c^2 + d^2 must equal 1")

    @classmethod
    def normalized(cls, a, b, c, d):
        n = math.sqrt(a * a + b * b + c * c + d * d)
        if n == 0:
            raise InvalidInput("zero quaternion")
        return cls(a / n, b / n, c / n, d / n)

    @classmethod
    def random(cls, rng: np.random.Generator):
        return cls.normalized(*rng.normal(size=4))

    @classmethod
    def from_matrix(cls, z, tol: float = DEFAULT.tol_su):
        z = np.asarray(z, dtype=complex)
        return cls(z[0, 0].real, z[0, 0].imag, z[1, 0].real, z[1, 0].imag, tol)

    @property
    def r(self) -> float:
        """Double-coset coordinate of SO(2) in SU(2)."""
        return self.a ** 2 - self.b ** 2 + self.c ** 2 - self.d ** 2

    @property
    def z11(self) -> complex:
        return complex(self.a, self.b)

    def matrix(self) -> np.ndarray:
        a, b, c, d = self.a, self.b, self.c, self.d
        return np.array([[a + 1j * b, -c + 1j * d], [c + 1j * d, a - 1j * b]])

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)


def su2_matrix(a, b, c, d):
    """Batched ``(a+ib, -c+id; c+id, a-ib)`` without validation."""
    a, b, c, d = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (a, b, c, d)))
    z = np.empty(a.shape + (2, 2), dtype=complex)
    z[..., 0, 0] = a + 1j * b
    z[..., 0, 1] = -c + 1j * d
    z[..., 1, 0] = c + 1j * d
    z[..., 1, 1] = a - 1j * b
    return z


def make_D(beta, gamma):
    """``diag(e^b, e^g, e^-b, e^-g)``; broadcasts over array arguments."""
    beta, gamma = np.broadcast_arrays(np.asarray(beta, dtype=float), np.asarray(gamma, dtype=float))
    out = np.zeros(beta.shape + (4, 4))
    out[..., 0, 0] = np.exp(beta)
    out[..., 1, 1] = np.exp(gamma)
    out[..., 2, 2] = np.exp(-beta)
    out[..., 3, 3] = np.exp(-gamma)
    return out


def make_vt(t):
    """Central one-parameter subgroup ``v_t = exp(tZ)`` of K, period 2 pi."""
    t = np.asarray(t, dtype=float)
    c, s = np.cos(t), np.sin(t)
    out = np.zeros(t.shape + (4, 4))
    for i in range(2):
        out[..., i, i] = c
        out[..., i + 2, i + 2] = c
        out[..., i, i + 2] = -s
        out[..., i + 2, i] = s
    return out


def embed_su2(p: SuParams) -> np.ndarray:
    if not isinstance(p, SuParams):
        p = SuParams(*p)
    return realify(p.matrix())


def embed_u1(nu: float) -> np.ndarray:
    """Image of ``diag(e^{i nu}, e^{-i nu})`` in H."""
    return embed_su2(SuParams(math.cos(nu), math.sin(nu), 0.0, 0.0, tol=1e-12))


def embed_so2(theta: float) -> np.ndarray:
    """Image of the real rotation by ``theta`` (natural SO(2) inside SU(2))."""
    return embed_su2(SuParams(math.cos(theta), 0.0, math.sin(theta), 0.0, tol=1e-12))


def random_su2(rng: np.random.Generator, size=None):
    """Haar-random SU(2) matrices (2x2 complex)."""
    shape = () if size is None else (size,) if np.isscalar(size) else tuple(size)
    q = rng.normal(size=shape + (4,))
    q /= np.linalg.norm(q, axis=-1, keepdims=True)
    return su2_matrix(q[..., 0], q[..., 1], q[..., 2], q[..., 3])


def random_symplectic(rng: np.random.Generator, size=None, max_param: float = 5.0):
    """Samples ``v_t h D(beta, gamma)`` with ``beta >= gamma`` drawn from ``[0, max_param]``."""
    shape = () if size is None else (size,) if np.isscalar(size) else tuple(size)
    t = rng.uniform(0.0, 2 * math.pi, size=shape)
    h = realify(random_su2(rng, shape))
    bg = rng.uniform(0.0, max_param, size=shape + (2,))
    beta, gamma = bg.max(axis=-1), bg.min(axis=-1)
    return make_vt(t) @ h @ make_D(beta, gamma)
