import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spcover.cover import class_params, cover_mul, tilde_D, tilde_h, tilde_v
from spcover.errors import InvalidInput, NotInvariant, TruncationWarning
from spcover.haar import su2_rule
from spcover.harmonic import (
    CoeffExpansion,
    InvariantFunction,
    check_phi_isometry,
    check_phi_well_defined,
    check_s_spherical,
    check_spherical,
    class_fingerprint,
    disc_coefficients,
    l1_multiplier_norm,
    legendre_coefficients,
    lp_coefficient_norm,
    phi_map,
    phi_pullback,
    project_to_C,
    r_coordinate,
    random_su2_matrices,
    z11,
)
from spcover.special import disc_poly, legendre
from spcover.symplectic import SuParams

seeds = st.integers(0, 2**32 - 1)
RULE = su2_rule(24)


def u1(theta):
    return np.array([[np.exp(1j * theta), 0], [0, np.exp(-1j * theta)]])


def random_expansion(rng, kind, degree, count):
    if kind == "disc":
        keys = [(l, d - l) for d in range(degree + 1) for l in range(d + 1)]
    else:
        keys = list(range(degree + 1))
    pick = rng.choice(len(keys), size=min(count, len(keys)), replace=False)
    return CoeffExpansion(kind, {keys[i]: complex(*rng.normal(size=2)) for i in pick})


# -- coordinates -----------------------------------------------------------------------

def test_r_coordinate_is_double_coset_label(rng):
    g = random_su2_matrices(rng, 20)
    k1 = random_su2_matrices(rng, 1)
    rot = lambda a: np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])
    moved = rot(0.4) @ g @ rot(-1.3)
    assert np.allclose(r_coordinate(moved), r_coordinate(g))
    assert np.all(np.abs(r_coordinate(g)) <= 1 + 1e-12)
    assert np.allclose(z11(u1(0.3) @ g @ u1(-0.3)), z11(g))
    assert k1.shape == (1, 2, 2)


# -- expansions ---------------------------------------------------------------------------

def test_expansion_validation():
    with pytest.raises(InvalidInput):
        CoeffExpansion("fourier", {})
    with pytest.raises(InvalidInput):
        CoeffExpansion("disc", {(-1, 0): 1})
    with pytest.raises(InvalidInput):
        CoeffExpansion("legendre", {0: float("nan")})
    with pytest.raises(InvalidInput):
        CoeffExpansion("legendre", {0: 1}, p=1.0)
    with pytest.raises(InvalidInput):
        CoeffExpansion.from_json({"kind": "disc", "coeffs": [[1, 0, 1.0]]})
    with pytest.raises(InvalidInput):
        CoeffExpansion.from_json({"coeffs": []})


def test_json_round_trip(rng):
    for kind in ("disc", "legendre"):
        e = random_expansion(rng, kind, 6, 5)
        back = CoeffExpansion.from_json(e.to_json())
        assert back.coeffs == e.coeffs
    e = CoeffExpansion("disc", {(1, 2): 1j}, p=3.0)
    assert e.to_json() == {"kind": "disc", "coeffs": [[1, 2, 0.0, 1.0]], "p": 3.0}
    assert CoeffExpansion.from_json(e.to_json()).p == 3.0


def test_synthesis_conventions():
    e = CoeffExpansion.from_synthesis("disc", {(2, 1): 1.0})
    assert e.coeffs[(2, 1)] == pytest.approx(0.25)
    assert e.synthesize(0.5) == pytest.approx(disc_poly(2, 1, 0.5))
    e = CoeffExpansion.from_synthesis("legendre", {3: 2.0})
    assert e.synthesize(0.5) == pytest.approx(2 * legendre(3, 0.5))
    assert CoeffExpansion("legendre", {}).synthesize(np.zeros(3)).shape == (3,)
    assert CoeffExpansion("disc", {(3, 4): 1}).degree == 7


def test_unit_examples_analysis():
    e = disc_coefficients(lambda m: disc_poly(2, 1, z11(m)), RULE)
    for key, c in e.coeffs.items():
        assert abs(c - (0.25 if key == (2, 1) else 0)) <= 1e-12
    e = disc_coefficients(lambda m: np.ones(len(m)), RULE)
    assert e.coeffs[(0, 0)] == pytest.approx(1)
    assert l1_multiplier_norm(e) == pytest.approx(1)
    e = legendre_coefficients(lambda m: legendre(4, r_coordinate(m)), RULE)
    for n, c in e.coeffs.items():
        assert abs(c - (1 / 9 if n == 4 else 0)) <= 1e-12
    e = legendre_coefficients(lambda m: np.ones(len(m)), RULE)
    assert e.coeffs[0] == pytest.approx(1)


@settings(max_examples=20)
@given(seeds)
def test_disc_round_trip(seed):
    rng = np.random.default_rng(seed)
    e = random_expansion(rng, "disc", 11, 8)
    back = disc_coefficients(e.on_su2(), RULE)
    for key in set(back.coeffs) | set(e.coeffs):
        assert abs(back.coeffs.get(key, 0) - e.coeffs.get(key, 0)) <= 1e-8
    assert back.tail <= 1e-10


@settings(max_examples=20)
@given(seeds)
def test_legendre_round_trip(seed):
    rng = np.random.default_rng(seed)
    e = random_expansion(rng, "legendre", 5, 4)
    back = legendre_coefficients(e.on_su2(), RULE)
    for key in set(back.coeffs) | set(e.coeffs):
        assert abs(back.coeffs.get(key, 0) - e.coeffs.get(key, 0)) <= 1e-8


def test_synthesis_reproduces_samples(rng):
    e = random_expansion(rng, "disc", 8, 6)
    back = disc_coefficients(e.on_su2(), RULE)
    g = random_su2_matrices(rng, 50)
    assert np.abs(back.on_su2()(g) - e.on_su2()(g)).max() <= 1e-8


# -- norms ---------------------------------------------------------------------------------

def test_norm_examples():
    assert l1_multiplier_norm(CoeffExpansion("disc", {(0, 0): 1})) == 1
    assert l1_multiplier_norm(CoeffExpansion.from_synthesis("disc", {(3, 1): 1})) == pytest.approx(1)
    assert l1_multiplier_norm(CoeffExpansion.from_synthesis("disc", {(0, 0): 1, (1, 0): 1})) == pytest.approx(2)
    for p in (1.5, 2.0, 24.0):
        assert lp_coefficient_norm(CoeffExpansion("disc", {(2, 3): 1}), p) == pytest.approx(6 ** (1 / p))
    assert lp_coefficient_norm(CoeffExpansion("legendre", {2: 1}, p=4.0)) == pytest.approx(5 ** 0.25)
    with pytest.raises(InvalidInput):
        lp_coefficient_norm(CoeffExpansion("legendre", {2: 1}))
    with pytest.raises(InvalidInput):
        lp_coefficient_norm(CoeffExpansion("legendre", {2: 1}), math.inf)


@given(seeds, st.floats(1.1, 50))
def test_lp_below_l1_for_normalized(seed, p):
    e = random_expansion(np.random.default_rng(seed), "disc", 6, 5)
    # |c| dim >= |c| dim^{1/p} |c|^{(p-1)/p} once |c| <= 1, so rescale first
    scale = max(abs(c) for c in e.coeffs.values())
    e = CoeffExpansion("disc", {k: v / scale for k, v in e.coeffs.items()})
    assert lp_coefficient_norm(e, p) <= l1_multiplier_norm(e) + 1e-12


def test_truncation_warning():
    bump = lambda m: np.exp(-4 * np.abs(m[:, 0, 0] - 1) ** 2)
    e = disc_coefficients(bump, RULE, max_degree=2)
    assert e.tail > 1e-8
    with pytest.warns(TruncationWarning):
        l1_multiplier_norm(e)
    with pytest.warns(TruncationWarning):
        lp_coefficient_norm(e, 2.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        l1_multiplier_norm(disc_coefficients(bump, su2_rule(40)))


# -- symmetry probes -------------------------------------------------------------------------

def test_not_invariant_is_detected(rng):
    bad = InvariantFunction(lambda m: m[:, 0, 1].real, "int", "U(1)")
    with pytest.raises(NotInvariant):
        disc_coefficients(bad, RULE, rng=rng)
    good = InvariantFunction(lambda m: disc_poly(1, 0, z11(m)), "int", "U(1)")
    assert good.probe(rng) <= 1e-12
    with pytest.raises(NotInvariant):
        legendre_coefficients(good, RULE, rng=rng)
    bi = InvariantFunction(lambda m: legendre(2, r_coordinate(m)), "bi", "SO(2)")
    assert legendre_coefficients(bi, RULE, rng=rng).coeffs[2] == pytest.approx(0.2)
    with pytest.raises(InvalidInput):
        InvariantFunction(lambda m: m, "left", "U(1)")
    with pytest.raises(InvalidInput):
        InvariantFunction(lambda m: m, "int", "SU(2)")


# -- functional equations ------------------------------------------------------------------------

@pytest.mark.parametrize("n", [0, 1, 5, 20])
def test_legendre_spherical(n, rng):
    assert check_spherical(lambda m: legendre(n, r_coordinate(m)), "SU(2),SO(2)", 24, rng=rng) <= 1e-12


@pytest.mark.parametrize("lm", [(0, 0), (1, 0), (2, 1), (3, 5), (6, 4)])
def test_disc_spherical_for_u2(lm, rng):
    h = lambda m: disc_poly(*lm, z11(m))
    assert check_spherical(h, "U(2),L", 24, rng=rng) <= 1e-12


@pytest.mark.parametrize("lm", [(0, 0), (1, 0), (2, 1), (4, 4), (0, 10)])
def test_disc_s_spherical(lm, rng):
    assert check_s_spherical(lambda m: disc_poly(*lm, z11(m)), 24, rng=rng) <= 1e-12


def test_non_spherical_bump_detected(rng):
    bump = lambda m: np.exp(-3 * (1 - r_coordinate(m)))
    assert check_spherical(bump, "SU(2),SO(2)", 24, rng=rng) > 1e-3
    assert check_s_spherical(lambda m: np.exp(-3 * np.abs(1 - m[:, 0, 0]) ** 2), 24, rng=rng) > 1e-3
    with pytest.raises(InvalidInput):
        check_spherical(bump, "SU(3),SO(3)")


# -- the (G x K, diagonal K) correspondence -----------------------------------------------------

def test_phi_map_examples(rng):
    g = random_su2_matrices(rng, 5)
    e = np.broadcast_to(np.eye(2), g.shape)
    assert np.allclose(phi_map(g, e), g)
    k = u1(0.7)
    assert np.allclose(phi_map(g, k), np.conj(k.T) @ g)
    conj = k @ g @ np.conj(k.T)
    assert np.allclose(class_fingerprint(phi_map(conj, e)), class_fingerprint(phi_map(g, e)))
    assert check_phi_well_defined(rng) <= 1e-12
    f = lambda m: disc_poly(2, 0, z11(m))
    assert np.allclose(phi_pullback(f)(g, k), f(np.conj(k.T) @ g))


def test_phi_isometry_examples(rng):
    a, b = check_phi_isometry(lambda m: np.ones(len(m)), order=8)
    assert a == pytest.approx(1) and b == pytest.approx(1)
    a, b = check_phi_isometry(lambda m: disc_poly(2, 1, z11(m)), order=8)
    assert a == pytest.approx(0.5) and abs(a - b) <= 1e-12
    e = random_expansion(rng, "disc", 5, 4)
    a, b = check_phi_isometry(e.on_su2(), order=12)
    assert abs(a - b) <= 1e-10


# -- the averaging projector ------------------------------------------------------------------------

def cover_point(rng):
    return cover_mul(cover_mul(tilde_v(rng.uniform(-1, 1)), tilde_h(SuParams.random(rng))), tilde_D(1.1, 0.4))


def test_projector_fixes_constants_and_class_functions(rng):
    x = cover_point(rng)
    assert project_to_C(lambda g, t: np.ones(len(t)), x) == pytest.approx(1)
    cp = class_params(x)
    assert project_to_C(lambda g, t: np.exp(0.3 * t) + 0 * g[:, 0, 0], x) == pytest.approx(math.exp(0.3 * cp.t))


def test_projector_kills_matrix_entries(rng):
    x = cover_point(rng)
    f = lambda g, t: np.cos(t) * (1 + g[:, 0, 2])
    assert project_to_C(f, x) == pytest.approx(math.cos(class_params(x).t), abs=1e-12)


def test_projector_output_is_invariant(rng):
    x = cover_point(rng)
    f = lambda g, t: g[:, 0, 0] ** 2 + 0.1 * g[:, 1, 3] + np.sin(t)
    base = project_to_C(f, x)
    h1, h2 = tilde_h(SuParams.random(rng)), tilde_h(SuParams.random(rng))
    assert project_to_C(f, cover_mul(cover_mul(h1, x), h2)) == pytest.approx(base, abs=1e-10)
    s = 0.37
    y = cover_mul(cover_mul(tilde_v(s), x), tilde_v(-s))
    assert project_to_C(f, y) == pytest.approx(base, abs=1e-10)


def test_projector_idempotent(rng):
    x = cover_point(rng)
    f = lambda g, t: g[:, 0, 0] ** 2 + np.sin(t)
    once = lambda g, t: np.array([project_to_C(f, _elem(gi, ti)) for gi, ti in zip(g, t)])
    assert project_to_C(once, x, order=2, t_nodes=2) == pytest.approx(project_to_C(f, x), abs=1e-10)


def _elem(g, t):
    from spcover.cover import CoverElement

    return CoverElement(g, t, tol=1e-6)
