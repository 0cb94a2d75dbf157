import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spcover.constants import bound_chain
from spcover.cover import class_params, cover_mul, tilde_D, tilde_h, tilde_v
from spcover.decay import (
    TestMultiplier,
    decay_experiment,
    default_multiplier,
    in_regime,
    restriction_chi,
    restriction_psi,
    surrogate_norm,
    synth_multiplier,
)
from spcover.errors import InvalidInput
from spcover.harmonic import CoeffExpansion, disc_coefficients, random_su2_matrices
from spcover.haar import su2_rule
from spcover.special import disc_amplitudes
from spcover.symplectic import SuParams

CHAIN = bound_chain(1.1)
seeds = st.integers(0, 2**32 - 1)


def evaluate(m, x):
    return complex(m(x.g[None], np.array([x.t]))[0])


def test_validation():
    d = CoeffExpansion("disc", {(0, 0): 1})
    lg = CoeffExpansion("legendre", {0: 1})
    with pytest.raises(InvalidInput):
        TestMultiplier(lg, d)
    with pytest.raises(InvalidInput):
        TestMultiplier(d, lg, profile="gauss")
    with pytest.raises(InvalidInput):
        TestMultiplier(d, lg, kappa=0)


def test_json_round_trip():
    m = default_multiplier()
    back = TestMultiplier.from_json(m.to_json())
    assert back == m


@settings(max_examples=25)
@given(seeds)
def test_multiplier_is_class_function(seed):
    rng = np.random.default_rng(seed)
    m = default_multiplier()
    x = cover_mul(cover_mul(tilde_v(rng.uniform(-2, 2)), tilde_h(SuParams.random(rng))), tilde_D(2.0, 0.7))
    base = evaluate(m, x)
    y = cover_mul(cover_mul(tilde_h(SuParams.random(rng)), x), tilde_h(SuParams.random(rng)))
    s = rng.uniform(-3, 3)
    z = cover_mul(cover_mul(tilde_v(s), x), tilde_v(-s))
    assert evaluate(m, y) == pytest.approx(base, abs=1e-9)
    assert evaluate(m, z) == pytest.approx(base, abs=1e-9)
    cp = class_params(x)
    assert complex(m.dot(cp.beta, cp.gamma, cp.t)) == pytest.approx(base, abs=1e-9)


def test_constant_multiplier():
    m = synth_multiplier(profile="const")
    assert complex(m.dot(3.0, 1.0, 0.4)) == 1
    norm = surrogate_norm(m, alphas=(0.5, 1.0), order=12)
    assert norm.value == pytest.approx(1.0, abs=1e-12)
    res = decay_experiment(m, CHAIN, [0.0, 1.0], s_max=10, steps=21, norm=norm)
    assert res.c_phi == pytest.approx([1.0, 1.0])
    assert max(r[6] for r in res.rows) == 0.0
    assert res.passed()
    assert res.fitted_rate is None


def test_compact_support_gives_zero_limit():
    m = synth_multiplier(CoeffExpansion.from_synthesis("disc", {(1, 0): 1}), profile="bump", radius=5.0)
    res = decay_experiment(m, CHAIN, [-1.0, 0.5], s_max=12, steps=25, norm=surrogate_norm(m, alphas=(0.5,), order=12))
    assert res.c_phi == [0, 0]
    for row in res.rows:
        if math.hypot(row[2], row[3]) >= 5.0:
            assert row[4] == 0 and row[5] == 0
    assert all(res.converged)


def test_disc_factor_recovered_from_t_profile():
    lm = (3, 1)
    m = synth_multiplier(CoeffExpansion.from_synthesis("disc", {lm: 1}), profile="const")
    n = 64
    t = 2 * math.pi * np.arange(n) / n
    vals = m.dot(0.0, 0.0, t)
    spectrum = np.fft.fft(vals) / n
    k = lm[0] - lm[1]
    assert abs(spectrum[k]) == pytest.approx(disc_amplitudes(4)[lm], abs=1e-13)
    assert np.abs(np.delete(spectrum, k)).max() <= 1e-13
    back = disc_coefficients(m.disc.on_su2(), su2_rule(12))
    assert back.coeffs[lm] == pytest.approx(0.2)


def test_restrictions_have_symmetry(rng):
    m = default_multiplier()
    g = random_su2_matrices(rng, 8)
    u = np.diag([np.exp(0.9j), np.exp(-0.9j)])
    psi = restriction_psi(m, 1.0)
    assert np.allclose(psi(np.conj(u.T) @ g @ u), psi(g), atol=1e-9)
    rot = np.array([[math.cos(0.6), -math.sin(0.6)], [math.sin(0.6), math.cos(0.6)]])
    for sign in (1, -1):
        chi = restriction_chi(m, 1.0, sign)
        assert np.allclose(chi(rot @ g @ rot.T), chi(g), atol=1e-9)
        assert np.allclose(chi(rot @ g), chi(g), atol=1e-9)


def test_regime_predicate():
    assert in_regime(20.0, 10.0, 10.0)
    assert not in_regime(20.0, 15.0, 10.0)
    assert not in_regime(20.0, 1.0, 10.0)
    assert not in_regime(20.0, 10.0, 4.0)


def test_default_experiment():
    m = default_multiplier()
    res = decay_experiment(m, CHAIN, np.linspace(-math.pi, math.pi, 5), s_max=30, steps=61)
    assert res.t_spread <= 1e-4
    assert res.envelope_checked > 0 and res.envelope_ok
    assert res.flatness_ok
    assert all(res.converged)
    assert res.c_phi == pytest.approx([0.25] * 5, abs=1e-6)
    assert res.fitted_rate > 0
    devs = [f["deviation"] for f in res.flatness]
    assert all(b <= a + 1e-15 for a, b in zip(devs, devs[1:]))
    assert "surrogate" in res.norm_label
