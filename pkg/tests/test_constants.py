import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spcover.constants import bound_chain, dual_exponent
from spcover.errors import InvalidInput, OutOfWindow

R2 = math.sqrt(2)


def test_cb_chain_identities():
    c = bound_chain(1.1)
    assert c.Btilde == 8 * R2 + 24
    assert c.Btilde == pytest.approx(35.3137, abs=1e-4)
    assert c.B1 == 4 * R2 + c.Btilde
    assert c.B2 == max(1.1, 2 * math.exp(0.25))
    assert c.B3 == math.exp(1 / 8) * (c.B1 + c.B2)
    assert c.B3prime == c.B3 / (1 - math.exp(-1 / 16))
    assert c.B4 == max(c.B3prime, 2 * math.exp(5 / 16))
    assert c.C1 == max(c.B1 + c.B4, c.B2 + c.B4)
    assert c.C2 > 0
    assert c.envelope(0, 0) == c.C1
    assert c.dual_endpoint == 12 / 11


def test_large_ctilde_enters_b2():
    assert bound_chain(10.0).B2 == 10.0


def test_p_mode_examples():
    c = bound_chain(1.1, 24)
    assert c.C2 == pytest.approx(1 / (256 * R2), rel=1e-15)
    assert c.B1 is None and c.C1 is None
    with pytest.raises(InvalidInput):
        c.envelope(1, 1)
    inf = bound_chain(1.1, math.inf)
    assert inf.C2 == pytest.approx(1 / (128 * R2))
    assert inf.to_dict()["p"] == "inf"


@given(st.floats(12.0001, 1e6))
def test_p_mode_formula(p):
    c = bound_chain(1.1, p)
    assert c.C2 == (0.25 - 3 / p) / (32 * R2)
    assert c.C2 > 0
    assert c.rate_hyperbola == 0.25 * (0.25 - 3 / p)
    assert c.rate_circle == 0.25 * (0.25 - 1 / p)
    assert c.rate_ray == 0.125 * (0.25 - 3 / p)


@given(st.floats(1e-6, 12.0))
def test_out_of_window(p):
    with pytest.raises(OutOfWindow) as info:
        bound_chain(1.1, p)
    assert info.value.dual_endpoint == 12 / 11


def test_threshold_exact():
    with pytest.raises(OutOfWindow):
        bound_chain(1.1, 12)
    assert bound_chain(1.1, math.nextafter(12.0, 13.0)).C2 > 0


def test_dual_exponent():
    assert dual_exponent(12) == 12 / 11
    assert dual_exponent(2) == 2
    assert dual_exponent(math.inf) == 1
    with pytest.raises(InvalidInput):
        dual_exponent(1)


def test_invalid_inputs():
    with pytest.raises(InvalidInput):
        bound_chain(0.0)
    with pytest.raises(InvalidInput):
        bound_chain(1.1, math.nan)
