import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import jv

from chirped_inversion.bessel import bessel_j_sequence


@pytest.mark.parametrize("x", [0.0, 1e-8, 0.5, 1.0, 7.3, 40.0, 250.0, 1500.0])
def test_matches_scipy(x):
    n = int(x) + 60
    ours = bessel_j_sequence(x, n)
    ref = jv(np.arange(n + 1), x)
    assert np.max(np.abs(ours - ref)) < 1e-13


@pytest.mark.parametrize("x", [-0.5, -12.0])
def test_negative_argument(x):
    ours = bessel_j_sequence(x, 40)
    np.testing.assert_allclose(ours, jv(np.arange(41), x), atol=1e-14)


def test_zero_argument():
    out = bessel_j_sequence(0.0, 5)
    assert out[0] == 1.0 and np.all(out[1:] == 0)


@given(st.floats(0.0, 300.0))
@settings(max_examples=50)
def test_neumann_sum(x):
    # J_0 + 2 sum J_2k = 1 and J_0**2 + 2 sum J_n**2 = 1
    j = bessel_j_sequence(x, int(x) + 80)
    assert j[0] + 2 * j[2::2].sum() == pytest.approx(1.0, abs=1e-12)
    assert j[0] ** 2 + 2 * np.sum(j[1:] ** 2) == pytest.approx(1.0, abs=1e-12)
