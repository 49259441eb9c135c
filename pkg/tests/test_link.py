import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ris_pathloss.coeffs import custom, focusing, uniform
from ris_pathloss.farfield import FarScenario, far_path_loss_focused
from ris_pathloss.geometry import TerminalPlacement, build_square_grid
from ris_pathloss.link import (
    PassivityWarning,
    Scenario,
    element_received_power,
    free_space_loss,
    path_loss,
    path_loss_dot_product,
    path_phase,
    receive_power,
)
from ris_pathloss.pattern import ElementPattern, benchmark_pattern

from oracles import chain_received_power


def broadside(r_i=100.0, r_s=100.0, lam=1.0, rows=1, cols=1, **kw):
    return Scenario(
        wavelength=lam,
        ris=build_square_grid(rows, cols, lam / 2),
        tx=TerminalPlacement([0, 0, r_i]),
        rx=TerminalPlacement([0, 0, r_s]),
        **kw,
    )


def random_scenario(rng, max_side=5):
    lam = rng.uniform(0.01, 1.0)
    rows, cols = (int(v) for v in rng.integers(1, max_side + 1, size=2))
    return Scenario(
        wavelength=lam,
        ris=build_square_grid(rows, cols, lam * rng.uniform(0.2, 1.0)),
        tx=TerminalPlacement.polar(lam * rng.uniform(3, 300), rng.uniform(0, 1.4), rng.uniform(0, 2 * np.pi)),
        rx=TerminalPlacement.polar(lam * rng.uniform(3, 300), rng.uniform(0, 1.4), rng.uniform(0, 2 * np.pi)),
        pattern=ElementPattern(rng.uniform(0, 3)),
        tx_power=rng.uniform(0.1, 10),
        tx_gain=rng.uniform(0.5, 5),
        rx_gain=rng.uniform(0.5, 5),
        efficiency=rng.uniform(0.1, 1.0),
    )


def random_phases(rng, n):
    return custom(np.exp(1j * rng.uniform(0, 2 * np.pi, n)))


# path_phase


def test_phase_one_wavelength():
    s = broadside(r_i=0.5, r_s=0.5)
    assert path_phase(s.geometry, 0, 1.0) == pytest.approx(2 * math.pi, rel=1e-15)


def test_phase_unreduced():
    s = broadside(r_i=100.0, r_s=50.0)
    assert path_phase(s.geometry, 0, 1.0) == pytest.approx(300 * math.pi, rel=1e-15)


def test_phase_hand_value():
    s = broadside(r_i=10.3, r_s=5.9)
    assert path_phase(s.geometry, 0, 1.0) == pytest.approx(2 * math.pi * 16.2, rel=1e-14)


# element_received_power


def test_element_power_isotropic_value():
    s = broadside(pattern=ElementPattern(0.0))
    # (1/4pi)^4 * 4 / 1e8, mpmath
    assert element_received_power(s, n=0) == pytest.approx(1.6040597272944274e-12, rel=1e-13)


def test_element_power_distance_law():
    base = element_received_power(broadside(100.0, 70.0), n=0)
    assert element_received_power(broadside(200.0, 70.0), n=0) == pytest.approx(base / 4, rel=1e-15)
    assert element_received_power(broadside(100.0, 140.0), n=0) == pytest.approx(base / 4, rel=1e-15)


def test_element_power_linear_in_efficiency():
    full = element_received_power(broadside(efficiency=1.0), n=0)
    assert element_received_power(broadside(efficiency=0.5), n=0) == full * 0.5


def test_element_power_array_matches_scalar():
    s = random_scenario(np.random.default_rng(3))
    arr = element_received_power(s)
    for n in range(s.ris.n_elements):
        assert element_received_power(s, n=n) == arr[n]


# receive_power / path_loss


def test_single_element_sum_is_that_element():
    s = broadside(r_i=37.0, r_s=12.0)
    res = receive_power(s, uniform(1))
    assert res.received_power == pytest.approx(element_received_power(s, n=0), rel=1e-15)


def test_focusing_aligns_all_paths():
    s = random_scenario(np.random.default_rng(7))
    res = receive_power(s, focusing(s))
    assert res.received_power == pytest.approx(np.sum(np.sqrt(res.element_power)) ** 2, rel=1e-12)


def test_matches_brute_force_chain():
    rng = np.random.default_rng(11)
    s = random_scenario(rng)
    s = Scenario(
        wavelength=s.wavelength, ris=build_square_grid(1, 3, s.wavelength / 2), tx=s.tx, rx=s.rx,
        pattern=s.pattern, tx_power=s.tx_power, tx_gain=s.tx_gain, rx_gain=s.rx_gain, efficiency=s.efficiency,
    )
    b = random_phases(rng, 3)
    ref = chain_received_power(
        s.ris.positions.tolist(), s.tx.position.tolist(), s.rx.position.tolist(), s.wavelength, s.pattern.q,
        b.values, s.tx_power, s.tx_gain, s.rx_gain, s.efficiency,
    )
    assert receive_power(s, b).received_power == pytest.approx(ref, rel=1e-12)


def test_coefficient_count_mismatch():
    s = broadside(rows=2, cols=2)
    with pytest.raises(ValueError):
        path_loss(s, uniform(3))
    with pytest.raises(ValueError):
        receive_power(s, np.ones(5))


@pytest.mark.parametrize("seed", range(20))
def test_received_power_consistent_with_path_loss(seed):
    rng = np.random.default_rng(seed)
    s = random_scenario(rng)
    b = random_phases(rng, s.ris.n_elements)
    pr = receive_power(s, b).received_power
    inv = path_loss(s, b).inverse_loss
    assert pr / (s.tx_power * s.tx_gain * s.rx_gain) == pytest.approx(inv, rel=1e-14)


@pytest.mark.parametrize("seed", range(20))
def test_dot_product_form(seed):
    rng = np.random.default_rng(100 + seed)
    s = random_scenario(rng)
    s = Scenario(wavelength=s.wavelength, ris=s.ris, tx=s.tx, rx=s.rx, pattern=benchmark_pattern(), efficiency=0.7)
    b = random_phases(rng, s.ris.n_elements)
    assert path_loss_dot_product(s, b).inverse_loss == pytest.approx(path_loss(s, b).inverse_loss, rel=1e-14)


def test_dot_product_prefactor_with_pi():
    lam = 0.3
    prefactor = (lam / (4 * math.pi)) ** 4 * math.pi**2
    assert prefactor == pytest.approx(lam**4 / (256 * math.pi**2), rel=1e-15)


def test_focused_exact_matches_far_form():
    lam = 1.0
    r = 1e3
    s = broadside(r, r, lam, rows=10, cols=10)
    exact = path_loss(s, focusing(s)).gain_db
    far = 10 * math.log10(far_path_loss_focused(FarScenario(r, r, lam, n_elements=100), gamma=s.pattern.gamma))
    assert abs(exact - far) < 0.1


def test_loss_db_is_negative_log_gain():
    s = random_scenario(np.random.default_rng(5))
    res = path_loss(s, focusing(s))
    assert res.loss_db == pytest.approx(-10 * math.log10(res.inverse_loss), rel=1e-15)
    assert res.inverse_loss >= 0


def test_passivity_warning_and_active_override():
    s = broadside(rows=1, cols=2, efficiency=0.9)
    with pytest.warns(PassivityWarning):
        path_loss(s, custom([1.2, 1.0]))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        path_loss(s, custom([1.0, 1.0]))
    with pytest.raises(ValueError):
        broadside(efficiency=1.5)
    act = broadside(efficiency=1.5, active=True)
    assert not act.passive


# free_space_loss


def test_free_space_loss_values():
    assert free_space_loss(1.0, 1.0) == pytest.approx((4 * math.pi) ** 2, rel=1e-15)
    assert 10 * math.log10(free_space_loss(1.0, 1.0)) == pytest.approx(21.984, abs=1e-3)
    ratio = 10 * math.log10(free_space_loss(2.0, 0.1) / free_space_loss(1.0, 0.1))
    assert ratio == pytest.approx(6.0206, abs=1e-4)
    assert free_space_loss(2e4, 1.0) == pytest.approx(63165468166.971895, rel=1e-13)
    assert 10 * math.log10(free_space_loss(2e4, 1.0)) == pytest.approx(108.0, abs=0.01)


def test_free_space_loss_rejects_nonpositive():
    with pytest.raises(ValueError):
        free_space_loss(0.0, 1.0)


# invariants


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_reciprocity(seed):
    rng = np.random.default_rng(seed)
    s = random_scenario(rng)
    b = random_phases(rng, s.ris.n_elements)
    assert path_loss(s.swapped(), b).inverse_loss == path_loss(s, b).inverse_loss


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_focusing_optimal(seed):
    rng = np.random.default_rng(seed)
    s = random_scenario(rng)
    best = path_loss(s, focusing(s)).inverse_loss
    for _ in range(10):
        assert path_loss(s, random_phases(rng, s.ris.n_elements)).inverse_loss <= best * (1 + 1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.05, 1.0))
def test_linear_in_efficiency_and_terminals(seed, eps):
    rng = np.random.default_rng(seed)
    s = random_scenario(rng)
    b = random_phases(rng, s.ris.n_elements)
    kw = dict(wavelength=s.wavelength, ris=s.ris, tx=s.tx, rx=s.rx, pattern=s.pattern)
    one = path_loss(Scenario(**kw, efficiency=1.0), b).inverse_loss
    assert path_loss(Scenario(**kw, efficiency=eps), b).inverse_loss == pytest.approx(eps * one, rel=1e-14)
    p1 = receive_power(Scenario(**kw), b).received_power
    p2 = receive_power(Scenario(**kw, tx_power=3.0, tx_gain=2.0, rx_gain=5.0), b).received_power
    assert p2 == pytest.approx(30.0 * p1, rel=1e-14)


def test_summation_bit_reproducible():
    s = broadside(1e3, 1e3, rows=60, cols=60)
    b = focusing(s)
    first = path_loss(s, b)
    for _ in range(3):
        again = path_loss(s, b)
        assert again.inverse_loss == first.inverse_loss
        assert again.coherent_sum == first.coherent_sum
