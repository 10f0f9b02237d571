import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from khpert.errors import AccuracyError, DomainError
from khpert.hydrogen import BoundState
from khpert.rates import (
    RateResult,
    ati_channel_terms,
    ati_prefactor,
    ati_rate_closed,
    ati_tail_bound,
    golden_rule_consistency,
    golden_rule_rate,
    hydrogenic_coupling,
    rabi_frequency,
    sphere_rule,
)
from khpert.units import ALPHA, M_E


def _args(s):
    return s.gamma, s.laser.photon_energy_omega, s.laser.ponderomotive_Up, s.atom.ionization_IB


def test_rate_helium(he):
    res = ati_rate_closed(*_args(he))
    assert res.total_rate_Gamma == pytest.approx(0.026, rel=0.30)
    assert res.tail_bound <= 1e-4 * res.total_rate_Gamma
    assert res.n0 == 10 and res.per_channel[0][0] == 21


def test_rate_neon(ne):
    res = ati_rate_closed(*_args(ne))
    assert res.total_rate_Gamma == pytest.approx(0.02, rel=0.30)
    assert res.per_channel[0][0] == 19


def test_rate_with_reference_parameters():
    res = ati_rate_closed(0.398, 1.177, 155.0, 24.59)
    assert res.total_rate_Gamma == pytest.approx(0.026, rel=0.30)


def test_rate_result_invariants(he):
    res = ati_rate_closed(*_args(he))
    assert res.total_rate_Gamma == pytest.approx(math.fsum(r for _, r in res.per_channel), rel=1e-12)
    assert all(r >= 0 for _, r in res.per_channel)


def test_rate_quadratic_in_gamma(he):
    g, w, Up, IB = _args(he)
    r1 = ati_rate_closed(g, w, Up, IB).total_rate_Gamma
    r2 = ati_rate_closed(g / 10, w, Up, IB).total_rate_Gamma
    assert r2 / r1 == pytest.approx(1e-2, rel=1e-10)


def test_rate_stable_under_larger_n_max(he):
    auto = ati_rate_closed(*_args(he))
    n_auto = (auto.per_channel[-1][0] - 1) // 2
    bigger = ati_rate_closed(*_args(he), n_max=4 * n_auto)
    assert bigger.total_rate_Gamma == pytest.approx(auto.total_rate_Gamma, rel=1e-4)
    assert bigger.total_rate_Gamma >= auto.total_rate_Gamma


def test_tail_bound_is_a_bound(he):
    g, w, Up, IB = _args(he)
    n_max = 60
    partial_tail = ati_prefactor(g, w, Up) * math.fsum(ati_channel_terms(np.arange(n_max + 1, 2_000_000), w, IB))
    assert 0 < partial_tail <= ati_tail_bound(n_max, g, w, Up, IB)


def test_explicit_n_max_too_small(he):
    with pytest.raises(AccuracyError) as exc:
        ati_rate_closed(*_args(he), n_max=20)
    assert exc.value.error > 0 and exc.value.estimate > 0


def test_rate_domain_errors():
    with pytest.raises(DomainError):
        ati_rate_closed(0.4, 0.0, 155.0, 24.59)


def test_channel_terms_unimodal_and_decaying():
    n = np.arange(10, 3000)
    t = ati_channel_terms(n, 1.177, 24.59)
    assert np.all(t > 0)
    i = int(np.argmax(t))
    assert 0 < i < len(t) - 1
    assert np.all(np.diff(t[: i + 1]) > 0) and np.all(np.diff(t[i:]) < 0)
    # far tail decays as (2n+1)^{-5/2}
    big = np.array([10000, 20000])
    ratio = ati_channel_terms(big, 1.177, 24.59)
    assert ratio[0] / ratio[1] == pytest.approx(((2 * 20000 + 1) / (2 * 10000 + 1)) ** 2.5, rel=1e-3)


def test_rate_result_serialization(he):
    res = ati_rate_closed(*_args(he))
    rows = list(csv.reader(io.StringIO(res.to_csv())))
    assert rows[0] == ["order", "partial_rate_eV"]
    assert int(rows[1][0]) == 21 and float(rows[1][1]) == res.per_channel[0][1]
    doc = json.loads(res.to_json())
    assert doc["total_rate_Gamma"] == res.total_rate_Gamma and doc["n0"] == 10


def test_sphere_rule_integrates_polynomials():
    dirs, w = sphere_rule()
    assert np.sum(w) == pytest.approx(4 * math.pi, rel=1e-14)
    assert np.sum(w * dirs[:, 0] ** 2) == pytest.approx(4 * math.pi / 3, rel=1e-13)
    assert np.linalg.norm(dirs, axis=1) == pytest.approx(1.0)


def test_golden_rule_closed_channels():
    res = golden_rule_rate(lambda k, p: np.ones(len(p)), 0.01, 24.59, orders=[1, 3, 5])
    assert res.total_rate_Gamma == 0.0 and res.per_channel == []


def test_golden_rule_density_of_states():
    M = 2.5e-3
    w, IB, k = 1.0, 3.5, 5
    res = golden_rule_rate(lambda kk, p: np.full(len(p), M), w, IB, orders=[k])
    p = math.sqrt(2 * M_E * (k * w - IB))
    ref = 2 * math.pi * M**2 * 4 * math.pi * M_E * p / (2 * math.pi) ** 3
    assert res.total_rate_Gamma == pytest.approx(ref, rel=1e-13)


def test_golden_rule_matches_closed_form(he):
    rows = golden_rule_consistency(he.laser.photon_energy_omega, he.laser.ponderomotive_Up, he.atom.ionization_IB)
    assert [r[0] for r in rows] == list(range(21, 41, 2))
    assert max(r[3] for r in rows) <= 1e-2


@given(st.floats(0.5, 3.0), st.floats(5.0, 40.0), st.floats(20.0, 500.0))
def test_golden_rule_consistency_property(w, IB, Up):
    rows = golden_rule_consistency(w, Up, IB, n_channels=3, n_theta=24, n_phi=8)
    assert max(r[3] for r in rows) <= 1e-2


def test_hydrogenic_coupling_even_orders_vanish():
    c = hydrogenic_coupling(0.03, 1e-4, 2 * ALPHA)
    p = np.ones((4, 3))
    assert np.all(c(2, p) == 0)
    assert np.all(np.abs(c(3, p)) > 0)


def test_rabi_frequency():
    g = BoundState(1, 0, 0, Z=2)
    lam = 0.03
    assert rabi_frequency(BoundState(2, 1, 1, Z=2), g, 4, lam) == 0.0
    both = math.hypot(*(rabi_frequency(BoundState(2, 1, m, Z=2), g, 3, lam) for m in (-1, 1)))
    assert both == pytest.approx(2 * 3 * 2 * ALPHA / lam**2 * 128 * math.sqrt(2) / 243 * g.a, rel=1e-10)
    r1 = rabi_frequency(BoundState(2, 1, 1, Z=2), g, 1, lam)
    assert rabi_frequency(BoundState(2, 1, 1, Z=2), g, 1, 2 * lam) == pytest.approx(r1 / 4, rel=1e-14)
    with pytest.raises(DomainError):
        rabi_frequency(BoundState(2, 1, 1, Z=1), g, 1, lam)


def test_rate_result_defaults():
    assert RateResult(0.0).per_channel == []
