import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from khpert.errors import DomainError
from khpert.harmonics import (
    HarmonicLine,
    HarmonicSpectrum,
    amplitude_constant,
    build_spectrum,
    cutoff_order,
    dipole_power_spectrum,
    dipole_signal,
    line_amplitude,
    rabi_shifted_lines,
    reduced_amplitude,
    reduced_amplitude_small_gamma,
    time_grid,
    x_n,
)
from khpert.spectral import fwhm, parseval_residual, power_spectrum


def _he_args(s):
    return s.laser.photon_energy_omega, s.atom.ionization_IB, s.laser.ponderomotive_Up


def test_x_n_examples():
    assert x_n(10, 1.177, 24.59, 155.0) == pytest.approx((21 * 1.177 - 24.59) / 465, rel=1e-14)
    assert x_n(10, 1.177, 24.59, 155.0) == pytest.approx(2.73e-4, rel=2e-3)
    assert x_n(2, 1.0, 5.0, 10.0) == 0.0
    with pytest.raises(DomainError):
        x_n(9, 1.177, 24.59, 155.0)


@given(st.floats(0.5, 2.0), st.floats(5.0, 30.0), st.floats(10.0, 300.0))
def test_x_n_unity_at_cutoff_condition(w, IB, Up):
    # choose I_B so that order k sits exactly on I_B + 3 U_p
    k = 2 * math.ceil((IB + 3 * Up) / w / 2) + 1
    IB_exact = k * w - 3 * Up
    if IB_exact <= 0:
        return
    assert x_n((k - 1) // 2, w, IB_exact, Up) == pytest.approx(1.0, rel=1e-12)


def test_amplitude_constants(he, ne):
    assert amplitude_constant(2, 1.177, 155.0, 0.398) == pytest.approx(0.32e-8, rel=0.05)
    assert amplitude_constant(10, 1.177, 155.0, 0.373) == pytest.approx(0.12e-7, rel=0.05)
    assert amplitude_constant(2, 1.177, 155.0, 0.8) == pytest.approx(32 * amplitude_constant(2, 1.177, 155.0, 0.4))
    for s, ref in ((he, 0.32e-8), (ne, 0.12e-7)):
        C = amplitude_constant(s.atom.Z, s.laser.photon_energy_omega, s.laser.ponderomotive_Up, s.gamma)
        assert C == pytest.approx(ref, rel=0.05)


def test_line_amplitude_threshold_and_sign():
    assert line_amplitude(2, 1.0, 5.0, 10.0, 0.3, 2) == 0.0
    assert line_amplitude(3, 1.0, 5.0, 10.0, 0.3, 2) < 0
    with pytest.raises(DomainError):
        line_amplitude(1, 1.0, 5.0, 10.0, 0.3, 2)


def test_small_gamma_limit():
    g = 0.01
    for x in (0.5, 1.0, 2.0):
        assert reduced_amplitude(x, g) / reduced_amplitude_small_gamma(x) == pytest.approx(1.0, rel=1e-2)


def test_cutoff_steepness():
    assert reduced_amplitude_small_gamma(2.0) / reduced_amplitude_small_gamma(1.0) == pytest.approx(0.088, rel=5e-3)


def test_cutoff_order_values():
    assert cutoff_order(1.177, 24.59, 155.0) == 415
    assert cutoff_order(1.177, 24.59, 0.0) == 21
    with pytest.raises(DomainError):
        cutoff_order(0.0, 24.59, 155.0)


@given(st.floats(0.0, 400.0), st.floats(0.0, 400.0))
def test_cutoff_monotone(u1, u2):
    lo, hi = sorted((u1, u2))
    assert cutoff_order(1.177, 24.59, lo) <= cutoff_order(1.177, 24.59, hi)


def test_build_spectrum_orders(he, ne):
    for s, first in ((he, 21), (ne, 19)):
        spec = build_spectrum(*_he_args(s), s.gamma, s.atom.Z)
        assert spec.orders()[0] == first
        assert all(b - a == 2 for a, b in zip(spec.orders(), spec.orders()[1:]))
        assert x_n(spec.lines[-1].n, *_he_args(s)) <= 3.0
    with pytest.raises(DomainError):
        build_spectrum(*_he_args(he), he.gamma, 2, damping=-1.0)


def test_spectrum_serialization(he):
    spec = build_spectrum(*_he_args(he), he.gamma, 2, damping=0.03, x_max=0.01, provenance={"scenario": "he"})
    rows = list(csv.reader(io.StringIO(spec.to_csv())))
    assert rows[0] == ["order", "frequency_eV", "amplitude_eV-1", "amplitude_squared_eV-2"]
    assert float(rows[1][3]) == pytest.approx(float(rows[1][2]) ** 2)
    doc = json.loads(spec.to_json())
    assert doc["provenance"] == {"scenario": "he"} and doc["damping_Gamma_eV"] == 0.03


def _single(order=3, amp=1.0, damping=0.0, w=1.0):
    return HarmonicSpectrum([HarmonicLine((order - 1) // 2, order, order * w, amp)], 1.0, damping)


def test_dipole_signal_basics():
    spec = _single()
    assert dipole_signal(0.0, spec) == 0.0
    t = np.linspace(0.0, 10.0, 101)
    assert np.allclose(dipole_signal(-t, spec), -dipole_signal(t, spec), atol=1e-15)


def test_single_line_fft():
    spec = _single(order=5)
    t, sig, ps = dipole_power_spectrum(spec, 1.0)
    peaks = ps.peaks(rel_floor=1e-3)
    assert len(peaks) == 1 and peaks[0][0] == pytest.approx(5.0, abs=1e-9)


def test_damped_line_width():
    G = 0.05
    spec = _single(order=3, damping=G)
    dt = 2 * np.pi / 64
    t = np.arange(int(400 / G / dt)) * dt
    ps = power_spectrum(dipole_signal(t, spec), dt, window=None, pad_to=4 * t.size)
    sel = np.abs(ps.frequency - 3.0) < 1.0
    assert fwhm(ps.frequency[sel], ps.power[sel]) == pytest.approx(2 * G, rel=0.02)


def test_rabi_split_lines():
    spec = _single(order=7, amp=2.0)
    assert rabi_shifted_lines(spec, 0.0).lines == spec.lines
    split = rabi_shifted_lines(spec, 0.2)
    assert [ln.frequency for ln in split.lines] == pytest.approx([6.9, 7.1])
    assert [ln.amplitude for ln in split.lines] == [1.0, 1.0]
    with pytest.raises(DomainError):
        rabi_shifted_lines(spec, -0.1)


def test_rabi_split_matches_modulated_signal_fft():
    w, k, OmR = 1.0, 5, 0.2
    spec = _single(order=k, w=w)
    split = rabi_shifted_lines(spec, OmR)
    t = time_grid(spec, w, min_cycles=200)
    modulated = dipole_signal(t, spec) * np.cos(0.5 * OmR * t)
    assert np.allclose(dipole_signal(t, split), modulated, atol=1e-12)
    peaks = power_spectrum(modulated, t[1] - t[0]).peaks(rel_floor=1e-2)
    assert [f for f, _ in peaks] == pytest.approx([k * w - 0.1 * w, k * w + 0.1 * w], abs=0.01)


def test_time_grid_design(he):
    spec = build_spectrum(*_he_args(he), he.gamma, 2, damping=0.0308)
    t = time_grid(spec, he.laser.photon_energy_omega)
    period = 2 * np.pi / he.laser.photon_energy_omega
    per_cycle = period / (t[1] - t[0])
    assert round(per_cycle) >= 64 and round(per_cycle) >= 2 * spec.orders()[-1]
    assert t[-1] >= max(20 * period, 5 / 0.0308) - 2 * (t[1] - t[0])


@given(st.lists(st.floats(-1, 1), min_size=8, max_size=256))
def test_parseval(values):
    x = np.array(values)
    if np.sum(x * x) == 0:
        return
    assert parseval_residual(x) <= 1e-8


def test_parseval_generated_signal(he):
    spec = build_spectrum(*_he_args(he), he.gamma, 2, damping=0.03, x_max=0.05)
    t = time_grid(spec, he.laser.photon_energy_omega)
    assert parseval_residual(dipole_signal(t, spec)) <= 1e-8
