import math

import numpy as np
import pytest

from timefringe.errors import DomainError, ResolutionError
from timefringe.numerics import integrate_1d
from timefringe.packets import (GaussianSpatialPacket, Grid2D, Moments,
                                SpacetimePacket, TimeGate, evaluate_packet,
                                expectations, norm2, packet_on_grid)


def single_gate_packet(width=0.5, center=0.0, profile="gaussian"):
    return SpacetimePacket(
        spatial=GaussianSpatialPacket(0.0, 1.0, 0.3),
        gates=(TimeGate(center_t=center, width_delta_t=width,
                        profile=profile),),
        mean_energy_E0=1.0).normalized()


def default_grid(packet, n_x=257, n_t=513, pad=7.0):
    w = packet.spatial.width_sigma_x
    lo_t = min(g.center_t - pad * g.width_delta_t for g in packet.gates)
    hi_t = max(g.center_t + pad * g.width_delta_t for g in packet.gates)
    return Grid2D(packet.spatial.center_x - pad * w,
                  packet.spatial.center_x + pad * w, n_x, lo_t, hi_t, n_t)


class TestSpatialPacket:
    def test_closed_form_unit_norm(self):
        pk = GaussianSpatialPacket(0.7, 1.3, 2.0)
        x = np.linspace(0.7 - 12 * 1.3, 0.7 + 12 * 1.3, 4001)
        n2 = integrate_1d(np.abs(pk.amplitude(x)) ** 2, x[1] - x[0])
        assert n2 == pytest.approx(1.0, rel=1e-9)

    def test_rejects_nonpositive_width(self):
        with pytest.raises(DomainError):
            GaussianSpatialPacket(width_sigma_x=0.0)


class TestTimeGate:
    def test_rejects_bad_profile(self):
        with pytest.raises(DomainError):
            TimeGate(profile="triangular")

    def test_rectangular_support(self):
        g = TimeGate(center_t=1.0, width_delta_t=2.0, profile="rectangular")
        assert g.envelope(1.9) == 1.0
        assert g.envelope(2.1) == 0.0


class TestEvaluatePacket:
    def test_peak_at_gate_center(self):
        pk = single_gate_packet()
        grid = default_grid(pk)
        field = np.abs(packet_on_grid(pk, grid))
        peak = np.abs(evaluate_packet(pk, 0.0, 0.0))
        assert peak >= field.max() * (1 - 1e-9)

    def test_two_coincident_gates_double_amplitude(self):
        pk = single_gate_packet()
        g = pk.gates[0]
        doubled = SpacetimePacket(spatial=pk.spatial, gates=(g, g),
                                  mean_energy_E0=pk.mean_energy_E0)
        x = np.linspace(-3, 3, 41)
        t = np.linspace(-2, 2, 41)
        for xi in x[::8]:
            np.testing.assert_allclose(
                evaluate_packet(doubled, xi, t),
                2.0 * evaluate_packet(pk, xi, t), rtol=1e-12)

    def test_gate_list_linearity(self):
        spatial = GaussianSpatialPacket(0.0, 1.0, 0.3)
        g1 = TimeGate(0.0, 0.5, amplitude=0.8 + 0.1j)
        g2 = TimeGate(3.0, 0.7, amplitude=0.4 - 0.2j)
        both = SpacetimePacket(spatial, (g1, g2), 1.0)
        only1 = SpacetimePacket(spatial, (g1,), 1.0)
        only2 = SpacetimePacket(spatial, (g2,), 1.0)
        t = np.linspace(-4, 8, 301)
        np.testing.assert_allclose(
            evaluate_packet(both, 0.5, t),
            evaluate_packet(only1, 0.5, t) + evaluate_packet(only2, 0.5, t),
            rtol=1e-12)

    def test_distant_gate_does_not_perturb(self):
        w = 0.5
        spatial = GaussianSpatialPacket(0.0, 1.0, 0.0)
        near = SpacetimePacket(spatial, (TimeGate(0.0, w),), 1.0)
        far = SpacetimePacket(spatial,
                              (TimeGate(0.0, w), TimeGate(10 * w, w)), 1.0)
        a = abs(evaluate_packet(near, 0.0, 0.0))
        b = abs(evaluate_packet(far, 0.0, 0.0))
        # tail of the far gate at 10 widths: exp(-50) ~ 2e-22
        assert abs(a - b) / a < 1e-9


class TestNorm2:
    def test_normalized_packet(self):
        pk = single_gate_packet()
        assert norm2(pk, default_grid(pk)) == pytest.approx(1.0, abs=1e-6)

    def test_two_disjoint_half_gates(self):
        spatial = GaussianSpatialPacket(0.0, 1.0, 0.0)
        pk = SpacetimePacket(
            spatial,
            (TimeGate(0.0, 0.5), TimeGate(20.0, 0.5)), 1.0).normalized()
        grid = default_grid(pk, n_t=2049)
        assert norm2(pk, grid) == pytest.approx(1.0, abs=1e-6)
        half = SpacetimePacket(spatial, pk.gates[:1], 1.0)
        assert norm2(half, grid) == pytest.approx(0.5, abs=1e-6)

    def test_quadratic_amplitude_scaling(self):
        pk = single_gate_packet()
        scaled = SpacetimePacket(
            pk.spatial,
            tuple(TimeGate(g.center_t, g.width_delta_t, g.profile,
                           2.0 * g.amplitude) for g in pk.gates),
            pk.mean_energy_E0)
        grid = default_grid(pk)
        assert norm2(scaled, grid) == pytest.approx(4.0 * norm2(pk, grid),
                                                    rel=1e-9)

    def test_translation_invariance(self):
        pk = single_gate_packet()
        dx, dt = 2.5, -3.5
        moved = SpacetimePacket(
            GaussianSpatialPacket(pk.spatial.center_x + dx,
                                  pk.spatial.width_sigma_x,
                                  pk.spatial.mean_momentum_p0),
            tuple(TimeGate(g.center_t + dt, g.width_delta_t, g.profile,
                           g.amplitude) for g in pk.gates),
            pk.mean_energy_E0)
        g0 = default_grid(pk)
        g1 = Grid2D(g0.x_min + dx, g0.x_max + dx, g0.n_x,
                    g0.t_min + dt, g0.t_max + dt, g0.n_t)
        assert norm2(moved, g1) == pytest.approx(norm2(pk, g0), rel=1e-9)

    def test_underresolved_grid_raises(self):
        pk = single_gate_packet(width=0.01)
        with pytest.raises(ResolutionError) as err:
            norm2(pk, default_grid(pk, n_t=17))
        assert err.value.required_n_t is not None


class TestExpectations:
    def test_symmetric_packet_centers(self):
        pk = single_gate_packet(center=1.5)
        grid = default_grid(pk)
        m = expectations(packet_on_grid(pk, grid), grid)
        assert abs(m.mean_x - 0.0) <= grid.dx
        assert abs(m.mean_t - 1.5) <= grid.dt

    def test_gate_sigma_convention(self):
        # intensity standard deviation of an amplitude-width dt gate is
        # dt / sqrt(2)
        dt = 0.8
        pk = single_gate_packet(width=dt)
        grid = default_grid(pk, n_t=1025)
        m = expectations(packet_on_grid(pk, grid), grid)
        assert m.sigma_t == pytest.approx(dt / math.sqrt(2), rel=0.01)

    def test_two_equal_gates_mean_between(self):
        spatial = GaussianSpatialPacket(0.0, 1.0, 0.0)
        pk = SpacetimePacket(spatial,
                             (TimeGate(1.0, 0.5), TimeGate(5.0, 0.5)),
                             1.0).normalized()
        grid = default_grid(pk, n_t=1025)
        m = expectations(packet_on_grid(pk, grid), grid)
        assert abs(m.mean_t - 3.0) <= grid.dt

    def test_grid_moments_match_closed_form(self):
        pk = single_gate_packet(width=0.6)
        grid = default_grid(pk, n_x=513, n_t=1025)
        m = expectations(packet_on_grid(pk, grid), grid)
        assert m.sigma_x == pytest.approx(1.0 / math.sqrt(2), rel=1e-3)
        assert m.sigma_t == pytest.approx(0.6 / math.sqrt(2), rel=1e-3)
        assert m.mean_p == pytest.approx(0.3, abs=1e-3)
        assert m.mean_E == pytest.approx(1.0, abs=1e-3)

    def test_zero_norm_rejected(self):
        pk = single_gate_packet()
        grid = default_grid(pk)
        with pytest.raises(DomainError):
            expectations(np.zeros((grid.n_x, grid.n_t)), grid)


class TestInvariantChecks:
    def test_packet_needs_a_gate(self):
        with pytest.raises(DomainError):
            SpacetimePacket(GaussianSpatialPacket(), (), 1.0)

    def test_grid_invariants(self):
        with pytest.raises(DomainError):
            Grid2D(0, 1, 1, 0, 1, 8)
        with pytest.raises(DomainError):
            Grid2D(1, 0, 8, 0, 1, 8)
