import math

import numpy as np
import pytest

from timefringe.errors import DomainError, SingularKernel
from timefringe.kernels import (axis_prefactor, floquet_kernel,
                                kernel_identity_limit, schrodinger_kernel,
                                stueckelberg_kernel)
from timefringe.propagation import (component_overlap, gaussian_component,
                                    propagate_component)


class TestAxisPrefactor:
    def test_modulus(self):
        # |sqrt(mu / 2 pi i hbar s)| = sqrt(|mu| / 2 pi hbar |s|)
        for mu, s in [(1.0, 0.7), (2.5, -0.3), (-1.0, 0.7)]:
            expected = math.sqrt(abs(mu) / (2 * math.pi * abs(s)))
            assert abs(axis_prefactor(mu, s)) == pytest.approx(expected,
                                                               rel=1e-12)

    def test_negative_s_conjugates(self):
        p = complex(axis_prefactor(1.0, 0.4))
        m = complex(axis_prefactor(1.0, -0.4))
        assert m == pytest.approx(np.conj(p), rel=1e-12)


class TestSchrodingerKernel:
    def test_pure_phase_modulus(self):
        dx = np.linspace(-5, 5, 31)
        k = schrodinger_kernel(dx, 0.8, mass=1.3)
        expected = math.sqrt(1.3 / (2 * math.pi * 0.8))
        np.testing.assert_allclose(np.abs(k), expected, rtol=1e-12)

    def test_three_dimensional_prefactor(self):
        k1 = schrodinger_kernel(0.0, 0.8, mass=1.3, d=1)
        k3 = schrodinger_kernel(0.0, 0.8, mass=1.3, d=3)
        assert abs(k3) == pytest.approx(abs(k1) ** 3, rel=1e-12)

    def test_time_reversal_conjugation(self):
        dx = 1.7
        fwd = complex(schrodinger_kernel(dx, 0.6, mass=1.0))
        bwd = complex(schrodinger_kernel(dx, -0.6, mass=1.0))
        assert bwd == pytest.approx(np.conj(fwd), rel=1e-12)

    def test_even_in_displacement(self):
        a = complex(schrodinger_kernel(2.0, 0.6, mass=1.0))
        b = complex(schrodinger_kernel(-2.0, 0.6, mass=1.0))
        assert a == pytest.approx(b, rel=1e-12)

    def test_singular_at_zero_time(self):
        with pytest.raises(SingularKernel):
            schrodinger_kernel(1.0, 0.0, mass=1.0)

    def test_rejects_bad_dimension(self):
        with pytest.raises(DomainError):
            schrodinger_kernel(1.0, 1.0, mass=1.0, d=4)


class TestFloquetKernel:
    def test_time_shift_equals_parameter(self):
        sample = floquet_kernel(1.0, 0.3, 2.5, mass=1.0)
        assert sample.time_shift == 2.5

    def test_spatial_part_is_free_propagator(self):
        sample = floquet_kernel(1.0, 0.3, 2.5, mass=1.4)
        assert sample.spatial_part == pytest.approx(
            complex(schrodinger_kernel(1.0, 2.5, mass=1.4)), rel=1e-12)

    def test_spatial_part_ignores_dt(self):
        a = floquet_kernel(1.0, 0.0, 2.5, mass=1.0).spatial_part
        b = floquet_kernel(1.0, 9.9, 2.5, mass=1.0).spatial_part
        assert a == b

    def test_singular_at_zero_parameter(self):
        with pytest.raises(SingularKernel):
            floquet_kernel(1.0, 0.0, 0.0, mass=1.0)


class TestStueckelbergKernel:
    def test_depends_on_invariant_interval_only(self):
        # dx^2 - c^2 dt^2 equal for both points
        a = complex(stueckelberg_kernel(2.0, 1.0, 0.7, M=1.0))
        b = complex(stueckelberg_kernel(math.sqrt(2.0**2 - 1.0 + 0.25), 0.5,
                                        0.7, M=1.0))
        assert a == pytest.approx(b, rel=1e-12)

    def test_lightlike_displacement_is_pure_prefactor(self):
        k = complex(stueckelberg_kernel(0.9, 0.9, 0.7, M=1.0, c=1.0))
        pref = complex(axis_prefactor(1.0, 0.7)
                       * axis_prefactor(-1.0, 0.7))
        assert k == pytest.approx(pref, rel=1e-12)

    def test_three_dim_modulus(self):
        # for d = 3 and c = 1 the prefactor modulus is (M / 2 pi hbar |s|)^2
        M, s = 1.3, 0.8
        k = complex(stueckelberg_kernel(0.0, 0.0, s, M=M, d=3))
        assert abs(k) == pytest.approx((M / (2 * math.pi * s)) ** 2, rel=1e-12)

    def test_factorizes_into_axis_parts(self):
        dx, dt, s, M, c = 1.1, 0.4, 0.7, 1.0, 2.0
        joint = complex(stueckelberg_kernel(dx, dt, s, M=M, c=c))
        x_part = complex(schrodinger_kernel(dx, s, mass=M))
        t_part = complex(axis_prefactor(-M * c * c, s)
                         * np.exp(-1j * M * c * c * dt * dt / (2.0 * s)))
        assert joint == pytest.approx(x_part * t_part, rel=1e-12)

    def test_parameter_reversal_conjugation(self):
        fwd = complex(stueckelberg_kernel(1.1, 0.4, 0.7, M=1.0))
        bwd = complex(stueckelberg_kernel(1.1, 0.4, -0.7, M=1.0))
        assert bwd == pytest.approx(np.conj(fwd), rel=1e-12)

    def test_singular_at_zero_parameter(self):
        with pytest.raises(SingularKernel):
            stueckelberg_kernel(1.0, 1.0, 0.0, M=1.0)


class TestIdentityLimit:
    @pytest.mark.parametrize("kind", ["schrodinger", "floquet", "stueckelberg"])
    def test_first_order_convergence(self, kind):
        report = kernel_identity_limit(kind)
        devs = report["l2_deviation"]
        assert devs == sorted(devs, reverse=True)
        assert devs[-1] < 1e-3
        for ratio in report["halving_ratios"]:
            assert ratio == pytest.approx(2.0, abs=0.1)

    def test_rejects_zero_parameter(self):
        with pytest.raises(SingularKernel):
            kernel_identity_limit("schrodinger", s_values=[1e-3, 0.0])


class TestSemigroupComposition:
    @pytest.mark.parametrize("mu", [1.0, -1.0])
    def test_two_steps_equal_one(self, mu):
        # applied to a normalizable packet; the pointwise kernel-product
        # integral is not absolutely convergent, the operator statement is
        comp = gaussian_component(center=0.3, width=1.0, wavenumber=0.5)
        s1, s2 = 0.4, 0.9
        once = propagate_component(comp, mu, s1 + s2)
        twice = propagate_component(propagate_component(comp, mu, s1), mu, s2)
        u = np.linspace(-12, 12, 1501)
        ref = np.max(np.abs(once(u)))
        np.testing.assert_allclose(twice(u), once(u), atol=1e-10 * ref)

    def test_forward_backward_is_identity(self):
        comp = gaussian_component(center=0.0, width=1.0, wavenumber=0.3)
        back = propagate_component(propagate_component(comp, 1.0, 0.7),
                                   1.0, -0.7)
        n0 = component_overlap(comp, comp).real
        cross = component_overlap(back, comp).real
        assert cross == pytest.approx(n0, rel=1e-10)
