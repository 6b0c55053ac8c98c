import cmath
import math

import numpy as np
import pytest

from padelab import (
    CirclePath,
    CorridorDomain,
    DiscDomain,
    DomainSpec,
    PolylinePath,
    StarlikeDomain,
    antiderivative_at,
    bounded_path,
    moment_test,
    path_integral,
    starlike_antiderivative,
)
from padelab.errors import PathOutsideDomainError

from conftest import complex_normal


def wiggly_profile(x):
    """Top boundary with unbounded oscillation density near x = 0."""
    return 1.0 + 0.1 * math.sin(50.0 / (x + 0.01))


class TestContainment:
    def test_unit_disc(self):
        disc = DiscDomain(0.0, 1.0)
        assert disc.contains(0.5)
        assert not disc.contains(1.5)

    def test_corridor(self):
        dom = CorridorDomain(lambda x: 1.0, 0.0)
        assert dom.contains(0.5 + 0.5j)
        assert not dom.contains(0.5 + 2.0j)
        assert not dom.contains(-0.1 + 0.5j)

    def test_starlike_unit_profile_matches_disc(self, rng):
        star = StarlikeDomain(0.0, lambda theta: 1.0)
        disc = DiscDomain(0.0, 1.0)
        for z in complex_normal(rng, 40):
            assert star.contains(z) == disc.contains(z)


class TestBoundedPath:
    def test_disc_straight_segment(self):
        disc = DiscDomain(0.0, 1.0)
        path, budget = bounded_path(disc, -0.9, 0.9)
        assert abs(path.length - 1.8) < 1e-12
        assert budget.M == 2.0
        assert path.length <= budget.M

    def test_starlike_two_segments_through_center(self):
        star = StarlikeDomain(0.0, lambda theta: 1.0)
        path, budget = bounded_path(star, 0.9j, 0.9)
        assert len(path.vertices) == 3
        assert abs(path.length - 1.8) < 1e-12
        assert budget.M == 2.0 * star.diameter
        assert abs(budget.M - 4.0) < 1e-6

    def test_corridor_path_under_wiggly_profile(self):
        dom = CorridorDomain(wiggly_profile, 0.0)
        a = complex(0.1, 0.9 * dom.height_at(0.1))
        b = complex(0.9, 0.9 * dom.height_at(0.9))
        path, budget = bounded_path(dom, a, b)
        assert path.length <= budget.M
        assert budget.M == 2.0 * (dom.profile.max() - 0.0) + 1.0

    def test_endpoint_outside_rejected(self):
        disc = DiscDomain(0.0, 1.0)
        with pytest.raises(PathOutsideDomainError):
            bounded_path(disc, 0.0, 3.0)


class TestPathIntegral:
    def test_closed_polyline_constant(self):
        square = PolylinePath([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j, 1 + 1j])
        assert abs(path_integral(lambda z: 1.0, square)) < 1e-12

    def test_linear_integrand(self):
        assert abs(path_integral(lambda z: z, PolylinePath([0.0, 1.0])) - 0.5) < 1e-14

    def test_residue_on_square_contour(self):
        square = PolylinePath([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j, 1 + 1j])
        value = path_integral(lambda z: 1.0 / z, square)
        assert abs(value - 2j * math.pi) < 1e-10


class TestAntiderivative:
    def test_constant_integrand(self):
        disc = DiscDomain(0.0, 1.0)
        assert abs(antiderivative_at(lambda z: 1.0, disc, -0.2, 0.7) - 0.9) < 1e-13

    def test_exp_closed_form(self):
        disc = DiscDomain(0.0, 1.0)
        for z in (0.5, -0.3 + 0.6j, 0.9j):
            value = antiderivative_at(np.exp, disc, 0.0, z)
            assert abs(value - (cmath.exp(z) - 1.0)) < 1e-10

    def test_path_independence(self):
        # same endpoints, two admissible polylines inside the disc
        f = lambda z: cmath.cos(z) * z
        direct = path_integral(f, PolylinePath([-0.5, 0.6j]))
        detour = path_integral(f, PolylinePath([-0.5, -0.1 - 0.4j, 0.3, 0.6j]))
        assert abs(direct - detour) < 1e-10

    def test_starlike_radial_formula(self):
        assert abs(starlike_antiderivative(lambda z: 1.0, 0.7j) - 0.7j) < 1e-13
        assert abs(starlike_antiderivative(lambda z: 2 * z, 0.5 + 0.2j) - (0.5 + 0.2j) ** 2) < 1e-12
        z = 0.4 - 0.3j
        assert abs(starlike_antiderivative(np.exp, z) - (cmath.exp(z) - 1.0)) < 1e-9

    def test_radial_and_path_forms_agree(self):
        star = StarlikeDomain(0.0, lambda theta: 1.0)
        f = lambda z: cmath.sin(z) + z * z
        for z in (0.5, -0.2 + 0.6j):
            a = starlike_antiderivative(f, z)
            b = antiderivative_at(f, star, 0.0, z)
            assert abs(a - b) < 1e-9


class TestMomentTest:
    def test_analytic_function_all_vanish(self):
        moments = moment_test(np.exp, CirclePath(0.0, 1.0), 3)
        assert all(abs(m) < 1e-10 for m in moments)

    def test_simple_pole_residue(self):
        moments = moment_test(lambda z: 1.0 / z, CirclePath(0.0, 1.0), 1)
        assert abs(moments[0] - 2j * math.pi) < 1e-10

    def test_double_pole_obstructs_second_order(self):
        moments = moment_test(lambda z: 1.0 / z**2, CirclePath(0.0, 1.0), 2)
        assert abs(moments[0]) < 1e-10
        assert abs(moments[1] - 2j * math.pi) < 1e-10

    def test_open_path_rejected(self):
        with pytest.raises(ValueError):
            moment_test(np.exp, PolylinePath([0.0, 1.0]), 1)


class TestDomainSerialization:
    def test_roundtrips(self):
        for dom in (
            DiscDomain(1j, 2.0),
            StarlikeDomain(0.0, lambda theta: 1.0 + 0.2 * math.cos(theta)),
            CorridorDomain(wiggly_profile, -0.5),
        ):
            again = DomainSpec.from_data(dom.to_data())
            for z in (0.2 + 0.3j, 2.0 + 2.0j, 0.9 + 0.05j):
                assert again.contains(z) == dom.contains(z)
