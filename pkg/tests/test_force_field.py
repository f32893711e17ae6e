import math

import numpy as np
import pytest

from octavib import force_field as ff
from octavib import group_core as gc
from octavib.errors import CollisionError, ConfigError, SearchFailureError, ShapeError

from conftest import random_configuration


def pairwise_reference(params, pos):
    """Independent oracle: direct sum over all 15 pairs plus 6 bond terms."""
    total = 0.0
    for j in range(6):
        for k in range(j + 1, 6):
            r = float(np.sum((pos[j] - pos[k]) ** 2))
            total += (
                params.sigma1 / r ** 6
                - params.sigma2 / r ** 3
                + params.sigma3 / math.sqrt(r)
            )
        r = float(pos[j] @ pos[j])
        total += (math.sqrt(r) - 1.0) ** 2
    return total


class TestPotential:
    def test_unit_octahedron_harmonic_only_is_zero(self):
        params = ff.PotentialParams(0, 0, 0)
        assert ff.potential(params, ff.OCTAHEDRON) == pytest.approx(0.0, abs=1e-15)

    def test_radial_formula_and_pairwise_oracle(self, params):
        r = 1.4128
        config = r * ff.OCTAHEDRON
        expected = (
            12 * ff.u1(2 * r * r, params)
            + 3 * ff.u1(4 * r * r, params)
            + 6 * ff.u2(r * r)
        )
        value = ff.potential(params, config)
        assert value == pytest.approx(expected, rel=1e-12)
        assert value == pytest.approx(pairwise_reference(params, config), rel=1e-12)

    def test_collision_raises_with_pair(self, params):
        config = ff.OCTAHEDRON.copy()
        config[1] = config[0]
        with pytest.raises(CollisionError) as err:
            ff.potential(params, config)
        assert err.value.pair == (0, 1)

    def test_origin_collision(self, params):
        config = ff.OCTAHEDRON.copy()
        config[2] = 0.0
        with pytest.raises(CollisionError):
            ff.potential(params, config)

    def test_invariance_under_group(self, params, rng):
        gens = [
            gc.element_from_word(w)
            for w in ("(24)", "(12)(34)", "(56)", "(132)", "(1234)")
        ]
        for _ in range(100):
            pos = random_configuration(rng)
            u0 = ff.potential(params, pos)
            for g in gens:
                moved = (gc.action_matrix_18(g) @ pos.reshape(18)).reshape(6, 3)
                assert ff.potential(params, moved) == pytest.approx(u0, abs=1e-12)

    def test_shape_error(self, params):
        with pytest.raises(ShapeError):
            ff.potential(params, np.zeros((5, 3)))


class TestGradient:
    def test_equilibrium_residual(self, params):
        g = ff.gradient(params, 1.4128 * ff.OCTAHEDRON)
        assert np.max(np.abs(g)) < 1e-3

    def test_zero_on_unit_sphere_without_pair_terms(self, rng):
        # with all sigmas zero only the bond term is left, whose gradient
        # vanishes exactly on the unit sphere
        params = ff.PotentialParams(0, 0, 0)
        pos = rng.normal(size=(6, 3))
        pos /= np.linalg.norm(pos, axis=1)[:, None]
        assert np.max(np.abs(ff.gradient(params, pos))) < 1e-12

    def test_finite_difference_oracle(self, params, rng):
        step = 1e-5
        for _ in range(5):
            pos = random_configuration(rng).reshape(18)
            g = ff.gradient(params, pos)
            for i in range(18):
                up, dn = pos.copy(), pos.copy()
                up[i] += step
                dn[i] -= step
                fd = (ff.potential(params, up) - ff.potential(params, dn)) / (2 * step)
                assert g[i] == pytest.approx(fd, rel=1e-6, abs=1e-9)

    def test_equivariance(self, params, rng):
        for _ in range(20):
            pos = random_configuration(rng).reshape(18)
            g = ff.gradient(params, pos)
            for w in ("(1234)", "(132)", "(56)"):
                G = gc.action_matrix_18(gc.element_from_word(w))
                assert np.allclose(ff.gradient(params, G @ pos), G @ g, atol=1e-10)


class TestEquilibrium:
    def test_reference_radius(self, params, equilibrium):
        assert equilibrium.radius == pytest.approx(1.4128, abs=1e-3)
        assert abs(ff.phi_prime(params, equilibrium.radius)) < 1e-10
        assert ff.phi_second(params, equilibrium.radius) > 0
        assert abs(ff.ct_residual(params, equilibrium.radius)) < 1e-9

    def test_harmonic_only(self):
        eq = ff.find_equilibrium(ff.PotentialParams(0, 0, 0))
        assert eq.radius == 1.0

    def test_grid_scan_oracle(self):
        params = ff.PotentialParams(0.1, 0.1, 0.5)
        eq = ff.find_equilibrium(params)
        grid = np.linspace(0.5, 3.0, 1_000_000)
        values = ff.phi(params, grid)
        best = grid[np.argmin(values)]
        assert abs(best - eq.radius) < 2 * (grid[1] - grid[0])

    def test_coercivity_smoke(self, params, equilibrium):
        floor = ff.phi(params, equilibrium.radius)
        assert ff.phi(params, 1e-3) > floor + 1e3
        assert ff.phi(params, 1e3) > floor + 1e3

    def test_search_failure(self):
        with pytest.raises(SearchFailureError):
            ff.find_equilibrium(ff.PotentialParams(0, 0, 1e12), hi=10.0)


class TestHessian:
    def test_finite_difference_oracle(self, params, rng):
        step = 1e-5
        for _ in range(3):
            pos = random_configuration(rng).reshape(18)
            H = ff.hessian(params, pos)
            assert np.max(np.abs(H - H.T)) < 1e-12
            for i in range(0, 18, 5):
                up, dn = pos.copy(), pos.copy()
                up[i] += step
                dn[i] -= step
                fd = (ff.gradient(params, up) - ff.gradient(params, dn)) / (2 * step)
                scale = max(1.0, np.max(np.abs(H[:, i])))
                assert np.max(np.abs(H[:, i] - fd)) / scale < 1e-5

    def test_block_path_matches_cartesian_hessian(self, params, equilibrium):
        analytic = ff.hessian(params, equilibrium.configuration)
        blocks = ff.hessian_blocks(params, equilibrium.radius, convention="cartesian")
        assert np.max(np.abs(analytic - blocks)) < 1e-10

    def test_reported_p13_block(self, params, equilibrium):
        a, b, c, d, e = ff.stiffness(params, equilibrium.radius)
        H = ff.hessian_blocks(params, equilibrium.radius)
        p13 = H[0:3, 6:9]
        assert np.allclose(p13, np.diag([-8 * b - d, -d, -d]), atol=1e-14)

    def test_pair_terms_vanish_without_sigmas(self, rng):
        # the bond term carries no parameter, so only pair blocks vanish
        params = ff.PotentialParams(0, 0, 0)
        pos = random_configuration(rng)
        H = ff.hessian(params, pos)
        for j in range(6):
            for k in range(6):
                if j != k:
                    assert np.max(np.abs(H[3 * j : 3 * j + 3, 3 * k : 3 * k + 3])) == 0

    def test_equivariance_conjugation(self, params, rng):
        pos = random_configuration(rng).reshape(18)
        H = ff.hessian(params, pos)
        for w in ("(1234)", "(56)", "(24)"):
            G = gc.action_matrix_18(gc.element_from_word(w))
            assert np.allclose(ff.hessian(params, G @ pos), G @ H @ G.T, atol=1e-9)

    def test_block_path_requires_equilibrium(self, params):
        with pytest.raises(ShapeError):
            ff.hessian_blocks(params, 2.0)


class TestParamsFile:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "p.cfg"
        path.write_text("sigma1=0.0618\nsigma2=0.0618\nsigma3=1\n")
        p = ff.load_params(path)
        assert p == ff.REFERENCE_PARAMS

    def test_line_number_in_error(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("sigma1=0.1\nnot a line\n")
        with pytest.raises(ConfigError, match=":2:"):
            ff.load_params(path)

    def test_invalid_params(self):
        with pytest.raises(ConfigError):
            ff.PotentialParams(-1, 0, 0)
        with pytest.raises(ConfigError):
            ff.PotentialParams(0, 0.5, 1)
