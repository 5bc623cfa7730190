"""Spectral evolution, the Schrodinger reduction, minimal coupling, and the
field snapshot formats."""

import numpy as np
import pytest

from planardirac import nonrel as nr
from planardirac.algebra import matrix_exponential, pauli
from planardirac.planewave import Momentum, PhysicalParams
from planardirac.planewave import g1 as g1_amplitude

NATURAL = PhysicalParams()


def single_mode_field(kx, n=16, gauge_frame=False):
    """Exact positive-branch plane wave at an on-grid wavenumber."""
    grid = nr.Grid2D(n, 2.0 * np.pi * 4 / kx)  # kx sits on grid mode 4
    x, _ = grid.meshes()
    envelope = np.exp(1j * kx * x)
    lower = g1_amplitude(Momentum(kx, 0.0), NATURAL) * envelope
    field = nr.WaveField(grid, np.stack([envelope, lower]), gauge_frame=gauge_frame)
    return field.normalized()


class TestGrid:
    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            nr.Grid2D(48, 1.0)

    def test_rejects_small_or_degenerate(self):
        with pytest.raises(ValueError):
            nr.Grid2D(4, 1.0)
        with pytest.raises(ValueError):
            nr.Grid2D(16, 0.0)

    def test_wavenumbers_span_nyquist(self):
        grid = nr.Grid2D(16, 8.0)
        kx, _ = grid.wavenumbers()
        assert kx.max() == pytest.approx(grid.nyquist - 2 * np.pi / grid.length)
        assert kx.min() == pytest.approx(-grid.nyquist)


class TestWaveField:
    def test_shape_validation(self):
        grid = nr.Grid2D(8, 1.0)
        with pytest.raises(ValueError):
            nr.WaveField(grid, np.zeros((4, 4)))

    def test_norm_includes_cell_area(self):
        grid = nr.Grid2D(8, 2.0)
        f = nr.WaveField(grid, np.ones((8, 8)))
        assert f.norm == pytest.approx(2.0)  # sqrt(64 * (0.25)^2)


class TestGaussianPacket:
    def test_normalized(self):
        grid = nr.Grid2D(64, 40.0)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0.3, 0.1), 3.0)
        assert f.norm == pytest.approx(1.0, abs=1e-12)

    def test_zero_momentum_packet_is_symmetric(self):
        grid = nr.Grid2D(64, 40.0)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0, 0), 3.0)
        kx, ky = nr.mean_momentum(f)
        assert abs(kx) < 1e-10 and abs(ky) < 1e-10

    def test_spinor_packet_is_pure_positive_branch(self):
        grid = nr.Grid2D(64, 160.0)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0.1, -0.05), 20.0,
                              components=2, params=NATURAL)
        assert f.norm == pytest.approx(1.0, abs=1e-12)
        assert nr.negative_branch_weight(f, NATURAL) < 1e-12

    def test_rejects_unresolvable_width(self):
        grid = nr.Grid2D(16, 16.0)
        with pytest.raises(nr.GridResolutionError, match="sigma"):
            nr.build_gaussian(grid, (0, 0), Momentum(0, 0), 1.0)

    def test_rejects_spectral_support_beyond_nyquist(self):
        grid = nr.Grid2D(16, 16.0)
        with pytest.raises(nr.GridResolutionError, match="Nyquist"):
            nr.build_gaussian(grid, (0, 0), Momentum(3.0, 0.0), 4.5)


class TestDiracEvolution:
    def test_rest_mode_phases(self):
        """A uniform (1,0) spinor rotates as exp(-i m c^2 t / hbar); (0,1) as
        the opposite phase."""
        grid = nr.Grid2D(8, 5.0)
        ones = np.ones((8, 8), dtype=complex)
        zeros = np.zeros((8, 8), dtype=complex)
        t = 0.73
        up = nr.evolve_dirac(nr.WaveField(grid, np.stack([ones, zeros])), t, NATURAL)
        down = nr.evolve_dirac(nr.WaveField(grid, np.stack([zeros, ones])), t, NATURAL)
        assert np.abs(up.data[0] - ones * np.exp(-1j * t)).max() < 1e-14
        assert np.abs(up.data[1]).max() == 0.0
        assert np.abs(down.data[1] - ones * np.exp(+1j * t)).max() < 1e-14

    def test_group_property(self):
        grid = nr.Grid2D(32, 80.0)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0.1, 0.0), 10.0,
                              components=2, params=NATURAL)
        split = nr.evolve_dirac(nr.evolve_dirac(f, 1.3, NATURAL), 2.4, NATURAL)
        direct = nr.evolve_dirac(f, 3.7, NATURAL)
        assert np.abs(split.data - direct.data).max() < 1e-12

    def test_norm_conserved(self):
        grid = nr.Grid2D(32, 64.0)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0.2, 0.1), 8.0,
                              components=2, params=NATURAL)
        assert abs(nr.evolve_dirac(f, 57.0, NATURAL).norm - 1.0) < 1e-12

    def test_matches_per_mode_matrix_exponential(self):
        """The vectorized propagator equals exp(-i t H(k)/hbar) applied with
        the scalar closed-form exponential, mode by mode."""
        grid = nr.Grid2D(8, 5.0)
        rng = np.random.default_rng(19)
        data = rng.normal(size=(2, 8, 8)) + 1j * rng.normal(size=(2, 8, 8))
        f = nr.WaveField(grid, data)
        t = 0.9
        evolved = nr.evolve_dirac(f, t, NATURAL)
        kx, ky = grid.wavenumbers()
        up = np.fft.fft2(f.data[0], norm="ortho")
        low = np.fft.fft2(f.data[1], norm="ortho")
        ref_up = np.empty_like(up)
        ref_low = np.empty_like(low)
        for i in range(8):
            for j in range(8):
                h = (ky[i, j] * pauli(1) - kx[i, j] * pauli(2)) + pauli(3)
                u = matrix_exponential(h, t)
                vec = u @ np.array([up[i, j], low[i, j]])
                ref_up[i, j], ref_low[i, j] = vec
        ref = np.stack([np.fft.ifft2(ref_up, norm="ortho"),
                        np.fft.ifft2(ref_low, norm="ortho")])
        assert np.abs(evolved.data - ref).max() < 1e-13

    def test_dispersion_phase(self):
        """A single positive-branch mode acquires exactly exp(-i w(k) t)."""
        kx = 0.5
        f = single_mode_field(kx)
        t = 2.0
        evolved = nr.evolve_dirac(f, t, NATURAL)
        omega = np.sqrt(1.0 + kx**2)
        overlap = np.vdot(f.data, evolved.data) / np.vdot(f.data, f.data)
        assert abs(overlap - np.exp(-1j * omega * t)) < 1e-10

    def test_klein_gordon_time_consistency(self):
        """Second time difference of the evolved mode satisfies the squared
        wave equation with Richardson-verified order 2."""
        kx = 0.7
        f = single_mode_field(kx)
        kg_factor = kx**2 + 1.0

        def residual(dt):
            plus = nr.evolve_dirac(f, dt, NATURAL)
            minus = nr.evolve_dirac(f, -dt, NATURAL)
            fd2 = (plus.data - 2.0 * f.data + minus.data) / dt**2
            return float(np.abs(fd2 + kg_factor * f.data).max())

        order = np.log2(residual(0.02) / residual(0.01))
        assert abs(order - 2.0) < 0.1

    def test_requires_two_components_and_lab_frame(self):
        grid = nr.Grid2D(8, 5.0)
        scalar = nr.WaveField(grid, np.ones((8, 8)))
        with pytest.raises(ValueError):
            nr.evolve_dirac(scalar, 1.0, NATURAL)
        gauged = nr.WaveField(grid, np.ones((2, 8, 8)), gauge_frame=True)
        with pytest.raises(nr.GaugeFrameError):
            nr.evolve_dirac(gauged, 1.0, NATURAL)


class TestRestPhase:
    def test_zero_time_is_identity(self):
        f = single_mode_field(0.3)
        out = nr.remove_rest_phase(f, 0.0, NATURAL)
        assert np.abs(out.data - f.data).max() == 0.0
        assert out.gauge_frame

    def test_double_application_rejected(self):
        f = single_mode_field(0.3)
        once = nr.remove_rest_phase(f, 1.0, NATURAL)
        with pytest.raises(nr.GaugeFrameError):
            nr.remove_rest_phase(once, 1.0, NATURAL)

    def test_norm_unchanged(self):
        f = single_mode_field(0.3)
        assert nr.remove_rest_phase(f, 2.2, NATURAL).norm == pytest.approx(f.norm)

    def test_rest_frame_solution_becomes_static(self):
        """The k = 0 positive-branch wave is time-independent in the gauge frame."""
        grid = nr.Grid2D(8, 5.0)
        ones = np.ones((8, 8), dtype=complex)
        f = nr.WaveField(grid, np.stack([ones, np.zeros_like(ones)])).normalized()
        t = 1.7
        evolved = nr.remove_rest_phase(nr.evolve_dirac(f, t, NATURAL), t, NATURAL)
        assert np.abs(evolved.data - f.data).max() < 1e-13


class TestSmallComponent:
    def test_requires_gauge_frame(self):
        f = single_mode_field(0.1)
        with pytest.raises(nr.GaugeFrameError):
            nr.small_component(f, NATURAL)

    def test_symmetric_packet_has_small_lower_norm(self):
        grid = nr.Grid2D(64, 160.0)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0, 0), 10.0,
                              components=2, params=NATURAL)
        f = nr.remove_rest_phase(f, 0.0, NATURAL)
        estimate = nr.small_component(f, NATURAL)
        upper_norm = np.sqrt(np.sum(np.abs(f.data[0]) ** 2))
        assert np.sqrt(np.sum(np.abs(estimate.data) ** 2)) < 0.05 * upper_norm

    @pytest.mark.parametrize("kx", [0.1, 0.05])
    def test_single_mode_ratio(self, kx):
        """Component ratio approaches hbar k / (2 m c), and the closure
        estimate deviates from the true lower component by O((v/c)^2); the
        exact amplitude is G1 = -i(sqrt(1+kappa^2)-1)/kappa."""
        f = single_mode_field(kx, gauge_frame=True)
        estimate = nr.small_component(f, NATURAL)
        lower = f.data[1]
        upper_norm = np.sqrt(np.sum(np.abs(f.data[0]) ** 2))
        ratio = np.sqrt(np.sum(np.abs(lower) ** 2)) / upper_norm
        exact = (np.sqrt(1.0 + kx**2) - 1.0) / kx
        assert ratio == pytest.approx(exact, rel=1e-12)
        assert abs(ratio / (kx / 2.0) - 1.0) < kx**2
        closure_error = np.sqrt(np.sum(np.abs(estimate.data - lower) ** 2)
                                / np.sum(np.abs(lower) ** 2))
        assert closure_error < kx**2

    def test_closure_error_scales_quadratically(self):
        """Halving the wavenumber quarters the closure deviation."""
        def deviation(kx):
            f = single_mode_field(kx, gauge_frame=True)
            estimate = nr.small_component(f, NATURAL)
            return float(np.sqrt(np.sum(np.abs(estimate.data - f.data[1]) ** 2)
                                 / np.sum(np.abs(f.data[1]) ** 2)))

        ratio = deviation(0.1) / deviation(0.05)
        assert 3.5 < ratio < 4.5


class TestSchrodingerEvolution:
    def test_zero_time_identity(self):
        grid = nr.Grid2D(32, 16.0)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0.3, 0), 2.0)
        out = nr.evolve_schrodinger(f, 0.0, NATURAL)
        assert np.abs(out.data - f.data).max() == 0.0

    def test_free_packet_spreading_oracle(self):
        """width^2(t) = sigma^2 (1 + (hbar t / 2 m sigma^2)^2), to 1e-6."""
        grid = nr.Grid2D(128, 40.0)
        sigma, t = 2.0, 4.0
        f = nr.evolve_schrodinger(
            nr.build_gaussian(grid, (0, 0), Momentum(0, 0), sigma), t, NATURAL)
        x, _ = grid.meshes()
        density = np.abs(f.data) ** 2
        density /= density.sum()
        variance = float((x**2 * density).sum() - ((x * density).sum()) ** 2)
        expected = sigma**2 * (1.0 + (t / (2.0 * sigma**2)) ** 2)
        assert variance == pytest.approx(expected, rel=1e-6)

    def test_norm_conserved_with_potential(self):
        grid = nr.Grid2D(32, 16.0)
        x, y = grid.meshes()
        pot = nr.PotentialConfig(a0=0.4 * np.cos(2 * np.pi * x / grid.length))
        f = nr.build_gaussian(grid, (0, 0), Momentum(0.4, 0), 2.0)
        out = nr.evolve_schrodinger(f, 3.0, NATURAL, pot, steps=60)
        assert abs(out.norm - 1.0) < 1e-10

    def test_constant_scalar_potential_is_global_phase(self):
        """Uniform A0 multiplies the free evolution by exp(-i e c A0 t / hbar)."""
        grid = nr.Grid2D(32, 16.0)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0.4, 0.1), 2.0)
        t, a0 = 2.0, 0.7
        free = nr.evolve_schrodinger(f, t, NATURAL)
        coupled = nr.evolve_schrodinger(f, t, NATURAL,
                                        nr.PotentialConfig(a0=a0), steps=40)
        assert np.abs(coupled.data * np.exp(1j * a0 * t) - free.data).max() < 1e-12
        assert abs(abs(nr.overlap(free, coupled)) - 1.0) < 1e-10

    def test_gauge_shift_changes_only_global_phase(self):
        grid = nr.Grid2D(32, 16.0)
        x, _ = grid.meshes()
        base = 0.3 * np.cos(2 * np.pi * x / grid.length)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0.3, 0), 2.0)
        a = nr.evolve_schrodinger(f, 2.0, NATURAL, nr.PotentialConfig(a0=base), steps=50)
        b = nr.evolve_schrodinger(f, 2.0, NATURAL,
                                  nr.PotentialConfig(a0=base + 1.3), steps=50)
        assert abs(abs(nr.overlap(a, b)) - 1.0) < 1e-10

    def test_strang_splitting_is_second_order(self):
        """Halving the step cuts the error by ~4 against an 8x-finer reference."""
        grid = nr.Grid2D(64, 40.0)
        x, y = grid.meshes()
        pot = nr.PotentialConfig(
            a0=0.3 * np.cos(2 * np.pi * x / grid.length)
            * np.cos(2 * np.pi * y / grid.length))
        f = nr.build_gaussian(grid, (0, 0), Momentum(0.3, 0.2), 3.0)
        reference = nr.evolve_schrodinger(f, 2.0, NATURAL, pot, steps=512)
        coarse = nr.evolve_schrodinger(f, 2.0, NATURAL, pot, steps=64)
        fine = nr.evolve_schrodinger(f, 2.0, NATURAL, pot, steps=128)
        err_coarse = np.sqrt(np.sum(np.abs(coarse.data - reference.data) ** 2))
        err_fine = np.sqrt(np.sum(np.abs(fine.data - reference.data) ** 2))
        assert 3.5 < err_coarse / err_fine < 4.5

    def test_uniform_vector_potential_supported(self):
        grid = nr.Grid2D(32, 16.0)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0.2, 0), 2.0)
        out = nr.evolve_schrodinger(f, 1.0, NATURAL,
                                    nr.PotentialConfig(ax=0.2, ay=-0.1), steps=20)
        assert abs(out.norm - 1.0) < 1e-12

    def test_nonuniform_vector_potential_rejected(self):
        grid = nr.Grid2D(32, 16.0)
        pot = nr.PotentialConfig.uniform_field(grid, 0.5)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0, 0), 2.0)
        with pytest.raises(ValueError, match="uniform"):
            nr.evolve_schrodinger(f, 1.0, NATURAL, pot, steps=10)

    def test_coarse_step_diagnosed(self):
        grid = nr.Grid2D(32, 16.0)
        f = nr.build_gaussian(grid, (0, 0), Momentum(0, 0), 2.0)
        with pytest.raises(nr.GridResolutionError, match="steps"):
            nr.evolve_schrodinger(f, 100.0, NATURAL,
                                  nr.PotentialConfig(a0=1.0), steps=2)

    def test_rough_potential_warns(self):
        grid = nr.Grid2D(32, 20.0)
        rough = np.zeros((32, 32))
        rough[10, 10] = 5.0
        with pytest.warns(UserWarning, match="under-resolved"):
            nr.PotentialConfig(a0=rough)

    def test_complex_potential_rejected(self):
        with pytest.raises(ValueError, match="real-valued"):
            nr.PotentialConfig(a0=np.full((8, 8), 1j))


class TestCompareLimit:
    def test_rejects_mismatched_grids(self):
        a = nr.WaveField(nr.Grid2D(8, 5.0), np.ones((2, 8, 8)), gauge_frame=True)
        b = nr.WaveField(nr.Grid2D(16, 5.0), np.ones((16, 16)))
        with pytest.raises(ValueError, match="grids"):
            nr.compare_limit(a, b)

    def test_requires_gauge_frame(self):
        grid = nr.Grid2D(8, 5.0)
        a = nr.WaveField(grid, np.ones((2, 8, 8)))
        b = nr.WaveField(grid, np.ones((8, 8)))
        with pytest.raises(nr.GaugeFrameError):
            nr.compare_limit(a, b)

    def test_uniform_field_reduces_to_rest_phase(self):
        """At k0 = 0 with no spatial structure both dynamics are a pure rest
        phase and the distance vanishes."""
        grid = nr.Grid2D(16, 10.0)
        ones = np.ones((16, 16), dtype=complex)
        scalar = nr.WaveField(grid, ones).normalized()
        dirac = nr.WaveField(grid, np.stack([scalar.data, np.zeros_like(ones)]))
        t = 3.0
        dirac_t = nr.remove_rest_phase(nr.evolve_dirac(dirac, t, NATURAL), t, NATURAL)
        schrod_t = nr.evolve_schrodinger(scalar, t, NATURAL)
        assert nr.compare_limit(dirac_t, schrod_t, NATURAL).distance < 1e-10

    def test_zero_time_distance_vanishes(self):
        run = nr.run_limit_comparison(0.05, n=128, t_final=0.0)
        assert run["distance"] < 1e-12

    def test_comparison_and_halving_ratio(self):
        """The packet comparison lands in the quadratic (v/c) regime: halving
        k0 cuts the distance by a factor close to 4."""
        coarse = nr.run_limit_comparison(0.1, n=128, t_final=10.0)
        fine = nr.run_limit_comparison(0.05, n=128, t_final=10.0)
        assert coarse["distance"] < 1e-2
        assert 3.0 < coarse["distance"] / fine["distance"] < 5.0

    def test_steps_do_not_change_the_answer(self):
        single = nr.run_limit_comparison(0.05, n=128, t_final=4.0)
        chunked = nr.run_limit_comparison(0.05, n=128, t_final=4.0, steps=4)
        assert single["distance"] == pytest.approx(chunked["distance"], abs=1e-10)

    def test_distance_is_dimensionless(self):
        """The same v/c and the same time in rest-energy units must give the
        same distance whatever the values of m, c, hbar."""
        natural = nr.run_limit_comparison(0.05, n=128, t_final=10.0)
        params = PhysicalParams(m=2.0, c=3.0, hbar=0.5)
        k0 = 0.05 * params.m * params.c / params.hbar
        t_unit = params.hbar / params.rest_energy
        scaled = nr.run_limit_comparison(k0, n=128, t_final=10.0 * t_unit,
                                         params=params)
        assert scaled["vc_scale"] == pytest.approx(0.05, rel=1e-12)
        assert scaled["distance"] == pytest.approx(natural["distance"], rel=1e-9)


class TestLandauLevels:
    def test_small_grid_levels(self):
        """N = 32 box with magnetic length 3.2 cells: two levels inside 2%."""
        result = nr.landau_levels(1.0, nr.Grid2D(32, 10.0), NATURAL, n_levels=2)
        assert all(err < 0.02 for err in result["relative_errors"])

    def test_magnetic_length_preconditions(self):
        grid = nr.Grid2D(32, 10.0)
        with pytest.raises(nr.GridResolutionError):
            nr.landau_levels(0.05, grid, NATURAL)  # l_B > L/6
        with pytest.raises(nr.GridResolutionError):
            nr.landau_levels(4.0, grid, NATURAL)  # l_B < 3h

    def test_rejects_nonpositive_field(self):
        with pytest.raises(ValueError):
            nr.landau_levels(0.0, nr.Grid2D(32, 10.0), NATURAL)


class TestSnapshots:
    def test_csv_schema(self, tmp_path):
        grid = nr.Grid2D(8, 4.0)
        f = nr.WaveField(grid, np.ones((2, 8, 8)) * (1 + 2j))
        path = tmp_path / "field.csv"
        nr.export_csv(f, path)
        header = path.read_text().splitlines()[0]
        assert header == "x,y,re_psi1,im_psi1,re_psi2,im_psi2"
        table = np.loadtxt(path, delimiter=",", skiprows=1)
        assert table.shape == (64, 6)
        assert np.allclose(table[:, 2], 1.0) and np.allclose(table[:, 3], 2.0)

    def test_scalar_csv_zero_second_component(self, tmp_path):
        grid = nr.Grid2D(8, 4.0)
        f = nr.WaveField(grid, np.ones((8, 8)))
        path = tmp_path / "scalar.csv"
        nr.export_csv(f, path)
        table = np.loadtxt(path, delimiter=",", skiprows=1)
        assert np.all(table[:, 4] == 0.0) and np.all(table[:, 5] == 0.0)

    @pytest.mark.parametrize("components", [1, 2])
    def test_raw_roundtrip(self, tmp_path, components):
        grid = nr.Grid2D(8, 4.0)
        rng = np.random.default_rng(31)
        shape = (8, 8) if components == 1 else (2, 8, 8)
        data = rng.normal(size=shape) + 1j * rng.normal(size=shape)
        f = nr.WaveField(grid, data, gauge_frame=True, time=1.5)
        path = tmp_path / "field.f64"
        nr.export_raw(f, path)
        loaded = nr.load_raw(path)
        assert np.array_equal(loaded.data, f.data)
        assert loaded.gauge_frame and loaded.time == 1.5
        assert loaded.grid == grid

    def test_boundary_density_detects_wraparound(self):
        grid = nr.Grid2D(64, 24.0)
        centered = nr.build_gaussian(grid, (0, 0), Momentum(0, 0), 1.5)
        assert nr.boundary_density(centered) < 1e-8
        shifted = nr.build_gaussian(grid, (9.5, 0), Momentum(0, 0), 1.5)
        assert nr.boundary_density(shifted) > 1e-3
