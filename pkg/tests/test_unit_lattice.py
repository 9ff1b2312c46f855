import math

import numpy as np
import pytest

from core_field import is_pisot
from unit_lattice import (
    HypothesisViolationError,
    LatticeError,
    LogUnitLattice,
    PisotSearchError,
    RankTooLargeError,
    UnitExponentVector,
    closest_vector_linf,
    conjugate_unit_exponents,
    covering_radius_bound,
    covering_radius_estimate,
    enumerate_lattice_points_in_cube,
    exponents_of_unit,
    is_well_rounded,
    min_pisot_height,
    pisot_search,
    regulator,
    successive_minima_linf,
    unit_embedding,
    unit_moduli_squared,
)

from conftest import SQRT2_UNIT

LOG_SQRT2_UNIT = math.log(SQRT2_UNIT)
ALL_FIELDS = ["qsqrt2", "qsqrt3", "qsqrt5", "qsqrt13", "zeta7plus", "zeta5"]


class TestLogUnitLattice:
    @pytest.mark.parametrize("name, standard", [
        ("qsqrt2", 0.881374),
        ("qsqrt3", 1.316958),
        ("qsqrt5", 0.481212),
        ("qsqrt13", 1.194763),
        ("zeta5", 0.962424),
        ("zeta7plus", 0.52545),
    ])
    def test_regulator(self, lattices, name, standard):
        report = regulator(lattices[name])
        assert report.standard == pytest.approx(standard, abs=1e-4)
        root = math.sqrt(lattices[name].ambient_dim)
        assert report.volume == pytest.approx(report.standard * root, rel=1e-9)
        assert report.scaled_volume == pytest.approx(report.volume * root, rel=1e-12)

    def test_quadratic_volume(self, lattices):
        assert lattices["qsqrt2"].volume == pytest.approx(1.24645, abs=1e-5)

    def test_regulator_matches_hint(self, fields, lattices):
        for name in ["qsqrt2", "qsqrt13", "zeta5"]:
            assert regulator(lattices[name]).standard == pytest.approx(fields[name].regulator_hint, rel=1e-9)

    @pytest.mark.parametrize("basis", [
        np.zeros((0, 3)),
        [[1.0, 1.0]],
        [[1.0, -1.0], [2.0, -2.0]],
        [[1.0, -1.0, 0.0], [2.0, -2.0, 0.0]],
        [[0.0, 0.0, 0.0]],
    ])
    def test_invalid_bases(self, basis):
        with pytest.raises(LatticeError):
            LogUnitLattice(np.asarray(basis, dtype=float))


class TestUnits:
    def test_exponent_vector_arithmetic(self):
        u = UnitExponentVector((1, -2), 3)
        v = UnitExponentVector((0, 5), 9)
        assert u.combine(v, 10) == UnitExponentVector((1, 3), 2)
        assert u.inverse(10) == UnitExponentVector((-1, 2), 7)
        with pytest.raises(LatticeError):
            u.combine(UnitExponentVector((1,), 0), 10)

    def test_moduli_squared(self, qsqrt2):
        np.testing.assert_allclose(unit_moduli_squared(qsqrt2, [1]), [SQRT2_UNIT ** 2, SQRT2_UNIT ** -2])

    @pytest.mark.parametrize("name, unit", [
        ("qsqrt2", UnitExponentVector((-2,), 1)),
        ("zeta5", UnitExponentVector((3,), 7)),
        ("zeta7plus", UnitExponentVector((2, -1), 1)),
    ])
    def test_exponent_recovery(self, fields, lattices, name, unit):
        field_data = fields[name]
        recovered = exponents_of_unit(field_data, lattices[name], unit_embedding(field_data, unit))
        assert recovered == unit

    def test_recovery_rejects_non_unit(self, qsqrt2, lattices):
        with pytest.raises(LatticeError):
            exponents_of_unit(qsqrt2, lattices["qsqrt2"], qsqrt2.embed([2, 0]))

    def test_quadratic_conjugate_is_inverse_up_to_sign(self, qsqrt2, lattices):
        conjugates = conjugate_unit_exponents(qsqrt2, lattices["qsqrt2"], UnitExponentVector((1,), 0))
        assert conjugates == [UnitExponentVector((1,), 0), UnitExponentVector((-1,), 1)]

    def test_cyclic_cubic_conjugates_stay_in_lattice(self, zeta7plus, lattices):
        conjugates = conjugate_unit_exponents(zeta7plus, lattices["zeta7plus"], UnitExponentVector((0, 1), 0))
        assert len(conjugates) == 3
        assert conjugates[0] == UnitExponentVector((0, 1), 0)
        assert len({c.exponents for c in conjugates}) == 3


class TestEnumeration:
    def test_cube_points_are_lexicographic(self, lattices):
        points = enumerate_lattice_points_in_cube(lattices["qsqrt2"], 0.9)
        assert [p.exponents for p in points] == [(-1,), (0,), (1,)]

    def test_cube_matches_naive_scan(self, lattices):
        lattice = lattices["zeta7plus"]
        radius = 1.5
        found = {p.exponents for p in enumerate_lattice_points_in_cube(lattice, radius)}
        naive = {
            (x, y)
            for x in range(-8, 9)
            for y in range(-8, 9)
            if np.max(np.abs(lattice.point((x, y)))) <= radius
        }
        assert found == naive

    def test_rank_limit(self, lattices):
        with pytest.raises(RankTooLargeError):
            enumerate_lattice_points_in_cube(lattices["zeta7plus"], 1.0, max_rank=1)

    def test_successive_minima(self, lattices):
        assert successive_minima_linf(lattices["qsqrt2"]) == pytest.approx([LOG_SQRT2_UNIT])
        minima = successive_minima_linf(lattices["zeta7plus"])
        assert minima == pytest.approx([0.80958, 0.80958], abs=1e-4)
        assert is_well_rounded(lattices["zeta7plus"])

    @pytest.mark.parametrize("name", ["qsqrt2", "zeta7plus"])
    @pytest.mark.parametrize("factor", [0.5, 2.0, 3.7])
    def test_minima_scale_with_lattice(self, lattices, name, factor):
        lattice = lattices[name]
        scaled = lattice.scaled(factor)
        assert successive_minima_linf(scaled) == pytest.approx(factor * successive_minima_linf(lattice), rel=1e-9)
        assert scaled.volume == pytest.approx(factor ** lattice.rank * lattice.volume, rel=1e-9)
        assert is_well_rounded(scaled) == is_well_rounded(lattice)

    def test_not_well_rounded(self):
        lattice = LogUnitLattice(np.array([[1.0, -1.0, 0.0], [0.0, 3.0, -3.0]]))
        assert successive_minima_linf(lattice) == pytest.approx([1.0, 3.0])
        assert not is_well_rounded(lattice)
        with pytest.raises(HypothesisViolationError):
            covering_radius_bound(lattice)

    def test_closest_vector(self, lattices):
        lattice = lattices["qsqrt2"]
        assert closest_vector_linf(lattice, [0.5, -0.5]).exponents == (1,)
        assert closest_vector_linf(lattice, [0.44, -0.44]).exponents == (0,)
        assert closest_vector_linf(lattice, [-3.0, 3.0]).exponents == (-3,)

    def test_closest_vector_tie_takes_first(self, lattices):
        lattice = lattices["qsqrt2"]
        half = lattice.basis[0] / 2
        result = closest_vector_linf(lattice, half)
        assert result.exponents == (0,)
        assert result.distance == pytest.approx(LOG_SQRT2_UNIT / 2)

    def test_closest_vector_matches_naive_scan(self, lattices):
        lattice = lattices["zeta7plus"]
        rng = np.random.default_rng(7)
        for _ in range(20):
            target = rng.uniform(-2, 2, size=3)
            target -= target.mean()
            result = closest_vector_linf(lattice, target)
            naive = min(
                np.max(np.abs(target - lattice.point((x, y))))
                for x in range(-10, 11)
                for y in range(-10, 11)
            )
            assert result.distance == pytest.approx(naive, abs=1e-12)

    def test_closest_vector_rejects_target_off_hyperplane(self, lattices):
        with pytest.raises(LatticeError):
            closest_vector_linf(lattices["qsqrt2"], [1.0, 0.0])


class TestCoveringRadius:
    def test_quadratic_bound(self, lattices):
        assert covering_radius_bound(lattices["qsqrt2"]) == pytest.approx(0.62323, abs=1e-5)

    def test_cyclic_cubic_bound(self, lattices):
        assert covering_radius_bound(lattices["zeta7plus"]) == pytest.approx(0.6746, abs=1e-3)

    def test_rank_one_estimate_brackets_half_generator(self, lattices):
        estimate = covering_radius_estimate(lattices["qsqrt2"], 1e-3)
        assert estimate.lower <= LOG_SQRT2_UNIT / 2 + 1e-12
        assert estimate.upper >= LOG_SQRT2_UNIT / 2
        assert estimate.cell_radius <= 1e-3

    @pytest.mark.parametrize("name", ["qsqrt2", "qsqrt5", "zeta5", "zeta7plus"])
    def test_estimate_below_bound(self, lattices, name):
        estimate = covering_radius_estimate(lattices[name], 1e-3)
        assert 0 < estimate.lower <= estimate.upper <= covering_radius_bound(lattices[name])

    def test_estimate_rank_limit(self, lattices):
        with pytest.raises(RankTooLargeError):
            covering_radius_estimate(lattices["zeta7plus"], 1e-3, max_rank=1)


class TestPisotSearch:
    @pytest.mark.parametrize("name", ALL_FIELDS)
    def test_bundled_fields(self, fields, lattices, name):
        field_data = fields[name]
        result = pisot_search(field_data, lattices[name], 0.01)
        assert is_pisot(field_data.project(result.embeddings))
        assert result.log_vector[0] > 0
        assert np.all(result.log_vector[1:] < 0)
        assert result.rho_source == "estimate"
        assert result.window_holds is True
        assert result.window_low <= result.log_vector[0] <= result.window_high

    @pytest.mark.parametrize("name, exponents", [
        ("qsqrt2", (1,)), ("qsqrt5", (1,)), ("zeta5", (1,)), ("zeta7plus", (0, 1)),
    ])
    def test_golden_units(self, pisot_units, name, exponents):
        assert pisot_units[name].exponents == exponents

    def test_unit_modulus_window(self, qsqrt2, lattices):
        result = pisot_search(qsqrt2, lattices["qsqrt2"], 0.01)
        assert result.log_modulus == pytest.approx(LOG_SQRT2_UNIT)
        m = qsqrt2.signature.dim
        assert result.log_modulus <= m * result.rho + (m - 1) * result.epsilon

    def test_rejects_nonpositive_epsilon(self, qsqrt2, lattices):
        with pytest.raises(ValueError):
            pisot_search(qsqrt2, lattices["qsqrt2"], 0.0)

    def test_exhausted_retries_carry_diagnostics(self, qsqrt2, lattices, monkeypatch):
        monkeypatch.setattr("unit_lattice.pisot.is_pisot", lambda *args, **kwargs: False)
        with pytest.raises(PisotSearchError) as info:
            pisot_search(qsqrt2, lattices["qsqrt2"], 0.01, retry_cap=2)
        attempts = info.value.diagnostics["attempts"]
        assert [a["epsilon"] for a in attempts] == pytest.approx([0.01, 0.02, 0.04])

    @pytest.mark.parametrize("name, height", [("qsqrt2", 0.44069), ("qsqrt5", 0.24061), ("zeta5", 0.24061)])
    def test_min_pisot_height(self, fields, lattices, name, height):
        found = min_pisot_height(fields[name], lattices[name])
        assert found.height == pytest.approx(height, abs=1e-5)

    def test_min_pisot_height_cyclic_cubic(self, zeta7plus, lattices):
        found = min_pisot_height(zeta7plus, lattices["zeta7plus"])
        point = found.log_vector
        assert np.count_nonzero(point > 0) == 1
        assert 0 < found.height <= 0.80958 / 3 + 1e-4
