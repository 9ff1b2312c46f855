import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core_field import trace
from reduction import (
    AdmissibleWindowError,
    IntegerMinimumError,
    NotPisotError,
    box_for_bound,
    conjugate_profiles,
    enumerate_facet_candidates,
    find_reduction_witness,
    integer_minimum,
    integer_minimum_box_scan,
    is_reduced,
    is_torsion,
    min_trace_nontorsion,
    reduce_unary,
    sound_cube_radius,
    t_k_delta,
    t_k_of_unit,
    t_k_squared,
    trace_form_gram,
    verify_theorem4,
)
from unit_lattice import UnitExponentVector, unit_embedding, unit_moduli_squared

from conftest import GOLDEN_RATIO, SQRT2_UNIT, element, random_element

U = UnitExponentVector((1,), 0)
SEEDS = {"qsqrt2": 2, "qsqrt5": 5, "zeta7plus": 7}
NEAR_ONE = 1 - 1e-9


def _unit_kre(field_data, unit=U):
    return field_data.project(unit_embedding(field_data, unit))


class TestTK:
    def test_sqrt2(self, qsqrt2):
        assert t_k_squared(_unit_kre(qsqrt2)) == pytest.approx(4 + 2 * math.sqrt(2))

    def test_sqrt5(self, fields):
        assert t_k_squared(_unit_kre(fields["qsqrt5"])) == pytest.approx(1 + GOLDEN_RATIO ** 2)

    def test_order_does_not_matter(self):
        assert t_k_of_unit([1 - math.sqrt(2), SQRT2_UNIT]) == pytest.approx(math.sqrt(4 + 2 * math.sqrt(2)))

    @pytest.mark.parametrize("delta", [0.9, 0.99, 1 - 1e-6])
    def test_delta_formula(self, qsqrt2, delta):
        lead, rest = SQRT2_UNIT ** 2, SQRT2_UNIT ** -2
        expected = math.sqrt(1 + (lead - delta) / (delta - rest))
        assert t_k_delta(_unit_kre(qsqrt2), delta) == pytest.approx(expected)

    def test_delta_grows_as_delta_shrinks(self, qsqrt2):
        u = _unit_kre(qsqrt2)
        assert t_k_delta(u, 0.5) > t_k_delta(u, 0.9) > t_k_of_unit(u)

    def test_not_pisot(self):
        with pytest.raises(NotPisotError):
            t_k_of_unit([2.0, 1.5])

    @pytest.mark.parametrize("delta", [0.1, 1.5])
    def test_window(self, qsqrt2, delta):
        with pytest.raises(AdmissibleWindowError):
            t_k_delta(_unit_kre(qsqrt2), delta)


class TestReduceUnary:
    @pytest.mark.parametrize("k", range(1, 13))
    def test_round_counts_on_unit_powers(self, qsqrt2, lattices, k):
        a = element(qsqrt2, [SQRT2_UNIT ** (2 * k), SQRT2_UNIT ** (-2 * k)])
        delta = 0.99
        cert = reduce_unary(qsqrt2, a, U, delta, lattices["qsqrt2"])
        assert cert.rounds == k
        assert cert.applied == UnitExponentVector((-k,), k % 2)
        np.testing.assert_allclose(cert.reduced_element.coords, [1.0, 1.0], rtol=1e-8)
        assert cert.trace_final == pytest.approx(2.0)
        assert cert.rounds <= math.ceil(math.log(trace(a) / 2) / math.log(1 / delta)) + 1
        assert cert.rounds <= cert.round_bound

    def test_golden_ratio_powers(self, fields, lattices):
        field_data = fields["qsqrt5"]
        a = element(field_data, [GOLDEN_RATIO ** 6, GOLDEN_RATIO ** -6])
        cert = reduce_unary(field_data, a, U, 0.99, lattices["qsqrt5"])
        assert cert.rounds == 3

    def test_history_decreases_by_delta(self, zeta7plus, lattices, pisot_units):
        rng = np.random.default_rng(11)
        delta = 0.9
        a = random_element(zeta7plus, rng, spread=5.0)
        cert = reduce_unary(zeta7plus, a, pisot_units["zeta7plus"], delta, lattices["zeta7plus"])
        history = cert.trace_history
        assert len(history) == cert.rounds + 1
        assert all(later < delta * earlier for earlier, later in zip(history, history[1:]))

    def test_complex_field_terminates_at_fixed_point(self, zeta5, lattices, pisot_units):
        rng = np.random.default_rng(5)
        delta = 0.95
        lattice = lattices["zeta5"]
        unit = pisot_units["zeta5"]
        for _ in range(10):
            a = random_element(zeta5, rng)
            cert = reduce_unary(zeta5, a, unit, delta, lattice)
            reduced = cert.reduced_element
            assert trace(reduced) == pytest.approx(cert.trace_final)
            for profile in conjugate_profiles(zeta5, lattice, unit):
                assert trace(reduced.times_moduli_squared(profile.moduli_sq)) >= delta * cert.trace_final * (1 - 1e-12)

    def test_delta_one_is_rejected(self, qsqrt2):
        with pytest.raises(AdmissibleWindowError):
            reduce_unary(qsqrt2, element(qsqrt2, [3.0, 0.5]), U, 1.0)

    def test_non_pisot_unit(self, qsqrt2):
        with pytest.raises(NotPisotError):
            reduce_unary(qsqrt2, element(qsqrt2, [3.0, 0.5]), UnitExponentVector((0,), 0), 0.9)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.floats(min_value=-8, max_value=8), min_size=2, max_size=2))
    def test_trace_never_increases(self, lattices, fields, logs):
        field_data = fields["qsqrt2"]
        a = element(field_data, np.exp(logs))
        cert = reduce_unary(field_data, a, U, 0.9, lattices["qsqrt2"])
        assert cert.trace_final <= cert.trace_initial
        assert cert.trace_final >= 2 * math.sqrt(float(np.prod(a.coords))) * (1 - 1e-12)


class TestIntegerMinimum:
    def test_identity_form(self, qsqrt2):
        result = integer_minimum(qsqrt2, element(qsqrt2, [1.0, 1.0]))
        assert result.mu == pytest.approx(2.0)
        assert result.argmin.coeffs == (-1, 0)

    def test_unit_twisted_form(self, qsqrt2):
        result = integer_minimum(qsqrt2, element(qsqrt2, [SQRT2_UNIT ** 2, SQRT2_UNIT ** -2]))
        assert result.mu == pytest.approx(2.0)
        assert result.argmin.coeffs == (-1, 1)
        assert result.trace_xx == pytest.approx(SQRT2_UNIT ** -2 + SQRT2_UNIT ** 2)

    @pytest.mark.parametrize("name", ["qsqrt2", "qsqrt3", "qsqrt5", "qsqrt13", "zeta7plus", "zeta5"])
    def test_matches_box_scan(self, fields, name):
        field_data = fields[name]
        rng = np.random.default_rng(2024)
        for _ in range(50):
            a = random_element(field_data, rng, spread=1.0)
            fast = integer_minimum(field_data, a)
            box = box_for_bound(trace_form_gram(field_data, a), fast.mu * (1 + 1e-6))
            slow = integer_minimum_box_scan(field_data, a, box)
            assert slow.mu == pytest.approx(fast.mu, rel=1e-12)
            assert slow.argmin.coeffs == fast.argmin.coeffs

    @pytest.mark.parametrize("name, value", [("qsqrt2", 4.0), ("qsqrt5", 3.0), ("zeta7plus", 5.0)])
    def test_min_trace_nontorsion(self, fields, name, value):
        assert min_trace_nontorsion(fields[name]) == pytest.approx(value)

    def test_torsion(self, zeta5, qsqrt2):
        assert is_torsion(zeta5, [0, 1, 0, 0])
        assert is_torsion(qsqrt2, [-1, 0])
        assert not is_torsion(qsqrt2, [1, 1])

    def test_bad_start_bound(self, qsqrt2):
        with pytest.raises(IntegerMinimumError):
            integer_minimum(qsqrt2, element(qsqrt2, [1.0, 1.0]), bound=-1.0)

    def test_signature_mismatch(self, qsqrt2, zeta5):
        with pytest.raises(ValueError):
            trace_form_gram(qsqrt2, element(zeta5, [1.0, 1.0]))


class TestReductionQuality:
    @pytest.fixture(scope="class")
    def nontorsion(self, fields):
        return {name: min_trace_nontorsion(fields[name]) for name in ("qsqrt2", "qsqrt5", "zeta7plus")}

    @pytest.mark.parametrize("name", ["qsqrt2", "qsqrt5", "zeta7plus"])
    @pytest.mark.parametrize("delta", [0.9, 0.99, 1 - 1e-6])
    def test_random_forms(self, fields, lattices, pisot_units, nontorsion, name, delta):
        field_data = fields[name]
        rng = np.random.default_rng([SEEDS[name], round(delta * 1e6)])
        for _ in range(200):
            a = random_element(field_data, rng)
            report = verify_theorem4(
                field_data, a, pisot_units[name], delta, lattices[name], nontorsion[name]
            )
            assert report.trace_ok, report
            assert report.argmin_ok, report
            assert report.passed
            assert report.weighted_factor is None

    def test_complex_field_reports_weighted_variant(self, zeta5, lattices, pisot_units):
        a = random_element(zeta5, np.random.default_rng(3))
        report = verify_theorem4(zeta5, a, pisot_units["zeta5"], 0.9, lattices["zeta5"])
        assert report.weighted_factor is not None
        assert report.weighted_factor >= report.factor
        assert report.weighted_trace_ok is not None

    @pytest.mark.parametrize("name", ["qsqrt2", "qsqrt5", "zeta7plus"])
    def test_coordinates_stay_above_trace_floor(self, fields, lattices, pisot_units, nontorsion, name):
        field_data = fields[name]
        rng = np.random.default_rng(SEEDS[name])
        for _ in range(30):
            a = random_element(field_data, rng)
            report = verify_theorem4(
                field_data, a, pisot_units[name], NEAR_ONE, lattices[name], nontorsion[name]
            )
            cert = report.certificate
            floor = cert.trace_final / cert.t_delta ** 2
            assert cert.reduced_element.coords.min() >= floor * (1 - 1e-8)
            assert report.coordinate_floor == pytest.approx(floor)
            assert report.coordinate_ok
            assert report.weighted_coordinate_ok is None

    def test_complex_coordinates_use_weighted_floor(self, zeta5, lattices, pisot_units):
        rng = np.random.default_rng(1)
        for _ in range(30):
            a = random_element(zeta5, rng)
            report = verify_theorem4(zeta5, a, pisot_units["zeta5"], NEAR_ONE, lattices["zeta5"])
            cert = report.certificate
            floor = cert.trace_final / (2 * cert.t_delta ** 2)
            assert cert.reduced_element.coords.min() >= floor * (1 - 1e-8)
            assert report.weighted_coordinate_ok


class TestReducedDomain:
    @pytest.mark.parametrize("name", ["qsqrt2", "qsqrt5", "zeta5"])
    def test_reduce_output_is_reduced(self, fields, lattices, pisot_units, name):
        field_data = fields[name]
        rng = np.random.default_rng(1)
        for _ in range(30):
            a = random_element(field_data, rng)
            cert = reduce_unary(field_data, a, pisot_units[name], NEAR_ONE, lattices[name])
            assert is_reduced(field_data, cert.reduced_element, lattices[name], pisot_units[name])

    def test_cyclic_cubic_witness_lies_off_conjugates(self, zeta7plus, lattices, pisot_units):
        # 共轭方向不含 u^{-1}；reduce_unary 停下后整格搜索仍可能降迹
        lattice, unit = lattices["zeta7plus"], pisot_units["zeta7plus"]
        conjugates = {p.unit.exponents for p in conjugate_profiles(zeta7plus, lattice, unit)}
        rng = np.random.default_rng(7)
        for _ in range(30):
            a = random_element(zeta7plus, rng)
            cert = reduce_unary(zeta7plus, a, unit, NEAR_ONE, lattice)
            witness = find_reduction_witness(zeta7plus, cert.reduced_element, lattice, unit)
            if witness is None:
                continue
            assert witness.exponents not in conjugates
            twisted = cert.reduced_element.times_moduli_squared(
                unit_moduli_squared(zeta7plus, witness.exponents)
            )
            assert trace(twisted) < cert.trace_final

    def test_unit_power_is_not_reduced(self, qsqrt2, lattices, pisot_units):
        a = element(qsqrt2, [SQRT2_UNIT ** 2, SQRT2_UNIT ** -2])
        assert not is_reduced(qsqrt2, a, lattices["qsqrt2"], pisot_units["qsqrt2"])
        witness = find_reduction_witness(qsqrt2, a, lattices["qsqrt2"], pisot_units["qsqrt2"])
        assert witness is not None

    @pytest.mark.parametrize("name", ["qsqrt2", "qsqrt5", "zeta7plus", "zeta5"])
    def test_identity_is_reduced(self, fields, lattices, pisot_units, name):
        field_data = fields[name]
        a = element(field_data, np.ones(field_data.signature.dim))
        assert is_reduced(field_data, a, lattices[name], pisot_units[name])

    def test_quadratic_radius_is_log_tk(self, qsqrt2):
        t = math.sqrt(4 + 2 * math.sqrt(2))
        assert sound_cube_radius(qsqrt2, t) == pytest.approx(math.log(t))


class TestFacetCandidates:
    def test_sqrt2(self, qsqrt2, lattices, pisot_units):
        report = enumerate_facet_candidates(qsqrt2, lattices["qsqrt2"], pisot_units["qsqrt2"])
        assert report.radius == pytest.approx(0.95998, abs=1e-5)
        assert report.cube_points == 3
        assert report.half_counted == 2
        assert report.with_signs == 4
        assert report.blichfeldt == pytest.approx(3.178, abs=1e-3)
        assert report.blichfeldt_ok
        assert report.facet.bound == pytest.approx(4.1757, abs=1e-3)

    @pytest.mark.parametrize("name", ["qsqrt2", "qsqrt3", "qsqrt5", "qsqrt13"])
    def test_count_within_facet_bound(self, fields, lattices, pisot_units, name):
        report = enumerate_facet_candidates(fields[name], lattices[name], pisot_units[name])
        assert report.half_counted == 2
        assert report.within_facet_bound
