import io
import json
import math

import numpy as np
import pytest

from cli_io import (
    COMMAND_SCHEMAS,
    FieldManager,
    PellError,
    RunLedger,
    dump_field_file,
    gen_cyclotomic_field_file,
    gen_quadratic_field_file,
    gen_real_cyclotomic_field_file,
    is_squarefree,
    load_field_file,
    parse_field_file,
    pell_fundamental_unit,
    write_field_file,
)
from cli_io.cli import main, output_precision, round_floats
from cli_io.ledger import MAX_SUMMARY_LENGTH
from core_field import FieldValidationError

from conftest import SQRT2_UNIT

SQRT2_REGULATOR = "0.881373587019543"
ZETA5_REGULATOR = "0.9624236501192069"


def run(cli_config, *argv):
    out = io.StringIO()
    code = main(["--config", str(cli_config), *argv], stdout=out)
    return code, out.getvalue()


def run_ok(cli_config, command, *argv):
    code, text = run(cli_config, command, *argv)
    assert code == 0, text
    return COMMAND_SCHEMAS[command].model_validate_json(text)


def run_error(cli_config, *argv):
    code, text = run(cli_config, *argv)
    assert code == 2
    return COMMAND_SCHEMAS["error"].model_validate_json(text)


class TestPell:
    @pytest.mark.parametrize("d, p, q, denom, norm", [
        (2, 1, 1, 1, -1),
        (3, 2, 1, 1, 1),
        (5, 1, 1, 2, -1),
        (13, 3, 1, 2, -1),
        (17, 4, 1, 1, -1),
    ])
    def test_fundamental_units(self, d, p, q, denom, norm):
        result = pell_fundamental_unit(d)
        assert (result.p, result.q, result.denom, result.norm) == (p, q, denom, norm)
        assert p * p - d * q * q == norm * denom * denom
        assert float(result.value() * result.conjugate_value()) == pytest.approx(norm)

    def test_regulator(self):
        assert pell_fundamental_unit(13).regulator == pytest.approx(1.19476, abs=1e-5)
        assert pell_fundamental_unit(2).regulator == pytest.approx(math.log(SQRT2_UNIT))

    def test_large_period(self):
        result = pell_fundamental_unit(94)
        assert (result.p, result.q, result.norm) == (2143295, 221064, 1)

    @pytest.mark.parametrize("d", [1, 4, 12, 10 ** 6 + 1, 0, -3])
    def test_invalid(self, d):
        with pytest.raises(PellError):
            pell_fundamental_unit(d)

    def test_squarefree(self):
        assert [d for d in range(1, 20) if is_squarefree(d)] == [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]


class TestFieldFiles:
    @pytest.mark.parametrize("d", [2, 3, 5, 13])
    def test_quadratic_matches_bundled(self, fields, d):
        generated = gen_quadratic_field_file(d, 16).to_field_data()
        bundled = fields[f"qsqrt{d}"]
        np.testing.assert_allclose(generated.integral_basis_embeddings, bundled.integral_basis_embeddings, atol=1e-14)
        np.testing.assert_allclose(generated.unit_generators, bundled.unit_generators, rtol=1e-14)
        assert generated.regulator_hint == pytest.approx(bundled.regulator_hint, rel=1e-12)

    def test_cyclotomic_matches_bundled(self, zeta5, zeta7plus):
        for generated, bundled in (
            (gen_cyclotomic_field_file(5, 16).to_field_data(), zeta5),
            (gen_real_cyclotomic_field_file(7, 16).to_field_data(), zeta7plus),
        ):
            np.testing.assert_allclose(generated.integral_basis_embeddings, bundled.integral_basis_embeddings, atol=1e-14)
            np.testing.assert_allclose(generated.unit_generators, bundled.unit_generators, atol=1e-14)
            np.testing.assert_array_equal(generated.galois_perms, bundled.galois_perms)
            assert generated.torsion_order == bundled.torsion_order

    def test_unsupported_cyclotomic(self):
        with pytest.raises(ValueError):
            gen_cyclotomic_field_file(11)
        with pytest.raises(ValueError):
            gen_real_cyclotomic_field_file(5)

    def test_dump_is_stable(self, tmp_path):
        field_file = gen_cyclotomic_field_file(5, 20)
        text = dump_field_file(field_file)
        assert dump_field_file(parse_field_file(text)) == text
        path = write_field_file(field_file, tmp_path / "nested" / "zeta5.json")
        assert load_field_file(path).name == "zeta5"

    def test_high_precision_quadratic(self, tmp_path):
        path = write_field_file(gen_quadratic_field_file(7, 40), tmp_path / "q7.json")
        field_data = load_field_file(path)
        assert field_data.precision_digits == 40
        assert field_data.discriminant == 28

    def test_generator_norm_fault(self, tmp_path):
        field_file = gen_quadratic_field_file(2, 16)
        root = math.sqrt(2)
        field_file = field_file.model_copy(update={"unit_generators": [[[repr(root), "0"], [repr(-root), "0"]]]})
        path = write_field_file(field_file, tmp_path / "bad.json")
        with pytest.raises(FieldValidationError) as info:
            load_field_file(path)
        assert info.value.invariant == "generator norm"

    def test_parse_fault(self):
        with pytest.raises(FieldValidationError) as info:
            parse_field_file('{"name": "broken", "r": 2}')
        assert info.value.invariant == "parse"

    def test_non_numeric_entry(self):
        data = json.loads(dump_field_file(gen_quadratic_field_file(2, 16)))
        data["integral_basis"][0][0] = ["one", "0"]
        text = json.dumps(data)
        with pytest.raises(FieldValidationError):
            parse_field_file(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_field_file(tmp_path / "absent.json")


class TestFieldManager:
    def test_catalog(self, field_manager):
        names = {entry.name for entry in field_manager.list_fields()}
        assert names == {"qsqrt2", "qsqrt3", "qsqrt5", "qsqrt13", "zeta7plus", "zeta5"}
        assert field_manager.get_entry("zeta5").path.exists()
        assert field_manager.get_entry("qsqrt7") is None

    def test_default_and_cache(self, config):
        manager = FieldManager(config)
        first = manager.resolve()
        assert first.name == "qsqrt2"
        assert manager.resolve("qsqrt2") is first

    def test_resolve_path(self, field_manager, tmp_path):
        path = write_field_file(gen_quadratic_field_file(6, 16), tmp_path / "q6.json")
        assert field_manager.resolve(str(path)).name == "qsqrt6"

    def test_unknown_name(self, field_manager):
        with pytest.raises(FileNotFoundError):
            field_manager.resolve("qsqrt7")

    def test_empty_config(self):
        with pytest.raises(FileNotFoundError):
            FieldManager({}).resolve()


class TestRunLedger:
    def test_records(self, tmp_path):
        ledger = RunLedger({"ledger": {"log_path": str(tmp_path / "logs" / "runs.jsonl")}})
        ledger.log("sums", {"n_max": 4}, success=True, summary="ok")
        ledger.log("pisot", {"field": None, "values": (1, 2)}, success=False, summary="x" * (MAX_SUMMARY_LENGTH + 50))
        runs = ledger.get_recent_runs()
        assert [r["command"] for r in runs] == ["sums", "pisot"]
        assert runs[1]["success"] is False
        assert runs[1]["arguments"]["values"] == [1, 2]
        assert runs[1]["summary"].endswith("(truncated)")

    def test_skips_corrupt_lines(self, tmp_path):
        path = tmp_path / "runs.jsonl"
        ledger = RunLedger({"ledger": {"log_path": str(path)}})
        ledger.log("sums", {})
        with open(path, "a", encoding="utf-8") as f:
            f.write("not json\n")
        ledger.log("schema", {})
        assert [r["command"] for r in ledger.get_recent_runs()] == ["sums", "schema"]
        assert len(ledger.get_recent_runs(1)) == 1

    def test_disabled(self, tmp_path):
        path = tmp_path / "off" / "runs.jsonl"
        ledger = RunLedger({"ledger": {"enabled": False, "log_path": str(path)}})
        ledger.log("sums", {})
        assert not path.exists()
        assert ledger.get_recent_runs() == []


class TestOutputPrecision:
    def test_round_floats(self):
        payload = {"a": 3.14159, "b": [2.71828, {"c": 1}], "d": "text", "e": float("inf")}
        assert round_floats(payload, 3) == {"a": 3.14, "b": [2.72, {"c": 1}], "d": "text", "e": float("inf")}
        assert round_floats(payload, None) is payload

    @pytest.mark.parametrize("raw, expected", [("6", 6), ("", None), ("abc", None), ("-2", None)])
    def test_env(self, monkeypatch, raw, expected):
        monkeypatch.setenv("PISOT_OUTPUT_PRECISION", raw)
        assert output_precision() == expected


class TestCommands:
    def test_sums(self, cli_config):
        report = run_ok(cli_config, "sums", "--n-max", "6")
        assert [row.n for row in report.rows] == list(range(1, 7))
        assert report.rows[0].ratio is None
        assert all(row.ratio is not None for row in report.rows[1:])

    def test_sums_rejects_zero(self, cli_config):
        assert run_error(cli_config, "sums", "--n-max", "0").invariant == "ValueError"

    def test_schema(self, cli_config):
        report = run_ok(cli_config, "schema")
        assert set(report.schemas) == set(COMMAND_SCHEMAS)

    def test_facet_bound(self, cli_config):
        report = run_ok(cli_config, "facet-bound", "--r", "2", "--s", "0", "--regulator", SQRT2_REGULATOR)
        assert report.bound == pytest.approx(4.1757, abs=1e-3)
        assert not report.below_friedman
        assert not report.abstract_exponent

    def test_precision_env(self, cli_config, monkeypatch):
        full = run_ok(cli_config, "facet-bound", "--r", "2", "--s", "0", "--regulator", SQRT2_REGULATOR)
        monkeypatch.setenv("PISOT_OUTPUT_PRECISION", "3")
        rounded = run_ok(cli_config, "facet-bound", "--r", "2", "--s", "0", "--regulator", SQRT2_REGULATOR)
        assert rounded.bound == float(f"{full.bound:.3g}")

    def test_pisot(self, cli_config):
        report = run_ok(cli_config, "pisot", "--field", "qsqrt2")
        assert report.unit.exponents == [1]
        assert report.is_pisot
        assert report.window_holds
        assert len(report.embeddings) == 2

    def test_reduce_with_given_unit(self, cli_config):
        a = f"{repr(SQRT2_UNIT ** 4)},{repr(SQRT2_UNIT ** -4)}"
        report = run_ok(cli_config, "reduce", "--field", "qsqrt2", "--a", a, "--delta", "0.99", "--unit-exponents", "1")
        assert report.rounds == 2
        assert report.applied.exponents == [-2]
        assert report.applied.torsion_index == 0
        assert report.reduced_element == pytest.approx([1.0, 1.0])
        assert len(report.trace_history) == 3

    def test_reduce_rank_mismatch(self, cli_config):
        error = run_error(cli_config, "reduce", "--field", "qsqrt2", "--a", "1,1", "--delta", "0.9", "--unit-exponents", "1,0")
        assert error.invariant == "ValueError"

    def test_reduce_rejects_delta_one(self, cli_config):
        error = run_error(cli_config, "reduce", "--field", "qsqrt2", "--a", "3,0.5", "--delta", "1.0")
        assert error.invariant == "AdmissibleWindowError"

    def test_verify(self, cli_config):
        report = run_ok(cli_config, "verify", "--field", "qsqrt5", "--a", "30.0,0.2", "--delta", "0.99")
        assert report.passed
        assert len(report.argmin) == 2
        assert report.weighted_factor is None
        assert report.coordinate_floor > 0
        assert report.weighted_coordinate_ok is None

    def test_enumerate_facets(self, cli_config):
        report = run_ok(cli_config, "enumerate-facets", "--field", "qsqrt2")
        assert report.half_counted == 2
        assert report.within_facet_bound
        assert report.facet_bound == pytest.approx(4.1757, abs=1e-3)

    def test_lemma6(self, cli_config):
        report = run_ok(cli_config, "lemma6", "--samples", "50", "--seed", "42", "--bound", "6")
        assert report.violations == 0
        assert report.worst_ratio >= 2.0 * (1 - 1e-12)
        assert len(report.per_sample) == 50

    def test_height_bound_quadratic(self, cli_config):
        report = run_ok(cli_config, "height-bound", "--r", "2", "--s", "0", "--regulator", SQRT2_REGULATOR, "--field", "qsqrt2")
        assert report.gamma == 1
        assert report.bound == pytest.approx(0.22534, abs=1e-5)
        assert report.min_pisot_height == pytest.approx(0.44069, abs=1e-3)
        assert report.bound_holds is False

    def test_height_bound_cyclotomic(self, cli_config):
        report = run_ok(cli_config, "height-bound", "--r", "0", "--s", "2", "--regulator", ZETA5_REGULATOR, "--field", "zeta5")
        assert report.gamma == 2
        assert report.bound == pytest.approx(0.24311, abs=1e-5)
        assert report.min_pisot_height == pytest.approx(0.24061, abs=1e-3)
        assert report.bound_holds is True

    def test_height_bound_without_field(self, cli_config):
        report = run_ok(cli_config, "height-bound", "--r", "3", "--s", "0", "--regulator", "0.525")
        assert report.field is None
        assert report.bound_holds is None
        assert report.optimal_epsilon > 0

    def test_height_bound_signature_mismatch(self, cli_config):
        error = run_error(cli_config, "height-bound", "--r", "2", "--s", "0", "--regulator", "1.0", "--field", "zeta5")
        assert error.invariant == "ValueError"

    def test_gen_quadratic(self, cli_config, tmp_path):
        out = tmp_path / "q2.json"
        report = run_ok(cli_config, "gen-quadratic", "--d", "2", "--out", str(out))
        assert report.unit == "1 + 1*sqrt(2)"
        assert report.regulator == pytest.approx(math.log(SQRT2_UNIT))
        assert load_field_file(out).name == "qsqrt2"

    def test_gen_quadratic_invalid(self, cli_config, tmp_path):
        error = run_error(cli_config, "gen-quadratic", "--d", "4", "--out", str(tmp_path / "q4.json"))
        assert error.invariant == "PellError"

    def test_gen_cyclotomic(self, cli_config, tmp_path):
        out = tmp_path / "z7.json"
        report = run_ok(cli_config, "gen-cyclotomic", "--kind", "zeta7plus", "--out", str(out))
        assert report.degree == 3
        assert report.unit is None

    def test_invalid_field_file(self, cli_config, tmp_path):
        field_file = gen_quadratic_field_file(2, 16)
        root = math.sqrt(2)
        field_file = field_file.model_copy(update={"unit_generators": [[[repr(root), "0"], [repr(-root), "0"]]]})
        path = write_field_file(field_file, tmp_path / "bad.json")
        error = run_error(cli_config, "pisot", "--field", str(path))
        assert error.invariant == "generator norm"

    def test_missing_field(self, cli_config, tmp_path):
        error = run_error(cli_config, "pisot", "--field", str(tmp_path / "absent.json"))
        assert error.invariant == "FileNotFoundError"

    def test_runs_are_recorded(self, cli_config, tmp_path):
        run_ok(cli_config, "sums", "--n-max", "3")
        run_error(cli_config, "sums", "--n-max", "0")
        lines = (tmp_path / "runs.jsonl").read_text(encoding="utf-8").splitlines()
        records = [json.loads(line) for line in lines]
        assert [(r["command"], r["success"]) for r in records] == [("sums", True), ("sums", False)]
        assert records[0]["arguments"] == {"n_max": 3}
