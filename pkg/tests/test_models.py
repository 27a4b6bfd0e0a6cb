"""Tests for the pydantic config and report models."""

import json

import pytest
from pydantic import ValidationError

from prophecke.models import Bounds, Config, ModuleKind, ModuleSpec, Report, RunSummary, Verdict, parse_config


# --------------------------------------------------------------------------- #
# Config                                                                      #
# --------------------------------------------------------------------------- #


class TestConfigDefaults:
    def test_defaults(self):
        cfg = Config()
        assert cfg.group == "SL2"
        assert cfg.q == 3
        assert cfg.field_order == 3
        assert cfg.bounds.max_length == 3

    def test_field_order_for_q4(self):
        assert Config(q=4).field_order == 4

    def test_field_order_for_q5(self):
        assert Config(q=5).field_order == 5


class TestConfigValidation:
    def test_unknown_preset(self):
        with pytest.raises(ValidationError, match="unknown preset 'G2'"):
            Config(group="G2")

    def test_q_not_prime_power(self):
        with pytest.raises(ValidationError, match="Not a prime power"):
            Config(q=6)

    def test_q_too_small(self):
        with pytest.raises(ValidationError):
            Config(q=1)

    def test_field_characteristic_mismatch(self):
        with pytest.raises(ValidationError, match="characteristic 2 differs"):
            Config(q=3, field_order=4)

    def test_field_lacks_roots_of_unity(self):
        with pytest.raises(ValidationError, match="does not divide"):
            Config(q=4, field_order=2)

    def test_custom_lattice(self):
        cfg = Config(group={"simple_roots": [[2]], "simple_coroots": [[1]]})
        assert cfg.group.simple_roots == [[2]]

    def test_bad_custom_lattice(self):
        with pytest.raises(ValidationError, match="not of finite type"):
            Config(group={"simple_roots": [[2, -2], [-2, 2]], "simple_coroots": [[1, 0], [0, 1]]})

    def test_duplicate_module_names(self):
        with pytest.raises(ValidationError, match="names must be unique"):
            Config(modules=[{"name": "m"}, {"name": "m"}])

    def test_seed_entries_in_field(self):
        spec = {"name": "m", "kind": "a_matrices", "seeds": [[[3]]]}
        with pytest.raises(ValidationError, match=r"entries must lie in \[0, 3\)"):
            Config(modules=[spec])

    def test_bounds_limits(self):
        with pytest.raises(ValidationError):
            Bounds(max_length=13)


class TestModuleSpec:
    def test_character_defaults(self):
        spec = ModuleSpec(name="chi")
        assert spec.kind == ModuleKind.a_character
        assert spec.eps == 0

    def test_matrices_need_seeds(self):
        with pytest.raises(ValidationError, match="need seed matrices"):
            ModuleSpec(name="m", kind="a_matrices")

    def test_matrix_shape_checked(self):
        with pytest.raises(ValidationError, match=r"seeds\[0\] is not 2x2"):
            ModuleSpec(name="m", kind="a_matrices", dim=2, seeds=[[[1]]])

    def test_characters_are_one_dimensional(self):
        with pytest.raises(ValidationError, match="one-dimensional"):
            ModuleSpec(name="m", kind="h_character", dim=2)

    def test_eps_restricted(self):
        with pytest.raises(ValidationError):
            ModuleSpec(name="m", kind="h_character", eps=1)


class TestParseConfig:
    def test_reads_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"group": "GL2", "q": 3, "seed": 7}), encoding="utf-8")
        cfg = parse_config(path)
        assert cfg.group == "GL2"
        assert cfg.seed == 7

    def test_invalid_file_raises(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"q": 6}), encoding="utf-8")
        with pytest.raises(ValidationError):
            parse_config(path)


# --------------------------------------------------------------------------- #
# Reports                                                                     #
# --------------------------------------------------------------------------- #


def _report(verdict: str, **kwargs) -> Report:
    return Report(suite="assoc", instance="basis", verdict=verdict, **kwargs)


class TestReports:
    def test_pass_needs_no_evidence(self):
        assert _report("pass").verdict == Verdict.passed

    def test_fail_needs_witness(self):
        with pytest.raises(ValidationError, match="needs a witness or bound"):
            _report("fail")

    def test_inconclusive_with_bound(self):
        assert _report("inconclusive", bound="k <= 64").bound == "k <= 64"

    def test_counts(self):
        summary = RunSummary(suites=["assoc"], reports=[_report("pass"), _report("fail", witness="x")])
        assert summary.counts == {"pass": 1, "fail": 1, "inconclusive": 0}

    @pytest.mark.parametrize(
        "verdicts, code",
        [
            ([], 0),
            (["pass", "pass"], 0),
            (["pass", "inconclusive"], 3),
            (["inconclusive", "fail"], 2),
        ],
    )
    def test_exit_codes(self, verdicts, code):
        reports = [_report(v, witness=None if v == "pass" else "w") for v in verdicts]
        assert RunSummary(suites=["assoc"], reports=reports).exit_code == code

    def test_json_round_trip_keeps_verdict(self):
        summary = RunSummary(suites=["assoc"], reports=[_report("pass")])
        data = json.loads(summary.model_dump_json())
        assert data["reports"][0]["verdict"] == "pass"
