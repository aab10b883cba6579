import json

import pytest

from numbersgame.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out.strip() else None
    error = json.loads(captured.err) if captured.err.strip() else None
    return code, payload, error


class TestInspect:
    def test_i2_4(self, capsys):
        code, payload, _ = run_cli(capsys, "inspect", "preset:i2-4-figure2")
        assert code == 0
        assert payload["family"] == "I2(4)"
        assert payload["group"]["order"] == 8
        assert payload["group"]["longest_length"] == 4
        assert payload["group"]["positive_roots"] == 4

    def test_a2_asymmetric(self, capsys):
        code, payload, _ = run_cli(capsys, "inspect", "preset:a2-asymmetric")
        assert code == 0
        assert payload["family"] == "A2"
        assert payload["odd_asymmetries"] == [[1, 2]]
        assert payload["group"]["f_values"] == {"1,2": 2}
        assert payload["group"]["positive_roots"] == 6

    def test_loop_negative_finding(self, capsys):
        code, payload, _ = run_cli(capsys, "inspect", "preset:loop-4")
        assert code == 1
        assert payload["family"] == "NotECoxeter"
        assert payload["admissible"] is False

    def test_invalid_graph_is_an_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"n": 2, "amplitudes": [[2, -1], [-2.5, 2]]}))
        code, payload, error = run_cli(capsys, "inspect", str(path))
        assert code == 2
        assert error["error"] == "InvalidAmplitudeProduct"

    def test_exit_codes_distinguish_failure_kinds(self, capsys, tmp_path):
        path = tmp_path / "nope.json"
        code_missing, _, err = run_cli(capsys, "inspect", str(path))
        code_negative, _, _ = run_cli(capsys, "inspect", "preset:loop-3")
        assert code_missing == 2 and err["error"] == "ParseError"
        assert code_negative == 1


class TestPlay:
    def test_scripted_figure_two(self, capsys):
        code, payload, _ = run_cli(
            capsys, "play", "preset:i2-4-figure2", "[1,1]", "--script", "2,1,2,1"
        )
        assert code == 0
        assert payload["fired_values"] == [1, 3, 2, 1]
        assert payload["intermediates"][-1] == [-1, -1]
        roots = [f["root"] for f in payload["root_functionals"]]
        assert roots == [[0, 1], [1, 2], [1, 1], [1, 0]]

    def test_one_node(self, capsys, tmp_path):
        path = tmp_path / "one.json"
        path.write_text(json.dumps({"n": 1, "amplitudes": [[2.0]]}))
        code, payload, _ = run_cli(capsys, "play", str(path), "[1]")
        assert code == 0
        assert payload["firings"] == [1]
        assert payload["intermediates"][-1] == [-1]

    def test_divergent_loop_reports_bound(self, capsys):
        code, payload, _ = run_cli(
            capsys, "play", "preset:loop-3-pi8", "[1,0,0]", "--cap", "50"
        )
        assert code == 1
        assert payload["status"] == "bound-exceeded"

    def test_illegal_script_is_an_error(self, capsys):
        code, _, error = run_cli(
            capsys, "play", "preset:i2-4-figure2", "[1,1]", "--script", "1,1"
        )
        assert code == 2
        assert error["error"] == "IllegalScriptedFiring"

    def test_position_from_file(self, capsys, tmp_path):
        path = tmp_path / "pos.json"
        path.write_text("[1.0, 1.0]")
        code, payload, _ = run_cli(capsys, "play", "preset:i2-4-figure2", str(path))
        assert code == 0 and payload["status"] == "terminal"


class TestVerify:
    def test_unknown_suite(self, capsys):
        code, _, error = run_cli(capsys, "verify", "nope")
        assert code == 2 and error["error"] == "UnknownSuite"

    def test_divergence_suite_passes(self, capsys):
        code, payload, _ = run_cli(capsys, "verify", "divergence-schemes")
        assert code == 0
        assert payload["passed"] is True
        assert all(c["passed"] for c in payload["checks"])

    def test_payload_carries_tolerances(self, capsys):
        _, payload, _ = run_cli(capsys, "verify", "divergence-schemes")
        assert payload["tolerances"]["key_grid"] == 1e-6


class TestEnumerate:
    def test_roots_of_i2_4(self, capsys):
        code, payload, _ = run_cli(capsys, "enumerate", "preset:i2-4", "--roots")
        assert code == 0
        coeffs = sorted(r["coeffs"] for r in payload["root_system"]["positive_roots"])
        assert coeffs == [[0, 1], [1, 0], [1, 1], [1, 2]]

    def test_quotient_of_a3(self, capsys):
        code, payload, _ = run_cli(
            capsys, "enumerate", "preset:a3", "--quotient", "2,3"
        )
        assert code == 0
        assert payload["quotient"]["size"] == 4

    def test_reduced_words_of_longest(self, capsys):
        code, payload, _ = run_cli(
            capsys, "enumerate", "preset:a2", "--reduced-words", "w0"
        )
        assert code == 0
        assert payload["reduced_words"] == [[1, 2, 1], [2, 1, 2]]
        assert len(payload["commutativity_classes"]) == 2

    def test_group_table_default(self, capsys):
        code, payload, _ = run_cli(capsys, "enumerate", "preset:a2")
        assert code == 0
        assert payload["group"]["order"] == 6


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ("inspect", "preset:h3"),
        ("play", "preset:b3", "[1,1,1]", "--strategy", "random", "--seed", "9"),
        ("verify", "divergence-schemes"),
        ("enumerate", "preset:a3", "--quotient", "2,3"),
    ])
    def test_identical_bytes(self, capsys, argv):
        main(list(argv))
        first = capsys.readouterr().out
        main(list(argv))
        second = capsys.readouterr().out
        assert first == second


def test_presets_listing(capsys):
    code, payload, _ = run_cli(capsys, "presets")
    assert code == 0
    ids = [p["id"] for p in payload["presets"]]
    assert "i2-4-figure2" in ids and "four-cycle-m5" in ids
    fig2 = next(p for p in payload["presets"] if p["id"] == "i2-4-figure2")
    assert fig2["default_position"] == [1, 1]
