import json

import pytest

from indalg import cli


def run(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_report_schema_and_determinism(capsys):
    argv = ("verify-counterexample", "--samples", "300", "--terms", "25")
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical across runs
    rep = json.loads(out1)
    assert rep["schema"] == 1
    assert rep["command"] == "verify-counterexample"
    assert rep["ok"] is True
    assert {"name", "expected", "outcome", "details"} <= set(rep["checks"][0])
    # canonical serialization: sorted keys, two-space indent, trailing newline
    assert out1 == json.dumps(rep, indent=2, sort_keys=True) + "\n"


def test_verify_counterexample_checks(capsys):
    code, rep, _ = run_json(
        capsys, "verify-counterexample", "--samples", "200", "--terms", "30"
    )
    assert code == 0
    names = [c["name"] for c in rep["checks"]]
    assert names == [
        "pinned_g_values",
        "right_translation_homogeneity",
        "distributivity_refutations",
    ]
    assert all(c["outcome"] == c["expected"] == "pass" for c in rep["checks"])
    refs = rep["checks"][2]["details"]
    assert refs["refuted"] > 0
    assert refs["refuted"] + refs["constant_prefix"] == refs["terms"]
    assert refs["unrefuted"] == []


def test_classify_demo_terms(capsys):
    code, rep, _ = run_json(capsys, "classify")
    assert code == 0
    rows = rep["checks"][0]["details"]["terms"]
    assert len(rows) >= 3
    by_text = {r["term"]: r for r in rows}
    assert by_text["x1"]["form"] == 1
    assert by_text["g(x1, x2)"]["form"] == 2


def test_classify_parse_error_exit_code(monkeypatch, capsys):
    # parse errors must flip the outcome and the exit status
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO('{"terms": ["g(x1"]}'))
    code = cli.run(["classify", "--input", "-"])
    rep = json.loads(capsys.readouterr().out)
    assert code == 1
    assert rep["ok"] is False
    assert rep["checks"][0]["outcome"] == "fail"
    assert "error" in rep["checks"][0]["details"]["terms"][0]


def test_catalog_exchange_semilattice_is_expected_finding(capsys):
    code, rep, _ = run_json(capsys, "catalog", "--check", "exchange")
    assert code == 0
    finding = [c for c in rep["checks"] if c["expected"] == "finding"]
    assert len(finding) == 1
    assert "semilattice" in finding[0]["name"]
    assert finding[0]["outcome"] == "finding"
    assert finding[0]["details"]["witness"] == {"X": [0], "y": 2, "z": 1}


def test_catalog_witness_plus_variant(capsys):
    code, rep, _ = run_json(
        capsys,
        "catalog",
        "--kind",
        "linear",
        "--params",
        '{"q": 3, "dim": 1, "a0": [[1]]}',
        "--check",
        "witness",
        "--variant",
        "plus",
    )
    assert code == 0
    (check,) = rep["checks"]
    assert check["expected"] == "finding"
    assert check["outcome"] == "finding"
    assert {
        "a": [1, 2, 0],
        "op": "f(1,1)+0",
        "args": [0, 0],
        "lhs": 1,
        "rhs": 2,
    } in check["details"]["violations"]


def test_greens_dual_routes_both_backends(capsys):
    for backend in ("matrix", "act"):
        for side in ("R", "L", "Rstar", "Lstar"):
            code, rep, _ = run_json(
                capsys, "greens", "--backend", backend, "--side", side
            )
            assert code == 0, (backend, side, rep)
            (check,) = rep["checks"]
            assert check["details"]["side"] == side
            assert check["details"]["routes_agree"] is True
            assert isinstance(check["details"]["leq"], bool)


def test_greens_payload_pair(tmp_path, capsys):
    payload = tmp_path / "pair.json"
    payload.write_text(
        json.dumps({"a": [["1/2", "0"], ["0", "0"]], "b": [[1, 0], [0, 1]]})
    )
    code, rep, _ = run_json(
        capsys, "greens", "--backend", "matrix", "--side", "R",
        "--input", str(payload),
    )
    assert code == 0
    (check,) = rep["checks"]
    assert check["details"]["leq"] is True  # the identity divides everything
    assert check["details"]["a"] == [["1/2", "0"], ["0", "0"]]


def test_decompose_matrix_modes(capsys):
    for mode in ("left", "right", "straight"):
        code, rep, _ = run_json(
            capsys, "decompose", "--backend", "matrix", "--mode", mode
        )
        assert code == 0, (mode, rep)
        (check,) = rep["checks"]
        assert check["outcome"] == "pass"
        assert check["details"]["mode"] == mode
        assert {"alpha", "a", "b"} <= set(check["details"])
        if mode == "straight":
            assert all(check["details"]["certificates"].values())


def test_decompose_act_left(capsys):
    code, rep, _ = run_json(
        capsys, "decompose", "--backend", "act", "--mode", "left"
    )
    assert code == 0
    (check,) = rep["checks"]
    assert check["outcome"] == "pass"
    assert check["details"]["a"]["flavor"] == "B"
    assert check["details"]["b"]["flavor"] == "B"


def test_decompose_act_payload(tmp_path, capsys):
    payload = tmp_path / "alpha.json"
    payload.write_text(
        json.dumps({"alpha": {"flavor": "A", "shifts": [-2, 0], "targets": [1, 2]}})
    )
    code, rep, _ = run_json(
        capsys, "decompose", "--backend", "act", "--mode", "left",
        "--input", str(payload),
    )
    assert code == 0
    (check,) = rep["checks"]
    assert check["details"]["a"]["shifts"] == [2, 2]
    assert check["details"]["b"]["shifts"] == [0, 2]


def test_decompose_act_rejects_other_modes(capsys):
    code, out, err = run(capsys, "decompose", "--backend", "act", "--mode", "right")
    assert code == 2
    assert "usage" in err.lower() or err  # message lands on stderr


def test_quotient_eq_and_embed(capsys):
    for backend in ("matrix", "act"):
        for action in ("eq", "embed"):
            code, rep, _ = run_json(capsys, "quotient", action, "--backend", backend)
            assert code == 0, (backend, action, rep)


def test_ci_check_all_mock_is_expected_finding(capsys):
    code, rep, _ = run_json(capsys, "ci-check", "--backend", "all")
    assert code == 0
    by_name = {c["name"]: c for c in rep["checks"]}
    assert by_name["ci[matrix]"]["outcome"] == "pass"
    assert by_name["ci[act]"]["outcome"] == "pass"
    assert by_name["ci[mock]"]["expected"] == "finding"
    assert by_name["ci[mock]"]["outcome"] == "finding"
    assert by_name["ci[mock]"]["details"]["witness"] == ["a", 0]


def test_ore_check_posint_and_free2(capsys):
    code, rep, _ = run_json(capsys, "ore-check", "--monoid", "posint", "--depth", "3")
    assert code == 0
    assert all(c["outcome"] == "pass" for c in rep["checks"])

    code, rep, _ = run_json(capsys, "ore-check", "--monoid", "free2", "--depth", "3")
    assert code == 0
    for check in rep["checks"]:
        assert check["expected"] == "finding"
        assert check["outcome"] == "finding"
        assert "certificate" in check["details"]["witness"]


def test_suite_command(capsys):
    code, rep, _ = run_json(capsys, "suite", "--backend", "act", "--samples", "30")
    assert code == 0
    assert len(rep["checks"]) == 11
    assert all(c["outcome"] == "pass" for c in rep["checks"])


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = cli.run(["ci-check", "--backend", "matrix", "--out", str(target)])
    capsys.readouterr()
    assert code == 0
    rep = json.loads(target.read_text())
    assert rep["command"] == "ci-check"


def test_text_format(capsys):
    code, out, _ = run(capsys, "ci-check", "--backend", "all", "--format", "text")
    assert code == 0
    lines = [l for l in out.splitlines() if l]
    assert any(l.startswith("[PASS]") for l in lines)
    assert "ci[mock]" in out


def test_usage_errors_exit_2(capsys):
    assert cli.run(["greens", "--side", "Q"]) == 2
    capsys.readouterr()
    assert cli.run(["no-such-command"]) == 2
    capsys.readouterr()
    assert cli.run(["classify", "--input", "/nonexistent/file.json"]) == 2
    capsys.readouterr()
