import json

import pytest

from toricbott.cli import EXIT_FAIL, EXIT_INFEASIBLE, EXIT_MALFORMED, EXIT_OK, main
from toricbott.fan import fan_from_dict, projective_space


@pytest.fixture
def p2_file(tmp_path):
    path = tmp_path / "p2.json"
    assert main(["fan", "builtin", "--name", "projective_space", "--dim", "2",
                 "-o", str(path)]) == EXIT_OK
    return str(path)


@pytest.fixture
def divisor_file(tmp_path):
    def write(coeffs, name="d.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"coeffs": list(coeffs)}))
        return str(path)

    return write


def test_builtin_writes_p2(p2_file):
    fan = fan_from_dict(json.load(open(p2_file)))
    assert fan == projective_space(2)


def test_validate_ok(p2_file, capsys):
    assert main(["fan", "validate", "--fan", p2_file]) == EXIT_OK
    out = capsys.readouterr().out
    assert "smooth: True" in out


def test_validate_incomplete_fan(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "dim": 2,
        "rays": [[1, 0], [0, 1], [-1, -1]],
        "max_cones": [[0, 1], [1, 2]],
    }))
    assert main(["fan", "validate", "--fan", str(path)]) == EXIT_FAIL


def test_malformed_fan_file(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text(json.dumps({"dim": 2, "rays": [[2, 0]], "max_cones": [[0]]}))
    assert main(["fan", "validate", "--fan", str(path)]) == EXIT_MALFORMED


def test_blowup_adds_ray(p2_file, tmp_path):
    out = tmp_path / "bl.json"
    assert main(["fan", "blowup", "--fan", p2_file, "--cone", "0,1",
                 "-o", str(out)]) == EXIT_OK
    fan = fan_from_dict(json.load(open(out)))
    assert fan.n_rays == 4 and (1, 1) in fan.rays


def test_vanishing_check_pass(p2_file, divisor_file):
    d = divisor_file([2, 0, 0])
    assert main(["vanishing", "check", "--fan", p2_file, "--divisor", d,
                 "--logset", "1"]) == EXIT_OK


def test_vanishing_infeasible_exit_code(p2_file, divisor_file):
    d = divisor_file([0, 0, 0])
    assert main(["vanishing", "check", "--fan", p2_file, "--divisor", d,
                 "--logset", "0"]) == EXIT_INFEASIBLE


def test_vanishing_unchecked_negative_control(p2_file, divisor_file, capsys):
    d = divisor_file([0, 0, 0])
    code = main(["--format", "machine", "vanishing", "check", "--fan", p2_file,
                 "--divisor", d, "--unchecked"])
    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert not data["passed"]
    assert [1, 1, 1] in data["violations"]


def test_vanishing_certify_writes_certificate(p2_file, divisor_file, tmp_path):
    d = divisor_file([1, 0, 0])
    cert_path = tmp_path / "cert.json"
    assert main(["vanishing", "certify", "--fan", p2_file, "--divisor", d,
                 "-o", str(cert_path)]) == EXIT_OK
    data = json.load(open(cert_path))
    assert data["format"] == "toricbott-certificate/1"
    assert len(data["roots"]) == 3


def test_cross_validate_command(p2_file, divisor_file):
    d = divisor_file([2, 1, 0])
    assert main(["vanishing", "cross-validate", "--fan", p2_file,
                 "--divisor", d]) == EXIT_OK


def test_cohomology_command(p2_file, tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"p": 0, "logset": [], "twist": [2, 0, 0]}))
    assert main(["--format", "machine", "cohomology", "--fan", p2_file,
                 "--spec", str(spec)]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["dims"] == [6, 0, 0]


def test_cohomology_box_mode_needs_bound(p2_file, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"p": 0, "logset": [], "twist": [2, 0, 0]}))
    assert main(["cohomology", "--fan", p2_file, "--spec", str(spec),
                 "--mode", "box"]) == EXIT_MALFORMED


def test_cohomology_box_matches_chamber(p2_file, tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"p": 1, "logset": [0], "twist": [0, 0, 1]}))
    main(["--format", "machine", "cohomology", "--fan", p2_file, "--spec", str(spec),
          "--weights"])
    chamber = json.loads(capsys.readouterr().out)
    main(["--format", "machine", "cohomology", "--fan", p2_file, "--spec", str(spec),
          "--mode", "box", "--box-bound", "6", "--weights"])
    box = json.loads(capsys.readouterr().out)
    assert chamber == box


def test_machine_and_table_contain_same_numbers(p2_file, tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"p": 1, "logset": [], "twist": [0, 0, 0]}))
    main(["--format", "machine", "cohomology", "--fan", p2_file, "--spec", str(spec)])
    machine = json.loads(capsys.readouterr().out)
    main(["--format", "table", "cohomology", "--fan", p2_file, "--spec", str(spec)])
    table = capsys.readouterr().out
    dims_line = next(line for line in table.splitlines() if line.startswith("h ="))
    assert json.loads(dims_line.removeprefix("h = ")) == machine["dims"]
    euler_line = next(line for line in table.splitlines() if line.startswith("euler ="))
    assert int(euler_line.split("=")[1]) == machine["euler"]


def test_counterexample_degree(capsys):
    assert main(["--format", "machine", "counterexample", "--degree", "8"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["bott_fails"] and data["genus"] == 21


def test_counterexample_scan(capsys):
    assert main(["--format", "machine", "counterexample", "--scan", "1..10"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["minimal_failing_degree"] == 8


def test_counterexample_scan_table(capsys):
    assert main(["counterexample", "--scan", "6..9"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "<- minimal" in out


def test_counterexample_bad_degree():
    assert main(["counterexample", "--degree", "0"]) == EXIT_MALFORMED


def test_suite_smoke(capsys):
    assert main(["suite", "--select", "thm11", "--fans", "p1"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "ok=True" in out


def test_suite_euler_smoke(capsys):
    assert main(["suite", "--select", "euler", "--fans", "p2", "--sample", "3",
                 "--seed", "7"]) == EXIT_OK


def test_suite_parallel_dispatch(capsys):
    assert main(["suite", "--select", "thm11", "--fans", "p1,p2",
                 "--jobs", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("p1:")
    assert "ok=True" in out


def test_suite_unknown_fan(capsys):
    assert main(["suite", "--select", "thm11", "--fans", "nope"]) == EXIT_MALFORMED
