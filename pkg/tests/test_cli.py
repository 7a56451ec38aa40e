import io
import json

import pytest

from qfusion.cli import UsageError, main, parse_beta, parse_weight


def run(argv):
    buf = io.StringIO()
    code = main(argv, stream=buf)
    return code, buf.getvalue()


def test_parse_beta():
    assert parse_beta("1a", 1) == (1,)
    assert parse_beta("2a1+a2", 2) == (2, 1)
    assert parse_beta("2,1", 2) == (2, 1)
    with pytest.raises(UsageError):
        parse_beta("a3", 2)


def test_parse_weight_exact():
    from fractions import Fraction
    assert parse_weight("0,1/3", 2) == (0, Fraction(1, 3))
    with pytest.raises(UsageError):
        parse_weight("1,2", 1)


def test_gram_text():
    code, out = run(["gram", "--type", "A1", "--weight", "1", "--beta", "1a"])
    assert code == 0
    assert "row: index=0  entries=[1*v^-2]" in out
    assert "det: value=1*v^-2" in out


def test_gram_structured_header():
    code, out = run(["gram", "--type", "A2", "--weight", "1,0", "--beta", "a1+a2", "--format", "structured"])
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    head = recs[0]
    assert head["record"] == "session" and head["version"] == 1
    assert (head["type"], head["D"], head["Dprime"], head["height_bound"]) == ("A2", 3, 1, 4)
    kernel = next(r for r in recs if r["record"] == "kernel")
    assert kernel["dim"] == 1


def test_config_file_overridden_by_flags(tmp_path):
    cfg = tmp_path / "session.conf"
    cfg.write_text("type = A2\nweight = 1,0\nheight = 2\n", encoding="utf-8")
    code, out = run(["kernel", "--config", str(cfg)])
    assert code == 0 and "N=2" in out
    code, out = run(["kernel", "--config", str(cfg), "--height", "3"])
    assert "N=3" in out and "beta=[2, 1]" in out


def test_star_command():
    code, out = run(["star", "--type", "A1", "--weight", "1/2", "--carrier", "2", "--lhs", "0", "--rhs", "unit"])
    assert code == 0 and "star: carrier=L(2)" in out


def test_probe_and_kostant_exit_codes():
    args = ["--type", "A1", "--weight", "1", "--direction", "1", "--carrier", "2"]
    assert run(["probe"] + args)[0] == 0
    assert run(["kostant"] + args)[0] == 0


def test_verify_suite():
    code, out = run(["verify", "--suite", "hopf", "--type", "A2"])
    assert code == 0 and "[PASS] criterion  2" in out


def test_errors_exit_two(capsys):
    assert run(["gram", "--type", "X9", "--weight", "1", "--beta", "1a"])[0] == 2
    assert run(["gram", "--type", "A1", "--weight", "1"])[0] == 2
    assert run(["verify", "--suite", "nope"])[0] == 2
    err = capsys.readouterr().err
    assert err.count("error:") == 3
