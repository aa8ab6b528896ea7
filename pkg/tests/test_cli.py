import json
from fractions import Fraction

import pytest

from artifact.algebra_core import Polynomial
from artifact.cli import ParseError, main, parse_expression, parse_perm


def run(capsys, *args):
    code = main(list(args))
    return code, capsys.readouterr().out.strip()


@pytest.mark.parametrize(
    "args, expected",
    [
        (("family", "schubert", "1243"), "x1 + x2 + x3"),
        (("family", "key", "2,1,0"), "x1^2*x2"),
        (("family", "reutenauer-q", "2", "--vars", "3"), "-s(1,1)"),
        (("polytope", "ehrhart", "--family", "schubert:1432"), "[1, 5/2, 3/2]"),
        (("schubitope", "kohnert", "--rothe", "2143"), "x1^2 + x1*x2 + x1*x3"),
        (("poset", "upper-bound", "231456", "312456"), "2143 (shift 0)"),
        (("family", "macdonald", "2", "--q", "2", "--t", "3"), "x1^2 + 6/5*x1*x2 + x2^2"),
    ],
)
def test_text_outputs(capsys, args, expected):
    code, out = run(capsys, *args)
    assert code == 0
    assert out == expected


def test_snp_exit_codes(capsys):
    code, out = run(capsys, "polytope", "snp", "--expr", "(x1^2 + x2*x3 + x2*x4 + x3*x4)^2")
    assert code == 1 and "[1, 1, 1, 1]" in out
    code, out = run(capsys, "polytope", "snp", "--family", "schubert:21543")
    assert code == 0


def test_schubitope_minimize(capsys):
    code, out = run(capsys, "schubitope", "minimize", "--rothe", "23154")
    assert code == 0
    assert out.splitlines() == ["a1 + a2 + a3 + a4 = 3", "a1 + a3 + a4 <= 2", "a2 + a3 + a4 <= 2"]


def test_json_output_is_stable(capsys):
    a = run(capsys, "schubitope", "ineqs", "--rothe", "21543", "--format", "json")
    b = run(capsys, "schubitope", "ineqs", "--rothe", "21543", "--format", "json")
    assert a == b
    obj = json.loads(a[1])
    assert obj["eq_sum"] == 4 and len(obj["ineqs"]) == 14


def test_verify_command(capsys):
    code, out = run(capsys, "verify", "main1", "--sn", "4")
    assert code == 0 and out == "main1: 24/24 pass"
    code, out = run(capsys, "verify", "main1", "--sn", "3", "--format", "json")
    assert json.loads(out)["instances"] == 6


@pytest.mark.parametrize(
    "args, code",
    [
        (("family", "llt", "2"), 3),
        (("family", "schubert", "1224"), 2),
        (("verify", "bogus"), 2),
        (("schubitope", "ineqs", "--cells", "[[13,13]]"), 4),
        (("polytope", "snp", "--expr", "x1 +* x2"), 2),
    ],
)
def test_error_exit_codes(capsys, args, code):
    assert main(list(args)) == code


def test_cache_commands(capsys, tmp_path):
    code, out = run(capsys, "cache", "path", "--cache-dir", str(tmp_path))
    assert code == 0 and out == str(tmp_path)
    run(capsys, "family", "schubert", "1432", "--cache-dir", str(tmp_path))
    code, out = run(capsys, "cache", "stats", "--cache-dir", str(tmp_path), "--format", "json")
    assert json.loads(out)["entries"] >= 1


def test_parse_expression():
    f = parse_expression("x1^2*y1 - 1/2*x2 + 3", 2)
    # y variables follow the x block
    assert f.nvars == 3
    assert f.terms == {(2, 0, 1): 1, (0, 1, 0): Fraction(-1, 2), (0, 0, 0): 3}
    assert parse_expression("(x1 + x2)^2", 2) == Polynomial(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert parse_expression("x3").nvars == 3
    with pytest.raises(ParseError):
        parse_expression("x3", 1)
    with pytest.raises(ParseError):
        parse_expression("x1 / x2", 2)
    with pytest.raises(ParseError):
        parse_expression("(x1", 1)


def test_parse_perm():
    assert parse_perm("2143") == (2, 1, 4, 3)
    assert parse_perm("2,1,10,3,4,5,6,7,8,9") [2] == 10
    with pytest.raises(ParseError):
        parse_perm("113")


def test_no_cache_and_unwritable_dir(capsys, tmp_path):
    run(capsys, "family", "schubert", "1432", "--cache-dir", str(tmp_path), "--no-cache")
    assert not list(tmp_path.iterdir())
    blocker = tmp_path / "file"
    blocker.write_text("")
    # a path under a regular file cannot be created, so caching is disabled
    code, out = run(capsys, "family", "schubert", "132", "--cache-dir", str(blocker / "sub"))
    assert code == 0 and out == "x1 + x2"
