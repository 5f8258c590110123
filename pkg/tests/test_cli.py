import json
import random

from tarski import cli
from tarski.finite import random_groupoid


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_json(capsys):
    code, out, _ = run(["analyze", "--in", "I3", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["flags"]["is_fundamental"]["value"] is True
    assert data["flags"]["is_zero_simplifying"]["value"] is True
    assert data["classification"] == {"n": 3}
    assert data["units"]["order"] == 6


def test_witness_f3(capsys):
    code, out, _ = run(["witness", "f3", "--cn", "2", "--e", "[1]"], capsys)
    assert code == 0
    assert "witness {111->12,112->111,12->112,2->2}" in out
    assert "FAIL" not in out


def test_witness_needs_arguments(capsys):
    code, _, err = run(["witness", "f3", "--cn", "2"], capsys)
    assert code == 2 and "--e" in err
    code, _, err = run(["witness", "bogus", "--cn", "2", "--e", "[1]"], capsys)
    assert code == 2


def test_witness_error_exit_code(capsys):
    # conjugating the identity downward is impossible: exit 1, not a crash
    code, _, err = run(["witness", "conjugator", "--cn", "2",
                        "--e", "[e]", "--f", "[1]"], capsys)
    assert code == 1 and "IdentityIdempotent" in err
    code, _, err = run(["witness", "iso", "--in", "cn:3",
                        "--e", "[1]", "--f", "[1,2]"], capsys)
    assert code == 1 and "NoIso" in err


def test_parse_errors_exit_2(capsys):
    code, _, err = run(["cuntz", "--in", "cn:2", "{1->1,1->2}"], capsys)
    assert code == 2
    code, _, err = run(["analyze", "--in", "Q9"], capsys)
    assert code == 2
    code, _, err = run(["test", "nosuch", "--in", "I2"], capsys)
    assert code == 2 and "nosuch" in err
    code, _, err = run(["test", "witnesses", "--in", "I2"], capsys)
    assert code == 2
    code, _, err = run(["test", "duality", "--in", "cn:2"], capsys)
    assert code == 2


def test_element_normalization_via_cli(capsys):
    code, out, _ = run(["cuntz", "--in", "cn:2", "--json",
                        "{1->2,2->1}", "{2->1,1->2}"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["elements"][0]["normal_form"] \
        == data["elements"][1]["normal_form"] == "{1->2,2->1}"


def test_suites_pass(capsys):
    for suite in ("axioms", "order", "support", "duality", "classification"):
        code, out, _ = run(["test", suite, "--in", "I2", "--samples", "30"],
                           capsys)
        assert code == 0, (suite, out)
    for suite in ("axioms", "order", "support", "witnesses",
                  "classification"):
        code, out, _ = run(["test", suite, "--in", "cn:2",
                            "--samples", "15"], capsys)
        assert code == 0, (suite, out)


def test_deterministic_output(capsys):
    argv = ["test", "axioms", "--in", "cn:2", "--samples", "50",
            "--seed", "7", "--json"]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert out1 == out2
    argv = ["analyze", "--in", "cn:2", "--samples", "20", "--seed", "9",
            "--json"]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert out1 == out2


def test_roundtrip_commands(tmp_path, capsys):
    code, out, _ = run(["roundtrip", "--in", "I2", "--json"], capsys)
    assert code == 0
    assert json.loads(out)["certificates"][0]["verified"]
    G = random_groupoid(random.Random(13))
    path = tmp_path / "g.json"
    path.write_text(json.dumps(G.to_json()))
    code, out, _ = run(["roundtrip", "--groupoid", str(path), "--json"],
                       capsys)
    assert code == 0
    certs = json.loads(out)["certificates"]
    assert [c["kind"] for c in certs] \
        == ["monoid_roundtrip", "groupoid_roundtrip"]
    code, out, _ = run(["groupoid", str(path)], capsys)
    assert code == 0 and "valid   yes" in out


def test_finite_command(capsys):
    code, out, _ = run(["finite", "--in", "prod:I2xI2", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["carrier"] == 49 and data["units"] == 4
