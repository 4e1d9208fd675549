import json

import pytest

from cychom import cli
from cychom.groups import CoefficientRing, FgAbelianGroup
from cychom.engines import hc_weight_closed


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_output_and_exit_zero(capsys):
    code, out, err = run_cli(
        capsys, "--theory", "hc", "--ring", "z", "--d", "1",
        "--weights", "2..3", "--degrees", "0..4",
    )
    assert code == 0
    assert "theory=hc ring=Z d=1" in out
    assert "Z/2" in out and "Z/3" in out
    assert "stable bands" in out


def test_json_schema_and_round_trip(capsys):
    code, out, err = run_cli(
        capsys, "--theory", "hc", "--ring", "z", "--d", "2",
        "--weights", "0..4", "--degrees", "0..6", "--engine", "both",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert set(payload) == {"theory", "ring", "d", "entries", "bands", "meta"}
    assert payload["theory"] == "hc"
    assert CoefficientRing.from_json_dict(payload["ring"]) == \
        CoefficientRing.integers()
    assert payload["meta"]["engine"] == "both"
    for entry in payload["entries"]:
        res = hc_weight_closed(entry["weight"], 2,
                               degrees=(entry["degree"],))
        expected = res.group_at(entry["degree"])
        assert entry["rank"] == expected.free_rank
        assert tuple(entry["torsion"]) == expected.torsion
    for band in payload["bands"]:
        assert band["parity"] in ("even", "odd")
        assert band["rank"] > 0 or band["torsion"]


def test_byte_identical_repeat_runs(capsys):
    argv = ("--theory", "hp", "--ring", "zmod:4", "--d", "2",
            "--weights", "1..3", "--degrees=-2..2", "--format", "json")
    code1, out1, _ = run_cli(capsys, *argv)
    code2, out2, _ = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_invalid_configurations_exit_one(capsys):
    cases = [
        ("--theory", "hc", "--ring", "z", "--d", "1",
         "--weights", "0..2", "--degrees=-2..2"),       # hc negative degree
        ("--theory", "hh", "--ring", "gf:9", "--d", "1",
         "--weights", "0..2", "--degrees", "0..2"),     # bad ring
        ("--theory", "hh", "--ring", "z", "--d", "0",
         "--weights", "0..2", "--degrees", "0..2"),     # bad d
        ("--theory", "hh", "--ring", "z", "--d", "1",
         "--weights", "3..1", "--degrees", "0..2"),     # empty range
        ("--theory", "bogus", "--ring", "z", "--d", "1",
         "--weights", "0..2", "--degrees", "0..2"),     # unknown theory
        ("--theory", "hh", "--ring", "zmod:1", "--d", "1",
         "--weights", "0..2", "--degrees", "0..2"),     # modulus < 2
    ]
    for argv in cases:
        code, out, err = run_cli(capsys, *argv)
        assert code == 1, argv
        assert "invalid configuration" in err
        assert out == ""


def test_engine_disagreement_exits_two(capsys, monkeypatch):
    real = cli.compute_weight

    class Stub:
        bands = []

        @staticmethod
        def group_at(n):
            return FgAbelianGroup(99, ())

    def fake(theory, w, d, ring, degrees, engine="direct", budget=None):
        if engine == "closed":
            return Stub()
        return real(theory, w, d, ring, degrees, engine=engine,
                    budget=budget)

    monkeypatch.setattr(cli, "compute_weight", fake)
    code, out, err = run_cli(
        capsys, "--theory", "hc", "--ring", "z", "--d", "1",
        "--weights", "2..2", "--degrees", "0..2", "--engine", "both",
    )
    assert code == 2
    assert "disagreement" in err
    assert out == ""


def test_budget_exhaustion_exits_three(capsys):
    code, out, err = run_cli(
        capsys, "--theory", "hh", "--ring", "z", "--d", "2",
        "--weights", "0..30", "--degrees", "0..30", "--budget", "512",
    )
    assert code == 3
    assert "budget" in err
    assert out == ""


def test_budget_env_variable_respected(capsys, monkeypatch):
    monkeypatch.setenv("CYCHOM_BUDGET", "512")
    code, out, err = run_cli(
        capsys, "--theory", "hh", "--ring", "z", "--d", "2",
        "--weights", "0..30", "--degrees", "0..30",
    )
    assert code == 3


def test_prime_modulus_table_has_dimension_column(capsys):
    code, out, _ = run_cli(
        capsys, "--theory", "hc", "--ring", "zmod:3", "--d", "1",
        "--weights", "3..3", "--degrees", "0..4",
    )
    assert code == 0
    assert "dim F_3" in out
    code, out, _ = run_cli(
        capsys, "--theory", "hc", "--ring", "zmod:6", "--d", "1",
        "--weights", "3..3", "--degrees", "0..4",
    )
    assert code == 0
    assert "dim F_" not in out


def test_closed_engine_allows_huge_weights(capsys):
    code, out, _ = run_cli(
        capsys, "--theory", "hc", "--ring", "z", "--d", "2",
        "--weights", "40..40", "--degrees", "39..41",
        "--engine", "closed", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    ranks = {e["degree"]: e["rank"] for e in payload["entries"]}
    assert ranks[39] > 0
