import json

import pytest

from weyltasep.cli import main
from weyltasep.markov import dist_from_json_obj


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_limdir_closed_text(capsys):
    code, out = run(capsys, "limdir", "--kind", "d", "--n", "4", "--method", "closed")
    assert code == 0
    assert out.strip() == "0, 5/58, 19/116, 1/4"


def test_limdir_lam_json(capsys):
    code, out = run(
        capsys,
        "limdir", "--kind", "b", "--n", "3", "--method", "lam", "--format", "json",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["coefficients"] == ["1/15", "1/5", "1/3"]
    assert obj["version"]
    assert "seed" in obj and "parameters" in obj


def test_partition_value(capsys):
    code, out = run(capsys, "partition", "--model", "b", "--n", "4", "--n0", "1")
    assert code == 0
    assert out.strip() == "56"


def test_partition_decimal(capsys):
    code, out = run(
        capsys,
        "partition", "--model", "semiperm", "--n", "3", "--n0", "1",
        "--alpha", "2/3", "--beta", "3/5", "--decimal", "3",
    )
    assert code == 0
    text = out.strip()
    assert text == "793/36 (22.028)"  # exact value plus decimal companion


def test_stationary_json_roundtrip(capsys):
    code, out = run(
        capsys,
        "stationary", "--model", "dstar", "--n", "3", "--n0", "1",
        "--alpha", "1/2", "--alpha-star", "1/2", "--beta", "1/2",
        "--beta-star", "1/2",
    )
    assert code == 0
    obj = json.loads(out)
    dist = dist_from_json_obj(obj["dist"])
    assert len(dist) == 5
    assert obj["parameters"]["model"] == "dstar"


def test_corr_csv(capsys):
    code, out = run(
        capsys, "corr", "--kind", "b", "--n", "2", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "i,j,p"
    assert len(lines) > 4


def test_verify_suite_exit_codes(capsys):
    code, out = run(capsys, "verify", "--suite", "identities")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert all(c["pass"] for c in report["checks"])


def test_verify_conjecture_flagged(capsys):
    code, out = run(capsys, "verify", "--suite", "conjecture-b")
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "conjecture verification"
    assert all(c.get("conjecture") for c in report["checks"])


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["limdir", "--kind", "q", "--n", "3"])
    assert exc.value.code == 2


def test_walk_json(capsys):
    code, out = run(
        capsys,
        "walk", "--kind", "b", "--n", "2", "--steps", "20000",
        "--trials", "2", "--seed", "4",
    )
    assert code == 0
    obj = json.loads(out)
    assert set(obj) >= {
        "direction_estimate",
        "cosine_vs_closed_form",
        "acceptance_rate",
        "chambers",
    }
    assert obj["cosine_vs_closed_form"] > 0.99


def test_env_var_seed(capsys, monkeypatch):
    monkeypatch.setenv("WEYLTASEP_SEED", "123")
    from weyltasep import cli

    parser = cli.make_parser()
    args = parser.parse_args(["walk", "--kind", "b", "--n", "2"])
    assert args.seed == 123
