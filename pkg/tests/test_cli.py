import json

import pytest

from heckeforge import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "case", "status", "witness", "ms"],
    "properties": {
        "suite": {"type": "string"},
        "case": {"type": "string"},
        "status": {"enum": ["pass", "fail", "skip"]},
        "ms": {"type": "number"},
    },
}


def test_verify_single_suite(capsys, tmp_path):
    out_path = tmp_path / "report.jsonl"
    code, out, err = run_cli(capsys, "verify", "--suite", "weights",
                             "--seed", "0", "--json-out", str(out_path))
    assert code == 0
    jsonschema = pytest.importorskip("jsonschema")
    lines = out_path.read_text().strip().splitlines()
    assert lines
    seen = set()
    for line in lines:
        rep = json.loads(line)
        jsonschema.validate(rep, REPORT_SCHEMA)
        assert rep["case"] not in seen
        seen.add(rep["case"])
    # unselected suites appear as skip records
    skips = [json.loads(li) for li in lines if json.loads(li)["status"] == "skip"]
    assert {s["suite"] for s in skips} == {
        "matrices", "hecke", "projections", "gauss", "distributions",
        "functional-equation"}


def test_verify_deterministic(capsys, tmp_path):
    p1, p2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run_cli(capsys, "verify", "--suite", "weights", "--seed", "7",
                   "--json-out", str(p1))[0] == 0
    assert run_cli(capsys, "verify", "--suite", "weights", "--seed", "7",
                   "--json-out", str(p2))[0] == 0

    def strip_ms(path):
        return [{k: v for k, v in json.loads(line).items() if k != "ms"}
                for line in path.read_text().splitlines()]

    assert strip_ms(p1) == strip_ms(p2)


def test_corrupted_fixture_config(capsys, tmp_path):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text(
        "# corrupted-distribution fixture demo\n"
        "suites = distributions\n"
        "corrupted_distribution_fixture = true\n")
    out_path = tmp_path / "r.jsonl"
    code, out, err = run_cli(capsys, "verify", "--config", str(cfg),
                             "--seed", "0", "--json-out", str(out_path))
    assert code == 1
    reports = [json.loads(li) for li in out_path.read_text().splitlines()]
    fails = [r for r in reports if r["status"] == "fail"]
    assert len(fails) == 1
    assert fails[0]["case"] == "distributions/zz-corrupted-fixture"
    assert fails[0]["witness"] is not None


def test_usage_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "verify", "--suite", "bogus")
    assert code == 2


def test_config_parameter_ranges(capsys, tmp_path):
    cfg = tmp_path / "ranges.cfg"
    cfg.write_text("suites = hecke\nn = 2\np = 2\nr = 1\n")
    out_path = tmp_path / "ranged.jsonl"
    code, _, _ = run_cli(capsys, "verify", "--config", str(cfg),
                         "--seed", "0", "--json-out", str(out_path))
    assert code == 0
    reports = [json.loads(li) for li in out_path.read_text().splitlines()]
    ran = [r["case"] for r in reports if r["status"] != "skip"]
    assert any("gritsenko-n2-p2" in c for c in ran)
    assert not any("n3" in c or "p3" in c for c in ran)
    skipped = [r["case"] for r in reports if r["status"] == "skip"]
    assert any("gritsenko-n3-p2" in c for c in skipped)


def test_env_seed(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HECKE_FORGE_SEED", "13")
    p1 = tmp_path / "env.jsonl"
    code, _, _ = run_cli(capsys, "verify", "--suite", "weights",
                         "--json-out", str(p1))
    assert code == 0
    p2 = tmp_path / "flag.jsonl"
    run_cli(capsys, "verify", "--suite", "weights", "--seed", "13",
            "--json-out", str(p2))

    def strip_ms(path):
        return [{k: v for k, v in json.loads(line).items() if k != "ms"}
                for line in path.read_text().splitlines()]

    assert strip_ms(p1) == strip_ms(p2)


def test_compute_gauss_sum(capsys):
    code, out, _ = run_cli(capsys, "compute", "gauss-sum", "--p", "5",
                           "--order", "2")
    assert code == 0
    blob = json.loads(out)
    assert blob["square"] == {"m": 1, "coeffs": ["5"]}
    assert blob["abs_square_is_ps"]


def test_compute_hecke_expand(capsys):
    code, out, _ = run_cli(capsys, "compute", "hecke-expand", "--n", "2",
                           "--p", "2", "--op", "V1")
    assert code == 0
    blob = json.loads(out)
    assert blob["count"] == 2
    mats = {tuple(tuple(row) for row in c["matrix"]) for c in blob["cosets"]}
    assert (("2", "0"), ("0", "1")) in mats


def test_compute_satake(capsys):
    code, out, _ = run_cli(capsys, "compute", "satake", "--n", "2", "--nu", "1")
    assert code == 0
    blob = json.loads(out)
    assert len(blob["terms"]) == 2


def test_compute_branch_and_critical(capsys):
    code, out, _ = run_cli(capsys, "compute", "branch", "--mu", "2,0")
    assert code == 0
    assert json.loads(out)["branch"] == [[0], [1], [2]]
    code, out, _ = run_cli(capsys, "compute", "critical", "--mu", "3,1,-1",
                           "--nu", "1,-1")
    assert code == 0
    blob = json.loads(out)
    assert blob["emb"] == [0, 1, 2]
    assert blob["center"] == "3/2"
    assert blob["s_min"] == "1/2" and blob["s_max"] == "5/2"


def test_compute_kappa_hat(capsys):
    code, out, _ = run_cli(capsys, "compute", "kappa-hat", "--n", "3",
                           "--p", "2", "--s", "1", "--nu", "1",
                           "--nu-min", "0", "--kappa", "2")
    assert code == 0
    assert json.loads(out)["value"] == "8"


def test_compute_integrate(capsys):
    code, out, _ = run_cli(capsys, "compute", "integrate", "--p", "3",
                           "--depth", "2", "--conductor", "2")
    assert code == 0
    blob = json.loads(out)
    assert blob["distribution"]["p"] == 3
    assert len(blob["integral"]) == 1


def test_integrate_roundtrip_from_json(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "compute", "integrate", "--p", "5",
                           "--depth", "2", "--conductor", "2", "--seed", "3")
    assert code == 0
    blob = json.loads(out)
    path = tmp_path / "dist.json"
    path.write_text(json.dumps(blob["distribution"]))
    code2, out2, _ = run_cli(capsys, "compute", "integrate",
                             "--from-json", str(path), "--conductor", "2")
    assert code2 == 0
    assert json.loads(out2)["integral"] == blob["integral"]


def test_integrate_rejects_corrupted_json(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "compute", "integrate", "--p", "3",
                           "--depth", "2", "--conductor", "1")
    blob = json.loads(out)["distribution"]
    blob["levels"][1]["cosets"][0]["value"][0] = "999"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(blob))
    code2, _, err = run_cli(capsys, "compute", "integrate",
                            "--from-json", str(path), "--conductor", "1")
    assert code2 == 1
    assert "distribution relation" in err


def test_verify_with_jobs(capsys, tmp_path):
    p1, p2 = tmp_path / "seq.jsonl", tmp_path / "par.jsonl"
    assert run_cli(capsys, "verify", "--suite", "weights", "--seed", "4",
                   "--json-out", str(p1))[0] == 0
    assert run_cli(capsys, "verify", "--suite", "weights", "--seed", "4",
                   "--jobs", "4", "--json-out", str(p2))[0] == 0

    def strip_ms(path):
        return [{k: v for k, v in json.loads(line).items() if k != "ms"}
                for line in path.read_text().splitlines()]

    assert strip_ms(p1) == strip_ms(p2)
