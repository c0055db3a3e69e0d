import json
import subprocess

import jsonschema
import pytest
from referencing import Registry, Resource

FIG1_ROWS = [[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 0], [1, 0, 1, 1]]
FIG1_LABELS = [1, 1, 1, 0, 0]


def make_validator(schema_dir, name):
    resources = []
    for path in schema_dir.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resources.append((path.name, Resource.from_contents(schema)))
    registry = Registry().with_resources(resources)
    schema = json.loads((schema_dir / name).read_text())
    return jsonschema.Draft7Validator(schema, registry=registry)


def run_cli(cli, *args, expect=0):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    assert proc.returncode == expect, proc.stderr
    return proc


def test_fig1_solve_matches_known_loss():
    import srl

    ds = srl.BinaryDataset(FIG1_ROWS, FIG1_LABELS, ["x1", "x2", "x3", "x4"])
    result = srl.solve(ds, srl.SearchSpace(k=3, z=2, d=4, alpha=0.01))
    assert result.proven_optimal
    assert result.mistakes == 0
    assert abs(result.loss - 0.03) <= 1e-12
    assert [result.best.predict(r) for r in FIG1_ROWS] == FIG1_LABELS

    oracle = srl.brute_force(ds, srl.SearchSpace(k=3, z=2, d=4, alpha=0.01))
    assert oracle.loss == result.loss
    assert oracle.best == result.best


def test_bound_functions():
    import srl

    assert srl.vc_upper(4, 1, 124) == 33
    assert srl.vc_lower(2, 1, 14) == 6
    assert srl.growth_upper(1, 4) == "10"
    assert srl.sample_size(4, 1, 124, 1.0, 0.05, 0.05) == 5146
    assert srl.check_sample_condition(5146, 4, 1, 124, 1.0, 0.05, 0.05)
    assert not srl.check_sample_condition(5145, 4, 1, 124, 1.0, 0.05, 0.05)
    m = srl.shatter_matrix(3)
    assert m[0] == [1, 0, 0, 1, 1, 0, 1]
    assert srl.verify_shattering(srl.shatter_dataset(2, 2), 2, 1)


def test_train_produces_certificate():
    import srl

    ds = srl.replicate(
        srl.BinaryDataset(FIG1_ROWS, FIG1_LABELS, ["x1", "x2", "x3", "x4"]), 200
    )
    result = srl.run(ds, srl.SearchSpace(k=3, z=2, d=4, alpha=0.0),
                     epsilon=1.0, theta=0.5, delta=0.5, seed=7)
    assert result.certificate is not None
    cert = result.certificate
    assert cert.dataset_loss_upper >= cert.sample_loss
    full_loss, mistakes, deviation = srl.evaluate_full(
        result.model, ds, 0.0, result.sample_loss
    )
    assert full_loss <= cert.dataset_loss_upper + 1e-12
    assert deviation == abs(full_loss - result.sample_loss)


def test_cli_bounds_schema(cli, schema_dir):
    proc = run_cli(cli, "bounds", "-k", "4", "-z", "1", "-d", "124",
                   "--epsilon", "1", "--theta", "0.05", "--delta", "0.05")
    payload = json.loads(proc.stdout)
    make_validator(schema_dir, "bounds.schema.json").validate(payload)
    assert payload["vc_upper"] == 33
    assert payload["m_hat"] == 5146

    proc = run_cli(cli, "bounds", "-k", "2", "-z", "1", "-d", "14")
    assert json.loads(proc.stdout)["vc_lower"] == 6


def test_cli_exact_schema(cli, schema_dir, data_dir, tmp_path):
    out = tmp_path / "exact.json"
    run_cli(cli, "exact", "--dataset", str(data_dir / "fig1.csv"),
            "--label", "label", "-k", "3", "-z", "2", "--alpha", "0.01",
            "--output", str(out))
    payload = json.loads(out.read_text())
    make_validator(schema_dir, "solver_result.schema.json").validate(payload)
    make_validator(schema_dir, "model.schema.json").validate(payload["model"])
    assert payload["mistakes"] == 0


def test_cli_train_schema_and_determinism(cli, schema_dir, data_dir, tmp_path):
    args = [
        "train", "--dataset", str(data_dir / "fig1.csv"), "--label", "label",
        "--replicate", "200", "-k", "3", "-z", "2", "--alpha", "0",
        "--epsilon", "1", "--theta", "0.5", "--delta", "0.5", "--seed", "11",
    ]
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run_cli(cli, *args, "--output", str(a))
    run_cli(cli, *args, "--output", str(b))
    ja = json.loads(a.read_text())
    jb = json.loads(b.read_text())
    make_validator(schema_dir, "train_result.schema.json").validate(ja)
    for j in (ja, jb):
        j["solver"].pop("wall_time_s")
    assert ja == jb
    assert ja["certificate"] is not None


def test_cli_train_budget_exhaustion(cli, data_dir, tmp_path):
    out = tmp_path / "starved.json"
    proc = subprocess.run(
        [cli, "train", "--dataset", str(data_dir / "fig1.csv"),
         "--label", "label", "--replicate", "200", "-k", "3", "-z", "2",
         "--epsilon", "1", "--theta", "0.5", "--delta", "0.5",
         "--node-budget", "2", "--output", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 4
    payload = json.loads(out.read_text())
    assert payload["certificate"] is None
    assert not payload["solver"]["proven_optimal"]


def test_cli_exact_default_only(cli, data_dir):
    proc = run_cli(cli, "exact", "--dataset", str(data_dir / "fig1.csv"),
                   "--label", "label", "-k", "0", "-z", "2", "--alpha", "0")
    payload = json.loads(proc.stdout)
    assert payload["model"]["rules"] == []
    assert payload["model"]["default_prediction"] == 1
    assert payload["mistakes"] == 2
    assert abs(payload["loss"] - 0.4) <= 1e-12


def test_cli_bench_deterministic_columns(cli, data_dir, tmp_path):
    args = [
        "bench", "--dataset", str(data_dir / "fig1.csv"), "--label", "label",
        "--replicate", "200", "-k", "3", "-z", "2", "--alpha", "0",
        "--epsilon", "1", "--theta", "0.5", "--delta", "0.5",
        "--seed", "3", "--seeds", "2", "--with-exact",
    ]
    a = run_cli(cli, *args).stdout.strip().splitlines()
    b = run_cli(cli, *args).stdout.strip().splitlines()
    assert a[0] == b[0]
    timing_cols = {a[0].split(",").index("sample_solve_s"),
                   a[0].split(",").index("full_solve_s")}
    for ra, rb in zip(a[1:], b[1:]):
        ca, cb = ra.split(","), rb.split(",")
        stripped_a = [v for i, v in enumerate(ca) if i not in timing_cols]
        stripped_b = [v for i, v in enumerate(cb) if i not in timing_cols]
        assert stripped_a == stripped_b


def test_cli_evaluate_schema(cli, schema_dir, data_dir, tmp_path):
    exact_out = tmp_path / "exact.json"
    run_cli(cli, "exact", "--dataset", str(data_dir / "fig1.csv"),
            "--label", "label", "-k", "3", "-z", "2", "--alpha", "0.01",
            "--output", str(exact_out))
    model_path = tmp_path / "model.json"
    model_path.write_text(json.dumps(json.loads(exact_out.read_text())["model"]))

    proc = run_cli(cli, "evaluate", "--dataset", str(data_dir / "fig1.csv"),
                   "--label", "label", "--model", str(model_path))
    payload = json.loads(proc.stdout)
    make_validator(schema_dir, "evaluation.schema.json").validate(payload)
    assert abs(payload["loss"] - 0.03) <= 1e-12

    # the alpha override changes only the per-rule penalty term
    proc = run_cli(cli, "evaluate", "--dataset", str(data_dir / "fig1.csv"),
                   "--label", "label", "--model", str(model_path),
                   "--alpha", "0")
    zeroed = json.loads(proc.stdout)
    assert zeroed["mistakes"] == payload["mistakes"]
    assert abs(zeroed["loss"] - (payload["loss"] - 0.01 * payload["rules"])) <= 1e-12

    # unknown feature name is a format error (exit 3)
    broken = json.loads(model_path.read_text())
    broken["rules"][0]["features"][0] = "mystery"
    model_path.write_text(json.dumps(broken))
    run_cli(cli, "evaluate", "--dataset", str(data_dir / "fig1.csv"),
            "--label", "label", "--model", str(model_path), expect=3)


def test_cli_exit_codes(cli, tmp_path):
    run_cli(cli, "exact", "--dataset", "/no/such/file.csv", expect=2)
    run_cli(cli, "bounds", "-k", "1", "-z", "1", "-d", "4", "--theta", "0",
            expect=1)
    run_cli(cli, "bounds", "-k", "1", "-z", "1", expect=1)  # missing -d

    bad = tmp_path / "bad.csv"
    bad.write_text("x1,label\n0,1\n2,0\n")
    proc = run_cli(cli, "exact", "--dataset", str(bad), expect=3)
    assert "line 3" in proc.stderr

    run_cli(cli, "shatter-check", "-a", "2", "-k", "2", expect=0)
    run_cli(cli, "shatter-check", "-a", "9", "-k", "9", expect=5)  # guard


def test_cli_binarize(cli, tmp_path):
    src = tmp_path / "cont.csv"
    lines = ["v,label"] + [f"{i},{i % 2}" for i in range(1, 101)]
    src.write_text("\n".join(lines) + "\n")
    out = tmp_path / "bin.csv"
    run_cli(cli, "binarize", "--dataset", str(src), "--label", "label",
            "--thresholds", "4", "--replicate", "100", "--output", str(out))
    rows = out.read_text().strip().splitlines()
    header = rows[0].split(",")
    assert header[:-1] == ["v>=20", "v<20", "v>=40", "v<40",
                           "v>=60", "v<60", "v>=80", "v<80"]
    assert len(rows) - 1 == 100 * 100


def test_env_var_overrides(cli, data_dir, tmp_path):
    import os

    env = dict(os.environ)
    env["SRL_DATASET"] = str(data_dir / "fig1.csv")
    out = tmp_path / "env.json"
    proc = subprocess.run(
        [cli, "exact", "-k", "3", "-z", "2", "--alpha", "0.01",
         "--output", str(out)],
        capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["mistakes"] == 0
