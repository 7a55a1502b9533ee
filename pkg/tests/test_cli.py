import json
from fractions import Fraction
import os
import random

import pytest

from isoclass import bernstein_predict, monotone_predict
from isoclass.cli import main
from isoclass.io import load_model


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def plain_csv(tmp_path):
    return write(tmp_path / "plain.csv", "y,x1\n1,0.2\n-1,0.8\n1,0.9\n-1,0.3\n")


def test_fit_monotone_predict_round_trip(tmp_path, plain_csv, capsys):
    model_path = str(tmp_path / "model.json")
    assert main(["fit-monotone", "--in", plain_csv, "--out", model_path]) == 0
    points_path = write(tmp_path / "pts.csv", "x1\n0.2\n0.8\n0.9\n0.3\n")
    preds_path = str(tmp_path / "preds.csv")
    assert main(["predict", "--model", model_path, "--in", points_path, "--out", preds_path]) == 0
    capsys.readouterr()
    rows = open(preds_path).read().strip().splitlines()[1:]
    labels = [int(r.split(",")[1]) for r in rows]
    # predicting at the training points reproduces the fitted in-sample labels
    model = load_model(model_path)
    support_value = dict(zip(model.support, model.values))
    assert labels == [support_value[(Fraction(x),)] for x in ("0.2", "0.8", "0.9", "0.3")]


def test_model_save_load_predict_bit_identical(tmp_path, capsys):
    rng = random.Random(5)
    rows = ["y,x1,x2"]
    for _ in range(40):
        rows.append(f"{rng.choice((-1, 1))},{rng.random():.17g},{rng.random():.17g}")
    data = write(tmp_path / "d.csv", "\n".join(rows) + "\n")
    mono_path, bern_path = str(tmp_path / "m.json"), str(tmp_path / "b.json")
    assert main(["fit-monotone", "--in", data, "--float", "--out", mono_path]) == 0
    assert main(["fit-bernstein", "--in", data, "--float", "--orders", "2,2", "--out", bern_path]) == 0
    capsys.readouterr()
    mono, bern = load_model(mono_path), load_model(bern_path)
    mono2, bern2 = load_model(mono_path), load_model(bern_path)
    for _ in range(1000):
        x = (rng.uniform(-0.2, 1.2), rng.uniform(-0.2, 1.2))
        assert monotone_predict(mono, x) == monotone_predict(mono2, x)
        xc = (min(1.0, max(0.0, x[0])), min(1.0, max(0.0, x[1])))
        assert bernstein_predict(bern, xc) == bernstein_predict(bern2, xc)


def test_fit_bernstein_rejects_zero_order(tmp_path, plain_csv, capsys):
    code = main(["fit-bernstein", "--in", plain_csv, "--orders", "0,3", "--out", str(tmp_path / "b.json")])
    capsys.readouterr()
    assert code == 2


def test_compact_monotone_model_round_trip(tmp_path, plain_csv, capsys):
    full_path, compact_path = str(tmp_path / "f.json"), str(tmp_path / "c.json")
    assert main(["fit-monotone", "--in", plain_csv, "--out", full_path]) == 0
    assert main(["fit-monotone", "--in", plain_csv, "--compact", "--out", compact_path]) == 0
    capsys.readouterr()
    full, compact = load_model(full_path), load_model(compact_path)
    rng = random.Random(3)
    for _ in range(200):
        x = (rng.uniform(-0.5, 1.5),)
        assert monotone_predict(full, x) == monotone_predict(compact, x)


def test_policy_weights_and_fit(tmp_path, capsys):
    trial = write(
        tmp_path / "trial.csv",
        "z,d,x1,e\n2,1,0.3,0.5\n-3,-1,0.8,0.25\n1.5,1,0.6,0.5\n-1,1,0.1,0.5\n",
    )
    weights_path = str(tmp_path / "w.csv")
    assert main(["policy-weights", "--in", trial, "--kappa", "0.05", "--out", weights_path]) == 0
    body = open(weights_path).read().splitlines()
    assert body[0] == "w,y,x1"
    assert len(body) == 5
    policy_path = str(tmp_path / "p.json")
    assert main(["policy-fit", "--in", trial, "--out", policy_path]) == 0
    capsys.readouterr()
    assert load_model(policy_path).values  # fitted something


def test_policy_weights_needs_propensity_when_column_absent(tmp_path, capsys):
    trial = write(tmp_path / "t.csv", "z,d,x1\n2,1,0.3\n")
    out = str(tmp_path / "w.csv")
    assert main(["policy-weights", "--in", trial, "--out", out]) == 2
    assert main(["policy-weights", "--in", trial, "--propensity", "0.5", "--out", out]) == 0
    capsys.readouterr()


def test_reproduce_examples_report_values(tmp_path, capsys):
    report_path = str(tmp_path / "rep.json")
    assert main(["reproduce-examples", "--out", report_path]) == 0
    out = capsys.readouterr().out
    assert "14/30" in out
    assert "8/15" in out
    payload = json.load(open(report_path))
    assert payload["example2"]["linear_risk"] == "8/15"
    over_30 = {row["loss"]: row["classification_risk_over_30"] for row in payload["example1"]}
    assert over_30["hinge:1"] == "14/30"
    assert over_30["exp"] == "16/30"


def test_calibration_table_csv(tmp_path, capsys):
    dist = write(tmp_path / "dist.csv", "mass,eta,x1\n1/3,0.9,0\n1/3,0.3,1\n1/3,0.2,2\n")
    out = str(tmp_path / "cal.csv")
    assert main(["calibration-table", "--dist", dist, "--losses", "zero-one,hinge:1,exp", "--out", out]) == 0
    text = capsys.readouterr().out
    assert "zero-one vs hinge:1: agree" in text
    assert "zero-one vs exp: DISAGREE" in text
    header = open(out).read().splitlines()[0]
    assert header == "set,risk_zero_one,risk_hinge:1,risk_exp"


def test_simulate_regret_csv(tmp_path, capsys):
    out = str(tmp_path / "curve.csv")
    summary = str(tmp_path / "curve.json")
    code = main([
        "simulate-regret", "--dgp", "step", "--ns", "40,80", "--reps", "4",
        "--seed", "3", "--out", out, "--summary", summary,
    ])
    capsys.readouterr()
    assert code == 0
    lines = open(out).read().strip().splitlines()
    assert lines[0] == "n,mean_regret,se,reps"
    assert len(lines) == 3
    assert json.load(open(summary))["reps"] == 4


def test_malformed_csv_reports_line_and_writes_nothing(tmp_path, capsys):
    bad = write(tmp_path / "bad.csv", "y,x1\n1,0.2\n5,0.3\n")
    out = str(tmp_path / "model.json")
    assert main(["fit-monotone", "--in", bad, "--out", out]) == 2
    err = capsys.readouterr().err
    assert "line 3" in err
    assert not os.path.exists(out)


def test_negative_weight_is_rejected_by_row(tmp_path, capsys):
    bad = write(tmp_path / "w.csv", "w,y,x1\n1,1,0.2\n-2,1,0.3\n")
    assert main(["fit-monotone", "--in", bad, "--weighted", "--out", str(tmp_path / "m.json")]) == 2
    assert "line 3" in capsys.readouterr().err


def test_unknown_subcommand_exits_2(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_missing_file_exits_2(tmp_path, capsys):
    assert main(["fit-monotone", "--in", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "m.json")]) == 2
    capsys.readouterr()


def test_bernstein_rescale_handles_out_of_cube_data(tmp_path, capsys):
    data = write(tmp_path / "d.csv", "y,x1\n-1,10\n-1,12\n1,18\n1,20\n")
    out = str(tmp_path / "b.json")
    assert main(["fit-bernstein", "--in", data, "--orders", "2", "--out", out]) == 2  # no rescale
    assert main(["fit-bernstein", "--in", data, "--orders", "2", "--rescale", "--out", out]) == 0
    capsys.readouterr()
    model = load_model(out)
    assert model.scale == ((10.0,), (20.0,))
    assert bernstein_predict(model, (11.0,)) == -1
    assert bernstein_predict(model, (19.0,)) == 1


def test_output_path_in_missing_directory_exits_2(tmp_path, plain_csv, capsys):
    out = str(tmp_path / "no" / "such" / "dir" / "m.json")
    assert main(["fit-monotone", "--in", plain_csv, "--out", out]) == 2
    capsys.readouterr()


def test_load_sample_trial_schema(tmp_path):
    from isoclass.io import load_sample

    trial = write(tmp_path / "t.csv", "z,d,x1,e\n2,1,0.3,0.5\n")
    records = load_sample(trial, schema="trial")
    assert records[0].d == 1 and records[0].e == Fraction("0.5")
