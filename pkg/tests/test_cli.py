import io
import json

import pytest

from fockchern.cli import EXIT_OK, EXIT_USAGE, EXIT_WINDOW, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_npoint_json_embeds_known_value():
    code, out, _ = call("npoint", "--lambda", "2", "--mu", "1,1", "--z-order", "8")
    assert code == EXIT_OK
    data = json.loads(out)
    f_terms = {tuple(t["exp"]): t["coef"] for t in data["F"]["terms"]}
    # varsigma(2z) varsigma(z) / 4 = z^2/2 + 5 z^4/48 + ...
    assert f_terms[(2,)] == "1/2" and f_terms[(4,)] == "5/48"
    assert data["table"][0] == {"k": [1], "value": "1/2"}


def test_npoint_csv_and_determinism():
    args = ("npoint", "--lambda", "2,1", "--mu", "2,1", "--points", "2", "--z-order", "3", "--format", "csv")
    code, out, _ = call(*args)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "exponent_vector,value"
    assert all("|" in line.split(",")[0] and "/" in line.split(",")[1] for line in lines[1:])
    assert call(*args)[1] == out


def test_trace_csv_rows():
    code, out, _ = call("trace", "--factors", "chern", "--points", "1", "--q-order", "4", "--format", "csv")
    assert code == EXIT_OK
    rows = dict(line.split(",") for line in out.splitlines()[1:])
    # z^0 coefficient counts boxes: sum of |lam| over partitions of n
    assert [rows.get(f"0|{n}", "0/1") for n in range(5)] == ["0/1", "1/1", "4/1", "9/1", "20/1"]


@pytest.mark.parametrize("factors", ["chern", "epsilon0", "identity"])
def test_trace_report_equal(factors):
    code, out, _ = call("trace", "--factors", factors, "--q-order", "3", "--z-order", "3")
    assert code == EXIT_OK and json.loads(out)["equal"] is True


def test_tau_json():
    code, out, _ = call("tau", "--m", "1", "--K", "2", "--total-degree", "1", "--n-max", "2")
    assert code == EXIT_OK
    data = json.loads(out)
    assert [v["name"] for v in data["vars"]] == ["t1", "t2", "s1", "s2", "x0", "x1", "x2"]


def test_verify_suite():
    code, out, _ = call("verify", "--suite", "arith")
    assert code == EXIT_OK
    assert out.splitlines() and all(line.startswith("PASS") for line in out.splitlines())


def test_usage_errors():
    assert call("npoint", "--lambda", "2", "--mu", "1")[0] == EXIT_USAGE
    assert call("npoint", "--lambda", "x", "--mu", "1")[0] == EXIT_USAGE
    assert call("npoint", "--lambda", "1", "--mu", "1", "--z-pole", "0")[0] == EXIT_USAGE
    assert call("bogus")[0] == EXIT_USAGE
    assert call("trace", "--format", "xml")[0] == EXIT_USAGE


def test_window_error_is_structured():
    code, _, err = call("trace", "--factors", "identity", "--q-order", "5", "--n-max", "2")
    assert code == EXIT_WINDOW
    msg = json.loads(err)
    assert msg["error"] == "WindowError" and "n_max" in msg["message"]


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nlambda = 2\nmu = 1,1\nz-order = 3\n")
    code, out, _ = call("npoint", "--config", str(cfg), "--format", "csv")
    assert code == EXIT_OK and out.splitlines()[1:] == ["1,1/2", "3,1/12"]
    code, out, _ = call("npoint", "--config", str(cfg), "--z-order", "2", "--format", "csv", "--seed", "7")
    assert out.splitlines()[1:] == ["1,1/2"]
    cfg.write_text("colour = red\n")
    assert call("npoint", "--config", str(cfg))[0] == EXIT_USAGE
