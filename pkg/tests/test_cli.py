import json
import subprocess
import sys

import numpy as np
import pytest

from conebessel import cli
from conebessel.jordan import get_algebra


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_bessel_both(capsys):
    code, out, err = run(capsys, "eval", "bessel", "--algebra", "r", "--lambda", "2", "--x", "1",
                         "--method", "both", "--samples", "65536")
    assert code == 0 and err == ""
    res = json.loads(out)
    assert res["schema"] == 1 and res["config"]["schema"] == 1
    assert res["within_3_sigma"]
    assert abs(res["series"]["value"]["re"] - 1.5906368546373291) < 1e-12
    assert res["abs_difference"] <= 3 * res["integral"]["error"] + 1e-12


def test_eval_is_deterministic(capsys):
    args = ("eval", "bessel", "--lambda", "2.5", "--x", "0.8", "--method", "integral",
            "--samples", "32768", "--seed", "7")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    _, c, _ = run(capsys, *args[:-1], "8")
    assert json.loads(c)["value"] != json.loads(a)["value"]


def test_rerun_from_echoed_config(capsys, tmp_path):
    code, out, _ = run(capsys, "eval", "bessel", "--lambda", "3", "--x", "1+1i", "--method", "integral",
                       "--samples", "16384", "--seed", "3")
    path = tmp_path / "run.json"
    path.write_text(out)
    code2, out2, _ = run(capsys, "rerun", str(path))
    assert code == code2 == 0 and out2 == out


def test_domain_error_exit_code(capsys):
    code, out, err = run(capsys, "eval", "bessel", "--lambda", "1", "--k", "0", "--algebra", "symr2")
    assert code == 3 and out == ""
    assert "ParameterOutOfRange" in err


def test_argument_errors(capsys):
    assert run(capsys, "eval", "bessel", "--lambda", "abc")[0] == 2
    assert run(capsys, "eval", "bessel", "--lambda", "1", "--algebra", "quat3")[0] == 2
    assert run(capsys, "eval", "bessel", "--lambda", "2", "--algebra", "symr2", "--x", "1")[0] == 2
    assert run(capsys, "eval", "bessel", "--nope")[0] == 2
    assert run(capsys, "tabulate", "bessel", "--lambda", "1", "--grid", "0:4")[0] == 2


def test_off_variety(capsys):
    code, _, err = run(capsys, "eval", "bessel", "--algebra", "hermc2", "--lambda", "1", "--x", "diag:1,1")
    assert code == 3 and "ArgumentOffVariety" in err


def test_element_formats():
    alg = get_algebra("symr2")
    assert np.allclose(cli.parse_element(alg, "diag:0.8,0.3").coords, alg.diag([0.8, 0.3]).coords)
    assert np.allclose(cli.parse_element(alg, "[1, 0, 2]").coords, [1, 0, 2])
    z = cli.parse_element(alg, '["1+2i", 0, "-i"]')
    assert np.allclose(z.coords, [1 + 2j, 0, -1j])
    el = alg.diag([1.0, 2.0])
    assert np.allclose(cli.parse_element(alg, json.dumps(el.to_json())).coords, el.coords)
    assert cli.parse_complex("i") == 1j and cli.parse_complex("1-0.5i") == 1 - 0.5j
    with pytest.raises(cli.ArgError):
        cli.parse_element(alg, "[1, 2]")


def test_eval_kernel(capsys):
    code, out, _ = run(capsys, "eval", "kernel", "--algebra", "spin3", "--lambda", "3", "--t-re", "0.5",
                       "--t-im", "1", "--x", "unit", "--y", "diag:2,0.5")
    assert code == 0
    res = json.loads(out)
    assert res["meta"]["method"] == "series" and "value" in res


def test_semigroup_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "semigroup", "compose-check", "--lambda", "3", "--t-re", "0.5", "--s-re", "0.5")
    assert code == 0 and json.loads(out)["report"]["discrepancy"] < 1e-10
    csv_path = tmp_path / "k.csv"
    code, out, _ = run(capsys, "semigroup", "bound-check", "--lambda", "2", "--t-re", "0.5",
                       "--samples", "50", "--csv", str(csv_path))
    rep = json.loads(out)["report"]
    assert code == 0 and rep["violations"] == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "tr_x,tr_y,abs_K,bound"
    assert len(lines) == 1 + rep["n_calibration"] + rep["n_validation"]


def test_bessel_check_bound(capsys):
    code, out, _ = run(capsys, "bessel", "check-bound", "--lambda", "3", "--samples", "100")
    assert code == 0 and json.loads(out)["report"]["passed"]


def test_tabulate_bessel_grid(capsys):
    code, out, _ = run(capsys, "tabulate", "bessel", "--lambda", "1,2,3", "--grid", "0:4:41")
    lines = out.strip().split("\n")
    assert code == 0 and len(lines) == 1 + 3 * 41
    assert lines[0] == "lambda_re,lambda_im,x1,re,im,error"


def test_tabulate_kernel_decay_monotone(capsys):
    code, out, _ = run(capsys, "tabulate", "kernel-decay", "--lambda", "2", "--grid", "0:10:21",
                       "--t-re", "0.5")
    rows = [line.split(",") for line in out.strip().split("\n")[1:]]
    absk = np.array([float(r[1]) for r in rows])
    assert code == 0 and np.all(np.diff(absk) < 0)


def test_tabulate_bound_ratio(capsys):
    code, out, _ = run(capsys, "tabulate", "bound-ratio", "--lambda", "3", "--samples", "40")
    rows = [line.split(",") for line in out.strip().split("\n")[1:]]
    ratios = np.array([float(r[4]) for r in rows])
    cstar = float(rows[0][5])
    assert code == 0 and ratios.max() <= cstar * (1 + 1e-9)


def test_tabulate_poch_and_gamma(capsys):
    code, out, _ = run(capsys, "tabulate-poch", "--algebra", "symr2", "--lambda", "2.5", "--max-weight", "2")
    assert code == 0 and "2.5,0.0,1 1,5.0,0.0" in out
    code, out, _ = run(capsys, "tabulate-gamma", "--algebra", "symr2", "--grid", "2:3:2")
    assert code == 0 and out.startswith("s_re,s_im,re,im\n")


def test_sample_domain(capsys, tmp_path):
    path = tmp_path / "pts.csv"
    code, out, _ = run(capsys, "sample-domain", "--sampler", "sobol-box", "--samples", "65536",
                       "--out", str(path), "--max-rows", "100")
    res = json.loads(out)
    assert code == 0
    assert abs(res["acceptance"] - np.pi / 4) <= 3 * res["acceptance_se"] + 1e-3
    assert len(path.read_text().splitlines()) == 101


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "core", "--quick", "--algebra", "r", "--algebra", "symr2")
    res = json.loads(out)
    assert code == 0 and res["passed"] and res["suite"] == "core"
    assert run(capsys, "verify", "core", "--algebra", "quat2")[0] == 2


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("CONE_BESSEL_THREADS", "2")
    args = cli.build_parser().parse_args(["eval", "bessel", "--lambda", "2"])
    assert cli.workers_of(args) == 2
    args = cli.build_parser().parse_args(["--threads", "3", "eval", "bessel", "--lambda", "2"])
    assert cli.workers_of(args) == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "conebessel", "tabulate-gamma", "--grid", "1:2:2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "s_re,s_im,re,im"
    assert proc.stderr == ""
