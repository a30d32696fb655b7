import json

import numpy as np
import pytest

from kernlr.cli import main


def _read_csv(path):
    lines = path.read_text().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def test_sweep_writes_per_kernel_csvs_and_svg(tmp_path):
    config = {
        "dataset": {"kind": "gaussian", "n": 60, "p": 2},
        "kernels": [{"family": "matern", "nu": 0.5}, {"family": "rbf"}],
        "ranks": [0, 5, 20, 60],
    }
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(config))
    out = tmp_path / "results"
    assert main(["sweep", "--config", str(cfg), "--out", str(out), "--seed", "1"]) == 0
    header, rows = _read_csv(out / "sweep_matern12.csv")
    assert header == ["rank", "max_entry_error", "frobenius_error", "spectral_error",
                      "tail_abs_sum", "sup_norm_tail"]
    assert len(rows) == 4
    assert (out / "sweep_rbf.csv").exists()
    svg = (out / "sweep.svg").read_text()
    assert svg.startswith("<?xml") and "<svg" in svg and "</svg>" in svg


def test_sweep_full_rank_row_is_zero(tmp_path):
    config = {
        "dataset": {"kind": "gaussian", "n": 25, "p": 1},
        "kernels": [{"family": "rbf"}],
        "ranks": [25],
    }
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(config))
    out = tmp_path / "r"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
    _, rows = _read_csv(out / "sweep_rbf.csv")
    assert [float(v) for v in rows[0][1:4]] == [0.0, 0.0, 0.0]


def test_sweep_missing_csv_input_exits_2(tmp_path, capsys):
    config = {"dataset": {"kind": "csv", "path": str(tmp_path / "absent.csv")}}
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(config))
    assert main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 2
    assert "absent.csv" in capsys.readouterr().err


def test_compare_csv_schema_and_rate_column(tmp_path):
    config = {
        "dataset": {"kind": "gaussian", "n": 40, "p": 2},
        "kernels": [{"family": "rbf"}],
        "ranks": [4, 16],
        "jl_trials": 5,
    }
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(config))
    out = tmp_path / "cmp"
    assert main(["compare", "--config", str(cfg), "--out", str(out), "--seed", "3"]) == 0
    header, rows = _read_csv(out / "compare_rbf.csv")
    assert header == ["rank", "spectral_max_error", "jl_median_max_error", "jl_rate_shape"]
    assert len(rows) == 2
    for row in rows:
        d = int(row[0])
        assert float(row[3]) == pytest.approx(np.sqrt(np.log(40.0) / d))


def test_compare_byte_identical_given_seed(tmp_path):
    config = {
        "dataset": {"kind": "gaussian", "n": 30, "p": 2},
        "kernels": [{"family": "rbf"}],
        "ranks": [3, 9],
        "jl_trials": 4,
    }
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(config))
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert main(["compare", "--config", str(cfg), "--out", str(out), "--seed", "9"]) == 0
        outs.append((out / "compare_rbf.csv").read_bytes())
    assert outs[0] == outs[1]


def test_verify_quick_suites_pass(tmp_path, capsys):
    rc = main(["verify", "identity", "--quick", "--out", str(tmp_path), "--seed", "0"])
    assert rc == 0
    assert "PASS identity" in capsys.readouterr().out
    rc = main(["verify", "interlacing", "--quick", "--out", str(tmp_path), "--seed", "0"])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "verify.csv")
    assert header == ["check", "statistic", "threshold", "passed", "seed", "detail"]
    assert rows[0][3] == "1"


def test_verify_subspace_quick(tmp_path):
    assert main(["verify", "subspace", "--quick", "--out", str(tmp_path), "--seed", "2"]) == 0


def test_verify_eigdev_quick(tmp_path):
    assert main(["verify", "eigdev", "--quick", "--out", str(tmp_path), "--seed", "0"]) == 0


def test_verify_failing_check_exits_1_and_names_it(tmp_path, capsys):
    # the delocalisation threshold encodes an asymptotic prediction that does
    # not hold at these sizes; the command must fail loudly, log the re-run
    # seed, and still write the report
    rc = main(["verify", "delocalisation", "--quick", "--out", str(tmp_path), "--seed", "0"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "FAIL delocalisation" in out
    assert "re-running once" in out
    assert (tmp_path / "verify.csv").exists()


def test_verify_unknown_suite_exits_2(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["verify", "nonsense", "--out", str(tmp_path)])
    assert info.value.code == 2


def test_spectrum_values(capsys):
    assert main(["spectrum", "--upsilon", "2", "--count", "3"]) == 0
    out = capsys.readouterr().out
    assert "0.6180340, 0.2360680, 0.0901699" in out
    assert "0.9624237" in out


def test_spectrum_from_sigma_omega(capsys):
    assert main(["spectrum", "--sigma", "1", "--omega", "1", "--count", "1"]) == 0
    assert "upsilon = 2" in capsys.readouterr().out


def test_spectrum_needs_parameters(capsys):
    assert main(["spectrum", "--count", "2"]) == 2


def test_rates_exponential_case(tmp_path, capsys):
    rc = main(["rates", "--hypothesis", "E", "--beta", "0.9624237", "--gamma", "1",
               "--n", "1000", "--out", str(tmp_path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "8" in out and "0.001" in out
    header, rows = _read_csv(tmp_path / "rates.csv")
    assert header == ["n", "required_rank", "rate"]
    assert rows[0][0] == "1000" and rows[0][1] == "8"
    assert float(rows[0][2]) == pytest.approx(0.001)


def test_rates_polynomial_case(capsys):
    assert main(["rates", "--hypothesis", "P", "--alpha", "2", "--n", "100"]) == 0
    out = capsys.readouterr().out
    assert "10" in out


def test_rates_invalid_hypothesis_exits_2(capsys):
    assert main(["rates", "--hypothesis", "P", "--alpha", "0.5"]) == 2
    assert "alpha" in capsys.readouterr().err


def test_env_var_output_dir(tmp_path, monkeypatch, capsys):
    target = tmp_path / "from-env"
    monkeypatch.setenv("KERNLR_OUT", str(target))
    config = {
        "dataset": {"kind": "gaussian", "n": 20, "p": 1},
        "kernels": [{"family": "rbf"}],
        "ranks": [2],
    }
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(config))
    assert main(["sweep", "--config", str(cfg)]) == 0
    assert (target / "sweep_rbf.csv").exists()


def test_ranks_flag_overrides_config(tmp_path):
    config = {
        "dataset": {"kind": "gaussian", "n": 20, "p": 1},
        "kernels": [{"family": "rbf"}],
        "ranks": [2],
    }
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(config))
    out = tmp_path / "o"
    assert main(["sweep", "--config", str(cfg), "--out", str(out), "--ranks", "1,5,9"]) == 0
    _, rows = _read_csv(out / "sweep_rbf.csv")
    assert [int(r[0]) for r in rows] == [1, 5, 9]


def test_auto_rank_grid_includes_endpoints(tmp_path):
    config = {
        "dataset": {"kind": "gmm", "n": 40, "p": 10, "components": 10},
        "kernels": [{"family": "rbf"}],
        "ranks": "auto",
    }
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(config))
    out = tmp_path / "o"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
    _, rows = _read_csv(out / "sweep_rbf.csv")
    ranks = [int(r[0]) for r in rows]
    assert ranks[0] == 0 and ranks[-1] == 40
    assert ranks == sorted(ranks)


def test_default_kernel_grid_yields_four_csvs(tmp_path):
    # with no kernel list the default Matern smoothness grid plus the
    # squared-exponential limit applies: four CSVs and one combined plot
    config = {"dataset": {"kind": "gmm", "n": 30, "p": 10}, "ranks": [0, 5, 30]}
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(config))
    out = tmp_path / "o"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == ["sweep.svg", "sweep_matern12.csv", "sweep_matern32.csv",
                     "sweep_matern52.csv", "sweep_rbf.csv"]
    for name in names[1:]:
        assert len((out / name).read_text().splitlines()) == 4  # header + 3 ranks


def test_bad_config_json_exits_2(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{not json")
    assert main(["sweep", "--config", str(cfg)]) == 2
    assert "JSON" in capsys.readouterr().err
