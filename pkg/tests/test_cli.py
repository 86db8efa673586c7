import json
import math
from pathlib import Path

import pytest

from poisson_order_k.cli import main
from poisson_order_k.output import parse

GOLDEN = Path(__file__).with_name("golden")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(capsys, *argv, fmt="csv"):
    code, out, _ = run(capsys, *argv, "--format", fmt)
    assert code == 0
    return parse(out, fmt)


def test_pmf_all_engines(capsys):
    rec = rows(capsys, "pmf", "--k", "2", "--lambda", "1", "--n-max", "6", "--engine", "all")
    assert len(rec.payload) == 7
    assert max(r["max_rel_deviation"] for r in rec.payload) <= 1e-12
    assert rec.provenance["engines"] == ["adelson", "gps", "kp", "km", "oracle"]
    first = list(rec.payload[0])
    assert first[:4] == ["n", "adelson_decimal", "adelson_mantissa", "adelson_exponent"]
    assert first[-1] == "max_rel_deviation"


def test_pmf_all_skips_oracle_outside_budget(capsys):
    rec = rows(capsys, "pmf", "--k", "8", "--lambda", "1", "--n-max", "10", "--engine", "all")
    assert "oracle" not in rec.provenance["engines"] and "oracle_skipped" in rec.provenance


def test_pmf_k15_lambda2_argmax(capsys):
    rec = rows(capsys, "pmf", "--k", "15", "--lambda", "2", "--n-max", "400")
    logs = [math.log(r["p_mantissa"]) + r["p_exponent"] * math.log(2) for r in rec.payload]
    assert logs.index(max(logs)) == 234


def test_pmf_k15_near_double_mode(capsys):
    rec = rows(capsys, "pmf", "--k", "15", "--lambda", "0.25023", "--n-max", "60")
    h = [float(r["h_decimal"]) for r in rec.payload]
    assert h[0] == pytest.approx(1.0)
    assert h[25] == pytest.approx(1.0, abs=1e-4)
    assert h[15] == pytest.approx(0.9945, abs=5e-5)
    assert h[15] > h[14] and h[15] > h[16]  # local maximum


def test_decimal_column_has_17_digits(capsys):
    rec = rows(capsys, "pmf", "--k", "10", "--lambda", "100", "--n-max", "0")
    text = rec.payload[0]["p_decimal"]
    assert text.startswith("5.0759588975494567") and text.endswith("e-435")


def test_stats_examples(capsys):
    r = rows(capsys, "stats", "--k", "2", "--mean", "3").payload[0]
    assert (r["mean"], r["variance"]) == (3.0, 5.0)
    r = rows(capsys, "stats", "--k", "4", "--lambda", "0.05", fmt="json").payload[0]
    assert (r["median"], r["modes"]) == (0, [0])
    r = rows(capsys, "stats", "--k", "3", "--mean", "12").payload[0]
    assert (r["median"], r["modes"], r["multimodal"]) == (12, [11], False)


@pytest.mark.parametrize("extra", [[], ["--lambda", "1", "--mean", "3"]])
def test_stats_needs_exactly_one(capsys, extra):
    code, _, err = run(capsys, "stats", "--k", "2", *extra)
    assert code == 2 and "exactly one" in err


def test_boundaries_k1(capsys):
    rec = rows(capsys, "boundaries", "--kind", "median", "--k", "1", "--n-from", "100", "--n-to", "110")
    assert len(rec.payload) == 11
    assert all(abs(r["deviation"]) <= 1e-6 for r in rec.payload)


def test_boundaries_mode_k10_large_n(capsys):
    rec = rows(capsys, "boundaries", "--kind", "mode", "--k", "10", "--n-from", "11000", "--n-to", "11010")
    assert all(abs(r["deviation"]) < 1e-5 for r in rec.payload)
    assert all(r["modes_at_boundary"] == [r["location"], r["location"] + 1] for r in rec.payload)


def test_boundaries_k3_offsets_in_unit_interval(capsys):
    rec = rows(capsys, "boundaries", "--kind", "median", "--k", "3", "--n-from", "6", "--n-to", "20", "--threads", "2")
    assert [r["n"] for r in rec.payload] == list(range(6, 21))
    assert all(0 < r["offset"] < 1 for r in rec.payload)


def test_boundaries_below_regime_is_usage_error(capsys):
    code, _, err = run(capsys, "boundaries", "--kind", "median", "--k", "3", "--n-from", "2", "--n-to", "3")
    assert code == 2 and "kappa" in err


def test_double_modes(capsys):
    rec = rows(capsys, "double-modes", "--k", "15", "2", "14")
    by_k = {r["k"]: r for r in rec.payload}
    assert [r["k"] for r in rec.payload] == [2, 14, 15]
    assert by_k[2]["lambda"] == pytest.approx(math.sqrt(3) - 1, abs=1e-9) and by_k[2]["modes"] == [0, 2]
    assert by_k[14]["modes"] == [0, 14]
    assert by_k[15]["lambda"] == pytest.approx(0.25023, abs=5e-4) and by_k[15]["modes"] == [0, 25]


def test_verify_list(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and out.split() [0] == "engines" and "power-law" in out.split()


def test_verify_pass_and_report(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _, err = run(capsys, "verify", "--suite", "median-formula", "--format", "json", "--out", str(out))
    assert code == 0 and "PASS  median-formula/median-formula" in err
    rec = parse(out.read_text(), "json")
    assert rec.provenance["all_passed"] is True
    assert rec.payload[0]["counterexamples"] == []


def test_verify_failure_exit_code(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"k_max": 200}))
    # the k = 10 median gate is exceeded at lambda = 100, so this suite fails
    code, _, err = run(capsys, "verify", "--suite", "alpha-expansion", "--config", str(cfg), "--out", str(tmp_path / "r.csv"))
    assert code == 1 and "FAIL" in err


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == 2 and "unknown suite" in err


def test_verify_requires_suite():
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2


def test_oracle_budget_exit_code(capsys):
    code, _, err = run(capsys, "pmf", "--k", "7", "--lambda", "1", "--n-max", "5", "--engine", "oracle")
    assert code == 3 and "budget" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["pmf", "--k", "0", "--lambda", "1", "--n-max", "3"],
        ["pmf", "--k", "2", "--lambda", "1", "--n-max", "3", "--engine", "fast"],
        ["pmf", "--k", "2", "--lambda", "1", "--n-max", "3", "--format", "xml"],
        ["stats", "--k", "2", "--lambda", "x"],
    ],
)
def test_argparse_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_invalid_lambda_is_usage_error(capsys):
    code, _, _ = run(capsys, "pmf", "--k", "2", "--lambda", "-1", "--n-max", "3")
    assert code == 2


def test_output_is_deterministic(capsys):
    argv = ["boundaries", "--kind", "mode", "--k", "4", "--n-from", "20", "--n-to", "24"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--threads", "3")
    assert a == b


def test_stamp_is_opt_in(capsys):
    _, plain, _ = run(capsys, "stats", "--k", "2", "--mean", "3")
    _, stamped, _ = run(capsys, "stats", "--k", "2", "--mean", "3", "--stamp")
    assert "generated_at" not in plain
    assert "generated_at" in parse(stamped).provenance


def test_tol_override_recorded(capsys):
    rec = rows(capsys, "boundaries", "--kind", "median", "--k", "2", "--n-from", "9", "--n-to", "9", "--tol", "1e-10")
    assert rec.provenance["tol"] == 1e-10


def test_claims_command(capsys):
    code, out, _ = run(capsys, "claims")
    assert code == 0 and out.startswith("# Claim index")


def _load_golden_cases():
    import importlib.util

    spec = importlib.util.spec_from_file_location("make_golden", Path(__file__).with_name("make_golden.py"))
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod.CASES


@pytest.mark.parametrize("name,argv", sorted(_load_golden_cases().items()))
def test_golden(capsys, name, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    got, want = parse(out), parse((GOLDEN / name).read_text(encoding="utf-8"))
    assert (got.command, got.params, got.provenance) == (want.command, want.params, want.provenance)
    assert len(got.payload) == len(want.payload)
    for g, w in zip(got.payload, want.payload):
        assert list(g) == list(w)
        for key in w:
            if isinstance(w[key], float):
                assert g[key] == pytest.approx(w[key], rel=1e-13, abs=1e-300), (name, key)
            elif key.endswith("_decimal"):
                assert float(g[key]) == pytest.approx(float(w[key]), rel=1e-13), (name, key)
            else:
                assert g[key] == w[key], (name, key)
