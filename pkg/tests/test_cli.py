# tests/test_cli.py
"""Línea de comandos: códigos de salida, reportes JSON y determinismo"""
import json

import pytest

from lelong_lab.cli import main, parse_point
from lelong_lab.core.exceptions import ExpressionInputError
from lelong_lab.utils.file_utils import parse_expr_file

FAST = ["--annuli", "10", "--samples", "2048"]


def run(data_dir, *args):
    argv = [str(a) for a in args]
    argv = [str(data_dir / a) if a.endswith(".json") and "/" not in a else a for a in argv]
    return main(argv + FAST)


def test_parse_point():
    assert parse_point("0.5:0.1,0") == [0.5 + 0.1j, 0]
    with pytest.raises(ExpressionInputError):
        parse_point("0.5,,1")


def test_missing_file_is_usage_error(data_dir):
    assert run(data_dir, "lelong", "--expr", "missing.json") == 2


def test_argparse_errors_map_to_usage(data_dir):
    assert main(["lelong"]) == 2
    assert main(["verify", "nope", "--expr", str(data_dir / "radial-nu2.json")]) == 2


def test_verify_thm1_radial(data_dir, tmp_path):
    out = tmp_path / "thm1.json"
    code = run(data_dir, "verify", "thm1", "--expr", "radial-nu2.json", "--k", "1", "--point", "0", "--out", out)
    report = json.loads(out.read_text(encoding="utf-8"))
    assert code == 0
    assert report["summary"] == {"pass": 3, "fail": 0, "inconclusive": 0}
    assert [r["statement"] for r in report["reports"]] == ["thm1-1", "thm1-2", "thm1-3"]


def test_lct_monomial_21(data_dir, tmp_path):
    out, fit_csv = tmp_path / "lct.json", tmp_path / "fit.csv"
    assert run(data_dir, "lct", "--expr", "monomial-21.json", "--out", out, "--csv", fit_csv) == 0
    result = json.loads(out.read_text(encoding="utf-8"))["results"][0]
    assert result["exact"]["value"] == "1/2"
    assert result["exact"]["method"] == "lp"
    lo, hi = result["numeric"]["interval"]
    assert lo - 0.05 <= 0.5 <= hi + 0.05
    assert fit_csv.read_text(encoding="utf-8").startswith("j,radius,I_hat,stderr,used_in_fit")


def test_lelong_prints_to_stdout(data_dir, capsys):
    assert run(data_dir, "lelong", "--expr", "max-21-03.json", "--no-timestamp") == 0
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "lelong"
    assert report["results"][0]["exact"]["value"] == "3/1"
    assert "generated_at" not in report


def test_no_timestamp_is_byte_identical(data_dir, tmp_path):
    outs = [tmp_path / "a.json", tmp_path / "b.json"]
    for out in outs:
        code = run(data_dir, "verify", "restriction", "--expr", "max-coordinates.json",
                   "--slices", "slices-origin.json", "--no-timestamp", "--out", out)
        assert code == 0
    assert outs[0].read_bytes() == outs[1].read_bytes()


def test_degenerate_slices_exit_inconclusive(data_dir, tmp_path):
    code = run(data_dir, "verify", "restriction", "--expr", "monomial-11.json",
               "--slices", "slices-origin.json", "--out", tmp_path / "r.json")
    assert code == 3


def test_construct_writes_phi_k(data_dir, tmp_path):
    out = tmp_path / "phi1.json"
    assert run(data_dir, "construct", "--expr", "log-z-squared.json", "--k", "1", "--out", out) == 0
    phi_1 = parse_expr_file(out)
    assert (phi_1.base_arity, phi_1.block_arity) == (1, 1)
    assert run(data_dir, "construct", "--expr", "log-z-squared.json", "--k", "1") == 2


def test_levelset(data_dir, tmp_path):
    out = tmp_path / "levelset.json"
    assert run(data_dir, "verify", "levelset", "--expr", "poly-z1sq-z2.json", "--c", "2", "--out", out) == 0
    report = json.loads(out.read_text(encoding="utf-8"))["reports"][0]
    assert report["statement"] == "corollary1"
    assert report["measured"]["disagreements"] == 0
    assert run(data_dir, "verify", "levelset", "--expr", "monomial-21.json", "--c", "2") == 2
    assert run(data_dir, "verify", "levelset", "--expr", "poly-z1sq-z2.json") == 2


def test_point_arity_mismatch(data_dir):
    assert run(data_dir, "lelong", "--expr", "monomial-21.json", "--point", "0") == 2
