# tests/test_file_utils.py
"""Formato JSON de expresiones: lectura, errores con código y escritura"""
import json
from fractions import Fraction

import pytest

from lelong_lab.core import LogAbsPoly, Max, MonomialLog, Radial, UnitarySup, make_phi_k
from lelong_lab.core.exceptions import ExpressionFormatError, ExpressionInputError
from lelong_lab.utils.file_utils import (
    expr_from_dict,
    expr_to_dict,
    parse_expr_file,
    parse_slices_file,
    write_expr_file,
)

from conftest import monomial


def test_monomial_node():
    expr = expr_from_dict({"tag": "monomial_log", "coeff": "1/1", "exponents": ["2/1", "1/1"]})
    assert expr == MonomialLog(Fraction(1), (Fraction(2), Fraction(1)))


def test_nonpositive_factor():
    with pytest.raises(ExpressionInputError) as info:
        expr_from_dict({"tag": "scale", "factor": "0/1", "child": {"tag": "monomial_log", "exponents": [1]}})
    assert info.value.code == "nonpositive"
    assert info.value.field == "$.factor"


def test_empty_children():
    with pytest.raises(ExpressionInputError) as info:
        expr_from_dict({"tag": "max", "children": []})
    assert info.value.code == "empty"


def test_nested_error_keeps_path():
    data = {"tag": "max", "children": [{"tag": "monomial_log", "exponents": ["-1/2"]}]}
    with pytest.raises(ExpressionInputError) as info:
        expr_from_dict(data)
    assert info.value.field == "$.children[0].exponents"


def test_unknown_tag():
    with pytest.raises(ExpressionFormatError) as info:
        expr_from_dict({"tag": "exp_poly", "children": []})
    assert info.value.code == "unknown-tag"


def test_extra_field_is_schema_error():
    with pytest.raises(ExpressionFormatError) as info:
        expr_from_dict({"tag": "radial", "nvars": 1, "nu_inf": 1, "slope": 2})
    assert info.value.code == "schema"


def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(ExpressionFormatError) as info:
        parse_expr_file(tmp_path / "missing.json")
    assert info.value.code == "missing-file"
    bad = tmp_path / "bad.json"
    bad.write_text('{"tag": "monomial_log",\n "exponents": [1,]}', encoding="utf-8")
    with pytest.raises(ExpressionFormatError) as info:
        parse_expr_file(bad)
    assert info.value.code == "malformed-json"
    assert "línea 2" in str(info.value)


def test_data_examples(data_dir):
    assert isinstance(parse_expr_file(data_dir / "max-coordinates.json"), Max)
    radial = parse_expr_file(data_dir / "radial-kinked.json")
    assert isinstance(radial, Radial) and radial.slopes == (Fraction(3), Fraction(4))
    poly = parse_expr_file(data_dir / "poly-z1sq-z2.json")
    assert isinstance(poly, LogAbsPoly) and poly.poly.exact


def test_float_coefficients_switch_off_exact_mode():
    data = {"tag": "log_abs_poly", "nvars": 1, "terms": [{"exponents": [1], "coeff": [0.5, 0]}]}
    assert not expr_from_dict(data).poly.exact


def test_slices_file(data_dir):
    slices = parse_slices_file(data_dir / "slices-origin.json")
    assert len(slices) == 3
    assert slices[0].directions == ((1 + 0j,), (1 + 0j,))


def test_expr_dict_is_canonical(data_dir):
    raw = json.loads((data_dir / "monomial-21.json").read_text(encoding="utf-8"))
    assert expr_to_dict(expr_from_dict(raw)) == raw


def test_constructed_phi_k_round_trips(tmp_path):
    phi_1 = make_phi_k(monomial(1, coeff=2), 1)
    path = write_expr_file(phi_1, tmp_path / "phi1.json")
    parsed = parse_expr_file(path)
    assert isinstance(parsed, UnitarySup)
    assert parsed == phi_1
