import json

import numpy as np
import pytest
from hypothesis import given

from conftest import complex_matrices
from opineq.errors import UsageError
from opineq.io import dumps, load_matrix, matrix_from_json, matrix_to_json, save_matrix
from opineq.report import digest, make_report


@given(complex_matrices(max_n=4))
def test_matrix_roundtrip_bitwise(M):
    back = matrix_from_json(json.loads(dumps(matrix_to_json(M))))
    assert np.array_equal(back, M)


def test_save_load(tmp_path):
    M = np.array([[1 + 2j, 0.1], [np.pi, -1e-300]])
    p = tmp_path / "m.json"
    save_matrix(p, M)
    assert np.array_equal(load_matrix(p), M)


@pytest.mark.parametrize("obj", [
    {"n": 2, "data": [[1, 0]] * 3},
    {"n": 0, "data": []},
    {"n": 1, "data": [[1]]},
    {"n": 1, "data": [["a", 0]]},
    {"data": [[1, 0]]},
    {"n": True, "data": [[1, 0]]},
])
def test_matrix_schema_errors(obj):
    with pytest.raises(UsageError):
        matrix_from_json(obj)


def test_nonsquare_and_nonfinite_rejected():
    with pytest.raises(UsageError):
        matrix_to_json(np.ones((2, 3)))
    with pytest.raises(UsageError):
        matrix_to_json(np.array([[np.nan]]))


def test_load_errors(tmp_path):
    with pytest.raises(UsageError):
        load_matrix(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(UsageError):
        load_matrix(bad)


def test_digest_stable_and_sensitive():
    A = np.eye(2)
    assert digest({"T": A}) == digest({"T": A.copy()})
    assert digest({"T": A}) != digest({"T": 2 * A})
    assert digest({"T": A}, seed=1) != digest({"T": A}, seed=2)


def test_report_witness_iff_failed():
    ok = make_report("x", {"T": np.eye(2)}, {"a": 0.5, "b": -1e-12}, 1e-9)
    assert ok.passed and ok.witness is None and ok.margin == -1e-12
    bad = make_report("x", {"T": np.eye(2)}, {"a": 0.5, "b": -1e-3}, 1e-9)
    assert not bad.passed and bad.witness["T"]["n"] == 2
    assert bad.details["margins"] == {"a": 0.5, "b": -1e-3}
    assert json.loads(dumps(bad.to_json()))["passed"] is False
