import json
import random
from fractions import Fraction as F

import pytest

import hinv as H
from hinv import serialization as ser
from hinv.oracles import random_h, random_q_profile


def test_rational_formatting():
    assert ser.format_rational(F(3, 4)) == "3/4"
    assert ser.format_rational(F(-6, 8)) == "-3/4"
    assert ser.format_rational(F(5)) == "5"
    assert ser.format_rational(0) == "0"


def test_rational_parsing():
    assert ser.parse_rational("3/4") == F(3, 4)
    assert ser.parse_rational("-7") == F(-7)
    assert ser.parse_rational(12) == F(12)
    for bad in ("0.5", "3/-4", "1/0", "a/b", "", "1.0e3"):
        with pytest.raises(ValueError):
            ser.parse_rational(bad)


def test_hmatrix_document_shape():
    doc = ser.hmatrix_to_dict(H.strange3())
    assert doc == {
        "n": 3,
        "rows": [["3/4"], ["-1/4", "4/7"], ["-1/12", "-1/14", "7/12"]],
    }
    assert ser.hmatrix_from_dict(doc) == H.strange3()


def test_hmatrix_round_trip_random():
    rng = random.Random(3)
    for _ in range(10):
        h = random_h(rng, rng.randint(0, 6))
        doc = json.loads(json.dumps(ser.hmatrix_to_dict(h)))
        assert ser.hmatrix_from_dict(doc) == h


def test_hmatrix_empty_round_trip():
    doc = ser.hmatrix_to_dict(H.HMatrix([]))
    assert doc == {"n": 0, "rows": []}
    assert ser.hmatrix_from_dict(doc) == H.HMatrix([])


def test_hmatrix_document_errors():
    with pytest.raises(ValueError):
        ser.hmatrix_from_dict({"n": 2, "rows": [["1/2"]]})  # declared size mismatch
    with pytest.raises(ValueError):
        ser.hmatrix_from_dict({"rows": [["0.5"]]})  # float string
    with pytest.raises(ValueError):
        ser.hmatrix_from_dict(["not", "an", "object"])


def test_qprofile_round_trip():
    rng = random.Random(5)
    for _ in range(8):
        q = random_q_profile(rng, rng.randint(2, 7))
        doc = json.loads(json.dumps(ser.qprofile_to_dict(q)))
        assert ser.qprofile_from_dict(doc) == q


def test_qprofile_absent_keys_are_zero():
    q = ser.qprofile_from_dict({"n": 3, "q": {"2,1": "1/3"}})
    assert q.value(2, 1) == F(1, 3)
    assert q.value(1, 1) == 0
    assert q.value(1, 2) == 0


def test_verdict_documents():
    doc = ser.verdict_to_dict(H.certify(H.strange3()))
    assert doc["status"] == "optimal"
    assert doc["residuals"] == {"1": "0", "2": "0", "3": "0"}
    assert doc["lambda"]["4,3"] == "7/3"
    assert doc["negative"] == []

    doc = ser.verdict_to_dict(H.certify(H.h_dual(H.strange3())))
    assert doc["status"] == "certificate_violated"
    assert [4, 2] in doc["negative"]
    assert doc["lambda"]["4,2"] == "-3/7"

    doc = ser.verdict_to_dict(H.certify(H.HMatrix([["1/3"]])))
    assert doc["status"] == "invariance_violated"
    assert doc["lambda"] == {}
    assert doc["residuals"]["1"] == "-1/6"


def test_witness_document():
    w = H.suboptimality_witness(H.h_dual(H.strange3()), 4, 2)
    doc = json.loads(json.dumps(ser.witness_to_dict(w)))
    assert doc["n"] == 4
    assert doc["violated_pair"] == [4, 2]
    assert doc["bound_sq"] == "1/4"
    assert ser.parse_rational(doc["residual_sq"]) == w.residual_sq
    gram = [[ser.parse_rational(x) for x in row] for row in doc["gram"]]
    assert gram == w.gram_rows()
