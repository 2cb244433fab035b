import json
from fractions import Fraction

from wthpdk.exact import CRational
from wthpdk.report import REPORT_FIELDS, VerificationReport, jsonable


def test_report_roundtrip():
    r = VerificationReport("x", {"m": Fraction(5, 2)}, "pass", 0.0, None, 1.5)
    d = json.loads(r.to_json())
    assert tuple(d) == REPORT_FIELDS
    assert d["params"]["m"] == "5/2" and r.passed


def test_jsonable_values():
    assert jsonable(CRational(1, -2)) == str(CRational(1, -2))
    assert jsonable(1 + 2j) == [1.0, 2.0]
    assert jsonable((1, (2, Fraction(1, 3)))) == [1, [2, "1/3"]]
