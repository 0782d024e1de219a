import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from infophys.reporting import apply_units, csv_text, dumps, flatten, format_float


def test_format_float():
    assert format_float(0.0) == "0.0"
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(math.inf) == "inf"
    assert format_float(-math.inf) == "-inf"
    assert format_float(math.nan) == "nan"


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_round_trip(x):
    assert float(format_float(x)) == x


def test_dumps_layout():
    text = dumps({"b": 1, "a": [1.5, 2], "nested": {"x": math.inf}, "ok": True})
    assert text == ('{\n  "b": 1,\n  "a": [1.5, 2],\n  "nested": {\n    "x": "inf"\n  },\n'
                    '  "ok": true\n}\n')


def test_apply_units():
    report = {"d_nats": 1.0, "plain": 2.0, "inner": {"s_nats": [math.log(2), 0.0]}}
    assert apply_units(report, "nats") == {"d": 1.0, "plain": 2.0,
                                           "inner": {"s": [math.log(2), 0.0]}}
    bits = apply_units(report, "bits")
    assert bits["d"] == 1.0 / math.log(2)
    assert bits["plain"] == 2.0
    assert bits["inner"]["s"] == [1.0, 0.0]


def test_flatten_and_csv():
    flat = flatten({"a": {"b": 1.0}, "checks": [{"name": "gap", "value": 0.5}], "v": [1, 2]})
    assert flat == {"a_b": 1.0, "checks_gap_value": 0.5, "v": "1 2"}
    assert csv_text(["x", "y"], [(0.5, True), (None, "s")]) == "x,y\n0.5,true\n,s\n"


def test_integral_floats_stay_floats():
    assert format_float(1.0) == "1.0"
    assert format_float(-3.0) == "-3.0"
    assert format_float(1e20) == "1e+20"


def test_csv_rejects_separators():
    with pytest.raises(ValueError):
        csv_text(["a"], [("x,y",)])
