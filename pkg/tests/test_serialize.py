import csv
import io
import json
from fractions import Fraction

import jsonschema
import pytest
from hypothesis import given

from tripsep import serialize
from tripsep.errors import DomainError
from tripsep.moments import symmetric_sum
from tripsep.ppt import is_physical, pt_class1_check
from tripsep.states import GaussianPureState, covariance_of, make_ghzw_state, make_proposition_state, make_xi_state
from tripsep.witnesses import classify, t1_from_covariance

from .conftest import spd_states, xi_values


@given(xi_values)
def test_xi_state_round_trip(x):
    s = make_xi_state(float(x))
    back = serialize.state_from_json(serialize.state_to_json(s))
    assert back == s


@given(spd_states())
def test_raw_state_round_trip_is_bit_exact(state):
    text = serialize.state_to_json(state)
    jsonschema.validate(json.loads(text), serialize.load_schema("state"))
    assert serialize.state_from_json(text).A.tobytes() == state.A.tobytes()


def test_ghzw_and_proposition_round_trip():
    g, _ = make_ghzw_state(1.5)
    assert serialize.state_from_json(serialize.state_to_json(g)).A.tobytes() == g.A.tobytes()
    p = make_proposition_state()
    assert serialize.state_from_json(serialize.state_to_json(p)) == p


@pytest.mark.parametrize("text", ["not json", "[1, 2]", '{"kind": "cat"}', '{"kind": "xi", "xi": 2}'])
def test_bad_state_files(text):
    with pytest.raises(DomainError):
        serialize.state_from_json(text)


def test_series_json_exact():
    d = serialize.series_to_dict(symmetric_sum(make_xi_state(Fraction(1, 2)), 3))
    jsonschema.validate(d, serialize.load_schema("series"))
    assert d["value_rational"][0] == "1/1"
    assert [Fraction(v) for v in d["value_rational"]] == list(symmetric_sum(make_xi_state(Fraction(1, 2)), 3).values)


def test_series_json_high_precision_digits():
    s = symmetric_sum(make_ghzw_state(Fraction(3, 2))[0], 2)
    d = serialize.series_to_dict(s, 40)
    jsonschema.validate(d, serialize.load_schema("series"))
    assert "value_rational" not in d
    assert d["value_decimal"][1].startswith("1.32321526080428471095616635090151880614")


def test_series_output_is_byte_stable():
    s = symmetric_sum(make_xi_state(Fraction(1, 4)), 5)
    assert serialize.series_to_json(s) == serialize.series_to_json(s)


def test_series_csv():
    rows = list(csv.reader(io.StringIO(serialize.series_to_csv(symmetric_sum(make_xi_state(0), 3)))))
    assert rows[0] == ["m", "value"]
    assert [r[1] for r in rows[1:]] == ["1.0", "2.0", "4.0", "8.0"]


def test_report_schemas():
    state = make_xi_state(Fraction(1, 2))
    cov = covariance_of(state)
    report = classify(symmetric_sum(state, 4))
    jsonschema.validate(serialize.witness_to_dict(report, t1_from_covariance(cov)), serialize.load_schema("witness"))
    jsonschema.validate(serialize.ppt_to_dict(is_physical(cov), pt_class1_check(cov)), serialize.load_schema("ppt"))


def test_decimal_formats():
    assert serialize.decimal(0.1) == "0.10000000000000001"
    assert serialize.decimal(Fraction(1, 3), 5) == "0.33333"
    with pytest.raises(TypeError):
        serialize.decimal(True)
