import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from anyonbounds.grid import (
    DensityGrid, GridError, PotentialGrid, is_power_of_two, load_density,
    load_potential, uniform_density,
)


def write(tmp_path, data, name="g.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return p


def test_round_trip(tmp_path):
    p = write(tmp_path, {"x0": 0, "y0": 0, "side": 2.0, "n": 4, "values": [1.5] * 16})
    g = load_density(p)
    assert g.mass == pytest.approx(1.5 * 4.0)
    assert load_density(write(tmp_path, json.loads(g.to_json()), "h.json")).to_json() == g.to_json()


@pytest.mark.parametrize("data,code,msg", [
    ({"x0": 0, "y0": 0, "side": 1, "n": 2, "values": [1, -1, 0, 0]}, "negative", "negative density"),
    ({"x0": 0, "y0": 0, "side": 1, "n": 3, "values": [1] * 9}, "resolution",
     "resolution must be a power of two"),
    ({"x0": 0, "y0": 0, "side": 1, "n": 2, "values": [1] * 3}, "schema", "length"),
    ({"x0": 0, "side": 1, "n": 2, "values": [1] * 4}, "schema", "missing"),
    ([1, 2], "schema", "object"),
])
def test_validation_codes(tmp_path, data, code, msg):
    with pytest.raises(GridError) as info:
        load_density(write(tmp_path, data))
    assert info.value.code == code and msg in str(info.value)


def test_invalid_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{nope")
    with pytest.raises(GridError) as info:
        load_density(p)
    assert info.value.code == "schema"


def test_potential_may_be_negative(tmp_path):
    p = write(tmp_path, {"x0": 0, "y0": 0, "side": 1, "n": 2, "values": [1, -2, 0, -1]})
    v = load_potential(p)
    assert v.negative_part().ravel().tolist() == [0, 2, 0, 1]


def test_values_are_read_only():
    g = uniform_density(2.0, n=4)
    with pytest.raises(ValueError):
        g.values[0, 0] = 1.0


@given(st.integers(0, 2**20))
def test_power_of_two(n):
    assert is_power_of_two(n) == (n > 0 and bin(n).count("1") == 1)


def test_nonfinite_rejected():
    with pytest.raises(GridError):
        DensityGrid(0, 0, 1, np.array([[np.nan]]))
    with pytest.raises(GridError):
        PotentialGrid(0, 0, 0.0, np.zeros((2, 2)))
