import json
import math

import numpy as np
import pytest

from spdcpol.output import Table, format_cell, from_csv, to_csv, to_json, write_table


def test_float_serialization_round_trips_exactly():
    rng = np.random.default_rng(7)
    values = list(rng.uniform(-1e6, 1e6, 50)) + [1.0 / 3.0, math.pi,
                                                 1e-300, 2.5e17, 0.1]
    for value in values:
        assert float(format_cell(float(value))) == float(value)


def test_csv_round_trip_exact():
    table = Table(name="t", columns=("a", "b", "n"),
                  rows=[(1.0 / 3.0, -2.718281828459045e-5, 3),
                        (math.pi, 0.0, -7)])
    back = from_csv(to_csv(table), name="t")
    assert back.columns == table.columns
    assert back.rows == table.rows
    assert isinstance(back.rows[0][2], int)


def test_json_mirror():
    table = Table(name="t", columns=("x",), rows=[(0.1,)], note="hello")
    payload = json.loads(to_json(table))
    assert payload["columns"] == ["x"]
    assert payload["rows"] == [[0.1]]
    assert payload["note"] == "hello"


def test_row_width_validation():
    with pytest.raises(ValueError):
        Table(name="t", columns=("a", "b"), rows=[(1.0,)])


def test_write_table(tmp_path):
    table = Table(name="demo", columns=("x",), rows=[(1.5,)])
    csv_path = write_table(table, tmp_path, fmt="csv")
    json_path = write_table(table, tmp_path, fmt="json")
    assert csv_path.read_text() == "x\n1.5\n"
    assert json.loads(json_path.read_text())["rows"] == [[1.5]]
    with pytest.raises(ValueError):
        write_table(table, tmp_path, fmt="xml")
