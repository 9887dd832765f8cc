from __future__ import annotations

import csv
import io
import math

import numpy as np

from momentint.tables import SkippedRow, SweepTable, format_human, format_machine


def _table():
    return SweepTable(("x", "y", "ok", "note"),
                      [(0.1, 1e-300, True, None), (2.0, math.pi, False, "a,b"),
                       (-3.0, math.inf, None, "z")],
                      [SkippedRow(1, 1.5, "outside domain")])


def test_machine_cells():
    assert format_machine(0.1) == "0.10000000000000001"
    assert format_machine(None) == ""
    assert format_machine(True) == "true"
    assert format_machine(math.nan) == "nan"
    assert format_machine(7) == "7"


def test_human_cells():
    assert format_human(math.pi) == "3.14159"
    assert format_human(None) == "-"
    assert format_human(False) == "no"


def test_csv_round_trip_is_exact():
    rng = np.random.default_rng(0)
    values = [float(v) for v in rng.standard_normal(200) * 10.0 ** rng.integers(-300, 300, 200)]
    t = SweepTable(("v",), [(v,) for v in values])
    rows = list(csv.reader(io.StringIO(t.to_csv())))
    assert rows[0] == ["v"]
    assert [float(r[0]) for r in rows[1:]] == values


def test_csv_layout():
    lines = SweepTable(("a", "b"), [(1.0, None)]).to_csv().splitlines()
    assert lines == ["a,b", "1,"]


def test_json_round_trip_is_exact():
    rng = np.random.default_rng(1)
    values = [float(v) for v in rng.standard_normal(200) * 10.0 ** rng.integers(-300, 300, 200)]
    values += [1.0, -0.0, 5e-324, 1.7976931348623157e308]
    t = SweepTable(("v",), [(v,) for v in values])
    back = [d["v"] for d in SweepTable.parse_json(t.to_json())]
    assert back == values
    assert all(isinstance(v, float) for v in back)


def test_json_nulls_and_types():
    back = SweepTable.parse_json(_table().to_json())
    assert back[0] == {"x": 0.1, "y": 1e-300, "ok": True, "note": None}
    assert back[1]["note"] == "a,b" and back[1]["y"] == math.pi
    assert back[2]["y"] is None and back[2]["ok"] is None
    assert SweepTable(("a",)).to_json() == "[]\n"


def test_human_lists_skipped_rows():
    text = _table().to_human()
    assert text.splitlines()[0].split() == ["x", "y", "ok", "note"]
    assert "# skipped 1.5: outside domain" in text
    assert "skipped" not in _table().to_csv() and "skipped" not in _table().to_json()


def test_render_dispatch():
    t = _table()
    assert t.render("csv") == t.to_csv()
    assert t.render("json") == t.to_json()
    assert t.column("x") == [0.1, 2.0, -3.0]
