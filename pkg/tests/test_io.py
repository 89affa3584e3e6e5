import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rfbvp.errors import ProfileError
from rfbvp.fit import ObservedProfile
from rfbvp.io import (
    RunManifest,
    jsonable,
    read_profile_csv,
    read_solution_csv,
    read_weights_csv,
    solution_csv,
    svg_plot,
    weights_csv,
    write_profile_csv,
    write_solution_csv,
)
from rfbvp.kernel import FractionalParams, build_weight_table

SVG = "{http://www.w3.org/2000/svg}"
finite = st.floats(allow_nan=False, allow_infinity=False)


@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=30))
def test_solution_csv_float_round_trip(rows):
    x, T = zip(*rows)
    text = solution_csv(x, T)
    lines = text.splitlines()[1:]
    back = [tuple(float(c) for c in ln.split(",")) for ln in lines]
    assert back == [(float(a), float(b)) for a, b in rows]


def test_solution_csv_byte_identical_round_trip(tmp_path):
    x = np.linspace(0, 1, 11)
    T = np.sqrt(2) - x / 3
    p = tmp_path / "s.csv"
    write_solution_csv(p, x, T)
    x2, T2 = read_solution_csv(p)
    q = tmp_path / "t.csv"
    write_solution_csv(q, x2, T2)
    assert p.read_bytes() == q.read_bytes()
    assert p.read_text().startswith("x,T\n")


def test_profile_csv_round_trip(tmp_path):
    prof = ObservedProfile([0.0, 0.3, 1.0], [2.0, 1.1, 1.0], 0, 1)
    p = tmp_path / "p.csv"
    write_profile_csv(p, prof)
    back = read_profile_csv(p)
    np.testing.assert_array_equal(back.x, prof.x)
    np.testing.assert_array_equal(back.T_obs, prof.T_obs)


@pytest.mark.parametrize(
    "text",
    ["x,T\n0,1\n0.5,1\n1,2\n", "x,T_obs\n0,1\nabc,2\n1,1\n", "x,T_obs\n0,1\n1,2\n", "x,T_obs\n0,1\n0.7,2\n0.5,2\n"],
)
def test_profile_csv_rejects_malformed(tmp_path, text):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(ProfileError):
        read_profile_csv(p)


def test_weights_csv_sections(tmp_path):
    table = build_weight_table(FractionalParams(0.5, 0.25), kmax=6)
    p = tmp_path / "w.csv"
    p.write_text(weights_csv(table))
    k, w, j, sL, sR = read_weights_csv(p)
    np.testing.assert_array_equal(k, np.arange(-6, 7))
    np.testing.assert_array_equal(w, table.w)
    np.testing.assert_array_equal(j, np.arange(1, 7))
    np.testing.assert_array_equal(sL, table.sL)
    np.testing.assert_array_equal(sR, table.sR)
    assert weights_csv(table) == p.read_text()


def test_svg_is_valid_xml_with_one_polyline_per_series():
    x = np.linspace(0, 1, 5)
    svg = svg_plot([("a<1", x, x), ("b & c", x, 1 - x), ("c", x, x**2)], points=("data", x, x))
    root = ET.fromstring(svg)
    assert len(root.findall(f"{SVG}polyline")) == 3
    assert len(root.findall(f"{SVG}circle")) == 6


def test_manifest_and_jsonable():
    m = RunManifest("solve", alpha=0.5, theta=0.1, N=10, gL=2, gR=1)
    d = m.to_dict()
    for key in ("command", "alpha", "theta", "lambda1", "lambda2", "L", "R", "N", "gL", "gR", "outputs", "version", "timestamp"):
        assert key in d
    assert jsonable({"a": np.arange(3), "b": np.float64(np.inf), "c": np.bool_(True)}) == {
        "a": [0, 1, 2],
        "b": "inf",
        "c": True,
    }
