import json

import numpy as np
import pytest

from parec.grids import GridFormatError, RealGrid2D, read_grid, write_grid


def test_roundtrip_bit_exact(tmp_path):
    rng = np.random.default_rng(0)
    g = RealGrid2D(0.01, rng.standard_normal((16, 16)), "data")
    path = tmp_path / "g.grid"
    write_grid(path, g)
    back = read_grid(path)
    assert back.step == g.step
    assert back.axis_kind == "data"
    np.testing.assert_array_equal(back.values, g.values)


def test_header_is_json_line(tmp_path):
    g = RealGrid2D(0.5, np.zeros((4, 6)))
    path = tmp_path / "g.grid"
    write_grid(path, g)
    header = json.loads(path.read_bytes().split(b"\n", 1)[0])
    assert header["n_x"] == 4 and header["n_y"] == 6
    assert header["dtype"] == "f64le"


def test_payload_little_endian_row_major(tmp_path):
    vals = np.arange(6.0).reshape(2, 3)
    path = tmp_path / "g.grid"
    write_grid(path, RealGrid2D(1.0, vals))
    payload = path.read_bytes().split(b"\n", 1)[1]
    np.testing.assert_array_equal(np.frombuffer(payload, "<f8"), np.arange(6.0))


@pytest.mark.parametrize(
    "raw",
    [
        b"",  # no header
        b"not json\n" + b"\x00" * 8,
        b'{"n_x": 1, "n_y": 1, "step": 1.0, "axis_kind": "image"}\n' + b"\x00" * 8,  # dtype missing
        b'{"n_x": 2, "n_y": 2, "step": 1.0, "axis_kind": "image", "dtype": "f64le"}\n' + b"\x00" * 8,  # short payload
    ],
)
def test_malformed_files_rejected(tmp_path, raw):
    path = tmp_path / "bad.grid"
    path.write_bytes(raw)
    with pytest.raises(GridFormatError):
        read_grid(path)


def test_grid_validation():
    with pytest.raises(ValueError):
        RealGrid2D(0.0, np.zeros((4, 4)))
    with pytest.raises(ValueError):
        RealGrid2D(1.0, np.zeros(4))
    with pytest.raises(ValueError):
        RealGrid2D(1.0, np.array([[np.nan, 0.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        RealGrid2D(1.0, np.zeros((4, 4)), axis_kind="other")


def test_extent_and_axis():
    g = RealGrid2D(0.25, np.zeros((8, 8)))
    assert g.extent == 2.0
    np.testing.assert_allclose(g.axis(0), 0.25 * np.arange(8))
