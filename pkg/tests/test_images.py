import numpy as np

from parec import images
from parec.grids import RealGrid2D


def test_display_mapping_endpoints():
    mapped = images.to_display_bytes(np.array([-0.4, 1.0, -10.0, 10.0, 0.3]))
    assert mapped[0] == 0
    assert mapped[1] == 255
    assert mapped[2] == 0  # clamped low
    assert mapped[3] == 255  # clamped high
    assert mapped[4] == round((0.3 + 0.4) / 1.4 * 255)


def test_pgm_file(tmp_path):
    vals = np.linspace(-0.4, 1.0, 12).reshape(3, 4)
    path = tmp_path / "out.pgm"
    images.write_pgm(path, RealGrid2D(1.0, vals))
    raw = path.read_bytes()
    assert raw.startswith(b"P5\n4 3\n255\n")
    pixels = np.frombuffer(raw.split(b"255\n", 1)[1], np.uint8)
    assert pixels[0] == 0 and pixels[-1] == 255
    assert pixels.size == 12


def test_png_file(tmp_path):
    vals = np.zeros((4, 4))
    path = tmp_path / "out.png"
    images.write_png(path, RealGrid2D(1.0, vals))
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
