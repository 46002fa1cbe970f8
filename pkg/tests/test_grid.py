import numpy as np
import pytest

from herzlab.errors import GridMismatch
from herzlab.grid import (
    GridFunction,
    GridSpec,
    from_descriptor,
    indicator,
    load_csv,
    save_csv,
    zeros,
)


def test_cell_geometry(line_spec):
    assert line_spec.cell_width == pytest.approx(4.0 / 512)
    assert line_spec.cell_volume == line_spec.cell_width
    centers = line_spec.axis_centers()
    assert len(centers) == 512
    assert centers[0] == pytest.approx(-2.0 + line_spec.cell_width / 2)


def test_points_shape(plane_spec):
    pts = plane_spec.points()
    assert pts.shape == (64, 64, 2)
    assert np.allclose(pts[:, :, 0], pts[:, :, 0][:, :1])  # x varies on axis 0


def test_immutability(line_spec):
    f = zeros(line_spec)
    with pytest.raises(ValueError):
        f.values[0] = 1.0
    with pytest.raises(AttributeError):
        f.values = np.ones(line_spec.shape)


def test_arithmetic_and_mismatch(line_spec):
    f = GridFunction(line_spec, np.ones(line_spec.shape))
    g = 2.0 * f
    assert (g - f).integral() == pytest.approx(4.0)
    other = GridSpec(radius=2.0, dim=1, resolution=256)
    with pytest.raises(GridMismatch):
        f + GridFunction(other, np.ones(other.shape))


def test_nonfinite_rejected(line_spec):
    vals = np.ones(line_spec.shape)
    vals[3] = np.inf
    with pytest.raises(ValueError):
        GridFunction(line_spec, vals)


def test_csv_roundtrip(tmp_path, line_spec):
    rng = np.random.default_rng(0)
    f = GridFunction(line_spec, rng.uniform(-1, 1, line_spec.shape))
    path = tmp_path / "f.csv"
    save_csv(f, path)
    g = load_csv(path)
    assert g.spec == line_spec
    assert np.array_equal(g.values, f.values)


def test_csv_roundtrip_2d(tmp_path, plane_spec):
    rng = np.random.default_rng(1)
    f = GridFunction(plane_spec, rng.uniform(-1, 1, plane_spec.shape))
    path = tmp_path / "f2.csv"
    save_csv(f, path)
    assert np.array_equal(load_csv(path).values, f.values)


def test_descriptors(line_spec):
    ind = from_descriptor(line_spec, {"family": "indicator", "lo": 0.0, "hi": 1.0})
    assert ind.integral() == pytest.approx(1.0, abs=2 * line_spec.cell_width)
    bump = from_descriptor(line_spec, {"family": "bump", "center": [0.0], "width": 0.5})
    assert bump.sup() > 0 and bump.values[0] == 0.0
    n1 = from_descriptor(line_spec, {"family": "noise", "seed": 9})
    n2 = from_descriptor(line_spec, {"family": "noise", "seed": 9})
    assert np.array_equal(n1.values, n2.values)


def test_indicator_and_restriction(line_spec):
    x = line_spec.points()[..., 0]
    f = indicator(line_spec, x > 0)
    g = f.where(x > 1)
    assert g.integral() == pytest.approx(1.0, abs=2 * line_spec.cell_width)
