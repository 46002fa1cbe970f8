import math

import numpy as np
import pytest

from herzlab import (
    annulus_index,
    ball_diameter,
    check_quasi_triangle,
    make_dilation,
    parse_matrix,
    rho,
)
from herzlab.dilation import annulus_index_map
from herzlab.errors import BadDim, EmptySamples, NotExpansive, NotSquare, OriginQuery
from herzlab.grid import GridSpec


def test_dyadic_interval_geometry(dyadic):
    assert dyadic.b == 2.0
    assert dyadic.w == 1
    # unit cell is the interval (-1/2, 1/2)
    halfwidth = math.sqrt(dyadic.radius_squared / dyadic.ellipsoid_form[0, 0])
    assert halfwidth == pytest.approx(0.5, abs=1e-12)


def test_isotropic_plane_disk(iso2):
    assert iso2.b == 4.0
    # volume-1 disk: measure B_0 on a fine grid
    spec = GridSpec(radius=1.0, dim=2, resolution=512)
    mask = iso2.ball_contains(spec.points().reshape(-1, 2), 0)
    area = np.count_nonzero(mask) * spec.cell_volume
    assert area == pytest.approx(1.0, abs=5e-3)
    # isotropy: ellipsoid form is a scalar matrix
    m = iso2.ellipsoid_form
    assert abs(m[0, 1]) < 1e-12 and m[0, 0] == pytest.approx(m[1, 1])


def test_not_expansive_rejected():
    with pytest.raises(NotExpansive):
        make_dilation([[1.0]])
    with pytest.raises(NotExpansive):
        make_dilation([[0.5, 0.0], [0.0, 3.0]])


def test_shape_validation():
    with pytest.raises(NotSquare):
        make_dilation(np.ones((2, 3)))
    with pytest.raises(BadDim):
        make_dilation(2.0 * np.eye(3))


def test_expansive_margins(shear):
    assert 1.0 < shear.lambda_minus < 2.0
    assert shear.lambda_plus > 2.0
    assert 1.0 < shear.c_growth < shear.lambda_minus


def test_growth_inequality(dyadic, shear):
    # |Ax|_M >= c |x|_M guarantees the balls nest
    rng = np.random.default_rng(0)
    for d in (dyadic, shear):
        x = rng.uniform(-3, 3, size=(500, d.dim))
        before = np.sqrt(d.m_quadform(x))
        after = np.sqrt(d.m_quadform(x @ d.matrix.T))
        assert np.all(after >= d.c_growth * before * (1 - 1e-12))


def test_annulus_index_examples(dyadic):
    assert annulus_index(dyadic, [0.6]) == 0
    assert annulus_index(dyadic, [0.25]) == -1
    with pytest.raises(OriginQuery):
        annulus_index(dyadic, [0.0])


def test_annulus_shift_under_dilation(dyadic, shear):
    rng = np.random.default_rng(1)
    for d in (dyadic, shear):
        pts = rng.uniform(-2, 2, size=(400, d.dim))
        pts = pts[np.any(np.abs(pts) > 1e-9, axis=1)]
        assert np.array_equal(d.annulus_index(pts @ d.matrix.T),
                              d.annulus_index(pts) + 1)


def test_rho_values(dyadic):
    assert rho(dyadic, [0.0]) == 0.0
    assert rho(dyadic, [0.6]) == 1.0
    assert rho(dyadic, [0.25]) == 0.5


def test_rho_homogeneity_many(dyadic):
    rng = np.random.default_rng(2)
    pts = rng.uniform(-2, 2, size=(1000, 1))
    pts = pts[np.abs(pts[:, 0]) > 1e-12]
    r1 = dyadic.rho(pts)
    r2 = dyadic.rho(pts @ dyadic.matrix.T)
    assert np.allclose(r2, dyadic.b * r1, rtol=0, atol=0)


def test_quasi_triangle_sampled(dyadic):
    rng = np.random.default_rng(3)
    xs = rng.uniform(-4, 4, size=(10_000, 1))
    ys = rng.uniform(-4, 4, size=(10_000, 1))
    rep = check_quasi_triangle(dyadic, xs, ys)
    assert rep["pass"]
    assert rep["bound"] == 2.0


def test_quasi_triangle_degenerate(dyadic):
    rep = check_quasi_triangle(dyadic, [[0.5]], [[-0.5]])
    assert rep["max_ratio"] == 0.0
    with pytest.raises(EmptySamples):
        check_quasi_triangle(dyadic, np.empty((0, 1)), np.empty((0, 1)))


def test_ball_nesting_on_grid(dyadic, iso2):
    for d, res in ((dyadic, 1024), (iso2, 96)):
        spec = GridSpec(radius=2.0, dim=d.dim, resolution=res)
        pts = spec.points().reshape(-1, d.dim)
        for k in range(-3, 3):
            inner = d.ball_contains(pts, k)
            outer = d.ball_contains(pts, k + 1)
            assert not np.any(inner & ~outer)


def test_ball_measure_convergence(dyadic):
    errs = []
    for res in (256, 1024, 4096):
        spec = GridSpec(radius=2.0, dim=1, resolution=res)
        pts = spec.points().reshape(-1, 1)
        worst = 0.0
        for k in (-2, -1, 0, 1):
            meas = np.count_nonzero(dyadic.ball_contains(pts, k)) * spec.cell_volume
            worst = max(worst, abs(meas / dyadic.b**k - 1.0))
        errs.append(worst)
    assert errs[-1] <= 2e-2
    assert errs[-1] <= errs[0] or errs[0] <= 2e-2


def test_index_map_matches_pointwise(dyadic):
    spec = GridSpec(radius=2.0, dim=1, resolution=256)
    idx = annulus_index_map(dyadic, spec)
    pts = spec.points().reshape(-1, 1)
    direct = dyadic.annulus_index(pts)
    assert np.array_equal(idx.reshape(-1), direct)


def test_ball_diameter_doubles(dyadic):
    d0 = ball_diameter(dyadic, 0)
    assert ball_diameter(dyadic, 1) == pytest.approx(2 * d0)
    assert d0 == pytest.approx(1.0, abs=1e-12)


def test_parse_matrix():
    m = parse_matrix("2 1; 0 2")
    assert m.shape == (2, 2) and m[0, 1] == 1.0
    assert parse_matrix("2").shape == (1, 1)
    assert parse_matrix("2, 0\n0, 2")[1, 1] == 2.0


def test_extreme_magnitudes(dyadic):
    assert annulus_index(dyadic, [1e-12]) == -39
    assert annulus_index(dyadic, [1e12]) == 40
    assert rho(dyadic, [1e-12]) == pytest.approx(2.0 ** -39)


from hypothesis import given, settings, strategies as st


@settings(max_examples=25, deadline=None)
@given(d1=st.floats(min_value=1.2, max_value=3.0),
       d2=st.floats(min_value=1.2, max_value=3.0),
       shear_entry=st.floats(min_value=-2.0, max_value=2.0),
       seed=st.integers(min_value=0, max_value=2**31))
def test_quasi_triangle_random_expansive(d1, d2, shear_entry, seed):
    # triangular matrices keep eigenvalues on the diagonal, so every
    # sample here is expansive; the geometric construction must deliver
    # the quasi-triangle bound regardless of the shear strength
    d = make_dilation([[d1, shear_entry], [0.0, d2]])
    rng = np.random.default_rng(seed)
    xs = rng.uniform(-4, 4, size=(500, 2))
    ys = rng.uniform(-4, 4, size=(500, 2))
    rep = check_quasi_triangle(d, xs, ys)
    assert rep["pass"], rep


def test_ellipsoid_volume_identity(dyadic, iso2, shear):
    # omega_n r0^n / sqrt(det M) = 1: the unit cell has unit measure
    for d in (dyadic, iso2, shear):
        omega = 2.0 if d.dim == 1 else math.pi
        det_m = float(np.linalg.det(d.ellipsoid_form))
        vol = omega * d.radius ** d.dim / math.sqrt(det_m)
        assert vol == pytest.approx(1.0, rel=1e-9)
