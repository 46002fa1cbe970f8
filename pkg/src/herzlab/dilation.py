"""Anisotropic dilation geometry.

An expansive matrix ``A`` (all eigenvalue magnitudes > 1) generates the
scale family ``B_k = A^k Delta`` where ``Delta`` is a volume-1 ellipsoid
adapted to ``A``.  This module builds the ellipsoid form, exposes
membership queries for balls and annuli, the step quasi-norm ``rho``
(``rho(x) = b^j`` on ``B_{j+1} \\ B_j`` with ``b = |det A|``), and the
doubling constant ``w`` (smallest integer with ``2 B_0 c B_w``).

The ellipsoid form is ``M = sum_k c^{2k} (A^{-k})^T A^{-k}`` with
``c = (1 + lambda_-)/2``, truncated once the term norm drops below 1e-12.
With this choice ``|A x|_M^2 = |x|^2 + c^2 |x|_M^2``, so every dilation
step grows the M-norm by at least the factor ``c`` and the balls nest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadDim, EmptySamples, NotExpansive, NotSquare, OriginQuery
from .grid import GridSpec

_TERM_TOL = 1e-12
_UNIT_BALL_VOLUME = {1: 2.0, 2: math.pi}


@dataclass(frozen=True)
class Dilation:
    """Expansive matrix together with its derived scale geometry."""

    matrix: np.ndarray
    dim: int
    b: float
    lambda_minus: float
    lambda_plus: float
    ellipsoid_form: np.ndarray
    radius: float          # r0 with Delta = {x : x^T M x < r0^2}
    radius_squared: float  # primitive for membership tests
    c_growth: float
    w: int
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    # -- low-level geometry --

    def cache_key(self) -> bytes:
        return self.matrix.tobytes() + bytes([self.dim])

    def inv_power(self, k: int) -> np.ndarray:
        """A^{-k} for any integer k (cached)."""
        mat = self._powers.get(k)
        if mat is None:
            if k >= 0:
                mat = np.linalg.matrix_power(np.linalg.inv(self.matrix), k)
            else:
                mat = np.linalg.matrix_power(self.matrix, -k)
            self._powers[k] = mat
        return mat

    def m_quadform(self, pts: np.ndarray) -> np.ndarray:
        """x^T M x at each point; pts has shape (..., dim)."""
        pts = np.asarray(pts, dtype=float)
        return np.einsum("...i,ij,...j->...", pts, self.ellipsoid_form, pts)

    def ball_contains(self, pts: np.ndarray, k: int) -> np.ndarray:
        """Boolean mask of x in B_k, i.e. |A^{-k} x|_M < r0."""
        pts = np.asarray(pts, dtype=float)
        mapped = pts @ self.inv_power(k).T
        return self.m_quadform(mapped) < self.radius_squared

    # -- annulus index and quasi-norm --

    def annulus_index(self, pts: np.ndarray) -> np.ndarray:
        """The unique j with x in B_{j+1} \\ B_j, vectorized over points.

        Membership in B_k is monotone in k, so j + 1 is the smallest k
        containing x; the scan brackets all points by expanding until
        every point is inside (above) and none is inside (below).
        """
        pts = np.asarray(pts, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        if np.any(~np.any(pts != 0.0, axis=-1)):
            raise OriginQuery("annulus index undefined at x = 0")

        k_hi = 0
        while not np.all(self.ball_contains(pts, k_hi)):
            k_hi += 1
        k_lo = 0
        while np.any(self.ball_contains(pts, k_lo)):
            k_lo -= 1
        # smallest containing k = k_lo + (# non-memberships in the scan)
        outside = np.zeros(pts.shape[0], dtype=int)
        for k in range(k_lo, k_hi + 1):
            outside += ~self.ball_contains(pts, k)
        idx = k_lo + outside - 1
        return int(idx[0]) if single else idx

    def rho(self, pts: np.ndarray) -> np.ndarray:
        """Step quasi-norm: b^{annulus_index(x)} for x != 0, rho(0) = 0."""
        pts = np.asarray(pts, dtype=float)
        single = pts.ndim == 1
        pts = np.atleast_2d(pts)
        nonzero = np.any(pts != 0.0, axis=-1)
        out = np.zeros(pts.shape[0])
        if np.any(nonzero):
            idx = self.annulus_index(pts[nonzero])
            out[nonzero] = np.power(self.b, np.atleast_1d(idx).astype(float))
        return float(out[0]) if single else out


def make_dilation(matrix) -> Dilation:
    """Validate an expansive matrix and construct its scale geometry.

    Raises NotSquare/BadDim for shape problems and NotExpansive when an
    eigenvalue magnitude is <= 1.
    """
    a = np.atleast_2d(np.asarray(matrix, dtype=float))
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"matrix shape {a.shape} is not square")
    n = a.shape[0]
    if n not in (1, 2):
        raise BadDim(f"only dimensions 1 and 2 are supported, got {n}")

    eigmags = np.sort(np.abs(np.linalg.eigvals(a)))
    if eigmags[0] <= 1.0:
        raise NotExpansive(f"eigenvalue magnitude {eigmags[0]:.6g} <= 1")

    lambda_minus = (1.0 + eigmags[0]) / 2.0
    lambda_plus = 2.0 * eigmags[-1]
    c = (1.0 + lambda_minus) / 2.0
    b = abs(float(np.linalg.det(a)))

    a_inv = np.linalg.inv(a)
    m = np.zeros((n, n))
    power = np.eye(n)
    k = 0
    while True:
        term = c ** (2 * k) * power.T @ power
        m += term
        if k > 0 and np.linalg.norm(term, 2) < _TERM_TOL:
            break
        power = power @ a_inv
        k += 1
        if k > 10_000:  # c < lambda_- makes this unreachable
            raise NotExpansive("ellipsoid form failed to converge")

    # volume-1 normalization: vol = omega_n r0^n / sqrt(det M)
    omega = _UNIT_BALL_VOLUME[n]
    det_m = float(np.linalg.det(m))
    r0_squared = det_m ** (1.0 / n) / omega ** (2.0 / n)
    r0 = math.sqrt(r0_squared)

    # smallest w with |2 A^{-w}|_{M->M} <= 1 (operator norm via Cholesky)
    chol = np.linalg.cholesky(m)
    chol_inv_t = np.linalg.inv(chol.T)
    w = 1
    power = a_inv
    while True:
        op = chol.T @ (2.0 * power) @ chol_inv_t
        if np.linalg.norm(op, 2) <= 1.0:
            break
        power = power @ a_inv
        w += 1
        if w > 1_000:
            raise NotExpansive("doubling constant failed to converge")

    return Dilation(
        matrix=np.ascontiguousarray(a),
        dim=n,
        b=b,
        lambda_minus=lambda_minus,
        lambda_plus=lambda_plus,
        ellipsoid_form=m,
        radius=r0,
        radius_squared=r0_squared,
        c_growth=c,
        w=w,
    )


# --- module-level conveniences mirroring the public operation names ---

def annulus_index(d: Dilation, x) -> int:
    return d.annulus_index(np.asarray(x, dtype=float))


def rho(d: Dilation, x) -> float:
    return d.rho(np.asarray(x, dtype=float))


def check_quasi_triangle(d: Dilation, xs, ys) -> dict:
    """Max of rho(x+y)/(rho(x)+rho(y)) over sample pairs vs the bound b^w.

    Pairs with rho(x)+rho(y) = 0 (both points zero) contribute ratio 0.
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    ys = np.atleast_2d(np.asarray(ys, dtype=float))
    if xs.shape[0] == 0 or xs.shape != ys.shape:
        raise EmptySamples("need a nonempty set of point pairs")
    rx, ry, rs = d.rho(xs), d.rho(ys), d.rho(xs + ys)
    denom = rx + ry
    ratios = np.where(denom > 0, rs / np.where(denom > 0, denom, 1.0), 0.0)
    bound = d.b ** d.w
    max_ratio = float(np.max(ratios))
    return {
        "check": "quasi_triangle",
        "max_ratio": max_ratio,
        "bound": bound,
        "pass": bool(max_ratio <= bound * (1 + 1e-12)),
    }


# --- per-grid annulus index maps (cached: every Herz norm needs one) ---

_INDEX_MAP_CACHE: dict = {}


def annulus_index_map(d: Dilation, spec: GridSpec) -> np.ndarray:
    """Annulus index at every cell center of ``spec``.

    Cell centers exactly at the origin (odd resolutions) get the sentinel
    index -2**30; rho there is 0 and every slice excludes them.
    """
    key = (d.cache_key(), spec)
    cached = _INDEX_MAP_CACHE.get(key)
    if cached is not None:
        return cached
    pts = spec.points().reshape(-1, spec.dim)
    nonzero = np.any(pts != 0.0, axis=-1)
    idx = np.full(pts.shape[0], -(2**30), dtype=int)
    if np.any(nonzero):
        idx[nonzero] = d.annulus_index(pts[nonzero])
    idx = idx.reshape(spec.shape)
    idx.setflags(write=False)
    if len(_INDEX_MAP_CACHE) > 64:
        _INDEX_MAP_CACHE.clear()
    _INDEX_MAP_CACHE[key] = idx
    return idx


def ball_diameter(d: Dilation, k: int) -> float:
    """Euclidean diameter of B_k (twice the largest semiaxis)."""
    q = d.inv_power(k).T @ d.ellipsoid_form @ d.inv_power(k)
    smallest = float(np.min(np.linalg.eigvalsh(q)))
    return 2.0 * d.radius / math.sqrt(smallest)


def parse_matrix(text: str) -> np.ndarray:
    """Parse plain-text matrix rows: '2 1; 0 2' or newline-separated rows."""
    rows = [r for r in text.replace(";", "\n").splitlines() if r.strip()]
    data = [[float(tok) for tok in row.replace(",", " ").split()] for row in rows]
    return np.asarray(data, dtype=float)
