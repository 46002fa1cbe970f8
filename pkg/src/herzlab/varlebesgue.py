"""Variable-exponent Lebesgue machinery on grid functions.

The modular of ``f`` at level ``lam`` is ``sum (|f(x)|/lam)^{p(x)} dx``;
the Luxemburg norm is the unique ``lam`` with modular 1 (0 for the zero
function).  Exponent functions come in two certified families — constants
and the log-family ``p(x) = p_inf + (p0 - p_inf)/log(e + |x|)`` — plus
derived/custom evaluation rules used by checks and oracles.

Quantitative companions: the generalized Hölder defect with the explicit
constant ``r_p = 1 + 1/p^- - 1/p^+``, the ball norm-product ratio, the
ball-ratio exponent fit (delta_1, delta_2), the reciprocal product-norm
check, and the log-decay verifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dilation import Dilation
from .errors import (
    EmptyBall,
    GridMismatch,
    InsufficientRange,
    NonPositiveLambda,
    NotInClassP,
    ReciprocalMismatch,
)
from .grid import GridFunction, GridSpec, indicator

__all__ = [
    "ExponentFunction",
    "modular",
    "luxemburg_norm",
    "conjugate",
    "holder_defect",
    "ball_norm_product",
    "subset_ratio_fit",
    "product_norm_check",
    "log_holder_check",
]


@dataclass(frozen=True)
class ExponentFunction:
    """Evaluation rule for p(.), q(.) or alpha(.) with stored bounds.

    kind is one of "constant", "log", "conjugate", "custom".  p_minus and
    p_plus are essential bounds over R^n; at_origin/at_infinity are the
    limit values p(0) and p_inf.
    """

    kind: str
    p_minus: float
    p_plus: float
    at_origin: float
    at_infinity: float
    value: Optional[float] = None
    fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    base: Optional["ExponentFunction"] = None
    name: str = ""

    # -- constructors --

    @staticmethod
    def constant(value: float, name: str = "") -> "ExponentFunction":
        value = float(value)
        return ExponentFunction(
            kind="constant", p_minus=value, p_plus=value,
            at_origin=value, at_infinity=value, value=value,
            name=name or f"const:{value:g}",
        )

    @staticmethod
    def log_family(p0: float, p_inf: float, name: str = "") -> "ExponentFunction":
        """p(x) = p_inf + (p0 - p_inf)/log(e + |x|); monotone in |x|."""
        p0, p_inf = float(p0), float(p_inf)
        return ExponentFunction(
            kind="log", p_minus=min(p0, p_inf), p_plus=max(p0, p_inf),
            at_origin=p0, at_infinity=p_inf,
            name=name or f"log:{p0:g},{p_inf:g}",
        )

    @staticmethod
    def custom(fn: Callable[[np.ndarray], np.ndarray], p_minus: float,
               p_plus: float, at_origin: float, at_infinity: float,
               name: str = "custom") -> "ExponentFunction":
        return ExponentFunction(
            kind="custom", p_minus=float(p_minus), p_plus=float(p_plus),
            at_origin=float(at_origin), at_infinity=float(at_infinity),
            fn=fn, name=name,
        )

    # -- evaluation --

    @property
    def is_constant(self) -> bool:
        return self.kind == "constant"

    @property
    def in_class_p(self) -> bool:
        return self.p_minus > 1.0 and math.isfinite(self.p_plus)

    @property
    def log_holder_constant(self) -> Optional[float]:
        """Analytic C for the Def-style log decay bounds (family kinds only)."""
        if self.kind == "constant":
            return 0.0
        if self.kind == "log":
            return abs(self.at_origin - self.at_infinity)
        return None

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        """Evaluate at points of shape (..., n)."""
        pts = np.asarray(pts, dtype=float)
        if self.kind == "constant":
            return np.full(pts.shape[:-1], self.value)
        if self.kind == "log":
            r = np.sqrt(np.sum(pts * pts, axis=-1))
            return self.at_infinity + (self.at_origin - self.at_infinity) / np.log(math.e + r)
        if self.kind == "conjugate":
            p = self.base(pts)
            return p / (p - 1.0)
        return np.asarray(self.fn(pts), dtype=float)

    def on_grid(self, spec: GridSpec) -> np.ndarray:
        return self(spec.points())


def conjugate(p: ExponentFunction) -> ExponentFunction:
    """Pointwise conjugate p' = p/(p-1); requires class P."""
    if not p.in_class_p:
        raise NotInClassP(f"conjugate needs p^- > 1, got p^- = {p.p_minus:g}")
    if p.kind == "conjugate":
        return p.base
    if p.kind == "constant":
        return ExponentFunction.constant(p.value / (p.value - 1.0),
                                         name=f"({p.name})'")
    return ExponentFunction(
        kind="conjugate",
        p_minus=p.p_plus / (p.p_plus - 1.0),
        p_plus=p.p_minus / (p.p_minus - 1.0),
        at_origin=p.at_origin / (p.at_origin - 1.0),
        at_infinity=p.at_infinity / (p.at_infinity - 1.0),
        base=p,
        name=f"({p.name})'",
    )


# --- modular and Luxemburg norm -----------------------------------------

def modular(f: GridFunction, lam: float, p: ExponentFunction,
            region: Optional[np.ndarray] = None) -> float:
    """Quadrature value of sum (|f|/lam)^{p(x)} dx over the region."""
    if not lam > 0:
        raise NonPositiveLambda(f"lam must be positive, got {lam}")
    vals = np.abs(f.values)
    pv = p.on_grid(f.spec)
    if region is not None:
        vals = vals[region]
        pv = pv[region]
    ratio = vals / lam
    with np.errstate(over="ignore"):
        total = np.sum(np.power(ratio, pv, where=ratio > 0, out=np.zeros_like(ratio)))
    return float(total * f.spec.cell_volume)


def _modular_flat(abs_vals: np.ndarray, p_vals: np.ndarray, h: float,
                  lam: float) -> float:
    ratio = abs_vals / lam
    with np.errstate(over="ignore"):
        total = np.sum(np.power(ratio, p_vals, where=ratio > 0,
                                out=np.zeros_like(ratio)))
    return float(total * h)


def lux_core(abs_vals: np.ndarray, p_vals: np.ndarray, h: float, *,
             method: str = "auto", p_min: float | None = None,
             rel_tol: float = 1e-10, max_iter: int = 200) -> float:
    """Luxemburg norm of a flat nonnegative sample vector.

    Shared by the public norm and the per-annulus slice norms.  With
    method="auto" a constant exponent short-circuits to the closed form
    (sum v^p h)^{1/p}; otherwise the modular equation is solved by
    bisection on a bracket grown/shrunk by powers of 2 from the p^-
    heuristic seed (sum v^{p^-} h)^{1/p^-}.
    """
    if abs_vals.size == 0 or not np.any(abs_vals):
        return 0.0
    p_lo = float(np.min(p_vals)) if p_min is None else p_min
    p_hi = float(np.max(p_vals))
    if method == "auto" and p_lo == p_hi:
        return float(np.sum(abs_vals ** p_lo) * h) ** (1.0 / p_lo)

    seed = float(np.sum(abs_vals ** p_lo) * h) ** (1.0 / p_lo)
    if not (seed > 0) or not math.isfinite(seed):
        seed = 1.0

    lo = hi = seed
    for _ in range(4096):
        if _modular_flat(abs_vals, p_vals, h, hi) <= 1.0:
            break
        hi *= 2.0
    for _ in range(4096):
        if _modular_flat(abs_vals, p_vals, h, lo) >= 1.0:
            break
        lo /= 2.0

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if _modular_flat(abs_vals, p_vals, h, mid) > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rel_tol * hi:
            break
    return 0.5 * (lo + hi)


def luxemburg_norm(f: GridFunction, p: ExponentFunction, *,
                   method: str = "auto", rel_tol: float = 1e-10,
                   max_iter: int = 200) -> float:
    """Luxemburg norm: the unique lam > 0 with modular(f, lam, p) = 1.

    Returns 0 for the zero function.  The default route uses the closed
    form (integral |f|^p)^{1/p} when p is constant and bisection
    otherwise; method="bisect" forces bisection to relative tolerance
    ``rel_tol``.
    """
    if f.is_zero():
        return 0.0
    return lux_core(np.abs(f.values).reshape(-1),
                    p.on_grid(f.spec).reshape(-1),
                    f.spec.cell_volume,
                    method="auto" if (method == "auto" and p.is_constant) else "bisect",
                    p_min=p.p_minus, rel_tol=rel_tol, max_iter=max_iter)


# --- quantitative inequality companions ----------------------------------

def holder_defect(f: GridFunction, g: GridFunction, p: ExponentFunction) -> float:
    """r_p * |f|_p * |g|_{p'} - integral |f g|, with r_p = 1 + 1/p^- - 1/p^+.

    Nonnegative up to discretization tolerance by the generalized Hölder
    inequality.
    """
    if f.spec != g.spec:
        raise GridMismatch("holder_defect needs matching grids")
    if not p.in_class_p:
        raise NotInClassP("holder_defect needs p in class P")
    r_p = 1.0 + 1.0 / p.p_minus - 1.0 / p.p_plus
    lhs = float(np.sum(np.abs(f.values * g.values)) * f.spec.cell_volume)
    return r_p * luxemburg_norm(f, p) * luxemburg_norm(g, conjugate(p)) - lhs


def ball_norm_product(d: Dilation, k: int, p: ExponentFunction,
                      spec: GridSpec) -> float:
    """|chi_{B_k}|_p * |chi_{B_k}|_{p'} / |B_k| on the given grid.

    Equals 1 exactly for constant p (up to the grid measure of B_k);
    bounded over k for maximal-operator-admissible exponents.
    """
    mask = d.ball_contains(spec.points(), k)
    if not np.any(mask):
        raise EmptyBall(f"B_{k} contains no cell of the grid")
    chi = indicator(spec, mask)
    return (luxemburg_norm(chi, p) * luxemburg_norm(chi, conjugate(p))
            / d.b ** k)


def subset_ratio_fit(d: Dilation, p: ExponentFunction, krange,
                     spec: GridSpec) -> tuple[float, float]:
    """Fit the ball-ratio exponents (delta_1, delta_2) by log-log regression.

    Regresses log(|chi_{B_j}|_p / |chi_{B_k}|_p) (and the p'-analogue)
    against log of the grid-measured |B_j|/|B_k| over pairs j < k.  For
    constant q the second fit returns 1 - 1/q to machine precision.
    """
    ks = sorted(int(k) for k in krange)
    pairs = [(j, k) for i, j in enumerate(ks) for k in ks[i + 1:]]
    if len(pairs) < 3:
        raise InsufficientRange("need at least 3 index pairs")

    pts = spec.points()
    pc = conjugate(p)
    norms_p, norms_pc, meas = {}, {}, {}
    for k in ks:
        mask = d.ball_contains(pts, k)
        if not np.any(mask):
            raise EmptyBall(f"B_{k} contains no cell of the grid")
        chi = indicator(spec, mask)
        norms_p[k] = luxemburg_norm(chi, p)
        norms_pc[k] = luxemburg_norm(chi, pc)
        meas[k] = float(np.count_nonzero(mask)) * spec.cell_volume

    x = np.array([math.log(meas[j] / meas[k]) for j, k in pairs])
    y1 = np.array([math.log(norms_p[j] / norms_p[k]) for j, k in pairs])
    y2 = np.array([math.log(norms_pc[j] / norms_pc[k]) for j, k in pairs])
    # least squares through the origin (equal sets give ratio 1)
    delta1 = float(x @ y1 / (x @ x))
    delta2 = float(x @ y2 / (x @ x))
    return delta1, delta2


def derived_reciprocal(q: ExponentFunction, r: ExponentFunction) -> ExponentFunction:
    """Exponent p with 1/p = 1/q + 1/r pointwise; must stay in class P."""
    p_minus = 1.0 / (1.0 / q.p_minus + 1.0 / r.p_minus)
    if p_minus <= 1.0:
        raise ReciprocalMismatch(
            f"derived p^- = {p_minus:g} <= 1 leaves class P")
    if q.is_constant and r.is_constant:
        return ExponentFunction.constant(
            1.0 / (1.0 / q.value + 1.0 / r.value),
            name=f"recip({q.name},{r.name})")
    return ExponentFunction.custom(
        fn=lambda pts: 1.0 / (1.0 / q(pts) + 1.0 / r(pts)),
        p_minus=p_minus,
        p_plus=1.0 / (1.0 / q.p_plus + 1.0 / r.p_plus),
        at_origin=1.0 / (1.0 / q.at_origin + 1.0 / r.at_origin),
        at_infinity=1.0 / (1.0 / q.at_infinity + 1.0 / r.at_infinity),
        name=f"recip({q.name},{r.name})",
    )


def product_norm_check(f: GridFunction, g: GridFunction,
                       q: ExponentFunction, r: ExponentFunction) -> dict:
    """Ratio |fg|_p / (|f|_q |g|_r) for 1/p = 1/q + 1/r.

    Constant exponents give the sharp constant 1; variable exponents are
    recorded without a hard bound.
    """
    if f.spec != g.spec:
        raise GridMismatch("product_norm_check needs matching grids")
    p = derived_reciprocal(q, r)
    denom = luxemburg_norm(f, q) * luxemburg_norm(g, r)
    num = luxemburg_norm(f * g, p)
    constant_case = q.is_constant and r.is_constant
    if denom == 0.0:
        return {"check": "product_norm", "ratio": 0.0, "degenerate": True,
                "bound": 1.0 if constant_case else None, "pass": True}
    ratio = num / denom
    bound = 1.0 + 1e-6 if constant_case else None
    return {
        "check": "product_norm",
        "ratio": ratio,
        "degenerate": False,
        "bound": bound,
        "pass": bool(ratio <= bound) if bound is not None else None,
    }


def log_holder_check(g: ExponentFunction, samples: np.ndarray) -> dict:
    """Empirical log-decay constants of g at the origin and at infinity.

    Over the sample points, computes the smallest constants C_org, C_inf
    with |g(x) - g(0)| <= C_org / log(e + 1/|x|) and
    |g(x) - g_inf| <= C_inf / log(e + |x|).  Family kinds are compared
    against their analytic constant; other kinds are screened for
    divergence at small |x| (a jump through the origin makes the
    required constant grow like log(1/|x|)).
    """
    pts = np.atleast_2d(np.asarray(samples, dtype=float))
    r = np.sqrt(np.sum(pts * pts, axis=-1))
    keep = r > 0
    pts, r = pts[keep], r[keep]
    vals = g(pts)

    c_origin_req = np.abs(vals - g.at_origin) * np.log(math.e + 1.0 / r)
    c_inf_req = np.abs(vals - g.at_infinity) * np.log(math.e + r)
    c_origin = float(np.max(c_origin_req, initial=0.0))
    c_inf = float(np.max(c_inf_req, initial=0.0))

    analytic = g.log_holder_constant
    if analytic is not None:
        passed = c_origin <= analytic + 1e-9 and c_inf <= analytic + 1e-9
        status = "ok" if passed else "NotLogHolder"
    else:
        # divergence screen: compare the requirement on the innermost
        # decade of |x| against the overall median
        order = np.argsort(r)
        inner = c_origin_req[order[: max(1, len(r) // 8)]]
        med = float(np.median(c_origin_req))
        diverging = float(np.max(inner, initial=0.0)) > 10.0 * max(med, 1e-12)
        status = "NotLogHolder" if diverging else "ok"
        passed = not diverging
    return {
        "check": "log_holder",
        "c_origin": c_origin,
        "c_infinity": c_inf,
        "analytic_c": analytic,
        "status": status,
        "pass": bool(passed),
    }
