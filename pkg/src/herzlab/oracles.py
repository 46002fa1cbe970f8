"""Independent reference values for the acceptance checks.

Everything here is deliberately brute force and shares no code with the
norm machinery: closed-form geometric sums, dense one-dimensional grid
maximization, and scalar root solves.  The main paths are checked
*against* these values, never the other way around.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import UnknownTarget

__all__ = [
    "luxemburg_two_piece",
    "grand_seq_dense",
    "constant_herz_reference",
    "delta_sequence_value",
    "oracle_run",
]


def luxemburg_two_piece() -> dict:
    """Norm level for the two-piece modular t + t^2 = 1, t = 1/lam^2.

    Solved twice: scalar bisection on t, and the algebraic root
    t = (sqrt 5 - 1)/2; the returned value is the bisection result with
    the algebraic cross-check recorded.
    """
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid + mid * mid < 1.0:
            lo = mid
        else:
            hi = mid
    t_bisect = 0.5 * (lo + hi)
    t_algebraic = (math.sqrt(5.0) - 1.0) / 2.0
    return {
        "t": t_bisect,
        "t_algebraic": t_algebraic,
        "t_agreement": abs(t_bisect - t_algebraic),
        "norm": t_bisect ** -0.5,
    }


def _dense_log_max(log_fn, lo: float = 1e-8, hi: float = 1e8,
                   points: int = 800_001) -> float:
    """Dense scan of a log-valued function of eps with parabolic polish."""
    s = np.linspace(math.log(lo), math.log(hi), points)
    best_val = -math.inf
    best_s = s[0]
    chunk = 200_000
    for start in range(0, points, chunk):
        seg = s[start:start + chunk]
        v = log_fn(seg)
        i = int(np.argmax(v))
        if v[i] > best_val:
            best_val = float(v[i])
            best_s = float(seg[i])
    # parabolic vertex through the best triple
    h = s[1] - s[0]
    f0 = float(log_fn(np.array([best_s - h]))[0])
    f1 = best_val
    f2 = float(log_fn(np.array([best_s + h]))[0])
    denom = f0 - 2.0 * f1 + f2
    if denom < 0:
        step = 0.5 * h * (f0 - f2) / denom
        cand = best_s + step
        vc = float(log_fn(np.array([cand]))[0])
        if vc > best_val:
            best_val = vc
    return best_val


def grand_seq_dense(entries: np.ndarray, p: float, theta: float) -> float:
    """Brute-force grand sequence norm by dense eps scanning.

    Works in log space; competes with the eps -> infinity limit (the sup
    norm of the entries).
    """
    entries = np.abs(np.asarray(entries, dtype=float))
    entries = entries[entries > 0]
    if entries.size == 0:
        return 0.0
    log_abs = np.log(entries)
    m = float(np.max(log_abs))

    def log_fn(log_eps: np.ndarray) -> np.ndarray:
        eps = np.exp(log_eps)
        big_p = p * (1.0 + eps)
        lse = m + np.log(np.exp(np.multiply.outer(big_p, log_abs - m)).sum(axis=-1)) / big_p
        return (theta / big_p) * log_eps + lse

    best = _dense_log_max(log_fn)
    return max(math.exp(best), float(np.exp(m)))


def delta_sequence_value(p: float = 1.0, theta: float = 1.0) -> float:
    """Grand norm of a unit one-hot sequence: sup eps^{theta/(p(1+eps))}."""
    return grand_seq_dense(np.array([1.0]), p, theta)


def constant_herz_reference(b: float, alpha: float, q: float, p: float,
                            theta: float) -> float:
    """Closed-form grand Herz norm of the unit-ball indicator.

    For constant exponents the scale terms are exactly geometric,
    t_k = (1 - 1/b)^{1/q} b^{k(alpha + 1/q)} for k <= 0, so the inner
    sum collapses to a geometric series and only the eps maximization
    remains; it competes with the eps -> infinity limit t_0.
    """
    c = (1.0 - 1.0 / b) ** (1.0 / q)
    ratio = b ** (alpha + 1.0 / q)
    if ratio <= 1.0:
        raise ValueError("alpha + 1/q must be positive for a finite norm")
    log_c = math.log(c)
    log_r = math.log(ratio)

    def log_fn(log_eps: np.ndarray) -> np.ndarray:
        eps = np.exp(log_eps)
        big_p = p * (1.0 + eps)
        # sum_{k<=0} (c r^k)^P = c^P / (1 - r^{-P})
        log_sum = big_p * log_c - np.log1p(-np.exp(-big_p * log_r))
        return (theta * log_eps + log_sum) / big_p

    best = _dense_log_max(log_fn)
    return max(math.exp(best), c)


def morrey_double_sup_reference(t_by_k: dict[int, float], b: float, p: float,
                                theta: float, lam: float,
                                eps_points: int = 200_001) -> float:
    """Brute-force double supremum over (eps, L) for given scale terms."""
    ks = np.array(sorted(t_by_k), dtype=float)
    t = np.array([t_by_k[int(k)] for k in ks])
    log_t = np.where(t > 0, np.log(np.where(t > 0, t, 1.0)), -np.inf)
    s = np.linspace(math.log(1e-8), math.log(1e8), eps_points)
    best = -math.inf
    chunk = 20_000
    for start in range(0, eps_points, chunk):
        seg = s[start:start + chunk]
        eps = np.exp(seg)
        big_p = p * (1.0 + eps)
        arr = np.multiply.outer(big_p, log_t)
        lse = np.logaddexp.accumulate(arr, axis=-1)
        vals = -lam * ks * math.log(b) + (theta * seg[:, None] + lse) / big_p[:, None]
        best = max(best, float(np.max(vals)))
    limit = float(np.max(np.where(t > 0, b ** (-lam * ks) * t, 0.0)))
    return max(math.exp(best), limit)


def oracle_run(target: str, config: dict | None = None) -> dict:
    """Compute a named oracle's values for file emission."""
    config = config or {}
    if target == "luxemburg_algebraic":
        return {"target": target, **luxemburg_two_piece()}
    if target == "grand_seq_dense":
        p = float(config.get("p", 1.0))
        theta = float(config.get("theta", 1.0))
        entries = np.asarray(config.get("entries", [1.0]), dtype=float)
        return {
            "target": target, "p": p, "theta": theta,
            "entries": list(entries),
            "value": grand_seq_dense(entries, p, theta),
        }
    if target == "constant_herz":
        b = float(config.get("b", 2.0))
        alpha = float(config.get("alpha", 2.0))
        q = float(config.get("q", 2.0))
        p = float(config.get("p", 1.0))
        theta = float(config.get("theta", 1.0))
        return {
            "target": target, "b": b, "alpha": alpha, "q": q, "p": p,
            "theta": theta,
            "value": constant_herz_reference(b, alpha, q, p, theta),
        }
    raise UnknownTarget(f"no oracle named {target!r}")
