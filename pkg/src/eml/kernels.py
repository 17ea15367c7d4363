"""Numeric hot paths: price-grid revenue search, vectorized buyer choices, and
the two-sample KS statistic.

Every kernel has a pure-numpy implementation; a numba-compiled variant is used
when numba imports cleanly. Set EML_NO_NUMBA=1 to force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

try:
    if os.environ.get("EML_NO_NUMBA", "").lower() in ("1", "true", "yes"):
        raise ImportError("numba disabled via EML_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# choice codes shared with population: 0 no purchase, 1 on-demand, 2 sharing
NONE, ON_DEMAND, SHARING = 0, 1, 2

# region_filter codes for best_revenue_grid: 0 keeps every price pair
ANY_REGION, R1_ONLY, R2_ONLY, R3_ONLY = 0, 1, 2, 3


def buyer_choices_numpy(u, p_o, p_r, q_o, q_s):
    """Best-response codes for an array of buyer types u."""
    pi_o = u * q_o - p_o
    pi_s = u * q_s - p_r
    out = np.where(pi_o >= pi_s, ON_DEMAND, SHARING)
    return np.where(np.maximum(pi_o, pi_s) <= 0.0, NONE, out).astype(np.int8)


def _region_mask(po, pr, q_o, q_s):
    # Prop.-2 style boundary lines; caller guarantees q_s != q_o.
    lo = np.maximum(q_s / q_o, 1.0) * po - max(q_o - q_s, 0.0)
    hi = np.minimum(q_s / q_o, 1.0) * po + max(q_s - q_o, 0.0)
    r1 = (pr < hi) & (pr > lo)
    r2 = (po < q_o) & (pr >= hi)
    r3 = (pr < q_s) & (pr <= lo)
    return r1, r2, r3


def best_revenue_grid_numpy(q_o, q_s, delta, n, step=1e-3, hi=1.0,
                            region_filter=ANY_REGION):
    """Brute-force argmax of the uniform-type revenue over the price grid.

    Revenue is evaluated from the best-response threshold masses, not from the
    per-region closed forms, so this search is an independent check of them.
    Returns (revenue, p_o, p_r); ties resolve to the first grid point scanned
    (p_o-major order, matching the compiled variant).
    """
    p = np.arange(0.0, hi + 0.5 * step, step)
    po = p[:, None]
    pr = p[None, :]
    to = po / q_o
    if q_s > q_o:
        t1 = (pr - po) / (q_s - q_o)
        ts = pr / q_s
        mass_o = np.clip(np.minimum(t1, 1.0) - np.clip(to, 0.0, 1.0), 0.0, 1.0)
        mass_s = 1.0 - np.clip(np.maximum(ts, t1), 0.0, 1.0)
    elif q_s < q_o:
        t1 = (po - pr) / (q_o - q_s)
        ts = pr / q_s if q_s > 0 else None
        mass_o = 1.0 - np.clip(np.maximum(to, t1), 0.0, 1.0)
        if ts is None:
            mass_s = np.zeros_like(t1)
        else:
            mass_s = np.clip(np.clip(t1, 0.0, 1.0) - np.clip(ts, 0.0, 1.0), 0.0, 1.0)
    else:
        od = po <= pr  # equal supplies: cheaper pool wins, price tie to on-demand
        ts = pr / q_s
        mass_o = np.where(od, 1.0 - np.clip(to, 0.0, 1.0), 0.0)
        mass_s = np.where(od, 0.0, 1.0 - np.clip(ts, 0.0, 1.0))
    rev = n * (po * mass_o + delta * pr * mass_s)
    if region_filter != ANY_REGION:
        r1, r2, r3 = _region_mask(po, pr, q_o, q_s)
        mask = (r1, r2, r3)[region_filter - 1]
        rev = np.where(mask, rev, -1.0)
    k = int(np.argmax(rev))
    i, j = divmod(k, p.size)
    return float(rev[i, j]), float(p[i]), float(p[j])


def ks_statistic_numpy(a, b):
    """Exact sup-distance between two empirical cdfs.

    Both step functions are evaluated from the right at every pooled sample
    point; the supremum of the difference is always attained there.
    """
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    pts = np.concatenate((a, b))
    fa = np.searchsorted(a, pts, side="right") / a.size
    fb = np.searchsorted(b, pts, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


if HAVE_NUMBA:

    @njit(cache=True)
    def _buyer_choices_jit(u, p_o, p_r, q_o, q_s):
        out = np.empty(u.size, dtype=np.int8)
        for i in range(u.size):
            pi_o = u[i] * q_o - p_o
            pi_s = u[i] * q_s - p_r
            if max(pi_o, pi_s) <= 0.0:
                out[i] = NONE
            elif pi_o >= pi_s:
                out[i] = ON_DEMAND
            else:
                out[i] = SHARING
        return out

    @njit(cache=True)
    def _best_revenue_grid_jit(q_o, q_s, delta, n, step, hi, region_filter):
        p = np.arange(0.0, hi + 0.5 * step, step)
        best = -1.0
        best_i = 0
        best_j = 0
        for i in range(p.size):
            po = p[i]
            to = min(max(po / q_o, 0.0), 1.0)
            for j in range(p.size):
                pr = p[j]
                if q_s > q_o:
                    t1 = (pr - po) / (q_s - q_o)
                    ts = pr / q_s
                    mass_o = min(max(min(t1, 1.0) - to, 0.0), 1.0)
                    mass_s = 1.0 - min(max(max(ts, t1), 0.0), 1.0)
                elif q_s < q_o:
                    t1 = (po - pr) / (q_o - q_s)
                    mass_o = 1.0 - min(max(max(to, t1), 0.0), 1.0)
                    if q_s > 0:
                        ts = pr / q_s
                        mass_s = min(max(min(t1, 1.0) - min(max(ts, 0.0), 1.0), 0.0), 1.0)
                    else:
                        mass_s = 0.0
                else:
                    if po <= pr:
                        mass_o = 1.0 - to
                        mass_s = 0.0
                    else:
                        mass_o = 0.0
                        mass_s = 1.0 - min(max(pr / q_s, 0.0), 1.0)
                if region_filter != 0:
                    lo_line = max(q_s / q_o, 1.0) * po - max(q_o - q_s, 0.0)
                    hi_line = min(q_s / q_o, 1.0) * po + max(q_s - q_o, 0.0)
                    if region_filter == 1:
                        ok = (pr < hi_line) and (pr > lo_line)
                    elif region_filter == 2:
                        ok = (po < q_o) and (pr >= hi_line)
                    else:
                        ok = (pr < q_s) and (pr <= lo_line)
                    if not ok:
                        continue
                rev = n * (po * mass_o + delta * pr * mass_s)
                if rev > best:
                    best = rev
                    best_i = i
                    best_j = j
        return best, p[best_i], p[best_j]

    @njit(cache=True)
    def _ks_statistic_jit(a, b):
        a = np.sort(a)
        b = np.sort(b)
        pts = np.concatenate((a, b))
        d = 0.0
        for i in range(pts.size):
            fa = np.searchsorted(a, pts[i], side="right") / a.size
            fb = np.searchsorted(b, pts[i], side="right") / b.size
            diff = abs(fa - fb)
            if diff > d:
                d = diff
        return d


def buyer_choices(u, p_o, p_r, q_o, q_s):
    u = np.ascontiguousarray(u, dtype=np.float64)
    if HAVE_NUMBA:
        return _buyer_choices_jit(u, float(p_o), float(p_r), float(q_o), float(q_s))
    return buyer_choices_numpy(u, p_o, p_r, q_o, q_s)


def best_revenue_grid(q_o, q_s, delta, n, step=1e-3, hi=1.0, region_filter=ANY_REGION):
    if HAVE_NUMBA:
        out = _best_revenue_grid_jit(float(q_o), float(q_s), float(delta),
                                     float(n), float(step), float(hi),
                                     int(region_filter))
        return float(out[0]), float(out[1]), float(out[2])
    return best_revenue_grid_numpy(q_o, q_s, delta, n, step, hi, region_filter)


def ks_statistic(a, b):
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if HAVE_NUMBA:
        return float(_ks_statistic_jit(a, b))
    return ks_statistic_numpy(a, b)
