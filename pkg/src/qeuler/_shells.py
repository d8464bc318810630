"""Total-degree shells of multi-indices and their geometric tail bounds."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.special import gammaln


@lru_cache(maxsize=4096)
def compositions(r: int, k: int) -> np.ndarray:
    """All ``m`` in ``Z_{>=0}^r`` with ``sum(m) == k``, one per row, lexicographic."""
    if r < 1 or k < 0:
        raise ValueError("need r >= 1 and k >= 0")
    if r == 1:
        out = np.array([[k]], dtype=np.int64)
    else:
        blocks = []
        for first in range(k + 1):
            rest = compositions(r - 1, k - first)
            blocks.append(np.hstack([np.full((len(rest), 1), first, dtype=np.int64), rest]))
        out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def _log_shell_terms(r: int, ks: np.ndarray, log_rho: float) -> np.ndarray:
    # log( C(k+r-1, r-1) * rho**k )
    return gammaln(ks + r) - gammaln(ks + 1) - math.lgamma(r) + ks * log_rho


def shell_tail_bound(r: int, rho: float, M: int) -> float:
    """Upper bound on ``sum_{k > M} C(k+r-1, r-1) rho**k``.

    This majorises the sum of ``rho**sum(m)`` over every multi-index
    outside the first ``M`` shells.
    """
    if rho <= 0.0:
        return 0.0
    if rho >= 1.0:
        return math.inf
    log_rho = math.log(rho)
    total = 0.0
    k0 = M + 1
    chunk = max(64, int(4 * r / (1.0 - rho)))
    while True:
        ks = np.arange(k0, k0 + chunk, dtype=float)
        terms = np.exp(_log_shell_terms(r, ks, log_rho))
        total += math.fsum(terms)
        k = ks[-1]
        t = float(terms[-1])
        ratio = rho * (k + 1 + r) / (k + 2)  # next-term ratio, nonincreasing in k
        if ratio < 1.0:
            rest = t * ratio / (1.0 - ratio)
            if rest <= 1e-2 * total or total == 0.0:
                total += rest
                break
        k0 += chunk
    # slack for gammaln/exp rounding
    return total * (1.0 + 1e-9)


def shells_needed(r: int, rho: float, target: float, limit: int = 10 ** 7) -> int:
    """Smallest ``M`` with ``shell_tail_bound(r, rho, M) <= target``."""
    if target <= 0:
        raise ValueError("target must be positive")
    if shell_tail_bound(r, rho, 0) <= target:
        return 0
    lo, hi = 0, 1
    while shell_tail_bound(r, rho, hi) > target:
        lo, hi = hi, hi * 2
        if hi > limit:
            raise OverflowError("tail bound target unreachable within limit")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if shell_tail_bound(r, rho, mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi
