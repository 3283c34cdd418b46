"""Exact law of the support size Z of a uniform random multigraph.

With m edges spread uniformly over N slots (as a multiset), the number of
distinct slots used is hypergeometric H(N+m-1, N, m):

    Pr[Z = s] = C(N, s) C(m-1, m-s) / C(N+m-1, m),   E[Z] = m q,  q = N/(N+m-1).

Everything here is exact rational arithmetic except the ``*_float`` helpers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .core import PebblingError, sample_occupancy
from .seeding import trial_rng


def q_of(N: int, m: int) -> Fraction:
    if N < 1:
        raise PebblingError("need N >= 1")
    if N + m - 1 <= 0:
        raise PebblingError("q is undefined for N = 1, m = 0")
    return Fraction(N, N + m - 1)


def support_pmf(N: int, m: int, s: int) -> Fraction:
    if N < 1 or m < 0:
        raise PebblingError("need N >= 1 and m >= 0")
    if m == 0:
        # no edges: Z is identically 0
        return Fraction(int(s == 0))
    if not 1 <= s <= min(N, m):
        return Fraction(0)
    return Fraction(math.comb(N, s) * math.comb(m - 1, m - s), math.comb(N + m - 1, m))


def support_pmf_float(N: int, m: int, s: int) -> float:
    """Floating evaluation of :func:`support_pmf` for very large N.

    The N-dependent part C(N, s) s! m! / C(N+m-1, m) / ... is rewritten as
    N^(s-m) prod (1 - i/N) / prod (1 + i/N) so that no lgamma of a huge
    argument is ever differenced; the m-sized factors use lgamma.
    """
    if m == 0:
        return float(s == 0)
    if not 1 <= s <= min(N, m):
        return 0.0
    # C(N,s) / C(N+m-1,m) = [N(N-1)..(N-s+1) / s!] * [m! / N(N+1)..(N+m-1)]
    log_ratio = (s - m) * math.log(N) + math.fsum(
        [math.log1p(-i / N) for i in range(1, s)] + [-math.log1p(i / N) for i in range(1, m)]
    )
    log_small = math.lgamma(m + 1) - math.lgamma(s + 1) + _log_comb(m - 1, m - s)
    return math.exp(log_ratio + log_small)


def _log_comb(a: int, b: int) -> float:
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


@lru_cache(maxsize=4096)
def hypergeometric_moment(L: int, K: int, l: int, k: int) -> Fraction:
    """E[X^k] for X ~ H(L, K, l): l draws from L balls of which K are white.

    Uses E[X^k] = (lK/L) E[(Y+1)^(k-1)] with Y ~ H(L-1, K-1, l-1).
    """
    if k == 0:
        return Fraction(1)
    if l == 0 or K == 0:
        return Fraction(0)
    inner = sum(
        math.comb(k - 1, j) * hypergeometric_moment(L - 1, K - 1, l - 1, j) for j in range(k)
    )
    return Fraction(l * K, L) * inner


def support_moment(N: int, m: int, k: int) -> Fraction:
    if k < 1:
        raise PebblingError("moment order must be >= 1")
    if m == 0:
        return Fraction(0)
    return hypergeometric_moment(N + m - 1, N, m, k)


def support_mean(N: int, m: int) -> Fraction:
    return m * q_of(N, m) if m else Fraction(0)


def support_variance(N: int, m: int) -> Fraction:
    """Closed form mq (N-1)(1-q) / (N+m-2)."""
    if N + m < 3:
        raise PebblingError("variance formula needs N + m >= 3")
    q = q_of(N, m)
    return m * q * (N - 1) * (1 - q) / (N + m - 2)


def support_sizes(n: int, m: int, trials: int, seed: int) -> list[int]:
    """Support sizes of ``trials`` uniform multigraphs B'(n, m)."""
    N = n * n
    return [len(sample_occupancy(N, m, trial_rng(seed, n, m, k))) for k in range(trials)]


def concentration_fraction(sizes, mean, epsilon: float) -> float:
    if not sizes:
        raise PebblingError("empty sample")
    mean = float(mean)
    return sum(1 for z in sizes if abs(z - mean) <= epsilon * mean) / len(sizes)


def chebyshev_floor(N: int, m: int, epsilon: float) -> float:
    """1 - Var / (epsilon m q)^2, the Chebyshev lower bound on the concentration fraction."""
    var = support_variance(N, m) if N + m >= 3 else Fraction(0)
    return 1.0 - float(var) / (epsilon * float(support_mean(N, m))) ** 2


def concentration_check(n: int, m: int, epsilon: float, trials: int, seed: int) -> float:
    """Fraction of sampled B'(n, m) with |Z - mq| <= epsilon mq."""
    if m < 1:
        raise PebblingError("need m >= 1")
    return concentration_fraction(support_sizes(n, m, trials, seed), support_mean(n * n, m), epsilon)


def multiset_count(N: int, m: int) -> int:
    return math.comb(N + m - 1, m) if m >= 0 else 0


def multiplicity_bound(N: int, m: int, k: int) -> Fraction:
    """Union bound N <N over m-k> / <N over m> on Pr[some slot holds >= k edges]."""
    if k < 0 or m < 0:
        raise PebblingError("need k, m >= 0")
    if k > m:
        return Fraction(0)
    return Fraction(N * multiset_count(N, m - k), multiset_count(N, m))


def multiplicity_bound_float(N: int, m: int, k: int) -> float:
    """Same bound via the product N prod_{i<k} (m-i)/(N+m-1-i), safe for huge N."""
    if k > m:
        return 0.0
    out = float(N)
    for i in range(k):
        out *= (m - i) / (N + m - 1 - i)
    return out
