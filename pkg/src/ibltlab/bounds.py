"""Union bound on the listing failure probability and its error-floor asymptote.

The failure event is a union over entry subsets of "this subset is a
stopping set"; a fixed subset of size i is a stopping set with probability
(count(ell,i) / ell**i) ** k under the uniform-hash model.  The bound
sums C(n,i) such terms over i = 2..n (a single entry can never stop).

Terms are evaluated as exact-integer numerator/denominator pairs and
converted by one correctly-rounded true division each, so small cases come
out bit-exact (the i=2 term IS the floor asymptote) while huge mixed-scale
terms -- C(210,105) alone is ~1e61 and the ratio underflows a double --
still land on the correctly rounded product.  Totals above float range
degrade to inf; the clamped total is then 1.
"""

import math
from dataclasses import dataclass

from ibltlab.census import StoppingCensus


@dataclass(frozen=True)
class BoundBreakdown:
    ell: int
    n: int
    k: int
    terms: tuple[tuple[int, float], ...]  # (subset size i, term value)
    total: float
    total_clamped: float

    def term(self, i: int) -> float:
        return dict(self.terms)[i]


def _ratio_term(numerator: int, denominator: int) -> float:
    try:
        return numerator / denominator
    except OverflowError:
        return math.inf


def union_bound(census: StoppingCensus, ell: int, n: int, k: int) -> BoundBreakdown:
    """Upper bound on the listing failure probability for k subtables of ell
    cells holding n entries, with the per-size breakdown.

    The i=1 term is absent because a single column always has a weight-1 row.
    """
    if ell < 1 or n < 1 or k < 1:
        raise ValueError("ell, n and k must be positive")
    terms = []
    ell_k = ell**k
    denominator = ell ** (2 * k)
    for i in range(2, n + 1):
        stoppers = census.count(ell, i)
        terms.append((i, _ratio_term(math.comb(n, i) * stoppers**k, denominator)))
        denominator *= ell_k
    total = math.fsum(sorted(value for _, value in terms))
    return BoundBreakdown(ell, n, k, tuple(terms), total, min(total, 1.0))


def size2_asymptote(ell: int, n: int, k: int) -> float:
    """Error-floor asymptote: probability mass of size-2 stopping sets,
    C(n,2) / ell**k.  Matches the union bound's i=2 term bit for bit."""
    if ell < 1 or k < 1 or n < 0:
        raise ValueError("ell and k must be positive, n nonnegative")
    if n < 2:
        return 0.0
    return _ratio_term(math.comb(n, 2), ell**k)


def stopping_set_probability(census: StoppingCensus, ell: int, i: int, k: int) -> float:
    """Probability that a fixed set of i entries forms a stopping set."""
    if ell < 1 or i < 1 or k < 1:
        raise ValueError("ell, i and k must be positive")
    return _ratio_term(census.count(ell, i) ** k, ell ** (i * k))
