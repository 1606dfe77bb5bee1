"""Monte Carlo estimation of the listing failure probability.

Determinism contract: a report is a pure function of the config.  Trial t
draws its keys and values from a counter stream rooted at
mix64(mix64(seed ^ TRIAL_SALT) + (t+1)*PHI64); outputs are interleaved
key, value, key, value, ... with rejected distinct-key candidates each
consuming one output.  Trials are therefore independent of execution
order, and splitting the trial range across workers cannot change the
result.  Sweep points at m cells run with the derived seed
mix64(mix64(seed ^ SWEEP_SALT) + m*PHI64).
"""

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from ibltlab._bits import (
    KEYS_DISTINCT,
    KEYS_IID,
    MASK64,
    SCHEME_PARTITIONED,
    SCHEME_SS_AVOIDING,
    sweep_point_seed,
)
from ibltlab.backend import kernels
from ibltlab.bounds import size2_asymptote, union_bound
from ibltlab.census import StoppingCensus
from ibltlab.hashing import HashKind


class KeyModel(enum.Enum):
    IID_UNIFORM = "iid"
    DISTINCT_UNIFORM = "distinct"


_SCHEME_CODES = {
    HashKind.PARTITIONED_UNIFORM: SCHEME_PARTITIONED,
    HashKind.SS_AVOIDING: SCHEME_SS_AVOIDING,
}
_KEY_CODES = {KeyModel.IID_UNIFORM: KEYS_IID, KeyModel.DISTINCT_UNIFORM: KEYS_DISTINCT}

# 97.5th normal percentile: two-sided 95% score interval.
_WILSON_Z = 1.959963984540054


@dataclass(frozen=True)
class TrialConfig:
    n: int
    m: int
    k: int
    b: int = 32
    trials: int = 100_000
    seed: int = 0
    scheme: HashKind = HashKind.PARTITIONED_UNIFORM
    key_model: KeyModel = KeyModel.IID_UNIFORM

    def __post_init__(self):
        if self.n < 1 or self.m < 1 or self.k < 1 or self.trials < 1:
            raise ValueError("n, m, k and trials must be positive")
        if not 1 <= self.b <= 64:
            raise ValueError("key width b must be in [1, 64]")
        if self.m % self.k != 0:
            raise ValueError(f"m = {self.m} must be divisible by k = {self.k}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.scheme is HashKind.SS_AVOIDING:
            if self.key_model is not KeyModel.DISTINCT_UNIFORM:
                raise ValueError("the ss-avoiding scheme requires distinct keys")
            if self.b % self.k != 0:
                raise ValueError("ss-avoiding needs b = s*k for integer s")
            if self.ell != 1 << (self.b // self.k):
                raise ValueError(
                    f"ss-avoiding needs m/k = 2**(b/k) = {1 << (self.b // self.k)}, "
                    f"got {self.ell}"
                )
        if self.key_model is KeyModel.DISTINCT_UNIFORM and self.n > (1 << self.b):
            raise ValueError("cannot draw n distinct keys from fewer than n values")

    @property
    def ell(self) -> int:
        return self.m // self.k


@dataclass(frozen=True)
class SimReport:
    m: int
    ell: int
    n: int
    k: int
    b: int
    scheme: HashKind
    seed: int
    trials: int
    failures: int
    size2_residual_failures: int
    p_hat: float
    ci_low: float
    ci_high: float
    bound: float  # clamped union bound at (ell, n, k)
    p2: float  # size-2 error-floor asymptote


def wilson_interval(failures: int, trials: int, z: float = _WILSON_Z) -> tuple[float, float]:
    """95% score interval for a binomial proportion; exact-count friendly."""
    if trials < 1:
        raise ValueError("trials must be positive")
    p = failures / trials
    zz = z * z / trials
    center = (p + zz / 2) / (1 + zz)
    half = z * math.sqrt(p * (1 - p) / trials + zz / (4 * trials)) / (1 + zz)
    # The score interval always contains the point estimate; pin that down
    # against rounding at the extremes.
    return min(max(0.0, center - half), p), max(min(1.0, center + half), p)


def _run_range(args) -> tuple[int, int]:
    seed, lo, hi, n, ell, k, b, scheme_code, key_code = args
    return kernels.run_trials(seed, lo, hi, n, ell, k, b, scheme_code, key_code)


def _trial_ranges(trials: int, workers: int) -> list[tuple[int, int]]:
    if workers <= 1:
        return [(0, trials)]
    step = max(1, math.ceil(trials / (workers * 4)))
    return [(lo, min(lo + step, trials)) for lo in range(0, trials, step)]


def run_trials(
    cfg: TrialConfig,
    census: StoppingCensus | None = None,
    workers: int = 1,
) -> SimReport:
    """Estimate the listing failure probability for one configuration.

    A trial fails when listing leaves any entry unrecovered.  The report
    pairs the estimate with the union bound and the floor asymptote at
    ell = m/k, and carries the count of failures that left exactly two
    entries -- those necessarily had identical index tuples.
    """
    args = [
        (
            cfg.seed,
            lo,
            hi,
            cfg.n,
            cfg.ell,
            cfg.k,
            cfg.b,
            _SCHEME_CODES[cfg.scheme],
            _KEY_CODES[cfg.key_model],
        )
        for lo, hi in _trial_ranges(cfg.trials, workers)
    ]
    if workers <= 1:
        results = [_run_range(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_range, args))
    failures = sum(r[0] for r in results)
    two_left = sum(r[1] for r in results)
    ci_low, ci_high = wilson_interval(failures, cfg.trials)
    if census is None:
        census = StoppingCensus()
    bound = union_bound(census, cfg.ell, cfg.n, cfg.k).total_clamped
    return SimReport(
        m=cfg.m,
        ell=cfg.ell,
        n=cfg.n,
        k=cfg.k,
        b=cfg.b,
        scheme=cfg.scheme,
        seed=cfg.seed,
        trials=cfg.trials,
        failures=failures,
        size2_residual_failures=two_left,
        p_hat=failures / cfg.trials,
        ci_low=ci_low,
        ci_high=ci_high,
        bound=bound,
        p2=size2_asymptote(cfg.ell, cfg.n, cfg.k),
    )


def sweep(
    base: TrialConfig,
    m_values: list[int],
    census: StoppingCensus | None = None,
    workers: int = 1,
) -> list[SimReport]:
    """Run one report per m value, each with its derived seed."""
    if census is None:
        census = StoppingCensus()
    reports = []
    for m in m_values:
        cfg = replace(base, m=m, seed=sweep_point_seed(base.seed, m))
        reports.append(run_trials(cfg, census=census, workers=workers))
    return reports
