"""64-bit mixing primitives shared by the hash schemes and the trial kernels.

Everything downstream (hash lanes, per-trial key streams, sweep seeds) is
derived from one finalizer, so the compiled kernel only has to replicate
these few lines of integer arithmetic to stay bit-identical with the
pure-Python path.
"""

import numpy as np

MASK64 = (1 << 64) - 1

# Weyl increment for the splitmix-style counter stream.
PHI64 = 0x9E3779B97F4A7C15

# Domain-separation salts: hash lanes, per-trial streams, per-sweep-point seeds.
LANE_SALT = 0x85EBCA77C2B2AE63
TRIAL_SALT = 0xC2B2AE3D27D4EB4F
SWEEP_SALT = 0x165667B19E3779F9

# Integer codes of the kernel API (mirrored in the compiled extension).
SCHEME_PARTITIONED = 0
SCHEME_SS_AVOIDING = 1
KEYS_IID = 0
KEYS_DISTINCT = 1

_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """Splitmix64 finalizer: a fast 64-bit bijection with strong avalanche."""
    x &= MASK64
    x ^= x >> 30
    x = (x * _MUL1) & MASK64
    x ^= x >> 27
    x = (x * _MUL2) & MASK64
    x ^= x >> 31
    return x


def stream_output(state: int, j: int) -> int:
    """j-th output (0-based) of the counter stream rooted at ``state``."""
    return mix64((state + (j + 1) * PHI64) & MASK64)


def trial_state(seed: int, trial: int) -> int:
    """Root state of the random stream for one simulation trial."""
    base = mix64(seed ^ TRIAL_SALT)
    return mix64((base + (trial + 1) * PHI64) & MASK64)


def lane_keys(seed: int, k: int) -> tuple[int, ...]:
    """Per-subtable keys that turn one mixer into k independent keyed hashes."""
    base = mix64(seed ^ LANE_SALT)
    return tuple(mix64((base + (i + 1) * PHI64) & MASK64) for i in range(k))


def sweep_point_seed(seed: int, m: int) -> int:
    """Derived seed for the sweep point with m total cells."""
    base = mix64(seed ^ SWEEP_SALT)
    return mix64((base + m * PHI64) & MASK64)


_NP_MUL1 = np.uint64(_MUL1)
_NP_MUL2 = np.uint64(_MUL2)
_NP30 = np.uint64(30)
_NP27 = np.uint64(27)
_NP31 = np.uint64(31)


def mix64_array(x: np.ndarray) -> np.ndarray:
    """Vectorized mix64 over a uint64 array (wrapping arithmetic)."""
    x = x.astype(np.uint64, copy=True)
    x ^= x >> _NP30
    x *= _NP_MUL1
    x ^= x >> _NP27
    x *= _NP_MUL2
    x ^= x >> _NP31
    return x


def stream_outputs(state: int, count: int) -> np.ndarray:
    """First ``count`` outputs of the counter stream rooted at ``state``."""
    steps = np.arange(1, count + 1, dtype=np.uint64) * np.uint64(PHI64)
    return mix64_array(np.uint64(state) + steps)
