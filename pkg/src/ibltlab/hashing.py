"""Key-to-cell hash schemes.

A scheme maps a b-bit key to k cell indices, one per subtable; subtable i
owns the global index range [i*ell, (i+1)*ell).  Indices are 0-based
throughout (formulations that number cells from 1 correspond via g -> g+1).

Two families are provided:

* partitioned-uniform -- k independently keyed invocations of a 64-bit
  mixer, reduced modulo the subtable size.  This is the conventional
  construction: for uniform random keys every coordinate is uniform over
  its subtable and coordinates are independent across subtables.
* collision-avoiding ("ss-avoiding") -- a bijection of the key is split
  into k consecutive s-bit fields, so two distinct keys can never agree on
  the full index tuple.  Requires b = s*k and ell = 2**s.

Schemes are immutable after construction and safe to share across workers;
evaluation is a pure function of (scheme, key).
"""

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ibltlab._bits import lane_keys, mix64, mix64_array


class HashKind(enum.Enum):
    PARTITIONED_UNIFORM = "partitioned-uniform"
    SS_AVOIDING = "ss-avoiding"


@dataclass(frozen=True)
class HashParams:
    """Shape of a hash scheme: k subtables of ell cells, b-bit keys."""

    k: int
    ell: int
    b: int
    seed: int = 0
    kind: HashKind = HashKind.PARTITIONED_UNIFORM

    def __post_init__(self):
        if self.k < 1 or self.ell < 1 or self.b < 1:
            raise ValueError("k, ell and b must be positive")
        if self.b > 64:
            raise ValueError("keys wider than 64 bits are not supported")
        if self.kind is HashKind.SS_AVOIDING:
            if self.b % self.k != 0:
                raise ValueError("ss-avoiding needs b = s*k for integer s")
            s = self.b // self.k
            if self.ell != 1 << s:
                raise ValueError(
                    f"ss-avoiding needs ell = 2**(b/k) = {1 << s}, got {self.ell}"
                )

    @property
    def m(self) -> int:
        return self.k * self.ell


class PartitionedUniformScheme:
    """k keyed mixers, one per subtable, each reduced modulo ell.

    The mixer output is 64 bits wide before the modulo, so the reduction
    bias is at most ell * 2**-64.
    """

    def __init__(self, params: HashParams):
        self.params = params
        self.k = params.k
        self.ell = params.ell
        self.b = params.b
        self.m = params.m
        self._lanes = lane_keys(params.seed, params.k)

    def indices(self, key: int) -> tuple[int, ...]:
        ell = self.ell
        return tuple(
            i * ell + mix64(key ^ lane) % ell for i, lane in enumerate(self._lanes)
        )

    def indices_array(self, keys: np.ndarray) -> np.ndarray:
        """Vectorized indices: shape (k, len(keys)), dtype int64."""
        keys = keys.astype(np.uint64, copy=False)
        out = np.empty((self.k, len(keys)), dtype=np.int64)
        ell = np.uint64(self.ell)
        for i, lane in enumerate(self._lanes):
            out[i] = (mix64_array(keys ^ np.uint64(lane)) % ell).astype(np.int64)
            out[i] += i * self.ell
        return out


class SsAvoidingScheme:
    """Bijection output split into k fields of s bits, most significant first.

    Field i (counting from the most significant end) addresses subtable i,
    so the global index is q_i + i * 2**s.  Tuple injectivity follows from
    the bijection: distinct keys always differ in at least one field.
    """

    def __init__(self, params: HashParams, bijection: Callable[[int], int] | None):
        self.params = params
        self.k = params.k
        self.ell = params.ell
        self.b = params.b
        self.m = params.m
        self.s = params.b // params.k
        self._bijection = bijection
        self.is_identity = bijection is None

    def indices(self, key: int) -> tuple[int, ...]:
        y = key if self._bijection is None else self._bijection(key)
        s, mask = self.s, self.ell - 1
        return tuple(
            i * self.ell + ((y >> (s * (self.k - 1 - i))) & mask)
            for i in range(self.k)
        )

    def indices_array(self, keys: np.ndarray) -> np.ndarray:
        if self._bijection is None:
            y = keys.astype(np.uint64, copy=False)
        else:
            y = np.array([self._bijection(int(x)) for x in keys], dtype=np.uint64)
        out = np.empty((self.k, len(keys)), dtype=np.int64)
        mask = np.uint64(self.ell - 1)
        for i in range(self.k):
            shift = np.uint64(self.s * (self.k - 1 - i))
            out[i] = ((y >> shift) & mask).astype(np.int64)
            out[i] += i * self.ell
        return out


class ExplicitScheme:
    """Scheme backed by an explicit key -> cells table.

    Used to construct collisions and to realize arbitrary incidence
    patterns in tests; never produced by the factory functions.
    """

    def __init__(self, ell: int, k: int, mapping: dict[int, Sequence[int]], b: int = 32):
        self.ell = ell
        self.k = k
        self.b = b
        self.m = ell * k
        self._mapping = {key: tuple(cells) for key, cells in mapping.items()}
        for key, cells in self._mapping.items():
            if len(cells) != k:
                raise ValueError(f"key {key} maps to {len(cells)} cells, expected {k}")

    def indices(self, key: int) -> tuple[int, ...]:
        return self._mapping[key]


def make_partitioned_uniform(params: HashParams) -> PartitionedUniformScheme:
    """Build the conventional scheme; params.kind must agree."""
    if params.kind is not HashKind.PARTITIONED_UNIFORM:
        raise ValueError(f"params.kind is {params.kind}, expected PARTITIONED_UNIFORM")
    return PartitionedUniformScheme(params)


def make_ss_avoiding(
    params: HashParams, bijection: Callable[[int], int] | None = None
) -> SsAvoidingScheme:
    """Build the collision-avoiding scheme.

    ``bijection`` must permute b-bit values; None means the identity map.
    A custom bijection gets a deterministic spot-check (distinct outputs in
    range over a key sample) -- cheap insurance, not a proof.
    """
    if params.kind is not HashKind.SS_AVOIDING:
        raise ValueError(f"params.kind is {params.kind}, expected SS_AVOIDING")
    if bijection is not None:
        limit = 1 << params.b
        sample = range(limit) if limit <= 512 else (
            (mix64(i) % limit) for i in range(512)
        )
        seen = {}
        for x in sample:
            y = bijection(x)
            if not 0 <= y < limit:
                raise ValueError(f"bijection({x}) = {y} is not a {params.b}-bit value")
            if y in seen and seen[y] != x:
                raise ValueError(f"bijection collides: {seen[y]} and {x} -> {y}")
            seen[y] = x
    return SsAvoidingScheme(params, bijection)
