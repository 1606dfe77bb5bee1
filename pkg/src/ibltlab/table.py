"""The invertible lookup table: insert, delete, get, and peeling-based listing.

Each cell holds a signed count, a key XOR-accumulator and a value
XOR-accumulator.  Updates form an abelian group, so any interleaving of
inserts and deletes of the same multiset produces the same table, and the
table of a union is the cellwise combination of the tables.
"""

import enum
import heapq
import random
from dataclasses import dataclass
from typing import NamedTuple


@dataclass(frozen=True)
class Cell:
    count: int
    key_sum: int
    value_sum: int


class GetStatus(enum.Enum):
    FOUND = "found"
    ABSENT = "absent"
    INCONCLUSIVE = "inconclusive"


class GetResult(NamedTuple):
    status: GetStatus
    value: int | None


class ListingStatus(enum.Enum):
    COMPLETE = "complete"
    PARTIAL = "partial"


@dataclass(frozen=True)
class ListingResult:
    entries: frozenset
    status: ListingStatus
    residual_cells: int

    @property
    def complete(self) -> bool:
        return self.status is ListingStatus.COMPLETE


class Iblt:
    """Cell array driven by a hash scheme (anything with k, m, b and indices()).

    A table is single-writer; concurrent reads of an unchanging table are
    safe.  An all-zero table represents the empty set.
    """

    def __init__(self, scheme):
        self.scheme = scheme
        self.m = scheme.m
        self._mask = (1 << scheme.b) - 1
        self._counts = [0] * self.m
        self._key_sums = [0] * self.m
        self._value_sums = [0] * self.m

    def _check(self, x: int, y: int):
        if not 0 <= x <= self._mask or not 0 <= y <= self._mask:
            raise ValueError(f"key/value must be {self.scheme.b}-bit values")

    def insert(self, x: int, y: int):
        """Add the pair (x, y); touches exactly k cells."""
        self._check(x, y)
        for c in self.scheme.indices(x):
            self._counts[c] += 1
            self._key_sums[c] ^= x
            self._value_sums[c] ^= y

    def delete(self, x: int, y: int):
        """Exact inverse of insert; no membership check, counts may go negative."""
        self._check(x, y)
        for c in self.scheme.indices(x):
            self._counts[c] -= 1
            self._key_sums[c] ^= x
            self._value_sums[c] ^= y

    def get(self, x: int) -> GetResult:
        """Look up the value stored under key x.

        Any count-0 cell proves absence.  A count-1 cell yields the value
        only when its key accumulator equals x; a count-1 cell reachable
        from x but holding a different entry is reported INCONCLUSIVE
        rather than returned as a wrong value.
        """
        cells = self.scheme.indices(x)
        if any(self._counts[c] == 0 for c in cells):
            return GetResult(GetStatus.ABSENT, None)
        for c in cells:
            if self._counts[c] == 1 and self._key_sums[c] == x:
                return GetResult(GetStatus.FOUND, self._value_sums[c])
        return GetResult(GetStatus.INCONCLUSIVE, None)

    def cell(self, i: int) -> Cell:
        return Cell(self._counts[i], self._key_sums[i], self._value_sums[i])

    def cells(self) -> list[Cell]:
        return [self.cell(i) for i in range(self.m)]

    def nonzero_cells(self) -> int:
        return sum(
            1
            for i in range(self.m)
            if self._counts[i] or self._key_sums[i] or self._value_sums[i]
        )

    def is_empty(self) -> bool:
        return self.nonzero_cells() == 0

    def copy(self) -> "Iblt":
        dup = Iblt.__new__(Iblt)
        dup.scheme = self.scheme
        dup.m = self.m
        dup._mask = self._mask
        dup._counts = self._counts[:]
        dup._key_sums = self._key_sums[:]
        dup._value_sums = self._value_sums[:]
        return dup

    def __eq__(self, other):
        if not isinstance(other, Iblt):
            return NotImplemented
        return (
            self._counts == other._counts
            and self._key_sums == other._key_sums
            and self._value_sums == other._value_sums
        )

    def list_entries(self, rng: random.Random | None = None) -> ListingResult:
        """Recover all stored pairs by peeling count-1 cells; non-mutating.

        By default the lowest-index count-1 cell is taken first, which makes
        runs reproducible; passing ``rng`` randomizes the choice (the final
        status and recovered set are independent of the order).
        """
        return self.copy().list_entries_inplace(rng)

    def list_entries_inplace(self, rng: random.Random | None = None) -> ListingResult:
        """Destructive listing: recovered pairs are deleted from this table."""
        counts = self._counts
        entries = set()
        if rng is None:
            frontier = [i for i in range(self.m) if counts[i] == 1]
            heapq.heapify(frontier)
            pop = lambda: heapq.heappop(frontier)
            push = lambda c: heapq.heappush(frontier, c)
        else:
            frontier = [i for i in range(self.m) if counts[i] == 1]
            pop = lambda: frontier.pop(rng.randrange(len(frontier)))
            push = frontier.append
        while frontier:
            c = pop()
            if counts[c] != 1:
                continue
            x = self._key_sums[c]
            y = self._value_sums[c]
            entries.add((x, y))
            for ci in self.scheme.indices(x):
                counts[ci] -= 1
                self._key_sums[ci] ^= x
                self._value_sums[ci] ^= y
                if counts[ci] == 1:
                    push(ci)
        residual = self.nonzero_cells()
        status = ListingStatus.COMPLETE if residual == 0 else ListingStatus.PARTIAL
        return ListingResult(frozenset(entries), status, residual)
