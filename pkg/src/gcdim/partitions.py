"""Integer partitions as multiplicity vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class Partition:
    """A partition given by multiplicities: parts[k] copies of the part k+1.

    Trailing zero multiplicities are trimmed, so ``parts`` is () for the
    empty partition and ``parts[-1] > 0`` otherwise.
    """

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.parts and self.parts[-1] == 0:
            object.__setattr__(self, "parts", _trim(self.parts))

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> "Partition":
        if not mult:
            return cls(())
        top = max(a for a, j in mult.items() if j > 0) if any(mult.values()) else 0
        return cls(tuple(mult.get(a, 0) for a in range(1, top + 1)))

    @property
    def weight(self) -> int:
        return sum(a * j for a, j in self.items())

    @property
    def length(self) -> int:
        return sum(self.parts)

    def multiplicity(self, part: int) -> int:
        return self.parts[part - 1] if 1 <= part <= len(self.parts) else 0

    def items(self) -> Iterator[tuple[int, int]]:
        """(part, multiplicity) pairs with multiplicity > 0."""
        return ((a, j) for a, j in enumerate(self.parts, start=1) if j > 0)

    def as_parts(self) -> tuple[int, ...]:
        """Weakly decreasing list of parts, e.g. (3, 1, 1)."""
        out: list[int] = []
        for a, j in self.items():
            out.extend([a] * j)
        return tuple(reversed(out))

    def __repr__(self) -> str:
        return f"Partition{self.as_parts()}"


def _trim(parts: tuple[int, ...]) -> tuple[int, ...]:
    n = len(parts)
    while n and parts[n - 1] == 0:
        n -= 1
    return parts[:n]


def iter_partitions(weight_max: int) -> Iterator[Partition]:
    """Every partition of every weight 0..weight_max, exactly once.

    Graded order: weight 0 first, then weight 1, ... ; within a weight,
    lexicographic on the decreasing part lists.
    """
    for w in range(weight_max + 1):
        yield from iter_partitions_of(w)


def iter_partitions_of(weight: int) -> Iterator[Partition]:
    """Partitions of a fixed weight, lexicographic on decreasing parts."""

    def rec(remaining: int, largest: int, acc: dict[int, int]) -> Iterator[Partition]:
        if remaining == 0:
            yield Partition.from_multiplicities(dict(acc))
            return
        for part in range(min(remaining, largest), 0, -1):
            acc[part] = acc.get(part, 0) + 1
            yield from rec(remaining - part, part, acc)
            acc[part] -= 1

    if weight == 0:
        yield Partition(())
        return
    yield from rec(weight, weight, {})


def count_partitions_upto(weight_max: int) -> int:
    """sum_{n <= weight_max} p(n), by the Euler pentagonal recurrence."""
    p = [1] + [0] * weight_max
    for n in range(1, weight_max + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return sum(p)
