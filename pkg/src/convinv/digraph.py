"""Oriented graphs on dense integer vertices, stored as bitset adjacency rows."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    DigonArc,
    DuplicateArc,
    LoopArc,
    NotATournament,
    OutOfRange,
)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Digraph:
    """An immutable orgraph on vertices ``0..n-1``.

    ``out[v]`` is the bitmask of out-neighbours of ``v`` and ``inn[v]`` the
    bitmask of in-neighbours; the two relations are transposes of each other.
    Loops and digons are never representable.
    """

    def __init__(self, n: int, out: Sequence[int], inn: Sequence[int] | None = None):
        if n < 0:
            raise OutOfRange(f"negative order {n}")
        out = tuple(out)
        if len(out) != n:
            raise OutOfRange(f"expected {n} adjacency rows, got {len(out)}")
        full = (1 << n) - 1
        for v, row in enumerate(out):
            if row & ~full:
                raise OutOfRange(f"row {v} references a vertex outside 0..{n - 1}")
            if row >> v & 1:
                raise LoopArc(f"loop at vertex {v}")
        if inn is None:
            rows = [0] * n
            for u, row in enumerate(out):
                for v in _bits(row):
                    rows[v] |= 1 << u
            inn = rows
        inn = tuple(inn)
        for v in range(n):
            if out[v] & inn[v]:
                w = (out[v] & inn[v]).bit_length() - 1
                raise DigonArc(f"both ({v},{w}) and ({w},{v}) present")
        self.n = n
        self.out = out
        self.inn = inn

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        return make_digraph(n, arcs)

    # -- basic queries ----------------------------------------------------------

    @property
    def order(self) -> int:
        return self.n

    @cached_property
    def size(self) -> int:
        return sum(row.bit_count() for row in self.out)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.out[u])]

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.out[u] | self.inn[u]) >> v & 1)

    def out_degree(self, v: int) -> int:
        return self.out[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.inn[v].bit_count()

    def degree(self, v: int) -> int:
        return self.out_degree(v) + self.in_degree(v)

    def neighbors(self, v: int) -> int:
        """Bitmask of vertices joined to ``v`` in either direction."""
        return self.out[v] | self.inn[v]

    @cached_property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self.inn[v]]

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self.out[v]]

    def is_tournament(self) -> bool:
        full = (1 << self.n) - 1
        return all((self.out[v] | self.inn[v] | 1 << v) == full for v in range(self.n))

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Return the digraph with vertex ``v`` renamed to ``perm[v]``."""
        out = [0] * self.n
        for u in range(self.n):
            row = 0
            for v in _bits(self.out[u]):
                row |= 1 << perm[v]
            out[perm[u]] = row
        return type(self)(self.n, out)

    def add_arc(self, u: int, v: int) -> "Digraph":
        return make_digraph(self.n, self.arcs() + [(u, v)])

    def induced(self, vertices: Sequence[int]) -> "Digraph":
        """Sub-digraph induced on ``vertices``, relabelled ``0..k-1`` in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        arcs = [(pos[u], pos[v]) for u in vertices for v in _bits(self.out[u]) if v in pos]
        cls = Tournament if isinstance(self, Tournament) else Digraph
        return cls(len(vertices), _rows(len(vertices), arcs))

    def disjoint_union(self, other: "Digraph") -> "Digraph":
        shift = self.n
        arcs = self.arcs() + [(u + shift, v + shift) for u, v in other.arcs()]
        return make_digraph(self.n + other.n, arcs)

    def underlying_edges(self) -> list[tuple[int, int]]:
        return sorted((min(u, v), max(u, v)) for u, v in self.arcs())

    # -- dunder -----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.out == other.out

    def __hash__(self) -> int:
        return hash((self.n, self.out))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, arcs={self.arcs()})"


class Tournament(Digraph):
    """A digraph with exactly one arc between every pair of vertices."""

    def __init__(self, n: int, out: Sequence[int], inn: Sequence[int] | None = None):
        super().__init__(n, out, inn)
        if not self.is_tournament():
            raise NotATournament("some vertex pair has no arc")

    @classmethod
    def from_digraph(cls, D: Digraph) -> "Tournament":
        return cls(D.n, D.out, D.inn)

    def score_sequence(self) -> tuple[int, ...]:
        return tuple(self.out_degree(v) for v in range(self.n))


def _rows(n: int, arcs: Iterable[tuple[int, int]]) -> list[int]:
    rows = [0] * n
    for u, v in arcs:
        rows[u] |= 1 << v
    return rows


def make_digraph(n: int, arc_list: Iterable[tuple[int, int]]) -> Digraph:
    """Validate ``arc_list`` and build the orgraph it describes."""
    if n < 0:
        raise OutOfRange(f"negative order {n}")
    rows = [0] * n
    for u, v in arc_list:
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"arc ({u},{v}) outside 0..{n - 1}")
        if u == v:
            raise LoopArc(f"loop at vertex {u}")
        if rows[u] >> v & 1:
            raise DuplicateArc(f"arc ({u},{v}) listed twice")
        if rows[v] >> u & 1:
            raise DigonArc(f"both ({u},{v}) and ({v},{u}) supplied")
        rows[u] |= 1 << v
    return Digraph(n, rows)


def make_tournament(n: int, arc_list: Iterable[tuple[int, int]]) -> Tournament:
    return Tournament.from_digraph(make_digraph(n, arc_list))


def converse(D: Digraph) -> Digraph:
    """Reverse every arc; tournaments stay tournaments."""
    return type(D)(D.n, D.inn, D.out)


@dataclass(frozen=True)
class DegreeSequence:
    pairs: tuple[tuple[int, int], ...]

    @property
    def deg(self) -> Counter:
        return Counter(self.pairs)

    @property
    def deg_out(self) -> Counter:
        return Counter(p[0] for p in self.pairs)

    @property
    def deg_in(self) -> Counter:
        return Counter(p[1] for p in self.pairs)

    @property
    def max_degree(self) -> int:
        return max((a + b for a, b in self.pairs), default=0)

    @property
    def max_odd_degree(self) -> int:
        """Largest odd number not exceeding the maximum degree (0 if none)."""
        d = self.max_degree
        return d if d % 2 else max(d - 1, 0)

    def regular_degree(self) -> int | None:
        degrees = {a + b for a, b in self.pairs}
        return degrees.pop() if len(degrees) == 1 else None

    def split_counts(self, d: int | None = None) -> dict[int, int]:
        """For a ``d``-regular underlying graph: out-degree ``i`` -> vertex count."""
        if d is None:
            d = self.regular_degree()
        if d is None or any(a + b != d for a, b in self.pairs):
            raise ValueError("underlying graph is not regular")
        counts = {i: 0 for i in range(d + 1)}
        for a, _ in self.pairs:
            counts[a] += 1
        return counts

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)


def degree_sequence(D: Digraph) -> DegreeSequence:
    return DegreeSequence(tuple((D.out_degree(v), D.in_degree(v)) for v in range(D.n)))
