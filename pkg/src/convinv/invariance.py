"""Deciding converse invariance and the constructions around it.

An orgraph ``D`` is converse invariant when every tournament contains as many
copies of ``D`` as of its converse. Copies of ``D`` inside a large tournament
are sums over its ``|D|``-vertex subtournaments, so it suffices to compare the
two counts on one representative of every tournament class of order ``|D|``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .canon import automorphisms, canonical_form, is_isomorphic, transitive_pairs
from .counting import EmbeddingPlan, copy_count
from .digraph import Digraph, Tournament, converse
from .errors import (
    AlreadyAdjacent,
    DegreeTooSmall,
    Disconnected,
    MaxDegreeTooSmall,
    NotADoubleStar,
    NotATree,
    NotTransitivePair,
    OrderCapExceeded,
)
from .generation import (
    Graph,
    all_orientations,
    bridge_mirror,
    circulant_tournament,
    compose_dominant,
    mirrored_in_star,
    orient_out_branching,
    orient_with_cycle,
    star_orientation,
    tournament_classes,
    transitive_tournament,
)
from .polynomial import first_nonzero_odd_coefficient, source_sink_sums

DECIDE_CAP = 8
TOWER_CAP = 12

INVARIANT = "Invariant"
NOT_INVARIANT = "NotInvariant"
Status = Literal["Invariant", "NotInvariant"]

__all__ = [
    "InvarianceVerdict",
    "decide",
    "add_transitive_arc",
    "bridge_mirror",
    "is_path_mirror_tower",
    "classify_star",
    "classify_double_star",
    "witness_for_orientation",
    "conjecture_probe",
]


@dataclass(frozen=True)
class InvarianceVerdict:
    status: Status
    order: int
    classes_checked: int
    witness: Tournament | None = None
    witness_index: int | None = None
    f_D: int | None = None
    f_conv: int | None = None
    fast_fail: int | None = None

    @property
    def invariant(self) -> bool:
        return self.status == INVARIANT

    def recheck(self, D: Digraph) -> bool:
        """Recount on the stored witness; True when the verdict's evidence holds."""
        if self.invariant:
            return self.classes_checked == len(tournament_classes(self.order, cap=max(self.order, 0)))
        a = copy_count(D, self.witness)
        b = copy_count(converse(D), self.witness)
        return a == self.f_D and b == self.f_conv and a != b


def _first_mismatch(D: Digraph, chunk: Sequence[tuple[int, tuple[int, ...]]]):
    n = D.n
    plan = EmbeddingPlan(D)
    cplan = EmbeddingPlan(converse(D))
    for idx, rows in chunk:
        T = Tournament(n, rows)
        a = plan.count(T)
        b = cplan.count(T)
        if a != b:
            return idx, a, b
    return None


def _default_workers() -> int:
    return os.cpu_count() or 1


def decide(D: Digraph, workers: int = 1, cap: int = DECIDE_CAP) -> InvarianceVerdict:
    """Compare copy counts of ``D`` and ``-D`` on every tournament class of order ``|D|``.

    The first class (in canonical order) where they differ is the witness.
    With ``workers > 1`` the class list is split into contiguous blocks and the
    smallest mismatch index wins, so the verdict does not depend on the pool size.
    """
    n = D.n
    if n > cap:
        raise OrderCapExceeded(f"order {n} exceeds decision cap {cap}")
    classes = tournament_classes(n, cap=max(cap, n))
    fast = first_nonzero_odd_coefficient(D)
    items = [(i, T.out) for i, T in enumerate(classes)]
    hit = None
    if workers <= 1 or len(items) < 64:
        hit = _first_mismatch(D, items)
    else:
        size = -(-len(items) // (workers * 4))
        chunks = [items[i:i + size] for i in range(0, len(items), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_first_mismatch, [D] * len(chunks), chunks))
        hits = [r for r in results if r is not None]
        hit = min(hits) if hits else None
    if hit is None:
        return InvarianceVerdict(INVARIANT, n, len(classes), fast_fail=fast)
    idx, a, b = hit
    aut = automorphisms(D, cap=None).count
    return InvarianceVerdict(
        NOT_INVARIANT,
        n,
        len(classes),
        witness=classes[idx],
        witness_index=idx,
        f_D=a // aut,
        f_conv=b // aut,
        fast_fail=fast,
    )


# ---------------------------------------------------------------------------
# constructions preserving invariance


def add_transitive_arc(D: Digraph, u: int, v: int) -> Digraph:
    """``D + (u, v)`` for a non-adjacent pair swapped by an automorphism."""
    if D.adjacent(u, v):
        raise AlreadyAdjacent(f"{u} and {v} are adjacent")
    if (min(u, v), max(u, v)) not in transitive_pairs(D, cap=None):
        raise NotTransitivePair(f"no automorphism exchanges {u} and {v}")
    return D.add_arc(u, v)


def mirror_witness(k: int) -> Digraph:
    """An orgraph with maximum degree ``k`` that is invariant but not self-converse.

    Bridge-mirrors the transitive tournament on ``k`` vertices at its source.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    return bridge_mirror(transitive_tournament(k), 0)


@dataclass(frozen=True)
class TowerTrace:
    """Outer-to-inner mirror steps: ``levels[i] = (half, vertex)`` with
    ``bridge_mirror(half, vertex)`` isomorphic to the previous level's digraph."""

    top: Digraph
    levels: tuple[tuple[Digraph, int], ...]
    base: Digraph

    @property
    def depth(self) -> int:
        return len(self.levels)

    def verify(self) -> bool:
        current = self.top
        for half, u in self.levels:
            if not is_isomorphic(bridge_mirror(half, u), current, cap=None):
                return False
            current = half
        return current == self.base and _is_path_orientation(self.base)


def _is_path_orientation(D: Digraph) -> bool:
    return Graph.underlying(D).is_path()


def _component(D: Digraph, start: int, skip: tuple[int, int]) -> list[int]:
    a, b = skip
    seen = 1 << start
    stack = [start]
    while stack:
        x = stack.pop()
        nb = D.neighbors(x)
        if x == a:
            nb &= ~(1 << b)
        elif x == b:
            nb &= ~(1 << a)
        new = nb & ~seen
        seen |= new
        while new:
            low = new & -new
            stack.append(low.bit_length() - 1)
            new ^= low
    return [v for v in range(D.n) if seen >> v & 1]


def _tower_levels(D: Digraph) -> list[tuple[Digraph, int]] | None:
    """Mirror steps down to a path orientation, splitting as deep as possible."""
    fallback = [] if _is_path_orientation(D) else None
    if D.n % 2 or D.n < 4:
        return fallback
    half = D.n // 2
    for a, b in D.arcs():
        side_a = _component(D, a, (a, b))
        if len(side_a) != half or b in side_a:
            continue
        side_b = _component(D, b, (a, b))
        if len(side_b) != half:
            continue
        D1, D2 = D.induced(side_a), D.induced(side_b)
        ia, ib = side_a.index(a), side_b.index(b)
        c1 = [0] * half
        c1[ia] = 1
        c2 = [0] * half
        c2[ib] = 1
        k1 = canonical_form(D1, c1, cap=None).key
        if k1 != canonical_form(D2, c2, cap=None).key:
            continue
        inner = _tower_levels(D1)
        if inner is not None:
            return [(D1, ia)] + inner
    return fallback


def is_path_mirror_tower(D: Digraph, cap: int = TOWER_CAP) -> tuple[bool, TowerTrace | None]:
    """Is ``D`` a path orientation, possibly bridge-mirrored repeatedly?"""
    if D.n > cap:
        raise OrderCapExceeded(f"order {D.n} exceeds cap {cap}")
    levels = _tower_levels(D)
    if levels is None:
        return False, None
    base = levels[-1][0] if levels else D
    return True, TowerTrace(D, tuple(levels), base)


# ---------------------------------------------------------------------------
# classifiers for small trees


def classify_star(d: int, i: int) -> Status:
    if d < 3:
        raise DegreeTooSmall("stars with fewer than 3 leaves are paths")
    star_orientation(d, i)  # validates i
    return INVARIANT if 2 * i == d else NOT_INVARIANT


def is_double_star(G: Graph) -> bool:
    return G.is_tree() and G.diameter() == 3


def classify_double_star(D: Digraph) -> Status:
    G = Graph.underlying(D)
    if not is_double_star(G) or G.is_path():
        raise NotADoubleStar("underlying graph must be a double star that is not a path")
    if is_isomorphic(D, converse(D), cap=None):
        return INVARIANT
    mirrored = mirrored_in_star()
    if is_isomorphic(D, mirrored, cap=None) or is_isomorphic(converse(D), mirrored, cap=None):
        return INVARIANT
    return NOT_INVARIANT


# ---------------------------------------------------------------------------
# a non-invariant orientation of every connected graph with max degree >= 3


@dataclass(frozen=True)
class OrientationWitness:
    branch: Literal["tree", "cycle"]
    digraph: Digraph
    tournament: Tournament | None
    f_D: int | None
    f_conv: int | None
    source_sum: int
    sink_sum: int


def witness_for_orientation(G: Graph, cap: int = DECIDE_CAP) -> OrientationWitness:
    if not G.is_connected():
        raise Disconnected("graph must be connected")
    if G.max_degree < 3:
        raise MaxDegreeTooSmall("every orientation is invariant when max degree <= 2")
    if G.is_tree():
        leaf = min(v for v in range(G.n) if G.degree(v) == 1)
        D = orient_out_branching(G, leaf)
        src, snk = source_sink_sums(D)
        T = fD = fc = None
        if D.n <= cap:
            verdict = decide(D, cap=cap)
            T, fD, fc = verdict.witness, verdict.f_D, verdict.f_conv
        return OrientationWitness("tree", D, T, fD, fc, src, snk)
    D = orient_with_cycle(G)
    g = G.girth()
    T = compose_dominant(circulant_tournament(g), transitive_tournament(G.n - g))
    src, snk = source_sink_sums(D)
    return OrientationWitness(
        "cycle", D, T, copy_count(D, T), copy_count(converse(D), T), src, snk
    )


# ---------------------------------------------------------------------------
# exploring the tree conjecture


@dataclass(frozen=True)
class ProbeEntry:
    digraph: Digraph
    converse_key: bytes
    self_converse: bool
    mirror_tower: bool
    status: Status
    consistent: bool


@dataclass
class ProbeReport:
    graph: Graph
    entries: list[ProbeEntry] = field(default_factory=list)

    @property
    def counterexamples(self) -> list[ProbeEntry]:
        return [e for e in self.entries if not e.consistent]

    @property
    def consistent(self) -> bool:
        return not self.counterexamples

    @property
    def invariant_entries(self) -> list[ProbeEntry]:
        return [e for e in self.entries if e.status == INVARIANT]


def conjecture_probe(G: Graph, cap: int = DECIDE_CAP, workers: int = 1) -> ProbeReport:
    """Decide every orientation class of the tree ``G`` and compare with the prediction
    "invariant iff self-converse or a mirror tower over a path orientation".

    ``D`` and ``-D`` share one decision; both still appear in the report.
    """
    if not G.is_tree():
        raise NotATree("conjecture probe needs a tree")
    if G.max_degree < 3:
        raise MaxDegreeTooSmall("tree must have a vertex of degree >= 3")
    if G.n > cap:
        raise OrderCapExceeded(f"order {G.n} exceeds cap {cap}")
    report = ProbeReport(G)
    done: dict[bytes, ProbeEntry] = {}
    for D in all_orientations(G, "up_to_isomorphism"):
        key = canonical_form(D, cap=None).key
        C = converse(D)
        ckey = canonical_form(C, cap=None).key
        self_conv = key == ckey
        tower = is_path_mirror_tower(D, cap=max(cap, TOWER_CAP))[0]
        if ckey in done:
            status = done[ckey].status
        else:
            status = decide(D, workers=workers, cap=cap).status
        predicted = INVARIANT if (self_conv or tower) else NOT_INVARIANT
        entry = ProbeEntry(D, ckey, self_conv, tower, status, predicted == status)
        done[key] = entry
        report.entries.append(entry)
    return report
