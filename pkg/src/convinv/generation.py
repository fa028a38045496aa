"""Tournament and orientation generators.

Includes the exhaustive non-isomorphic streams, the named tournaments used
as witnesses, biased random tournaments, and the graph families (stars,
double stars, branchings, cycle-first orientations) that get oriented.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Sequence

import numpy as np

from .canon import canonical_form
from .digraph import Digraph, Tournament, _bits, converse, make_digraph
from .errors import (
    Acyclic,
    ArcAbsent,
    BiasOutOfRange,
    EdgeCapExceeded,
    InconsistentDegrees,
    IndexOutOfRange,
    NotATree,
    OrderCapExceeded,
    OutOfRange,
)

TOURNAMENT_CAP = 8
EDGE_CAP = 20
DEFAULT_SEED = 0x5EED


# ---------------------------------------------------------------------------
# undirected graphs


class Graph:
    """Simple undirected graph on ``0..n-1`` with bitmask adjacency."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise OutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise OutOfRange(f"loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)

    @classmethod
    def underlying(cls, D: Digraph) -> "Graph":
        return cls(D.n, D.underlying_edges())

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    @property
    def size(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def distances(self, s: int) -> list[int]:
        dist = [-1] * self.n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in _bits(self.adj[u]):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def is_connected(self) -> bool:
        return self.n == 0 or min(self.distances(0)) >= 0

    def is_tree(self) -> bool:
        return self.n >= 1 and self.size == self.n - 1 and self.is_connected()

    def diameter(self) -> int:
        if not self.is_connected():
            raise ValueError("diameter of a disconnected graph")
        return max((max(self.distances(s)) for s in range(self.n)), default=0)

    def is_path(self) -> bool:
        return self.is_tree() and self.max_degree <= 2

    def is_regular(self) -> int | None:
        degs = {self.degree(v) for v in range(self.n)}
        return degs.pop() if len(degs) == 1 else None

    def girth(self) -> int | None:
        best = None
        for s in range(self.n):
            dist = [-1] * self.n
            parent = [-1] * self.n
            dist[s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for w in _bits(self.adj[u]):
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        q.append(w)
                    elif parent[u] != w:
                        length = dist[u] + dist[w] + 1
                        if best is None or length < best:
                            best = length
        return best

    def shortest_cycle(self) -> list[int] | None:
        """A shortest cycle as a vertex sequence.

        Ties go to the lexicographically least sorted vertex set, then the least
        sequence starting at its smallest vertex.
        """
        g = self.girth()
        if g is None:
            return None
        best: tuple | None = None
        for s in range(self.n):
            stack = [(s, [s])]
            while stack:
                u, path = stack.pop()
                if len(path) == g:
                    if self.adj[u] >> s & 1:
                        cand = (sorted(path), path)
                        if best is None or cand < best:
                            best = cand
                    continue
                for w in _bits(self.adj[u]):
                    if w > s and w not in path:
                        stack.append((w, path + [w]))
        return list(best[1])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def star_graph(d: int) -> Graph:
    """K_{1,d} with centre 0."""
    return Graph(d + 1, [(0, i) for i in range(1, d + 1)])


def double_star_graph(a: int, b: int) -> Graph:
    """Centres 0 and 1 joined by an edge, with ``a`` and ``b`` pendant leaves."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + i) for i in range(b)]
    return Graph(2 + a + b, edges)


def spider_graph(legs: Sequence[int]) -> Graph:
    """Centre 0 with paths of the given lengths hanging off it."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def cube_graph() -> Graph:
    return Graph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


# ---------------------------------------------------------------------------
# tournaments


def transitive_tournament(n: int) -> Tournament:
    return Tournament(n, [((1 << n) - 1) & ~((1 << (i + 1)) - 1) for i in range(n)])


def circulant_tournament(g: int) -> Tournament:
    """Rotational tournament: ``i`` beats the next ``ceil((g-1)/2)`` vertices.

    For even ``g`` the antipodal pair ``{i, i+g/2}`` is oriented from the
    smaller index, so the Hamiltonian cycle ``0 -> 1 -> ... -> g-1 -> 0``
    survives and the result is strong for every ``g >= 3``.
    """
    arcs = []
    for i in range(g):
        for k in range(1, g // 2 + 1):
            j = (i + k) % g
            if 2 * k == g and i > j:
                continue
            arcs.append((i, j))
    return Tournament.from_digraph(make_digraph(g, arcs))


def cyclic_triangle() -> Tournament:
    return circulant_tournament(3)


def flip_arc(T: Tournament, u: int, v: int) -> Tournament:
    if not T.has_arc(u, v):
        raise ArcAbsent(f"({u},{v}) is not an arc")
    out = list(T.out)
    out[u] &= ~(1 << v)
    out[v] |= 1 << u
    return Tournament(T.n, out)


def compose_dominant(T0: Tournament, T1: Tournament) -> Tournament:
    """Disjoint union with every vertex of ``T0`` beating every vertex of ``T1``."""
    n0, n1 = T0.n, T1.n
    tail = ((1 << n1) - 1) << n0
    out = [row | tail for row in T0.out] + [row << n0 for row in T1.out]
    return Tournament(n0 + n1, out)


def dominant_source_over_cycle() -> Tournament:
    return compose_dominant(transitive_tournament(1), cyclic_triangle())


def _all_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def labeled_tournaments(n: int) -> Iterator[Tournament]:
    """All ``2^(n(n-1)/2)`` labelled tournaments; bit ``k`` orients pair ``k`` downward."""
    pairs = _all_pairs(n)
    for mask in range(1 << len(pairs)):
        out = [0] * n
        for k, (i, j) in enumerate(pairs):
            if mask >> k & 1:
                out[j] |= 1 << i
            else:
                out[i] |= 1 << j
        yield Tournament(n, out)


@lru_cache(maxsize=None)
def _tournament_classes(n: int) -> tuple[Tournament, ...]:
    if n <= 1:
        return (transitive_tournament(n),)
    found: dict[bytes, Tournament] = {}
    for base in _tournament_classes(n - 1):
        for beats in range(1 << (n - 1)):
            out = list(base.out) + [beats]
            for v in range(n - 1):
                if not beats >> v & 1:
                    out[v] |= 1 << (n - 1)
            T = Tournament(n, out)
            cf = canonical_form(T, cap=None)
            if cf.key not in found:
                found[cf.key] = Tournament.from_digraph(cf.apply(T))
    return tuple(found[k] for k in sorted(found, reverse=True))


def nonisomorphic_tournaments(n: int, cap: int = TOURNAMENT_CAP) -> Iterator[Tournament]:
    """One canonical representative per isomorphism class, in decreasing key order."""
    if n < 0:
        raise OutOfRange("negative order")
    if n > cap:
        raise OrderCapExceeded(f"order {n} exceeds tournament cap {cap}")
    yield from _tournament_classes(n)


def tournament_classes(n: int, cap: int = TOURNAMENT_CAP) -> tuple[Tournament, ...]:
    if n > cap:
        raise OrderCapExceeded(f"order {n} exceeds tournament cap {cap}")
    return _tournament_classes(n)


@lru_cache(maxsize=None)
def _orgraph_classes(n: int) -> tuple[Digraph, ...]:
    if n == 0:
        return (Digraph(0, []),)
    found: dict[bytes, Digraph] = {}
    for base in _orgraph_classes(n - 1):
        for pattern in itertools.product((0, 1, 2), repeat=n - 1):
            out = list(base.out) + [0]
            for v, rel in enumerate(pattern):
                if rel == 1:
                    out[n - 1] |= 1 << v
                elif rel == 2:
                    out[v] |= 1 << (n - 1)
            D = Digraph(n, out)
            cf = canonical_form(D, cap=None)
            if cf.key not in found:
                found[cf.key] = cf.apply(D)
    return tuple(found[k] for k in sorted(found, reverse=True))


def nonisomorphic_orgraphs(n: int, cap: int = 6) -> tuple[Digraph, ...]:
    """Every orgraph on ``n`` vertices up to isomorphism (1, 2, 7, 42, 582, ...)."""
    if n > cap:
        raise OrderCapExceeded(f"order {n} exceeds orgraph cap {cap}")
    return _orgraph_classes(n)


# ---------------------------------------------------------------------------
# randomness


@dataclass(frozen=True)
class RandomModel:
    """Base order ``n - 1`` plus a new vertex beating each old one w.p. 1/2 + bias."""

    base_order: int
    bias: Fraction | float = 0
    seed: int = DEFAULT_SEED
    _rng: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_bias(self.bias)
        object.__setattr__(self, "_rng", make_rng(self.seed))

    @property
    def rng(self) -> np.random.Generator:
        return self._rng


def make_rng(seed: int | np.random.SeedSequence | None = DEFAULT_SEED) -> np.random.Generator:
    if seed is None:
        seed = DEFAULT_SEED
    return np.random.Generator(np.random.PCG64(seed))


def split_seeds(seed: int, k: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(k)


def _check_bias(p) -> None:
    if not (-0.5 <= p <= 0.5):
        raise BiasOutOfRange(f"bias {p} outside [-1/2, 1/2]")


def random_tournament(n: int, seed: int | np.random.Generator = DEFAULT_SEED) -> Tournament:
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    pairs = _all_pairs(n)
    coins = rng.integers(0, 2, size=len(pairs))
    out = [0] * n
    for (i, j), c in zip(pairs, coins):
        if c:
            out[i] |= 1 << j
        else:
            out[j] |= 1 << i
    return Tournament(n, out)


def random_extension(T: Tournament, model: RandomModel) -> Tournament:
    """Append vertex ``n`` that beats each old vertex independently w.p. ``1/2 + bias``."""
    _check_bias(model.bias)
    if model.base_order != T.n:
        raise OutOfRange(f"model base order {model.base_order} != |T| = {T.n}")
    n = T.n
    p = 0.5 + float(model.bias)
    draws = model.rng.random(n)
    out = list(T.out) + [0]
    for v in range(n):
        if draws[v] < p:
            out[n] |= 1 << v
        else:
            out[v] |= 1 << n
    return Tournament(n + 1, out)


# ---------------------------------------------------------------------------
# orientations


def all_orientations(
    G: Graph,
    mode: Literal["labeled", "up_to_isomorphism"] = "labeled",
    cap: int = EDGE_CAP,
) -> Iterator[Digraph]:
    edges = G.edges
    if len(edges) > cap:
        raise EdgeCapExceeded(f"{len(edges)} edges exceed cap {cap}")
    seen: set[bytes] = set()
    for mask in range(1 << len(edges)):
        out = [0] * G.n
        for k, (u, v) in enumerate(edges):
            if mask >> k & 1:
                out[v] |= 1 << u
            else:
                out[u] |= 1 << v
        D = Digraph(G.n, out)
        if mode == "labeled":
            yield D
            continue
        key = canonical_form(D, cap=None).key
        if key not in seen:
            seen.add(key)
            yield D


def star_orientation(d: int, i: int) -> Digraph:
    """Centre 0 with out-degree ``i``: arcs to leaves ``1..i``, from leaves ``i+1..d``."""
    if not (0 <= i <= d):
        raise IndexOutOfRange(f"centre out-degree {i} not in 0..{d}")
    arcs = [(0, k) for k in range(1, i + 1)] + [(k, 0) for k in range(i + 1, d + 1)]
    return make_digraph(d + 1, arcs)


def double_star_orientation(out_u: int, in_u: int, out_v: int, in_v: int) -> Digraph:
    """Centres ``u = 0`` and ``v = 1`` with the arc ``u -> v``; degrees count that arc.

    Leaves: ``out_u - 1`` out-leaves and ``in_u`` in-leaves at ``u``, then
    ``out_v`` out-leaves and ``in_v - 1`` in-leaves at ``v``.
    """
    if out_u < 1 or in_v < 1 or min(in_u, out_v) < 0:
        raise InconsistentDegrees("the arc u->v needs out_u >= 1 and in_v >= 1")
    if out_u + in_u < 2 or out_v + in_v < 2:
        raise InconsistentDegrees("both centres need degree at least 2")
    arcs = [(0, 1)]
    nxt = 2
    for _ in range(out_u - 1):
        arcs.append((0, nxt))
        nxt += 1
    for _ in range(in_u):
        arcs.append((nxt, 0))
        nxt += 1
    for _ in range(out_v):
        arcs.append((1, nxt))
        nxt += 1
    for _ in range(in_v - 1):
        arcs.append((nxt, 1))
        nxt += 1
    return make_digraph(nxt, arcs)


def mirrored_in_star() -> Digraph:
    """Two in-stars K^0_{1,2} whose centres are joined by one arc."""
    return double_star_orientation(1, 2, 0, 3)


def orient_out_branching(G: Graph, root: int) -> Digraph:
    if not G.is_tree():
        raise NotATree("out-branchings need a tree")
    if not 0 <= root < G.n:
        raise OutOfRange(f"root {root} not a vertex")
    dist = G.distances(root)
    arcs = [(u, v) if dist[u] < dist[v] else (v, u) for u, v in G.edges]
    return make_digraph(G.n, arcs)


def orient_in_branching(G: Graph, root: int) -> Digraph:
    return converse(orient_out_branching(G, root))


def cycle_first_order(G: Graph) -> list[int]:
    """Vertex order with a shortest cycle first, then the rest ascending."""
    cyc = G.shortest_cycle()
    if cyc is None:
        raise Acyclic("graph has no cycle")
    rest = [v for v in range(G.n) if v not in cyc]
    return cyc + rest


def orient_with_cycle(G: Graph) -> Digraph:
    """Directed shortest cycle ``v1 -> ... -> vg -> v1``; every other edge points to the later vertex."""
    order = cycle_first_order(G)
    g = G.girth()
    pos = {v: i for i, v in enumerate(order)}
    first, last = order[0], order[g - 1]
    arcs = []
    for u, v in G.edges:
        if {u, v} == {first, last}:
            arcs.append((last, first))
        elif pos[u] < pos[v]:
            arcs.append((u, v))
        else:
            arcs.append((v, u))
    return make_digraph(G.n, arcs)


def bridge_mirror(D: Digraph, u: int) -> Digraph:
    """Two disjoint copies of ``D`` plus the arc from the first copy of ``u`` to the second."""
    if not 0 <= u < D.n:
        raise OutOfRange(f"vertex {u} not in D")
    n = D.n
    arcs = D.arcs() + [(a + n, b + n) for a, b in D.arcs()] + [(u, u + n)]
    return make_digraph(2 * n, arcs)
