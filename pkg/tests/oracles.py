"""Slow but obviously correct reference implementations used by the tests."""

from __future__ import annotations

import itertools
from math import factorial

from hypothesis import strategies as st

from convinv.digraph import Digraph, make_digraph, make_tournament


def arc_set(D: Digraph) -> frozenset:
    return frozenset(D.arcs())


def brute_ism(D: Digraph, H: Digraph) -> int:
    arcs = D.arcs()
    target = arc_set(H)
    total = 0
    for phi in itertools.permutations(range(H.n), D.n):
        if all((phi[u], phi[v]) in target for u, v in arcs):
            total += 1
    return total


def brute_aut(D: Digraph) -> int:
    return brute_ism(D, D) if D.n else 1


def brute_isomorphic(D1: Digraph, D2: Digraph) -> bool:
    if D1.n != D2.n or D1.size != D2.size:
        return False
    target = arc_set(D2)
    return any(
        all((p[u], p[v]) in target for u, v in D1.arcs())
        for p in itertools.permutations(range(D1.n))
    )


def brute_certificate(D: Digraph) -> tuple:
    """Lexicographically least relabelled arc list: equal iff isomorphic."""
    return min(
        tuple(sorted((p[u], p[v]) for u, v in D.arcs()))
        for p in itertools.permutations(range(D.n))
    )


def burnside_tournament_count(n: int) -> int:
    """Non-isomorphic tournaments on ``n`` vertices by Burnside's lemma.

    A permutation fixes some tournament iff it never swaps a pair; it then
    fixes ``2^(number of pair orbits)`` of them.
    """
    pairs = list(itertools.combinations(range(n), 2))
    total = 0
    for p in itertools.permutations(range(n)):
        seen = set()
        orbits = 0
        swaps = False
        for pair in pairs:
            if pair in seen:
                continue
            orbits += 1
            a, b = pair
            while (a, b) not in seen and (b, a) not in seen:
                seen.add((min(a, b), max(a, b)))
                a, b = p[a], p[b]
                if (b, a) == pair:
                    swaps = True
        if not swaps:
            total += 2**orbits
    return total // factorial(n)


@st.composite
def orgraphs(draw, min_n: int = 0, max_n: int = 6) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    arcs = []
    for u, v in itertools.combinations(range(n), 2):
        c = draw(st.integers(0, 2))
        if c == 1:
            arcs.append((u, v))
        elif c == 2:
            arcs.append((v, u))
    return make_digraph(n, arcs)


@st.composite
def tournaments(draw, min_n: int = 1, max_n: int = 7):
    n = draw(st.integers(min_n, max_n))
    arcs = [
        (u, v) if draw(st.booleans()) else (v, u)
        for u, v in itertools.combinations(range(n), 2)
    ]
    return make_tournament(n, arcs)

