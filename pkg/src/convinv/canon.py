"""Canonical labelling, isomorphism and automorphisms of orgraphs.

Partition refinement on out/in neighbour counts, then a depth-first
individualisation search over the first non-singleton cell. Automorphisms
discovered at equivalent leaves prune both sibling orbits and whole subtrees,
which keeps highly symmetric inputs (empty graphs, stars) cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .digraph import Digraph, _bits
from .errors import OrderCapExceeded

DEFAULT_CAP = 12


@dataclass(frozen=True)
class CanonicalForm:
    key: bytes
    perm: tuple[int, ...]  # perm[v] = canonical label of v

    def apply(self, D: Digraph) -> Digraph:
        return D.relabel(self.perm)


def _check_cap(D: Digraph, cap: int | None) -> None:
    if cap is not None and D.n > cap:
        raise OrderCapExceeded(f"order {D.n} exceeds cap {cap}")


def _refine(out, inn, cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                new.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                ov, iv = out[v], inn[v]
                sig = tuple([((ov & m).bit_count(), (iv & m).bit_count()) for m in masks])
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                new.append(c)
            else:
                for sig in sorted(groups):
                    new.append(groups[sig])
        if len(new) == len(cells):
            return cells
        cells = new


def _initial_cells(n: int, colors: Sequence[int] | None) -> list[list[int]]:
    if colors is None:
        return [list(range(n))] if n else []
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(colors[v], []).append(v)
    return [by_color[c] for c in sorted(by_color)]


class _Search:
    def __init__(self, D: Digraph):
        self.D = D
        self.best_code: tuple | None = None
        self.best_lab: list[int] | None = None
        self.best_path: list[int] | None = None
        self.autos: list[tuple[int, ...]] = []

    def leaf(self, cells, path) -> int | None:
        lab = [c[0] for c in cells]
        n = len(lab)
        pos = [0] * n
        for i, v in enumerate(lab):
            pos[v] = i
        out = self.D.out
        code = []
        for v in lab:
            row = 0
            for w in _bits(out[v]):
                row |= 1 << pos[w]
            code.append(row)
        code = tuple(code)
        if self.best_code is None or code > self.best_code:
            self.best_code, self.best_lab, self.best_path = code, lab, list(path)
            return None
        if code < self.best_code:
            return None
        gamma = [0] * n
        for a, b in zip(self.best_lab, lab):
            gamma[a] = b
        self.autos.append(tuple(gamma))
        j = 0
        while path[j] == self.best_path[j]:
            j += 1
        return j

    def _orbit_root(self, path, cell):
        fixing = [g for g in self.autos if all(g[p] == p for p in path)]
        parent = {v: v for v in cell}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in fixing:
            for v in cell:
                w = g[v]
                if w in parent:
                    a, b = find(v), find(w)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return find

    def run(self, cells, path) -> int | None:
        D = self.D
        cells = _refine(D.out, D.inn, cells)
        k = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if k is None:
            return self.leaf(cells, path)
        target = sorted(cells[k])
        explored: list[int] = []
        depth = len(path)
        for v in target:
            if explored and self.autos:
                find = self._orbit_root(path, target)
                roots = {find(u) for u in explored}
                if find(v) in roots:
                    continue
            rest = [w for w in cells[k] if w != v]
            child = cells[:k] + [[v], rest] + cells[k + 1:]
            path.append(v)
            r = self.run(child, path)
            path.pop()
            explored.append(v)
            if r is not None and r < depth:
                return r
        return None


def _search(D: Digraph, colors: Sequence[int] | None) -> _Search:
    s = _Search(D)
    s.run(_initial_cells(D.n, colors), [])
    return s


def canonical_form(
    D: Digraph, colors: Sequence[int] | None = None, cap: int | None = DEFAULT_CAP
) -> CanonicalForm:
    """Isomorphism-invariant key of ``D`` (optionally vertex-coloured).

    Two (coloured) digraphs get equal keys exactly when an isomorphism maps one
    onto the other preserving colours. ``perm`` relabels ``D`` into the keyed form.
    """
    _check_cap(D, cap)
    n = D.n
    if n == 0:
        return CanonicalForm(bytes([0]), ())
    s = _search(D, colors)
    perm = [0] * n
    for i, v in enumerate(s.best_lab):
        perm[v] = i
    width = (n + 7) // 8
    key = bytearray([n])
    if colors is not None:
        key.append(255)
        for v in s.best_lab:
            key += int(colors[v]).to_bytes(2, "big", signed=True)
    for row in s.best_code:
        key += row.to_bytes(width, "big")
    return CanonicalForm(bytes(key), tuple(perm))


def canonical_digraph(D: Digraph, cap: int | None = DEFAULT_CAP) -> Digraph:
    return canonical_form(D, cap=cap).apply(D)


def is_isomorphic(D1: Digraph, D2: Digraph, cap: int | None = DEFAULT_CAP) -> bool:
    if D1.n != D2.n or D1.size != D2.size:
        return False
    return canonical_form(D1, cap=cap).key == canonical_form(D2, cap=cap).key


def find_isomorphism(
    D1: Digraph,
    D2: Digraph,
    colors1: Sequence[int] | None = None,
    colors2: Sequence[int] | None = None,
    cap: int | None = DEFAULT_CAP,
) -> tuple[int, ...] | None:
    """A colour-preserving isomorphism ``phi`` with ``phi[v]`` in ``D2``, or None."""
    if D1.n != D2.n or D1.size != D2.size:
        return None
    c1 = canonical_form(D1, colors1, cap)
    c2 = canonical_form(D2, colors2, cap)
    if c1.key != c2.key:
        return None
    inv2 = [0] * D2.n
    for v, i in enumerate(c2.perm):
        inv2[i] = v
    return tuple(inv2[c1.perm[v]] for v in range(D1.n))


@dataclass(frozen=True)
class AutomorphismGroup:
    count: int
    generators: tuple[tuple[int, ...], ...]
    base: tuple[int, ...]


def automorphisms(
    D: Digraph, colors: Sequence[int] | None = None, cap: int | None = DEFAULT_CAP
) -> AutomorphismGroup:
    """Order and a strong generating set of the (colour-preserving) automorphism group.

    Walks a stabiliser chain: at each level the orbit of the base point is the
    set of cell-mates admitting a colour-preserving isomorphism, and the group
    order is the product of these orbit lengths.
    """
    _check_cap(D, cap)
    n = D.n
    col = list(colors) if colors is not None else [0] * n
    count = 1
    gens: list[tuple[int, ...]] = []
    base: list[int] = []
    fresh = max(col, default=0) + 1
    while True:
        cells = _refine(D.out, D.inn, _initial_cells(n, col))
        cell = next((c for c in cells if len(c) > 1), None)
        if cell is None:
            break
        b = min(cell)
        cb = col.copy()
        cb[b] = fresh
        ref = canonical_form(D, cb, cap=None)
        orbit = 1
        for w in sorted(cell):
            if w == b:
                continue
            cw = col.copy()
            cw[w] = fresh
            cf = canonical_form(D, cw, cap=None)
            if cf.key != ref.key:
                continue
            orbit += 1
            inv = [0] * n
            for v, i in enumerate(cf.perm):
                inv[i] = v
            gens.append(tuple(inv[ref.perm[v]] for v in range(n)))
        count *= orbit
        base.append(b)
        col = cb
        fresh += 1
    return AutomorphismGroup(count, tuple(gens), tuple(base))


def transitive_pairs(D: Digraph, cap: int | None = DEFAULT_CAP) -> list[tuple[int, int]]:
    """Non-adjacent pairs ``(u, v)``, ``u < v``, exchanged by some automorphism."""
    _check_cap(D, cap)
    n = D.n
    pairs = []
    for u in range(n):
        for v in range(u + 1, n):
            if D.adjacent(u, v):
                continue
            if D.out_degree(u) != D.out_degree(v) or D.in_degree(u) != D.in_degree(v):
                continue
            c1 = [0] * n
            c1[u], c1[v] = 1, 2
            c2 = [0] * n
            c2[v], c2[u] = 1, 2
            if canonical_form(D, c1, cap=None).key == canonical_form(D, c2, cap=None).key:
                pairs.append((u, v))
    return pairs
