"""Counting arc-preserving embeddings of an orgraph into a digraph.

Embeddings are injective vertex maps sending arcs to arcs; arcs of the host
outside the image are ignored (subdigraph, not induced, semantics).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, perm

import numpy as np

from .canon import automorphisms
from .digraph import Digraph, Tournament
from .errors import BiasOutOfRange, OrderCapExceeded
from .generation import DEFAULT_SEED, make_rng

ISM_CAP = 9


class EmbeddingPlan:
    """Search order and per-step arc constraints for embedding a fixed pattern.

    Vertices are placed greedily by number of already placed neighbours
    (ties: larger degree, then smaller index). Isolated vertices are not
    searched at all; they contribute a falling factorial at the end.
    """

    def __init__(self, D: Digraph, root: int | None = None):
        self.D = D
        n = D.n
        isolated = [v for v in range(n) if D.degree(v) == 0 and v != root]
        active = [v for v in range(n) if v not in isolated]
        order: list[int] = []
        placed = 0
        remaining = set(active)
        if root is not None:
            order.append(root)
            placed |= 1 << root
            remaining.discard(root)
        while remaining:
            v = max(
                remaining,
                key=lambda w: ((D.neighbors(w) & placed).bit_count(), D.degree(w), -w),
            )
            order.append(v)
            placed |= 1 << v
            remaining.discard(v)
        pos = {v: i for i, v in enumerate(order)}
        self.order = order
        self.n_isolated = len(isolated)
        # preds: earlier vertices with an arc into this one; succs: arcs out of it
        self.preds = [[pos[w] for w in range(n) if D.has_arc(w, v) and w in pos and pos[w] < i]
                      for i, v in enumerate(order)]
        self.succs = [[pos[w] for w in range(n) if D.has_arc(v, w) and w in pos and pos[w] < i]
                      for i, v in enumerate(order)]
        self.need = [(D.out_degree(v), D.in_degree(v)) for v in order]

    def count(self, H: Digraph, root_image: int | None = None) -> int:
        D = self.D
        k = len(self.order)
        if D.n > H.n:
            return 0
        hn = H.n
        hout, hin = H.out, H.inn
        allowed = []
        for a, b in self.need:
            m = 0
            for w in range(hn):
                if hout[w].bit_count() >= a and hin[w].bit_count() >= b:
                    m |= 1 << w
            allowed.append(m)
        if root_image is not None:
            allowed[0] &= 1 << root_image
        tail = self.n_isolated
        if k == 0:
            return perm(hn, tail)
        img = [0] * k
        preds, succs = self.preds, self.succs
        last = k - 1

        def step(i: int, used: int) -> int:
            cand = allowed[i] & ~used
            for j in preds[i]:
                cand &= hout[img[j]]
            for j in succs[i]:
                cand &= hin[img[j]]
            if i == last:
                return cand.bit_count()
            total = 0
            while cand:
                low = cand & -cand
                img[i] = low.bit_length() - 1
                total += step(i + 1, used | low)
                cand ^= low
            return total

        return step(0, 0) * perm(hn - k, tail)


def _check(D: Digraph, cap: int | None) -> None:
    if cap is not None and D.n > cap:
        raise OrderCapExceeded(f"pattern order {D.n} exceeds cap {cap}")


def ism(D: Digraph, H: Digraph, cap: int | None = ISM_CAP) -> int:
    """Number of injective maps ``phi`` with ``(u,v)`` in ``D`` implying ``(phi u, phi v)`` in ``H``."""
    _check(D, cap)
    return EmbeddingPlan(D).count(H)


def ism_rooted(D: Digraph, u: int, H: Digraph, v: int, cap: int | None = ISM_CAP) -> int:
    """As :func:`ism`, restricted to maps sending ``u`` to ``v``."""
    _check(D, cap)
    return EmbeddingPlan(D, root=u).count(H, root_image=v)


@dataclass(frozen=True)
class CountReport:
    ism: int
    aut: int
    copies: int
    rooted: dict[tuple[int, int], int] | None = None

    def __post_init__(self):
        if self.copies * self.aut != self.ism:
            raise ArithmeticError("aut does not divide ism")


def copies(D: Digraph, T: Digraph, rooted: bool = False, cap: int | None = ISM_CAP) -> CountReport:
    """``f_T(D)``: the number of subdigraphs of ``T`` isomorphic to ``D``."""
    _check(D, cap)
    total = ism(D, T, cap=None)
    aut = automorphisms(D, cap=None).count
    breakdown = None
    if rooted:
        breakdown = {
            (u, v): ism_rooted(D, u, T, v, cap=None) for u in range(D.n) for v in range(T.n)
        }
    return CountReport(total, aut, total // aut, breakdown)


def copy_count(D: Digraph, T: Digraph, aut: int | None = None) -> int:
    if aut is None:
        aut = automorphisms(D, cap=None).count
    return ism(D, T, cap=None) // aut


# ---------------------------------------------------------------------------
# biased random extension: exact expectation and Monte Carlo


def as_fraction(p) -> Fraction:
    if isinstance(p, Fraction):
        return p
    if isinstance(p, float):
        return Fraction(str(p))
    return Fraction(p)


def _check_bias(p: Fraction) -> None:
    if not (Fraction(-1, 2) <= p <= Fraction(1, 2)):
        raise BiasOutOfRange(f"bias {p} outside [-1/2, 1/2]")


def expected_ism_formula(D: Digraph, p) -> Fraction:
    """Exact expected ``ism(D, T_p)`` where ``T_p`` extends a uniform tournament on
    ``|D| - 1`` vertices by one vertex beating each old vertex w.p. ``1/2 + p``."""
    p = as_fraction(p)
    _check_bias(p)
    if D.n == 0:
        raise ValueError("pattern must have at least one vertex")
    s = sum(
        (1 + 2 * p) ** D.out_degree(u) * (1 - 2 * p) ** D.in_degree(u) for u in range(D.n)
    )
    return factorial(D.n - 1) * Fraction(1, 2**D.size) * s


def exact_expected_ism(D: Digraph, p) -> Fraction:
    """Average of ``ism(D, T_p)`` over the whole finite probability space."""
    p = as_fraction(p)
    _check_bias(p)
    m = D.n - 1
    plan = EmbeddingPlan(D)
    pairs = list(itertools.combinations(range(m), 2))
    up, down = Fraction(1, 2) + p, Fraction(1, 2) - p
    total = Fraction(0)
    for base in range(1 << len(pairs)):
        out = [0] * (m + 1)
        for k, (i, j) in enumerate(pairs):
            if base >> k & 1:
                out[i] |= 1 << j
            else:
                out[j] |= 1 << i
        for beats in range(1 << m):
            rows = list(out)
            rows[m] = beats
            for v in range(m):
                if not beats >> v & 1:
                    rows[v] |= 1 << m
            wins = beats.bit_count()
            weight = up**wins * down ** (m - wins)
            if weight:
                total += weight * plan.count(Tournament(m + 1, rows))
    return total / 2 ** len(pairs)


def _sample_codes(m: int, p: float, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Encode each sampled ``T_p`` as an integer: base pair bits, then new-vertex bits."""
    npairs = m * (m - 1) // 2
    base = rng.integers(0, 2, size=(samples, npairs), dtype=np.int64)
    star = (rng.random((samples, m)) < 0.5 + p).astype(np.int64)
    bits = np.concatenate([base, star], axis=1)
    weights = np.left_shift(np.int64(1), np.arange(bits.shape[1], dtype=np.int64))
    return bits @ weights


def _decode(code: int, m: int) -> Tournament:
    pairs = list(itertools.combinations(range(m), 2))
    out = [0] * (m + 1)
    for k, (i, j) in enumerate(pairs):
        if code >> k & 1:
            out[i] |= 1 << j
        else:
            out[j] |= 1 << i
    beats = code >> len(pairs)
    out[m] = beats
    for v in range(m):
        if not beats >> v & 1:
            out[v] |= 1 << m
    return Tournament(m + 1, out)


def mc_expected_ism(D: Digraph, p, samples: int, seed=DEFAULT_SEED) -> tuple[float, float]:
    """Monte Carlo mean and standard error of ``ism(D, T_p)``.

    Samples are drawn in bulk and grouped by labelled outcome, so each distinct
    host tournament is counted once.
    """
    pf = as_fraction(p)
    _check_bias(pf)
    if samples < 1:
        raise ValueError("need at least one sample")
    m = D.n - 1
    if m * (m - 1) // 2 + m > 62:
        raise OrderCapExceeded("pattern too large for bulk sampling")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    codes = _sample_codes(m, float(pf), samples, rng)
    uniq, counts = np.unique(codes, return_counts=True)
    plan = EmbeddingPlan(D)
    values = np.array([plan.count(_decode(int(c), m)) for c in uniq], dtype=float)
    mean = float(np.dot(values, counts) / samples)
    if samples == 1:
        return mean, 0.0
    var = float(np.dot((values - mean) ** 2, counts) / (samples - 1))
    return mean, (var / samples) ** 0.5
