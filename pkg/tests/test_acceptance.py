"""Acceptance gate: one PASS/FAIL line per criterion, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from convinv.canon import automorphisms, canonical_form, is_isomorphic  # noqa: E402
from convinv.counting import (  # noqa: E402
    copies,
    copy_count,
    exact_expected_ism,
    expected_ism_formula,
    mc_expected_ism,
)
from convinv.digraph import Digraph, converse, make_digraph  # noqa: E402
from convinv.generation import (  # noqa: E402
    Graph,
    all_orientations,
    bridge_mirror,
    complete_graph,
    cycle_graph,
    double_star_graph,
    double_star_orientation,
    mirrored_in_star,
    flip_arc,
    labeled_tournaments,
    make_rng,
    nonisomorphic_orgraphs,
    nonisomorphic_tournaments,
    path_graph,
    random_tournament,
    star_graph,
    star_orientation,
    transitive_tournament,
)
from convinv.invariance import (  # noqa: E402
    INVARIANT,
    NOT_INVARIANT,
    classify_double_star,
    decide,
    is_path_mirror_tower,
    witness_for_orientation,
)
from convinv.polynomial import (  # noqa: E402
    c3_identity_holds,
    coefficient_closed_form,
    degree_polynomial,
    odd_coefficients_vanish,
    polynomials_match,
    source_sink_balance,
    top_odd_checks,
)
from oracles import burnside_tournament_count  # noqa: E402

WORKERS = os.cpu_count() or 1
ARC = make_digraph(2, [(0, 1)])


class Failure(AssertionError):
    pass


def check(cond: bool, msg: str) -> None:
    if not cond:
        raise Failure(msg)


def _line(k: int, ok: bool, elapsed: float, limit: float, detail: str) -> str:
    status = "PASS" if ok else "FAIL"
    return f"criterion {k:>2}: {status}  {elapsed:8.2f}s (limit {limit:g}s)  {detail}"


def evaluate(k: int, limit: float, body: Callable[[], str]) -> tuple[bool, str]:
    start = time.perf_counter()
    try:
        detail = body()
        ok = True
    except Failure as exc:
        detail, ok = str(exc), False
    elapsed = time.perf_counter() - start
    if ok and elapsed >= limit:
        ok, detail = False, f"{detail}; too slow"
    return ok, _line(k, ok, elapsed, limit, detail)


# ---------------------------------------------------------------------------


def criterion_1() -> str:
    D = double_star_orientation(2, 0, 2, 2)
    T = flip_arc(transitive_tournament(6), 0, 2)
    a, b = copies(D, T).copies, copies(converse(D), T).copies
    check((a, b) == (3, 6), f"f_T(D), f_T(-D) = {a}, {b}")
    return "f_T(D) = 3, f_T(-D) = 6"


def criterion_2() -> str:
    n_classes = 0
    for G in [path_graph(n) for n in range(3, 7)] + [cycle_graph(n) for n in range(3, 7)]:
        for D in all_orientations(G, "up_to_isomorphism"):
            v = decide(D, workers=WORKERS)
            check(v.status == INVARIANT, f"{D!r} decided {v.status}")
            n_classes += 1
    return f"{n_classes} orientation classes of P3..P6, C3..C6 all Invariant"


def criterion_3() -> str:
    reps = list(all_orientations(star_graph(3), "up_to_isomorphism"))
    check(len(reps) == 4, f"{len(reps)} orientation classes of K1,3")
    for D in reps:
        v = decide(D, workers=WORKERS)
        check(v.status == NOT_INVARIANT, f"{D!r} decided Invariant")
        check(v.witness.n == 4 and v.recheck(D), "witness does not separate the counts")
    v = decide(star_orientation(4, 2), workers=WORKERS)
    check(v.status == INVARIANT and v.classes_checked == 12, "K^2_{1,4} not Invariant over 12")
    check(decide(star_orientation(4, 1), workers=WORKERS).status == NOT_INVARIANT, "K^1_{1,4}")
    return "K1,3 classes NotInvariant with witnesses; K^2_{1,4} Invariant (12); K^1_{1,4} NotInvariant"


def criterion_4() -> str:
    F = mirrored_in_star()
    check(not is_isomorphic(F, converse(F)), "mirrored in-star is self-converse")
    v = decide(F, workers=WORKERS)
    check(v.status == INVARIANT and v.classes_checked == 56, f"{v.status} over {v.classes_checked}")
    checked = 0
    for a in range(1, 6):
        for b in range(a, 6 - a):
            G = double_star_graph(a, b)
            if G.n > 7 or G.is_path():
                continue
            for D in all_orientations(G, "up_to_isomorphism"):
                got, want = classify_double_star(D), decide(D, workers=WORKERS).status
                check(got == want, f"classifier {got} vs decide {want} on {D!r}")
                checked += 1
    return f"mirrored in-star Invariant over 56; classifier agrees on {checked} double-star classes"


def criterion_5() -> str:
    swept = invariant = 0
    for n in range(1, 6):
        for D in nonisomorphic_orgraphs(n):
            swept += 1
            if decide(D, workers=1).status != INVARIANT:
                continue
            invariant += 1
            check(odd_coefficients_vanish(D), f"odd coefficient on {D!r}")
            check(source_sink_balance(D), f"source/sink imbalance on {D!r}")
            check(c3_identity_holds(D), f"cubic identity fails on {D!r}")
            if D.size:
                check(top_odd_checks(D).passed, f"top odd check fails on {D!r}")
    return f"{invariant} Invariant among {swept} orgraph classes, no necessary condition violated"


def criterion_6() -> str:
    worst = 0.0
    for D in [ARC, star_orientation(2, 2), star_orientation(3, 3)]:
        for p in [Fraction(0), Fraction(1, 4), Fraction(-3, 10)]:
            exact = expected_ism_formula(D, p)
            mean, se = mc_expected_ism(D, p, 10**5)
            dev = abs(mean - float(exact))
            if se == 0:
                check(dev == 0, f"zero-variance estimate {mean} != {exact}")
            else:
                check(dev <= 3 * se, f"{D!r} p={p}: |{mean} - {float(exact)}| > 3 * {se}")
                worst = max(worst, dev / se)
    exact_checks = 0
    for n in range(1, 5):
        for D in nonisomorphic_orgraphs(n):
            for p in [Fraction(0), Fraction(1, 4), Fraction(-1, 4)]:
                check(exact_expected_ism(D, p) == expected_ism_formula(D, p), f"{D!r} p={p}")
                exact_checks += 1
    return f"9 Monte Carlo runs within {worst:.2f} SE; {exact_checks} exact averages equal the formula"


def criterion_7() -> str:
    w = witness_for_orientation(star_graph(3))
    check(w.branch == "tree", "K1,3 not handled by the tree branch")
    check((w.source_sum, w.sink_sum) == (2, 4), f"sums {w.source_sum}, {w.sink_sum}")
    check(w.tournament is not None and w.f_D != w.f_conv, "no separating tournament")
    check(copy_count(w.digraph, w.tournament) == w.f_D, "recount disagrees")
    k = witness_for_orientation(complete_graph(4))
    fD, fc = copy_count(k.digraph, k.tournament), copy_count(converse(k.digraph), k.tournament)
    check(fD >= 1 and fc == 0, f"K4: f_T(D) = {fD}, f_T(-D) = {fc}")
    return f"K1,3: 2 < 4 with witness ({w.f_D} vs {w.f_conv}); K4: f_T(D) = {fD}, f_T(-D) = 0"


def _random_orgraph(n: int, rng) -> Digraph:
    arcs = []
    for u, v in itertools.combinations(range(n), 2):
        c = int(rng.integers(0, 3))
        if c == 1:
            arcs.append((u, v))
        elif c == 2:
            arcs.append((v, u))
    return make_digraph(n, arcs)


def criterion_8() -> str:
    rng = make_rng(8)
    subsets = list(itertools.combinations(range(8), 4))
    for _ in range(100):
        D = _random_orgraph(4, rng)
        T = random_tournament(8, rng)
        aut = automorphisms(D).count
        total = copy_count(D, T, aut)
        parts = sum(copy_count(D, T.induced(S), aut) for S in subsets)
        check(total == parts, f"{total} != {parts} for {D!r}")
    counts = [len(list(nonisomorphic_tournaments(n))) for n in range(1, 9)]
    check(counts == [1, 1, 2, 4, 12, 56, 456, 6880], f"class counts {counts}")
    for n in range(1, 7):
        labelled = len({canonical_form(T).key for T in labeled_tournaments(n)})
        check(labelled == counts[n - 1] == burnside_tournament_count(n), f"n={n}: oracle {labelled}")
    return "100 decompositions hold; counts 1,1,2,4,12,56,456,6880 (n<=6 matched by both oracles)"


def criterion_9() -> str:
    swept = 0
    for n in range(1, 6):
        for D in nonisomorphic_orgraphs(n):
            swept += 1
            check(odd_coefficients_vanish(D) == polynomials_match(D), f"{D!r}")
            c3 = coefficient_closed_form(D, 3)
            check(c3 == degree_polynomial(D)[3], f"closed form c3 on {D!r}")
            check((c3 == 0) == c3_identity_holds(D), f"c3 equivalence on {D!r}")
    return f"both equivalences hold on {swept} orgraph classes"


def _arc_towers(max_order: int) -> dict[int, list[Digraph]]:
    levels = {2: [ARC]}
    order = 2
    while order * 2 <= max_order:
        found: dict[bytes, Digraph] = {}
        for D in levels[order]:
            for u in range(D.n):
                M = bridge_mirror(D, u)
                found.setdefault(canonical_form(M).key, M)
        order *= 2
        levels[order] = list(found.values())
    return levels


def criterion_10() -> str:
    towers = _arc_towers(8)
    decided = 0
    for order in (4, 8):
        for D in towers[order]:
            check(not is_isomorphic(D, converse(D)), f"{D!r} is self-converse")
            ok, trace = is_path_mirror_tower(D)
            check(ok and trace.verify(), f"no verified tower trace for {D!r}")
            check(trace.base.n == 2 and trace.depth == order.bit_length() - 2, "trace depth")
            v = decide(D, workers=WORKERS)
            check(v.status == INVARIANT, f"{D!r} decided {v.status}")
            decided += 1
    n8 = len(towers[8])
    return f"{decided} towers ({n8} of order 8, 6880 classes each) Invariant, none self-converse"


CRITERIA = [
    (1, 1, criterion_1),
    (2, 60, criterion_2),
    (3, 10, criterion_3),
    (4, 300, criterion_4),
    (5, 600, criterion_5),
    (6, 120, criterion_6),
    (7, 5, criterion_7),
    (8, 600, criterion_8),
    (9, 600, criterion_9),
    (10, 1800, criterion_10),
]


@pytest.mark.parametrize("k, limit, body", CRITERIA, ids=[f"criterion_{k}" for k, _, _ in CRITERIA])
def test_criterion(k, limit, body, capsys):
    ok, line = evaluate(k, limit, body)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(k, limit, body) for k, limit, body in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
