from __future__ import annotations

import pytest

from convinv.canon import is_isomorphic
from convinv.counting import copy_count
from convinv.digraph import converse, make_digraph
from convinv.errors import (
    AlreadyAdjacent,
    DegreeTooSmall,
    Disconnected,
    MaxDegreeTooSmall,
    NotADoubleStar,
    NotATree,
    NotTransitivePair,
    OrderCapExceeded,
)
from convinv.generation import (
    Graph,
    all_orientations,
    bridge_mirror,
    complete_graph,
    cycle_graph,
    dominant_source_over_cycle,
    double_star_graph,
    double_star_orientation,
    mirrored_in_star,
    path_graph,
    spider_graph,
    star_graph,
    star_orientation,
    transitive_tournament,
)
from convinv.invariance import (
    INVARIANT,
    NOT_INVARIANT,
    add_transitive_arc,
    classify_double_star,
    classify_star,
    conjecture_probe,
    decide,
    is_double_star,
    is_path_mirror_tower,
    mirror_witness,
    witness_for_orientation,
)

ARC = make_digraph(2, [(0, 1)])
MIRRORED = mirrored_in_star()


def test_directed_path_is_invariant():
    v = decide(make_digraph(4, [(0, 1), (1, 2), (2, 3)]))
    assert v.status == INVARIANT and v.classes_checked == 4
    assert v.witness is None


def test_out_star_fails_on_dominant_source():
    D = star_orientation(3, 3)
    v = decide(D)
    assert v.status == NOT_INVARIANT
    assert is_isomorphic(v.witness, dominant_source_over_cycle())
    assert (v.f_D, v.f_conv, v.fast_fail) == (1, 0, 3)
    assert v.recheck(D)


def test_mirrored_in_star_invariant_yet_not_self_converse():
    v = decide(MIRRORED)
    assert v.status == INVARIANT and v.classes_checked == 56
    assert v.fast_fail is None
    assert not is_isomorphic(MIRRORED, converse(MIRRORED))
    assert v.recheck(MIRRORED)


def test_witness_independent_of_worker_count():
    D = double_star_orientation(2, 0, 2, 2)
    a = decide(D, workers=1)
    b = decide(D, workers=3)
    assert a.status == b.status == NOT_INVARIANT
    assert a.witness_index == b.witness_index
    assert a.witness == b.witness


def test_decide_cap():
    with pytest.raises(OrderCapExceeded):
        decide(make_digraph(9, []))


def test_self_converse_is_invariant():
    for D in all_orientations(star_graph(4), "up_to_isomorphism"):
        if is_isomorphic(D, converse(D)):
            assert decide(D).invariant


def test_add_transitive_arc():
    two_arcs = make_digraph(4, [(0, 1), (2, 3)])
    D = add_transitive_arc(two_arcs, 0, 2)
    assert D.has_arc(0, 2)
    assert decide(two_arcs).status == decide(D).status
    T = transitive_tournament(6)
    assert copy_count(two_arcs, T) == copy_count(D, T)
    with pytest.raises(AlreadyAdjacent):
        add_transitive_arc(two_arcs, 0, 1)
    with pytest.raises(NotTransitivePair):
        add_transitive_arc(two_arcs, 0, 3)


def test_add_transitive_arc_on_five_vertex_example():
    # x -> u, u' -> u, x -> v, v' -> v with u, v swapped by an automorphism
    x, u, v, up, vp = range(5)
    D = make_digraph(5, [(x, u), (up, u), (x, v), (vp, v)])
    E = add_transitive_arc(D, u, v)
    assert E.size == 5
    for T in [transitive_tournament(5), dominant_source_over_cycle()]:
        assert copy_count(D, T) == copy_count(E, T)


def test_bridge_mirror_examples():
    assert is_isomorphic(bridge_mirror(star_orientation(2, 0), 0), MIRRORED)
    assert bridge_mirror(make_digraph(1, []), 0) == ARC
    zigzag = bridge_mirror(ARC, 1)
    assert decide(zigzag).invariant


def test_mirror_witness_is_invariant_but_not_self_converse():
    D = mirror_witness(3)
    assert D.max_degree == 3
    assert not is_isomorphic(D, converse(D))
    assert decide(D).invariant


def test_tower_recognition():
    ok, trace = is_path_mirror_tower(MIRRORED)
    assert ok and trace.depth == 1 and trace.verify()
    assert Graph.underlying(trace.base).is_path()
    assert is_path_mirror_tower(star_orientation(3, 3)) == (False, None)
    double = bridge_mirror(bridge_mirror(ARC, 1), 1)
    ok, trace = is_path_mirror_tower(double)
    assert ok and trace.depth == 2 and trace.verify()
    assert trace.base.n == 2
    # mirroring at an end vertex gives a path, still split down to the arc
    ok, trace = is_path_mirror_tower(bridge_mirror(bridge_mirror(ARC, 1), 0))
    assert ok and trace.depth == 2 and trace.verify()
    ok, trace = is_path_mirror_tower(make_digraph(4, [(0, 1), (1, 2), (2, 3)]))
    assert ok and trace.depth == 0 and trace.verify()


def test_classify_star():
    assert all(classify_star(3, i) == NOT_INVARIANT for i in range(4))
    assert classify_star(4, 2) == INVARIANT
    assert classify_star(4, 1) == NOT_INVARIANT
    with pytest.raises(DegreeTooSmall):
        classify_star(2, 1)


@pytest.mark.parametrize("d", [3, 4])
def test_classify_star_agrees_with_decide(d):
    for i in range(d + 1):
        assert classify_star(d, i) == decide(star_orientation(d, i)).status


def test_classify_double_star():
    assert classify_double_star(MIRRORED) == INVARIANT
    assert classify_double_star(converse(MIRRORED)) == INVARIANT
    assert classify_double_star(double_star_orientation(2, 0, 2, 2)) == NOT_INVARIANT
    sym = double_star_orientation(2, 1, 1, 2)
    assert is_isomorphic(sym, converse(sym))
    assert classify_double_star(sym) == INVARIANT
    with pytest.raises(NotADoubleStar):
        classify_double_star(star_orientation(3, 1))


def test_is_double_star():
    assert is_double_star(double_star_graph(2, 2))
    assert not is_double_star(star_graph(4))


def test_witness_for_orientation():
    w = witness_for_orientation(star_graph(3))
    assert w.branch == "tree"
    assert (w.source_sum, w.sink_sum) == (2, 4)
    assert w.tournament is not None and w.f_D != w.f_conv
    k4 = witness_for_orientation(complete_graph(4))
    assert k4.branch == "cycle"
    assert k4.f_D >= 1 and k4.f_conv == 0
    c = witness_for_orientation(Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]))
    assert c.branch == "cycle" and c.f_D >= 1 and c.f_conv == 0
    with pytest.raises(MaxDegreeTooSmall):
        witness_for_orientation(path_graph(5))
    with pytest.raises(Disconnected):
        witness_for_orientation(Graph(5, [(0, 1), (0, 2), (0, 3)]))


def test_probe_star():
    rep = conjecture_probe(star_graph(3))
    assert len(rep.entries) == 4
    assert all(e.status == NOT_INVARIANT for e in rep.entries)
    assert rep.consistent


def test_probe_mirrored_in_star_tree():
    rep = conjecture_probe(Graph.underlying(MIRRORED))
    assert rep.consistent
    odd_ones = [e for e in rep.invariant_entries if not e.self_converse]
    assert len(odd_ones) == 2
    assert all(
        is_isomorphic(e.digraph, MIRRORED) or is_isomorphic(e.digraph, converse(MIRRORED))
        for e in odd_ones
    )


def test_probe_rejects_non_trees():
    with pytest.raises(NotATree):
        conjecture_probe(cycle_graph(4))
    with pytest.raises(MaxDegreeTooSmall):
        conjecture_probe(path_graph(4))


@pytest.mark.slow
def test_probe_spider():
    rep = conjecture_probe(spider_graph([2, 2, 2]))
    assert rep.entries
    assert isinstance(rep.consistent, bool)
