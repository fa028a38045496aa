"""Converse invariance of oriented graphs in tournaments."""

from __future__ import annotations

__version__ = "0.1.0"

from .canon import automorphisms, canonical_form, is_isomorphic
from .counting import copies, copy_count, expected_ism_formula, ism, mc_expected_ism
from .digraph import Digraph, Tournament, converse, degree_sequence, make_digraph, make_tournament
from .errors import ConvinvError
from .generation import (
    Graph,
    bridge_mirror,
    double_star_orientation,
    mirrored_in_star,
    flip_arc,
    nonisomorphic_orgraphs,
    nonisomorphic_tournaments,
    star_orientation,
    transitive_tournament,
)
from .invariance import (
    InvarianceVerdict,
    classify_double_star,
    classify_star,
    conjecture_probe,
    decide,
    is_path_mirror_tower,
    mirror_witness,
    witness_for_orientation,
)
from .io import emit_digraph6, parse_digraph, parse_digraph6
from .polynomial import IntPolynomial, degree_polynomial, summarize

__all__ = [
    "Digraph",
    "Graph",
    "IntPolynomial",
    "InvarianceVerdict",
    "ConvinvError",
    "Tournament",
    "automorphisms",
    "bridge_mirror",
    "canonical_form",
    "classify_double_star",
    "classify_star",
    "conjecture_probe",
    "converse",
    "copies",
    "copy_count",
    "decide",
    "degree_polynomial",
    "degree_sequence",
    "double_star_orientation",
    "emit_digraph6",
    "expected_ism_formula",
    "mirrored_in_star",
    "flip_arc",
    "is_isomorphic",
    "is_path_mirror_tower",
    "ism",
    "make_digraph",
    "make_tournament",
    "mc_expected_ism",
    "mirror_witness",
    "nonisomorphic_orgraphs",
    "nonisomorphic_tournaments",
    "parse_digraph",
    "parse_digraph6",
    "star_orientation",
    "summarize",
    "transitive_tournament",
    "witness_for_orientation",
]
