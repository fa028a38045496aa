"""Command-line interface: ``convinv <command> ...``.

Exit status: 0 on success, 1 when a cross-check fails (classifier against
the exhaustive decision, Monte Carlo against the exact expectation), 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import __version__
from .canon import canonical_form, is_isomorphic
from .counting import copies, expected_ism_formula, mc_expected_ism
from .digraph import Digraph, Tournament, converse
from .errors import ConvinvError
from .generation import (
    DEFAULT_SEED,
    Graph,
    circulant_tournament,
    complete_graph,
    cube_graph,
    cycle_graph,
    double_star_graph,
    double_star_orientation,
    mirrored_in_star,
    flip_arc,
    nonisomorphic_tournaments,
    path_graph,
    random_tournament,
    spider_graph,
    star_graph,
    star_orientation,
    transitive_tournament,
)
from .invariance import (
    INVARIANT,
    bridge_mirror,
    classify_double_star,
    classify_star,
    conjecture_probe,
    decide,
    is_path_mirror_tower,
    mirror_witness,
    witness_for_orientation,
)
from .io import emit_digraph6, parse_digraph, read_text
from .polynomial import summarize

FORMAT_VERSION = 1


class UsageError(ConvinvError):
    pass


@dataclass
class RunConfig:
    cap: int = 8
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)
    seed: int = DEFAULT_SEED
    output: str = "json"
    input_format: str | None = None

    def __post_init__(self):
        if self.cap < 1 or self.workers < 1:
            raise UsageError("cap and workers must be positive")

    def echo(self) -> dict:
        return {
            "cap": self.cap,
            "workers": self.workers,
            "seed": self.seed,
            "format": self.output,
            "input_format": self.input_format or "auto",
        }


@dataclass
class Report:
    command: str
    inputs: list[dict] = field(default_factory=list)
    result: dict = field(default_factory=dict)
    anchors: list[str] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)  # csv rows
    lines: list[str] = field(default_factory=list)  # text output
    exit_code: int = 0
    timing: float = 0.0

    def to_json(self, config: RunConfig) -> str:
        doc = {
            "format": FORMAT_VERSION,
            "version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "anchors": self.anchors,
            "config": config.echo(),
            "timing_seconds": round(self.timing, 6),
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        rows = self.rows or [_flatten(self.result)]
        buf = io.StringIO()
        cols: list[str] = []
        for r in rows:
            cols += [k for k in r if k not in cols]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        return buf.getvalue()

    def to_text(self) -> str:
        if self.lines:
            return "\n".join(self.lines) + "\n"
        return "".join(f"{k}: {v}\n" for k, v in _flatten(self.result).items())


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        name = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, name + "."))
        elif isinstance(v, list):
            out[name] = json.dumps(v)
        else:
            out[name] = v
    return out


def describe(D: Digraph, role: str = "D") -> dict:
    return {
        "role": role,
        "digraph6": emit_digraph6(D),
        "canonical_key": canonical_form(D, cap=None).key.hex(),
        "order": D.n,
        "arcs": D.size,
    }


# -- anchors ----------------------------------------------------------------


def _anchors_for(D: Digraph) -> list[str]:
    tags = ["converse-invariance-definition", "degree-polynomial-necessity"]
    G = Graph.underlying(D)
    if G.max_degree <= 2:
        tags.append("max-degree-two-orientations-invariant")
    mirrored = mirrored_in_star()
    if D.n == mirrored.n and (is_isomorphic(D, mirrored, cap=None) or is_isomorphic(converse(D), mirrored, cap=None)):
        tags.append("double-star-characterization")
        tags.append("bridge-mirror-invariance")
    elif G.is_tree() and G.n >= 2 and G.diameter() == 2 and G.max_degree >= 3:
        tags.append("star-characterization")
    elif G.is_tree() and G.n >= 2 and G.diameter() == 3 and not G.is_path():
        tags.append("double-star-characterization")
    if G.is_regular() and G.n and G.max_degree >= 1:
        tags.append("regular-degree-sequence")
    return tags


# -- graph specs --------------------------------------------------------------


def parse_graph_spec(spec: str, config: RunConfig) -> Graph:
    """``path:n``, ``cycle:n``, ``star:d``, ``complete:n``, ``double-star:a,b``,
    ``spider:l1,l2,...``, ``cube``, or a file whose digraph's underlying graph is used."""
    name, _, arg = spec.partition(":")
    nums = [int(x) for x in arg.split(",") if x.strip()] if arg else []
    builders: dict[str, Callable[..., Graph]] = {
        "path": path_graph,
        "cycle": cycle_graph,
        "star": star_graph,
        "complete": complete_graph,
        "double-star": double_star_graph,
    }
    if name in builders:
        try:
            return builders[name](*nums)
        except TypeError as exc:
            raise UsageError(f"bad parameters for {name}: {arg!r}") from exc
    if name == "spider":
        return spider_graph(nums)
    if name == "cube":
        return cube_graph()
    if os.path.exists(spec) or spec == "-":
        return Graph.underlying(parse_digraph(read_text(spec), config.input_format))
    raise UsageError(f"unknown graph spec {spec!r}")


def _load(path: str | None, config: RunConfig, flag: str) -> Digraph:
    if not path:
        raise UsageError(f"missing {flag}")
    return parse_digraph(read_text(path), config.input_format)


# -- commands -----------------------------------------------------------------


def _verdict_dict(v) -> dict:
    d = {
        "status": v.status,
        "order": v.order,
        "classes_checked": v.classes_checked,
        "fast_fail": v.fast_fail,
    }
    if not v.invariant:
        d.update(
            witness=emit_digraph6(v.witness),
            witness_index=v.witness_index,
            f_D=v.f_D,
            f_conv=v.f_conv,
        )
    return d


def cmd_decide(args, config: RunConfig) -> Report:
    D = _load(args.inp, config, "--in")
    v = decide(D, workers=config.workers, cap=config.cap)
    r = Report("decide", [describe(D)])
    r.result = _verdict_dict(v)
    r.result["self_converse"] = is_isomorphic(D, converse(D), cap=None)
    r.anchors = _anchors_for(D)
    r.rows = [{"digraph6": emit_digraph6(D), **_flatten(r.result)}]
    return r


def cmd_poly(args, config: RunConfig) -> Report:
    D = _load(args.inp, config, "--in")
    s = summarize(D)
    r = Report("poly", [describe(D)])
    r.result = {
        "polynomial": str(s.polynomial),
        "coefficients": list(s.polynomial.coeffs),
        "converse_polynomial": str(s.converse_polynomial),
        "odd_coefficients_vanish": s.odd_coefficients_vanish,
        "first_odd_failure": s.first_odd_failure,
        "source_sum": s.source_sum,
        "sink_sum": s.sink_sum,
        "source_sink_balance": s.source_sum == s.sink_sum,
        "c3_identity": s.c3_identity,
        "top_odd": None
        if s.top_odd is None
        else {
            "max_degree": s.top_odd.max_degree,
            "top_odd_index": s.top_odd.top_odd,
            "coefficient": s.top_odd.coefficient,
            "even_case": s.top_odd.even_case,
            "odd_case": s.top_odd.odd_case,
            "max_degree_parity_blocks": s.top_odd.odd_max_degree_blocks,
        },
        "regular_degree_check": s.regular_check,
        "necessary_conditions_hold": s.necessary_conditions_hold,
    }
    r.anchors = ["degree-polynomial-necessity", "odd-coefficient-criterion"]
    return r


def cmd_count(args, config: RunConfig) -> Report:
    D = _load(args.d, config, "--d")
    T = _load(args.t, config, "--t")
    a = copies(D, T, cap=None)
    b = copies(converse(D), T, cap=None)
    r = Report("count", [describe(D, "D"), describe(T, "T")])
    r.result = {"ism_D": a.ism, "ism_conv": b.ism, "aut": a.aut, "f_D": a.copies, "f_conv": b.copies}
    r.anchors = ["copy-count-definition"]
    return r


def cmd_construct(args, config: RunConfig) -> Report:
    fam, params = args.family, args.params
    ints = lambda k: _ints(params, k, fam)  # noqa: E731
    r = Report("construct")
    extra: dict[str, Any] = {}
    if fam == "star":
        d, i = ints(2)
        D = star_orientation(d, i)
    elif fam == "double-star":
        D = double_star_orientation(*ints(4))
    elif fam == "mirrored-in-star":
        D = mirrored_in_star()
    elif fam == "bridge-mirror":
        (u,) = ints(1)
        D = bridge_mirror(_load(args.inp, config, "--in"), u)
    elif fam == "mirror-witness":
        (k,) = ints(1)
        D = mirror_witness(k)
    elif fam == "transitive":
        (n,) = ints(1)
        D = transitive_tournament(n)
    elif fam == "circulant":
        (n,) = ints(1)
        D = circulant_tournament(n)
    elif fam == "random":
        (n,) = ints(1)
        D = random_tournament(n, config.seed)
    elif fam == "flip-arc":
        u, v = ints(2)
        base = _load(args.inp, config, "--in")
        if not base.is_tournament():
            raise UsageError("flip-arc needs a tournament")
        D = flip_arc(Tournament.from_digraph(base), u, v)
    elif fam == "witness-for-orientation":
        if not args.graph:
            raise UsageError("witness-for-orientation needs --graph")
        w = witness_for_orientation(parse_graph_spec(args.graph, config), cap=config.cap)
        D = w.digraph
        extra = {
            "branch": w.branch,
            "tournament": emit_digraph6(w.tournament) if w.tournament is not None else None,
            "f_D": w.f_D,
            "f_conv": w.f_conv,
            "source_sum": w.source_sum,
            "sink_sum": w.sink_sum,
        }
        r.anchors = ["max-degree-three-orientation", "source-sink-balance"]
    else:
        raise UsageError(f"unknown family {fam!r}")
    r.inputs = [{"family": fam, "params": params}]
    r.result = {"digraph6": emit_digraph6(D), "order": D.n, "arcs": D.arcs(), **extra}
    r.lines = [emit_digraph6(D)]
    if extra.get("tournament"):
        r.lines.append(extra["tournament"])
    return r


def _ints(params: list[str], k: int, fam: str) -> list[int]:
    if len(params) != k:
        raise UsageError(f"{fam} takes {k} integer parameter(s)")
    try:
        return [int(p) for p in params]
    except ValueError as exc:
        raise UsageError(f"{fam} parameters must be integers") from exc


def cmd_classify(args, config: RunConfig) -> Report:
    r = Report("classify")
    if args.kind == "star":
        d, i = _ints(args.params, 2, "star")
        D = star_orientation(d, i)
        predicted = classify_star(d, i)
        r.anchors = ["star-characterization"]
    elif args.kind == "double-star":
        if args.params:
            D = double_star_orientation(*_ints(args.params, 4, "double-star"))
        else:
            D = _load(args.inp, config, "--in")
        predicted = classify_double_star(D)
        r.anchors = ["double-star-characterization"]
    else:
        raise UsageError(f"unknown classifier {args.kind!r}")
    v = decide(D, workers=config.workers, cap=config.cap)
    agree = v.status == predicted
    r.inputs = [describe(D)]
    r.result = {"predicted": predicted, "decided": _verdict_dict(v), "agree": agree}
    r.rows = [{"digraph6": emit_digraph6(D), "predicted": predicted, "decided": v.status, "agree": agree}]
    r.exit_code = 0 if agree else 1
    return r


def cmd_explore(args, config: RunConfig) -> Report:
    G = parse_graph_spec(args.graph, config)
    rep = conjecture_probe(G, cap=config.cap, workers=config.workers)
    r = Report("explore", [{"graph_edges": G.edges, "order": G.n}])
    entries = []
    for e in rep.entries:
        entries.append(
            {
                "digraph6": emit_digraph6(e.digraph),
                "status": e.status,
                "self_converse": e.self_converse,
                "mirror_tower": e.mirror_tower,
                "consistent": e.consistent,
            }
        )
    r.rows = entries
    r.result = {
        "orientation_classes": len(entries),
        "invariant_classes": sum(1 for e in entries if e["status"] == INVARIANT),
        "consistent": rep.consistent,
        "counterexamples": [e["digraph6"] for e in entries if not e["consistent"]],
        "entries": entries,
    }
    r.anchors = ["tree-conjecture"]
    return r


def cmd_gen(args, config: RunConfig) -> Report:
    n = args.n
    ts = list(nonisomorphic_tournaments(n, cap=config.cap))
    r = Report("gen-tournaments", [{"order": n}])
    codes = [emit_digraph6(T) for T in ts]
    r.lines = codes
    r.rows = [{"index": i, "digraph6": c} for i, c in enumerate(codes)]
    r.result = {"order": n, "count": len(ts), "tournaments": codes}
    return r


def cmd_mc(args, config: RunConfig) -> Report:
    D = _load(args.inp, config, "--in")
    p = Fraction(args.bias)
    exact = expected_ism_formula(D, p)
    mean, se = mc_expected_ism(D, p, args.samples, seed=config.seed)
    dev = abs(mean - float(exact))
    ok = dev <= 3 * se if se > 0 else dev == 0
    r = Report("mc-check", [describe(D)])
    r.result = {
        "bias": str(p),
        "samples": args.samples,
        "exact": str(exact),
        "exact_float": float(exact),
        "mean": mean,
        "standard_error": se,
        "within_3_se": ok,
    }
    r.anchors = ["biased-extension-expectation"]
    r.exit_code = 0 if ok else 1
    return r


def cmd_tower(args, config: RunConfig) -> Report:
    D = _load(args.inp, config, "--in")
    ok, trace = is_path_mirror_tower(D)
    r = Report("tower", [describe(D)])
    r.result = {
        "mirror_tower": ok,
        "levels": [] if trace is None else [
            {"half": emit_digraph6(h), "vertex": u} for h, u in trace.levels
        ],
        "base": emit_digraph6(trace.base) if trace else None,
    }
    r.anchors = ["bridge-mirror-invariance", "tree-conjecture"]
    return r


COMMANDS = {
    "decide": cmd_decide,
    "poly": cmd_poly,
    "count": cmd_count,
    "construct": cmd_construct,
    "classify": cmd_classify,
    "explore": cmd_explore,
    "gen-tournaments": cmd_gen,
    "mc-check": cmd_mc,
    "tower": cmd_tower,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)
    common.add_argument("--input-format", choices=["digraph6", "edgelist"], default=None)
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--cap", type=int, default=None)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None)

    p = argparse.ArgumentParser(prog="convinv", description="Converse invariance of oriented graphs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("decide", parents=[common], help="exhaustive invariance decision")
    s.add_argument("--in", dest="inp", required=True)

    s = sub.add_parser("poly", parents=[common], help="degree polynomial and necessary conditions")
    s.add_argument("--in", dest="inp", required=True)

    s = sub.add_parser("count", parents=[common], help="copies of D and -D in T")
    s.add_argument("--d", required=True)
    s.add_argument("--t", required=True)

    s = sub.add_parser("construct", parents=[common], help="named digraphs and tournaments")
    s.add_argument("family")
    s.add_argument("params", nargs="*")
    s.add_argument("--in", dest="inp")
    s.add_argument("--graph")

    s = sub.add_parser("classify", parents=[common], help="classifier cross-checked by decide")
    s.add_argument("kind", choices=["star", "double-star"])
    s.add_argument("params", nargs="*")
    s.add_argument("--in", dest="inp")

    s = sub.add_parser("explore", parents=[common], help="tree conjecture probe")
    s.add_argument("--graph", required=True)

    s = sub.add_parser("gen-tournaments", parents=[common], help="non-isomorphic tournaments")
    s.add_argument("n", type=int)

    s = sub.add_parser("mc-check", parents=[common], help="Monte Carlo vs exact expectation")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--bias", default="0")
    s.add_argument("--samples", type=int, default=100000)

    s = sub.add_parser("tower", parents=[common], help="mirror-tower recognition")
    s.add_argument("--in", dest="inp", required=True)
    return p


_DEFAULT_OUTPUT = {"gen-tournaments": "text", "construct": "text"}


def run(command: str, args: argparse.Namespace, config: RunConfig) -> Report:
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    start = time.perf_counter()
    report = COMMANDS[command](args, config)
    report.timing = time.perf_counter() - start
    return report


def render(report: Report, config: RunConfig) -> str:
    if config.output == "json":
        return report.to_json(config) + "\n"
    if config.output == "csv":
        return report.to_csv()
    return report.to_text()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            cap=args.cap if args.cap is not None else 8,
            workers=args.workers if args.workers is not None else (os.cpu_count() or 1),
            seed=args.seed if args.seed is not None else DEFAULT_SEED,
            output=args.format or _DEFAULT_OUTPUT.get(args.command, "json"),
            input_format=args.input_format,
        )
        report = run(args.command, args, config)
    except (ConvinvError, OSError, ValueError) as exc:
        print(f"convinv {args.command}: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(report, config))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
