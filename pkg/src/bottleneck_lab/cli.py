"""Command-line surface: load or generate a graph, run one analysis, emit a
canonical report.

Reports are JSON by default: a stable, versioned envelope holding the
command, the input provenance, the graph itself, and the result with every
witness spelled out, serialized with sorted keys and no whitespace so that
identical runs are identical bytes. ``--out text`` prints the short human
version, ``--out dot`` a Graphviz rendering with poles and rungs colored.

Exit codes: 0 success, 1 analysis error (message on stderr), 2 usage error,
3 budget spent with a partial report on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import oracle as oracle_mod
from .bottleneck import Ladder, find_dipole_ladder, point_bottleneck_exact
from .bottleneck import edge_bottleneck_exact
from .classify import classify_graph
from .coarse import (
    _separates,
    asymptotic_sweep,
    cmt_construct_ladder,
    decide_fat_bottleneck,
    find_fat_ladder,
    verify_fat_ladder,
)
from .errors import (
    BottleneckLabError,
    BudgetExceededError,
    CmtPreconditionError,
    GraphFormatError,
)
from .families import FAMILIES, FamilySpec, generate
from .flow import CutCertificate, connectivity_profile
from .graph import (
    Multigraph,
    PathWitness,
    graph_to_json_obj,
    mask_of,
    parse_edge_list,
    parse_json_graph,
    serialize_edge_list,
    set_distance,
)

SCHEMA = "bottleneck-lab/1"

_POLE_X_COLOR = "#7aa6da"  # blue
_POLE_Y_COLOR = "#e78ac3"  # pink
_CENTER_COLOR = "#fdb462"
_RUNG_COLORS = (
    "#1b9e77",
    "#d95f02",
    "#7570b3",
    "#e7298a",
    "#66a61e",
    "#e6ab02",
    "#a6761d",
)


def parse_graph(data: bytes, format: str = "edge-list") -> Multigraph:
    """Decode CLI input bytes into a graph; formats are edge-list and json."""
    text = data.decode("utf-8")
    if format == "edge-list":
        return parse_edge_list(text)
    if format == "json":
        return parse_json_graph(text)
    raise ValueError(f'unknown graph format "{format}"')


# -- argument plumbing -----------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated integers, got "{text}"')


def _add_source_flags(sub: argparse.ArgumentParser, *, family_only: bool = False) -> None:
    if not family_only:
        sub.add_argument("--input", help="path to a graph file")
        sub.add_argument(
            "--format",
            choices=("edge-list", "json"),
            default="edge-list",
            help="how to read --input (default edge-list)",
        )
    sub.add_argument("--family", choices=FAMILIES, help="generate the input graph")
    sub.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="K=V",
        help="family parameter, repeatable",
    )
    sub.add_argument("--seed", type=_nonnegative, default=0, help="generator seed (default 0)")


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", choices=("json", "dot", "text"), default="json")
    sub.add_argument("--budget-pairs", type=_positive, default=None, metavar="N")


def _family_spec(args: argparse.Namespace, parser: argparse.ArgumentParser) -> FamilySpec:
    params = {}
    for item in args.param:
        key, eq, value = item.partition("=")
        if not eq or not key:
            parser.error(f'--param expects K=V, got "{item}"')
        try:
            params[key] = int(value)
        except ValueError:
            parser.error(f'--param {key} expects an integer value, got "{value}"')
    try:
        return FamilySpec(args.family, tuple(sorted(params.items())), args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    raise AssertionError("unreachable")


def _load_graph(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> tuple[Multigraph, dict]:
    has_input = getattr(args, "input", None) is not None
    has_family = args.family is not None
    if has_input == has_family:
        parser.error("exactly one of --input and --family is required")
    if args.param and not has_family:
        parser.error("--param only makes sense with --family")
    if has_family:
        spec = _family_spec(args, parser)
        return generate(spec), {"family": spec.to_json_obj()}
    try:
        with open(args.input, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        raise BottleneckLabError(f"cannot read {args.input}: {exc.strerror}")
    graph = parse_graph(data, args.format)
    return graph, {"input": os.path.basename(args.input), "format": args.format}


def _workers(requested: int) -> int:
    cap = os.environ.get("BOTTLENECK_LAB_THREADS")
    if cap is not None:
        try:
            return max(1, min(requested, int(cap)))
        except ValueError:
            raise BottleneckLabError(
                f'BOTTLENECK_LAB_THREADS must be an integer, got "{cap}"'
            )
    return requested


# -- witness serialization --------------------------------------------------------


def _ladder_obj(ladder: Ladder) -> dict:
    return {
        "pole_x": sorted(ladder.pole_x),
        "pole_y": sorted(ladder.pole_y),
        "fatness": ladder.fatness,
        "rungs": [
            {"vertices": list(r.vertices), "edges": list(r.edges)} for r in ladder.rungs
        ],
    }


def _ladder_from_obj(obj: dict) -> Ladder:
    return Ladder(
        frozenset(obj["pole_x"]),
        frozenset(obj["pole_y"]),
        tuple(
            PathWitness(tuple(r["vertices"]), tuple(r["edges"])) for r in obj["rungs"]
        ),
        fatness=obj.get("fatness"),
    )


def _cut_obj(cut) -> dict:
    return {"kind": cut.kind, "members": sorted(cut.members), "radius": cut.radius}


def _fat_witness_obj(witness) -> dict | None:
    if witness is None:
        return None
    return {
        "x": sorted(witness.x),
        "y": sorted(witness.y),
        "fatness": witness.M,
        "centers": sorted(witness.centers) if witness.centers is not None else None,
    }


def _envelope(command: str, source: dict, graph: Multigraph, result: dict) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "source": source,
        "graph": graph_to_json_obj(graph),
        "result": result,
    }


def _emit_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# -- DOT rendering ----------------------------------------------------------------


def _dot(
    graph: Multigraph,
    pole_x=frozenset(),
    pole_y=frozenset(),
    centers=frozenset(),
    rungs=(),
) -> str:
    fill = {}
    for v in pole_x:
        fill[v] = _POLE_X_COLOR
    for v in pole_y:
        fill[v] = _POLE_Y_COLOR
    for v in centers:
        fill[v] = _CENTER_COLOR
    edge_color = {}
    for i, rung in enumerate(rungs):
        for eid in rung.edges:
            edge_color[eid] = _RUNG_COLORS[i % len(_RUNG_COLORS)]
    lines = ["graph bottleneck_lab {", "  node [shape=circle];"]
    for v in range(graph.n):
        if v in fill:
            lines.append(f'  {v} [style=filled fillcolor="{fill[v]}"];')
        else:
            lines.append(f"  {v};")
    for eid, (u, v) in enumerate(graph.edges):
        if eid in edge_color:
            lines.append(f'  {u} -- {v} [color="{edge_color[eid]}" penwidth=2];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_for(command: str, graph: Multigraph, result: dict) -> str:
    ladder = result.get("ladder")
    if isinstance(ladder, dict):
        lad = _ladder_from_obj(ladder)
        return _dot(graph, lad.pole_x, lad.pole_y, rungs=lad.rungs)
    witness = result.get("witness")
    if isinstance(witness, dict):
        return _dot(
            graph,
            frozenset(witness["x"]),
            frozenset(witness["y"]),
            centers=frozenset(witness["centers"] or ()),
        )
    return _dot(graph)


# -- per-command handlers -----------------------------------------------------------


def _run_analyze(graph: Multigraph, args) -> tuple[dict, str]:
    report = classify_graph(graph, budget=args.budget_pairs)
    eb, ladder, _ = edge_bottleneck_exact(graph, budget=args.budget_pairs)
    pb, pb_report = point_bottleneck_exact(graph, budget=args.budget_pairs)
    if graph.n >= 2:
        lo, hi = connectivity_profile(graph)
    else:
        lo = hi = 0
    result = {
        "classify": {
            "label": report.label,
            "edge_bottleneck": report.edge_bottleneck,
            "evidence": {
                "no_cycles": report.evidence.no_cycles,
                "blocks_edge_or_cycle": report.evidence.blocks_edge_or_cycle,
                "no_four_rung_ladder": report.evidence.no_four_rung_ladder,
            },
        },
        "bottleneck": {
            "edge": eb,
            "point": pb,
            "ladder": _ladder_obj(ladder) if ladder is not None else None,
        },
        "connectivity_profile": {"lambda_min": lo, "lambda_max": hi},
    }
    text = (
        f"label: {report.label}\n"
        f"edge bottleneck: {eb}\n"
        f"point bottleneck: {pb}\n"
        f"local edge connectivity: min {lo}, max {hi}\n"
    )
    return result, text


def _run_bottleneck(graph: Multigraph, args) -> tuple[dict, str]:
    eb, ladder, eb_report = edge_bottleneck_exact(graph, budget=args.budget_pairs)
    pb, pb_report = point_bottleneck_exact(graph, budget=args.budget_pairs)
    result = {
        "edge_bottleneck": eb,
        "point_bottleneck": pb,
        "ladder": _ladder_obj(ladder) if ladder is not None else None,
        "edge_cut": _cut_obj(eb_report.cut) if eb_report.cut is not None else None,
        "point_cut": _cut_obj(pb_report.cut) if pb_report.cut is not None else None,
        "edge_witness_pair": (
            [sorted(eb_report.witness_pair[0]), sorted(eb_report.witness_pair[1])]
            if eb_report.witness_pair is not None
            else None
        ),
        "point_witness_pair": (
            [sorted(pb_report.witness_pair[0]), sorted(pb_report.witness_pair[1])]
            if pb_report.witness_pair is not None
            else None
        ),
    }
    text = f"edge bottleneck: {eb}\npoint bottleneck: {pb}\n"
    return result, text


def _run_classify(graph: Multigraph, args) -> tuple[dict, str]:
    report = classify_graph(graph, budget=args.budget_pairs)
    result = {
        "label": report.label,
        "edge_bottleneck": report.edge_bottleneck,
        "evidence": {
            "no_cycles": report.evidence.no_cycles,
            "blocks_edge_or_cycle": report.evidence.blocks_edge_or_cycle,
            "no_four_rung_ladder": report.evidence.no_four_rung_ladder,
        },
    }
    return result, f"label: {report.label}\n"


def _run_ladder(graph: Multigraph, args) -> tuple[dict, str]:
    if args.fat_M is None:
        ladder = find_dipole_ladder(graph, args.width, budget=args.budget_pairs)
    else:
        ladder = find_fat_ladder(graph, args.width, args.fat_M, budget=args.budget_pairs)
    result = {
        "width": args.width,
        "fatness": args.fat_M,
        "found": ladder is not None,
        "ladder": _ladder_obj(ladder) if ladder is not None else None,
    }
    text = f"{'found' if ladder is not None else 'none'}\n"
    return result, text


def _run_fat(graph: Multigraph, args) -> tuple[dict, str]:
    decision = decide_fat_bottleneck(graph, args.fat_M, args.centers, budget=args.budget_pairs)
    result = {
        "fatness": args.fat_M,
        "centers": args.centers,
        "decision": decision.decision,
        "witness": _fat_witness_obj(decision.witness),
        "pairs_examined": decision.pairs_examined,
        "sets_examined": decision.sets_examined,
        "notes": list(decision.notes),
    }
    return result, f"{decision.decision}\n"


def _run_cmt(graph: Multigraph, args) -> tuple[dict, str]:
    res = cmt_construct_ladder(
        graph,
        frozenset(args.pole_x),
        frozenset(args.pole_y),
        frozenset(args.centers),
        args.small_m,
        args.fat_M,
        args.ball_B,
    )
    ok, why = verify_fat_ladder(graph, res.ladder, args.fat_M)
    assert ok, why
    result = {
        "ladder": _ladder_obj(res.ladder),
        "centers": sorted(res.centers),
        "spot_checked_sets": res.spot_checked_sets,
        "leftover_components": res.leftover_components,
        "verified_at": args.fat_M,
    }
    return result, f"constructed a {res.ladder.width}-rung ladder, fat at {args.fat_M}\n"


def _run_sweep(args, parser) -> tuple[dict, str, FamilySpec]:
    if args.family is None:
        parser.error("sweep needs --family as its template")
    spec = _family_spec(args, parser)
    report = asymptotic_sweep(
        spec,
        args.size_param,
        args.sizes,
        args.fat_Ms,
        args.width,
        budget=args.budget_pairs,
        workers=_workers(args.workers),
    )
    result = report.to_json_obj()
    lines = [f"{'size':>6} {'M':>4} {'width':>6} decision"]
    for row in report.rows:
        lines.append(f"{row.size:>6} {row.M:>4} {row.max_fat_width:>6} {row.decision}")
    return result, "\n".join(lines) + "\n", spec


def _run_oracle(graph: Multigraph, args) -> tuple[dict, str]:
    result = {
        "edge_bottleneck": oracle_mod.brute_edge_bottleneck(graph),
        "point_bottleneck": oracle_mod.brute_point_bottleneck(graph),
    }
    if args.width is not None:
        result["dipole_minor"] = {
            "width": args.width,
            "present": oracle_mod.brute_dipole_minor(graph, args.width),
        }
    text = (
        f"edge bottleneck (brute): {result['edge_bottleneck']}\n"
        f"point bottleneck (brute): {result['point_bottleneck']}\n"
    )
    return result, text


def _verify_report(path: str) -> tuple[dict, str]:
    try:
        with open(path, "rb") as handle:
            envelope = json.loads(handle.read().decode("utf-8"))
    except OSError as exc:
        raise BottleneckLabError(f"cannot read {path}: {exc.strerror}")
    except (ValueError, UnicodeDecodeError):
        raise BottleneckLabError(f"{path} is not a JSON report")
    if not isinstance(envelope, dict) or envelope.get("schema") != SCHEMA:
        raise BottleneckLabError(f"{path} is not a {SCHEMA} report")
    graph = parse_json_graph(json.dumps(envelope["graph"]))
    result = envelope.get("result", {})
    checks: list[str] = []

    def check_ladder(obj: dict, context: str) -> None:
        ladder = _ladder_from_obj(obj)
        ladder.validate(graph)
        if ladder.fatness is not None:
            ok, why = verify_fat_ladder(graph, ladder, ladder.fatness)
            if not ok:
                raise BottleneckLabError(f"{context}: {why}")
        checks.append(context)

    if isinstance(result.get("ladder"), dict):
        check_ladder(result["ladder"], "ladder")
    inner = result.get("bottleneck")
    if isinstance(inner, dict) and isinstance(inner.get("ladder"), dict):
        check_ladder(inner["ladder"], "bottleneck.ladder")

    for cut_key, pair_key in (
        ("edge_cut", "edge_witness_pair"),
        ("point_cut", "point_witness_pair"),
    ):
        cut_obj = result.get(cut_key)
        pair = result.get(pair_key)
        if isinstance(cut_obj, dict) and pair is not None:
            cut = CutCertificate(
                cut_obj["kind"], frozenset(cut_obj["members"]), cut_obj.get("radius")
            )
            cut.validate(graph, pair[0], pair[1])
            checks.append(cut_key)

    witness = result.get("witness")
    if isinstance(witness, dict):
        M = witness["fatness"]
        dist = set_distance(graph, witness["x"], witness["y"])
        if dist < max(2 * M, 1):
            raise BottleneckLabError(
                f"fat witness pair is only {dist} apart; needs {max(2 * M, 1)}"
            )
        if witness.get("centers"):
            if not _separates(
                graph,
                mask_of(witness["x"]),
                mask_of(witness["y"]),
                mask_of(witness["centers"]),
                M,
            ):
                raise BottleneckLabError("reported centers do not separate the pair")
        checks.append("witness")

    result_obj = {"verified": True, "report": os.path.basename(path), "checks": checks}
    return result_obj, "all witnesses verified\n"


# -- entry point ---------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bottleneck-lab",
        description="bottleneck invariants, ladder witnesses, and fat-ladder analysis",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("analyze", "classification, bottleneck numbers, connectivity profile"),
        ("bottleneck", "edge and point bottleneck numbers with witnesses"),
        ("classify", "tree / cactus / cut-cactus / general label"),
    ):
        sub = subs.add_parser(name, help=help_text)
        _add_source_flags(sub)
        _add_common_flags(sub)

    sub = subs.add_parser("ladder", help="search for a ladder of the given width")
    _add_source_flags(sub)
    _add_common_flags(sub)
    sub.add_argument("--width", type=_positive, required=True)
    sub.add_argument("-M", "--fat-M", type=_nonnegative, default=None, help="require this fatness")

    sub = subs.add_parser("fat", help="decide M-fat n-bottlenecking")
    _add_source_flags(sub)
    _add_common_flags(sub)
    sub.add_argument("-M", "--fat-M", type=_nonnegative, required=True)
    sub.add_argument("-n", "--centers", type=_positive, required=True)

    sub = subs.add_parser("cmt", help="run the separator-to-ladder construction")
    _add_source_flags(sub)
    _add_common_flags(sub)
    sub.add_argument("--pole-x", type=_csv_ints, required=True, metavar="CSV")
    sub.add_argument("--pole-y", type=_csv_ints, required=True, metavar="CSV")
    sub.add_argument("--centers", type=_csv_ints, required=True, metavar="CSV")
    sub.add_argument("--small-m", type=_nonnegative, required=True)
    sub.add_argument("-M", "--fat-M", type=_nonnegative, required=True)
    sub.add_argument("-B", "--ball-B", type=_positive, required=True)

    sub = subs.add_parser("sweep", help="fat width and decision over a size grid")
    _add_source_flags(sub, family_only=True)
    _add_common_flags(sub)
    sub.add_argument("--size-param", required=True)
    sub.add_argument("--sizes", type=_csv_ints, required=True, metavar="CSV")
    sub.add_argument("--fat-Ms", type=_csv_ints, required=True, metavar="CSV")
    sub.add_argument("--width", type=_positive, required=True)
    sub.add_argument("--workers", type=_positive, default=1)

    sub = subs.add_parser("generate", help="emit a generated family instance")
    _add_source_flags(sub, family_only=True)
    sub.add_argument("--out", choices=("json", "dot", "text"), default="text")

    sub = subs.add_parser("oracle", help="brute-force reference implementations")
    _add_source_flags(sub)
    _add_common_flags(sub)
    sub.add_argument("--width", type=_positive, default=None)
    sub.add_argument("--verify", metavar="REPORT", help="re-validate a report's witnesses")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    command = args.command
    try:
        if command == "generate":
            if args.family is None:
                parser.error("generate needs --family")
            spec = _family_spec(args, parser)
            graph = generate(spec)
            if args.out == "text":
                sys.stdout.write(serialize_edge_list(graph))
            elif args.out == "dot":
                sys.stdout.write(_dot(graph))
            else:
                envelope = _envelope(
                    "generate", {"family": spec.to_json_obj()}, graph, {"vertices": graph.n, "edges": graph.m}
                )
                sys.stdout.write(_emit_json(envelope))
            return 0

        if command == "sweep":
            result, text, spec = _run_sweep(args, parser)
            envelope = {
                "schema": SCHEMA,
                "command": "sweep",
                "source": {"family": spec.to_json_obj()},
                "result": result,
            }
            _write_output(args, envelope, text, None)
            return 0

        if command == "oracle" and args.verify is not None:
            result, text = _verify_report(args.verify)
            envelope = {"schema": SCHEMA, "command": "oracle-verify", "result": result}
            _write_output(args, envelope, text, None)
            return 0

        graph, source = _load_graph(args, parser)
        handler = {
            "analyze": _run_analyze,
            "bottleneck": _run_bottleneck,
            "classify": _run_classify,
            "ladder": _run_ladder,
            "fat": _run_fat,
            "cmt": _run_cmt,
            "oracle": _run_oracle,
        }[command]
        try:
            result, text = handler(graph, args)
        except BudgetExceededError as exc:
            partial = {
                "budget_exceeded": True,
                "message": str(exc),
                "lower_bound": exc.lower_bound,
                "pairs_examined": exc.pairs_examined,
                "upper_bound": exc.upper_bound,
            }
            envelope = _envelope(command, source, graph, partial)
            _write_output(args, envelope, f"budget exceeded: {exc}\n", graph)
            return 3
        envelope = _envelope(command, source, graph, result)
        _write_output(args, envelope, text, graph)
        if command == "fat" and result["decision"] == "unknown" and any(
            "spent" in note for note in result["notes"]
        ):
            return 3
        return 0
    except (BottleneckLabError, GraphFormatError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def _write_output(args, envelope: dict, text: str, graph: Multigraph | None) -> None:
    out = getattr(args, "out", "json")
    if out == "json":
        sys.stdout.write(_emit_json(envelope))
    elif out == "text":
        sys.stdout.write(text)
    else:
        if graph is None:
            raise BottleneckLabError("dot output needs a single graph to draw")
        sys.stdout.write(_dot_for(envelope["command"], graph, envelope.get("result", {})))


if __name__ == "__main__":
    raise SystemExit(main())
