"""Command-line front end.

Every command reads diagrams from ``--code``, from ``--file`` (one Gauss code
per line) or, failing both, from standard input, so commands compose in
pipelines such as ``vdelta generate figure12 --m 1 --s 1 | vdelta invariants``.

Exit status: 0 on success, 1 on a domain error (inapplicable move, budget
exceeded, failed certificate), 2 on a usage error (bad flags or malformed
Gauss code).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Sequence, TextIO

from .equivalence import (
    classical_unknotting_obstruction,
    decide_vdelta_equivalence,
    reduce_to_model,
    unknot_sequence,
    vdelta_bounds,
)
from .errors import GaussParseError, InvalidDiagramError, VDeltaError
from .families import figure12_knot, figure13_knot, model_link
from .gauss import GaussDiagram, new_diagram, parse_gauss_code, serialize
from .invariants import DEFAULT_STATE_BUDGET, f_polynomial, n_writhe, odd_writhe, parity_vector, writhe
from .moves import MoveSequence, replay
from .search import SearchBudget, bfs_distance

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def _input_group(p: argparse.ArgumentParser) -> None:
    p.add_argument("--code", help="Gauss code of one diagram")
    p.add_argument("--file", help="file with one Gauss code per line ('-' for stdin)")


def _pair_group(p: argparse.ArgumentParser, second_default: bool) -> None:
    p.add_argument("--code1", required=True, help="Gauss code of the first diagram")
    help2 = "Gauss code of the second diagram"
    if second_default:
        help2 += " (default: the trivial knot)"
    p.add_argument("--code2", required=not second_default, help=help2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vdelta", description="Gauss-diagram calculus for virtualized Delta-moves."
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument(
        "--max-states", type=int, default=None,
        help="state budget: bracket chord limit for invariants, expanded states for search",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("invariants", help="writhe, odd writhe, n-writhes, f-polynomial, parities")
    _input_group(p)
    p = sub.add_parser("reduce", help="reduce a link to its model M(a_2..a_n)")
    _input_group(p)
    p = sub.add_parser("unknot", help="macro sequence taking a knot to the trivial knot")
    _input_group(p)

    p = sub.add_parser("decide", help="decide vDelta-equivalence of two diagrams")
    _pair_group(p, second_default=False)
    p.add_argument("--unordered", action="store_true", help="allow permuting components")

    p = sub.add_parser("bounds", help="bounds on the vDelta-distance between two knots")
    _pair_group(p, second_default=True)

    p = sub.add_parser("search", help="exact distance by bounded search")
    _pair_group(p, second_default=True)
    p.add_argument("--max-chords", type=int, default=9)
    p.add_argument("--max-vd", type=int, default=2)

    p = sub.add_parser("generate", help="emit a family member as Gauss code")
    p.add_argument("family", choices=("figure12", "figure13", "model"))
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--a", help="comma-separated model bits, e.g. 1,0,1")

    p = sub.add_parser("verify", help="replay a move-sequence certificate (JSON)")
    p.add_argument("--file", help="certificate file (default: stdin)")

    # allow --json after the subcommand as well
    for action in sub.choices.values():
        action.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        action.add_argument("--max-states", type=int, default=argparse.SUPPRESS)
    return parser


def _parse(text: str) -> GaussDiagram:
    try:
        return parse_gauss_code(text)
    except (GaussParseError, InvalidDiagramError) as exc:
        raise UsageError(f"bad Gauss code {text!r}: {exc}") from None


def _read_lines(path: str | None, stdin: TextIO) -> list[str]:
    if path is None or path == "-":
        text = stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
    return [line.strip() for line in text.splitlines() if line.strip()]


def _diagrams(args, stdin: TextIO) -> list[GaussDiagram]:
    if args.code is not None:
        return [_parse(args.code)]
    lines = _read_lines(args.file, stdin)
    if not lines:
        raise UsageError("no input diagrams")
    return [_parse(line) for line in lines]


def _invariants(d: GaussDiagram, budget: int) -> dict:
    out: dict = {}
    if d.n_components == 1:
        out["J"] = odd_writhe(d)
        out["writhe"] = writhe(d)
        out["f"] = str(f_polynomial(d, budget=budget))
        out["Jn"] = {str(n): v for n, v in n_writhe(d).items()}
    else:
        out["writhe"] = writhe(d)
        out["f"] = str(f_polynomial(d, budget=budget))
        out["parity"] = list(parity_vector(d))
    return out


def _emit(out: TextIO, as_json: bool, payload: dict, text: Iterable[str]) -> None:
    if as_json:
        out.write(json.dumps(payload) + "\n")
    else:
        for line in text:
            out.write(line + "\n")


def _cmd_invariants(args, stdin, out) -> int:
    budget = args.max_states or DEFAULT_STATE_BUDGET
    for d in _diagrams(args, stdin):
        inv = _invariants(d, budget)
        lines = [f"{k:<8}{json.dumps(v) if isinstance(v, (dict, list)) else v}" for k, v in inv.items()]
        _emit(out, args.json, inv, lines)
    return 0


def _cmd_reduce(args, stdin, out) -> int:
    for d in _diagrams(args, stdin):
        model, seq = reduce_to_model(d)
        payload = {
            "model": list(model.a),
            "parity": list(parity_vector(d)),
            "vd_cost": seq.vd_cost,
            "sequence": seq.to_json(),
        }
        text = [
            f"model   M({','.join(map(str, model.a))})",
            f"diagram {serialize(seq.end)}",
            f"steps   {len(seq)}",
            f"vd_cost {seq.vd_cost}",
        ]
        _emit(out, args.json, payload, text)
    return 0


def _cmd_unknot(args, stdin, out) -> int:
    for d in _diagrams(args, stdin):
        seq = unknot_sequence(d)
        payload = {"vd_cost": seq.vd_cost, "sequence": seq.to_json()}
        text = [f"steps   {len(seq)}", f"vd_cost {seq.vd_cost}"]
        text += [f"  {s.kind} {list(s.site)} cost {s.vd_cost}" for s in seq.steps]
        _emit(out, args.json, payload, text)
    return 0


def _cmd_decide(args, stdin, out) -> int:
    d1, d2 = _parse(args.code1), _parse(args.code2)
    verdict = decide_vdelta_equivalence(d1, d2, ordered=not args.unordered)
    word = "equivalent" if verdict else "inequivalent"
    payload = {
        "equivalent": verdict,
        "parity1": list(parity_vector(d1)),
        "parity2": list(parity_vector(d2)),
    }
    _emit(out, args.json, payload, [word])
    return 0


def _second(args) -> GaussDiagram:
    return new_diagram(1) if args.code2 is None else _parse(args.code2)


def _cmd_bounds(args, stdin, out) -> int:
    d1, d2 = _parse(args.code1), _second(args)
    report = vdelta_bounds(d1, d2)
    text = [
        f"lower   {report.lower}",
        f"upper   {'unbounded' if report.upper is None else report.upper}",
    ]
    if d2.num_chords == 0 and classical_unknotting_obstruction(d1):
        text.append("note    J_1 != J_-1: not unknottable by crossing changes")
    _emit(out, args.json, report.to_json(), text)
    return 0


def _cmd_search(args, stdin, out) -> int:
    d1, d2 = _parse(args.code1), _second(args)
    budget = SearchBudget(args.max_chords, args.max_vd, args.max_states or 200_000)
    result = bfs_distance(d1, d2, budget)
    if result.found:
        text = [f"distance {result.distance}", f"states   {result.states}"]
    else:
        status = "exhausted" if result.frontier_exhausted else "budget hit"
        text = [f"not found ({status})", f"states   {result.states}"]
    _emit(out, args.json, result.to_json(), text)
    return 0 if result.found else 1


def _cmd_generate(args, stdin, out) -> int:
    if args.family == "figure12":
        d = figure12_knot(args.m, 1 if args.s is None else args.s)
    elif args.family == "figure13":
        d = figure13_knot(args.m, 2 if args.s is None else args.s)
    else:
        if not args.a:
            raise UsageError("generate model needs --a, e.g. --a 1,0,1")
        try:
            bits = [int(x) for x in args.a.split(",")]
        except ValueError:
            raise UsageError(f"--a must be comma-separated bits, got {args.a!r}") from None
        d = model_link(bits)
    code = serialize(d)
    _emit(out, args.json, {"code": code}, [code])
    return 0


def _cmd_verify(args, stdin, out) -> int:
    if args.file is None or args.file == "-":
        text = stdin.read()
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from None
    try:
        data = json.loads(text)
        if "sequence" in data and "steps" not in data:
            data = data["sequence"]
        elif "certificate" in data and "steps" not in data:
            data = data["certificate"]
        seq = MoveSequence.from_json(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"not a move-sequence certificate: {exc}") from None
    result = replay(seq)
    payload = {
        "ok": result.ok,
        "failed_step": result.failed_step,
        "reason": result.reason,
        "vd_cost": seq.vd_cost,
    }
    if result.ok:
        text_out = [f"ok (vd_cost {seq.vd_cost})"]
    else:
        text_out = [f"failed at step {result.failed_step}: {result.reason}"]
    _emit(out, args.json, payload, text_out)
    return 0 if result.ok else 1


_COMMANDS = {
    "invariants": _cmd_invariants,
    "reduce": _cmd_reduce,
    "unknot": _cmd_unknot,
    "decide": _cmd_decide,
    "bounds": _cmd_bounds,
    "search": _cmd_search,
    "generate": _cmd_generate,
    "verify": _cmd_verify,
}


def main(
    argv: Sequence[str] | None = None,
    stdin: TextIO | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, stdin, stdout)
    except UsageError as exc:
        stderr.write(f"vdelta: {exc}\n")
        return 2
    except (VDeltaError, ValueError) as exc:
        stderr.write(f"vdelta: {exc}\n")
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
