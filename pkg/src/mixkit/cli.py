"""Command-line front end.

Every library operation is reachable as a subcommand with deterministic
output: `--output table` prints aligned human-readable lines, `--output
json` emits exactly one JSON document with sorted keys.  Exact quantities
appear in JSON as integers or cyclotomic coefficient vectors, never as
floats, so golden files stay bit-identical.

Exit codes fold verdicts for shell use: 0 = success (and verdict true for
predicate commands), 1 = predicate verdict false, 2 = usage or input error
(diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .bent import (
    BooleanFunction,
    cubelike_from_bent,
    dual,
    is_bent,
    maiorana_mcfarland,
    odd_extension,
    support,
    wht,
)
from .classify import classify_group, exhaustive_search, verify_classification
from .cyclo import CycInt, RationalTime
from .errors import MixkitError
from .groups import format_element, orbits_under_units, parse_group
from .mixing import FLOAT_TOL, is_uniform_mixing
from .spectrum import connection_set_from_text, eigenvalues, elements_from_text
from .timefinder import mixing_time_candidates


def _load_set_text(arg: str) -> str:
    # a readable path wins; anything else is taken as inline set text
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    return arg


def _parse_time(text: str):
    text = text.strip()
    try:
        if text.startswith("t="):
            return float(text[2:])
        return RationalTime.parse(text)
    except ValueError:
        raise ValueError(f"time must be r/N (exact) or t=<float>, got {text!r}") from None


def _parse_function(text: str) -> BooleanFunction:
    text = text.strip()
    if text.startswith("anf:"):
        return BooleanFunction.from_anf(text[4:])
    return BooleanFunction.from_hex(text)


def _time_doc(t) -> dict:
    if isinstance(t, RationalTime):
        return {"r": t.numerator, "N": t.denominator}
    return {"float": float(t)}


def _time_text(t) -> str:
    if isinstance(t, RationalTime):
        return str(t)
    return f"t={float(t)!r}"


def _value_doc(v):
    if isinstance(v, CycInt):
        return {"level": v.level, "coeffs": list(v.coeffs)}
    return int(v)


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.output == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def _set_doc(s) -> list[list[int]]:
    return [list(x) for x in s.elements]


# -- command handlers ------------------------------------------------------


def _cmd_spectrum(args) -> int:
    group = parse_group(args.group)
    s = connection_set_from_text(group, _load_set_text(args.set))
    table = eigenvalues(s)
    values = []
    lines = []
    for i, g in enumerate(group.elements()):
        if table.integral:
            v_doc = table.int_values[i]
            shown = str(v_doc)
        else:
            v_doc = _value_doc(table.values[i])
            shown = f"{table.float_values[i].real:.10g}"
        values.append({"element": list(g), "value": v_doc})
        lines.append(f"{format_element(g)}\t{shown}")
    doc = {
        "command": "spectrum",
        "group": group.text,
        "set": _set_doc(s),
        "degree": s.degree,
        "integral": table.integral,
        "values": values,
    }
    _emit(args, doc, lines)
    return 0


def _cmd_mix(args) -> int:
    group = parse_group(args.group)
    s = connection_set_from_text(group, _load_set_text(args.set))
    table = eigenvalues(s)
    report = is_uniform_mixing(table, _parse_time(args.time), tol=args.tolerance)
    doc = {
        "command": "mix",
        "group": group.text,
        "set": _set_doc(s),
        "report": report.to_json_dict(),
    }
    lines = [
        f"verdict\t{str(report.verdict).lower()}",
        f"mode\t{report.mode}",
        f"time\t{_time_text(report.time)}",
    ]
    if report.failing_h is not None:
        lines.append(f"failing_h\t{format_element(report.failing_h)}")
    _emit(args, doc, lines)
    return 0 if report.verdict else 1


def _cmd_times(args) -> int:
    group = parse_group(args.group)
    s = connection_set_from_text(group, _load_set_text(args.set))
    table = eigenvalues(s)
    cand = mixing_time_candidates(table, max_n=args.max_n)
    doc = {
        "command": "times",
        "group": group.text,
        "set": _set_doc(s),
        "gcd_coeffs": list(cand.gcd_coeffs),
        "times": [_time_doc(t) for t in cand.times],
        "complete_up_to": cand.complete_up_to,
        "max_checked": cand.max_checked,
        "non_exhaustive": cand.non_exhaustive,
    }
    lines = [f"time\t{t}" for t in cand.times]
    lines.append(f"complete_up_to\t{cand.complete_up_to}")
    lines.append(f"max_checked\t{cand.max_checked}")
    lines.append(f"non_exhaustive\t{str(cand.non_exhaustive).lower()}")
    _emit(args, doc, lines)
    return 0


def _cmd_orbits(args) -> int:
    group = parse_group(args.group)
    orbits = orbits_under_units(group)
    doc = {
        "command": "orbits",
        "group": group.text,
        "orbits": [
            {"representative": list(o.representative), "members": [list(m) for m in o.members]}
            for o in orbits
        ],
    }
    lines = [
        f"{format_element(o.representative)}\t"
        + " ".join(format_element(m) for m in o.members)
        for o in orbits
    ]
    _emit(args, doc, lines)
    return 0


def _cmd_classify(args) -> int:
    group = parse_group(args.group)
    res = classify_group(group)
    doc = {
        "command": "classify",
        "group": group.text,
        "exponent": group.exponent,
        "admits": res.admits,
        "witness": _set_doc(res.witness) if res.witness is not None else None,
        "time": _time_doc(res.time) if res.time is not None else None,
        "certified": res.certified,
    }
    lines = [
        f"group\t{group.text}",
        f"admits\t{str(res.admits).lower()}",
    ]
    if res.witness is not None:
        lines.append("witness\t" + " ".join(format_element(x) for x in res.witness.elements))
        lines.append(f"time\t{res.time}")
        lines.append(f"certified\t{str(res.certified).lower()}")
    _emit(args, doc, lines)
    return 0 if res.admits else 1


def _cmd_search(args) -> int:
    group = parse_group(args.group)
    res = exhaustive_search(
        group,
        integral_only=not args.float_mode,
        max_n=args.max_n,
        max_order=args.max_order,
        workers=args.threads,
    )
    doc = {
        "command": "search",
        "group": group.text,
        "integral_only": res.integral_only,
        "sets_examined": res.sets_examined,
        "hits": [
            {
                "set": _set_doc(h.connection_set),
                "time": _time_doc(h.time),
                "certified": h.certified,
            }
            for h in res.hits
        ],
    }
    lines = [f"sets_examined\t{res.sets_examined}", f"hits\t{len(res.hits)}"]
    for h in res.hits:
        lines.append(
            "hit\t"
            + " ".join(format_element(x) for x in h.connection_set.elements)
            + f"\t{_time_text(h.time)}\t{'certified' if h.certified else 'uncertified'}"
        )
    _emit(args, doc, lines)
    return 0


def _cmd_verify(args) -> int:
    report = verify_classification(args.order_cap, workers=args.threads)
    doc = {
        "command": "verify",
        "order_cap": report.order_cap,
        "all_match": report.all_match,
        "rows": [
            {
                "group": r.group.text,
                "exponent": r.exponent,
                "predicted": r.predicted,
                "found": r.found,
                "matches": r.matches,
            }
            for r in report.rows
        ],
    }
    lines = [
        f"{r.group.text}\texp={r.exponent}\tpredicted={str(r.predicted).lower()}"
        f"\tfound={str(r.found).lower()}\t{'ok' if r.matches else 'MISMATCH'}"
        for r in report.rows
    ]
    lines.append(f"all_match\t{str(report.all_match).lower()}")
    _emit(args, doc, lines)
    return 0 if report.all_match else 1


def _cmd_bent_wht(args) -> int:
    f = _parse_function(args.func)
    w = wht(f)
    doc = {
        "command": "bent/wht",
        "n": f.n,
        "hex": f.to_hex(),
        "values": list(w.values),
        "bent": is_bent(f),
    }
    lines = [f"{x}\t{v}" for x, v in enumerate(w.values)]
    lines.append(f"bent\t{str(is_bent(f)).lower()}")
    _emit(args, doc, lines)
    return 0


def _cmd_bent_is_bent(args) -> int:
    f = _parse_function(args.func)
    verdict = is_bent(f)
    _emit(
        args,
        {"command": "bent/is-bent", "n": f.n, "hex": f.to_hex(), "bent": verdict},
        [f"bent\t{str(verdict).lower()}"],
    )
    return 0 if verdict else 1


def _cmd_bent_dual(args) -> int:
    f = _parse_function(args.func)
    g = dual(f)
    _emit(
        args,
        {"command": "bent/dual", "n": g.n, "hex": g.to_hex()},
        [f"n\t{g.n}", f"hex\t{g.to_hex()}"],
    )
    return 0


def _cmd_bent_mm(args) -> int:
    perm = tuple(int(x) for x in re.split(r"[,\s;]+", args.perm.strip()) if x)
    aux = _parse_function(args.aux) if args.aux is not None else None
    f = maiorana_mcfarland(args.k, perm, aux)
    _emit(
        args,
        {"command": "bent/mm", "k": args.k, "n": f.n, "hex": f.to_hex()},
        [f"n\t{f.n}", f"hex\t{f.to_hex()}"],
    )
    return 0


def _cmd_bent_support(args) -> int:
    f = _parse_function(args.func)
    s = support(f)
    doc = {
        "command": "bent/support",
        "group": s.group.text,
        "set": _set_doc(s),
    }
    lines = [f"group\t{s.group.text}"] + [format_element(x) for x in s.elements]
    _emit(args, doc, lines)
    return 0


def _cmd_bent_odd_ext(args) -> int:
    group = parse_group(args.group)
    s1 = elements_from_text(group, _load_set_text(args.set))
    s = odd_extension(s1, group=group)
    doc = {
        "command": "bent/odd-ext",
        "group": s.group.text,
        "set": _set_doc(s),
        "degree": s.degree,
    }
    lines = [f"group\t{s.group.text}"] + [format_element(x) for x in s.elements]
    _emit(args, doc, lines)
    return 0


def _cmd_bent_cubelike(args) -> int:
    f = _parse_function(args.func)
    s, t, report = cubelike_from_bent(f)
    doc = {
        "command": "bent/cubelike",
        "group": s.group.text,
        "set": _set_doc(s),
        "time": _time_doc(t),
        "report": report.to_json_dict(),
    }
    lines = [
        f"group\t{s.group.text}",
        "set\t" + " ".join(format_element(x) for x in s.elements),
        f"time\t{t}",
        f"verdict\t{str(report.verdict).lower()}",
    ]
    _emit(args, doc, lines)
    return 0 if report.verdict else 1


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--output", choices=("table", "json"), default="table",
        help="output format (default: table)",
    )

    parser = argparse.ArgumentParser(
        prog="mixkit",
        description="uniform mixing on abelian Cayley graphs: spectra, exact "
        "certification, candidate times, bent-function constructions, and "
        "exhaustive searches",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues of a Cayley graph")
    p.add_argument("--group", required=True, help="group text, e.g. Z2^4 or Z2xZ4")
    p.add_argument("--set", required=True, help="connection set: file path or inline text")
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("mix", parents=[common], help="decide uniform mixing at one time")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--time", required=True, help="r/N for exact, t=<float> for numeric")
    p.add_argument("--tolerance", type=float, default=FLOAT_TOL)
    p.set_defaults(handler=_cmd_mix)

    p = sub.add_parser("times", parents=[common], help="candidate rational mixing times")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--max-n", type=int, default=None, help="largest denominator to sweep")
    p.set_defaults(handler=_cmd_times)

    p = sub.add_parser("orbits", parents=[common], help="orbits of the group under its units")
    p.add_argument("--group", required=True)
    p.set_defaults(handler=_cmd_orbits)

    p = sub.add_parser("classify", parents=[common], help="does the group admit uniform mixing?")
    p.add_argument("--group", required=True)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("search", parents=[common], help="exhaustive search over connection sets")
    p.add_argument("--group", required=True)
    p.add_argument("--float", dest="float_mode", action="store_true",
                   help="probe all symmetric sets on a numeric time grid")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--threads", type=int, default=os.cpu_count())
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("verify", parents=[common],
                       help="search every group up to a cap and compare with the classification")
    p.add_argument("--order-cap", type=int, default=16)
    p.add_argument("--threads", type=int, default=os.cpu_count())
    p.set_defaults(handler=_cmd_verify)

    bent = sub.add_parser("bent", help="Boolean function tools")
    bsub = bent.add_subparsers(dest="subcommand", required=True)
    func_help = "truth table as hex, or anf:<expr> like anf:x1*x2+x3*x4"

    p = bsub.add_parser("wht", parents=[common], help="Walsh-Hadamard spectrum")
    p.add_argument("--func", required=True, help=func_help)
    p.set_defaults(handler=_cmd_bent_wht)

    p = bsub.add_parser("is-bent", parents=[common], help="bentness check")
    p.add_argument("--func", required=True, help=func_help)
    p.set_defaults(handler=_cmd_bent_is_bent)

    p = bsub.add_parser("dual", parents=[common], help="dual of a bent function")
    p.add_argument("--func", required=True, help=func_help)
    p.set_defaults(handler=_cmd_bent_dual)

    p = bsub.add_parser("mm", parents=[common], help="Maiorana-McFarland construction")
    p.add_argument("--k", type=int, required=True, help="half-dimension; result has n = 2k")
    p.add_argument("--perm", required=True, help="permutation of 0..2^k-1, comma separated")
    p.add_argument("--aux", default=None, help="optional function on k variables")
    p.set_defaults(handler=_cmd_bent_mm)

    p = bsub.add_parser("support", parents=[common], help="support as a connection set")
    p.add_argument("--func", required=True, help=func_help)
    p.set_defaults(handler=_cmd_bent_support)

    p = bsub.add_parser("odd-ext", parents=[common],
                        help="odd extension of a set on an elementary 2-group")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(handler=_cmd_bent_odd_ext)

    p = bsub.add_parser("cubelike", parents=[common],
                        help="certified mixing graph from a bent function")
    p.add_argument("--func", required=True, help=func_help)
    p.set_defaults(handler=_cmd_bent_cubelike)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.handler(args)
    except MixkitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
