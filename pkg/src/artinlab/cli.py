"""Command-line client over the service handlers.

One command is one process; reports go to stdout as JSON (deterministic key
order).  Exit codes: 0 success or all-match, 1 verification mismatch, 2 input
or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import pydantic

from . import service
from .errors import InputError


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, pydantic.ValidationError, OSError, json.JSONDecodeError) as exc:
        _emit({"error": str(exc)}, args, stream=sys.stderr)
        return 2


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="artinlab",
        description=(
            "Build Artinian local algebras over F_p, compute their homological "
            "invariants, decompose connected sums, and verify rational "
            "Poincare-series formulas against brute-force resolutions."
        ),
    )
    sub = parser.add_subparsers(required=True)

    def common(p, seed=True, degree=False):
        p.add_argument("ring", help="ring definition JSON file")
        p.add_argument("--char", type=int, default=None, help="override the characteristic")
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if degree:
            p.add_argument("--max-degree", type=int, default=6)
        p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("analyze", help="ring summary, classification, Koszul profile")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="compare predicted series against computed Betti numbers")
    common(p, degree=True)
    p.add_argument("--module", help="module spec JSON file ({\"quotient_by\": [...]})")
    p.add_argument("--expect", help="pinned series JSON file ({\"numerator\": [...], \"denominator\": [...]})")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="connected-sum decomposition with certificates")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("combine", help="fibre product or connected sum of two rings")
    p.add_argument("--op", choices=["fibre", "connected-sum"], required=True)
    p.add_argument("first", help="first ring definition JSON file")
    p.add_argument("second", help="second ring definition JSON file")
    p.add_argument("-o", "--output", required=True, help="output ring file")
    p.add_argument("--char", type=int, default=None)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("golod", help="compare computed Betti numbers against the Golod bound")
    common(p, seed=False, degree=True)
    p.set_defaults(func=cmd_golod)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)
    return parser


def _load_ring(args) -> service.RingDefinition:
    with open(args.ring) as fh:
        data = json.load(fh)
    if args.char is not None:
        data["characteristic"] = args.char
    return service.RingDefinition.model_validate(data)


def _emit(payload, args, stream=None):
    stream = stream or sys.stdout
    if isinstance(payload, pydantic.BaseModel):
        payload = payload.model_dump()
    fmt = getattr(args, "format", "json")
    if fmt == "table" and stream is sys.stdout:
        print(_render_table(payload), file=stream)
    else:
        print(json.dumps(payload, indent=2, sort_keys=True), file=stream)


def cmd_analyze(args) -> int:
    report = service.analyze(service.AnalyzeRequest(ring=_load_ring(args), seed=args.seed))
    _emit(report, args)
    return 0


def cmd_verify(args) -> int:
    module = None
    if args.module:
        with open(args.module) as fh:
            module = service.ModuleSpec.model_validate(json.load(fh))
    expected = None
    if args.expect:
        with open(args.expect) as fh:
            expected = service.SeriesJSON.model_validate(json.load(fh))
    report = service.verify(
        service.VerifyRequest(
            ring=_load_ring(args),
            max_degree=args.max_degree,
            module=module,
            expected_series=expected,
            seed=args.seed,
        )
    )
    _emit(report, args)
    return 1 if report.overall == "mismatch" else 0


def cmd_decompose(args) -> int:
    report = service.decompose(
        service.DecomposeRequest(ring=_load_ring(args), seed=args.seed)
    )
    _emit(report, args)
    return 0


def cmd_combine(args) -> int:
    def load(path):
        with open(path) as fh:
            data = json.load(fh)
        if args.char is not None:
            data["characteristic"] = args.char
        return service.RingDefinition.model_validate(data)

    result = service.combine(
        service.CombineRequest(op=args.op, first=load(args.first), second=load(args.second))
    )
    with open(args.output, "w") as fh:
        json.dump(result.model_dump(exclude_none=True), fh, indent=2, sort_keys=True)
        fh.write("\n")
    _emit({"written": args.output, "basis": result.table.basis}, args)
    return 0


def cmd_golod(args) -> int:
    report = service.golod(
        service.GolodRequest(ring=_load_ring(args), max_degree=args.max_degree)
    )
    _emit(report, args)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("artinlab.api:app", host=args.host, port=args.port)
    return 0


def _render_table(payload, indent=0) -> str:
    lines = []
    pad = "  " * indent
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.append(_render_table(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_flat(value)}")
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, (dict, list)):
                lines.append(_render_table(item, indent))
                lines.append(pad + "-")
            else:
                lines.append(f"{pad}- {_flat(item)}")
    else:
        lines.append(f"{pad}{_flat(payload)}")
    return "\n".join(line for line in lines if line)


def _is_flat(value) -> bool:
    if isinstance(value, list):
        return all(not isinstance(x, (dict, list)) for x in value)
    return False


def _flat(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(str(x) for x in value) + "]"
    return str(value)


if __name__ == "__main__":
    sys.exit(main())
