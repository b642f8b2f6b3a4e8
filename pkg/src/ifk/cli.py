"""Command-line front end: one subcommand per construction, deterministic
JSON (or DOT) reports, exit 0 on success, 1 on defects in the input, 2 on
usage errors."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .bundle import Bundle, parse_bundle, parse_sequent, sequent_to_obj
from .errors import BundleError, CapExceeded, IfkError
from .fca import lattice, lattice_dot
from .integration import integrate, is_monocosmic, is_pointwise_consistent
from .theories import DEFAULT_SEQUENT_CAP, close, entails, sequent_key

from .diagrams import DEFAULT_INSTANCE_CAP, sum_classification


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse from exiting the process
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="ifk", description="information-flow toolkit")
    parser.add_argument("--output", metavar="FILE", default=None,
                        help="write the report here instead of stdout")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized self-checks")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def command(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        # the global flags are accepted on either side of the command name;
        # SUPPRESS keeps the subparser from clobbering a top-level value
        p.add_argument("--output", metavar="FILE", default=argparse.SUPPRESS)
        p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        p.add_argument("bundle", metavar="BUNDLE", help="bundle JSON file")
        return p

    command("validate", help="validate a bundle")

    p = command("close", help="materialize the closure of a theory")
    p.add_argument("--theory", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_SEQUENT_CAP)

    p = command("entails", help="decide entailment of a sequent")
    p.add_argument("--theory", required=True)
    p.add_argument("--sequent", required=True, help="literal like 'a, b |- c'")

    p = command("lattice", help="concept lattice of a classification")
    p.add_argument("--classification", required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")

    p = command("sum", help="sum channel of a fully classified system")
    p.add_argument("--system", required=True)
    p.add_argument("--instance-cap", type=int, default=DEFAULT_INSTANCE_CAP)

    p = command("integrate", help="system closure with bounded deltas")
    p.add_argument("--system", required=True)
    p.add_argument("--delta-bound", type=int, default=2)
    p.add_argument("--cap", type=int, default=DEFAULT_SEQUENT_CAP)

    p = command("consistency", help="cosmological verdict for a system")
    p.add_argument("--system", required=True)
    return parser


def _emit(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _load(path: str) -> Bundle:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read bundle file: {exc}") from exc
    return parse_bundle(text)


def _pick(table: dict, name: str, kind: str):
    if name not in table:
        raise IfkError(f"no {kind} named {name!r} in the bundle")
    return table[name]


def _cmd_validate(args) -> str:
    _load(args.bundle)
    return _emit({"ok": True})


def _cmd_close(args) -> str:
    bundle = _load(args.bundle)
    theory = _pick(bundle.theories, args.theory, "theory")
    closed = close(theory, args.cap)
    return _emit(
        {
            "theory": args.theory,
            "types": sorted(closed.types),
            "axioms": [sequent_to_obj(a) for a in sorted(closed.axioms, key=sequent_key)],
        }
    )


def _cmd_entails(args) -> str:
    bundle = _load(args.bundle)
    theory = _pick(bundle.theories, args.theory, "theory")
    q = parse_sequent(args.sequent)
    return _emit(
        {"theory": args.theory, "sequent": sequent_to_obj(q), "entailed": entails(theory, q)}
    )


def _cmd_lattice(args) -> str:
    bundle = _load(args.bundle)
    c = _pick(bundle.classifications, args.classification, "classification")
    l = lattice(c)
    if args.format == "dot":
        return lattice_dot(l)
    return _emit(
        {
            "classification": args.classification,
            "concepts": [
                {"extent": sorted(k.extent), "intent": sorted(k.intent)} for k in l.concepts
            ],
            "order": sorted([i, j] for i, j in l.order if i != j),
        }
    )


def _cmd_sum(args) -> str:
    bundle = _load(args.bundle)
    system = _pick(bundle.systems, args.system, "system")
    channel = sum_classification(system.cls_diagram(), args.instance_cap)
    core = channel.core
    return _emit(
        {
            "system": args.system,
            "core": {
                "instances": sorted(core.instances),
                "types": sorted(core.types),
                "incidence": [[i, t] for i, t in sorted(core.incidence)],
            },
            "legs": {
                n: {
                    "type_map": dict(sorted(leg.type_map.items())),
                    "instance_map": dict(sorted(leg.instance_map.items())),
                }
                for n, leg in sorted(channel.legs.items())
            },
        }
    )


def _cmd_integrate(args) -> str:
    bundle = _load(args.bundle)
    system = _pick(bundle.systems, args.system, "system")
    result = integrate(system, delta_bound=args.delta_bound, cap=args.cap)
    return _emit(
        {
            "system": args.system,
            "delta_bound": args.delta_bound,
            "sum": {
                "types": sorted(result.sum_types),
                "cocone": {
                    n: dict(sorted(m.items())) for n, m in sorted(result.cocone.items())
                },
                "members": {
                    cls: [f"{n}.{t}" for n, t in sorted(group)]
                    for cls, group in sorted(result.sum_members.items())
                },
            },
            "sum_theory_axioms": [
                sequent_to_obj(a) for a in sorted(result.sum_theory.axioms, key=sequent_key)
            ],
            "deltas": {
                n: [sequent_to_obj(q) for q in qs] for n, qs in sorted(result.deltas.items())
            },
            "verdict": result.verdict,
        }
    )


def _cmd_consistency(args) -> str:
    bundle = _load(args.bundle)
    system = _pick(bundle.systems, args.system, "system")
    pointwise = is_pointwise_consistent(system)
    mono = is_monocosmic(system)
    if not pointwise:
        verdict = "pointwise-inconsistent"
    elif mono:
        verdict = "monocosmic"
    else:
        verdict = "polycosmic"
    return _emit({"pointwise": pointwise, "monocosmic": mono, "verdict": verdict})


_HANDLERS = {
    "validate": _cmd_validate,
    "close": _cmd_close,
    "entails": _cmd_entails,
    "lattice": _cmd_lattice,
    "sum": _cmd_sum,
    "integrate": _cmd_integrate,
    "consistency": _cmd_consistency,
}


def _dispatch(argv: Sequence[str]) -> tuple[int, str, str | None]:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise _UsageError("a command is required")
    except _UsageError as exc:
        report = _emit({"ok": False, "error": {"kind": "usage", "message": str(exc)}})
        return 2, report, None
    try:
        return 0, _HANDLERS[args.command](args), args.output
    except _UsageError as exc:
        report = _emit({"ok": False, "error": {"kind": "usage", "message": str(exc)}})
        return 2, report, args.output
    except CapExceeded as exc:
        report = _emit(
            {
                "ok": False,
                "error": {
                    "kind": "cap-exceeded",
                    "phase": exc.phase,
                    "required": exc.required,
                    "cap": exc.cap,
                },
            }
        )
        return 1, report, args.output
    except BundleError as exc:
        report = _emit({"ok": False, "error": {"kind": "bundle", "message": str(exc)}})
        return 1, report, args.output
    except IfkError as exc:
        report = _emit({"ok": False, "error": {"kind": "invalid", "message": str(exc)}})
        return 1, report, args.output


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Dispatch a command line; returns (exit status, report document)."""
    status, report, _ = _dispatch(argv)
    return status, report


def main(argv: Sequence[str] | None = None) -> int:
    status, report, output = _dispatch(sys.argv[1:] if argv is None else argv)
    if output:
        Path(output).write_text(report)
    else:
        sys.stdout.write(report)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
