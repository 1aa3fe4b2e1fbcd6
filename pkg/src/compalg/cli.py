"""Command line entry point.

One executable, ``compalg``, exposing the package's verifications,
reductions, and derivations.  Subcommands mirror the modules: ``algebra``,
``vpa``, ``diagram``, ``hurwitz``, ``triality``, ``sym``, plus ``verify-all``
which runs the standing verification suite as a single gate.

Every run produces a report with the echoed command, the per-check results,
and the exit status.  ``--format json`` renders it as one JSON document;
text mode is line oriented.  Output is deterministic for a fixed ``--seed``
(wall-clock timing is kept on the report object but never printed, precisely
so that byte-identical output holds).  Exit codes: 0 when every requested
check passed, 1 when a verification failed, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import suite
from .algebras import (
    UnknownName,
    build_named,
    check_composition,
    derivation_algebra,
    properties,
)
from .concrete import evaluate_concrete
from .diagrams import MalformedDiagram, combo_to_json, diagram_from_json
from .hurwitz import classify, derive_hurwitz, g2_rules, generic_rules
from .rewrite import normalize
from .sym import NotSpecial, build_system, extract_triality, verify_special, verify_system
from .triality import (
    algebra_from_triality,
    triality_from_algebra,
    verify_clifford_rho,
    verify_triality,
)
from .vpa import adjoin_unit, clifford_check, imaginary_part, verify_vpa


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    """Outcome of one CLI invocation.

    ``elapsed`` is wall-clock seconds; it stays off the rendered output so
    that runs with the same seed are byte-identical.
    """

    command: list
    seed: int
    checks: list = field(default_factory=list)
    payload: dict | None = None
    elapsed: float = 0.0

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    @property
    def exit_status(self):
        return 0 if self.passed else 1

    def to_json(self):
        return _jsonable(
            {
                "command": self.command,
                "seed": self.seed,
                "checks": self.checks,
                "payload": self.payload,
                "exit_status": self.exit_status,
            }
        )

    def to_text(self):
        lines = ["command: " + " ".join(self.command), f"seed: {self.seed}"]
        if self.payload:
            lines.extend(_payload_lines(_jsonable(self.payload)))
        for c in self.checks:
            lines.append(f"check {c['name']}: " + ("pass" if c["passed"] else "FAIL"))
            if not c["passed"]:
                for key, value in sorted(_jsonable(c["detail"]).items()):
                    lines.append(f"  {key}: {json.dumps(value, sort_keys=True)}")
        lines.append(f"exit status: {self.exit_status}")
        return "\n".join(lines) + "\n"

    def render(self, fmt):
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"
        return self.to_text()


def _jsonable(x):
    """Recursively coerce report data to plain JSON types, exactly."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, bytes):
        return x.decode("ascii")
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return str(x)


def _payload_lines(obj, indent=""):
    lines = []
    for key in sorted(obj):
        value = obj[key]
        if isinstance(value, str) and "\n" in value:
            lines.append(f"{indent}{key}:")
            lines.extend(value.split("\n"))
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_payload_lines(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(f"{indent}-")
                lines.extend(_payload_lines(item, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {json.dumps(value, sort_keys=True)}")
    return lines


def _check(name, passed, **detail):
    return {"name": name, "passed": bool(passed), "detail": detail}


def _named(label):
    try:
        return build_named(label)
    except UnknownName as exc:
        raise UsageError(str(exc)) from None


def _load_diagram(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
        return diagram_from_json(data)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except (json.JSONDecodeError, MalformedDiagram, KeyError, TypeError) as exc:
        raise UsageError(f"not a diagram file: {path}: {exc}") from None


# -- handlers, one per verb -------------------------------------------------------


def _algebra_verify(args):
    A = _named(args.name)
    rep = check_composition(A)
    checks = [_check("composition", rep.passed, witnesses=rep.witnesses)]
    return checks, {"algebra": A.name, "dim": A.dim}


def _algebra_props(args):
    A = _named(args.name)
    return [], {"algebra": A.name, "dim": A.dim, "properties": properties(A)}


def _algebra_derivations(args):
    A = _named(args.name)
    basis = derivation_algebra(A)
    return [], {"algebra": A.name, "dim": A.dim, "derivation_dimension": len(basis)}


def _vpa_verify(args):
    V = imaginary_part(_named(args.from_name))
    axioms = verify_vpa(V)
    cliff = clifford_check(V)
    checks = [
        _check("vpa-axioms", axioms.passed, witnesses=axioms.witnesses),
        _check("clifford-relation", cliff.passed, witnesses=cliff.witnesses),
    ]
    return checks, {"from": args.from_name, "dim": V.dim}


def _vpa_roundtrip(args):
    A = _named(args.from_name)
    B = adjoin_unit(imaginary_part(A))
    comp = check_composition(B)
    checks = [
        _check("unit-adjunction-composes", comp.passed, witnesses=comp.witnesses),
        _check(
            "roundtrip-table-exact",
            (B.mul_table == A.mul_table).all() and (B.form == A.form).all(),
        ),
    ]
    return checks, {"from": args.from_name, "dim": A.dim}


def _diagram_reduce(args):
    rules = g2_rules() if args.rules == "g2" else generic_rules()
    entries = []
    for path in args.files:
        d = _load_diagram(path)
        nf = normalize(d, rules)
        entries.append(
            {
                "path": path,
                "vertices": d.n_vertices,
                "terms": len(nf.items()),
                "normal_form": combo_to_json(nf),
            }
        )
    return [], {"rules": args.rules, "files": entries}


def _diagram_eval(args):
    V = imaginary_part(_named(args.algebra))
    entries = []
    for path in args.files:
        d = _load_diagram(path)
        value = evaluate_concrete(d, V)
        if isinstance(value, np.ndarray):
            entry = {"path": path, "shape": list(value.shape), "tensor": value}
        else:
            entry = {"path": path, "scalar": value}
        entries.append(entry)
    return [], {"algebra": args.algebra, "dim": V.dim, "files": entries}


def _hurwitz_derive(args):
    checks = suite.hurwitz_checks()
    payload = {"relations": {k: combo_to_json(v) for k, v in sorted(derive_hurwitz().items())}}
    return checks, payload


def _hurwitz_classify(args):
    tree = classify()
    checks = suite.classification_checks()
    payload = {
        "tree": tree.render(),
        "deltas": list(tree.deltas()),
        "leaves": [
            {
                "delta": leaf.delta,
                "description": leaf.description,
                "relations": list(leaf.relation_names()),
            }
            for leaf in tree.leaves
        ],
    }
    return checks, payload


def _triality_verify(args):
    A = _named(args.algebra)
    rho = verify_clifford_rho(A)
    T = triality_from_algebra(A)
    rep = verify_triality(T)
    checks = [
        _check("clifford-rho", rho.passed, witnesses=rho.witnesses),
        _check(
            "triality",
            rep.passed,
            witnesses=rep.witnesses,
            permutations={str(k): v for k, v in rep.permutations.items()},
        ),
    ]
    return checks, {"algebra": A.name, "dim": A.dim}


def _triality_roundtrip(args):
    A = _named(args.algebra)
    T = triality_from_algebra(A)
    unit = tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(A.dim))
    B = algebra_from_triality(T, unit, unit)
    comp = check_composition(B)
    checks = [
        _check(
            "roundtrip-table-exact",
            (B.mul_table == A.mul_table).all() and (B.form == A.form).all(),
        ),
        _check("rebuilt-composes", comp.passed, witnesses=comp.witnesses),
    ]
    return checks, {"algebra": A.name, "dim": A.dim}


def _sym_verify(args):
    sysm = build_system(_named(args.algebra))
    rep = verify_system(sysm)
    checks = [
        _check("clifford-action", rep.clifford_ok),
        _check("gamma-symmetry", rep.symmetry_ok),
        _check("defining-equation", rep.eq_ok),
    ]
    if not rep.passed:
        checks.append(_check("witnesses", False, witnesses=rep.witnesses))
    if args.special:
        special = verify_special(sysm)
        checks.append(_check("special-condition", special.passed, witnesses=special.witnesses))
    return checks, {"algebra": args.algebra, "kdim": sysm.kdim, "vdim": sysm.vdim}


def _sym_extract(args):
    sysm = build_system(_named(args.algebra))
    try:
        T = extract_triality(sysm)
    except NotSpecial as exc:
        return (
            [_check("extraction", False, error=str(exc))],
            {"algebra": args.algebra, "vdim": sysm.vdim},
        )
    rep = verify_triality(T)
    checks = [
        _check("extraction", True),
        _check("extracted-triality", rep.passed, witnesses=rep.witnesses),
    ]
    return checks, {"algebra": args.algebra, "kdim": sysm.kdim, "vdim": sysm.vdim}


def _verify_all(args):
    checks = suite.all_checks(args.seed)
    summary = []
    for label, fn in suite.CRITERIA:
        part = fn(args.seed) if fn in (suite.oracle_checks, suite.probe_checks) else fn()
        summary.append(
            {
                "criterion": label,
                "checks": len(part),
                "passed": all(c["passed"] for c in part),
            }
        )
    return checks, {"criteria": summary, "total_checks": len(checks)}


# -- parser ------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="report format"
    )
    common.add_argument(
        "--seed", type=int, default=0, metavar="N", help="seed for randomized probes"
    )

    parser = argparse.ArgumentParser(
        prog="compalg",
        description="Exact verifications for composition algebras, vector products, "
        "and trivalent diagram rewriting.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    algebra = sub.add_parser("algebra", help="composition algebra checks")
    asub = algebra.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb, fn in (
        ("verify", _algebra_verify),
        ("props", _algebra_props),
        ("derivations", _algebra_derivations),
    ):
        sp = asub.add_parser(verb, parents=[common])
        sp.add_argument("--name", "--algebra", dest="name", required=True, metavar="LABEL")
        sp.set_defaults(handler=fn)

    vpa = sub.add_parser("vpa", help="vector product algebra checks")
    vsub = vpa.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb, fn in (("verify", _vpa_verify), ("roundtrip", _vpa_roundtrip)):
        sp = vsub.add_parser(verb, parents=[common])
        sp.add_argument("--from", dest="from_name", required=True, metavar="LABEL")
        sp.set_defaults(handler=fn)

    diagram = sub.add_parser("diagram", help="diagram reduction and evaluation")
    dsub = diagram.add_subparsers(dest="verb", required=True, metavar="VERB")
    sp = dsub.add_parser("reduce", parents=[common])
    sp.add_argument("--rules", choices=("generic", "g2"), required=True)
    sp.add_argument("files", nargs="+", metavar="FILE")
    sp.set_defaults(handler=_diagram_reduce)
    sp = dsub.add_parser("eval", parents=[common])
    sp.add_argument("--algebra", "--name", dest="algebra", required=True, metavar="LABEL")
    sp.add_argument("files", nargs="+", metavar="FILE")
    sp.set_defaults(handler=_diagram_eval)

    hurwitz = sub.add_parser("hurwitz", help="the mechanical dimension count")
    hsub = hurwitz.add_subparsers(dest="verb", required=True, metavar="VERB")
    sp = hsub.add_parser("derive", parents=[common])
    sp.set_defaults(handler=_hurwitz_derive)
    sp = hsub.add_parser("classify", parents=[common])
    sp.set_defaults(handler=_hurwitz_classify)

    triality = sub.add_parser("triality", help="triality of the spin representation")
    tsub = triality.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb, fn in (("verify", _triality_verify), ("roundtrip", _triality_roundtrip)):
        sp = tsub.add_parser(verb, parents=[common])
        sp.add_argument("--algebra", "--name", dest="algebra", required=True, metavar="LABEL")
        sp.set_defaults(handler=fn)

    symp = sub.add_parser("sym", help="supersymmetry systems")
    ssub = symp.add_subparsers(dest="verb", required=True, metavar="VERB")
    sp = ssub.add_parser("verify", parents=[common])
    sp.add_argument("--algebra", "--name", dest="algebra", required=True, metavar="LABEL")
    sp.add_argument("--special", action="store_true", help="also check the special condition")
    sp.set_defaults(handler=_sym_verify)
    sp = ssub.add_parser("extract", parents=[common])
    sp.add_argument("--algebra", "--name", dest="algebra", required=True, metavar="LABEL")
    sp.set_defaults(handler=_sym_extract)

    sp = sub.add_parser("verify-all", parents=[common], help="run the whole gate")
    sp.set_defaults(handler=_verify_all)

    return parser


def run(argv):
    """Programmatic entry: parse, dispatch, and return the RunReport.

    Raises UsageError (or SystemExit from argparse) on bad invocations.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must fit in 64 bits")
    t0 = time.time()
    checks, payload = args.handler(args)
    report = RunReport(
        command=list(argv),
        seed=args.seed,
        checks=checks,
        payload=payload,
        elapsed=time.time() - t0,
    )
    return report, args.format


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        report, fmt = run(argv)
    except UsageError as exc:
        print(f"compalg: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    sys.stdout.write(report.render(fmt))
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
