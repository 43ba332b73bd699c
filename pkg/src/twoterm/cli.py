"""The ``verify`` command line front end.

Usage::

    verify <command> --input <file> [--seed N] [--format json|text]

Commands and the document kinds they accept:

========================  =====================================
check-lie2                lie2_algebra
check-rep                 rep_uth, fin2group
check-cocycle             cochain, fin2group
extend                    extension
trivialize                courant
check-courant             courant
integrate                 fin2group
nerve                     fin2group
========================  =====================================

Exit codes: 0 every check passed, 1 at least one check failed, 2 the input
could not be parsed or the command does not apply to the document's kind.

A ``--seed`` given on the command line overrides a ``seed`` field in the
document; the effective seed is echoed in every report, and reports are
deterministic given (input, seed).  The json format has stable sorted keys
and carries no timings, so identical runs are byte-identical; the text
format appends the elapsed wall time.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import combinations
from pathlib import Path
from time import perf_counter
from typing import NamedTuple

from .calculus import Form, VectorField, de_rham_d
from .cohomology import (
    courant_cocycle, diff_D, extend, homological_check, check_extension,
    check_section_morphism, coboundary_iso, is_cocycle, semidirect,
    trivialize_TM,
)
from .courant import (
    CourantSection, check_jacobi_defect, random_courant_section,
)
from .io import InputDocument, InputError, parse_input
from .lie2 import check_homotopy_jacobi
from .rep import check_rep
from .report import CheckResult
from .twogroup import (
    Ext2Group, check_gpd_cocycle, check_gpd_rep, check_nerve, nerve_levels,
    verify_coherence,
)

COMMAND_KINDS = {
    "check-lie2": ("lie2_algebra",),
    "check-rep": ("rep_uth", "fin2group"),
    "check-cocycle": ("cochain", "fin2group"),
    "extend": ("extension",),
    "trivialize": ("courant",),
    "check-courant": ("courant",),
    "integrate": ("fin2group",),
    "nerve": ("fin2group",),
}


class Report(NamedTuple):
    command: str
    kind: str
    seed: int
    checks: tuple
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


# ---------------------------------------------------------------------------
# per-command runners
# ---------------------------------------------------------------------------

def _run_check_lie2(objects, rng):
    return check_homotopy_jacobi(objects["algebra"])


def _run_check_rep(objects, rng):
    if "gpd" in objects:
        return check_gpd_rep(objects["rep"])
    return check_rep(objects["rep"])


def _run_check_cocycle(objects, rng):
    if "gpd" in objects:
        return check_gpd_cocycle(objects["rep"], objects["cocycle"])
    return is_cocycle(objects["rep"], objects["cochain"])


def _run_extend(objects, rng):
    R, c = objects["rep"], objects["cochain"]
    E = extend(R, c)
    checks = list(is_cocycle(R, c))
    checks.extend(check_extension(E, rng=rng))
    checks.extend(homological_check(E))
    return checks


def _run_check_courant(objects, rng):
    severa = objects["severa"]
    n = objects["nvars"]
    closed_witness = None
    if not severa.closed:
        closed_witness = f"d(twist) = {de_rham_d(severa.H)!r}"
    checks = [CheckResult("twist_closed", severa.closed, closed_witness)]

    basis = [CourantSection(VectorField.coordinate(i, n), Form.zero(n, 1))
             for i in range(n)]
    basis += [CourantSection(VectorField.zero(n), Form.dq(i, n))
              for i in range(n)]
    labels = [f"d{i + 1}" for i in range(n)] + [f"dq{i + 1}"
                                                for i in range(n)]
    witness = None
    for i, j, k in combinations(range(2 * n), 3):
        res = check_jacobi_defect(basis[i], basis[j], basis[k], severa)
        if not res.passed:
            witness = (f"basis triple ({labels[i]}, {labels[j]}, "
                       f"{labels[k]}): {res.witness}")
            break
    checks.append(CheckResult("jacobi_defect_basis", witness is None,
                              witness))

    witness = None
    for t in range(5):
        trip = [random_courant_section(rng, n, 2) for _ in range(3)]
        res = check_jacobi_defect(*trip, severa)
        if not res.passed:
            witness = f"random triple {t + 1}: {res.witness}"
            break
    checks.append(CheckResult("jacobi_defect_random", witness is None,
                              witness))
    return checks


def _run_trivialize(objects, rng):
    R, c = courant_cocycle(objects["gammas"], objects["severa"].H)
    checks = list(is_cocycle(R, c))
    primitive = trivialize_TM(R, c)
    reproduced = diff_D(R, primitive) == c
    checks.append(CheckResult(
        "primitive_reproduces_cocycle", reproduced,
        None if reproduced else "diff_D(primitive) differs from cocycle"))
    morphism = coboundary_iso(R, primitive)
    checks.extend(check_section_morphism(extend(R, c), semidirect(R),
                                         morphism, rng=rng))
    return checks


def _gpd_prerequisites(objects):
    rep, cocycle = objects["rep"], objects["cocycle"]
    checks = list(check_gpd_rep(rep))
    checks.extend(check_gpd_cocycle(rep, cocycle))
    return checks


def _run_integrate(objects, rng):
    checks = _gpd_prerequisites(objects)
    if all(c.passed for c in checks):
        ext = Ext2Group(objects["gpd"], objects["rep"], objects["cocycle"])
        checks.extend(verify_coherence(ext))
    else:
        checks.append(CheckResult(
            "coherence_laws", False,
            "not run: representation or cocycle checks failed"))
    return checks


def _run_nerve(objects, rng):
    checks = _gpd_prerequisites(objects)
    if all(c.passed for c in checks):
        ext = Ext2Group(objects["gpd"], objects["rep"], objects["cocycle"])
        checks.extend(check_nerve(nerve_levels(ext)))
    else:
        checks.append(CheckResult(
            "simplicial_identities", False,
            "not run: representation or cocycle checks failed"))
    return checks


_RUNNERS = {
    "check-lie2": _run_check_lie2,
    "check-rep": _run_check_rep,
    "check-cocycle": _run_check_cocycle,
    "extend": _run_extend,
    "trivialize": _run_trivialize,
    "check-courant": _run_check_courant,
    "integrate": _run_integrate,
    "nerve": _run_nerve,
}


def run_command(command: str, doc: InputDocument, seed: int = 0) -> Report:
    """Dispatch a command on a parsed document; deterministic given seed."""
    kinds = COMMAND_KINDS.get(command)
    if kinds is None:
        raise InputError("command", f"unknown command {command!r}")
    if doc.kind not in kinds:
        raise InputError("command", f"{command} expects a document of kind "
                                    f"{' or '.join(kinds)}, got {doc.kind}")
    start = perf_counter()
    checks = _RUNNERS[command](doc.objects, random.Random(seed))
    return Report(command, doc.kind, seed, tuple(checks),
                  perf_counter() - start)


def emit_report(report: Report, format: str = "text") -> str:
    if format == "json":
        obj = {
            "command": report.command,
            "kind": report.kind,
            "seed": report.seed,
            "passed": report.passed,
            "checks": [{"name": c.name, "passed": c.passed,
                        "witness": c.witness} for c in report.checks],
        }
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    lines = [
        f"command: {report.command}",
        f"kind: {report.kind}",
        f"seed: {report.seed}",
        "checks:",
    ]
    for c in report.checks:
        lines.append(f"  {'pass' if c.passed else 'FAIL'}  {c.name}")
        if c.witness:
            lines.append(f"        {c.witness}")
    failed = sum(1 for c in report.checks if not c.passed)
    verdict = "PASS" if report.passed else "FAIL"
    lines.append(f"result: {verdict} ({len(report.checks)} checks, "
                 f"{failed} failed, {report.elapsed:.3f} s)")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Exact verification of two-term homotopy structures.")
    parser.add_argument("command", choices=sorted(COMMAND_KINDS))
    parser.add_argument("--input", required=True, metavar="FILE",
                        help="JSON document to verify")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized probes "
                             "(overrides the document's seed)")
    parser.add_argument("--format", choices=("json", "text"),
                        default="text", dest="fmt")
    args = parser.parse_args(argv)

    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    try:
        doc = parse_input(text)
        if args.seed is not None:
            seed = args.seed
        elif doc.seed is not None:
            seed = doc.seed
        else:
            seed = 0
        report = run_command(args.command, doc, seed)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(report, args.fmt))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
