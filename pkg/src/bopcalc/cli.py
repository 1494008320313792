"""Command line front end.

Four subcommands:

* ``homology SPECTRUM INDEX`` computes the homology of one space in a
  spectrum's Omega tower, as a generator table when a single parity
  applies and as bare series coefficients otherwise;
* ``catalog [SPECTRUM]`` lists the built-in spectra or prints one
  spectrum's homotopy profile;
* ``verify CHECK`` runs a named consistency check, or ``verify all``
  for the whole battery at its standard parameters;
* ``conjecture`` prints the conjectured cohomology series for a
  truncation height, or runs one of the conjecture-side checks.

Exit status: 0 on success, 1 when a verification fails, 2 for usage or
domain errors (bad spectrum names, indices outside a rule's range).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from . import conjecture as _conjecture
from . import splitting as _splitting
from . import towers as _towers
from .catalog import (
    CATALOGUED_SPECTRA,
    SpaceRef,
    bo_space_homology,
    bu_space_homology,
    homotopy_profile,
    parse_spectrum,
)
from .algebra import GeneratorTable, poincare_series
from .errors import BopcalcError, InvalidParameter
from .reports import VerificationReport
from .series import TruncatedSeries

__all__ = ["build_parser", "main", "CHECK_NAMES"]


# -- check registry ----------------------------------------------------------

@dataclass(frozen=True)
class _CheckSpec:
    """One named check: `scale` is its size knob (a degree bound for
    most, a level or index bound for the combinatorial ones), pinned to
    the value the standard battery uses."""

    name: str
    pinned_scale: int
    run: Callable[[int, bool], VerificationReport]
    supports_fault: bool = False


def _registry() -> Dict[str, _CheckSpec]:
    specs = [
        _CheckSpec("rhs-one", 512,
                   lambda n, f: _splitting.verify_rhs_one(
                       truncation=n, inject_fault=f),
                   supports_fault=True),
        _CheckSpec("head-induction", 512,
                   lambda n, f: _splitting.verify_head_induction(
                       truncation=n, inject_fault=f),
                   supports_fault=True),
        _CheckSpec("rational-splitting", 256,
                   lambda n, f: _splitting.verify_rational_splitting(n)),
        _CheckSpec("bo-deloopings", 64,
                   lambda n, f: _towers.verify_bo_deloopings(n)),
        _CheckSpec("bu-bo-factorization", 100,
                   lambda n, f: _towers.verify_bu_bo_factorization(n)),
        _CheckSpec("negative-tower", 64,
                   lambda n, f: _towers.verify_negative_tower(
                       truncation=n,
                       corrupt_f_degree=7 if f else None),
                   supports_fault=True),
        _CheckSpec("bop-tower", 60,
                   lambda n, f: _towers.verify_bop_tower(truncation=n)),
        _CheckSpec("rank-rule-bss", 40,
                   lambda n, f: _towers.verify_rank_rule_bss(truncation=n)),
        _CheckSpec("irreducibility", 12,
                   lambda n, f: _splitting.verify_irreducibility(k_max=n)),
        _CheckSpec("index-bijection", 8192,
                   lambda n, f: _splitting.verify_index_bijection(bound=n)),
        _CheckSpec("bpn-rank-recursion", 128,
                   lambda n, f: _splitting.verify_bpn_rank_recursion(
                       truncation=n)),
        _CheckSpec("bop6-splitting", 256,
                   lambda n, f: _splitting.verify_bop6_homotopy_splitting(n)),
        _CheckSpec("epsilon-partition", 64,
                   lambda n, f: _conjecture.verify_epsilon_partition(
                       n_max=n)),
        _CheckSpec("conjecture-limit", 64,
                   lambda n, f: _conjecture.verify_stable_limit(
                       limit_degree=min(n, 64))),
        _CheckSpec("first-appearance", 64,
                   lambda n, f: _conjecture.verify_first_appearance(
                       q_max=n)),
        _CheckSpec("squares", 4096,
                   lambda n, f: _conjecture.verify_square_decompositions(
                       bound=n)),
        _CheckSpec("conjecture-shape", 128,
                   lambda n, f: _conjecture.verify_conjecture_shape(
                       truncation=n)),
    ]
    return {spec.name: spec for spec in specs}


_REGISTRY = _registry()
CHECK_NAMES = tuple(_REGISTRY)

_CONJECTURE_CHECKS = {
    "limit": "conjecture-limit",
    "epsilon": "epsilon-partition",
    "first-appearance": "first-appearance",
    "squares": "squares",
    "shape": "conjecture-shape",
}


# -- output helpers ----------------------------------------------------------

def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _note(message: str, args) -> None:
    if not args.quiet:
        print(f"note: {message}", file=sys.stderr)


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _series_lines(series: TruncatedSeries, label: str) -> List[str]:
    lines = [f"{'degree':>8}  {label}"]
    for d, c in series.csv_rows():
        if c:
            lines.append(f"{d:>8}  {c}")
    if len(lines) == 1:
        lines.append("  (all coefficients are 0)")
    return lines


def _table_lines(table: GeneratorTable) -> List[str]:
    lines = [
        f"kind: {table.kind}",
        f"component_rank: {table.component_rank}",
        f"max_degree: {table.truncation}",
        f"{'degree':>8}  count",
    ]
    for d, c in table.csv_rows():
        lines.append(f"{d:>8}  {c}")
    if not table.counts:
        lines.append("  (no generators)")
    return lines


# -- subcommands -------------------------------------------------------------

def _cmd_homology(args) -> int:
    spectrum = parse_spectrum(args.spectrum)
    n = args.max_degree
    notes: List[str] = []
    provenance = "catalog"
    table: Optional[GeneratorTable] = None
    series: Optional[TruncatedSeries] = None

    if args.periodic and spectrum.tag != "bo":
        raise InvalidParameter("--periodic only applies to bo")

    if spectrum.tag == "bo":
        periodic = args.periodic
        if args.index >= 8 and not periodic:
            periodic = True
            notes.append(
                f"space {args.index} of bo lies outside the connective "
                "range; returning the periodic table")
        table = bo_space_homology(args.index, n, periodic=periodic)
    elif spectrum.tag == "bu":
        table = bu_space_homology(args.index, n)
    elif spectrum.tag == "BoP":
        res = _towers.bop_space(args.index, n)
        provenance = res.provenance
        table = res.table
        series = res.series
        if table is None:
            notes.append(
                "generators of both parities; only the series is printed")
    else:
        provenance = "rank_rule"
        table = _towers.rank_rule_homology(SpaceRef(spectrum, args.index), n)

    if series is None:
        series = poincare_series(table)
    for message in notes:
        _note(message, args)

    if args.format == "json":
        doc = {
            "command": "homology",
            "spectrum": str(spectrum),
            "index": args.index,
            "max_degree": n,
            "provenance": provenance,
            "table": table.to_json() if table is not None else None,
            "series": series.to_json(),
            "notes": notes,
        }
        _emit(json.dumps(doc, indent=2), args)
    elif args.format == "csv":
        if table is not None:
            _emit(_csv_text(("degree", "count"), table.csv_rows()), args)
        else:
            _emit(_csv_text(("degree", "coefficient"), series.csv_rows()),
                  args)
    else:
        head = [f"space: {spectrum}_{args.index}", f"provenance: {provenance}"]
        if table is not None:
            body = _table_lines(table)
        else:
            body = [f"max_degree: {n}"] + _series_lines(series, "coefficient")
        _emit("\n".join(head + body), args)
    return 0


def _cmd_catalog(args) -> int:
    if args.spectrum is None:
        names = [str(s) for s in CATALOGUED_SPECTRA]
        if args.format == "json":
            _emit(json.dumps({"command": "catalog", "spectra": names},
                             indent=2), args)
        elif args.format == "csv":
            _emit(_csv_text(("spectrum",), ((n,) for n in names)), args)
        else:
            _emit("\n".join(names), args)
        return 0

    spectrum = parse_spectrum(args.spectrum)
    profile = homotopy_profile(spectrum, args.max_degree)
    if args.format == "json":
        doc = {
            "command": "catalog",
            "max_degree": args.max_degree,
            "profile": profile.to_json(),
        }
        _emit(json.dumps(doc, indent=2), args)
    elif args.format == "csv":
        _emit(_csv_text(("spectrum", "degree", "free_rank", "torsion_z2"),
                        profile.csv_rows()), args)
    else:
        lines = [f"spectrum: {spectrum}",
                 f"{'degree':>8}  free_rank  torsion_z2"]
        for _, d, free, torsion in profile.csv_rows():
            if free or torsion:
                lines.append(f"{d:>8}  {free:>9}  {torsion:>10}")
        _emit("\n".join(lines), args)
    return 0


def _run_reports(reports: List[VerificationReport], args) -> int:
    passed = all(r.passed for r in reports)
    if args.format == "json":
        if len(reports) == 1:
            doc = {"command": "verify", "report": reports[0].to_json()}
        else:
            doc = {"command": "verify", "pass": passed,
                   "reports": [r.to_json() for r in reports]}
        _emit(json.dumps(doc, indent=2), args)
    elif args.format == "csv":
        rows = [(r.check, "pass" if r.passed else "fail",
                 "" if r.first_failure_degree is None
                 else r.first_failure_degree,
                 round(r.elapsed_ms, 3))
                for r in reports]
        _emit(_csv_text(("check", "result", "first_failure_degree",
                         "elapsed_ms"), rows), args)
    else:
        lines = [r.one_line() for r in reports
                 if not (args.quiet and r.passed)]
        if lines:
            _emit("\n".join(lines), args)
    return 0 if passed else 1


def _cmd_verify(args) -> int:
    if args.check == "all":
        if args.inject_fault:
            raise InvalidParameter(
                "--inject-fault needs a single check, not 'all'")
        reports = []
        for spec in _REGISTRY.values():
            scale = spec.pinned_scale
            if args.max_degree_given:
                scale = min(scale, args.max_degree)
            reports.append(spec.run(scale, False))
        return _run_reports(reports, args)

    spec = _REGISTRY[args.check]
    if args.inject_fault and not spec.supports_fault:
        raise InvalidParameter(
            f"check {spec.name!r} has no fault to inject; pick one of "
            + ", ".join(s.name for s in _REGISTRY.values()
                        if s.supports_fault))
    scale = (args.max_degree if args.max_degree_given
             else spec.pinned_scale)
    report = spec.run(scale, args.inject_fault)
    return _run_reports([report], args)


def _cmd_conjecture(args) -> int:
    if args.check is not None:
        if args.height is not None:
            raise InvalidParameter(
                "give either a truncation height or --check, not both")
        spec = _REGISTRY[_CONJECTURE_CHECKS[args.check]]
        scale = (args.max_degree if args.max_degree_given
                 else spec.pinned_scale)
        return _run_reports([spec.run(scale, False)], args)

    if args.height is None:
        raise InvalidParameter("need a truncation height or --check")
    series = _conjecture.conjectured_bopn_cohomology(args.height,
                                                     args.max_degree)
    if args.format == "json":
        doc = {
            "command": "conjecture",
            "height": args.height,
            "max_degree": args.max_degree,
            "series": series.to_json(),
        }
        _emit(json.dumps(doc, indent=2), args)
    elif args.format == "csv":
        _emit(_csv_text(("degree", "coefficient"), series.csv_rows()), args)
    else:
        lines = [f"height: {args.height}"]
        lines += _series_lines(series, "dimension")
        _emit("\n".join(lines), args)
    return 0


# -- parser ------------------------------------------------------------------

def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", "-N", type=_nonnegative,
                        default=argparse.SUPPRESS, metavar="N",
                        help="degree bound for series and tables "
                             "(default 256)")
    common.add_argument("--format", choices=("table", "json", "csv"),
                        default="table", help="output format")
    common.add_argument("--output", metavar="FILE",
                        help="write the result to FILE instead of stdout")
    common.add_argument("--quiet", action="store_true",
                        help="suppress notes and passing check lines")

    parser = argparse.ArgumentParser(
        prog="bopcalc",
        description="Homology and homotopy bookkeeping for the BoP "
                    "Omega spectrum and its relatives.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_hom = sub.add_parser(
        "homology", parents=[common],
        help="homology of one space in a spectrum's Omega tower")
    p_hom.add_argument("spectrum",
                       help="BP, BPbar, BPn:k, bu, bo, BoP, F, or X")
    p_hom.add_argument("index", type=int, help="space index, may be negative")
    p_hom.add_argument("--periodic", action="store_true",
                       help="for bo: use the periodic table in the range "
                            "where the connective one differs")
    p_hom.set_defaults(func=_cmd_homology)

    p_cat = sub.add_parser(
        "catalog", parents=[common],
        help="list catalogued spectra or print one homotopy profile")
    p_cat.add_argument("spectrum", nargs="?",
                       help="spectrum name; omit to list all")
    p_cat.set_defaults(func=_cmd_catalog)

    p_ver = sub.add_parser(
        "verify", parents=[common],
        help="run one named consistency check, or all of them")
    p_ver.add_argument("check", choices=CHECK_NAMES + ("all",),
                       metavar="CHECK",
                       help="one of: " + ", ".join(CHECK_NAMES + ("all",)))
    p_ver.add_argument("--inject-fault", action="store_true",
                       help="corrupt the computation on purpose; the check "
                            "must then fail (supported: rhs-one, "
                            "head-induction, negative-tower)")
    p_ver.set_defaults(func=_cmd_verify)

    p_con = sub.add_parser(
        "conjecture", parents=[common],
        help="conjectured cohomology series for a truncation height, "
             "or one of the conjecture-side checks")
    p_con.add_argument("height", nargs="?", type=int,
                       help="truncation height n > 2")
    p_con.add_argument("--check", choices=tuple(_CONJECTURE_CHECKS),
                       help="run a check instead of printing a series")
    p_con.set_defaults(func=_cmd_conjecture)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.max_degree_given = hasattr(args, "max_degree")
    if not args.max_degree_given:
        args.max_degree = 256
    try:
        return args.func(args)
    except BopcalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
