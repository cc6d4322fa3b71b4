"""Command-line entry point.

Exit codes: 0 affirmative verdict or successful run, 1 negative verdict,
2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .admissible import PreconditionError, SymGroupReport, admissible_group, obstruction_audit
from .colouring import Colouring, ColouringError, is_orientable, is_proper, load_colouring
from .homology import betti_manifold, is_qhs
from .polytope import InvalidPolytope, Polytope, polytope_from_spec
from .search import ClassList, EnumerationTask, classify_by_symmetry, construct_with_symmetry, enumerate_colourings
from .symmetry import Automorphism, automorphisms, classify, named_rotation, parse_permutation

SCHEMA = 1
SUBCOMMANDS = ("check", "betti", "symmetries", "enumerate", "construct", "audit")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    polytope: str | None = None
    colouring: Path | None = None
    rank: int | None = None
    qhs: bool = False
    classify_sym: bool = False
    out: str = "text"
    threads: int = 1
    audit_soft: bool = False
    symmetry: str | None = None
    seed: Path | None = None

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if self.out not in ("text", "json", "csv"):
            raise UsageError(f"unknown output format {self.out!r}")
        if self.threads < 1:
            raise UsageError("thread count must be positive")


# --- helpers -----------------------------------------------------------------


def _parse_colour(text: str) -> int:
    if not text or set(text) - {"0", "1"}:
        raise UsageError(f"bad colour {text!r}")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def parse_seed(text: str, P: Polytope) -> dict[int, int]:
    """Lines ``<facet> <colour column>``, e.g. ``16 1000``."""
    seed: dict[int, int] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not parts[0].isdigit():
            raise UsageError(f"bad seed line {line!r}")
        f = int(parts[0])
        if not 1 <= f <= P.m:
            raise UsageError(f"seed facet {f} out of range")
        if f in seed:
            raise UsageError(f"facet {f} seeded twice")
        seed[f] = _parse_colour(parts[1])
    return seed


def resolve_symmetry(text: str, P: Polytope) -> Automorphism:
    """Cycle notation, or ``face:F``, ``edge:F,G``, ``vertex:F,G,H`` for the
    rotation generator about that cell."""
    if ":" in text:
        kind, _, cell = text.partition(":")
        ids = tuple(int(x) for x in cell.replace(",", " ").split())
        size = {"face": 1, "edge": 2, "vertex": 3}.get(kind)
        if size is None or len(ids) != size:
            raise UsageError(f"bad named axis {text!r}")
        if size == 2 and tuple(sorted(ids)) not in P.edges:
            raise UsageError(f"{ids} is not an edge")
        if size == 3 and tuple(sorted(ids)) not in P.vertex_set():
            raise UsageError(f"{ids} is not a vertex")
        return named_rotation(P, ids)
    perm = parse_permutation(text, P.m)
    for phi in automorphisms(P):
        if phi.perm == perm:
            return phi
    raise UsageError(f"{text} is not an automorphism of {P.name}")


def _load(cfg: RunConfig) -> tuple[Polytope | None, Colouring | None]:
    P = polytope_from_spec(cfg.polytope) if cfg.polytope else None
    lam = None
    if cfg.colouring is not None:
        if not cfg.colouring.exists():
            raise UsageError(f"no such file: {cfg.colouring}")
        lam = load_colouring(cfg.colouring, P)
        P = lam.polytope
    return P, lam


def _require(value, what: str):
    if value is None:
        raise UsageError(f"{what} is required")
    return value


def _dump(obj) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=2, sort_keys=True) + "\n"


def _report_json(report: SymGroupReport) -> dict:
    return {
        "group": report.identified_name,
        "order": report.group_order,
        "coloured_isometry_order": report.coloured_isometry_order,
        "elements": [
            {
                "permutation": e.phi.cycle_notation(),
                "kind": e.classification.kind,
                "order": e.classification.order,
                "good": e.good,
                "psi": e.psi.to_text(),
            }
            for e in report.elements
        ],
    }


def _report_text(report: SymGroupReport) -> list[str]:
    lines = [f"group: {report.identified_name} (order {report.group_order}, "
             f"coloured isometries {report.coloured_isometry_order})"]
    for e in report.elements:
        psi = " ".join(e.psi.to_text().splitlines())
        lines.append(
            f"{e.phi.cycle_notation()}\t{e.classification.kind}\torder {e.classification.order}"
            f"\t{'good' if e.good else 'bad'}\tpsi {psi}"
        )
    return lines


# --- subcommands -------------------------------------------------------------


def cmd_check(cfg: RunConfig) -> tuple[int, str]:
    _, lam = _load(cfg)
    lam = _require(lam, "--colouring")
    proper = is_proper(lam)
    orientable = is_orientable(lam)
    betti = betti_manifold(lam) if proper else None
    qhs = proper and is_qhs(lam)
    verdict = proper and (qhs or not cfg.qhs)
    if cfg.out == "json":
        text = _dump({"proper": proper, "orientable": orientable,
                      "betti": list(betti) if betti else None, "qhs": qhs})
    else:
        lines = [f"proper: {'yes' if proper else 'no (not proper)'}",
                 f"orientable: {'yes' if orientable else 'no'}"]
        if betti:
            lines.append("betti: " + " ".join(map(str, betti)))
        lines.append(f"verdict: {'QHS' if qhs else 'not QHS'}")
        text = "\n".join(lines) + "\n"
    return (0 if verdict else 1), text


def cmd_betti(cfg: RunConfig) -> tuple[int, str]:
    _, lam = _load(cfg)
    lam = _require(lam, "--colouring")
    if not is_proper(lam):
        return 1, "not proper\n"
    betti = betti_manifold(lam)
    if cfg.out == "json":
        return 0, _dump({"betti": list(betti)})
    return 0, " ".join(map(str, betti)) + "\n"


def cmd_symmetries(cfg: RunConfig) -> tuple[int, str]:
    P, lam = _load(cfg)
    P = _require(P, "--polytope or --colouring")
    if lam is not None:
        report = admissible_group(lam)
        if cfg.out == "json":
            return 0, _dump(_report_json(report))
        return 0, "\n".join(_report_text(report)) + "\n"
    rows = []
    for phi in automorphisms(P):
        c = classify(P, phi)
        rows.append((phi.cycle_notation(), phi.orientation, c.kind, c.order, c.describe_poles()))
    if cfg.out == "json":
        return 0, _dump({"polytope": P.name, "order": len(rows), "automorphisms": [
            dict(zip(("permutation", "orientation", "kind", "order", "poles"), r)) for r in rows
        ]})
    return 0, "".join("\t".join(f"{x:+d}" if isinstance(x, int) and i == 1 else str(x)
                                for i, x in enumerate(r)) + "\n" for r in rows)


def _classes_output(classes: ClassList, cfg: RunConfig) -> str:
    with_sym = cfg.classify_sym
    records = []
    for rec in classes:
        row = {"matrix": rec.matrix.to_text(), "betti": list(rec.betti)}
        if with_sym:
            row["group"] = rec.report.identified_name
            row["group_order"] = rec.report.group_order
        records.append(row)
    if cfg.out == "json":
        obj = {"count": len(records), "classes": records}
        if with_sym:
            obj["histogram"] = dict(sorted(classify_by_symmetry(classes).items()))
        return _dump(obj)
    if cfg.out == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["matrix", "group", "group_order", "betti"])
        for r in records:
            w.writerow([r["matrix"].replace("\n", "/"), r.get("group", ""),
                        r.get("group_order", ""), " ".join(map(str, r["betti"]))])
        return buf.getvalue()
    lines = [f"classes: {len(records)}"]
    for i, r in enumerate(records, 1):
        head = f"# class {i}  betti {' '.join(map(str, r['betti']))}"
        if with_sym:
            head += f"  group {r['group']} (order {r['group_order']})"
        lines += [head, r["matrix"]]
    if with_sym:
        for name, n in sorted(classify_by_symmetry(classes).items()):
            lines.append(f"histogram {name}: {n}")
    return "\n".join(lines) + "\n"


def cmd_enumerate(cfg: RunConfig) -> tuple[int, str]:
    P = polytope_from_spec(_require(cfg.polytope, "--polytope"))
    task = EnumerationTask(P, _require(cfg.rank, "--rank"), qhs=cfg.qhs)
    classes = enumerate_colourings(task, threads=cfg.threads)
    return (0 if len(classes) else 1), _classes_output(classes, cfg)


def cmd_construct(cfg: RunConfig) -> tuple[int, str]:
    P = polytope_from_spec(_require(cfg.polytope, "--polytope"))
    phi = resolve_symmetry(_require(cfg.symmetry, "--symmetry"), P)
    k = _require(cfg.rank, "--rank")
    seed = {}
    if cfg.seed is not None:
        if not cfg.seed.exists():
            raise UsageError(f"no such file: {cfg.seed}")
        seed = parse_seed(cfg.seed.read_text(), P)
        if any(c >> k or not c for c in seed.values()):
            raise UsageError(f"seed colours must be nonzero columns of length {k}")
    classes = construct_with_symmetry(P, phi, k, seed, qhs=cfg.qhs)
    out = _classes_output(classes, cfg)
    if cfg.out == "text":
        stats = " ".join(f"{key}={v}" for key, v in sorted(classes.stats.items()))
        out = f"symmetry: {phi.cycle_notation()}\n{stats}\n" + out
    return (0 if len(classes) else 1), out


def cmd_audit(cfg: RunConfig) -> tuple[int, str]:
    _, lam = _load(cfg)
    lam = _require(lam, "--colouring")
    audit = obstruction_audit(lam)
    if cfg.out == "json":
        text = _dump({"passed": audit.passed, "defects": audit.defects,
                      **_report_json(audit.group)})
    else:
        lines = _report_text(audit.group)
        prefix = "warning" if cfg.audit_soft else "defect"
        lines += [f"{prefix}: {d}" for d in audit.defects]
        lines.append("audit: " + ("passed" if audit.passed else f"{len(audit.defects)} defects"))
        text = "\n".join(lines) + "\n"
    return (0 if audit.passed or cfg.audit_soft else 1), text


COMMANDS = {
    "check": cmd_check,
    "betti": cmd_betti,
    "symmetries": cmd_symmetries,
    "enumerate": cmd_enumerate,
    "construct": cmd_construct,
    "audit": cmd_audit,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Exit code and output text for a config; input errors map to code 2."""
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except (UsageError, InvalidPolytope, ColouringError, PreconditionError, ValueError, OSError) as exc:
        return 2, f"error: {exc}\n"


# --- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qhs-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, colouring=False):
        p.add_argument("--polytope", help="cube|dodecahedron|simplex3|lobell:N|file:PATH")
        if colouring:
            p.add_argument("--colouring", type=Path, help="colouring matrix file")
        p.add_argument("--out", choices=("text", "json", "csv"), default="text")
        p.add_argument("--json", action="store_true", help="same as --out json")
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("check", help="properness, orientability, Betti numbers, QHS verdict")
    common(p, colouring=True)
    p.add_argument("--qhs", action="store_true", help="exit 1 unless the colouring gives a QHS")

    p = sub.add_parser("betti", help="rational Betti numbers of the manifold")
    common(p, colouring=True)

    p = sub.add_parser("symmetries", help="polytope automorphisms or admissible group")
    common(p, colouring=True)

    p = sub.add_parser("enumerate", help="colourings up to equivalence")
    common(p)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--qhs", action="store_true")
    p.add_argument("--classify-sym", action="store_true")

    p = sub.add_parser("construct", help="colourings admitting a given symmetry")
    common(p)
    p.add_argument("--symmetry", required=True,
                   help="cycle notation, or face:F / edge:F,G / vertex:F,G,H")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--seed", type=Path, help="lines '<facet> <colour column>'")
    p.add_argument("--all", dest="qhs", action="store_false",
                   help="keep non-QHS proper colourings too")
    p.add_argument("--classify-sym", action="store_true")

    p = sub.add_parser("audit", help="check the admissible-symmetry restrictions")
    common(p, colouring=True)
    p.add_argument("--audit-soft", action="store_true", help="report defects as warnings")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    threads = args.threads or os.cpu_count() or 1
    env = os.environ.get("QHS_LAB_THREADS")
    if env:
        if not env.isdigit():
            raise UsageError(f"QHS_LAB_THREADS must be a positive integer, got {env!r}")
        threads = int(env)
    return RunConfig(
        subcommand=args.subcommand,
        polytope=args.polytope,
        colouring=getattr(args, "colouring", None),
        rank=getattr(args, "rank", None),
        qhs=getattr(args, "qhs", False),
        classify_sym=getattr(args, "classify_sym", False),
        out="json" if args.json else args.out,
        threads=threads,
        audit_soft=getattr(args, "audit_soft", False),
        symmetry=getattr(args, "symmetry", None),
        seed=getattr(args, "seed", None),
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    code, text = run(cfg)
    (sys.stderr if code == 2 else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
