"""Rank-3 and rank-4 census of the right-angled dodecahedron.

    python3 scripts/dodecahedron_census.py [--threads N] [--skip-rank4]
"""

import argparse
import os
import time
from collections import Counter

from qhs_lab.admissible import obstruction_audit
from qhs_lab.polytope import build_dodecahedron
from qhs_lab.search import EnumerationTask, classify_by_symmetry, enumerate_colourings


def census(k: int, qhs: bool, threads: int) -> None:
    P = build_dodecahedron()
    start = time.perf_counter()
    classes = enumerate_colourings(EnumerationTask(P, k, qhs=qhs), threads=threads)
    elapsed = time.perf_counter() - start
    label = "QHS" if qhs else "orientable"
    print(f"rank {k} {label}: {len(classes)} classes in {elapsed:.1f}s  {classes.stats}")
    for name, n in sorted(classify_by_symmetry(classes).items()):
        print(f"  {name:10s} {n}")
    kinds = Counter()
    defects = 0
    for rec in classes:
        kinds.update(e.classification.kind for e in rec.report.elements)
        if qhs:
            defects += len(obstruction_audit(rec.colouring, rec.report).defects)
    print("  element kinds:", dict(sorted(kinds.items())))
    if qhs:
        print(f"  audit defects: {defects}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--skip-rank4", action="store_true")
    args = ap.parse_args()
    census(3, False, args.threads)
    if not args.skip_rank4:
        census(4, True, args.threads)


if __name__ == "__main__":
    main()
