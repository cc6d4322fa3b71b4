"""Search user-supplied polytopes for QHS colourings whose admissible group
has order greater than 7.

    python3 scripts/large_groups.py file:my_polytope.json lobell:6 --rank 4

Polytope specs use the CLI syntax (cube, dodecahedron, lobell:N, file:PATH).
Only hyperbolic polytopes are of interest; the tetrahedron and cube are
accepted but sit outside that setting. Rank-4 searches grow fast with the
facet count: the dodecahedron takes about a minute, 14 facets far longer.
"""

import argparse
import os

from qhs_lab.polytope import polytope_from_spec
from qhs_lab.search import EnumerationTask, classify_by_symmetry, enumerate_colourings


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("polytopes", nargs="+")
    ap.add_argument("--rank", type=int, default=4)
    ap.add_argument("--bound", type=int, default=7)
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    args = ap.parse_args()
    found = 0
    for spec in args.polytopes:
        P = polytope_from_spec(spec)
        classes = enumerate_colourings(EnumerationTask(P, args.rank, qhs=True), threads=args.threads)
        hist = dict(sorted(classify_by_symmetry(classes).items()))
        print(f"{P.name} (m={P.m}): {len(classes)} QHS classes  {hist}")
        for rec in classes:
            if rec.report.group_order > args.bound:
                found += 1
                print(f"  order {rec.report.group_order} ({rec.report.identified_name}):")
                print("  " + rec.matrix.to_text().replace("\n", "\n  "))
    print(f"classes with admissible group of order > {args.bound}: {found}")


if __name__ == "__main__":
    main()
