"""Build the rank-4 QHS colourings of the Lobell polyhedron R(7) that admit
the heptagon rotation, and compare with the matrix in data/z7.mat."""

from pathlib import Path

from qhs_lab.admissible import obstruction_audit
from qhs_lab.colouring import canonical_form, load_colouring
from qhs_lab.polytope import build_lobell
from qhs_lab.search import construct_with_symmetry
from qhs_lab.symmetry import named_rotation

DATA = Path(__file__).resolve().parent.parent / "data"
SEED = {1: 0b0001, 16: 0b0001, 2: 0b0010, 3: 0b0100}


def main() -> None:
    P = build_lobell(7)
    phi = named_rotation(P, (1,))
    print("rotation:", phi.cycle_notation())
    classes = construct_with_symmetry(P, phi, 4, SEED)
    print("stats:", classes.stats)
    known = load_colouring(DATA / "z7.mat", P)
    for rec in classes:
        audit = obstruction_audit(rec.colouring, rec.report)
        same = rec.canonical == canonical_form(known, "gl_or")
        print(rec.matrix.to_text())
        print(f"group {rec.report.identified_name}, betti {rec.betti}, "
              f"audit {'passed' if audit.passed else audit.defects}, matches data/z7.mat: {same}")


if __name__ == "__main__":
    main()
