"""Run the Lobell small-cover pattern over a range of N and report properness
and both QHS tests.

    python3 scripts/lobell_family.py [NMIN] [NMAX]
"""

import sys

from qhs_lab.colouring import is_orientable, is_proper
from qhs_lab.families import lobell_small_cover
from qhs_lab.homology import is_qhs, is_qhs_small_cover


def main(lo: int = 5, hi: int = 20) -> None:
    print(" N  proper  orientable  tree  homology")
    for n in range(lo, hi + 1):
        lam = lobell_small_cover(n)
        if not is_proper(lam):
            print(f"{n:2d}  no")
            continue
        print(f"{n:2d}  yes     {'yes' if is_orientable(lam) else 'no':10s}  "
              f"{'QHS' if is_qhs_small_cover(lam) else '-':4s}  {'QHS' if is_qhs(lam) else '-'}")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:3]))
