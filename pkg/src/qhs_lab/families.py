"""Explicit colourings of polytope families."""

from __future__ import annotations

from .colouring import Colouring
from .polytope import build_lobell

# small cover labels 1..4 as colours in Z_2^3
LABEL_COLOUR = {1: 0b001, 2: 0b010, 3: 0b100, 4: 0b111}

# ring labels: a period-3 block repeated around the ring, closed by a
# two-facet seam; the lower block is shifted against the upper one
UPPER_BLOCK, UPPER_SEAM = (2, 3, 4), (2, 3)
LOWER_BLOCK, LOWER_SEAM = (4, 1, 3), (4, 1)


def _ring(block: tuple[int, ...], seam: tuple[int, ...], n: int) -> list[int]:
    return [block[i % len(block)] for i in range(n - len(seam))] + list(seam)


def lobell_labels(n: int) -> list[int]:
    """Labels 1..4 for the facets of R(n): top, upper ring, lower ring, bottom."""
    if n < 5:
        raise ValueError("Lobell polyhedra need n >= 5")
    return [1] + _ring(UPPER_BLOCK, UPPER_SEAM, n) + _ring(LOWER_BLOCK, LOWER_SEAM, n) + [2]


def lobell_small_cover(n: int) -> Colouring:
    """Rank-3 colouring of R(n); proper with tree two-colour subgraphs iff n = 2 mod 3."""
    return Colouring(build_lobell(n), 3, tuple(LABEL_COLOUR[x] for x in lobell_labels(n)))
