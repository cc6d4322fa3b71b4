import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from qhs_lab.gf2 import BitMatrix  # noqa: E402
from qhs_lab.colouring import Colouring, load_colouring  # noqa: E402
from qhs_lab.polytope import build_cube, build_dodecahedron, build_lobell, build_simplex3  # noqa: E402
from qhs_lab.search import EnumerationTask, enumerate_colourings  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"
ROOT = Path(__file__).parent.parent

Z7_ROWS = """\
1000101110110001
0100111011101000
0010011101110100
0001110111010010"""


@pytest.fixture(scope="session")
def cube():
    return build_cube()


@pytest.fixture(scope="session")
def dodecahedron():
    return build_dodecahedron()


@pytest.fixture(scope="session")
def simplex():
    return build_simplex3()


@pytest.fixture(scope="session")
def lobell7():
    return build_lobell(7)


@pytest.fixture(scope="session")
def z7(lobell7):
    return Colouring.from_matrix(lobell7, BitMatrix.from_text(Z7_ROWS))


@pytest.fixture(scope="session")
def hantzsche_wendt(cube):
    return load_colouring(DATA / "hantzsche_wendt.mat", cube)


@pytest.fixture(scope="session")
def garrison_scott(dodecahedron):
    return load_colouring(DATA / "garrison_scott.mat", dodecahedron)


@pytest.fixture(scope="session")
def dodecahedron_qhs4(dodecahedron):
    """The full rank-4 QHS census; about a minute, computed once per session."""
    return enumerate_colourings(EnumerationTask(dodecahedron, 4, qhs=True),
                                threads=min(4, os.cpu_count() or 1))


@pytest.fixture(scope="session")
def dodecahedron_orientable3(dodecahedron):
    return enumerate_colourings(EnumerationTask(dodecahedron, 3))


@pytest.fixture(scope="session")
def cube_qhs4(cube):
    return enumerate_colourings(EnumerationTask(cube, 4, qhs=True))


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
