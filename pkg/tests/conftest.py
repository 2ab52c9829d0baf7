import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dpres import DPMatrix, Field, QQ, RingSpec


@pytest.fixture(scope="session")
def gf101():
    return Field(101)


@pytest.fixture(scope="session")
def gf2():
    return Field(2)


@pytest.fixture(scope="session")
def ring2():
    return RingSpec((1, 1))


@pytest.fixture(scope="session")
def ring3():
    return RingSpec((1, 1, 1))


@pytest.fixture(scope="session")
def ring5():
    return RingSpec((1, 1, 1, 1, 1))


@pytest.fixture(scope="session")
def paper_matrix(ring2):
    """P = (X1^(3), X1^(1)X2^(1) + X2^(2)) with twists a=(0), b=(3,2)."""
    one = QQ.one
    return DPMatrix(
        ring2, QQ, (0,), (3, 2),
        [[{(3, 0): one}, {(1, 1): one, (0, 2): one}]],
    )


PAPER_DPM_TEXT = """\
# worked 1x2 example
field QQ
vars 2
rowtwists 0
coltwists 3 2
entry 1 1 : X1^(3)
entry 1 2 : X1X2 + X2^(2)
"""


@pytest.fixture(scope="session")
def paper_dpm_text():
    return PAPER_DPM_TEXT
