import numpy as np
import pytest
from hypothesis import strategies as st

from privsig.model import DecoderX, DecoderY, JointPrior, SymmetricEncoder, make_prior

ACCEPTANCE_LINES = []


@pytest.fixture
def ref_prior():
    return make_prior(0.3, 0.1, 0.2)


@pytest.fixture
def rng():
    return np.random.default_rng(20221015)


unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def priors(draw, floor=0.0):
    w = [draw(st.floats(min_value=0.0, max_value=1.0)) for _ in range(4)]
    total = sum(w)
    if total < 1e-6:
        w, total = [1.0, 1.0, 1.0, 1.0], 4.0
    p = [floor + (1 - 4 * floor) * v / total for v in w]
    p[3] = 1.0 - (p[0] + p[1] + p[2])
    return JointPrior(*p)


symmetric_encoders = st.builds(SymmetricEncoder, unit, unit)
decoders_y = st.builds(DecoderY, unit, unit)
decoders_x = st.builds(DecoderX, unit, unit)


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
