import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from singspace.gf import FieldCtx


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture(params=[2, 3, 5])
def field(request):
    return FieldCtx(request.param)


F2 = FieldCtx(2)
F3 = FieldCtx(3)
F5 = FieldCtx(5)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
