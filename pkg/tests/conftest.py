from __future__ import annotations

import warnings

import mpmath
import numpy as np
import pytest

mpmath.mp.dps = 30


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_configure(config):
    # power-law kernels are evaluated at exact endpoints inside masked branches
    warnings.filterwarnings("ignore", category=RuntimeWarning, module="tricomi_lab")


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(label: str, passed: bool, detail: str) -> bool:
        lines.append(f"{label}: {'PASS' if passed else 'FAIL'}  {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
