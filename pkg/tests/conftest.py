import math
import os

import hypothesis
import numpy as np
import pytest

from cadel_sim.geometry import DEFAULT_ROM, Version, build_preset

np.seterr(all="raise", under="ignore")

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=[v.value for v in Version])
def preset(request):
    return build_preset(request.param)


@pytest.fixture
def lcadel():
    return build_preset(Version.LCADEL)


def rom_grid(n_alpha=13, n_beta=11, rom=DEFAULT_ROM):
    """13 x 11 grid over the default range of motion (10 deg steps)."""
    alphas = np.linspace(rom.alpha_min, rom.alpha_max, n_alpha)
    betas = np.linspace(rom.beta_min, rom.beta_max, n_beta)
    return [(float(a), float(b)) for a in alphas for b in betas]


def deg(x):
    return math.radians(x)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
