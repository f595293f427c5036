import math
import sys

import numpy as np
import pytest
from scipy.integrate import quad

from nuphase import (
    ReactorSource,
    ScatteringAmplitudeModel,
    SuperpositionConfig,
    TargetCrystal,
    complex_rate,
)
from nuphase.units import CONSTANTS


@pytest.fixture(scope="session")
def target():
    return TargetCrystal()


@pytest.fixture(scope="session")
def source():
    return ReactorSource()


@pytest.fixture(scope="session")
def model(target):
    return ScatteringAmplitudeModel.for_target(target)


@pytest.fixture(scope="session")
def design_rate(model, source, target):
    return complex_rate(model, source, target, SuperpositionConfig())


def angular_oracle(a):
    """int_{-1}^{1} (1 + c)(1 - exp(i a (1 - c))) dc by scipy quad, as a complex number."""
    re = quad(lambda c: (1 + c) * 2 * math.sin(0.5 * a * (1 - c)) ** 2, -1, 1,
              epsabs=0, epsrel=1e-13, limit=200)[0]
    im = -quad(lambda c: (1 + c) * math.sin(a * (1 - c)), -1, 1,
               epsabs=0, epsrel=1e-13, limit=200)[0]
    return complex(re, im)


def amplitude_scale(model):
    """|M|^2 / (1 + cos theta) / E^2 with the normalisation fixed by the cross section."""
    return 4 * CONSTANTS.G_F**2 * model.Q_W**2 * model.m_nucl**2


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
