from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ghzbell.statevec import StateVector

settings.register_profile("ghzbell", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ghzbell")

GOLDEN = Path(__file__).parent / "golden"


def golden_lines(name: str) -> list[str]:
    return (GOLDEN / f"{name}.txt").read_text().splitlines()


def ket(*terms, normalize=True) -> StateVector:
    """``ket((1, "00"), (-1, "11"))`` -> normalized state."""
    return StateVector.from_kets(terms, normalize=normalize)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
