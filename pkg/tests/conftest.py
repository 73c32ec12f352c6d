import numpy as np
import pytest

from periframe import FourierSeq


def random_trig_poly(rng, degree: int) -> FourierSeq:
    """Random band-limited coefficient window of the given degree."""
    n = 2 * degree + 1
    return FourierSeq(-degree, rng.standard_normal(n) + 1j * rng.standard_normal(n))


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)
